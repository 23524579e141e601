#pragma once

// Shared fixtures: random valid specs, phase-valid specs and a brute-force
// correlation oracle built only from the numeric eigensolver.

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "qchain/closedform.hpp"

namespace qchain::testing {

/// q^{-1} = P/Q with P, Q odd and coprime.
inline std::vector<RationalQ> odd_odd_qs() {
  return {RationalQ(3, 1), RationalQ(1, 3), RationalQ(3, 5), RationalQ(5, 3), RationalQ(1, 5),
          RationalQ(5, 1), RationalQ(3, 7), RationalQ(7, 3), RationalQ(5, 7), RationalQ(7, 5)};
}

inline std::vector<RationalQ> odd_odd_small_qs() {
  std::vector<RationalQ> out;
  for (const auto& q : odd_odd_qs())
    if (q.less_than_one())
      out.push_back(q);
  return out;
}

/// Exact rational near a log-uniform magnitude in [10^lo, 10^hi], random sign when signed.
inline Number random_rational(std::mt19937& rng, double lo, double hi, bool signed_ = false) {
  std::uniform_real_distribution<double> e(lo, hi);
  const double mag = std::pow(10.0, e(rng));
  const long long den = 1000;
  long long num = std::llround(mag * den);
  if (num == 0)
    num = 1;
  if (signed_ && std::bernoulli_distribution(0.5)(rng))
    num = -num;
  return Number(num, den);
}

inline FamilyParams random_params(FamilyKind kind, std::mt19937& rng) {
  switch (kind) {
  case FamilyKind::QKrawtchouk:
    return QKrawtchouk{random_rational(rng, -3, 3)};
  case FamilyKind::AffineQKrawtchouk:
    return AffineQKrawtchouk{random_rational(rng, -3, 1)};
  case FamilyKind::QuantumQKrawtchouk:
    return QuantumQKrawtchouk{random_rational(rng, -1, 6)};
  case FamilyKind::DualQKrawtchouk:
    return DualQKrawtchouk{Number(ExactRational(-random_rational(rng, -3, 3).exact()))};
  case FamilyKind::QHahn:
    return QHahn{random_rational(rng, -2, 4, true), random_rational(rng, -2, 4, true)};
  case FamilyKind::DualQHahn:
    return DualQHahn{random_rational(rng, -2, 4, true), random_rational(rng, -2, 4, true)};
  case FamilyKind::QRacah:
    return QRacah{random_rational(rng, -2, 4, true), random_rational(rng, -2, 4, true),
                  random_rational(rng, -2, 6, true)};
  }
  throw std::logic_error("unknown family");
}

inline bool needs_small_q(FamilyKind kind) {
  return kind == FamilyKind::QHahn || kind == FamilyKind::DualQHahn || kind == FamilyKind::QRacah;
}

inline RationalQ random_q(std::mt19937& rng, bool small_only) {
  std::uniform_int_distribution<int> a(1, 9);
  for (;;) {
    const int x = a(rng), y = a(rng);
    if (x == y)
      continue;
    RationalQ q(x, y);
    if (small_only && !q.less_than_one())
      continue;
    return q;
  }
}

/// Rejection sampling against validate().
inline FamilySpec random_valid_spec(FamilyKind kind, std::mt19937& rng, int max_n) {
  std::uniform_int_distribution<int> nd(1, max_n);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    FamilySpec spec = make_spec(random_params(kind, rng), nd(rng), random_q(rng, needs_small_q(kind)));
    if (validate(spec).ok())
      return spec;
  }
  throw std::runtime_error("no valid spec found");
}

inline bool passes_phase_condition(const FamilySpec& spec) {
  const auto q = spec.rational_q();
  if (!q || q->inv_parity_class() != ParityClass::OddOdd || !spec.all_exact())
    return false;
  std::vector<ExactPhaseTime> tries{pst_time(*q, spec.N)};
  if (spec.kind() == FamilyKind::DualQHahn)
    tries.push_back(ExactPhaseTime{ExactRational(BigInt(pow(q->inv_num(), static_cast<unsigned>(spec.N))))});
  for (const auto& t : tries)
    if (phase_parity_check(spec, t).all_pass())
      return true;
  return false;
}

/// Valid specs with q^{-1} odd/odd whose phases at T are (-1)^k.
inline FamilySpec random_phase_valid_spec(FamilyKind kind, std::mt19937& rng, int max_n) {
  const auto qs = needs_small_q(kind) ? odd_odd_small_qs() : odd_odd_qs();
  std::uniform_int_distribution<std::size_t> pick(0, qs.size() - 1);
  std::uniform_int_distribution<int> nd(1, max_n), mult(1, 3);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    const RationalQ q = qs[pick(rng)];
    const int N = nd(rng);
    const ExactRational QN(BigInt(pow(q.inv_den(), static_cast<unsigned>(N))));
    FamilyParams params = random_params(kind, rng);
    if (kind == FamilyKind::DualQKrawtchouk)
      params = DualQKrawtchouk{Number(ExactRational(-2 * QN * mult(rng)))};
    if (kind == FamilyKind::QRacah) {
      auto& r = std::get<QRacah>(params);
      r.gamma = Number(ExactRational(2 * QN * r.beta.exact() * mult(rng)));
    }
    if (kind == FamilyKind::DualQHahn) {
      auto& d = std::get<DualQHahn>(params);
      const ExactRational PN(BigInt(pow(q.inv_num(), static_cast<unsigned>(N))));
      d.gamma = Number(ExactRational(2 * PN * mult(rng) / d.delta.exact()));
    }
    FamilySpec spec = make_spec(params, N, q);
    if (validate(spec).ok() && passes_phase_condition(spec))
      return spec;
  }
  throw std::runtime_error("no phase-valid spec found");
}

/// f_{r,s}(t) from the numeric eigensolver of the assembled chain; shares no
/// code with the analytic eigenvectors.
inline std::complex<double> oracle_correlation(const FamilySpec& spec, int r, int s, double t) {
  const SpectralDecomposition dec = numeric_decomposition(assemble_matrix(recurrence_coefficients(spec)));
  std::complex<double> sum = 0.0;
  for (int j = 0; j < dec.size(); ++j)
    sum += dec.U(r, j) * dec.U(s, j) * std::polar(1.0, -t * dec.eigenvalues[j]);
  return sum;
}

inline constexpr FamilyKind kAllFamilies[] = {
    FamilyKind::QKrawtchouk, FamilyKind::AffineQKrawtchouk, FamilyKind::QuantumQKrawtchouk,
    FamilyKind::DualQKrawtchouk, FamilyKind::QHahn, FamilyKind::DualQHahn, FamilyKind::QRacah};

} // namespace qchain::testing
