#include "qchain/evolve.hpp"

#include <cmath>
#include <numbers>

namespace qchain {

namespace {

void check_site(const SpectralDecomposition& dec, int i) {
  if (i < 0 || i >= dec.size())
    throw InvalidArgument("site index out of range 0..N");
}

// x mod 2 in [0, 2).
ExactRational mod2(const ExactRational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  const BigInt twice = 2 * den;
  BigInt r = num % twice;
  if (r < 0)
    r += twice;
  return ExactRational(r, den);
}

Amplitude phase_of(const ExactRational& residue) {
  if (residue == 0)
    return {1.0, 0.0};
  if (residue == 1)
    return {-1.0, 0.0};
  const double a = std::numbers::pi * to_double(residue);
  return {std::cos(a), -std::sin(a)};
}

bool is_odd(const BigInt& i) { return bit_test(i < 0 ? BigInt(-i) : i, 0); }

} // namespace

double ExactPhaseTime::seconds() const { return to_double(pi_multiple) * std::numbers::pi; }

Amplitude correlation(const SpectralDecomposition& dec, int r, int s, double t) {
  check_site(dec, r);
  check_site(dec, s);
  if (!std::isfinite(t) || std::fabs(t) > kMaxFloatingTime)
    throw TimeBoundExceeded("floating time exceeds 1e8; use an exact multiple of pi");
  Amplitude sum{0.0, 0.0};
  for (int j = 0; j < dec.size(); ++j) {
    const double a = -t * dec.eigenvalues[j];
    sum += dec.U(r, j) * dec.U(s, j) * Amplitude(std::cos(a), std::sin(a));
  }
  return sum;
}

std::vector<std::vector<Amplitude>> correlation_matrix(const SpectralDecomposition& dec,
                                                       double t) {
  const int n = dec.size();
  std::vector<std::vector<Amplitude>> f(n, std::vector<Amplitude>(n));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      f[r][s] = correlation(dec, r, s, t);
  return f;
}

std::vector<ExactRational> phase_residues(const SpectralDecomposition& dec,
                                          const ExactPhaseTime& t) {
  std::vector<ExactRational> out;
  for (const auto& e : dec.exact) {
    if (!e)
      throw NonRationalSpectrum("eigenvalue is not an exact rational");
    out.push_back(mod2(t.pi_multiple * *e));
  }
  return out;
}

Amplitude correlation_exact_phase(const SpectralDecomposition& dec, int r, int s,
                                  const ExactPhaseTime& t) {
  check_site(dec, r);
  check_site(dec, s);
  const auto res = phase_residues(dec, t);
  Amplitude sum{0.0, 0.0};
  for (int j = 0; j < dec.size(); ++j)
    sum += dec.U(r, j) * dec.U(s, j) * phase_of(res[j]);
  return sum;
}

Amplitude correlation_exact_phase(const FamilySpec& spec, int r, int s, const ExactPhaseTime& t) {
  return correlation_exact_phase(analytic_decomposition(spec), r, s, t);
}

std::vector<std::vector<Amplitude>> correlation_matrix_exact(const SpectralDecomposition& dec,
                                                            const ExactPhaseTime& t) {
  const int n = dec.size();
  const auto res = phase_residues(dec, t);
  std::vector<Amplitude> ph(n);
  for (int j = 0; j < n; ++j)
    ph[j] = phase_of(res[j]);
  std::vector<std::vector<Amplitude>> f(n, std::vector<Amplitude>(n));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      Amplitude sum{0.0, 0.0};
      for (int j = 0; j < n; ++j)
        sum += dec.U(r, j) * dec.U(s, j) * ph[j];
      f[r][s] = sum;
    }
  return f;
}

ExactPhaseTime pst_time(const RationalQ& q, int N) {
  if (q.inv_parity_class() != ParityClass::OddOdd)
    throw NotOddOdd("q^-1 = " + q.inv_num().str() + "/" + q.inv_den().str() +
                    " is not odd/odd; no exact transfer time");
  if (N < 0)
    throw InvalidArgument("N must be nonnegative");
  return ExactPhaseTime{ExactRational(BigInt(pow(q.inv_den(), static_cast<unsigned>(N))))};
}

bool ParityTable::all_pass() const {
  for (const auto& r : rows)
    if (!r.parity_matches)
      return false;
  return true;
}

ParityTable phase_parity_check(const FamilySpec& spec, const ExactPhaseTime& t) {
  ParityTable table;
  for (int k = 0; k <= spec.N; ++k) {
    const Number e = eigenvalue(spec, k);
    if (!e.is_exact())
      throw NonRationalSpectrum("eigenvalue is not an exact rational");
    ParityRow row;
    row.k = k;
    row.value = t.pi_multiple * e.exact();
    row.integer = is_integer(row.value);
    row.parity_matches = row.integer && (is_odd(numerator(row.value)) == (k % 2 == 1));
    table.rows.push_back(row);
  }
  return table;
}

Classification classify_q(const RationalQ& q) {
  const ParityClass c = q.inv_parity_class();
  const std::string inv = q.inv_num().str() + "/" + q.inv_den().str();
  switch (c) {
  case ParityClass::OddOdd:
    return {c, "q^-1 = " + inv + " is odd/odd: at T = Q^N pi every phase equals (-1)^k"};
  case ParityClass::EvenOverOdd:
    return {c, "q^-1 = " + inv +
                   " is even/odd: Q^N eps_k / 2^r is odd for every k, so no time gives (-1)^k"};
  case ParityClass::OddOverEven:
    return {c, "q^-1 = " + inv +
                   " is odd/even: 2^(rk) Q^N eps_k is odd for every k, so no time gives (-1)^k"};
  }
  return {c, ""};
}

std::vector<BracketRow> bracket_parities(const RationalQ& q, int kmax) {
  const int N = kmax;
  const ParityClass c = q.inv_parity_class();
  const ExactRational qinv = q.inverse();
  // Strip the power of two from P (EvenOverOdd) or Q (OddOverEven).
  BigInt P = q.inv_num(), Q = q.inv_den();
  int r = 0;
  while (!bit_test(P, 0)) {
    P >>= 1;
    ++r;
  }
  while (!bit_test(Q, 0)) {
    Q >>= 1;
    ++r;
  }
  const ExactRational QN(BigInt(pow(Q, static_cast<unsigned>(N))));
  std::vector<BracketRow> rows;
  ExactRational eps(0), term(1);
  for (int k = 1; k <= kmax; ++k) {
    term *= qinv;
    eps += term;
    ExactRational b = QN * eps;
    if (c == ParityClass::EvenOverOdd)
      b /= ExactRational(BigInt(1) << r);
    else if (c == ParityClass::OddOverEven)
      b *= ExactRational(BigInt(1) << (r * k));
    BracketRow row;
    row.k = k;
    row.bracket = b;
    row.integer = is_integer(b);
    row.odd = row.integer && is_odd(numerator(b));
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> fidelity_scan(const SpectralDecomposition& dec, int r, int s,
                                  const std::vector<double>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid)
    out.push_back(std::abs(correlation(dec, r, s, t)));
  return out;
}

TransferReport transfer_report(const FamilySpec& spec) {
  if (!spec.all_exact())
    throw InvalidArgument("transfer report needs exact rational q and parameters");
  const RationalQ q = *spec.rational_q();
  TransferReport rep;
  rep.spec = spec;
  rep.classification = classify_q(q);
  const ExactPhaseTime base = pst_time(q, spec.N); // throws NotOddOdd
  std::vector<ExactPhaseTime> tries{base};
  if (spec.kind() == FamilyKind::DualQHahn)
    tries.push_back(ExactPhaseTime{ExactRational(BigInt(pow(q.inv_num(), static_cast<unsigned>(spec.N))))});
  bool chosen = false;
  for (const auto& t : tries) {
    ParityTable table = phase_parity_check(spec, t);
    const bool ok = table.all_pass();
    rep.candidates.emplace_back(t, ok);
    if (ok && !chosen) {
      rep.T = t;
      rep.parity = table;
      chosen = true;
    }
  }
  if (!chosen) {
    rep.T = base;
    rep.parity = phase_parity_check(spec, base);
  }

  const SpectralDecomposition dec = analytic_decomposition(spec);
  const int N = spec.N;
  const auto fT = correlation_matrix_exact(dec, rep.T);
  const auto f2T = correlation_matrix_exact(dec, ExactPhaseTime{2 * rep.T.pi_multiple});
  for (int r = 0; r <= N; ++r)
    rep.amplitudes.push_back(fT[r][0]);
  rep.endpoint = std::abs(fT[N][0]);
  for (int r = 0; r <= N; ++r)
    for (int s = 0; s <= N; ++s)
      rep.period_residual =
          std::max(rep.period_residual, std::abs(f2T[r][s] - Amplitude(r == s ? 1.0 : 0.0)));
  if (is_pst_point(spec)) {
    double worst = 0.0;
    for (int r = 0; r <= N; ++r)
      for (int s = 0; s <= N; ++s)
        worst = std::max(worst, std::abs(fT[r][s] - Amplitude(r + s == N ? 1.0 : 0.0)));
    rep.mirror_residual = worst;
  }
  rep.verdict = rep.endpoint >= 1.0 - kPerfectTolerance ? Verdict::Perfect : Verdict::Imperfect;
  return rep;
}

} // namespace qchain
