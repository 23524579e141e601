#include "qchain/closedform.hpp"

#include <array>
#include <cmath>

namespace qchain {

namespace {

// Perturbation speeds of the two site labels: q^r -> q^r (1 + eps),
// q^s -> q^s (1 + kSpeedS eps). The limit does not depend on them.
constexpr int kSpeedR = 1;
constexpr int kSpeedS = 2;

struct Ctx {
  int N;
  Wide q;
  std::vector<Wide> d; // raw norms
  std::vector<int> sigma;

  explicit Ctx(const FamilySpec& spec)
      : N(spec.N), q(spec.q.wide()), d(norms_wide(spec)), sigma(row_signs(spec)) {}

  Wide qp(int e) const { return ipow(q, e); }
  Wide poch(const Wide& a, int n, int step = 1) const {
    return pochhammer<Wide>(a, ipow(q, step), n);
  }
  SeriesParam pw(int e, int drift = 0) const { return SeriesParam::q_power(q, e, drift); }
  Regular rpoch(const SeriesParam& a, int n, int step = 1) const {
    return regular_pochhammer(a, q, n, step);
  }
  Regular rpoch(const Wide& a, int n, int step = 1) const {
    return regular_pochhammer(SeriesParam::generic(a), q, n, step);
  }
  // Chain-convention normalisation 1/sqrt(d_r d_s) with row signs.
  Wide norm_factor(int r, int s) const { return sigma[r] * sigma[s] / sqrt(d[r] * d[s]); }
};

void check_sites(const FamilySpec& spec, int r, int s) {
  if (r < 0 || r > spec.N || s < 0 || s > spec.N)
    throw InvalidArgument("site index out of range 0..N");
}

const QKrawtchouk& as_qk(const FamilySpec& spec) {
  if (const auto* f = std::get_if<QKrawtchouk>(&spec.params))
    return *f;
  throw InvalidArgument("expected a q-Krawtchouk spec");
}

// Sum over m of prefactor(m) times the kernel terms, each term taken in the
// eps -> 0 limit.
template <class Prefactor, class Kernel>
Wide regular_m_sum(const Ctx& c, Prefactor&& prefactor, Kernel&& kernel) {
  Wide sum(0);
  for (int m = 0; m <= c.N; ++m) {
    const Regular A = prefactor(m);
    if (A.exact_zero)
      continue;
    for (const Regular& t : kernel(m))
      sum += (A * t).limit();
  }
  return sum;
}

Wide affine_sum(const FamilySpec& spec, int r, int s) {
  const Ctx c(spec);
  const Wide p = std::get<AffineQKrawtchouk>(spec.params).p.wide();
  const Wide q = c.q;
  const int N = c.N;
  const Wide S = regular_m_sum(
      c,
      [&](int m) {
        Regular A = c.rpoch(c.pw(r - N, kSpeedR), m) * c.rpoch(c.pw(s - N, kSpeedS), m);
        A /= c.rpoch(c.pw(1), m) * c.rpoch(-c.qp(1 - N), m) * c.rpoch(c.pw(-N), m);
        A *= ipow(p * c.qp(r + s), -m);
        return A;
      },
      [&](int m) {
        const std::array<SeriesParam, 3> num{c.pw(-r, -kSpeedR), c.pw(-s, -kSpeedS), c.pw(-m)};
        const std::array<SeriesParam, 3> den{SeriesParam::generic(p * q),
                                             c.pw(N + 1 - m - r, -kSpeedR),
                                             c.pw(N + 1 - m - s, -kSpeedS)};
        return regular_series_terms(num, den, q, p * c.qp(2 * N - m + 3), m);
      });
  return c.poch(Wide(-1), N) * c.norm_factor(r, s) * S;
}

Wide quantum_sum(const FamilySpec& spec, int r, int s) {
  const Ctx c(spec);
  const Wide p = std::get<QuantumQKrawtchouk>(spec.params).p.wide();
  const Wide q = c.q;
  const int N = c.N;
  const Wide S = regular_m_sum(
      c,
      [&](int m) {
        Regular A = c.rpoch(c.pw(-r, -kSpeedR), m) * c.rpoch(c.pw(-s, -kSpeedS), m);
        A /= c.rpoch(c.pw(1), m) * c.rpoch(-c.qp(1 - N), m) * c.rpoch(c.pw(-N), m);
        A *= ipow(p * c.qp(r + s + 1 - N), m);
        return A;
      },
      [&](int m) {
        const std::array<SeriesParam, 3> num{c.pw(r - N, kSpeedR), c.pw(s - N, kSpeedS),
                                             c.pw(-m)};
        const std::array<SeriesParam, 3> den{SeriesParam::generic(c.qp(-N) / p),
                                             c.pw(r + 1 - m, kSpeedR), c.pw(s + 1 - m, kSpeedS)};
        return regular_series_terms(num, den, q, c.qp(N - m + 2) / p, m);
      });
  // Norms are normalised with w(0) = 1, which absorbs (pq;q)_N/(q;q)_N.
  return c.poch(Wide(-1), N) * c.norm_factor(r, s) * S;
}

Wide dual_qk_sum(const FamilySpec& spec, int r, int s) {
  const Ctx c(spec);
  const Wide cc = std::get<DualQKrawtchouk>(spec.params).c.wide();
  const Wide q = c.q;
  const int N = c.N;
  const Wide S = regular_m_sum(
      c,
      [&](int m) {
        Regular A = c.rpoch(c.pw(r - N, kSpeedR), m) * c.rpoch(c.pw(s - N, kSpeedS), m);
        A /= c.rpoch(c.pw(1), m) * c.rpoch(-c.qp(1 - N), m) * c.rpoch(c.pw(-N), m);
        A *= c.poch(cc * c.qp(1 - N), m, 2) * ipow(-cc, -m) *
             c.qp(-(m * (m - 1)) / 2 + N * m - (r + s) * m);
        return A;
      },
      [&](int m) {
        const std::array<SeriesParam, 3> num{c.pw(-r, -kSpeedR), c.pw(-s, -kSpeedS), c.pw(-m)};
        const std::array<SeriesParam, 2> den{c.pw(N - m + 1 - r, -kSpeedR),
                                             c.pw(N - m + 1 - s, -kSpeedS)};
        return regular_series_terms(num, den, q, cc * c.qp(N + 2), m);
      });
  const Wide x = cc * c.qp(1 - N);
  return c.poch(x, N) * c.poch(Wide(-1), N) / c.poch(x, N, 2) * c.norm_factor(r, s) * S;
}

Wide qracah_sum(const FamilySpec& spec, int r, int s) {
  const Ctx c(spec);
  const auto& f = std::get<QRacah>(spec.params);
  const Wide al = f.alpha.wide(), be = f.beta.wide(), ga = f.gamma.wide();
  const Wide ab = al * be;
  const Wide g = ga / be;
  const Wide q = c.q;
  const int N = c.N;
  const Wide S = regular_m_sum(
      c,
      [&](int m) {
        Regular A = c.rpoch(c.pw(r - N, kSpeedR), m) * c.rpoch(c.pw(s - N, kSpeedS), m) *
                    c.rpoch(c.qp(-N - 1 - r) / ab, m) * c.rpoch(c.qp(-N - 1 - s) / ab, m);
        A /= c.rpoch(c.pw(1), m) * c.rpoch(c.qp(-N) * ga / ab, m) * c.rpoch(c.qp(-N) / be, m) *
             c.rpoch(c.qp(-N - 1) / ab, m) * c.rpoch(-c.qp(1 - N), m) * c.rpoch(c.pw(-N), m);
        A *= c.qp(m) * c.poch(g * c.qp(1 - N), m, 2);
        return A;
      },
      [&](int m) {
        const Wide a = ab * c.qp(N - m + 1);
        const auto G = [](const Wide& v) { return SeriesParam::generic(v); };
        const std::array<SeriesParam, 8> num{
            G(a),          G(be * c.qp(N - m + 1)), G(ab / ga * c.qp(N - m + 1)),
            c.pw(-m),      c.pw(-r, -kSpeedR),      c.pw(-s, -kSpeedS),
            G(ab * c.qp(r + 1)), G(ab * c.qp(s + 1))};
        const std::array<SeriesParam, 7> den{
            G(al * q),  G(ga * q),  G(ab * c.qp(N + 2)), G(ab * c.qp(N + 2 - m + r)),
            G(ab * c.qp(N + 2 - m + s)), c.pw(N + 1 - m - r, -kSpeedR),
            c.pw(N + 1 - m - s, -kSpeedS)};
        auto terms = regular_series_terms(num, den, q, g * c.qp(N + 2), m);
        for (std::size_t j = 0; j < terms.size(); ++j)
          terms[j] *= vwp_pair_reduce<Wide>(a, q, static_cast<int>(j));
        return terms;
      });
  const Wide x = g * c.qp(1 - N);
  return c.poch(x, N) * c.poch(Wide(-1), N) / c.poch(x, N, 2) * c.norm_factor(r, s) * S;
}

Wide qk_4phi3(const FamilySpec& spec, int r, int s) {
  const Ctx c(spec);
  const Wide p = as_qk(spec).p.wide();
  const int N = c.N;
  const Wide pre = c.poch(-c.qp(-s), r) * c.poch(-c.qp(-r), s) *
                   c.poch(c.qp(-N) / p, N - r - s) * c.poch(c.qp(-N), r + s) /
                   (c.poch(c.qp(-N), r) * c.poch(c.qp(-N), s));
  const std::array<Wide, 4> num{c.qp(-r), c.qp(-s), p * c.qp(N), c.qp(-r - s) / p};
  const std::array<Wide, 3> den{-c.qp(-r), -c.qp(-s), c.qp(1 + N - r - s)};
  return pre * c.norm_factor(r, s) * basic_hypergeometric(num, den, c.q, c.q);
}

Wide endpoint_wide(const FamilySpec& spec) {
  const Ctx c(spec);
  const int N = c.N;
  const Wide q = c.q;
  const Wide m1 = c.poch(Wide(-1), N);
  const Wide half_N = Wide(N) / 2;
  Wide raw;
  switch (spec.kind()) {
  case FamilyKind::QKrawtchouk: {
    const Wide p = as_qk(spec).p.wide();
    raw = m1 * sqrt(ipow(p, N) * c.qp(N * (N + 1) / 2) /
                    (c.poch(-p * q, N) * c.poch(-p * c.qp(N), N)));
    break;
  }
  case FamilyKind::AffineQKrawtchouk: {
    const Wide p = std::get<AffineQKrawtchouk>(spec.params).p.wide();
    raw = m1 * pow(p * q, half_N) * sqrt(c.poch(p * q, N));
    break;
  }
  case FamilyKind::QuantumQKrawtchouk: {
    const Wide p = std::get<QuantumQKrawtchouk>(spec.params).p.wide();
    const Wide rad = ((N % 2) ? Wide(-1) : Wide(1)) * c.poch(p * q, N);
    if (rad < 0)
      throw NegativeRadicand("(-1)^N (pq;q)_N is negative; p is outside its valid range");
    raw = m1 * ipow(p, -N) * pow(q, -Wide(3 * N * N + N) / 4) * sqrt(rad);
    break;
  }
  case FamilyKind::DualQKrawtchouk: {
    const Wide cc = std::get<DualQKrawtchouk>(spec.params).c.wide();
    raw = m1 * pow(-cc, half_N) * pow(q, -Wide(N * (N - 1)) / 4) /
          c.poch(cc * c.qp(1 - N), N, 2);
    break;
  }
  case FamilyKind::QHahn: {
    const auto& f = std::get<QHahn>(spec.params);
    const Wide al = f.alpha.wide(), be = f.beta.wide();
    raw = m1 * sqrt(c.poch(al * q, N) * c.poch(be * q, N) /
                    (c.poch(al * be * q * q, N) * c.poch(al * be * c.qp(N + 1), N)) *
                    ipow(al * q, N));
    break;
  }
  case FamilyKind::DualQHahn: {
    const auto& f = std::get<DualQHahn>(spec.params);
    const Wide ga = f.gamma.wide(), de = f.delta.wide();
    const bool equal = f.gamma.is_exact() && f.delta.is_exact()
                           ? f.gamma.exact() == f.delta.exact()
                           : f.gamma.value() == f.delta.value();
    if (equal)
      raw = m1 * pow(ga * q, half_N) / c.poch(-ga * q, N);
    else
      raw = m1 / abs(c.poch(ga * de * q * q, N, 2)) *
            sqrt(c.poch(ga * q, N) * c.poch(de * q, N) * ipow(ga * q, N));
    break;
  }
  case FamilyKind::QRacah: {
    const auto& f = std::get<QRacah>(spec.params);
    const Wide al = f.alpha.wide(), be = f.beta.wide(), ga = f.gamma.wide();
    const Wide g = ga / be;
    const Wide rad = ((N % 2) ? Wide(-1) : Wide(1)) * c.poch(al * q, N) * c.poch(be * q, N) *
                     c.poch(ga * q, N) * c.poch(al * be / ga * q, N) /
                     (c.poch(al * be * q * q, N) * c.poch(al * be * c.qp(N + 1), N));
    if (rad < 0)
      throw NegativeRadicand("q-Racah endpoint radicand is negative");
    raw = m1 * pow(g, half_N) * pow(q, -Wide(N * (N - 1)) / 4) /
          abs(c.poch(g * c.qp(1 - N), N, 2)) * sqrt(rad);
    break;
  }
  }
  return c.sigma[N] * c.sigma[0] * raw;
}

// Times tried for the phase condition: Q^N pi, and P^N pi for dual q-Hahn.
void require_phase_condition(const FamilySpec& spec) {
  require_valid(spec);
  const auto q = spec.rational_q();
  if (!q)
    throw InvalidArgument("closed forms at the transfer time need rational q");
  std::vector<ExactPhaseTime> tries{pst_time(*q, spec.N)};
  if (spec.kind() == FamilyKind::DualQHahn)
    tries.push_back(
        ExactPhaseTime{ExactRational(BigInt(pow(q->inv_num(), static_cast<unsigned>(spec.N))))});
  try {
    for (const auto& t : tries)
      if (phase_parity_check(spec, t).all_pass())
        return;
  } catch (const NonRationalSpectrum&) {
    throw PhaseConditionUnmet("phases cannot be certified: parameters are not exact rationals");
  }
  throw PhaseConditionUnmet("phases at the transfer time are not (-1)^k for this spec");
}

void require_kind(const FamilySpec& spec, FamilyKind kind) {
  if (spec.kind() != kind)
    throw InvalidArgument("closed form called with a spec of family " +
                          std::string(family_tag(spec.kind())));
}

bool is_endpoint_pair(const FamilySpec& spec, int r, int s) {
  return (r == spec.N && s == 0) || (r == 0 && s == spec.N);
}

ClosedFormResult finish(const FamilySpec& spec, int r, int s, const Wide& value,
                        std::string formula) {
  ClosedFormResult out;
  out.value = static_cast<double>(value);
  out.formula = std::move(formula);
  out.residual_vs_direct = std::fabs(out.value - direct_alternating_sum(spec, r, s));
  return out;
}

ClosedFormResult sum_or_endpoint(const FamilySpec& spec, int r, int s,
                                 Wide (*sum)(const FamilySpec&, int, int)) {
  if (is_endpoint_pair(spec, r, s))
    return finish(spec, r, s, endpoint_wide(spec), "endpoint");
  return finish(spec, r, s, sum(spec, r, s), "double-sum");
}

} // namespace

std::string_view to_string(Method m) {
  return m == Method::ClosedForm ? "ClosedForm" : "FallbackDirectSum";
}

double direct_alternating_sum(const FamilySpec& spec, int r, int s) {
  check_sites(spec, r, s);
  const auto U = orthonormal_matrix_wide(spec);
  Wide sum(0);
  for (int k = 0; k <= spec.N; ++k)
    sum += (k % 2 ? -1 : 1) * U[r][k] * U[s][k];
  return static_cast<double>(sum);
}

double closed_form_sum(const FamilySpec& spec, int r, int s) {
  check_sites(spec, r, s);
  switch (spec.kind()) {
  case FamilyKind::AffineQKrawtchouk:
    return static_cast<double>(affine_sum(spec, r, s));
  case FamilyKind::QuantumQKrawtchouk:
    return static_cast<double>(quantum_sum(spec, r, s));
  case FamilyKind::DualQKrawtchouk:
    return static_cast<double>(dual_qk_sum(spec, r, s));
  case FamilyKind::QRacah:
    return static_cast<double>(qracah_sum(spec, r, s));
  default:
    throw InvalidArgument("no kernel sum for family " + std::string(family_tag(spec.kind())));
  }
}

double qkrawtchouk_4phi3(const FamilySpec& spec, int r, int s) {
  check_sites(spec, r, s);
  if (r + s > spec.N)
    throw DenominatorZero("4phi3 denominator q^{1+N-r-s} vanishes before termination");
  return static_cast<double>(qk_4phi3(spec, r, s));
}

double endpoint_formula(const FamilySpec& spec) { return static_cast<double>(endpoint_wide(spec)); }

double qkrawtchouk_endpoint(const Number& p, const Number& q, int N) {
  FamilySpec spec{QKrawtchouk{p}, N, q};
  return endpoint_formula(spec);
}

ClosedFormResult f_T_qkrawtchouk(const FamilySpec& spec, int r, int s) {
  require_kind(spec, FamilyKind::QKrawtchouk);
  check_sites(spec, r, s);
  require_phase_condition(spec);
  if (r + s > spec.N) {
    ClosedFormResult out;
    out.value = direct_alternating_sum(spec, r, s);
    out.method = Method::FallbackDirectSum;
    out.formula = "direct-sum";
    return out;
  }
  return finish(spec, r, s, qk_4phi3(spec, r, s), "4phi3");
}

ClosedFormResult f_T_affine(const FamilySpec& spec, int r, int s) {
  require_kind(spec, FamilyKind::AffineQKrawtchouk);
  check_sites(spec, r, s);
  require_phase_condition(spec);
  if (is_endpoint_pair(spec, r, s))
    return finish(spec, r, s, endpoint_wide(spec), "endpoint");
  if (r == 0 || s == 0) {
    // Collapsed 2phi1 for f_{r,0}.
    const int k = r + s;
    const Ctx c(spec);
    const Wide p = std::get<AffineQKrawtchouk>(spec.params).p.wide();
    const std::array<Wide, 2> num{c.qp(k - c.N), Wide(0)};
    const std::array<Wide, 1> den{-c.qp(1 - c.N)};
    const Wide v = c.poch(Wide(-1), c.N) * c.norm_factor(r, s) *
                   basic_hypergeometric(num, den, c.q, Wide(1) / (p * c.qp(k)));
    return finish(spec, r, s, v, "2phi1");
  }
  return finish(spec, r, s, affine_sum(spec, r, s), "double-sum");
}

ClosedFormResult f_T_quantum(const FamilySpec& spec, int r, int s) {
  require_kind(spec, FamilyKind::QuantumQKrawtchouk);
  check_sites(spec, r, s);
  require_phase_condition(spec);
  return sum_or_endpoint(spec, r, s, quantum_sum);
}

ClosedFormResult f_T_dual_qk(const FamilySpec& spec, int r, int s) {
  require_kind(spec, FamilyKind::DualQKrawtchouk);
  check_sites(spec, r, s);
  require_phase_condition(spec);
  return sum_or_endpoint(spec, r, s, dual_qk_sum);
}

ClosedFormResult f_T_qracah(const FamilySpec& spec, int r, int s) {
  require_kind(spec, FamilyKind::QRacah);
  check_sites(spec, r, s);
  require_phase_condition(spec);
  return sum_or_endpoint(spec, r, s, qracah_sum);
}

double f_T_qhahn_N0(const FamilySpec& spec) {
  require_kind(spec, FamilyKind::QHahn);
  require_phase_condition(spec);
  return endpoint_formula(spec);
}

double f_T_dual_qhahn_N0(const FamilySpec& spec) {
  require_kind(spec, FamilyKind::DualQHahn);
  require_phase_condition(spec);
  return endpoint_formula(spec);
}

ClosedFormResult f_T(const FamilySpec& spec, int r, int s) {
  switch (spec.kind()) {
  case FamilyKind::QKrawtchouk:
    return f_T_qkrawtchouk(spec, r, s);
  case FamilyKind::AffineQKrawtchouk:
    return f_T_affine(spec, r, s);
  case FamilyKind::QuantumQKrawtchouk:
    return f_T_quantum(spec, r, s);
  case FamilyKind::DualQKrawtchouk:
    return f_T_dual_qk(spec, r, s);
  case FamilyKind::QRacah:
    return f_T_qracah(spec, r, s);
  case FamilyKind::QHahn:
  case FamilyKind::DualQHahn: {
    check_sites(spec, r, s);
    if (!is_endpoint_pair(spec, r, s))
      throw InvalidArgument("only f_{N,0}(T) has a closed form for this family");
    const double v = spec.kind() == FamilyKind::QHahn ? f_T_qhahn_N0(spec)
                                                      : f_T_dual_qhahn_N0(spec);
    return finish(spec, r, s, Wide(v), "endpoint");
  }
  }
  throw InvalidArgument("unknown family");
}

ArgmaxResult argmax_p(const RationalQ& q, int N, const std::vector<Number>& p_grid) {
  if (p_grid.empty())
    throw InvalidArgument("empty p grid");
  if (q.inv_parity_class() != ParityClass::OddOdd)
    throw NotOddOdd("argmax over p needs q^-1 odd/odd");
  ArgmaxResult best;
  best.value = -1.0;
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i].value() > 0))
      throw InvalidArgument("p grid values must be positive");
    const double v = std::fabs(qkrawtchouk_endpoint(p_grid[i], q.as_number(), N));
    if (v > best.value) {
      best.index = i;
      best.p = p_grid[i];
      best.value = v;
    }
  }
  return best;
}

} // namespace qchain
