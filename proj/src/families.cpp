#include "qchain/families.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace qchain {

namespace {

constexpr int kMaxN = 64;

const std::array<std::string_view, 7> kTags = {
    "q-krawtchouk", "affine-q-krawtchouk", "quantum-q-krawtchouk", "dual-q-krawtchouk",
    "q-hahn",       "dual-q-hahn",         "q-racah"};

Number qpow(const Number& q, int e) {
  if (q.is_exact())
    return Number(pow(q.exact(), e));
  return Number(std::pow(q.value(), e));
}

// -1, 0, +1 comparison; exact when both sides are exact.
int compare(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact())
    return a.exact() < b.exact() ? -1 : (a.exact() > b.exact() ? 1 : 0);
  return a.value() < b.value() ? -1 : (a.value() > b.value() ? 1 : 0);
}


Number div(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact())
    return Number(ExactRational(a.exact() / b.exact()));
  return Number(a.value() / b.value());
}

Wide wpow(const Wide& x, int e) { return ipow(x, e); }

Wide sign_pow(int e) { return (e % 2 == 0) ? Wide(1) : Wide(-1); }

// All formulas evaluated in Wide from the (possibly exact) inputs.
struct Model {
  FamilyKind kind;
  int N;
  Wide q;
  // p or c in a; (alpha, beta), (gamma, delta, beta) or (alpha, beta, gamma, delta)
  Wide a, b, c, d;
  bool pst = false;

  explicit Model(const FamilySpec& spec) : kind(spec.kind()), N(spec.N), q(spec.q.wide()) {
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, QKrawtchouk> || std::is_same_v<T, AffineQKrawtchouk> ||
                        std::is_same_v<T, QuantumQKrawtchouk>) {
            a = f.p.wide();
          } else if constexpr (std::is_same_v<T, DualQKrawtchouk>) {
            a = f.c.wide();
          } else if constexpr (std::is_same_v<T, QHahn>) {
            a = f.alpha.wide();
            b = f.beta.wide();
          } else if constexpr (std::is_same_v<T, DualQHahn>) {
            a = f.gamma.wide();
            b = f.delta.wide();
            c = derived_parameter(spec).wide(); // beta
          } else {
            a = f.alpha.wide();
            b = f.beta.wide();
            c = f.gamma.wide();
            d = derived_parameter(spec).wide(); // delta
          }
        },
        spec.params);
    pst = is_pst_point(spec);
  }

  Wide qp(int e) const { return wpow(q, e); }
  Wide poch(const Wide& x, int n) const { return pochhammer<Wide>(x, q, n); }
  Wide qn(int n) const { return (Wide(1) - qp(n)) / (Wide(1) - q); }

  Wide poly(int n, int x) const {
    const Wide zero(0);
    switch (kind) {
    case FamilyKind::QKrawtchouk: {
      std::array<Wide, 3> num{qp(-n), qp(-x), -a * qp(n)};
      std::array<Wide, 2> den{qp(-N), zero};
      return basic_hypergeometric(num, den, q, q);
    }
    case FamilyKind::AffineQKrawtchouk: {
      std::array<Wide, 3> num{qp(-n), qp(-x), zero};
      std::array<Wide, 2> den{a * q, qp(-N)};
      return basic_hypergeometric(num, den, q, q);
    }
    case FamilyKind::QuantumQKrawtchouk: {
      std::array<Wide, 2> num{qp(-n), qp(-x)};
      std::array<Wide, 1> den{qp(-N)};
      return basic_hypergeometric(num, den, q, a * qp(n + 1));
    }
    case FamilyKind::DualQKrawtchouk: {
      std::array<Wide, 3> num{qp(-n), qp(-x), a * qp(x - N)};
      std::array<Wide, 2> den{qp(-N), zero};
      return basic_hypergeometric(num, den, q, q);
    }
    case FamilyKind::QHahn: {
      std::array<Wide, 3> num{qp(-n), a * b * qp(n + 1), qp(-x)};
      std::array<Wide, 2> den{a * q, qp(-N)};
      return basic_hypergeometric(num, den, q, q);
    }
    case FamilyKind::DualQHahn: {
      std::array<Wide, 3> num{qp(-n), qp(-x), a * b * qp(x + 1)};
      std::array<Wide, 2> den{a * q, qp(-N)};
      return basic_hypergeometric(num, den, q, q);
    }
    case FamilyKind::QRacah: {
      std::array<Wide, 4> num{qp(-n), a * b * qp(n + 1), qp(-x), c * d * qp(x + 1)};
      std::array<Wide, 3> den{a * q, b * d * q, c * q};
      return basic_hypergeometric(num, den, q, q);
    }
    }
    return Wide(0);
  }

  Wide weight(int x) const {
    switch (kind) {
    case FamilyKind::QKrawtchouk:
      if (pst)
        return poch(q, N) / (poch(q, x) * poch(q, N - x)) * qp(x * (x - 1) / 2);
      return poch(qp(-N), x) / poch(q, x) * wpow(-a, -x);
    case FamilyKind::AffineQKrawtchouk:
      return poch(a * q, x) * poch(q, N) / (poch(q, x) * poch(q, N - x)) * wpow(a * q, -x);
    case FamilyKind::QuantumQKrawtchouk:
      // Normalised so that w(0) = 1, which also makes every weight positive.
      return poch(a * q, N - x) / (poch(q, x) * poch(q, N - x)) * sign_pow(x) *
             qp(x * (x - 1) / 2) * poch(q, N) / poch(a * q, N);
    case FamilyKind::DualQKrawtchouk:
      return poch(a * qp(-N), x) * poch(qp(-N), x) / (poch(q, x) * poch(a * q, x)) *
             (Wide(1) - a * qp(2 * x - N)) / (Wide(1) - a * qp(-N)) * wpow(a, -x) *
             qp(x * (2 * N - x));
    case FamilyKind::QHahn:
      return poch(a * q, x) * poch(qp(-N), x) / (poch(q, x) * poch(qp(-N) / b, x)) *
             wpow(a * b * q, -x);
    case FamilyKind::DualQHahn: {
      const Wide gd = a * b;
      return poch(qp(-N), x) * poch(a * q, x) * poch(gd * q, x) /
             (poch(q, x) * poch(gd * qp(N + 2), x) * poch(b * q, x)) *
             (Wide(1) - gd * qp(2 * x + 1)) / (Wide(1) - gd * q) * wpow(-a, -x) *
             qp(N * x - x * (x + 1) / 2);
    }
    case FamilyKind::QRacah: {
      const Wide gd = c * d;
      return poch(a * q, x) * poch(b * d * q, x) * poch(c * q, x) * poch(gd * q, x) /
             (poch(q, x) * poch(gd * q / a, x) * poch(c * q / b, x) * poch(d * q, x)) *
             (Wide(1) - gd * qp(2 * x + 1)) / (Wide(1) - gd * q) * wpow(a * b * q, -x);
    }
    }
    return Wide(0);
  }

  Wide norm(int n) const {
    switch (kind) {
    case FamilyKind::QKrawtchouk:
      if (pst)
        return Wide(2) * poch(q, n) * poch(-q, n) * poch(q, N - n) * poch(-q, N - n) /
               (poch(q, N) * (qp(n) + qp(N - n)));
      return poch(q, n) * poch(-a * qp(N + 1), n) / (poch(-a, n) * poch(qp(-N), n)) *
             (Wide(1) + a) / (Wide(1) + a * qp(2 * n)) * poch(-a * q, N) * wpow(a, -N) *
             qp(-(N * (N + 1) / 2)) * wpow(-a * qp(-N), n) * qp(n * n);
    case FamilyKind::AffineQKrawtchouk:
      return poch(q, n) * poch(q, N - n) / (poch(a * q, n) * poch(q, N)) * wpow(a * q, n - N);
    case FamilyKind::QuantumQKrawtchouk:
      return poch(q, N - n) * poch(q, n) * poch(a * q, n) / (poch(q, N) * poch(a * q, N)) *
             sign_pow(N - n) * wpow(a, N) * qp(N * n + N * (N + 1) / 2 - n * (n + 1) / 2);
    case FamilyKind::DualQKrawtchouk:
      return poch(q, n) * poch(Wide(1) / a, N) / poch(qp(-N), n) * wpow(a * qp(-N), n);
    case FamilyKind::QHahn: {
      const Wide ab = a * b;
      return poch(ab * q * q, N) / poch(b * q, N) * wpow(a * q, -N) * poch(q, n) *
             poch(ab * qp(N + 2), n) * poch(b * q, n) /
             (poch(qp(-N), n) * poch(a * q, n) * poch(ab * q, n)) * (Wide(1) - ab * q) /
             (Wide(1) - ab * qp(2 * n + 1)) * wpow(-a, n) * qp(n * (n + 1) / 2 - N * n);
    }
    case FamilyKind::DualQHahn: {
      const Wide be = c;
      return poch(be / a, N) / poch(be * q, N) * poch(q, n) * poch(be * q, n) /
             (poch(qp(-N), n) * poch(a * q, n)) * wpow(a / be * qp(-N), n);
    }
    case FamilyKind::QRacah: {
      const Wide ab = a * b;
      return poch(ab * q * q, N) * poch(b / c, N) / (poch(ab / c * q, N) * poch(b * q, N)) *
             poch(q, n) * poch(ab / c * q, n) * poch(ab * qp(N + 2), n) * poch(b * q, n) /
             (poch(qp(-N), n) * poch(a * q, n) * poch(ab * q, n) * poch(c * q, n)) *
             (Wide(1) - ab * q) / (Wide(1) - ab * qp(2 * n + 1)) * wpow(c / b * qp(-N), n);
    }
    }
    return Wide(0);
  }

  Wide eps(int k) const {
    const Wide base = -qn(-k);
    switch (kind) {
    case FamilyKind::DualQKrawtchouk:
      return base * (Wide(1) - a * qp(k - N));
    case FamilyKind::DualQHahn:
      return base * (Wide(1) - a * b * qp(k + 1));
    case FamilyKind::QRacah:
      return base * (Wide(1) - c * d * qp(k + 1));
    default:
      return base;
    }
  }

  // Recurrence coefficients A_n, C_n of the 3phi2 / 4phi3 families.
  Wide A(int n) const {
    switch (kind) {
    case FamilyKind::QKrawtchouk:
      return (Wide(1) - qp(n - N)) * (Wide(1) + a * qp(n)) /
             ((Wide(1) + a * qp(2 * n)) * (Wide(1) + a * qp(2 * n + 1)));
    case FamilyKind::QHahn: {
      const Wide ab = a * b;
      return (Wide(1) - qp(n - N)) * (Wide(1) - a * qp(n + 1)) * (Wide(1) - ab * qp(n + 1)) /
             ((Wide(1) - ab * qp(2 * n + 1)) * (Wide(1) - ab * qp(2 * n + 2)));
    }
    case FamilyKind::DualQHahn:
      return (Wide(1) - qp(n - N)) * (Wide(1) - a * qp(n + 1));
    case FamilyKind::QRacah: {
      const Wide ab = a * b;
      return (Wide(1) - a * qp(n + 1)) * (Wide(1) - ab * qp(n + 1)) *
             (Wide(1) - b * d * qp(n + 1)) * (Wide(1) - c * qp(n + 1)) /
             ((Wide(1) - ab * qp(2 * n + 1)) * (Wide(1) - ab * qp(2 * n + 2)));
    }
    default:
      return Wide(0);
    }
  }

  Wide C(int n) const {
    switch (kind) {
    case FamilyKind::QKrawtchouk:
      return -a * qp(2 * n - N - 1) * (Wide(1) + a * qp(n + N)) * (Wide(1) - qp(n)) /
             ((Wide(1) + a * qp(2 * n - 1)) * (Wide(1) + a * qp(2 * n)));
    case FamilyKind::QHahn: {
      const Wide ab = a * b;
      return -a * qp(n - N) * (Wide(1) - qp(n)) * (Wide(1) - b * qp(n)) *
             (Wide(1) - ab * qp(n + N + 1)) /
             ((Wide(1) - ab * qp(2 * n)) * (Wide(1) - ab * qp(2 * n + 1)));
    }
    case FamilyKind::DualQHahn:
      return a * q * (Wide(1) - qp(n)) * (b - qp(n - N - 1));
    case FamilyKind::QRacah: {
      const Wide ab = a * b;
      return q * (Wide(1) - qp(n)) * (Wide(1) - b * qp(n)) * (c - ab * qp(n)) *
             (d - a * qp(n)) / ((Wide(1) - ab * qp(2 * n)) * (Wide(1) - ab * qp(2 * n + 1)));
    }
    default:
      return Wide(0);
    }
  }

  // Coupling as produced by the recurrence; its sign depends on the family
  // parameters. The chain stores |J| and the eigenvector rows absorb the signs.
  Wide raw_J(int n) const {
    if (kind == FamilyKind::QKrawtchouk && pst) {
      const Wide u = qp(N - n), v = qp(n + 1);
      return sqrt(qn(n + 1) * qn(N - n)) * q / (u + v) *
             sqrt((Wide(1) + u) * (Wide(1) + v) / ((u + qp(n + 2)) * (qp(N - n + 1) + v)));
    }
    const Wide ratio = sqrt(norm(n + 1) / norm(n));
    switch (kind) {
    case FamilyKind::AffineQKrawtchouk:
      return -qn(n - N) * (Wide(1) - a * qp(n + 1)) * ratio;
    case FamilyKind::QuantumQKrawtchouk:
      return -qn(n - N) / (a * qp(2 * n + 1)) * ratio;
    case FamilyKind::DualQKrawtchouk:
      return -qn(n - N) * ratio;
    default:
      return -A(n) / (Wide(1) - q) * ratio;
    }
  }

  Wide J(int n) const { return abs(raw_J(n)); }

  /// sigma_n = prod_{i<n} sign(raw J_i).
  std::vector<int> row_signs() const {
    std::vector<int> sigma(N + 1, 1);
    for (int n = 0; n < N; ++n)
      sigma[n + 1] = raw_J(n) < 0 ? -sigma[n] : sigma[n];
    return sigma;
  }

  Wide h(int n) const {
    switch (kind) {
    case FamilyKind::QKrawtchouk:
      if (pst) {
        const Wide s = qp(N - n) + qp(n);
        return qn(n) * (Wide(1) + qp(n)) / (s * (qp(N - n + 1) + qp(n))) +
               qn(N - n) * (Wide(1) + qp(N - n)) / (s * (qp(N - n) + qp(n + 1)));
      }
      return -(A(n) + C(n)) / (Wide(1) - q);
    case FamilyKind::AffineQKrawtchouk:
      return qn(n) * a * qp(n - N) - qn(n - N) * (Wide(1) - a * qp(n + 1));
    case FamilyKind::QuantumQKrawtchouk:
      return -qn(n) * (Wide(1) - a * qp(n)) / (a * qp(2 * n)) - qn(n - N) / (a * qp(2 * n + 1));
    case FamilyKind::DualQKrawtchouk:
      return -qn(n - N) - a * qp(-N) * qn(n);
    default:
      return -(A(n) + C(n)) / (Wide(1) - q);
    }
  }
};

void check_index(const FamilySpec& spec, int i, const char* what) {
  if (i < 0 || i > spec.N)
    throw InvalidArgument(std::string(what) + " out of range 0..N");
}

} // namespace

std::string_view family_tag(FamilyKind kind) { return kTags[static_cast<int>(kind)]; }

std::optional<FamilyKind> family_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kTags.size(); ++i)
    if (kTags[i] == tag)
      return static_cast<FamilyKind>(i);
  return std::nullopt;
}

std::optional<RationalQ> FamilySpec::rational_q() const {
  if (!q.is_exact())
    return std::nullopt;
  const ExactRational& v = q.exact();
  return RationalQ(numerator(v), denominator(v));
}

std::vector<std::pair<std::string, Number>> FamilySpec::named_params() const {
  return std::visit(
      [](const auto& f) -> std::vector<std::pair<std::string, Number>> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DualQKrawtchouk>)
          return {{"c", f.c}};
        else if constexpr (std::is_same_v<T, QHahn>)
          return {{"alpha", f.alpha}, {"beta", f.beta}};
        else if constexpr (std::is_same_v<T, DualQHahn>)
          return {{"gamma", f.gamma}, {"delta", f.delta}};
        else if constexpr (std::is_same_v<T, QRacah>)
          return {{"alpha", f.alpha}, {"beta", f.beta}, {"gamma", f.gamma}};
        else
          return {{"p", f.p}};
      },
      params);
}

bool FamilySpec::all_exact() const {
  if (!q.is_exact())
    return false;
  for (const auto& [name, v] : named_params())
    if (!v.is_exact())
      return false;
  return true;
}

FamilySpec make_spec(FamilyParams params, int N, const RationalQ& q) {
  return FamilySpec{std::move(params), N, q.as_number()};
}

Number derived_parameter(const FamilySpec& spec) {
  const Number t = qpow(spec.q, -spec.N - 1);
  if (const auto* r = std::get_if<QRacah>(&spec.params))
    return div(t, r->beta);
  if (const auto* h = std::get_if<DualQHahn>(&spec.params))
    return div(t, h->delta);
  throw InvalidArgument("family has no derived parameter");
}

bool is_pst_point(const FamilySpec& spec) {
  const auto* k = std::get_if<QKrawtchouk>(&spec.params);
  if (!k)
    return false;
  const Number target = qpow(spec.q, -spec.N);
  if (k->p.is_exact() && target.is_exact())
    return k->p.exact() == target.exact();
  return std::fabs(k->p.value() - target.value()) <= 1e-14 * std::fabs(target.value());
}

std::string ValidationReport::message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i)
    os << (i ? "; " : "") << violations[i];
  return os.str();
}

ValidationReport validate(const FamilySpec& spec) {
  ValidationReport rep;
  auto fail = [&](std::string m) { rep.violations.push_back(std::move(m)); };
  if (spec.N < 0)
    fail("N must be nonnegative");
  if (spec.N > kMaxN)
    fail("N exceeds the supported envelope of 64");
  const double qv = spec.q.value();
  if (!(qv > 0) || !std::isfinite(qv))
    fail("q must be positive");
  else if (compare(spec.q, Number(ExactRational(1))) == 0)
    fail("q must differ from 1");
  for (const auto& [name, v] : spec.named_params())
    if (!std::isfinite(v.value()))
      fail("parameter " + name + " must be finite");
  if (!rep.ok())
    return rep;

  const int N = spec.N;
  const bool small_q = qv < 1;
  const Number& q = spec.q;
  switch (spec.kind()) {
  case FamilyKind::QKrawtchouk:
    if (std::get<QKrawtchouk>(spec.params).p.value() <= 0)
      fail("p must be positive");
    break;
  case FamilyKind::AffineQKrawtchouk: {
    const Number& p = std::get<AffineQKrawtchouk>(spec.params).p;
    const Number bound = small_q ? qpow(q, -1) : qpow(q, -N);
    if (p.value() <= 0)
      fail("p must be positive");
    else if (compare(p, bound) >= 0)
      fail(small_q ? "p must be below q^-1 when q < 1" : "p must be below q^-N when q > 1");
    break;
  }
  case FamilyKind::QuantumQKrawtchouk: {
    const Number& p = std::get<QuantumQKrawtchouk>(spec.params).p;
    const Number bound = small_q ? qpow(q, -N) : qpow(q, -1);
    if (compare(p, bound) <= 0)
      fail(small_q ? "p must exceed q^-N when q < 1" : "p must exceed q^-1 when q > 1");
    break;
  }
  case FamilyKind::DualQKrawtchouk:
    if (std::get<DualQKrawtchouk>(spec.params).c.value() >= 0)
      fail("c must be negative");
    break;
  case FamilyKind::QHahn:
  case FamilyKind::DualQHahn:
  case FamilyKind::QRacah:
    if (!small_q)
      fail(std::string(family_tag(spec.kind())) + " requires 0 < q < 1");
    for (const auto& [name, v] : spec.named_params())
      if (v.value() == 0)
        fail("parameter " + name + " must be nonzero");
    break;
  }
  if (!rep.ok())
    return rep;

  // Direct positivity sweep over the support.
  try {
    Model m(spec);
    for (int x = 0; x <= N; ++x) {
      Wide w = m.weight(x);
      if (!(w > 0) || !isfinite(w)) {
        fail("weight w(" + std::to_string(x) + ") is not positive");
        break;
      }
    }
    for (int n = 0; n <= N; ++n) {
      Wide d = m.norm(n);
      if (!(d > 0) || !isfinite(d)) {
        fail("norm d_" + std::to_string(n) + " is not positive");
        break;
      }
    }
  } catch (const Error& e) {
    fail(std::string("weights or norms undefined: ") + e.what());
  }
  return rep;
}

void require_valid(const FamilySpec& spec) {
  ValidationReport rep = validate(spec);
  if (!rep.ok())
    throw ValidationError(rep.message());
}

double evaluate(const FamilySpec& spec, int n, int x) {
  check_index(spec, n, "degree");
  check_index(spec, x, "grid point");
  return static_cast<double>(Model(spec).poly(n, x));
}

std::vector<Wide> weights_wide(const FamilySpec& spec) {
  Model m(spec);
  std::vector<Wide> w(spec.N + 1);
  for (int x = 0; x <= spec.N; ++x)
    w[x] = m.weight(x);
  return w;
}

std::vector<Wide> norms_wide(const FamilySpec& spec) {
  Model m(spec);
  std::vector<Wide> d(spec.N + 1);
  for (int n = 0; n <= spec.N; ++n)
    d[n] = m.norm(n);
  return d;
}

std::vector<std::vector<Wide>> polynomial_matrix_wide(const FamilySpec& spec) {
  Model m(spec);
  std::vector<std::vector<Wide>> P(spec.N + 1, std::vector<Wide>(spec.N + 1));
  for (int n = 0; n <= spec.N; ++n)
    for (int x = 0; x <= spec.N; ++x)
      P[n][x] = m.poly(n, x);
  return P;
}

std::vector<std::vector<Wide>> orthonormal_matrix_wide(const FamilySpec& spec) {
  auto U = polynomial_matrix_wide(spec);
  const auto w = weights_wide(spec);
  const auto d = norms_wide(spec);
  const auto sigma = Model(spec).row_signs();
  for (int n = 0; n <= spec.N; ++n)
    for (int x = 0; x <= spec.N; ++x) {
      const Wide r = w[x] / d[n];
      if (r < 0)
        throw NegativeRadicand("w(x)/d_n is negative; spec is not valid");
      U[n][x] *= sigma[n] * sqrt(r);
    }
  return U;
}

std::vector<int> row_signs(const FamilySpec& spec) { return Model(spec).row_signs(); }

std::vector<Wide> eigenvalues_wide(const FamilySpec& spec) {
  Model m(spec);
  std::vector<Wide> e(spec.N + 1);
  for (int k = 0; k <= spec.N; ++k)
    e[k] = m.eps(k);
  return e;
}

OrthogonalityData orthogonality_data(const FamilySpec& spec) {
  OrthogonalityData out;
  for (const Wide& w : weights_wide(spec))
    out.weights.push_back(LogSign::from_wide(w));
  for (const Wide& d : norms_wide(spec))
    out.norms.push_back(LogSign::from_wide(d));
  return out;
}

double orthonormal_value(const FamilySpec& spec, int n, int x) {
  check_index(spec, n, "degree");
  check_index(spec, x, "grid point");
  Model m(spec);
  const Wide r = m.weight(x) / m.norm(n);
  if (r < 0)
    throw NegativeRadicand("w(x)/d_n is negative; spec is not valid");
  return static_cast<double>(m.row_signs()[n] * sqrt(r) * m.poly(n, x));
}

std::vector<std::vector<double>> orthonormal_matrix(const FamilySpec& spec) {
  const auto W = orthonormal_matrix_wide(spec);
  std::vector<std::vector<double>> U(W.size(), std::vector<double>(W.size()));
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = 0; j < W.size(); ++j)
      U[i][j] = static_cast<double>(W[i][j]);
  return U;
}

SpinChain recurrence_coefficients(const FamilySpec& spec) {
  Model m(spec);
  SpinChain chain;
  chain.source = std::string(family_tag(spec.kind()));
  for (int n = 0; n < spec.N; ++n)
    chain.J.push_back(static_cast<double>(m.J(n)));
  for (int n = 0; n <= spec.N; ++n)
    chain.h.push_back(static_cast<double>(m.h(n)));
  return chain;
}

Number eigenvalue(const FamilySpec& spec, int k) {
  check_index(spec, k, "eigenvalue index");
  bool exact = spec.q.is_exact();
  switch (spec.kind()) {
  case FamilyKind::DualQKrawtchouk:
  case FamilyKind::DualQHahn:
  case FamilyKind::QRacah:
    exact = spec.all_exact();
    break;
  default:
    break;
  }
  if (!exact)
    return Number(static_cast<double>(Model(spec).eps(k)));
  const ExactRational q = spec.q.exact();
  const ExactRational base = -(ExactRational(1) - pow(q, -k)) / (ExactRational(1) - q);
  const int N = spec.N;
  switch (spec.kind()) {
  case FamilyKind::DualQKrawtchouk:
    return Number(ExactRational(
        base * (1 - std::get<DualQKrawtchouk>(spec.params).c.exact() * pow(q, k - N))));
  case FamilyKind::DualQHahn: {
    const auto& f = std::get<DualQHahn>(spec.params);
    return Number(ExactRational(base * (1 - f.gamma.exact() * f.delta.exact() * pow(q, k + 1))));
  }
  case FamilyKind::QRacah: {
    const auto& f = std::get<QRacah>(spec.params);
    const ExactRational delta = derived_parameter(spec).exact();
    return Number(ExactRational(base * (1 - f.gamma.exact() * delta * pow(q, k + 1))));
  }
  default:
    return Number(base);
  }
}

std::vector<Number> eigenvalues(const FamilySpec& spec) {
  std::vector<Number> out;
  for (int k = 0; k <= spec.N; ++k)
    out.push_back(eigenvalue(spec, k));
  return out;
}

FamilySpec pst_spec(const RationalQ& q, int N) {
  if (q.inv_parity_class() != ParityClass::OddOdd)
    throw NotOddOdd("q^-1 = " + q.inv_num().str() + "/" + q.inv_den().str() +
                    " is not a quotient of odd integers (" +
                    std::string(to_string(q.inv_parity_class())) + ")");
  if (N < 0)
    throw InvalidArgument("N must be nonnegative");
  return make_spec(QKrawtchouk{Number(pow(q.value(), -N))}, N, q);
}

} // namespace qchain
