#include "qchain/qseries.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qchain {

std::string to_string(const ExactRational& r) {
  BigInt n = numerator(r);
  BigInt d = denominator(r);
  if (d == 1)
    return n.str();
  return n.str() + "/" + d.str();
}

std::string to_string(const BigInt& i) { return i.str(); }

double to_double(const ExactRational& r) { return r.convert_to<double>(); }

Wide to_wide(const ExactRational& r) {
  return Wide(numerator(r)) / Wide(denominator(r));
}

bool is_integer(const ExactRational& r) { return denominator(r) == 1; }

ExactRational pow(const ExactRational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0)
      throw InvalidArgument("zero to a negative power");
    return pow(ExactRational(1) / base, -exponent);
  }
  ExactRational result(1);
  ExactRational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u)
      result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (c < '0' || c > '9')
      return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

// Signed decimal with optional fraction and exponent, e.g. "-1.25e-3".
ExactRational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  int exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6)
      throw ParseError("bad exponent in number");
    exp10 = std::stoi(std::string(es));
    if (eneg)
      exp10 = -exp10;
    s = s.substr(0, epos);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s))
      throw ParseError("not a number: " + std::string(s));
    digits = std::string(s);
  } else {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw ParseError("not a number: " + std::string(s));
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<int>(fp.size());
  }
  ExactRational value{BigInt(digits)};
  value *= pow(ExactRational(10), exp10);
  return negative ? ExactRational(-value) : value;
}

} // namespace

ExactRational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty())
    throw ParseError("empty number");
  auto slash = s.find('/');
  if (slash == std::string_view::npos)
    return parse_decimal(s);
  ExactRational num = parse_decimal(trim(s.substr(0, slash)));
  ExactRational den = parse_decimal(trim(s.substr(slash + 1)));
  if (den == 0)
    throw ParseError("zero denominator in " + std::string(s));
  return num / den;
}

// ---------------------------------------------------------------------------

Number::Number(double value) : value_(value) {}

Number::Number(ExactRational exact) : value_(to_double(exact)), exact_(std::move(exact)) {}

Number::Number(long long numerator, long long denominator)
    : Number(ExactRational(BigInt(numerator), BigInt(denominator))) {
  if (denominator == 0)
    throw InvalidArgument("zero denominator");
}

const ExactRational& Number::exact() const {
  if (!exact_)
    throw InvalidArgument("value is not an exact rational");
  return *exact_;
}

Wide Number::wide() const { return exact_ ? to_wide(*exact_) : Wide(value_); }

std::string Number::to_string() const {
  if (exact_)
    return qchain::to_string(*exact_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ParityClass c) {
  switch (c) {
  case ParityClass::OddOdd:
    return "OddOdd";
  case ParityClass::EvenOverOdd:
    return "EvenOverOdd";
  case ParityClass::OddOverEven:
    return "OddOverEven";
  }
  return "?";
}

RationalQ::RationalQ(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_ <= 0 || den_ <= 0)
    throw InvalidArgument("q must be a positive rational");
  BigInt g = gcd(num_, den_);
  num_ /= g;
  den_ /= g;
  if (num_ == den_)
    throw InvalidArgument("q must differ from 1");
}

ParityClass RationalQ::inv_parity_class() const {
  const bool p_odd = bit_test(inv_num(), 0);
  const bool q_odd = bit_test(inv_den(), 0);
  if (p_odd && q_odd)
    return ParityClass::OddOdd;
  // Coprime, so exactly one of P, Q is even.
  return p_odd ? ParityClass::OddOverEven : ParityClass::EvenOverOdd;
}

// ---------------------------------------------------------------------------

LogSign::LogSign(int sign, double logmag) : sign_(sign < 0 ? -1 : (sign > 0 ? 1 : 0)), logmag_(logmag) {}

LogSign LogSign::from_double(double x) {
  if (x == 0.0)
    return zero();
  return LogSign(x < 0 ? -1 : 1, std::log(std::fabs(x)));
}

LogSign LogSign::from_wide(const Wide& x) {
  if (x == 0)
    return zero();
  return LogSign(x < 0 ? -1 : 1, static_cast<double>(log(abs(x))));
}

double LogSign::to_double() const {
  if (sign_ == 0)
    return 0.0;
  return sign_ * std::exp(logmag_);
}

Wide LogSign::to_wide() const {
  if (sign_ == 0)
    return Wide(0);
  return sign_ * exp(Wide(logmag_));
}

LogSign LogSign::sqrt() const {
  if (sign_ < 0)
    throw NegativeRadicand("square root of a negative LogSign");
  if (sign_ == 0)
    return zero();
  return LogSign(1, 0.5 * logmag_);
}

LogSign LogSign::pow(int exponent) const {
  if (exponent == 0)
    return LogSign(1, 0.0);
  if (sign_ == 0) {
    if (exponent < 0)
      throw InvalidArgument("zero to a negative power");
    return zero();
  }
  int s = (sign_ < 0 && (exponent % 2 != 0)) ? -1 : 1;
  return LogSign(s, logmag_ * exponent);
}

LogSign& LogSign::operator*=(const LogSign& o) {
  sign_ *= o.sign_;
  logmag_ = sign_ == 0 ? 0.0 : logmag_ + o.logmag_;
  return *this;
}

LogSign& LogSign::operator/=(const LogSign& o) {
  if (o.sign_ == 0)
    throw InvalidArgument("LogSign division by zero");
  sign_ *= o.sign_;
  logmag_ = sign_ == 0 ? 0.0 : logmag_ - o.logmag_;
  return *this;
}

// ---------------------------------------------------------------------------

double q_number(int n, double q) { return q_number<double>(n, q); }

Wide ipow(const Wide& x, int e) {
  Wide r(1);
  Wide b = e < 0 ? Wide(1) / x : x;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  while (n) {
    if (n & 1u)
      r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

ExactRational q_number_exact(int n, const RationalQ& q) {
  const ExactRational qv = q.value();
  return (ExactRational(1) - pow(qv, n)) / (ExactRational(1) - qv);
}

LogSign q_pochhammer(double a, double q, int n) {
  if (n < 0)
    throw InvalidArgument("q_pochhammer requires n >= 0");
  LogSign acc(1, 0.0);
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    acc *= LogSign::from_double(1.0 - a * qk);
    if (acc.is_zero())
      return acc;
    qk *= q;
  }
  return acc;
}

ExactRational q_pochhammer_exact(const ExactRational& a, const RationalQ& q, int n) {
  if (n < 0)
    throw InvalidArgument("q_pochhammer requires n >= 0");
  ExactRational acc(1);
  ExactRational qk(1);
  const ExactRational qv = q.value();
  for (int k = 0; k < n; ++k) {
    acc *= ExactRational(1) - a * qk;
    qk *= qv;
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

template <class Real>
std::optional<int> termination_index_impl(std::span<const Real> numer, const Real& q,
                                          const Real& tol) {
  using std::abs;
  using std::log;
  using std::pow;
  using std::round;
  std::optional<int> best;
  const Real lq = log(q);
  for (const Real& a : numer) {
    if (a <= 0)
      continue;
    Real mr = round(-log(a) / lq);
    if (mr < 0 || mr > kMaxTerminationIndex)
      continue;
    int m = static_cast<int>(mr);
    if (abs(a * pow(q, m) - Real(1)) < tol && (!best || m < *best))
      best = m;
  }
  return best;
}

template <class Real>
Real series_sum(std::span<const Real> numer, std::span<const Real> denom, const Real& q,
                const Real& z, int m, const Real& tol) {
  using std::abs;
  const int A = static_cast<int>(numer.size());
  const int B = static_cast<int>(denom.size());
  const int e = 1 + B - A;
  Real term(1);
  Real sum(1);
  Real qk(1);
  for (int k = 0; k < m; ++k) {
    Real ratio = z;
    for (const Real& a : numer)
      ratio *= Real(1) - a * qk;
    for (const Real& b : denom) {
      Real f = Real(1) - b * qk;
      if (abs(f) < tol)
        throw DenominatorZero("denominator q-shifted factorial vanishes before termination");
      ratio /= f;
    }
    ratio /= Real(1) - qk * q;
    // [(-1)^k q^{k(k-1)/2}]^e contributes (-q^k)^e from k to k+1
    for (int i = 0; i < std::abs(e); ++i) {
      if (e > 0)
        ratio *= -qk;
      else
        ratio /= -qk;
    }
    term *= ratio;
    sum += term;
    qk *= q;
  }
  return sum;
}

} // namespace

std::optional<int> termination_index(std::span<const double> numer, double q) {
  return termination_index_impl<double>(numer, q, kTerminationTolerance);
}

std::optional<int> termination_index(std::span<const Wide> numer, const Wide& q) {
  return termination_index_impl<Wide>(numer, q, Wide(1e-30));
}

double basic_hypergeometric(std::span<const double> numer, std::span<const double> denom,
                            double q, double z) {
  if (!(q > 0) || q == 1.0)
    throw InvalidArgument("basic hypergeometric series requires q > 0, q != 1");
  auto m = termination_index(numer, q);
  if (!m)
    throw NonTerminating("no numerator parameter is q^{-m}");
  const int A = static_cast<int>(numer.size());
  const int B = static_cast<int>(denom.size());
  const int e = 1 + B - A;
  // Terms as LogSign products, summed in plain arithmetic.
  double sum = 1.0;
  for (int n = 1; n <= *m; ++n) {
    LogSign t(1, 0.0);
    for (double a : numer)
      t *= q_pochhammer(a, q, n);
    if (t.is_zero())
      continue;
    for (double b : denom) {
      LogSign pb = q_pochhammer(b, q, n);
      // Catch near-zero factors that rounding left nonzero.
      double qk = std::pow(q, n - 1);
      if (pb.is_zero() || std::fabs(1.0 - b * qk) < kTerminationTolerance)
        throw DenominatorZero("denominator q-shifted factorial vanishes before termination");
      t /= pb;
    }
    t /= q_pochhammer(q, q, n);
    LogSign f = LogSign((n % 2 == 0) ? 1 : -1, 0.5 * n * (n - 1) * std::log(q)).pow(e);
    t *= f;
    t *= LogSign::from_double(z).pow(n);
    sum += t.to_double();
  }
  return sum;
}

Wide basic_hypergeometric(std::span<const Wide> numer, std::span<const Wide> denom,
                          const Wide& q, const Wide& z) {
  if (!(q > 0) || q == 1)
    throw InvalidArgument("basic hypergeometric series requires q > 0, q != 1");
  auto m = termination_index(numer, q);
  if (!m)
    throw NonTerminating("no numerator parameter is q^{-m}");
  return series_sum<Wide>(numer, denom, q, z, *m, Wide(1e-40));
}

ExactRational basic_hypergeometric_exact(std::span<const ExactRational> numer,
                                         std::span<const ExactRational> denom,
                                         const RationalQ& q, const ExactRational& z) {
  const ExactRational qv = q.value();
  std::optional<int> m;
  for (const ExactRational& a : numer) {
    if (a <= 0)
      continue;
    ExactRational t = a;
    for (int k = 0; k <= kMaxTerminationIndex; ++k) {
      if (t == 1) {
        if (!m || k < *m)
          m = k;
        break;
      }
      // a q^k moves monotonically; stop once it has passed 1.
      if ((qv > 1 && t > 1) || (qv < 1 && t < 1))
        break;
      t *= qv;
    }
  }
  if (!m)
    throw NonTerminating("no numerator parameter is q^{-m}");
  const int A = static_cast<int>(numer.size());
  const int B = static_cast<int>(denom.size());
  const int e = 1 + B - A;
  ExactRational term(1), sum(1), qk(1);
  for (int k = 0; k < *m; ++k) {
    ExactRational ratio = z;
    for (const auto& a : numer)
      ratio *= ExactRational(1) - a * qk;
    for (const auto& b : denom) {
      ExactRational f = ExactRational(1) - b * qk;
      if (f == 0)
        throw DenominatorZero("denominator q-shifted factorial vanishes before termination");
      ratio /= f;
    }
    ratio /= ExactRational(1) - qk * qv;
    ratio *= pow(ExactRational(-qk), e);
    term *= ratio;
    sum += term;
    qk *= qv;
  }
  return sum;
}

// ---------------------------------------------------------------------------

SeriesParam SeriesParam::q_power(const Wide& q, int exponent, int drift) {
  return SeriesParam{ipow(q, exponent), exponent, drift};
}

Regular& Regular::operator*=(const Regular& o) {
  if (exact_zero || o.exact_zero)
    return *this = zero();
  coef *= o.coef;
  order += o.order;
  return *this;
}

Regular& Regular::operator/=(const Regular& o) {
  if (o.exact_zero)
    throw DenominatorZero("division by an identically vanishing factor");
  if (exact_zero)
    return *this;
  coef /= o.coef;
  order -= o.order;
  return *this;
}

Regular& Regular::operator*=(const Wide& x) {
  if (x == 0)
    return *this = zero();
  if (!exact_zero)
    coef *= x;
  return *this;
}

Wide Regular::limit() const {
  if (exact_zero || order > 0)
    return Wide(0);
  if (order < 0)
    throw DenominatorZero("series term has a pole in the regularised limit");
  return coef;
}

Regular regular_factor(const SeriesParam& a, const Wide& q, int i, int step) {
  const int shift = step * i;
  if (a.q_exponent && *a.q_exponent + shift == 0) {
    if (a.drift == 0)
      return Regular::zero();
    return Regular{Wide(-a.drift), 1, false};
  }
  Wide v = Wide(1) - a.value * ipow(q, shift);
  if (v == 0)
    return Regular::zero();
  return Regular{v, 0, false};
}

Regular regular_pochhammer(const SeriesParam& a, const Wide& q, int n, int step) {
  Regular acc;
  for (int i = 0; i < n; ++i) {
    acc *= regular_factor(a, q, i, step);
    if (acc.exact_zero)
      break;
  }
  return acc;
}

std::vector<Regular> regular_series_terms(std::span<const SeriesParam> numer,
                                          std::span<const SeriesParam> denom, const Wide& q,
                                          const Wide& z, int max_index) {
  const int A = static_cast<int>(numer.size());
  const int B = static_cast<int>(denom.size());
  const int e = 1 + B - A;
  const SeriesParam qparam = SeriesParam::q_power(q, 1);
  std::vector<Regular> terms;
  Regular term;
  terms.push_back(term);
  for (int k = 0; k < max_index; ++k) {
    Regular next = term;
    for (const auto& a : numer)
      next *= regular_factor(a, q, k);
    if (next.exact_zero)
      break;
    for (const auto& b : denom)
      next /= regular_factor(b, q, k);
    next /= regular_factor(qparam, q, k);
    next *= ipow(-ipow(q, k), e) * z;
    term = next;
    terms.push_back(term);
  }
  return terms;
}

} // namespace qchain
