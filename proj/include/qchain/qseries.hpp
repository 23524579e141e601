#pragma once

// Exact rational arithmetic, q-numbers, q-shifted factorials and terminating
// basic hypergeometric series.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qchain/error.hpp"

namespace qchain {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;
/// Working precision for series with heavy cancellation.
using Wide = boost::multiprecision::cpp_bin_float_50;

// ---------------------------------------------------------------------------
// Exact rationals

std::string to_string(const ExactRational& r);
std::string to_string(const BigInt& i);
double to_double(const ExactRational& r);
Wide to_wide(const ExactRational& r);
bool is_integer(const ExactRational& r);
ExactRational pow(const ExactRational& base, int exponent);

/// Parses "a/b", "a" or a terminating decimal such as "-0.125" exactly.
ExactRational parse_rational(std::string_view text);

/// A real parameter that remembers its exact rational value when it has one.
class Number {
public:
  Number() = default;
  explicit Number(double value);
  explicit Number(ExactRational exact);
  Number(long long numerator, long long denominator);

  bool is_exact() const { return exact_.has_value(); }
  /// Throws InvalidArgument when the value is not exact.
  const ExactRational& exact() const;
  const std::optional<ExactRational>& maybe_exact() const { return exact_; }
  double value() const { return value_; }
  Wide wide() const;

  /// "num/den" for exact values, 17 significant digits otherwise.
  std::string to_string() const;

private:
  double value_ = 0.0;
  std::optional<ExactRational> exact_;
};

// ---------------------------------------------------------------------------
// The deformation parameter

/// Parity class of q^{-1} = P/Q in lowest terms.
enum class ParityClass { OddOdd, EvenOverOdd, OddOverEven };

std::string_view to_string(ParityClass c);

/// Exact rational q = num/den with q > 0 and q != 1.
class RationalQ {
public:
  RationalQ(BigInt num, BigInt den);
  RationalQ(long long num, long long den) : RationalQ(BigInt(num), BigInt(den)) {}
  /// Builds q from q^{-1} = P/Q.
  static RationalQ from_inverse(const BigInt& P, const BigInt& Q) { return RationalQ(Q, P); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  /// P and Q of q^{-1} = P/Q.
  const BigInt& inv_num() const { return den_; }
  const BigInt& inv_den() const { return num_; }

  ExactRational value() const { return ExactRational(num_, den_); }
  ExactRational inverse() const { return ExactRational(den_, num_); }
  double to_double() const { return qchain::to_double(value()); }
  Wide to_wide() const { return qchain::to_wide(value()); }
  Number as_number() const { return Number(value()); }
  bool less_than_one() const { return num_ < den_; }

  ParityClass inv_parity_class() const;

  friend bool operator==(const RationalQ&, const RationalQ&) = default;

private:
  BigInt num_;
  BigInt den_;
};

// ---------------------------------------------------------------------------
// Sign / log-magnitude products

/// A real number stored as (sign, ln|x|) so long products cannot overflow.
class LogSign {
public:
  LogSign() = default;
  LogSign(int sign, double logmag);

  static LogSign from_double(double x);
  static LogSign from_wide(const Wide& x);
  static LogSign zero() { return LogSign(0, 0.0); }

  int sign() const { return sign_; }
  double logmag() const { return logmag_; }
  bool is_zero() const { return sign_ == 0; }

  double to_double() const;
  Wide to_wide() const;

  /// Square root; the sign must not be negative.
  LogSign sqrt() const;
  LogSign pow(int exponent) const;

  LogSign& operator*=(const LogSign& o);
  LogSign& operator/=(const LogSign& o);
  friend LogSign operator*(LogSign a, const LogSign& b) { return a *= b; }
  friend LogSign operator/(LogSign a, const LogSign& b) { return a /= b; }

private:
  int sign_ = 1;
  double logmag_ = 0.0;
};

// ---------------------------------------------------------------------------
// q-numbers and q-shifted factorials

/// [n]_q = (1 - q^n)/(1 - q).
template <class Real>
Real q_number(int n, const Real& q) {
  if (q == Real(1))
    throw InvalidArgument("q-number requires q != 1");
  using std::pow;
  return (Real(1) - pow(q, n)) / (Real(1) - q);
}

double q_number(int n, double q);

/// x^e by repeated squaring; e may be negative.
Wide ipow(const Wide& x, int e);
ExactRational q_number_exact(int n, const RationalQ& q);

/// (a; q)_n as a plain product in Real.
template <class Real>
Real pochhammer(const Real& a, const Real& q, int n) {
  Real result(1);
  Real qk(1);
  for (int k = 0; k < n; ++k) {
    result *= Real(1) - a * qk;
    qk *= q;
  }
  return result;
}

/// (a; q)_n = prod_{k<n} (1 - a q^k); the sign is 0 iff some factor vanishes.
LogSign q_pochhammer(double a, double q, int n);
ExactRational q_pochhammer_exact(const ExactRational& a, const RationalQ& q, int n);

// ---------------------------------------------------------------------------
// Terminating basic hypergeometric series

/// Relative tolerance for recognising a numerator parameter as q^{-m}.
inline constexpr double kTerminationTolerance = 1e-12;
inline constexpr int kMaxTerminationIndex = 4096;

/// Smallest m with a*q^m == 1 over the numerator parameters, if any.
std::optional<int> termination_index(std::span<const double> numer, double q);
std::optional<int> termination_index(std::span<const Wide> numer, const Wide& q);

/// Sum of the terminating series A_phi_B[numer; denom; q, z], including the
/// [(-1)^n q^{n(n-1)/2}]^{1+B-A} factor.
double basic_hypergeometric(std::span<const double> numer, std::span<const double> denom,
                            double q, double z);
Wide basic_hypergeometric(std::span<const Wide> numer, std::span<const Wide> denom,
                          const Wide& q, const Wide& z);
/// Exact evaluation; termination must be exact.
ExactRational basic_hypergeometric_exact(std::span<const ExactRational> numer,
                                         std::span<const ExactRational> denom,
                                         const RationalQ& q, const ExactRational& z);

/// (q sqrt(a), -q sqrt(a); q)_m / (sqrt(a), -sqrt(a); q)_m = (1 - a q^{2m})/(1 - a).
template <class Real>
Real vwp_pair_reduce(const Real& a, const Real& q, int m) {
  if (m == 0)
    return Real(1);
  if (a == Real(1))
    throw PoleAtOne("very-well-poised pair with a = 1");
  using std::pow;
  return (Real(1) - a * pow(q, 2 * m)) / (Real(1) - a);
}

// ---------------------------------------------------------------------------
// Series with removable singularities
//
// Several closed forms contain products such as (q^{r-N}; q)_m / (q^{N-r+1-m}; q)_j
// in which a vanishing numerator factor meets a vanishing denominator factor.
// Both come from the same site label, so the value is the limit under
// q^r -> q^r (1 + eps). Parameters that are exact powers of q carry their
// exponent and the first-order response to eps ("drift"); a factor 1 - a q^i
// that vanishes becomes -drift * eps.

struct SeriesParam {
  Wide value;
  std::optional<int> q_exponent;
  int drift = 0;

  static SeriesParam generic(const Wide& value) { return SeriesParam{value, std::nullopt, 0}; }
  /// q^exponent, shifted by (1 + eps)^drift.
  static SeriesParam q_power(const Wide& q, int exponent, int drift = 0);
};

/// Leading term coef * eps^order of a quantity as eps -> 0.
struct Regular {
  Wide coef{1};
  int order = 0;
  bool exact_zero = false;

  static Regular zero() { return Regular{Wide(0), 0, true}; }

  Regular& operator*=(const Regular& o);
  Regular& operator/=(const Regular& o);
  Regular& operator*=(const Wide& x);
  friend Regular operator*(Regular a, const Regular& b) { return a *= b; }
  friend Regular operator/(Regular a, const Regular& b) { return a /= b; }

  /// The eps -> 0 limit; a remaining pole is an error.
  Wide limit() const;
};

/// 1 - a q^{step*i}.
Regular regular_factor(const SeriesParam& a, const Wide& q, int i, int step = 1);
/// prod_{i<n} (1 - a q^{step*i}).
Regular regular_pochhammer(const SeriesParam& a, const Wide& q, int n, int step = 1);

/// Terms 0..max_index of A_phi_B[numer; denom; q, z] with removable
/// singularities tracked. Stops early once a term is exactly zero.
std::vector<Regular> regular_series_terms(std::span<const SeriesParam> numer,
                                          std::span<const SeriesParam> denom, const Wide& q,
                                          const Wide& z, int max_index);

} // namespace qchain
