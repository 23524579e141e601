#pragma once

// The seven finite discrete orthogonal polynomial families and the spin-chain
// data derived from their recurrence relations.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qchain/qseries.hpp"
#include "qchain/spin_chain.hpp"

namespace qchain {

struct QKrawtchouk {
  Number p;
};
struct AffineQKrawtchouk {
  Number p;
};
struct QuantumQKrawtchouk {
  Number p;
};
struct DualQKrawtchouk {
  Number c;
};
struct QHahn {
  Number alpha, beta;
};
/// beta is derived as q^{-N-1}/delta.
struct DualQHahn {
  Number gamma, delta;
};
/// delta is derived as q^{-N-1}/beta.
struct QRacah {
  Number alpha, beta, gamma;
};

using FamilyParams = std::variant<QKrawtchouk, AffineQKrawtchouk, QuantumQKrawtchouk,
                                  DualQKrawtchouk, QHahn, DualQHahn, QRacah>;

enum class FamilyKind {
  QKrawtchouk,
  AffineQKrawtchouk,
  QuantumQKrawtchouk,
  DualQKrawtchouk,
  QHahn,
  DualQHahn,
  QRacah
};

/// Tags used in spec files: "q-krawtchouk", "affine-q-krawtchouk", ...
std::string_view family_tag(FamilyKind kind);
std::optional<FamilyKind> family_from_tag(std::string_view tag);

struct FamilySpec {
  FamilyParams params;
  int N = 0;
  Number q;

  FamilyKind kind() const { return static_cast<FamilyKind>(params.index()); }
  /// Exact q when it was given as a rational.
  std::optional<RationalQ> rational_q() const;
  /// True when q and every family parameter are exact rationals.
  bool all_exact() const;
  /// Names and values of the user-facing parameters, in canonical order.
  std::vector<std::pair<std::string, Number>> named_params() const;
};

FamilySpec make_spec(FamilyParams params, int N, const RationalQ& q);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string message() const;
};

ValidationReport validate(const FamilySpec& spec);
/// Throws ValidationError listing every violation.
void require_valid(const FamilySpec& spec);

struct OrthogonalityData {
  std::vector<LogSign> weights;
  std::vector<LogSign> norms;
};

/// P_n at grid point x.
double evaluate(const FamilySpec& spec, int n, int x);
OrthogonalityData orthogonality_data(const FamilySpec& spec);
/// sigma_n sqrt(w(x)/d_n) P_n(x), see row_signs.
double orthonormal_value(const FamilySpec& spec, int n, int x);
/// U[n][x] = orthonormal_value(spec, n, x).
std::vector<std::vector<double>> orthonormal_matrix(const FamilySpec& spec);
SpinChain recurrence_coefficients(const FamilySpec& spec);
/// Exact when q and the parameters are exact.
Number eigenvalue(const FamilySpec& spec, int k);
std::vector<Number> eigenvalues(const FamilySpec& spec);
/// q-Krawtchouk with p = q^{-N}; requires q^{-1} odd/odd.
FamilySpec pst_spec(const RationalQ& q, int N);

/// True for q-Krawtchouk with p = q^{-N} (exactly, or to 1e-14 for floats).
bool is_pst_point(const FamilySpec& spec);

// Extended-precision access used by the closed forms and the tests.
std::vector<Wide> weights_wide(const FamilySpec& spec);
std::vector<Wide> norms_wide(const FamilySpec& spec);
std::vector<std::vector<Wide>> polynomial_matrix_wide(const FamilySpec& spec);
std::vector<std::vector<Wide>> orthonormal_matrix_wide(const FamilySpec& spec);
std::vector<Wide> eigenvalues_wide(const FamilySpec& spec);
/// Row signs sigma_n applied to sqrt(w/d) P_n so that every coupling is positive.
std::vector<int> row_signs(const FamilySpec& spec);
/// Derived delta for q-Racah, derived beta for dual q-Hahn.
Number derived_parameter(const FamilySpec& spec);

} // namespace qchain
