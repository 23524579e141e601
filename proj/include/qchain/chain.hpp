#pragma once

// Single-excitation Hamiltonian of a spin chain and its spectral decomposition.

#include <optional>
#include <vector>

#include "qchain/families.hpp"
#include "qchain/spin_chain.hpp"

namespace qchain {

enum class OffDiagSign { PositiveOffDiag, NegativeOffDiag };

/// Small dense row-major matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Throws InvalidArgument unless |h| = |J| + 1 and every J_n > 0.
void check_chain(const SpinChain& chain);

/// Diagonal h, off-diagonal +J or -J.
Matrix assemble_matrix(const SpinChain& chain, OffDiagSign sign = OffDiagSign::NegativeOffDiag);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  /// Exact eigenvalues when available (rational q and parameters).
  std::vector<std::optional<ExactRational>> exact;
  /// U(n, j): site n, eigenvalue label j.
  Matrix U;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Eigenvalues in grid order k = 0..N and U from the orthonormal functions.
SpectralDecomposition analytic_decomposition(const FamilySpec& spec);

inline constexpr double kQlTolerance = 1e-14;
/// Iteration cap is kQlIterationFactor * (N + 1) over the whole run.
inline constexpr int kQlIterationFactor = 50;

/// Implicit-shift QL on a symmetric tridiagonal matrix. Eigenvalues ascend;
/// each column's first nonzero component is made positive.
SpectralDecomposition numeric_decomposition(const Matrix& m);

struct DecompositionResiduals {
  /// max |U^T U - I|, max |U U^T - I|.
  double orthogonality = 0.0;
  /// max |M - U diag(eps) U^T|.
  double reconstruction = 0.0;
  /// max |sorted eps - numeric eigenvalues|.
  double eigenvalue_gap = 0.0;
};

DecompositionResiduals verify_decomposition(const SpectralDecomposition& dec, const Matrix& m);

} // namespace qchain
