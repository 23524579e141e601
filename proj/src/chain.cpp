#include "qchain/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qchain {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw InvalidArgument("matrix shapes do not agree");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("matrix shapes do not agree");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

void check_chain(const SpinChain& chain) {
  if (chain.h.empty() || chain.J.size() + 1 != chain.h.size())
    throw InvalidArgument("a chain needs N couplings and N+1 fields");
  for (double j : chain.J)
    if (!(j > 0))
      throw InvalidArgument("couplings must be positive");
}

Matrix assemble_matrix(const SpinChain& chain, OffDiagSign sign) {
  check_chain(chain);
  const int n = static_cast<int>(chain.h.size());
  const double s = sign == OffDiagSign::NegativeOffDiag ? -1.0 : 1.0;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = chain.h[i];
  for (int i = 0; i + 1 < n; ++i)
    m(i, i + 1) = m(i + 1, i) = s * chain.J[i];
  return m;
}

SpectralDecomposition analytic_decomposition(const FamilySpec& spec) {
  require_valid(spec);
  SpectralDecomposition dec;
  for (const Number& e : eigenvalues(spec)) {
    dec.eigenvalues.push_back(e.value());
    dec.exact.push_back(e.maybe_exact());
  }
  const auto U = orthonormal_matrix(spec);
  const int n = spec.N + 1;
  dec.U = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dec.U(i, j) = U[i][j];
  return dec;
}

SpectralDecomposition numeric_decomposition(const Matrix& m) {
  const int n = m.rows();
  if (m.cols() != n)
    throw InvalidArgument("matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(i - j) > 1 && m(i, j) != 0.0)
        throw InvalidArgument("matrix is not tridiagonal");
      if (m(i, j) != m(j, i))
        throw InvalidArgument("matrix is not symmetric");
    }

  std::vector<double> d(n), e(n, 0.0);
  for (int i = 0; i < n; ++i)
    d[i] = m(i, i);
  for (int i = 0; i + 1 < n; ++i)
    e[i] = m(i + 1, i);
  Matrix z = Matrix::identity(n);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    anorm = std::max({anorm, std::fabs(d[i]), std::fabs(e[i])});

  const int cap = kQlIterationFactor * n;
  int iterations = 0;
  for (int l = 0; l < n; ++l) {
    for (;;) {
      int k = l;
      for (; k + 1 < n; ++k) {
        double scale = std::fabs(d[k]) + std::fabs(d[k + 1]);
        if (scale == 0.0)
          scale = anorm;
        if (std::fabs(e[k]) <= kQlTolerance * scale)
          break;
      }
      if (k == l)
        break;
      if (++iterations > cap)
        throw NoConvergence("tridiagonal QL exceeded its iteration cap");
      // Wilkinson-style shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[k] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = k - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[k] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int row = 0; row < n; ++row) {
          f = z(row, i + 1);
          z(row, i + 1) = s * z(row, i) + c * f;
          z(row, i) = c * z(row, i) - s * f;
        }
      }
      if (r == 0.0 && i >= l)
        continue;
      d[l] -= p;
      e[l] = g;
      e[k] = 0.0;
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  SpectralDecomposition dec;
  dec.U = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    dec.eigenvalues.push_back(d[src]);
    dec.exact.push_back(std::nullopt);
    double sign = 1.0;
    for (int row = 0; row < n; ++row)
      if (std::fabs(z(row, src)) > 1e-14) {
        sign = z(row, src) < 0 ? -1.0 : 1.0;
        break;
      }
    for (int row = 0; row < n; ++row)
      dec.U(row, j) = sign * z(row, src);
  }
  return dec;
}

DecompositionResiduals verify_decomposition(const SpectralDecomposition& dec, const Matrix& m) {
  const int n = dec.size();
  if (dec.U.rows() != n || dec.U.cols() != n || m.rows() != n || m.cols() != n)
    throw InvalidArgument("decomposition and matrix shapes do not agree");
  DecompositionResiduals out;
  const Matrix Ut = dec.U.transpose();
  const Matrix I = Matrix::identity(n);
  out.orthogonality =
      std::max(max_abs_diff(Ut * dec.U, I), max_abs_diff(dec.U * Ut, I));
  Matrix D(n, n);
  for (int i = 0; i < n; ++i)
    D(i, i) = dec.eigenvalues[i];
  out.reconstruction = max_abs_diff(m, dec.U * D * Ut);

  const SpectralDecomposition num = numeric_decomposition(m);
  std::vector<double> sorted = dec.eigenvalues;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    out.eigenvalue_gap = std::max(out.eigenvalue_gap, std::fabs(sorted[i] - num.eigenvalues[i]));
  return out;
}

} // namespace qchain
