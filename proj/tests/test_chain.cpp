#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qchain;
using namespace qchain::testing;

TEST_CASE("assemble_matrix") {
  const SpinChain c{{1.0 / 6}, {1.0 / 3, 1.0 / 3}, "test"};
  const Matrix m = assemble_matrix(c);
  CHECK(m(0, 0) == doctest::Approx(1.0 / 3));
  CHECK(m(0, 1) == doctest::Approx(-1.0 / 6));
  CHECK(m(1, 0) == doctest::Approx(-1.0 / 6));
  CHECK(m(1, 1) == doctest::Approx(1.0 / 3));
  const Matrix p = assemble_matrix(c, OffDiagSign::PositiveOffDiag);
  CHECK(p(0, 1) == doctest::Approx(1.0 / 6));
  const auto en = numeric_decomposition(m).eigenvalues;
  const auto ep = numeric_decomposition(p).eigenvalues;
  CHECK(en[0] == doctest::Approx(1.0 / 6));
  CHECK(en[1] == doctest::Approx(0.5));
  CHECK(ep[0] == doctest::Approx(en[0]));
  CHECK(ep[1] == doctest::Approx(en[1]));

  const Matrix single = assemble_matrix(SpinChain{{}, {0.25}, ""});
  CHECK(single.rows() == 1);
  CHECK(single(0, 0) == 0.25);
  CHECK_THROWS_AS(assemble_matrix(SpinChain{{-1.0}, {0.0, 0.0}, ""}), InvalidArgument);
  CHECK_THROWS_AS(assemble_matrix(SpinChain{{1.0, 1.0}, {0.0, 0.0}, ""}), InvalidArgument);
}

TEST_CASE("analytic decomposition examples") {
  const auto d1 = analytic_decomposition(pst_spec(RationalQ(3, 1), 1));
  CHECK(d1.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(d1.eigenvalues[1] == doctest::Approx(1.0 / 3));
  CHECK(*d1.exact[1] == ExactRational(1, 3));
  const double r = 1 / std::sqrt(2.0);
  CHECK(d1.U(0, 0) == doctest::Approx(r));
  CHECK(d1.U(0, 1) == doctest::Approx(r));
  CHECK(d1.U(1, 0) == doctest::Approx(r));
  CHECK(d1.U(1, 1) == doctest::Approx(-r));

  const auto d0 = analytic_decomposition(pst_spec(RationalQ(3, 1), 0));
  CHECK(d0.size() == 1);
  CHECK(d0.eigenvalues[0] == 0.0);
  CHECK(d0.U(0, 0) == doctest::Approx(1.0));

  const FamilySpec s2 = pst_spec(RationalQ(3, 1), 2);
  const auto d2 = analytic_decomposition(s2);
  CHECK(*d2.exact[2] == ExactRational(4, 9));
  const auto res = verify_decomposition(d2, assemble_matrix(recurrence_coefficients(s2)));
  CHECK(res.reconstruction < 1e-12);
  CHECK(res.orthogonality < 1e-12);
  CHECK(res.eigenvalue_gap < 1e-12);

  CHECK_THROWS_AS(analytic_decomposition(make_spec(QKrawtchouk{Number(-1, 1)}, 2, RationalQ(3, 1))),
                  ValidationError);
}

TEST_CASE("numeric decomposition examples") {
  const auto d = numeric_decomposition(assemble_matrix(recurrence_coefficients(pst_spec(RationalQ(3, 1), 2))));
  CHECK(d.eigenvalues[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(d.eigenvalues[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(d.eigenvalues[2] == doctest::Approx(4.0 / 9).epsilon(1e-12));

  Matrix diag(3, 3);
  diag(0, 0) = 2.0;
  diag(1, 1) = -1.0;
  diag(2, 2) = 0.5;
  const auto dd = numeric_decomposition(diag);
  CHECK(dd.eigenvalues[0] == -1.0);
  CHECK(dd.eigenvalues[1] == 0.5);
  CHECK(dd.eigenvalues[2] == 2.0);

  Matrix bad(3, 3);
  bad(0, 2) = bad(2, 0) = 1.0;
  CHECK_THROWS_AS(numeric_decomposition(bad), InvalidArgument);
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(numeric_decomposition(asym), InvalidArgument);
}

TEST_CASE("numeric eigensolver against the characteristic polynomial") {
  // Sturm-sequence count of eigenvalues below x, independent of the QL sweep.
  auto count_below = [](const SpinChain& c, double x) {
    int count = 0;
    double d = c.h[0] - x;
    if (d < 0)
      ++count;
    for (std::size_t i = 1; i < c.h.size(); ++i) {
      const double prev = d == 0.0 ? 1e-300 : d;
      d = c.h[i] - x - c.J[i - 1] * c.J[i - 1] / prev;
      if (d < 0)
        ++count;
    }
    return count;
  };
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.05, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    SpinChain c;
    const int n = 2 + trial % 12;
    for (int i = 0; i < n; ++i)
      c.h.push_back(u(rng));
    for (int i = 0; i + 1 < n; ++i)
      c.J.push_back(pos(rng));
    const auto dec = numeric_decomposition(assemble_matrix(c));
    for (int k = 0; k < n; ++k) {
      CHECK(count_below(c, dec.eigenvalues[k] - 1e-9) <= k);
      CHECK(count_below(c, dec.eigenvalues[k] + 1e-9) >= k + 1);
    }
    const auto res = verify_decomposition(dec, assemble_matrix(c));
    CHECK(res.orthogonality < 1e-12);
    CHECK(res.reconstruction < 1e-12);
    // First component above tolerance is positive in every column.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (std::fabs(dec.U(i, k)) > 1e-14) {
          CHECK(dec.U(i, k) > 0);
          break;
        }
  }
}

TEST_CASE("verify_decomposition detects corruption") {
  const FamilySpec s = pst_spec(RationalQ(3, 1), 3);
  const Matrix m = assemble_matrix(recurrence_coefficients(s));
  auto dec = analytic_decomposition(s);
  dec.U(1, 2) += 1e-3;
  const auto res = verify_decomposition(dec, m);
  CHECK(std::max(res.orthogonality, res.reconstruction) > 1e-4);

  const FamilySpec z = pst_spec(RationalQ(3, 1), 0);
  const auto r0 = verify_decomposition(analytic_decomposition(z), assemble_matrix(recurrence_coefficients(z)));
  CHECK(r0.orthogonality == 0.0);
  CHECK(r0.reconstruction == 0.0);
  CHECK(r0.eigenvalue_gap == 0.0);
}

TEST_CASE("analytic and numeric decompositions agree for random specs") {
  std::mt19937 rng(1234);
  for (FamilyKind k : kAllFamilies)
    for (int trial = 0; trial < 10; ++trial) {
      const FamilySpec s = random_valid_spec(k, rng, 10);
      const SpinChain c = recurrence_coefficients(s);
      double scale = 1.0;
      for (double h : c.h)
        scale = std::max(scale, std::fabs(h));
      const auto res = verify_decomposition(analytic_decomposition(s), assemble_matrix(c));
      CAPTURE(family_tag(k));
      CHECK(res.orthogonality < 1e-10);
      CHECK(res.reconstruction < 1e-10 * scale);
      CHECK(res.eigenvalue_gap < 1e-10 * scale);
    }
}
