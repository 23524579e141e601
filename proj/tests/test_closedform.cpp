#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qchain;
using namespace qchain::testing;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / (1 + std::fabs(b)); }

// f_{N,0}(T) for q-Krawtchouk at general p, written out from its product form.
double qk_endpoint_oracle(double p, double q, int N) {
  const double num = std::pow(p, N) * std::pow(q, N * (N + 1) / 2.0);
  const double den = pochhammer<double>(-p * q, q, N) * pochhammer<double>(-p * std::pow(q, N), q, N);
  return pochhammer<double>(-1.0, q, N) * std::sqrt(num / den);
}

} // namespace

TEST_CASE("q-Krawtchouk at the transfer point gives the mirror map") {
  for (const auto& q : {RationalQ(3, 1), RationalQ(3, 5), RationalQ(1, 5)})
    for (int N = 1; N <= 5; ++N) {
      const FamilySpec s = pst_spec(q, N);
      for (int r = 0; r <= N; ++r)
        for (int c = 0; c <= N; ++c) {
          const ClosedFormResult res = f_T_qkrawtchouk(s, r, c);
          CHECK(res.value == doctest::Approx(r + c == N ? 1.0 : 0.0).scale(1.0).epsilon(1e-10));
          CHECK(res.method == (r + c > N ? Method::FallbackDirectSum : Method::ClosedForm));
        }
    }
}

TEST_CASE("q-Krawtchouk endpoint at general p") {
  const FamilySpec s = make_spec(QKrawtchouk{Number(1, 1)}, 2, RationalQ(3, 1));
  const ClosedFormResult res = f_T_qkrawtchouk(s, 2, 0);
  CHECK(res.value == doctest::Approx(qk_endpoint_oracle(1.0, 3.0, 2)).epsilon(1e-12));
  CHECK(res.residual_vs_direct < 1e-12);
  for (double p : {0.01, 0.3, 2.0, 17.0})
    for (int N = 1; N <= 6; ++N)
      CHECK(std::fabs(qkrawtchouk_endpoint(Number(p), Number(ExactRational(1, 3)), N)) ==
            doctest::Approx(std::fabs(qk_endpoint_oracle(p, 1.0 / 3, N))).epsilon(1e-12));
}

TEST_CASE("affine examples") {
  // N = 1: 2 sqrt(pq(1 - pq)), equal to 1 at pq = 1/2.
  const FamilySpec half = make_spec(AffineQKrawtchouk{Number(1, 6)}, 1, RationalQ(3, 1));
  CHECK(f_T_affine(half, 1, 0).value == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [p, q] : {std::pair{1.0 / 5, 1.0 / 3}, std::pair{0.7, 1.0 / 3}}) {
    const FamilySpec s{AffineQKrawtchouk{Number(p)}, 1, Number(q)};
    CHECK(std::fabs(endpoint_formula(s)) ==
          doctest::Approx(2 * std::sqrt(p * q * (1 - p * q))).epsilon(1e-12));
  }
  // p -> 0: the (pq)^{N/2} factor sends the endpoint to 0.
  for (int N = 1; N <= 5; ++N) {
    const FamilySpec tiny = make_spec(AffineQKrawtchouk{Number(1, 1000000000)}, N, RationalQ(1, 3));
    CHECK(std::fabs(endpoint_formula(tiny)) < 1e-4);
  }
  const FamilySpec s = make_spec(AffineQKrawtchouk{Number(1, 1)}, 2, RationalQ(1, 3));
  const ClosedFormResult r = f_T_affine(s, 1, 1);
  CHECK(r.formula == "double-sum");
  CHECK(r.residual_vs_direct < 1e-9);
  CHECK(f_T_affine(s, 1, 0).formula == "2phi1");
}

TEST_CASE("quantum examples") {
  const FamilySpec s = make_spec(QuantumQKrawtchouk{Number(1, 1)}, 1, RationalQ(3, 1));
  CHECK(f_T_quantum(s, 1, 0).value == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-12));
  for (int i = 1; i <= 40; ++i) {
    const double p = 1.0 / 3 + (100.0 - 1.0 / 3) * i / 40;
    const FamilySpec g{QuantumQKrawtchouk{Number(p)}, 1, Number(ExactRational(3))};
    CHECK(std::fabs(endpoint_formula(g)) < 1.0);
  }
  const FamilySpec s2 = make_spec(QuantumQKrawtchouk{Number(1, 1)}, 2, RationalQ(3, 1));
  CHECK(f_T_quantum(s2, 1, 1).residual_vs_direct < 1e-9);
}

TEST_CASE("dual q-Krawtchouk examples") {
  const FamilySpec c1 = make_spec(DualQKrawtchouk{Number(-1, 1)}, 1, RationalQ(3, 1));
  CHECK(std::fabs(endpoint_formula(c1)) == doctest::Approx(1.0).epsilon(1e-12));
  const FamilySpec c4 = make_spec(DualQKrawtchouk{Number(-4, 1)}, 1, RationalQ(3, 1));
  CHECK(std::fabs(endpoint_formula(c4)) == doctest::Approx(0.8).epsilon(1e-12));
  const FamilySpec c18 = make_spec(DualQKrawtchouk{Number(-18, 1)}, 2, RationalQ(3, 1));
  const ClosedFormResult r = f_T_dual_qk(c18, 2, 0);
  CHECK(r.residual_vs_direct < 1e-9);
  CHECK(r.value == doctest::Approx(direct_alternating_sum(c18, 2, 0)).epsilon(1e-9));
  CHECK_THROWS_AS(f_T_dual_qk(make_spec(DualQKrawtchouk{Number(-5, 1)}, 2, RationalQ(3, 1)), 2, 0),
                  PhaseConditionUnmet);
}

TEST_CASE("q-Racah examples") {
  const FamilySpec s = make_spec(QRacah{Number(1, 1), Number(2, 1), Number(4, 1)}, 1, RationalQ(1, 3));
  const ClosedFormResult r = f_T_qracah(s, 1, 0);
  CHECK(std::fabs(r.value) == doctest::Approx(2 * std::sqrt(10.0) / 7).epsilon(1e-12));
  CHECK(r.residual_vs_direct < 1e-9);
  // Cross-check with T = pi and eps = (0, -3).
  const auto dec = analytic_decomposition(s);
  CHECK(*dec.exact[1] == -3);
  CHECK(std::abs(correlation_exact_phase(dec, 1, 0, ExactPhaseTime{ExactRational(1)})) ==
        doctest::Approx(2 * std::sqrt(10.0) / 7).epsilon(1e-12));

  const FamilySpec z = make_spec(QRacah{Number(1, 1), Number(2, 1), Number(4, 1)}, 0, RationalQ(1, 3));
  CHECK(f_T_qracah(z, 0, 0).value == doctest::Approx(1.0));

  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    FamilySpec p = random_phase_valid_spec(FamilyKind::QRacah, rng, 2);
    for (int a = 0; a <= p.N; ++a)
      for (int b = 0; b <= p.N; ++b)
        CHECK(rel(closed_form_sum(p, a, b), direct_alternating_sum(p, a, b)) < 1e-8);
  }
}

TEST_CASE("q-Hahn and dual q-Hahn endpoints") {
  const FamilySpec h = make_spec(QHahn{Number(1, 1), Number(2, 1)}, 1, RationalQ(1, 3));
  CHECK(std::fabs(endpoint_formula(h)) == doctest::Approx(2 * std::sqrt(6.0) / 7).epsilon(1e-12));
  CHECK(std::fabs(direct_alternating_sum(h, 1, 0)) == doctest::Approx(2 * std::sqrt(6.0) / 7).epsilon(1e-9));
  // delta = gamma with gamma q = 1/4.
  const FamilySpec d = make_spec(DualQHahn{Number(3, 4), Number(3, 4)}, 1, RationalQ(1, 3));
  CHECK(std::fabs(endpoint_formula(d)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::fabs(direct_alternating_sum(d, 1, 0)) == doctest::Approx(0.8).epsilon(1e-9));
  // delta = gamma, gamma q over (0, 1): always below 1.
  for (int N = 1; N <= 4; ++N)
    for (int i = 1; i < 20; ++i) {
      const Number g(ExactRational(3 * i, 20)); // gamma q = i/20
      const FamilySpec s = make_spec(DualQHahn{g, g}, N, RationalQ(1, 3));
      if (!validate(s).ok())
        continue;
      CHECK(std::fabs(endpoint_formula(s)) < 1.0);
    }
  CHECK_THROWS_AS(f_T(h, 1, 1), InvalidArgument);
}

TEST_CASE("f_T agrees with the direct sum and is symmetric") {
  std::mt19937 rng(4242);
  for (FamilyKind k : {FamilyKind::QKrawtchouk, FamilyKind::AffineQKrawtchouk,
                       FamilyKind::QuantumQKrawtchouk, FamilyKind::DualQKrawtchouk,
                       FamilyKind::QRacah})
    for (int trial = 0; trial < 8; ++trial) {
      const FamilySpec s = random_phase_valid_spec(k, rng, 5);
      CAPTURE(family_tag(k));
      for (int r = 0; r <= s.N; ++r)
        for (int c = 0; c <= r; ++c) {
          const ClosedFormResult a = f_T(s, r, c);
          const ClosedFormResult b = f_T(s, c, r);
          CHECK(a.residual_vs_direct < 1e-9 * (1 + std::fabs(a.value)));
          CHECK(std::fabs(a.value - b.value) < 1e-10);
          CHECK(std::fabs(a.value) <= 1 + 1e-9);
        }
    }
}

TEST_CASE("phase preconditions") {
  CHECK_THROWS_AS(f_T_qkrawtchouk(make_spec(QKrawtchouk{Number(1, 4)}, 2, RationalQ(1, 2)), 2, 0),
                  NotOddOdd);
  const FamilySpec floating{QKrawtchouk{Number(0.25)}, 2, Number(ExactRational(3))};
  CHECK_NOTHROW(f_T_qkrawtchouk(floating, 2, 0));
  const FamilySpec fdual{DualQKrawtchouk{Number(-18.5)}, 2, Number(ExactRational(3))};
  CHECK_THROWS_AS(f_T_dual_qk(fdual, 2, 0), PhaseConditionUnmet);
}

TEST_CASE("argmax_p examples") {
  std::vector<Number> grid;
  for (int i = -50; i <= 50; ++i)
    grid.push_back(i == 0 ? Number(1, 9) : Number(std::pow(10.0, i / 25.0) / 9));
  const ArgmaxResult a = argmax_p(RationalQ(3, 1), 2, grid);
  CHECK(a.p.is_exact());
  CHECK(a.p.exact() == ExactRational(1, 9));
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (i != a.index)
      CHECK(std::fabs(qkrawtchouk_endpoint(grid[i], Number(3, 1), 2)) < 1.0);

  std::vector<Number> g2{Number(1, 1), Number(4, 1), Number(125, 27), Number(5, 1), Number(10, 1)};
  const ArgmaxResult b = argmax_p(RationalQ(3, 5), 3, g2);
  CHECK(b.p.exact() == ExactRational(125, 27));
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(argmax_p(RationalQ(3, 1), 2, {}), InvalidArgument);
}
