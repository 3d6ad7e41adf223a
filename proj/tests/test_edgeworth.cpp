#include "doctest.h"

#include <cmath>
#include <random>

#include "rankedge/edgeworth.hpp"
#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/perm_dist.hpp"
#include "rankedge/scores.hpp"
#include "support.hpp"

using namespace rankedge;

namespace {

MatrixMoments with_lambdas(double l1, double l2) {
  MatrixMoments m{};
  m.lambda1 = l1;
  m.lambda2 = l2;
  return m;
}

IidSpec rademacher() { return make_iid_spec({{-1.0, 0.5}, {1.0, 0.5}}); }

// Two-point law with E X = 0, E X^2 = 1 and E X^3 = 1.
IidSpec skew_one() {
  const double p = (5.0 - std::sqrt(5.0)) / 10.0;
  return make_iid_spec({{std::sqrt((1 - p) / p), p}, {-std::sqrt(p / (1 - p)), 1 - p}});
}

std::vector<double> two_sample_regression(std::size_t n) {
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i < (n + 2) / 3; ++i) e[i] = 1.0;
  return standardize_sequence(e);
}

}  // namespace

TEST_CASE("expansions reduce to Phi where the correction vanishes") {
  const auto e1 = expansion_matrix(with_lambdas(0.0, 0.7), 1);
  for (double x = -5; x <= 5; x += 0.25) CHECK(e1(x) == Phi(x));
  for (double l1 : {-0.8, 0.3, 2.0}) CHECK(expansion_matrix(with_lambdas(l1, 0.1), 1)(1.0) == doctest::Approx(Phi(1.0)).epsilon(1e-15));
  for (double l2 : {-1.0, 0.5, 4.0})
    CHECK(expansion_matrix(with_lambdas(0.0, l2), 2)(std::sqrt(3.0)) == doctest::Approx(Phi(std::sqrt(3.0))).epsilon(1e-14));
  const EdgeworthExpansion zero(2, 0.0, 0.0);
  for (double x = -5; x <= 5; x += 0.25) CHECK(zero(x) == Phi(x));
}

TEST_CASE("expansion tails and closed forms") {
  const EdgeworthExpansion e(2, 0.9, -0.4);
  CHECK(std::fabs(e(-12.0)) < 1e-8);
  CHECK(std::fabs(e(12.0) - 1.0) < 1e-8);
  for (double x = -4; x <= 4; x += 0.5) {
    const double want = Phi(x) - psi(x) * (0.9 / 6 * hermite(2, x) + (-0.4) / 24 * hermite(3, x) +
                                           0.81 / 72 * hermite(5, x));
    CHECK(e(x) == doctest::Approx(want).epsilon(1e-14));
    const double h = 1e-5;
    CHECK(e.derivative(x, 1) == doctest::Approx((e(x + h) - e(x - h)) / (2 * h)).epsilon(1e-7));
    CHECK(e.derivative(x, 2) == doctest::Approx((e.derivative(x + h, 1) - e.derivative(x - h, 1)) / (2 * h)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(EdgeworthExpansion(3, 0.0), Error);
}

TEST_CASE("first-moment expansion") {
  for (double l1 : {-1.0, 0.0, 0.7}) {
    const auto f = expansion_first_moment(with_lambdas(l1, 0.0));
    CHECK(f(0.0) == doctest::Approx(-0.3989422804014327).epsilon(1e-15));
    CHECK(std::fabs(f(12.0)) < 1e-8);
    CHECK(std::fabs(f(-12.0)) < 1e-8);
  }
  const auto g = expansion_first_moment(with_lambdas(0.0, 0.0));
  for (double z = -3; z <= 3; z += 0.5) CHECK(g(z) == doctest::Approx(-psi(z)));
}

TEST_CASE("expansion gap and derivative bounds on random matrices") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rep % 11;
    const MatrixMoments mm = moments(testsupport::random_matrix(rng, n));
    const auto e1 = expansion_matrix(mm, 1), e2 = expansion_matrix(mm, 2);
    CHECK(grid_sup([&](double x) { return e2(x) - e1(x); }) <= 0.5 * mm.delta / n + 1e-12);
    CHECK(grid_sup([&](double x) { return e1.derivative(x, 1); }) <= 0.4 + 0.1 * mm.beta / n + 1e-6);
  }
}

TEST_CASE("integral-form coefficients for Wilcoxon scores") {
  const auto e = two_sample_regression(12);
  const IntegralCoefficients c = integral_coefficients(e, wilcoxon_score());
  CHECK(std::fabs(c.int3) < 1e-10);
  CHECK(c.int4 == doctest::Approx(9.0 / 5.0).epsilon(1e-10));
  CHECK(std::fabs(c.xi1) < 1e-10);
  CHECK(c.mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.sd == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-10));
  const auto ex = expansion_integral(e, wilcoxon_score(), 2);
  CHECK(ex.c2() == doctest::Approx(c.sum4 * (1.8 - 3) - 3.0 / 12 * (1.8 - 1)).epsilon(1e-10));

  const IntegralCoefficients v = integral_coefficients(e, van_der_waerden_score());
  CHECK(v.int4 == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(std::fabs(v.int3) < 1e-8);

  CHECK_THROWS_AS(integral_coefficients(e, inv_sqrt_score()), Error);
  CHECK_THROWS_AS(standardize_sequence({2.0, 2.0, 2.0}), Error);
  CHECK_THROWS_AS(integral_coefficients({1.0, 1.0}, wilcoxon_score()), Error);
}

TEST_CASE("matrix and integral coefficients approach each other") {
  std::vector<double> g1, g2;
  for (std::size_t n : {10u, 20u, 40u}) {
    const auto e = two_sample_regression(n);
    const MatrixMoments mm = moments(ScoreMatrix::outer(e, approx_scores(wilcoxon_score(), n)));
    const IntegralCoefficients c = integral_coefficients(e, wilcoxon_score());
    g1.push_back(std::fabs(mm.lambda1 - c.xi1));
    g2.push_back(std::fabs(mm.lambda2 - c.xi2));
    MESSAGE("n=" << n << " |l1-xi1|=" << g1.back() << " |l2-xi2|=" << g2.back());
  }
  CHECK(g2[1] < g2[0]);
  CHECK(g2[2] < g2[1]);
  CHECK(g1[1] <= g1[0] + 1e-12);
  CHECK(g1[2] <= g1[1] + 1e-12);
}

TEST_CASE("iid expansion") {
  const auto sym = expansion_iid(rademacher(), 9);
  for (double x = -4; x <= 4; x += 0.5) CHECK(sym(x) == doctest::Approx(Phi(x)).epsilon(1e-15));

  const IidSpec s = skew_one();
  CHECK(s.mu3 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expansion_iid(s, 36)(0.0) == doctest::Approx(0.5 + 0.3989422804014327 / 36).epsilon(1e-14));
  for (std::size_t n : {1u, 10u, 100u, 1000u}) {
    const auto e = expansion_iid(s, n);
    CHECK(grid_sup([&](double x) { return e(x) - Phi(x); }) <= s.beta3 * 0.4 / (6 * std::sqrt(double(n))));
  }
  CHECK_THROWS_AS(make_iid_spec({{-1.0, 0.5}, {2.0, 0.5}}), Error);
}

TEST_CASE("iid convolution") {
  const StepCdf s4 = iid_convolution(rademacher(), 4);
  CHECK(s4.mass_at(0.0) == 6.0 / 16.0);
  const StepCdf s1 = iid_convolution(skew_one(), 1);
  REQUIRE(s1.size() == 2);
  CHECK(s1.atoms()[1].value == doctest::Approx(skew_one().support[0].first));

  const StepCdf s100 = iid_convolution(rademacher(), 100);
  CHECK(std::fabs(s100.mass_at(0.0) * std::sqrt(50 * M_PI) - 1.0) < 0.02);

  const StepCdf t3 = iid_convolution(make_iid_spec({{-std::sqrt(1.5), 1.0 / 3}, {0.0, 1.0 / 3}, {std::sqrt(1.5), 1.0 / 3}}), 3);
  CHECK(t3.size() == 7);
  CHECK(t3.mass_at(0.0) == doctest::Approx(7.0 / 27.0).epsilon(1e-14));
  CHECK_THROWS_AS(iid_convolution(rademacher(), 5000), Error);
}

TEST_CASE("sup distance") {
  const StepCdf unit({{0.0, 1.0}});
  CHECK(sup_distance(unit, [](double x) { return Phi(x); }) == doctest::Approx(0.5).epsilon(1e-15));
  for (std::size_t n = 2; n <= 6; ++n) {
    const StepCdf F = iid_convolution(rademacher(), 2 * n);
    const auto e = expansion_iid(rademacher(), 2 * n);
    CHECK(sup_distance(F, [&](double x) { return e(x); }) >= 0.5 * F.mass_at(0.0));
  }
}

TEST_CASE("second-difference condition") {
  const StepCdf unit({{0.0, 1.0}});
  for (double scale : {1.0, 0.1, 0.01}) CHECK(delta2_condition(unit, scale) >= 0.5 / (scale * scale));

  std::vector<Atom> atoms;
  const int k = 20000;
  for (int i = 0; i < k; ++i) {
    const double x = -8.0 + 16.0 * (i + 0.5) / k;
    atoms.push_back({x, Phi(-8.0 + 16.0 * (i + 1.0) / k) - Phi(-8.0 + 16.0 * i / k)});
  }
  const double smooth = delta2_condition(StepCdf(atoms), 1.0 / std::sqrt(10.0), 1);
  MESSAGE("discretized Phi constant " << smooth);
  CHECK(smooth < 0.5);

  double prev = 0.0;
  for (std::size_t n : {4u, 16u, 64u}) {
    const double c = delta2_condition(iid_convolution(rademacher(), n), 1.0 / std::sqrt(double(n)), 1);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("iid constant") {
  CHECK(iid_constant_K(1.0, 1.0, 1.0) == 39.0);
  CHECK(iid_constant_K(2.0, 1.0, 2.0) == 66.0);
  CHECK(iid_constant_K(1e-300, 2.0, 3.0) == doctest::Approx(3 + 22 + 39 + 54));
  CHECK_THROWS_AS(iid_constant_K(1.0, 0.5, 1.0), Error);
}

TEST_CASE("diagnostics on designs") {
  const ScoreMatrix med = ScoreMatrix::outer({1, 1, 0, 0}, {-1, -1, 1, 1});
  const Diagnostics d = diagnose(med, exact_law(med, true));
  CHECK(d.sup_f_e1 >= 1.0 / 3.0 - 1e-15);

  const ScoreMatrix w = testsupport::two_sample(8, 3, approx_scores(wilcoxon_score(), 8));
  const Diagnostics dw = diagnose(w, exact_law(w, true));
  CHECK(dw.ratio_k1 <= 90.0);
  CHECK(dw.ratio_k1 == doctest::Approx(dw.sup_f_phi * 8 / dw.beta));
  CHECK(dw.gap_e2_e1 <= dw.gap_bound + 1e-12);
  CHECK(dw.e1_prime_sup <= dw.e1_prime_bound + 1e-6);
}
