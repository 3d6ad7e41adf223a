#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/quadrature.hpp"

using namespace rankedge;

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + 1e-12; ++k) out.push_back(lo + k * step);
  return out;
}

}  // namespace

TEST_CASE("normal kernel basics") {
  CHECK(std::fabs(psi(0.0) - kInvSqrt2Pi) < 1e-15);
  CHECK(Phi(0.0) == 0.5);
  double prev = mills(-8.0);
  for (double x : grid(-8.0, 40.0, 0.01)) {
    CHECK(std::fabs(Phi(x) + Phi(-x) - 1.0) < 1e-14);
    const double r = mills(x);
    CHECK(r > 0.0);
    CHECK(r <= prev);
    prev = r;
  }
  // Mills ratio tail against 1/x - 1/x^3 + 3/x^5.
  const double x = 30.0;
  CHECK(mills(x) == doctest::Approx(1 / x - 1 / std::pow(x, 3) + 3 / std::pow(x, 5)).epsilon(1e-7));
}

TEST_CASE("normal quantile inverts Phi") {
  for (int k = 1; k <= 1024; ++k) {
    const double p = k / 1025.0;
    CHECK(std::fabs(Phi(normal_quantile(p)) - p) < 1e-12);
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK_THROWS_AS(normal_quantile(0.0), Error);
  CHECK_THROWS_AS(normal_quantile(1.0), Error);
}

TEST_CASE("hermite values and recursion") {
  CHECK(hermite(4, 0.0) == 3.0);
  CHECK(hermite(3, 1.0) == -2.0);
  CHECK(hermite(0, 17.5) == 1.0);
  for (double x : grid(-3.0, 3.0, 0.25)) {
    CHECK(hermite(2, x) == doctest::Approx(x * x - 1));
    CHECK(hermite(5, x) == doctest::Approx(std::pow(x, 5) - 10 * std::pow(x, 3) + 15 * x));
    for (int n = 1; n < 12; ++n) CHECK(hermite(n + 1, x) == doctest::Approx(x * hermite(n, x) - n * hermite(n - 1, x)));
  }
  CHECK_THROWS_AS(hermite(65, 0.0), Error);
}

TEST_CASE("hermite weighted norm table") {
  const std::pair<int, double> table[] = {{0, 0.39894}, {1, 0.24197}, {2, 0.39894},
                                          {3, 0.55059}, {4, 1.19683}, {6, 5.98413}};
  for (auto [n, v] : table) {
    CAPTURE(n);
    CHECK(std::fabs(hermite_weighted_norm(n) - v) <= 5e-5);
  }
  CHECK(hermite_weighted_norm(0) == doctest::Approx(kInvSqrt2Pi).epsilon(1e-12));
  CHECK(hermite_weighted_norm(8) == doctest::Approx(105 * kInvSqrt2Pi).epsilon(1e-9));
}

TEST_CASE("hermite orthogonality to the density") {
  for (int n = 0; n <= 6; ++n) {
    const double v = integrate([n](double y) { return hermite(n + 1, y) * psi(y); }, -12.0, 12.0, {0.0});
    CAPTURE(n);
    CHECK(std::fabs(v) < 1e-9);
  }
}

TEST_CASE("stein solutions satisfy the equation") {
  for (int k : {0, 1, 2}) {
    for (double z : {-2.0, 0.0, 1.5}) {
      const SteinSolution f(k, z);
      const double mean = truncated_abs_moment(k, z);
      for (double x : grid(-6.0, 6.0, 0.05)) {
        if (std::fabs(x - z) < 1e-9) continue;
        const double target = (x <= z ? std::pow(std::fabs(x), k) : 0.0) - mean;
        CAPTURE(k);
        CAPTURE(z);
        CAPTURE(x);
        CHECK(std::fabs(f.derivative(x) - x * f.value(x) - target) < 1e-8);
        CHECK(std::fabs(f.value(x)) <= f.bound(x) + 1e-12);
      }
    }
  }
}

TEST_CASE("stein solution bounds") {
  for (double z : grid(-4.0, 4.0, 0.5)) {
    const SteinSolution f0(0, z), f1(1, z);
    double prev = -INFINITY;
    for (double x : grid(-8.0, 8.0, 0.01)) {
      CHECK(std::fabs(f0.value(x)) <= std::sqrt(2 * std::numbers::pi) / 4 + 1e-12);
      if (std::fabs(x - z) > 1e-9) CHECK(std::fabs(f0.derivative(x)) <= 1.0 + 1e-12);
      CHECK(std::fabs(f1.value(x)) <= 1.0 + 1e-12);
      const double xf = x * f0.value(x);
      CHECK(xf >= prev - 1e-12);
      prev = xf;
    }
  }
  CHECK(std::fabs(stein_f(0, -40.0, 0.0)) < 1e-12);
  CHECK(std::fabs(stein_f(2, -40.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(SteinSolution(5, 0.0), Error);
}

TEST_CASE("first-moment stein solution") {
  for (double z : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    for (double x : grid(-6.0, 6.0, 0.05)) {
      if (std::fabs(x - z) < 1e-9) continue;
      const double fx = stein_f1(z, x), dfx = stein_f1_prime(z, x);
      CHECK(std::fabs(dfx - x * fx - (x <= z ? x : 0.0) - psi(z)) < 1e-8);
      CHECK(std::fabs(fx) <= 1.0 + 1e-12);
      CHECK(std::fabs(dfx) <= std::fabs(x) + kInvSqrt2Pi + 1e-12);
    }
  }
}

TEST_CASE("stein derivative against the hermite identity") {
  for (double z : {-1.0, 0.0, 2.0}) {
    const double h = 1e-5;
    auto fprime = [z, h](double y) { return (stein_f(0, z, y + h) - stein_f(0, z, y - h)) / (2 * h); };
    const double lhs = integrate_gaussian([&](double y) { return fprime(y) * y; }, {z - h, z + h});
    const double rhs = integrate([](double y) { return (3 * y - y * y * y) * psi(y); }, -12.0, z) / 3.0;
    CAPTURE(z);
    CHECK(std::fabs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("smooth kernel values") {
  for (double lambda : {0.01, 0.5, 2.0}) {
    const double z = 0.3;
    const SmoothKernel r(KernelKind::Cubic, z, lambda);
    CHECK(r.value(z + 1.5 * lambda) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.derivative(z + 1.5 * lambda, 1) == doctest::Approx(-0.75 / lambda).epsilon(1e-12));
    CHECK(r.value(z - 1.0) == 1.0);
    CHECK(r.value(z + 3 * lambda + 1e-9) == 0.0);

    const SmoothKernel q(KernelKind::Quadratic, z, lambda);
    CHECK(q.value(z) == 1.0);
    CHECK(q.value(z - 5.0) == 1.0);
    CHECK(q.value(z + 2 * lambda) == 0.0);
    CHECK(q.value(z + 7.0) == 0.0);

    const SmoothKernel p(KernelKind::Linear, z, lambda);
    CHECK(p.value(z + 0.5 * lambda) == doctest::Approx(0.5));
    for (const SmoothKernel* k : {&p, &q, &r}) {
      const auto knots = k->knots();
      for (double x : grid(z - lambda, z + 4 * lambda, lambda / 16)) {
        CHECK(k->value(x) >= 0.0);
        CHECK(k->value(x) <= 1.0);
      }
      CHECK(knots[0] == z);
    }
  }
}

TEST_CASE("smooth kernel derivatives match finite differences") {
  const double z = -0.4, lambda = 0.7, h = 1e-6;
  const SmoothKernel kernels[] = {{KernelKind::Linear, z, lambda, 0}, {KernelKind::Linear, z, lambda, 2},
                                  {KernelKind::Quadratic, z, lambda, 0}, {KernelKind::Quadratic, z, lambda, 3},
                                  {KernelKind::Cubic, z, lambda, 0}};
  for (const auto& k : kernels) {
    const auto knots = k.knots();
    for (double x : grid(z - 1.0, z + 3.5 * lambda, 0.013)) {
      bool near_knot = std::fabs(x) < 1e-3;
      for (double t : knots) near_knot = near_knot || std::fabs(x - t) < 1e-3;
      if (near_knot) continue;
      const double fd = (k.value(x + h) - k.value(x - h)) / (2 * h);
      CHECK(std::fabs(k.derivative(x, 1) - fd) < 1e-6);
    }
  }
}

TEST_CASE("derivatives beyond the smoothness class reject knots") {
  const SmoothKernel p(KernelKind::Linear, 0.0, 1.0);
  CHECK_THROWS_AS(p.derivative(0.0, 1), Error);
  CHECK_NOTHROW(p.derivative(0.5, 1));
  const SmoothKernel r(KernelKind::Cubic, 0.0, 1.0);
  CHECK_NOTHROW(r.derivative(1.0, 1));
  CHECK_THROWS_AS(r.derivative(1.0, 3), Error);
  CHECK_THROWS_AS(SmoothKernel(KernelKind::Cubic, 0.0, 0.0), Error);
}

TEST_CASE("r kernel moment integrals") {
  for (auto [z, lambda] : {std::pair{0.0, 1.0}, std::pair{5.0, 0.01}, std::pair{-2.5, 3.0}}) {
    const RMomentIntegrals r = r_moment_integrals(z, lambda);
    CHECK(std::fabs(r.against_one + 1.0) < 1e-10);
    CHECK(std::fabs(r.against_linear + 1.5) < 1e-10);
    CHECK(std::fabs(r.against_quadratic + 0.5) < 1e-10);
  }
}

TEST_CASE("finite differences") {
  const RealFn sq = [](double x) { return x * x; };
  for (double z : {-1.0, 0.0, 2.5})
    for (double y : {0.1, 1.0, 3.0}) {
      CHECK(difference(sq, y, 2, z) == doctest::Approx(2 * y * y).epsilon(1e-12));
      CHECK(difference(sq, y, 1, z) == doctest::Approx(sq(z + y) - sq(z)));
    }
  const RealFn phi = [](double x) { return Phi(x); };
  CHECK(difference(phi, 0.0, 3, 0.7) == 0.0);
}

TEST_CASE("interpolating polynomial") {
  const RealFn f = [](double x) { return std::exp(x); };
  for (double x : {-2.0, 0.0, 1.3}) CHECK(interp_poly(f, 0.5, 0, 0.2, x) == f(0.2));

  const RealFn cubic = [](double x) { return 2 * x * x * x - x + 4; };
  for (double x : grid(-3.0, 3.0, 0.1)) CHECK(std::fabs(interp_poly(cubic, 0.4, 3, -0.5, x) - cubic(x)) < 1e-9);

  for (int k = 2; k <= 6; ++k) CHECK(interp_poly(f, 0.3, k, 0.1, 0.7) == doctest::Approx(f(0.7)).epsilon(1e-13));
  CHECK_THROWS_AS(interp_poly(f, 0.0, 2, 0.0, 1.0), Error);
}

TEST_CASE("eta helper") {
  for (double a : {0.0, 0.5, 3.0}) {
    CHECK(eta(1, a) == 1.0);
    CHECK(eta(2, a) == doctest::Approx(a + 1.0));
    CHECK(eta(3, a) == doctest::Approx(a * a + 2.0));
    CHECK(eta(4, a) == doctest::Approx(a * a * a + 3 * a + 3.0));
  }
  CHECK(abs_moment(2) == doctest::Approx(1.0));
  CHECK(abs_moment(4) == doctest::Approx(3.0));
  CHECK(abs_moment(1) == doctest::Approx(std::sqrt(2 / std::numbers::pi)));
}
