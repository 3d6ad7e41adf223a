#include "rankedge/normal_hermite.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rankedge/error.hpp"
#include "rankedge/quadrature.hpp"

namespace rankedge {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

// Continued fraction 1/(x + 1/(x + 2/(x + 3/(x + ...)))) by modified Lentz.
double mills_continued_fraction(double x) {
  const double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int j = 1; j < 500; ++j) {
    d = x + j * d;
    if (d == 0.0) d = tiny;
    c = x + j / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

double double_factorial_product(int k) {
  double p = 1.0;
  for (int j = 1; j <= k / 2; ++j) p *= (k + 1 - 2 * j);
  return p;
}

// (1/psi(x)) * integral_x^inf y^k psi(y) dy for x >= 0.
double upper_ratio(int k, double x) {
  if (k % 2 == 1) return eta(k, x);
  const double e0 = eta(k, 0.0);
  return eta(k, x) - e0 + e0 * mills(x);
}

// integral_z^inf |y|^k psi(y) dy
double upper_abs_moment(int k, double z) {
  if (z >= 0.0) return psi(z) * upper_ratio(k, z);
  return abs_moment(k) - psi(z) * upper_ratio(k, -z);
}

// psi(z) / psi(x)
double psi_ratio(double z, double x) { return std::exp(0.5 * (x * x - z * z)); }

}  // namespace

double psi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double Phi(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double Phi_upper(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double mills(double x) {
  if (x > 6.0) return mills_continued_fraction(x);
  return Phi_upper(x) / psi(x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::InputValidity, "quantile argument must lie in (0, 1)");
  if (p > 0.5) return -normal_quantile(1.0 - p);
  double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  x -= (Phi(x) - p) / psi(x);
  return x;
}

double hermite(int n, double x) {
  if (n < 0 || n > 64) fail(ErrorKind::SizeLimit, "hermite order must lie in 0..64");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_weighted_norm(int n) {
  if (n < 0 || n > 8) fail(ErrorKind::SizeLimit, "weighted norm is tabulated for orders 0..8");
  auto g = [n](double x) { return std::fabs(hermite(n, x) * psi(x)); };
  const double step = 1e-3;
  double best_x = 0.0;
  double best = g(0.0);
  for (double x = -10.0; x <= 10.0; x += step) {
    const double v = g(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Golden-section refinement inside the bracketing grid cell pair.
  double a = best_x - step;
  double b = best_x + step;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  while (b - a > 1e-12) {
    if (g(c) > g(d))
      b = d;
    else
      a = c;
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return std::max(best, g(0.5 * (a + b)));
}

double eta(int k, double a) {
  if (k < 0) fail(ErrorKind::InputValidity, "eta needs k >= 0");
  double sum = 0.0;
  double prod = 1.0;
  for (int i = 1; i <= k / 2; ++i) {
    sum += std::pow(a, k + 1 - 2 * i) * prod;
    prod *= (k + 1 - 2 * i);
  }
  return sum + prod;
}

double abs_moment(int k) {
  const double p = double_factorial_product(k);
  return k % 2 == 1 ? std::sqrt(2.0 / std::numbers::pi) * p : p;
}

double truncated_abs_moment(int k, double x) {
  if (x <= 0.0) return psi(x) * upper_ratio(k, -x);
  return abs_moment(k) - psi(x) * upper_ratio(k, x);
}

SteinSolution::SteinSolution(int k, double z) : k_(k), z_(z) {
  if (k < 0 || k > 4) fail(ErrorKind::InputValidity, "stein solution needs k in 0..4");
  lower_ = truncated_abs_moment(k, z);
  upper_ = upper_abs_moment(k, z);
}

double SteinSolution::value(double x) const {
  const int k = k_;
  const double z = z_;
  if (x >= z) {
    if (z > 0.0) return lower_ * mills(x);
    const double uz = upper_ratio(k, -z);
    if (x >= 0.0) return uz * psi(z) * mills(x);
    return uz * psi_ratio(z, x) * Phi_upper(x);
  }
  if (x <= 0.0) {
    const double ax = -x;
    if (k % 2 == 0) return eta(k, ax) - eta(k, 0.0) + mills(ax) * upper_;
    return eta(k, ax) - lower_ * mills(ax);
  }
  const double tail = Phi(x) * upper_ratio(k, z) * psi_ratio(z, x);
  if (k % 2 == 0) return eta(k, 0.0) - eta(k, x) + tail;
  return abs_moment(k) * mills(x) - eta(k, x) + tail;
}

double SteinSolution::derivative(double x) const {
  const double target = x <= z_ ? std::pow(std::fabs(x), k_) : 0.0;
  return x * value(x) + target - lower_;
}

double stein_f(int k, double z, double x) { return SteinSolution(k, z).value(x); }

double stein_f1(double z, double x) {
  if (x <= z) {
    const double r = x <= 0.0 ? psi(z) * mills(-x) : psi_ratio(z, x) * Phi(x);
    return r - 1.0;
  }
  const double r = x >= 0.0 ? psi(z) * mills(x) : psi_ratio(z, x) * Phi_upper(x);
  return -r;
}

double stein_f1_prime(double z, double x) {
  return x * stein_f1(z, x) + (x <= z ? x : 0.0) + psi(z);
}

SmoothKernel::SmoothKernel(KernelKind kind, double z, double lambda, int power)
    : kind_(kind), z_(z), lambda_(lambda), power_(power) {
  if (!(lambda > 0.0)) fail(ErrorKind::InputValidity, "kernel width lambda must be positive");
  if (power < 0) fail(ErrorKind::InputValidity, "kernel power must be nonnegative");
  if (kind == KernelKind::Cubic && power != 0) fail(ErrorKind::InputValidity, "cubic kernel takes no power factor");
}

std::array<double, 4> SmoothKernel::knots() const {
  const double l = lambda_;
  switch (kind_) {
    case KernelKind::Linear: return {z_, z_ + l, z_ + l, z_ + l};
    case KernelKind::Quadratic: return {z_, z_ + l, z_ + 2 * l, z_ + 2 * l};
    case KernelKind::Cubic: break;
  }
  return {z_, z_ + l, z_ + 2 * l, z_ + 3 * l};
}

double SmoothKernel::base(double x, int order) const {
  const double l = lambda_;
  const double u = x - z_;
  int smooth = 0;
  int pieces = 1;
  switch (kind_) {
    case KernelKind::Linear: smooth = 0; pieces = 1; break;
    case KernelKind::Quadratic: smooth = 1; pieces = 2; break;
    case KernelKind::Cubic: smooth = 2; pieces = 3; break;
  }
  if (order > smooth) {
    for (int i = 0; i <= pieces; ++i)
      if (u == i * l)
        fail(ErrorKind::Numeric, "derivative of order " + std::to_string(order) + " is undefined at a knot");
  }
  if (u <= 0.0) return order == 0 ? 1.0 : 0.0;
  if (u >= pieces * l) return 0.0;
  const double l2 = l * l;
  const double l3 = l2 * l;
  if (kind_ == KernelKind::Linear) {
    if (order == 0) return 1.0 - u / l;
    return order == 1 ? -1.0 / l : 0.0;
  }
  if (kind_ == KernelKind::Quadratic) {
    if (u <= l) {
      switch (order) {
        case 0: return 1.0 - u * u / (2 * l2);
        case 1: return -u / l2;
        case 2: return -1.0 / l2;
        default: return 0.0;
      }
    }
    const double w = 2 * l - u;
    switch (order) {
      case 0: return w * w / (2 * l2);
      case 1: return -w / l2;
      case 2: return 1.0 / l2;
      default: return 0.0;
    }
  }
  if (u <= l) {
    switch (order) {
      case 0: return 1.0 - u * u * u / (6 * l3);
      case 1: return -u * u / (2 * l3);
      case 2: return -u / l3;
      default: return -1.0 / l3;
    }
  }
  if (u <= 2 * l) {
    const double v = 2 * u - 3 * l;
    switch (order) {
      case 0: return (v * v * v - 18 * l2 * u + 39 * l3) / (24 * l3);
      case 1: return (v * v - 3 * l2) / (4 * l3);
      case 2: return v / l3;
      default: return 2.0 / l3;
    }
  }
  const double w = 3 * l - u;
  switch (order) {
    case 0: return w * w * w / (6 * l3);
    case 1: return -w * w / (2 * l3);
    case 2: return w / l3;
    default: return -1.0 / l3;
  }
}

double SmoothKernel::factor(double x, int order) const {
  const int p = power_;
  if (order > p) return 0.0;
  double coef = 1.0;
  for (int i = 0; i < order; ++i) coef *= (p - i);
  if (kind_ == KernelKind::Linear) {
    if (x == 0.0 && order == p && p % 2 == 1)
      fail(ErrorKind::Numeric, "derivative of |x|^k is undefined at 0");
    const double s = x < 0.0 && order % 2 == 1 ? -1.0 : 1.0;
    return s * coef * std::pow(std::fabs(x), p - order);
  }
  return coef * std::pow(x, p - order);
}

double SmoothKernel::value(double x) const { return factor(x, 0) * base(x, 0); }

double SmoothKernel::derivative(double x, int order) const {
  if (order < 0 || order > 3) fail(ErrorKind::InputValidity, "derivative order must lie in 0..3");
  double total = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= order; ++i) {
    const double g = factor(x, order - i);
    if (g != 0.0) total += binom * g * base(x, i);
    binom = binom * (order - i) / (i + 1);
  }
  return total;
}

RMomentIntegrals r_moment_integrals(double z, double lambda) {
  const SmoothKernel r(KernelKind::Cubic, z, lambda);
  const double a = z;
  const double b = z + 3 * lambda;
  const std::vector<double> cuts{z + lambda, z + 2 * lambda};
  auto rp = [&](double x) { return r.derivative(x, 1); };
  RMomentIntegrals out{};
  out.against_one = integrate(rp, a, b, cuts);
  out.against_linear = integrate([&](double x) { return (x - z) / lambda * rp(x); }, a, b, cuts);
  out.against_quadratic = integrate(
      [&](double x) { return (x - z) * (x - z - lambda) / (2 * lambda * lambda) * rp(x); }, a, b, cuts);
  return out;
}

double difference(const RealFn& F, double y, int k, double z) {
  if (k < 0 || k > 8) fail(ErrorKind::InputValidity, "difference order must lie in 0..8");
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = (k - j) % 2 == 0 ? 1.0 : -1.0;
    total += sign * binom * F(z + j * y);
    binom = binom * (k - j) / (j + 1);
  }
  return total;
}

double interp_poly(const RealFn& F, double y, int k, double z, double x) {
  if (k < 0 || k > 8) fail(ErrorKind::InputValidity, "interpolation order must lie in 0..8");
  if (k >= 1 && y == 0.0) fail(ErrorKind::InputValidity, "interpolation step y must be nonzero");
  double total = F(z);
  double basis = 1.0;
  for (int s = 1; s <= k; ++s) {
    basis *= (x - z - (s - 1) * y) / (s * y);
    total += difference(F, y, s, z) * basis;
  }
  return total;
}

}  // namespace rankedge
