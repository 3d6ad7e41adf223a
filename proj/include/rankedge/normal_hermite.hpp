#pragma once

#include <array>
#include <functional>

namespace rankedge {

double psi(double x);    // standard normal density
double Phi(double x);    // standard normal distribution function
double Phi_upper(double x);  // 1 - Phi(x) without cancellation
double mills(double x);  // (1 - Phi(x)) / psi(x)
double normal_quantile(double p);

// H_n via H_{n+1} = x H_n - n H_{n-1}; n <= 64.
double hermite(int n, double x);
// sup over the real line of |H_n(x) psi(x)|, n <= 8.
double hermite_weighted_norm(int n);

// eta_k(a) = sum_{i=1}^{floor(k/2)} a^{k+1-2i} prod_{j<i}(k+1-2j) + prod_{j<=floor(k/2)}(k+1-2j)
double eta(int k, double a);
// E|Y|^k for standard normal Y.
double abs_moment(int k);
// E(|Y|^k 1{Y <= x}).
double truncated_abs_moment(int k, double x);

// Solution of f' = x f + |x|^k 1{x <= z} - E(|Y|^k 1{Y <= z}), k in 0..4.
class SteinSolution {
 public:
  SteinSolution(int k, double z);
  int k() const { return k_; }
  double z() const { return z_; }
  double value(double x) const;
  double derivative(double x) const;
  // Pointwise bound |f_k(x)| <= eta_k(|x|).
  double bound(double x) const { return eta(k_, x < 0 ? -x : x); }

 private:
  int k_;
  double z_;
  double lower_;  // E(|Y|^k 1{Y <= z})
  double upper_;  // E(|Y|^k 1{Y > z})
};

double stein_f(int k, double z, double x);

// Solution for the target y 1{y <= z}: f' = x f + x 1{x <= z} + psi(z).
double stein_f1(double z, double x);
double stein_f1_prime(double z, double x);

enum class KernelKind { Linear, Quadratic, Cubic };

// Piecewise-polynomial smoothings of 1{x <= z}: the linear kernel ramps over
// [z, z+lambda], the quadratic over [z, z+2 lambda], the cubic over
// [z, z+3 lambda]. The linear kernel is multiplied by |x|^power, the
// quadratic by x^power; the cubic takes power 0 only.
class SmoothKernel {
 public:
  SmoothKernel(KernelKind kind, double z, double lambda, int power = 0);
  KernelKind kind() const { return kind_; }
  double z() const { return z_; }
  double lambda() const { return lambda_; }
  int power() const { return power_; }
  std::array<double, 4> knots() const;
  double value(double x) const;
  // order in 0..3; orders above the smoothness class are one-sided and
  // throw when x sits exactly on a knot.
  double derivative(double x, int order) const;

 private:
  double base(double x, int order) const;
  double factor(double x, int order) const;
  KernelKind kind_;
  double z_;
  double lambda_;
  int power_;
};

struct RMomentIntegrals {
  double against_one;
  double against_linear;
  double against_quadratic;
};

// Integrals of r' against 1, (x-z)/lambda and (x-z)(x-z-lambda)/(2 lambda^2)
// over [z, z + 3 lambda].
RMomentIntegrals r_moment_integrals(double z, double lambda);

using RealFn = std::function<double(double)>;

// k-th forward difference of F with step y at z.
double difference(const RealFn& F, double y, int k, double z);
// Newton form of the polynomial interpolating F at z, z+y, ..., z+ky.
double interp_poly(const RealFn& F, double y, int k, double z, double x);

}  // namespace rankedge
