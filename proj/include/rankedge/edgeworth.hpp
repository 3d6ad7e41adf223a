#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rankedge/core_matrix.hpp"
#include "rankedge/scores.hpp"
#include "rankedge/step_cdf.hpp"

namespace rankedge {

// Phi(x) - psi(x) {c1/6 H2 + c2/24 H3 + c1^2/72 H5}, the last two terms only
// for order 2.
class EdgeworthExpansion {
 public:
  EdgeworthExpansion(int order, double c1, double c2 = 0.0);
  int order() const { return order_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double operator()(double x) const { return value(x); }
  double value(double x) const;
  // order 0..3
  double derivative(double x, int order) const;

 private:
  int order_;
  double c1_;
  double c2_;
};

EdgeworthExpansion expansion_matrix(const MatrixMoments& moms, int order);

// z -> integral of x e1'(x) over (-inf, z].
std::function<double(double)> expansion_first_moment(const MatrixMoments& moms);

struct IntegralCoefficients {
  double mean;   // integral of J
  double sd;     // L2 norm of J - mean
  double int3;   // integral of Jhat^3
  double int4;   // integral of Jhat^4
  double sum3;   // sum ehat^3
  double sum4;   // sum ehat^4
  double xi1;
  double xi2;
};

// ehat must have sum 0 and sum of squares 1 (within 1e-10).
IntegralCoefficients integral_coefficients(const std::vector<double>& ehat, const ScoreFunction& J);
EdgeworthExpansion expansion_integral(const std::vector<double>& ehat, const ScoreFunction& J, int order);

// Centers and scales e to sum 0 and sum of squares 1.
std::vector<double> standardize_sequence(const std::vector<double>& e);

struct IidSpec {
  std::vector<std::pair<double, double>> support;  // (value, prob)
  double mu3;
  double beta3;
  double beta4;
};

// Validates mean 0 and variance 1 (within 1e-12) and fills the moments.
IidSpec make_iid_spec(std::vector<std::pair<double, double>> support);

EdgeworthExpansion expansion_iid(const IidSpec& spec, std::size_t n);

// Law of n^{-1/2}(X_1 + ... + X_n). Integer-lattice supports are convolved
// exactly on the lattice; other supports merge nearby atoms and throw
// SizeLimit past max_atoms.
StepCdf iid_convolution(const IidSpec& spec, std::size_t n, std::size_t max_atoms = 1u << 22);

// sup |F - e| over the atoms (both one-sided limits of F), eight interior
// probes per gap including the outer gaps to +-12, and the points +-12.
double sup_distance(const StepCdf& F, const std::function<double(double)>& e);

// sup over y in the geometric grid scale * 64^{-k/64}, k = 0..63, and over
// the breakpoints z of |Delta_y^2 F(z)| / (scale^2 + y^2).
double delta2_condition(const StepCdf& F, double scale, unsigned threads = 0);

double iid_constant_K(double C, double beta3, double beta4);

struct Diagnostics {
  std::size_t n;
  double beta;
  double delta;
  double beta_over_n;
  double sup_f_phi;
  double sup_f_e1;
  double sup_f_e2;
  double ratio_k1;  // sup_f_phi n / beta
  double d_cap2;    // delta / n
  double e_cap3;    // eta / n
  double lambda1;
  double lambda2;
  double gap_e2_e1;       // grid sup |e2 - e1|
  double gap_bound;       // delta / (2n)
  double e1_prime_sup;    // grid sup |e1'|
  double e1_prime_bound;  // 2/5 + beta / (10 n)
};

// Uniform grid on [-12, 12] with step 1e-3.
double grid_sup(const std::function<double(double)>& f);

// F is the law of the statistic of the standardized matrix.
Diagnostics diagnose(const ScoreMatrix& m, const StepCdf& F);

}  // namespace rankedge
