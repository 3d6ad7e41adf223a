#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rankedge {

struct ScoreFunction {
  std::string name;
  std::function<double(double)> J;
  std::optional<std::function<double(double)>> J_prime;
  std::optional<double> alpha_hint;
};

// Throws InputValidity unless J is finite on {k/1025 : k = 1..1024}.
void validate_score_function(const ScoreFunction& f);

ScoreFunction wilcoxon_score();
ScoreFunction van_der_waerden_score();
// -1 on (0, 1/2], +1 on (1/2, 1).
ScoreFunction median_score();
// sum_k coeffs[k] t^k
ScoreFunction polynomial_score(std::vector<double> coeffs);
ScoreFunction inv_sqrt_score();
// wilcoxon | vdw | median | inv_sqrt
ScoreFunction score_by_name(const std::string& name);

std::vector<double> approx_scores(const ScoreFunction& f, std::size_t n);

// d_j = E J(U_{j:n}) for the order statistics of n uniforms.
std::vector<double> exact_scores(const ScoreFunction& f, std::size_t n, unsigned threads = 0);

std::vector<double> median_scores(std::size_t n);

struct VAlphaResult {
  double gamma;
  double gamma_coarse;
  bool holds;
};

// Max of |J'(t)| (t(1-t))^{1+alpha} on a geometric grid towards both
// endpoints. The coarse grid stops at 1e-4 with grid_size points per half,
// the fine grid at 1e-8 with twice as many; holds when both are finite and
// differ by less than 5%.
VAlphaResult v_alpha_check(const ScoreFunction& f, double alpha, std::size_t grid_size = 256);

// Gamma(g, alpha) = sup |g'(t)| (t(1-t))^{1+alpha} for an analytic g' on the
// same fine grid.
double gamma_constant(const std::function<double(double)>& g_prime, double alpha, std::size_t grid_size = 512);

struct VanZwetParams {
  double r = 2.0;
  double k = 3.0;
  double m = 2.0;
  double s = 3.0;
  double delta = 0.1;
  std::optional<double> zeta;  // defaults to n^{-3/2} ln n
};

struct VanZwetReport {
  double r, k, m, s;
  double e_lower, e_upper;  // sum |e_i - ebar|^r / n and sum |e_i - ebar|^k / n
  double d_lower, d_upper;  // same for d with m and s
  double delta, zeta;
  double measure;           // Lebesgue measure of the union of (d_j - zeta, d_j + zeta)
  bool regression_ok;       // both e constants positive and finite
  bool scores_ok;           // both d constants positive and finite
  bool spread_ok;           // measure >= delta n zeta
  double rate_exponent_first;
  double rate_exponent_second;
};

VanZwetReport van_zwet_check(const std::vector<double>& e, const std::vector<double>& d, const VanZwetParams& p);

// Measure of the union of (x - zeta, x + zeta) over the points.
double union_measure(std::vector<double> points, double zeta);

}  // namespace rankedge
