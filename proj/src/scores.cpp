#include "rankedge/scores.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/parallel.hpp"
#include "rankedge/quadrature.hpp"

namespace rankedge {

namespace {

constexpr std::size_t kMaxJacobiNodes = 1024;

double finite_or_fail(const ScoreFunction& f, double t) {
  const double v = f.J(t);
  if (!std::isfinite(v)) fail(ErrorKind::InputValidity, "score function " + f.name + " is not finite at t = " + std::to_string(t));
  return v;
}

// Normalized Gauss-Jacobi rule for the weight t^{j-1} (1-t)^{n-j} on [0, 1].
double jacobi_mean(const ScoreFunction& f, std::size_t n, std::size_t j, std::size_t nodes) {
  struct Free {
    void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
  };
  std::unique_ptr<gsl_integration_fixed_workspace, Free> w(gsl_integration_fixed_alloc(
      gsl_integration_fixed_jacobi, nodes, 0.0, 1.0, static_cast<double>(n - j), static_cast<double>(j - 1)));
  if (!w) fail(ErrorKind::Numeric, "Gauss-Jacobi rule could not be built");
  const double* x = gsl_integration_fixed_nodes(w.get());
  const double* wt = gsl_integration_fixed_weights(w.get());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    num += wt[k] * finite_or_fail(f, x[k]);
    den += wt[k];
  }
  return num / den;
}

double order_statistic_mean(const ScoreFunction& f, std::size_t n, std::size_t j) {
  const double a = static_cast<double>(j - 1), b = static_cast<double>(n - j);
  const double log_norm = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0);
  auto integrand = [&](double t) {
    const double dens = std::exp(log_norm + a * std::log(t) + b * std::log1p(-t));
    return dens == 0.0 ? 0.0 : dens * f.J(t);
  };
  try {
    return integrate_unit(integrand);
  } catch (const Error&) {
    fail(ErrorKind::Numeric, "exact score " + std::to_string(j) + " did not converge; J may not be integrable");
  }
}

std::vector<double> geometric_half(double lo, std::size_t points) {
  // points from lo up to 1/2, geometric in t
  std::vector<double> t(points);
  const double ratio = std::log(0.5 / lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) t[k] = lo * std::exp(ratio * static_cast<double>(k));
  t.back() = 0.5;
  return t;
}

double derivative_at(const ScoreFunction& f, double t) {
  if (f.J_prime) return (*f.J_prime)(t);
  const double h = 1e-6 * std::min(t, 1.0 - t);
  return (f.J(t + h) - f.J(t - h)) / (2.0 * h);
}

double grid_sup(const std::function<double(double)>& g_prime, double alpha, double lo, std::size_t points) {
  double best = 0.0;
  for (double t : geometric_half(lo, points)) {
    for (double x : {t, 1.0 - t}) {
      const double v = std::fabs(g_prime(x)) * std::pow(x * (1.0 - x), 1.0 + alpha);
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
      best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace

void validate_score_function(const ScoreFunction& f) {
  if (!f.J) fail(ErrorKind::InputValidity, "score function has no J");
  for (int k = 1; k <= 1024; ++k) finite_or_fail(f, k / 1025.0);
}

ScoreFunction wilcoxon_score() {
  return {"wilcoxon", [](double t) { return t; }, [](double) { return 1.0; }, std::nullopt};
}

ScoreFunction van_der_waerden_score() {
  return {"vdw", [](double t) { return normal_quantile(t); },
          [](double t) { return 1.0 / psi(normal_quantile(t)); }, std::nullopt};
}

ScoreFunction median_score() {
  return {"median", [](double t) { return t <= 0.5 ? -1.0 : 1.0; }, std::nullopt, std::nullopt};
}

ScoreFunction polynomial_score(std::vector<double> coeffs) {
  auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
  auto value = [c](double t) {
    double r = 0.0;
    for (auto it = c->rbegin(); it != c->rend(); ++it) r = r * t + *it;
    return r;
  };
  auto slope = [c](double t) {
    double r = 0.0;
    for (std::size_t k = c->size(); k-- > 1;) r = r * t + static_cast<double>(k) * (*c)[k];
    return r;
  };
  return {"polynomial", value, slope, std::nullopt};
}

ScoreFunction inv_sqrt_score() {
  return {"inv_sqrt", [](double t) { return 1.0 / std::sqrt(t); },
          [](double t) { return -0.5 / (t * std::sqrt(t)); }, std::nullopt};
}

ScoreFunction score_by_name(const std::string& name) {
  if (name == "wilcoxon") return wilcoxon_score();
  if (name == "vdw") return van_der_waerden_score();
  if (name == "median") return median_score();
  if (name == "inv_sqrt") return inv_sqrt_score();
  fail(ErrorKind::Usage, "unknown score function '" + name + "' (expected wilcoxon, vdw, median or inv_sqrt)");
}

std::vector<double> approx_scores(const ScoreFunction& f, std::size_t n) {
  if (n < 1) fail(ErrorKind::InputValidity, "n must be at least 1");
  std::vector<double> d(n);
  for (std::size_t j = 1; j <= n; ++j) d[j - 1] = finite_or_fail(f, static_cast<double>(j) / static_cast<double>(n + 1));
  return d;
}

std::vector<double> exact_scores(const ScoreFunction& f, std::size_t n, unsigned threads) {
  if (n < 1) fail(ErrorKind::InputValidity, "n must be at least 1");
  std::vector<double> d(n);
  if (f.name == "wilcoxon") {
    for (std::size_t j = 1; j <= n; ++j) d[j - 1] = static_cast<double>(j) / static_cast<double>(n + 1);
    return d;
  }
  gsl_set_error_handler_off();
  parallel_chunks(n, threads, [&](std::uint64_t c) {
    const std::size_t j = static_cast<std::size_t>(c) + 1;
    std::size_t nodes = (n + 64 + 1) / 2;
    double prev = jacobi_mean(f, n, j, nodes);
    bool converged = false;
    while (!converged && nodes * 2 <= kMaxJacobiNodes) {
      nodes *= 2;
      const double next = jacobi_mean(f, n, j, nodes);
      converged = std::fabs(next - prev) < 1e-9;
      prev = next;
    }
    // Endpoint singularities not absorbed by the weight (j = 1 or j = n with
    // an unbounded J) slow Gauss-Jacobi to algebraic convergence; fall back to
    // adaptive integration against the order-statistic density.
    d[j - 1] = converged ? prev : order_statistic_mean(f, n, j);
  });
  return d;
}

std::vector<double> median_scores(std::size_t n) {
  if (n < 2) fail(ErrorKind::InputValidity, "median scores need n >= 2");
  std::vector<double> d(n, 1.0);
  for (std::size_t j = 0; j < n / 2; ++j) d[j] = -1.0;
  return d;
}

VAlphaResult v_alpha_check(const ScoreFunction& f, double alpha, std::size_t grid_size) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::InputValidity, "alpha must lie in (0, 1)");
  if (grid_size < 2) fail(ErrorKind::InputValidity, "grid_size must be at least 2");
  auto g = [&](double t) { return derivative_at(f, t); };
  VAlphaResult r{};
  r.gamma_coarse = grid_sup(g, alpha, 1e-4, grid_size);
  r.gamma = grid_sup(g, alpha, 1e-8, 2 * grid_size);
  r.holds = std::isfinite(r.gamma) && std::isfinite(r.gamma_coarse) &&
            std::fabs(r.gamma - r.gamma_coarse) < 0.05 * std::max(r.gamma_coarse, 1e-300);
  if (!std::isfinite(r.gamma) && !f.J_prime)
    fail(ErrorKind::Numeric, "numerical derivative of " + f.name + " is not finite");
  return r;
}

double gamma_constant(const std::function<double(double)>& g_prime, double alpha, std::size_t grid_size) {
  return grid_sup(g_prime, alpha, 1e-8, grid_size);
}

double union_measure(std::vector<double> points, double zeta) {
  if (points.empty()) return 0.0;
  std::sort(points.begin(), points.end());
  double total = 0.0;
  double lo = points[0] - zeta, hi = points[0] + zeta;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k] - zeta <= hi) {
      hi = std::max(hi, points[k] + zeta);
    } else {
      total += hi - lo;
      lo = points[k] - zeta;
      hi = points[k] + zeta;
    }
  }
  return total + (hi - lo);
}

VanZwetReport van_zwet_check(const std::vector<double>& e, const std::vector<double>& d, const VanZwetParams& p) {
  const std::size_t n = e.size();
  if (d.size() != n) fail(ErrorKind::InputValidity, "regression and score sequences differ in length");
  if (n < 2) fail(ErrorKind::InputValidity, "van Zwet check needs n >= 2");
  if (!(p.k > 2.0 && p.r > 0.0 && p.r < p.k)) fail(ErrorKind::InputValidity, "need k > 2 and 0 < r < k");
  if (!(p.s > 2.0 && p.m > 0.0 && p.m < p.s)) fail(ErrorKind::InputValidity, "need s > 2 and 0 < m < s");
  const double dn = static_cast<double>(n);
  const double zeta_min = std::pow(dn, -1.5) * std::log(dn);
  const double zeta = p.zeta.value_or(zeta_min);
  if (zeta < zeta_min * (1.0 - 1e-12)) fail(ErrorKind::InputValidity, "zeta must be at least n^{-3/2} ln n");
  if (!(p.delta > 0.0)) fail(ErrorKind::InputValidity, "delta must be positive");

  auto centered_power = [dn](const std::vector<double>& v, double q) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= dn;
    double s = 0.0;
    for (double x : v) s += std::pow(std::fabs(x - mean), q);
    return s / dn;
  };
  VanZwetReport r{};
  r.r = p.r;
  r.k = p.k;
  r.m = p.m;
  r.s = p.s;
  r.e_lower = centered_power(e, p.r);
  r.e_upper = centered_power(e, p.k);
  r.d_lower = centered_power(d, p.m);
  r.d_upper = centered_power(d, p.s);
  r.delta = p.delta;
  r.zeta = zeta;
  r.measure = union_measure(d, zeta);
  r.regression_ok = r.e_lower > 0.0 && std::isfinite(r.e_upper);
  r.scores_ok = r.d_lower > 0.0 && std::isfinite(r.d_upper);
  r.spread_ok = r.measure >= p.delta * dn * zeta;
  auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
  r.rate_exponent_first = -1.0 + pos(4.0 / p.k - 1.0) + pos(4.0 / p.s - 1.0);
  r.rate_exponent_second = -1.5 + pos(5.0 / p.k - 1.0) + pos(5.0 / p.s - 1.0);
  return r;
}

}  // namespace rankedge
