#include "rankedge/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"
#include "rankedge/parallel.hpp"
#include "rankedge/quadrature.hpp"

namespace rankedge {

EdgeworthExpansion::EdgeworthExpansion(int order, double c1, double c2) : order_(order), c1_(c1), c2_(c2) {
  if (order != 1 && order != 2) fail(ErrorKind::InputValidity, "expansion order must be 1 or 2");
  if (!std::isfinite(c1) || !std::isfinite(c2)) fail(ErrorKind::InputValidity, "expansion coefficients must be finite");
}

double EdgeworthExpansion::value(double x) const { return derivative(x, 0); }

double EdgeworthExpansion::derivative(double x, int order) const {
  if (order < 0 || order > 3) fail(ErrorKind::InputValidity, "derivative order must lie in 0..3");
  // d/dx (psi H_k) = -psi H_{k+1}
  double poly = c1_ / 6.0 * hermite(2 + order, x);
  if (order_ == 2) poly += c2_ / 24.0 * hermite(3 + order, x) + c1_ * c1_ / 72.0 * hermite(5 + order, x);
  if (order == 0) return Phi(x) - psi(x) * poly;
  const double sign = (order % 2 == 1) ? 1.0 : -1.0;
  return sign * psi(x) * (hermite(order - 1, x) + poly);
}

EdgeworthExpansion expansion_matrix(const MatrixMoments& moms, int order) {
  return EdgeworthExpansion(order, moms.lambda1, order == 2 ? moms.lambda2 : 0.0);
}

std::function<double(double)> expansion_first_moment(const MatrixMoments& moms) {
  const double l1 = moms.lambda1;
  return [l1](double z) { return -psi(z) - z * z * z * psi(z) * l1 / 6.0; };
}

std::vector<double> standardize_sequence(const std::vector<double>& e) {
  if (e.empty()) fail(ErrorKind::InputValidity, "empty sequence");
  double mean = 0.0;
  for (double x : e) mean += x;
  mean /= static_cast<double>(e.size());
  double ss = 0.0;
  for (double x : e) ss += (x - mean) * (x - mean);
  if (!(ss > 0.0)) fail(ErrorKind::Degenerate, "sequence is constant");
  const double s = std::sqrt(ss);
  std::vector<double> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = (e[i] - mean) / s;
  return out;
}

IntegralCoefficients integral_coefficients(const std::vector<double>& ehat, const ScoreFunction& J) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double x : ehat) {
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  if (ehat.empty() || std::fabs(s1) > 1e-10 || std::fabs(s2 - 1.0) > 1e-10)
    fail(ErrorKind::InputValidity, "regression sequence must have sum 0 and sum of squares 1");
  IntegralCoefficients c{};
  c.mean = integrate_unit(J.J);
  const double second = integrate_unit([&](double t) { return J.J(t) * J.J(t); });
  const double var = second - c.mean * c.mean;
  if (!(var > 0.0)) fail(ErrorKind::Degenerate, "score function is constant");
  c.sd = std::sqrt(var);
  auto jhat = [&](double t) { return (J.J(t) - c.mean) / c.sd; };
  c.int3 = integrate_unit([&](double t) { return std::pow(jhat(t), 3); });
  c.int4 = integrate_unit([&](double t) { return std::pow(jhat(t), 4); });
  c.sum3 = s3;
  c.sum4 = s4;
  const double n = static_cast<double>(ehat.size());
  c.xi1 = s3 * c.int3;
  c.xi2 = s4 * (c.int4 - 3.0) - 3.0 / n * (c.int4 - 1.0);
  return c;
}

EdgeworthExpansion expansion_integral(const std::vector<double>& ehat, const ScoreFunction& J, int order) {
  const IntegralCoefficients c = integral_coefficients(ehat, J);
  return EdgeworthExpansion(order, c.xi1, order == 2 ? c.xi2 : 0.0);
}

IidSpec make_iid_spec(std::vector<std::pair<double, double>> support) {
  if (support.empty()) fail(ErrorKind::InputValidity, "empty support");
  IidSpec s{std::move(support), 0.0, 0.0, 0.0};
  double total = 0.0, m1 = 0.0, m2 = 0.0;
  for (auto [v, p] : s.support) {
    if (!std::isfinite(v) || !(p >= 0.0)) fail(ErrorKind::InputValidity, "support needs finite values and non-negative probabilities");
    total += p;
    m1 += p * v;
    m2 += p * v * v;
    s.mu3 += p * v * v * v;
    s.beta3 += p * std::fabs(v * v * v);
    s.beta4 += p * v * v * v * v;
  }
  if (std::fabs(total - 1.0) > 1e-12) fail(ErrorKind::InputValidity, "probabilities must sum to 1");
  if (std::fabs(m1) > 1e-12) fail(ErrorKind::InputValidity, "E X must be 0");
  if (std::fabs(m2 - 1.0) > 1e-12) fail(ErrorKind::InputValidity, "E X^2 must be 1");
  return s;
}

EdgeworthExpansion expansion_iid(const IidSpec& spec, std::size_t n) {
  if (n < 1) fail(ErrorKind::InputValidity, "n must be at least 1");
  return EdgeworthExpansion(1, spec.mu3 / std::sqrt(static_cast<double>(n)));
}

namespace {

// Lattice step h with every value = lo + k h for small integers k, or 0.
double lattice_step(const std::vector<double>& values, double lo, double hi) {
  const double span = hi - lo;
  if (span == 0.0) return 1.0;
  const double tol = 1e-9 * span;
  double h = 0.0;
  for (double v : values) {
    double a = v - lo, b = h;
    if (a < tol) continue;
    while (b > tol) {
      const double r = std::fmod(a, b);
      a = b;
      b = (r > b - tol) ? 0.0 : r;
    }
    h = a;
  }
  if (h <= tol || span / h > 4096.0) return 0.0;
  for (double v : values) {
    const double k = (v - lo) / h;
    if (std::fabs(k - std::round(k)) > 1e-9) return 0.0;
  }
  return h;
}

}  // namespace

StepCdf iid_convolution(const IidSpec& spec, std::size_t n, std::size_t max_atoms) {
  if (n < 1 || n > 4096) fail(ErrorKind::SizeLimit, "iid convolution needs 1 <= n <= 4096");
  std::vector<double> values;
  for (auto [v, p] : spec.support)
    if (p > 0.0) values.push_back(v);
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  const double root = std::sqrt(static_cast<double>(n));
  const double h = lattice_step(values, lo, hi);
  if (h > 0.0) {
    std::vector<double> step(static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1, 0.0);
    for (auto [v, p] : spec.support)
      if (p > 0.0) step[static_cast<std::size_t>(std::llround((v - lo) / h))] += p;
    const std::size_t width = (step.size() - 1) * n + 1;
    if (width > max_atoms) fail(ErrorKind::SizeLimit, "lattice convolution exceeds the atom cap");
    std::vector<double> acc{1.0};
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<double> next(acc.size() + step.size() - 1, 0.0);
      for (std::size_t a = 0; a < acc.size(); ++a) {
        if (acc[a] == 0.0) continue;
        for (std::size_t b = 0; b < step.size(); ++b) next[a + b] += acc[a] * step[b];
      }
      acc.swap(next);
    }
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (acc[k] > 0.0)
        atoms.push_back({(static_cast<double>(n) * lo + static_cast<double>(k) * h) / root, acc[k]});
    return StepCdf(std::move(atoms));
  }
  // Unscaled partial sums with merging after each step.
  StepCdf acc = StepCdf({Atom{0.0, 1.0}});
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::pair<double, double>> w;
    w.reserve(acc.size() * spec.support.size());
    for (const Atom& a : acc.atoms())
      for (auto [v, p] : spec.support)
        if (p > 0.0) w.emplace_back(a.value + v, a.prob * p);
    acc = StepCdf::from_weighted(std::move(w));
    if (acc.size() > max_atoms) fail(ErrorKind::SizeLimit, "convolution exceeds the atom cap");
  }
  std::vector<Atom> atoms = acc.atoms();
  for (Atom& a : atoms) a.value /= root;
  return StepCdf(std::move(atoms));
}

double sup_distance(const StepCdf& F, const std::function<double(double)>& e) {
  const auto& atoms = F.atoms();
  double best = std::max(std::fabs(F.eval(-12.0) - e(-12.0)), std::fabs(F.eval(12.0) - e(12.0)));
  std::vector<double> knots;
  if (atoms.empty() || atoms.front().value > -12.0) knots.push_back(-12.0);
  for (const Atom& a : atoms) knots.push_back(a.value);
  if (atoms.empty() || atoms.back().value < 12.0) knots.push_back(12.0);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double z = atoms[k].value;
    const double ez = e(z);
    const double below = k == 0 ? 0.0 : F.cdf_at_atom(k - 1);
    best = std::max({best, std::fabs(F.cdf_at_atom(k) - ez), std::fabs(below - ez)});
  }
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double a = knots[k], b = knots[k + 1];
    const double level = F.eval(a);
    for (int p = 1; p <= 8; ++p) best = std::max(best, std::fabs(level - e(a + (b - a) * p / 9.0)));
  }
  return best;
}

double delta2_condition(const StepCdf& F, double scale, unsigned threads) {
  if (!(scale > 0.0)) fail(ErrorKind::InputValidity, "scale must be positive");
  std::vector<double> per_y(64, 0.0);
  parallel_chunks(64, threads, [&](std::uint64_t k) {
    const double y = scale * std::pow(64.0, -static_cast<double>(k) / 64.0);
    const double denom = scale * scale + y * y;
    double best = 0.0;
    for (const Atom& a : F.atoms())
      for (int j = 0; j <= 2; ++j) {
        const double z = a.value - j * y;
        const double d2 = F.eval(z + 2.0 * y) - 2.0 * F.eval(z + y) + F.eval(z);
        best = std::max(best, std::fabs(d2) / denom);
      }
    per_y[k] = best;
  });
  return *std::max_element(per_y.begin(), per_y.end());
}

double iid_constant_K(double C, double beta3, double beta4) {
  if (!(C > 0.0) || beta3 < 1.0 || beta4 < 1.0) fail(ErrorKind::InputValidity, "need C > 0, beta3 >= 1 and beta4 >= 1");
  return (2.0 + beta4) * C + (3.0 + 11.0 * beta3 + 13.0 * beta4 + 9.0 * beta3 * beta4);
}

double grid_sup(const std::function<double(double)>& f) {
  double best = 0.0;
  for (int k = -12000; k <= 12000; ++k) best = std::max(best, std::fabs(f(k * 1e-3)));
  return best;
}

Diagnostics diagnose(const ScoreMatrix& m, const StepCdf& F) {
  const MatrixMoments mm = moments(m);
  const EdgeworthExpansion e1 = expansion_matrix(mm, 1);
  const EdgeworthExpansion e2 = expansion_matrix(mm, 2);
  Diagnostics d{};
  d.n = m.n();
  const double n = static_cast<double>(m.n());
  d.beta = mm.beta;
  d.delta = mm.delta;
  d.beta_over_n = mm.beta / n;
  d.sup_f_phi = sup_distance(F, [](double x) { return Phi(x); });
  d.sup_f_e1 = sup_distance(F, [&](double x) { return e1(x); });
  d.sup_f_e2 = sup_distance(F, [&](double x) { return e2(x); });
  d.ratio_k1 = d.sup_f_phi * n / mm.beta;
  d.d_cap2 = mm.delta / n;
  d.e_cap3 = mm.eta / n;
  d.lambda1 = mm.lambda1;
  d.lambda2 = mm.lambda2;
  d.gap_e2_e1 = grid_sup([&](double x) { return e2(x) - e1(x); });
  d.gap_bound = 0.5 * mm.delta / n;
  d.e1_prime_sup = grid_sup([&](double x) { return e1.derivative(x, 1); });
  d.e1_prime_bound = 0.4 + 0.1 * mm.beta / n;
  return d;
}

}  // namespace rankedge
