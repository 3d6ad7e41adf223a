#include "rankedge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <string>

#include "rankedge/error.hpp"
#include "rankedge/normal_hermite.hpp"

namespace rankedge {

namespace {

double gsl_trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct Workspace {
  Workspace() : w(gsl_integration_workspace_alloc(kLimit)) { gsl_set_error_handler_off(); }
  ~Workspace() { gsl_integration_workspace_free(w); }
  static constexpr std::size_t kLimit = 4000;
  gsl_integration_workspace* w;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, double tol) {
  thread_local Workspace ws;
  std::vector<double> knots{a};
  for (double x : breakpoints)
    if (x > a && x < b) knots.push_back(x);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  gsl_function gf{&gsl_trampoline, const_cast<std::function<double(double)>*>(&f)};
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (knots[k + 1] <= knots[k]) continue;
    double result = 0.0, error = 0.0;
    // Round-off and iteration-limit statuses still return the best estimate.
    gsl_integration_qag(&gf, knots[k], knots[k + 1], 0.0, tol, Workspace::kLimit, GSL_INTEG_GAUSS61, ws.w, &result,
                        &error);
    if (!std::isfinite(result)) fail(ErrorKind::Numeric, "integrand is not finite on the integration range");
    total += result;
  }
  return total;
}

double integrate_gaussian(const std::function<double(double)>& g, const std::vector<double>& breakpoints) {
  return integrate([&](double y) { return g(y) * psi(y); }, -12.0, 12.0, breakpoints);
}

namespace {

// Integral of f over (0, 1e-3] towards 0, or over [1 - 1e-3, 1) towards 1,
// in pieces whose widths shrink by 1e-3. Pieces that stop shrinking signal
// divergence; a geometric estimate covers the part beyond the last piece.
double endpoint_tail(const std::function<double(double)>& f, bool at_zero) {
  double total = 0.0;
  double prev = 0.0;
  double hi = 1e-3;
  for (int piece = 0; piece < 7; ++piece) {
    const double lo = hi * 1e-3;
    // 1 - lo is not representable below ~1e-16
    if (!at_zero && lo < 1e-15) break;
    // t = e^u (or 1 - t = e^u) spreads the decades of the piece evenly
    auto g = [&](double u) {
      const double w = std::exp(u);
      return w * f(at_zero ? w : 1.0 - w);
    };
    const double part = integrate(g, std::log(lo), std::log(hi));
    total += part;
    const double scale = std::max(1.0, std::fabs(total));
    if (piece > 0 && std::fabs(part) <= 1e-14 * scale) return total;
    if (piece > 0 && std::fabs(part) >= 0.9 * std::fabs(prev) && std::fabs(part) > 1e-10 * scale)
      fail(ErrorKind::Numeric, "integral does not converge at the endpoint " + std::string(at_zero ? "0" : "1"));
    prev = part;
    hi = lo;
  }
  return total;
}

}  // namespace

double integrate_unit(const std::function<double(double)>& f) {
  return endpoint_tail(f, true) + integrate(f, 1e-3, 1.0 - 1e-3, {0.5}) + endpoint_tail(f, false);
}

}  // namespace rankedge
