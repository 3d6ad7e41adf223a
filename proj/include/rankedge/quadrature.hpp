#pragma once

#include <functional>
#include <vector>

namespace rankedge {

// Adaptive 61-point Gauss-Kronrod integration of f over [a, b] with relative
// tolerance tol. Pieces between the optional interior breakpoints are
// integrated separately so kinks and jumps do not slow the refinement down.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints = {}, double tol = 1e-10);

// Integral of g(y) psi(y) dy over [-12, 12].
double integrate_gaussian(const std::function<double(double)>& g,
                          const std::vector<double>& breakpoints = {});

// Integral over the open unit interval for integrands that may be singular
// at 0 or 1. Each endpoint region is split into geometric pieces down to
// 1e-24; when the pieces stop shrinking the integral is declared divergent
// and ErrorKind::Numeric is thrown.
double integrate_unit(const std::function<double(double)>& f);

}  // namespace rankedge
