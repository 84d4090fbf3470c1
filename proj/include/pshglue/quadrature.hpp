#pragma once

#include <cmath>
#include <functional>

namespace pshglue {

// Adaptive Simpson integration to absolute tolerance `tol`.
// The recursion uses the standard 15x error estimate and splits the budget
// between halves; depth is capped so pathological integrands terminate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 52);

}  // namespace pshglue
