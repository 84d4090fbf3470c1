#pragma once

#include "pshglue/expr.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Central-difference Wirtinger jet through real/imaginary coordinate stencils,
// Richardson-extrapolated from steps h and h/2. Independent of eval_jet: it
// only consumes field values. Throws StepTooLarge when the two levels
// disagree by more than disagreement_tol relative to the jet scale.
Jet2 finite_diff_jet(const FieldExpr& expr, const CPoint& p, double step = 1e-4,
                     double disagreement_tol = 5e-3);

}  // namespace pshglue
