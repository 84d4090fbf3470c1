#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Value and first two derivatives of a scalar function of one real variable.
struct D2 {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// B(t) = exp(-1/t) for t > 0, else 0. The flat factor behind every cutoff here.
D2 flat_exp(double t);

// Standard transition: rise(u) = B(u) / (B(u) + B(1-u)); 0 for u <= 0, 1 for u >= 1.
D2 smooth_rise(double u);

// chi(t) = B(1-t)/(B(t) + B(1-t)): identically 1 on (-inf, 0], 0 on [1, inf).
D2 chi(double t);

// beta(t) = exp(-1/(t+4)) for t > -4, else 0; alpha'' by construction.
D2 beta(double t);

// alpha(t) = \int_{-4}^{t} (t - w) beta(w) dw: identically 0 on (-inf, -4],
// with alpha'' = beta > 0 on (-4, inf). Evaluated by cached adaptive
// quadrature at 1e-10 absolute tolerance.
D2 alpha(double t);

// h_K(t) = chi(t+3) / log(-t) + K alpha(t); increasing and convex once K is
// large enough. The 1/log(-t) factor is only touched where chi(t+3) > 0,
// which keeps t < -2 and log(-t) > log 2.
D2 lemma_h(double K, double t);

// Increasing convex reparametrization functions. Two representations:
//  - a per-unit-interval slope table with quadratic corner blends (the r of
//    the gluing step; blends sit left of each knot so the slope on [k, k+1]
//    is never below the requested one), and
//  - closed-form pieces (chi, alpha, lemma h) used by the reduction step.
class PiecewiseConvexFn {
 public:
  enum class Kind { SlopeTable, Chi, Alpha, LemmaH };

  // slopes[k] is the slope on [k, k+1]; values below the running maximum are
  // raised so the table is nondecreasing. blend is the ramp width before
  // each knot (0 < blend < 1).
  static PiecewiseConvexFn from_shell_slopes(std::vector<double> slopes, double blend = 0.1);
  static PiecewiseConvexFn identity_slope(int intervals = 1);
  static PiecewiseConvexFn chi_fn();
  static PiecewiseConvexFn alpha_fn();
  static PiecewiseConvexFn lemma_h_fn(double K);

  Kind kind() const { return kind_; }
  double K() const { return K_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double blend() const { return blend_; }

  D2 eval(double t) const;
  double f(double t) const { return eval(t).f; }
  double df(double t) const { return eval(t).d1; }
  double ddf(double t) const { return eval(t).d2; }

  // Grid validators used by the pipeline contracts.
  bool increasing_on(double lo, double hi, double step, double tol = 0.0) const;
  bool convex_on(double lo, double hi, double step, double tol = 0.0) const;

  nlohmann::ordered_json to_json() const;
  static PiecewiseConvexFn from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::SlopeTable;
  double K_ = 0.0;
  std::vector<double> slopes_;
  double blend_ = 0.1;
  // accumulated values of the integrated slope at the knots
  std::vector<double> knot_values_;

  void build_knot_values();
  D2 eval_slope_table(double t) const;
};

// Doubling search for the smallest power-of-two K such that h_K' >= 0 and
// h_K'' >= 0 at every grid point of [-T, 10]. chi_piece/alpha_piece are the
// cutoff pieces entering h (normally chi_fn() and alpha_fn()).
double choose_K(const PiecewiseConvexFn& chi_piece, const PiecewiseConvexFn& alpha_piece, double T,
                double grid_step = 0.05, double K_max = 1099511627776.0 /* 2^40 */);

}  // namespace pshglue
