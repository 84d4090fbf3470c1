#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pshglue/expr.hpp"
#include "pshglue/types.hpp"

namespace pshglue {

// Parametric probe curve on [0, 1) escaping toward a point of A, toward the
// domain boundary, or to infinity. Segments reach their endpoint as t -> 1;
// rays run start + (t/(1-t)) dir.
struct CurveSpec {
  enum class Kind { Segment, Ray };
  enum class Target { ExceptionalPoint, Boundary, Infinity };

  Kind kind = Kind::Segment;
  Target target = Target::ExceptionalPoint;
  CVector start;
  CVector end_or_dir;
  std::string name;

  static CurveSpec segment(CVector from, CVector to, Target target, std::string name = {});
  static CurveSpec ray(CVector from, CVector dir, std::string name = {});

  int dim() const { return static_cast<int>(start.size()); }
  CVector at(double t) const;
  CVector velocity(double t) const;

  nlohmann::ordered_json to_json() const;
  static CurveSpec from_json(const nlohmann::json& j);
};

// Pointwise metric coefficient field p -> Hermitian matrix.
struct MetricField {
  int dim = 0;
  std::function<CMatrix(const CVector&)> at;
};

// ds^2 coefficient matrix taken to be exactly the Levi matrix of the potential.
MetricField metric_of(const FieldExpr& potential);
MetricField scaled_metric(const MetricField& m, double a);

// Length of the curve over [t0, t1] under the metric: adaptive quadrature of
// sqrt(gamma'^H M gamma') to absolute tolerance tol. Throws NegativeSpeed when
// the quadratic form is negative beyond rounding at a node.
double curve_length(const MetricField& metric, const CurveSpec& curve, double t0, double t1,
                    double tol);

enum class RateLabel { Log, LogLog, Power, Unknown };

struct DivergenceVerdict {
  enum class Kind { Finite, Divergent, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double length = 0.0;  // meaningful for Finite
  RateLabel rate = RateLabel::Unknown;
  std::vector<std::pair<double, double>> truncated_lengths;  // (cutoff t_k, length)

  nlohmann::ordered_json to_json() const;
};

struct ClassifyOptions {
  double finite_tol = 1e-6;      // Cauchy test on the last increment, relative
  double quad_tol = 1e-9;        // quadrature tolerance per schedule segment
  double growth_floor = 1e-5;    // smallest tail increment still counted as growth
  double saturation_ratio = 0.5; // median tail increment ratio at/below this is saturation
  double power_ratio = 1.3;      // median tail ratio at/above this means growing increments
  double fit_residual_frac = 0.1;
};

// Cutoffs 1 - 10^{-k}, k = 1..count: one schedule decade per step.
std::vector<double> decade_schedule(int count = 8);

// Truncated-length divergence classification along the schedule.
//   Finite: the last increment is below finite_tol (relative).
//   Divergent: lengths monotone, tail increments do not decay geometrically
//   (no saturation), rate labelled by least-squares fits of the tail against
//   a + b log(1/(1-t)) and a + b log log(1/(1-t)).
//   Inconclusive otherwise; misclassification risk is reported, not hidden.
DivergenceVerdict classify_divergence(const MetricField& metric, const CurveSpec& curve,
                                      const std::vector<double>& schedule,
                                      const ClassifyOptions& opts = {});

}  // namespace pshglue
