#pragma once

#include <vector>

#include "json.hpp"
#include "pshglue/domain.hpp"
#include "pshglue/expr.hpp"
#include "pshglue/hermitian.hpp"

namespace pshglue {

// Sampled plurisubharmonicity evidence: the least Levi eigenvalue seen over
// the sample set. pass <=> min_margin >= -tol_effective, where tol_effective
// scales the requested tolerance by 1 + ||Levi||_inf at the worst point.
struct MarginReport {
  long sample_count = 0;
  double min_margin = 0.0;
  CPoint worst_point;
  bool pass = false;
  double tol_effective = 0.0;
  double max_levi_norm = 0.0;

  nlohmann::ordered_json to_json() const;
};

MarginReport check_psh(const FieldExpr& expr, const DomainSpec& d, double tol,
                       const SampleOptions& samples);

// Pre-drawn-points variant used by the pipeline so several checks can share
// one deterministic sample batch.
MarginReport check_psh_at(const FieldExpr& expr, const std::vector<CPoint>& pts, double tol);

struct BoundScanResult {
  double inf_est = 0.0;
  double sup_est = 0.0;
  bool unbounded_below = false;
  std::vector<double> level_min;  // per shrink level
  std::vector<double> level_max;

  nlohmann::ordered_json to_json() const;
};

// Samples the field at each guard distance of the shrink schedule and tracks
// per-level extrema. The unbounded flag is a heuristic blow-down trend:
// strictly decreasing minima over the last three transitions, a cumulative
// drop of at least 1 across them, and a negative final minimum.
BoundScanResult bound_scan(const FieldExpr& expr, const DomainSpec& d,
                           const std::vector<double>& shrink_schedule, const SampleOptions& samples);

// Default shrink schedule delta_k = e^{-2k}, k = 1..levels.
std::vector<double> default_shrink_schedule(int levels = 4);

}  // namespace pshglue
