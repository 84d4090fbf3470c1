#include "pshglue/psh.hpp"

#include <cmath>

namespace pshglue {

namespace {

nlohmann::ordered_json point_json(const CPoint& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < p.z.size(); ++i) arr.push_back({p.z[i].real(), p.z[i].imag()});
  return arr;
}

}  // namespace

nlohmann::ordered_json MarginReport::to_json() const {
  nlohmann::ordered_json j;
  j["sample_count"] = sample_count;
  j["min_margin"] = min_margin;
  j["worst_point"] = point_json(worst_point);
  j["pass"] = pass;
  j["tol_effective"] = tol_effective;
  j["max_levi_norm"] = max_levi_norm;
  return j;
}

MarginReport check_psh_at(const FieldExpr& expr, const std::vector<CPoint>& pts, double tol) {
  if (pts.empty()) throw EmptyDomain("check_psh: no sample points");
  MarginReport r;
  double worst_norm = 0.0;
  bool first = true;
  for (const CPoint& p : pts) {
    const Jet2 j = expr.jet(p);
    const double norm = inf_norm(j.levi);
    r.max_levi_norm = std::max(r.max_levi_norm, norm);
    const double margin = min_eig_hermitian(j.levi);
    if (first || margin < r.min_margin) {
      first = false;
      r.min_margin = margin;
      r.worst_point = p;
      worst_norm = norm;
    }
  }
  r.sample_count = static_cast<long>(pts.size());
  r.tol_effective = tol * (1.0 + worst_norm);
  r.pass = r.min_margin >= -r.tol_effective;
  return r;
}

MarginReport check_psh(const FieldExpr& expr, const DomainSpec& d, double tol,
                       const SampleOptions& samples) {
  return check_psh_at(expr, sample_domain(d, samples), tol);
}

std::vector<double> default_shrink_schedule(int levels) {
  std::vector<double> s;
  for (int k = 1; k <= levels; ++k) s.push_back(std::exp(-2.0 * k));
  return s;
}

nlohmann::ordered_json BoundScanResult::to_json() const {
  nlohmann::ordered_json j;
  j["inf_est"] = inf_est;
  j["sup_est"] = sup_est;
  j["unbounded_below"] = unbounded_below;
  j["level_min"] = level_min;
  j["level_max"] = level_max;
  return j;
}

BoundScanResult bound_scan(const FieldExpr& expr, const DomainSpec& d,
                           const std::vector<double>& shrink_schedule,
                           const SampleOptions& samples) {
  if (shrink_schedule.size() < 4) throw ValidationError("bound_scan: schedule needs >= 4 levels");
  for (std::size_t i = 0; i + 1 < shrink_schedule.size(); ++i)
    if (!(shrink_schedule[i] > shrink_schedule[i + 1]))
      throw ValidationError("bound_scan: schedule must strictly decrease");

  BoundScanResult r;
  r.inf_est = std::numeric_limits<double>::infinity();
  r.sup_est = -std::numeric_limits<double>::infinity();

  std::uint64_t level_seed = samples.seed;
  for (double delta : shrink_schedule) {
    SampleOptions o = samples;
    o.delta = delta;
    o.seed = ++level_seed;
    o.near_fraction = d.exceptional.is_empty() ? 0.0 : 0.5;
    const std::vector<CPoint> pts = sample_domain(d, o);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const CPoint& p : pts) {
      const double v = expr.value(p);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.level_min.push_back(lo);
    r.level_max.push_back(hi);
    r.inf_est = std::min(r.inf_est, lo);
    r.sup_est = std::max(r.sup_est, hi);
  }

  const std::size_t K = r.level_min.size();
  const double m3 = r.level_min[K - 4], m2 = r.level_min[K - 3], m1 = r.level_min[K - 2],
               m0 = r.level_min[K - 1];
  const bool strictly_down = m0 < m1 && m1 < m2 && m2 < m3;
  r.unbounded_below = strictly_down && (m3 - m0 >= 1.0) && m0 < 0.0;
  return r;
}

}  // namespace pshglue
