#include "pshglue/curves.hpp"

#include <algorithm>
#include <cmath>

#include "pshglue/quadrature.hpp"

namespace pshglue {

CurveSpec CurveSpec::segment(CVector from, CVector to, Target target, std::string name) {
  CurveSpec c;
  c.kind = Kind::Segment;
  c.target = target;
  c.start = std::move(from);
  c.end_or_dir = std::move(to);
  c.name = std::move(name);
  if (c.start.size() != c.end_or_dir.size())
    throw DimensionMismatch("CurveSpec: endpoints have different dimensions");
  return c;
}

CurveSpec CurveSpec::ray(CVector from, CVector dir, std::string name) {
  CurveSpec c;
  c.kind = Kind::Ray;
  c.target = Target::Infinity;
  c.start = std::move(from);
  c.end_or_dir = std::move(dir);
  c.name = std::move(name);
  if (c.start.size() != c.end_or_dir.size())
    throw DimensionMismatch("CurveSpec: direction dimension mismatch");
  if (c.end_or_dir.norm() == 0.0) throw ValidationError("CurveSpec: ray needs a nonzero direction");
  return c;
}

CVector CurveSpec::at(double t) const {
  if (kind == Kind::Segment) return start + t * (end_or_dir - start);
  return start + (t / (1.0 - t)) * end_or_dir;
}

CVector CurveSpec::velocity(double t) const {
  if (kind == Kind::Segment) return end_or_dir - start;
  const double s = 1.0 - t;
  return end_or_dir / (s * s);
}

nlohmann::ordered_json CurveSpec::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["kind"] = kind == Kind::Segment ? "segment" : "ray";
  auto pt = [](const CVector& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
    return arr;
  };
  j["start"] = pt(start);
  j[kind == Kind::Segment ? "end" : "dir"] = pt(end_or_dir);
  switch (target) {
    case Target::ExceptionalPoint:
      j["target"] = "exceptional";
      break;
    case Target::Boundary:
      j["target"] = "boundary";
      break;
    case Target::Infinity:
      j["target"] = "infinity";
      break;
  }
  return j;
}

CurveSpec CurveSpec::from_json(const nlohmann::json& j) {
  auto pt = [](const nlohmann::json& arr) {
    CVector v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
    return v;
  };
  const std::string kind = j.value("kind", "segment");
  const std::string target = j.at("target").get<std::string>();
  CurveSpec::Target tg;
  if (target == "exceptional")
    tg = Target::ExceptionalPoint;
  else if (target == "boundary")
    tg = Target::Boundary;
  else if (target == "infinity")
    tg = Target::Infinity;
  else
    throw ParseError("CurveSpec: unknown target '" + target + "'");

  if (kind == "segment") {
    CurveSpec c = segment(pt(j.at("start")), pt(j.at("end")), tg, j.value("name", std::string()));
    return c;
  }
  if (kind == "ray") {
    if (tg != Target::Infinity) throw ValidationError("CurveSpec: rays must target infinity");
    return ray(pt(j.at("start")), pt(j.at("dir")), j.value("name", std::string()));
  }
  throw ParseError("CurveSpec: unknown kind '" + kind + "'");
}

MetricField metric_of(const FieldExpr& potential) {
  MetricField m;
  m.dim = potential.dim();
  m.at = [potential](const CVector& z) { return potential.jet(CPoint(z)).levi; };
  return m;
}

MetricField scaled_metric(const MetricField& m, double a) {
  MetricField s;
  s.dim = m.dim;
  auto inner = m.at;
  s.at = [inner, a](const CVector& z) { return CMatrix(a * inner(z)); };
  return s;
}

double curve_length(const MetricField& metric, const CurveSpec& curve, double t0, double t1,
                    double tol) {
  if (!(0.0 <= t0 && t0 < t1 && t1 < 1.0))
    throw ValidationError("curve_length: need 0 <= t0 < t1 < 1");
  auto speed = [&](double t) {
    const CVector z = curve.at(t);
    const CVector v = curve.velocity(t);
    const CMatrix m = metric.at(z);
    const double q = (v.adjoint() * m * v)(0, 0).real();
    const double scale = (1.0 + inf_norm(m)) * v.squaredNorm();
    if (q < -1e-9 * scale)
      throw NegativeSpeed("curve_length: metric form negative at t=" + std::to_string(t));
    return std::sqrt(std::max(q, 0.0));
  };
  return adaptive_simpson(speed, t0, t1, tol);
}

std::vector<double> decade_schedule(int count) {
  std::vector<double> s;
  s.reserve(count);
  for (int k = 1; k <= count; ++k) s.push_back(1.0 - std::pow(10.0, -k));
  return s;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (my + f.slope * (x[i] - mx));
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  return f;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DivergenceVerdict classify_divergence(const MetricField& metric, const CurveSpec& curve,
                                      const std::vector<double>& schedule,
                                      const ClassifyOptions& opts) {
  if (schedule.size() < 6) throw ValidationError("classify_divergence: need at least 6 cutoffs");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] < schedule[i + 1]))
      throw ValidationError("classify_divergence: schedule must be strictly increasing");
  if (!(schedule.front() > 0.0 && schedule.back() < 1.0))
    throw ValidationError("classify_divergence: cutoffs must lie in (0, 1)");

  DivergenceVerdict verdict;
  std::vector<double> lengths;
  double acc = 0.0, prev_t = 0.0;
  for (double t : schedule) {
    acc += curve_length(metric, curve, prev_t, t, opts.quad_tol);
    prev_t = t;
    lengths.push_back(acc);
    verdict.truncated_lengths.emplace_back(t, acc);
  }

  const std::size_t K = lengths.size();
  std::vector<double> inc(K - 1);
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < K; ++i) {
    inc[i] = lengths[i + 1] - lengths[i];
    if (inc[i] < -(2.0 * opts.quad_tol + 1e-12 * (1.0 + lengths[i]))) monotone = false;
  }

  const double last_inc = inc.back();
  if (std::abs(last_inc) <= opts.finite_tol * (1.0 + std::abs(lengths.back()))) {
    verdict.kind = DivergenceVerdict::Kind::Finite;
    verdict.length = lengths.back();
    return verdict;
  }

  if (!monotone || last_inc < opts.growth_floor) {
    verdict.kind = DivergenceVerdict::Kind::Inconclusive;
    return verdict;
  }

  // tail increment ratios: geometric decay means the sum is saturating
  const std::size_t tail_start = (K - 1) / 2;
  std::vector<double> ratios;
  for (std::size_t i = tail_start; i + 1 < K - 1; ++i) {
    if (inc[i] > 0.0) ratios.push_back(inc[i + 1] / inc[i]);
  }
  if (ratios.empty() || median(ratios) <= opts.saturation_ratio) {
    verdict.kind = DivergenceVerdict::Kind::Inconclusive;
    return verdict;
  }

  verdict.kind = DivergenceVerdict::Kind::Divergent;

  if (median(ratios) >= opts.power_ratio) {
    verdict.rate = RateLabel::Power;
    return verdict;
  }

  // rate label from tail fits against log(1/(1-t)) and log log(1/(1-t))
  std::vector<double> xs_log, xs_loglog, ys;
  for (std::size_t i = tail_start; i < K; ++i) {
    const double L = std::log(1.0 / (1.0 - schedule[i]));
    xs_log.push_back(L);
    xs_loglog.push_back(std::log(L));
    ys.push_back(lengths[i]);
  }
  const LineFit f_log = fit_line(xs_log, ys);
  const LineFit f_loglog = fit_line(xs_loglog, ys);
  const double range = lengths.back() - lengths.front();
  const double budget = opts.fit_residual_frac * std::max(range, 1e-12);
  const bool log_ok = f_log.rms <= budget && f_log.slope > 0.0;
  const bool loglog_ok = f_loglog.rms <= budget && f_loglog.slope > 0.0;
  if (log_ok && (!loglog_ok || f_log.rms <= f_loglog.rms))
    verdict.rate = RateLabel::Log;
  else if (loglog_ok)
    verdict.rate = RateLabel::LogLog;
  else
    verdict.rate = RateLabel::Unknown;
  return verdict;
}

nlohmann::ordered_json DivergenceVerdict::to_json() const {
  nlohmann::ordered_json j;
  switch (kind) {
    case Kind::Finite:
      j["kind"] = "finite";
      j["length"] = length;
      break;
    case Kind::Divergent: {
      j["kind"] = "divergent";
      const char* label = "unknown";
      if (rate == RateLabel::Log) label = "log";
      if (rate == RateLabel::LogLog) label = "loglog";
      if (rate == RateLabel::Power) label = "power";
      j["rate"] = label;
      break;
    }
    case Kind::Inconclusive:
      j["kind"] = "inconclusive";
      break;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [t, l] : truncated_lengths) rows.push_back({t, l});
  j["truncated_lengths"] = std::move(rows);
  return j;
}

}  // namespace pshglue
