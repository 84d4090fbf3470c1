#include "pshglue/domain.hpp"

#include <algorithm>
#include <cmath>

namespace pshglue {

bool Box::contains(const CVector& z, double slack) const {
  if (static_cast<int>(z.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const double x = z[i].real(), y = z[i].imag();
    if (x < re_lo[i] - slack || x > re_hi[i] + slack) return false;
    if (y < im_lo[i] - slack || y > im_hi[i] + slack) return false;
  }
  return true;
}

double Box::margin_inside(const Box& outer) const {
  if (dim() != outer.dim()) throw DimensionMismatch("Box::margin_inside: dimension mismatch");
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim(); ++i) {
    m = std::min(m, re_lo[i] - outer.re_lo[i]);
    m = std::min(m, outer.re_hi[i] - re_hi[i]);
    m = std::min(m, im_lo[i] - outer.im_lo[i]);
    m = std::min(m, outer.im_hi[i] - im_hi[i]);
  }
  return m;
}

Eigen::ArrayXd Box::corner_radius() const {
  Eigen::ArrayXd r(dim());
  for (int i = 0; i < dim(); ++i) {
    const double x = std::max(std::abs(re_lo[i]), std::abs(re_hi[i]));
    const double y = std::max(std::abs(im_lo[i]), std::abs(im_hi[i]));
    r[i] = std::hypot(x, y);
  }
  return r;
}

double Box::max_extent() const {
  double e = 0.0;
  for (int i = 0; i < dim(); ++i) {
    e = std::max(e, re_hi[i] - re_lo[i]);
    e = std::max(e, im_hi[i] - im_lo[i]);
  }
  return e;
}

nlohmann::ordered_json Box::to_json() const {
  nlohmann::ordered_json j;
  auto intervals = [](const Eigen::ArrayXd& lo, const Eigen::ArrayXd& hi) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < lo.size(); ++i) arr.push_back({lo[i], hi[i]});
    return arr;
  };
  j["re"] = intervals(re_lo, re_hi);
  j["im"] = intervals(im_lo, im_hi);
  return j;
}

Box Box::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("Box: expected object with 're' and 'im' interval lists");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
    throw ParseError("Box: 're' and 'im' must be equal-length nonempty arrays");
  const int n = static_cast<int>(re.size());
  Box b;
  b.re_lo.resize(n);
  b.re_hi.resize(n);
  b.im_lo.resize(n);
  b.im_hi.resize(n);
  for (int i = 0; i < n; ++i) {
    if (re[i].size() != 2 || im[i].size() != 2) throw ParseError("Box: interval must be [lo, hi]");
    b.re_lo[i] = re[i][0].get<double>();
    b.re_hi[i] = re[i][1].get<double>();
    b.im_lo[i] = im[i][0].get<double>();
    b.im_hi[i] = im[i][1].get<double>();
    if (!(b.re_lo[i] < b.re_hi[i]) || !(b.im_lo[i] < b.im_hi[i]))
      throw ValidationError("Box: empty interval");
  }
  return b;
}

ExceptionalSet ExceptionalSet::empty() { return ExceptionalSet{}; }

ExceptionalSet ExceptionalSet::points(std::vector<CVector> pts) {
  ExceptionalSet s;
  s.kind_ = Kind::Points;
  s.points_ = std::move(pts);
  if (s.points_.empty()) throw ValidationError("ExceptionalSet::points: empty point list");
  return s;
}

ExceptionalSet ExceptionalSet::zero_set(HoloPoly atom) {
  ExceptionalSet s;
  s.kind_ = Kind::ZeroSet;
  s.atom_ = std::move(atom);
  if (s.atom_.is_zero()) throw ValidationError("ExceptionalSet::zero_set: atom is identically zero");
  return s;
}

double ExceptionalSet::distance_lb(const CVector& z, const Box& box) const {
  switch (kind_) {
    case Kind::Empty:
      return std::numeric_limits<double>::infinity();
    case Kind::Points: {
      double d = std::numeric_limits<double>::infinity();
      for (const CVector& a : points_) d = std::min(d, (z - a).norm());
      return d;
    }
    case Kind::ZeroSet: {
      const double diam = 2.0 * box.max_extent() + 1.0;
      const Eigen::ArrayXd r = box.corner_radius() + diam;
      const double bound = atom_.grad_bound(r);
      const double hv = std::abs(atom_.eval(z));
      if (bound <= 0.0) return std::numeric_limits<double>::infinity();
      return std::min(hv / bound, diam);
    }
  }
  return 0.0;
}

nlohmann::ordered_json ExceptionalSet::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case Kind::Empty:
      j["kind"] = "empty";
      break;
    case Kind::Points: {
      j["kind"] = "points";
      nlohmann::ordered_json pts = nlohmann::ordered_json::array();
      for (const CVector& p : points_) {
        nlohmann::ordered_json pt = nlohmann::ordered_json::array();
        for (Eigen::Index i = 0; i < p.size(); ++i) pt.push_back({p[i].real(), p[i].imag()});
        pts.push_back(pt);
      }
      j["points"] = std::move(pts);
      break;
    }
    case Kind::ZeroSet:
      j["kind"] = "zero_set";
      j["holo"] = atom_.to_json();
      break;
  }
  return j;
}

ExceptionalSet ExceptionalSet::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return empty();
  if (kind == "points") {
    std::vector<CVector> pts;
    for (const auto& jp : j.at("points")) {
      CVector p(jp.size());
      for (std::size_t i = 0; i < jp.size(); ++i)
        p[static_cast<Eigen::Index>(i)] = Complex(jp[i][0].get<double>(), jp[i][1].get<double>());
      pts.push_back(std::move(p));
    }
    return points(std::move(pts));
  }
  if (kind == "zero_set") return zero_set(HoloPoly::from_json(j.at("holo")));
  throw ParseError("ExceptionalSet: unknown kind '" + kind + "'");
}

namespace {

CVector uniform_in_box(const Box& box, Uniform01& rng) {
  CVector z(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    const double x = box.re_lo[i] + rng.next() * (box.re_hi[i] - box.re_lo[i]);
    const double y = box.im_lo[i] + rng.next() * (box.im_hi[i] - box.im_lo[i]);
    z[i] = Complex(x, y);
  }
  return z;
}

// Unit direction in C^n ~ R^{2n} via Box-Muller normals.
CVector random_direction(int dim, Uniform01& rng) {
  CVector v(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      const double u1 = std::max(rng.next(), 1e-300);
      const double u2 = rng.next();
      const double r = std::sqrt(-2.0 * std::log(u1));
      v[i] = Complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    }
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-12);
  return v / std::sqrt(norm2);
}

// One draw in the shell delta <= dist <= 10 delta, inside the box. Point and
// zero-set kinds get direct samplers; returns false when the draw misses the box.
bool shell_draw(const DomainSpec& d, double delta, Uniform01& rng, CVector& out) {
  const auto& A = d.exceptional;
  const double lo = delta, hi = 10.0 * delta;
  switch (A.kind()) {
    case ExceptionalSet::Kind::Empty:
      return false;
    case ExceptionalSet::Kind::Points: {
      const auto& pts = A.point_list();
      const std::size_t pick = static_cast<std::size_t>(rng.next() * static_cast<double>(pts.size())) % pts.size();
      const CVector dir = random_direction(d.box.dim(), rng);
      // log-uniform radius biases draws toward the inner edge of the shell
      const double r = lo * std::exp(rng.next() * std::log(hi / lo));
      out = pts[pick] + r * dir;
      return d.box.contains(out) && d.distance_lb(out) >= delta;
    }
    case ExceptionalSet::Kind::ZeroSet: {
      // Direct sampler for a coordinate-hyperplane atom; rejection otherwise.
      const HoloPoly& h = A.atom();
      int coord = -1;
      if (h.terms().size() == 1 && std::abs(h.terms()[0].coeff) == 1.0) {
        int total = 0;
        for (int i = 0; i < h.dim(); ++i) total += h.terms()[0].powers[i];
        if (total == 1) {
          for (int i = 0; i < h.dim(); ++i)
            if (h.terms()[0].powers[i] == 1) coord = i;
        }
      }
      out = uniform_in_box(d.box, rng);
      if (coord >= 0) {
        const double r = lo * std::exp(rng.next() * std::log(hi / lo));
        const double theta = 2.0 * M_PI * rng.next();
        out[coord] = Complex(r * std::cos(theta), r * std::sin(theta));
        return d.box.contains(out) && d.distance_lb(out) >= delta;
      }
      const double dist = d.distance_lb(out);
      return dist >= lo && dist <= hi;
    }
  }
  return false;
}

}  // namespace

std::vector<CPoint> sample_domain(const DomainSpec& d, const SampleOptions& opts) {
  if (opts.delta <= 0.0) throw ValidationError("sample_domain: delta must be positive");
  if (opts.near_fraction < 0.0 || opts.near_fraction > 1.0)
    throw ValidationError("sample_domain: near_fraction must lie in [0, 1]");

  std::vector<CPoint> pts;
  if (opts.strategy == SampleStrategy::Grid) {
    const int m = opts.count;
    if (m < 1) throw ValidationError("sample_domain: grid count must be >= 1");
    const int n = d.box.dim();
    std::vector<int> idx(2 * n, 0);
    auto axis_value = [&](int axis, int k) {
      const int c = axis / 2;
      const bool real_part = (axis % 2) == 0;
      const double lo = real_part ? d.box.re_lo[c] : d.box.im_lo[c];
      const double hi = real_part ? d.box.re_hi[c] : d.box.im_hi[c];
      // grid points strictly inside the box
      return lo + (hi - lo) * (k + 0.5) / m;
    };
    while (true) {
      CVector z(n);
      for (int c = 0; c < n; ++c)
        z[c] = Complex(axis_value(2 * c, idx[2 * c]), axis_value(2 * c + 1, idx[2 * c + 1]));
      if (d.distance_lb(z) >= opts.delta) pts.emplace_back(z);
      int axis = 0;
      while (axis < 2 * n && ++idx[axis] == m) idx[axis++] = 0;
      if (axis == 2 * n) break;
    }
  } else {
    Uniform01 rng(opts.seed);
    const int near_target = d.exceptional.is_empty()
                                ? 0
                                : static_cast<int>(std::lround(opts.near_fraction * opts.count));
    const long max_tries = 10000L * std::max(opts.count, 1) + 1000L;
    long tries = 0;
    int near_done = 0;
    while (static_cast<int>(pts.size()) < opts.count) {
      if (++tries > max_tries)
        throw EmptyDomain("sample_domain: no admissible points found at delta=" + std::to_string(opts.delta));
      CVector z;
      if (near_done < near_target) {
        if (!shell_draw(d, opts.delta, rng, z)) continue;
        ++near_done;
      } else {
        z = uniform_in_box(d.box, rng);
        if (d.distance_lb(z) < opts.delta) continue;
      }
      pts.emplace_back(std::move(z));
    }
  }
  if (pts.empty()) throw EmptyDomain("sample_domain: empty admissible set");
  return pts;
}

}  // namespace pshglue
