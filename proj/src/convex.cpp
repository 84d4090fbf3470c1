#include "pshglue/convex.hpp"

#include <cmath>
#include <unordered_map>

#include "pshglue/quadrature.hpp"

namespace pshglue {

D2 flat_exp(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  const double b = std::exp(-1.0 / t);
  const double t2 = t * t;
  return {b, b / t2, b * (1.0 - 2.0 * t) / (t2 * t2)};
}

D2 smooth_rise(double u) {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  const D2 n = flat_exp(u);
  const D2 m = flat_exp(1.0 - u);
  const double D = n.f + m.f;
  const double D1 = n.d1 - m.d1;
  const double D2v = n.d2 + m.d2;
  const double S = n.f / D;
  const double num1 = n.d1 * D - n.f * D1;
  const double S1 = num1 / (D * D);
  const double S2 = (n.d2 * D - n.f * D2v) / (D * D) - 2.0 * D1 * num1 / (D * D * D);
  return {S, S1, S2};
}

D2 chi(double t) {
  const D2 s = smooth_rise(1.0 - t);
  return {s.f, -s.d1, s.d2};
}

D2 beta(double t) { return flat_exp(t + 4.0); }

namespace {

constexpr double kAlphaTol = 1e-10;

std::pair<double, double> alpha_pair_uncached(double t) {
  if (t <= -4.0) return {0.0, 0.0};
  const double a0 = adaptive_simpson([t](double w) { return (t - w) * beta(w).f; }, -4.0, t, kAlphaTol);
  const double a1 = adaptive_simpson([](double w) { return beta(w).f; }, -4.0, t, kAlphaTol);
  return {a0, a1};
}

std::pair<double, double> alpha_pair(double t) {
  thread_local std::unordered_map<double, std::pair<double, double>> cache;
  if (cache.size() > 500000) cache.clear();
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  auto v = alpha_pair_uncached(t);
  cache.emplace(t, v);
  return v;
}

// 1/log(-t) and its first two derivatives; valid for t < -1.
D2 recip_log_neg(double t) {
  if (!(t < -1.0)) throw SingularPoint("1/log(-t) evaluated at t >= -1");
  const double lg = std::log(-t);
  const double L = 1.0 / lg;
  const double L1 = -1.0 / (t * lg * lg);
  const double L2 = (1.0 / (t * t)) * (1.0 / (lg * lg)) * (1.0 + 2.0 / lg);
  return {L, L1, L2};
}

}  // namespace

D2 alpha(double t) {
  if (t <= -4.0) return {0.0, 0.0, 0.0};
  auto [a0, a1] = alpha_pair(t);
  return {a0, a1, beta(t).f};
}

D2 lemma_h(double K, double t) {
  const D2 c = chi(t + 3.0);
  D2 h{0.0, 0.0, 0.0};
  if (c.f != 0.0 || c.d1 != 0.0 || c.d2 != 0.0) {
    // chi(t+3) > 0 forces t < -2, so log(-t) > log 2 and the factor is finite
    const D2 L = recip_log_neg(t);
    h.f = c.f * L.f;
    h.d1 = c.d1 * L.f + c.f * L.d1;
    h.d2 = c.d2 * L.f + 2.0 * c.d1 * L.d1 + c.f * L.d2;
  }
  const D2 a = alpha(t);
  h.f += K * a.f;
  h.d1 += K * a.d1;
  h.d2 += K * a.d2;
  return h;
}

PiecewiseConvexFn PiecewiseConvexFn::from_shell_slopes(std::vector<double> slopes, double blend) {
  if (slopes.empty()) throw ValidationError("PiecewiseConvexFn: empty slope table");
  if (!(blend > 0.0) || blend > 0.4) throw ValidationError("PiecewiseConvexFn: blend must lie in (0, 0.4]");
  PiecewiseConvexFn r;
  r.kind_ = Kind::SlopeTable;
  r.blend_ = blend;
  double running = 0.0;
  for (double& s : slopes) {
    running = std::max(running, std::max(s, 0.0));
    s = running;
  }
  r.slopes_ = std::move(slopes);
  r.build_knot_values();
  return r;
}

PiecewiseConvexFn PiecewiseConvexFn::identity_slope(int intervals) {
  return from_shell_slopes(std::vector<double>(std::max(intervals, 1), 1.0));
}

PiecewiseConvexFn PiecewiseConvexFn::chi_fn() {
  PiecewiseConvexFn f;
  f.kind_ = Kind::Chi;
  return f;
}

PiecewiseConvexFn PiecewiseConvexFn::alpha_fn() {
  PiecewiseConvexFn f;
  f.kind_ = Kind::Alpha;
  return f;
}

PiecewiseConvexFn PiecewiseConvexFn::lemma_h_fn(double K) {
  if (!(K > 0.0)) throw ValidationError("PiecewiseConvexFn: lemma h needs K > 0");
  PiecewiseConvexFn f;
  f.kind_ = Kind::LemmaH;
  f.K_ = K;
  return f;
}

void PiecewiseConvexFn::build_knot_values() {
  const std::size_t m = slopes_.size();
  const double W = 2.0 * blend_;
  knot_values_.assign(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double seg = slopes_[k];
    if (k + 1 < m) {
      // flat to the ramp start, then the linear ramp up to the next slope
      seg = slopes_[k] * (1.0 - W) + 0.5 * (slopes_[k] + slopes_[k + 1]) * W;
    }
    knot_values_[k + 1] = knot_values_[k] + seg;
  }
}

D2 PiecewiseConvexFn::eval_slope_table(double t) const {
  const std::size_t m = slopes_.size();
  const double W = 2.0 * blend_;
  if (t <= 0.0) return {slopes_[0] * t, slopes_[0], 0.0};
  if (t >= static_cast<double>(m))
    return {knot_values_[m] + slopes_[m - 1] * (t - static_cast<double>(m)), slopes_[m - 1], 0.0};
  const std::size_t k = std::min(static_cast<std::size_t>(t), m - 1);
  const double local = t - static_cast<double>(k);
  const bool has_ramp = (k + 1 < m);
  if (!has_ramp || local <= 1.0 - W)
    return {knot_values_[k] + slopes_[k] * local, slopes_[k], 0.0};
  const double tau = local - (1.0 - W);
  const double ds = slopes_[k + 1] - slopes_[k];
  const double f = knot_values_[k] + slopes_[k] * local + 0.5 * ds * tau * tau / W;
  return {f, slopes_[k] + ds * tau / W, ds / W};
}

D2 PiecewiseConvexFn::eval(double t) const {
  switch (kind_) {
    case Kind::SlopeTable:
      return eval_slope_table(t);
    case Kind::Chi:
      return chi(t);
    case Kind::Alpha:
      return alpha(t);
    case Kind::LemmaH:
      return lemma_h(K_, t);
  }
  return {};
}

bool PiecewiseConvexFn::increasing_on(double lo, double hi, double step, double tol) const {
  for (double t = lo; t <= hi + 0.5 * step; t += step)
    if (eval(t).d1 < -tol) return false;
  return true;
}

bool PiecewiseConvexFn::convex_on(double lo, double hi, double step, double tol) const {
  for (double t = lo; t <= hi + 0.5 * step; t += step)
    if (eval(t).d2 < -tol) return false;
  return true;
}

nlohmann::ordered_json PiecewiseConvexFn::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case Kind::SlopeTable:
      j["kind"] = "slope_table";
      j["slopes"] = slopes_;
      j["blend"] = blend_;
      break;
    case Kind::Chi:
      j["kind"] = "chi";
      break;
    case Kind::Alpha:
      j["kind"] = "alpha";
      break;
    case Kind::LemmaH:
      j["kind"] = "lemma_h";
      j["K"] = K_;
      break;
  }
  return j;
}

PiecewiseConvexFn PiecewiseConvexFn::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "slope_table")
    return from_shell_slopes(j.at("slopes").get<std::vector<double>>(),
                             j.value("blend", 0.1));
  if (kind == "chi") return chi_fn();
  if (kind == "alpha") return alpha_fn();
  if (kind == "lemma_h") return lemma_h_fn(j.at("K").get<double>());
  throw ParseError("PiecewiseConvexFn: unknown kind '" + kind + "'");
}

double choose_K(const PiecewiseConvexFn& chi_piece, const PiecewiseConvexFn& alpha_piece, double T,
                double grid_step, double K_max) {
  if (!(T > 4.0)) throw ValidationError("choose_K: T must exceed 4");
  if (!(grid_step > 0.0)) throw ValidationError("choose_K: grid_step must be positive");

  auto h_ok = [&](double K) {
    const long steps = static_cast<long>(std::ceil((T + 10.0) / grid_step));
    for (long i = 0; i <= steps; ++i) {
      const double t = std::min(-T + static_cast<double>(i) * grid_step, 10.0);
      const D2 c = chi_piece.eval(t + 3.0);
      D2 h{0.0, 0.0, 0.0};
      if (c.f != 0.0 || c.d1 != 0.0 || c.d2 != 0.0) {
        const D2 L = recip_log_neg(t);
        h.f = c.f * L.f;
        h.d1 = c.d1 * L.f + c.f * L.d1;
        h.d2 = c.d2 * L.f + 2.0 * c.d1 * L.d1 + c.f * L.d2;
      }
      const D2 a = alpha_piece.eval(t);
      h.d1 += K * a.d1;
      h.d2 += K * a.d2;
      if (h.d1 < 0.0 || h.d2 < 0.0) return false;
    }
    return true;
  };

  for (double K = 1.0; K <= K_max; K *= 2.0) {
    if (h_ok(K)) return K;
  }
  throw KSearchFailed("choose_K: no K <= K_max makes h increasing and convex on [-T, 10]");
}

}  // namespace pshglue
