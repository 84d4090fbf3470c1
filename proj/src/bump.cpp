#include "pshglue/bump.hpp"

namespace pshglue {

D2 BumpCore::Window::eval(double x) const {
  const double k1 = 1.0 / (inner_lo - outer_lo);
  const double k2 = 1.0 / (outer_hi - inner_hi);
  const D2 lo = smooth_rise((x - outer_lo) * k1);
  const D2 hi = smooth_rise((outer_hi - x) * k2);
  D2 w;
  w.f = lo.f * hi.f;
  w.d1 = lo.d1 * k1 * hi.f - lo.f * hi.d1 * k2;
  w.d2 = lo.d2 * k1 * k1 * hi.f - 2.0 * lo.d1 * k1 * hi.d1 * k2 + lo.f * hi.d2 * k2 * k2;
  return w;
}

BumpCore::BumpCore(Box inner, Box outer) : inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_.dim() != outer_.dim()) throw DimensionMismatch("BumpCore: box dimensions differ");
  if (!(inner_.margin_inside(outer_) > 0.0))
    throw NoMargin("BumpCore: inner box must be strictly inside the outer box");
  const int n = outer_.dim();
  windows_.reserve(2 * n);
  for (int c = 0; c < n; ++c) {
    windows_.push_back(Window{outer_.re_lo[c], inner_.re_lo[c], inner_.re_hi[c], outer_.re_hi[c]});
    windows_.push_back(Window{outer_.im_lo[c], inner_.im_lo[c], inner_.im_hi[c], outer_.im_hi[c]});
  }
}

void BumpCore::eval_windows(const CVector& z, std::vector<D2>& w) const {
  const int n = dim();
  w.resize(2 * n);
  for (int c = 0; c < n; ++c) {
    w[2 * c] = windows_[2 * c].eval(z[c].real());
    w[2 * c + 1] = windows_[2 * c + 1].eval(z[c].imag());
  }
}

double BumpCore::rho_value(const CVector& z) const {
  if (static_cast<int>(z.size()) != dim()) throw DomainViolation("BumpCore: dimension mismatch");
  double v = 1.0;
  for (int c = 0; c < dim(); ++c) {
    const double wx = windows_[2 * c].eval(z[c].real()).f;
    const double wy = windows_[2 * c + 1].eval(z[c].imag()).f;
    v *= wx * wx * wy * wy;
    if (v == 0.0) return 0.0;
  }
  return v;
}

namespace {

// Assembles the Wirtinger jet of a product prod_m F_m(t_m) of one-real-variable
// factors over the 2n real coordinates (x_0, y_0, x_1, y_1, ...).
Jet2 tensor_jet(const std::vector<D2>& F, int n) {
  const int m = 2 * n;
  auto prod_excl = [&](int skip1, int skip2) {
    double p = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == skip1 || i == skip2) continue;
      p *= F[i].f;
    }
    return p;
  };

  double value = 1.0;
  for (int i = 0; i < m; ++i) value *= F[i].f;

  // real partials
  Eigen::ArrayXd d1(m);
  for (int i = 0; i < m; ++i) d1[i] = F[i].d1 * prod_excl(i, -1);
  Eigen::MatrixXd d2(m, m);
  for (int i = 0; i < m; ++i) {
    d2(i, i) = F[i].d2 * prod_excl(i, -1);
    for (int j = i + 1; j < m; ++j) {
      d2(i, j) = F[i].d1 * F[j].d1 * prod_excl(i, j);
      d2(j, i) = d2(i, j);
    }
  }

  Jet2 jet = Jet2::zero(n);
  jet.value = value;
  for (int c = 0; c < n; ++c) jet.grad[c] = 0.5 * Complex(d1[2 * c], -d1[2 * c + 1]);
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) {
      const double re = d2(2 * c, 2 * d) + d2(2 * c + 1, 2 * d + 1);
      const double im = d2(2 * c, 2 * d + 1) - d2(2 * c + 1, 2 * d);
      jet.levi(c, d) = 0.25 * Complex(re, im);
    }
  }
  return jet;
}

}  // namespace

Jet2 BumpCore::rho_jet(const CVector& z) const {
  if (static_cast<int>(z.size()) != dim()) throw DomainViolation("BumpCore: dimension mismatch");
  std::vector<D2> w;
  eval_windows(z, w);
  std::vector<D2> F(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    F[i].f = w[i].f * w[i].f;
    F[i].d1 = 2.0 * w[i].f * w[i].d1;
    F[i].d2 = 2.0 * (w[i].d1 * w[i].d1 + w[i].f * w[i].d2);
  }
  return tensor_jet(F, dim());
}

Jet2 BumpCore::eta_jet(const CVector& z) const {
  if (static_cast<int>(z.size()) != dim()) throw DomainViolation("BumpCore: dimension mismatch");
  std::vector<D2> w;
  eval_windows(z, w);
  return tensor_jet(w, dim());
}

double BumpCore::eta_grad_sup_bound() const {
  // max of smooth_rise' over [0,1]; fixed fine grid, deterministic
  static const double rise_d1_max = [] {
    double m = 0.0;
    for (int i = 0; i <= 4000; ++i) m = std::max(m, smooth_rise(i / 4000.0).d1);
    return m;
  }();
  double sum = 0.0;
  for (int c = 0; c < dim(); ++c) {
    const double bx = rise_d1_max * std::max(1.0 / windows_[2 * c].rise_width_lo(),
                                             1.0 / windows_[2 * c].rise_width_hi());
    const double by = rise_d1_max * std::max(1.0 / windows_[2 * c + 1].rise_width_lo(),
                                             1.0 / windows_[2 * c + 1].rise_width_hi());
    sum += 0.25 * (bx * bx + by * by);
  }
  return std::sqrt(sum);
}

std::shared_ptr<const BumpCore> make_bump_core(const Box& inner, const Box& outer) {
  return std::make_shared<const BumpCore>(inner, outer);
}

}  // namespace pshglue
