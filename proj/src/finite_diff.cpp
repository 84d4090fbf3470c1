#include "pshglue/finite_diff.hpp"

#include <cmath>

namespace pshglue {

namespace {

// Jet from plain central differences at one step size.
Jet2 stencil_jet(const FieldExpr& expr, const CVector& z0, double h) {
  const int n = static_cast<int>(z0.size());
  const int m = 2 * n;

  auto shifted = [&](int axis, double offset) {
    CVector z = z0;
    const int c = axis / 2;
    if (axis % 2 == 0)
      z[c] += Complex(offset, 0.0);
    else
      z[c] += Complex(0.0, offset);
    return CPoint(z);
  };

  const double f0 = expr.value(CPoint(z0));

  Eigen::ArrayXd d1(m);
  Eigen::MatrixXd d2(m, m);
  Eigen::ArrayXd fp(m), fn(m);
  for (int a = 0; a < m; ++a) {
    fp[a] = expr.value(shifted(a, h));
    fn[a] = expr.value(shifted(a, -h));
    d1[a] = (fp[a] - fn[a]) / (2.0 * h);
    d2(a, a) = (fp[a] - 2.0 * f0 + fn[a]) / (h * h);
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      CVector zpp = z0, zpn = z0, znp = z0, znn = z0;
      auto bump = [&](CVector& z, int axis, double off) {
        const int c = axis / 2;
        if (axis % 2 == 0)
          z[c] += Complex(off, 0.0);
        else
          z[c] += Complex(0.0, off);
      };
      bump(zpp, a, h);
      bump(zpp, b, h);
      bump(zpn, a, h);
      bump(zpn, b, -h);
      bump(znp, a, -h);
      bump(znp, b, h);
      bump(znn, a, -h);
      bump(znn, b, -h);
      const double v = (expr.value(CPoint(zpp)) - expr.value(CPoint(zpn)) -
                        expr.value(CPoint(znp)) + expr.value(CPoint(znn))) /
                       (4.0 * h * h);
      d2(a, b) = v;
      d2(b, a) = v;
    }
  }

  Jet2 jet = Jet2::zero(n);
  jet.value = f0;
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

double jet_distance(const Jet2& a, const Jet2& b) {
  double d = std::abs(a.value - b.value);
  d = std::max(d, inf_norm(CVector(a.grad - b.grad)));
  d = std::max(d, inf_norm(CMatrix(a.levi - b.levi)));
  return d;
}

double jet_scale(const Jet2& a) {
  return 1.0 + std::max({std::abs(a.value), inf_norm(a.grad), inf_norm(a.levi)});
}

}  // namespace

Jet2 finite_diff_jet(const FieldExpr& expr, const CPoint& p, double step, double disagreement_tol) {
  if (!(step > 0.0)) throw ValidationError("finite_diff_jet: step must be positive");
  const Jet2 coarse = stencil_jet(expr, p.z, step);
  const Jet2 fine = stencil_jet(expr, p.z, 0.5 * step);

  // one Richardson level for O(h^2) central differences
  Jet2 jet = Jet2::zero(p.dim());
  jet.value = fine.value;
  jet.grad = (4.0 * fine.grad - coarse.grad) / 3.0;
  jet.levi = (4.0 * fine.levi - coarse.levi) / 3.0;

  const double disagreement = jet_distance(fine, coarse) / jet_scale(jet);
  if (disagreement > disagreement_tol)
    throw StepTooLarge("finite_diff_jet: Richardson levels disagree by " +
                       std::to_string(disagreement));
  return jet;
}

}  // namespace pshglue
