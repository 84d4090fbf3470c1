#pragma once

// Test-only oracles, independent of the implementation paths they check:
// closed-form eigenvalue roots, closed-form metric densities, 1-D central
// differences, and the seeded random generators used by property tests.

#include <cmath>
#include <functional>
#include <vector>

#include "pshglue/domain.hpp"
#include "pshglue/expr.hpp"
#include "pshglue/types.hpp"

namespace oracles {

using namespace pshglue;

// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::vector<double> herm2_eigs(const CMatrix& a) {
  const double p = a(0, 0).real(), q = a(1, 1).real();
  const double m = 0.5 * (p + q), d = 0.5 * (p - q);
  const double r = std::sqrt(d * d + std::norm(a(0, 1)));
  return {m - r, m + r};
}

// Eigenvalues of a 3x3 Hermitian matrix by the trigonometric cubic formula.
inline std::vector<double> herm3_eigs(const CMatrix& a) {
  const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
  const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
  const double p2 = (a(0, 0).real() - q) * (a(0, 0).real() - q) +
                    (a(1, 1).real() - q) * (a(1, 1).real() - q) +
                    (a(2, 2).real() - q) * (a(2, 2).real() - q) + 2.0 * p1;
  if (p2 <= 1e-300) return {q, q, q};
  const double p = std::sqrt(p2 / 6.0);
  CMatrix b = (a - q * CMatrix::Identity(3, 3)) / p;
  double detb = (b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                 b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                 b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0)))
                    .real();
  double r = detb / 2.0;
  r = std::min(1.0, std::max(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::vector<double> v{e1, e2, e3};
  std::sort(v.begin(), v.end());
  return v;
}

inline CMatrix random_hermitian(int n, Uniform01& rng, double scale = 2.0) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = Complex(scale * (2.0 * rng.next() - 1.0), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex v(scale * (2.0 * rng.next() - 1.0), scale * (2.0 * rng.next() - 1.0));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

// Central differences for one-real-variable functions (checks the closed-form
// derivatives of the cutoff pieces).
inline double fd1(const std::function<double(double)>& f, double t, double h = 1e-5) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}
inline double fd2(const std::function<double(double)>& f, double t, double h = 1e-4) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

// Closed-form Levi density of the punctured-disk potential -log(-log|z|^2):
// 1 / (|z|^2 log^2 |z|^2).
inline double poincare_density(double r) {
  const double lg = std::log(r * r);
  return 1.0 / (r * r * lg * lg);
}

// Closed-form truncated radial length under the density above, from radius a
// to radius b (a > b): (1/2) log(log(1/b) / log(1/a)).
inline double poincare_radial_length(double a, double b) {
  return 0.5 * std::log(std::log(1.0 / b) / std::log(1.0 / a));
}

// Random expression trees of bounded depth over the full atom set, paired
// with admissible evaluation points. Rejection keeps magnitudes inside the
// range where second-order central differences resolve 1e-6 relative error.
class TreeGen {
 public:
  TreeGen(std::uint64_t seed, int dim) : rng_(seed), dim_(dim) {}

  FieldExpr tree(int depth) { return gen(depth); }

  CPoint point() {
    CVector z(dim_);
    for (int i = 0; i < dim_; ++i) {
      const double re = pick_coord();
      const double im = pick_coord();
      z[i] = Complex(re, im);
    }
    return CPoint(z);
  }

  Uniform01& rng() { return rng_; }

 private:
  double uni(double lo, double hi) { return lo + (hi - lo) * rng_.next(); }

  double pick_coord() {
    const double mag = uni(0.2, 1.0);
    return rng_.next() < 0.5 ? -mag : mag;
  }

  HoloPoly poly() {
    // constant term bounded away from zero keeps log atoms off their locus
    HoloPoly p = HoloPoly::constant(Complex(uni(0.6, 1.8) * (rng_.next() < 0.5 ? -1 : 1),
                                            uni(-0.5, 0.5)),
                                    dim_);
    const int extra = 1 + static_cast<int>(rng_.next() * 2.0);
    for (int k = 0; k < extra; ++k) {
      HoloPoly mono = HoloPoly::coordinate(static_cast<int>(rng_.next() * dim_) % dim_, dim_);
      if (rng_.next() < 0.4) {
        mono = mono * HoloPoly::coordinate(static_cast<int>(rng_.next() * dim_) % dim_, dim_);
      }
      p = p + mono.scaled(Complex(uni(-0.8, 0.8), uni(-0.8, 0.8)));
    }
    return p;
  }

  FieldExpr leaf() {
    const double u = rng_.next();
    if (u < 0.25) return constant(uni(-2.0, 2.0));
    if (u < 0.70) return mod_sq(poly());
    return log_mod_sq(poly());
  }

  FieldExpr gen(int depth) {
    if (depth <= 0) return leaf();
    const double u = rng_.next();
    if (u < 0.18) return leaf();
    if (u < 0.40) return affine(uni(0.3, 1.5), uni(-1.0, 1.0), gen(depth - 1));
    if (u < 0.62) {
      std::vector<FieldExpr> cs;
      const int n = 2 + (rng_.next() < 0.4 ? 1 : 0);
      for (int i = 0; i < n; ++i) cs.push_back(gen(depth - 1));
      return sum(std::move(cs));
    }
    if (u < 0.82) return product(gen(depth - 1), gen(depth - 1));
    if (u < 0.92) return real_comp(Smooth1::square(), gen(depth - 1));
    // keep the exponent small so exp stays in a differentiable-by-stencil range
    return real_comp(Smooth1::exponential(), affine(0.2, 0.0, gen(depth - 1)));
  }

  Uniform01 rng_;
  int dim_;
};

inline double jet_rel_error(const Jet2& got, const Jet2& want) {
  const double ev = std::abs(got.value - want.value) / (1.0 + std::abs(want.value));
  const double eg = inf_norm(CVector(got.grad - want.grad)) / (1.0 + inf_norm(want.grad));
  const double el = inf_norm(CMatrix(got.levi - want.levi)) / (1.0 + inf_norm(want.levi));
  return std::max({ev, eg, el});
}

}  // namespace oracles
