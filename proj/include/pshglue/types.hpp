#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <initializer_list>

#include "pshglue/errors.hpp"

namespace pshglue {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// A point of C^n in ambient coordinates.
struct CPoint {
  CVector z;

  CPoint() = default;
  explicit CPoint(CVector coords) : z(std::move(coords)) {}
  CPoint(std::initializer_list<Complex> coords) : z(CVector(static_cast<Eigen::Index>(coords.size()))) {
    Eigen::Index i = 0;
    for (const Complex& c : coords) z[i++] = c;
  }

  int dim() const { return static_cast<int>(z.size()); }

  bool finite() const {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) return false;
    }
    return true;
  }
};

// Jet of a holomorphic function: value and holomorphic gradient dh/dz_i.
struct HoloJet {
  Complex value;
  CVector grad;
};

// Second-order Wirtinger jet of a real-valued field: value, d/dz gradient
// (the conjugate is the d/dzbar gradient), and the Levi matrix d^2/dz_i dzbar_j.
struct Jet2 {
  double value = 0.0;
  CVector grad;
  CMatrix levi;

  static Jet2 zero(int n) {
    Jet2 j;
    j.value = 0.0;
    j.grad = CVector::Zero(n);
    j.levi = CMatrix::Zero(n, n);
    return j;
  }

  bool all_zero() const {
    return value == 0.0 && grad.isZero(0.0) && levi.isZero(0.0);
  }
};

inline double inf_norm(const CMatrix& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

inline double inf_norm(const CVector& v) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) r = std::max(r, std::abs(v[i]));
  return r;
}

// || M - M^H ||_inf, zero for an exactly Hermitian matrix.
inline double hermitian_residual(const CMatrix& m) {
  return inf_norm(CMatrix(m - m.adjoint()));
}

// Rank-one Hermitian outer product a (conj b)^T, the matrix of da ^ dbar(b).
inline CMatrix outer(const CVector& a, const CVector& b) { return a * b.adjoint(); }

}  // namespace pshglue
