#include "pshglue/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pshglue/errors.hpp"

namespace pshglue {

HermForm::HermForm(CMatrix m, double herm_tol) : mat(std::move(m)) {
  if (mat.rows() != mat.cols()) throw NotHermitian("HermForm: matrix is not square");
  if (mat.rows() < 1 || mat.rows() > 8) throw DimensionMismatch("HermForm: dimension must be in [1, 8]");
  const double scale = 1.0 + inf_norm(mat);
  if (hermitian_residual(mat) > herm_tol * scale)
    throw NotHermitian("HermForm: matrix is not Hermitian within tolerance");
  // symmetrize so downstream rotations see an exactly Hermitian matrix
  mat = 0.5 * (mat + mat.adjoint().eval());
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

EigDecomposition jacobi_eig(CMatrix a, bool want_vectors) {
  const Eigen::Index n = a.rows();
  CMatrix v = CMatrix::Identity(n, n);
  if (n == 1) {
    EigDecomposition d;
    d.values = RVector::Constant(1, a(0, 0).real());
    d.vectors = v;
    return d;
  }

  const double scale = std::max(1.0, a.norm());
  const double target = 1e-14 * scale;
  const int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex u = apq / mag;  // phase of the pivot
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // unitary plane rotation J(p,q): col_p = (c, -s conj(u)), col_q = (s u, c)
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(u) * akq;
          a(k, q) = s * u * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * u * aqk;
          a(q, k) = s * std::conj(u) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        if (want_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = c * vkp - s * std::conj(u) * vkq;
            v(k, q) = s * u * vkp + c * vkq;
          }
        }
      }
    }
  }

  EigDecomposition d;
  d.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) d.values[i] = a(i, i).real();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index i, Eigen::Index j) { return d.values[i] < d.values[j]; });
  RVector sorted(n);
  CMatrix vs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted[i] = d.values[order[i]];
    vs.col(i) = v.col(order[i]);
  }
  d.values = std::move(sorted);
  d.vectors = want_vectors ? std::move(vs) : CMatrix();
  return d;
}

}  // namespace

RVector eigvals_hermitian(const HermForm& h) { return jacobi_eig(h.mat, false).values; }

EigDecomposition eig_hermitian(const HermForm& h) { return jacobi_eig(h.mat, true); }

double min_eig_hermitian(const CMatrix& m, double herm_tol) {
  return eigvals_hermitian(HermForm(m, herm_tol))[0];
}

DominationResult dominates(const HermForm& a, const HermForm& b, double c, double tol) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dominates: forms have different dimensions");
  const double margin = min_eig_hermitian(CMatrix(a.mat - c * b.mat));
  return DominationResult{margin >= -tol, margin};
}

double min_shift_against(const CMatrix& negativity, const CMatrix& s, double degenerate_tol) {
  if (negativity.rows() != s.rows() || negativity.cols() != s.cols())
    throw DimensionMismatch("min_shift_against: shape mismatch");
  const EigDecomposition sd = eig_hermitian(HermForm(s));
  const double scale = 1.0 + sd.values[sd.values.size() - 1];
  if (sd.values[0] <= degenerate_tol * scale)
    throw ExhaustionDegenerate("min_shift_against: base form is not positive definite");
  CMatrix inv_sqrt = CMatrix::Zero(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < sd.values.size(); ++i)
    inv_sqrt += (1.0 / std::sqrt(sd.values[i])) * (sd.vectors.col(i) * sd.vectors.col(i).adjoint());
  const CMatrix c = inv_sqrt * negativity * inv_sqrt;
  const double lambda = min_eig_hermitian(0.5 * (c + c.adjoint().eval()));
  return std::max(0.0, -lambda);
}

}  // namespace pshglue
