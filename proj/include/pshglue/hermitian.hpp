#pragma once

#include <vector>

#include "pshglue/types.hpp"

namespace pshglue {

// Metric coefficient matrix at a point; Hermitian, desk scale (n <= 8).
struct HermForm {
  CMatrix mat;

  explicit HermForm(CMatrix m, double herm_tol = 1e-9);
  int dim() const { return static_cast<int>(mat.rows()); }
};

struct EigDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns match values
};

// All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi
// rotations. Self-contained and deterministic; n <= 8 keeps it cheap.
RVector eigvals_hermitian(const HermForm& h);
EigDecomposition eig_hermitian(const HermForm& h);

double min_eig_hermitian(const CMatrix& m, double herm_tol = 1e-9);

struct DominationResult {
  bool ok;
  double margin;  // min eigenvalue of A - c B
};

// Checks A >= c B in the Loewner order up to tol: margin = min eig(A - c B),
// true iff margin >= -tol.
DominationResult dominates(const HermForm& a, const HermForm& b, double c, double tol = 0.0);

// Smallest t >= 0 with t S + N >= 0 for S positive definite: the most
// negative generalized eigenvalue of N against S, clamped at zero.
// Throws ExhaustionDegenerate when S is not positive definite.
double min_shift_against(const CMatrix& negativity, const CMatrix& s, double degenerate_tol = 1e-10);

}  // namespace pshglue
