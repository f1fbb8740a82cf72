#ifndef RISDM_LINALG_HPP
#define RISDM_LINALG_HPP

#include "risdm/types.hpp"

namespace risdm {

struct EigResult {
  RVec values;   // ascending
  CMat vectors;  // unitary, column i pairs with values(i)
};

// Eigendecomposition of a complex Hermitian matrix. Rejects matrices whose
// anti-Hermitian part exceeds 1e-10 of the matrix norm.
EigResult hermitian_eig(const CMat& m);

// Matrix pair (A, B) of a generalized Rayleigh quotient x^H A x / x^H (B + ridge I) x,
// A Hermitian, B Hermitian PSD. ridge <= 0 selects the default
// 1e-9 * trace(B)/d (falling back to the scale of A when B is zero).
struct HermitianPencil {
  CMat a;
  CMat b;
  double ridge = 0.0;
};

double default_ridge(const CMat& a, const CMat& b);

// Unit vector maximizing the quotient of the pencil. Reduction via Cholesky
// of B + ridge I to a standard Hermitian problem, then power iteration
// (tolerance 1e-12, at most 1e4 iterations) cross-checked against a dense
// solve; the larger quotient wins.
CVec dominant_generalized_eigvec(const HermitianPencil& p);

// x^H A x / x^H (B + ridge I) x for a candidate x (same ridge convention).
double rayleigh_quotient(const HermitianPencil& p, const CVec& x);

// Orthonormal basis (d x (d-1)) of the orthogonal complement of v.
CMat orthonormal_complement(const CVec& v);

}  // namespace risdm

#endif
