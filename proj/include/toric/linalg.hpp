#ifndef TORIC_LINALG_HPP
#define TORIC_LINALG_HPP

// Dense exact linear algebra over Q: reduced row echelon form, rank, kernels,
// and subspace arithmetic.  Subspaces of Q^r are represented by their
// canonical rref row basis, which makes equality testing and deduplication a
// plain comparison.

#include "toric/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace toric {

using QMat = std::vector<QVec>;  // row-major; a subspace = row span

QMat rref(QMat m);  // reduced row echelon form, zero rows dropped
int rank(const QMat& m);

// Canonical basis of the row span (rref).  The empty matrix is the zero space.
QMat row_space(const QMat& m);

// Basis of {x : m x^T = 0} as rows, in rref form.  cols = ambient dimension.
QMat kernel_basis(const QMat& m, int cols);

bool contains(const QMat& span_rref, const QVec& v);       // v in row span?
bool subspace_leq(const QMat& a_rref, const QMat& b_rref); // span(a) <= span(b)
QMat subspace_sum(const QMat& a, const QMat& b);
QMat subspace_intersection(const QMat& a_rref, const QMat& b_rref, int cols);

// Apply a matrix to a row vector: returns v * m^T, i.e. m acting on v.
QVec apply(const QMat& m, const QVec& v);
// Image of a row-span under the linear map given by m (rows of basis mapped).
QMat image(const QMat& m, const QMat& basis_rows);

// Unique solution of a square system m x = b; throws std::domain_error if the
// matrix is singular.
QVec solve_square(QMat m, QVec b);

// Coordinates of v in the canonical rref basis (read off the pivot columns);
// throws std::domain_error if v is not in the span.
QVec coordinates(const QMat& rref_basis, const QVec& v);

// Deterministic textual key for a subspace (of its rref basis); used for
// deduplication in stratification constructions.
std::string subspace_key(const QMat& rref_basis);

QMat identity_matrix(int n);

}  // namespace toric

#endif
