#ifndef SANDPILE_LINALG_HPP
#define SANDPILE_LINALG_HPP

#include <cstddef>
#include <optional>

#include "sandpile/matrix.hpp"

namespace sandpile {

/*
 * Smith normal form U * M * V = S.
 *
 * U and V are unimodular, S is diagonal with nonnegative entries and
 * s_i | s_{i+1}. U_inverse is U^-1, tracked alongside U so callers can map
 * cokernel coordinates back without a second inversion.
 */
struct SnfDecomposition {
    IntegerMatrix U;
    IntegerMatrix S;
    IntegerMatrix V;
    IntegerMatrix U_inverse;

    // Diagonal of S (length min(rows, cols)).
    IntegerVector invariant_factors() const;
    std::size_t rank() const;
};

// Fraction-free (Bareiss) elimination. Throws NotSquare.
Integer determinant(const IntegerMatrix& m);

// Elementary row/column reduction, always pivoting on a smallest-magnitude
// nonzero entry of the active block.
SnfDecomposition smith_normal_form(const IntegerMatrix& m);

// Throws NotSquare or Singular.
RationalMatrix exact_inverse(const IntegerMatrix& m);

// Inverse of the Laplacian with row/column q deleted, padded back to n x n
// with a zero row and column at q. Satisfies Q * L * Q = Q.
RationalMatrix generalized_inverse_lq(const IntegerMatrix& laplacian, std::size_t q);

// Integer solution of M x = b, or nullopt when none exists.
// Throws DimensionMismatch.
std::optional<IntegerVector> solve_integer(const IntegerMatrix& m, const IntegerVector& b);
std::optional<IntegerVector> solve_integer(const SnfDecomposition& snf, const IntegerVector& b);

// Entrywise floor, rounding toward negative infinity.
IntegerVector floor_rational_vector(const RationalVector& v);

// Smallest eigenvalue of a symmetric matrix in double precision. Returns
// +infinity for the empty matrix. Throws NotSymmetric / NotSquare.
double smallest_reduced_eigenvalue(const IntegerMatrix& qq);

} // namespace sandpile

#endif
