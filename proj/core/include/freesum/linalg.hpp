#pragma once

#include <optional>
#include <vector>

#include "freesum/rational.hpp"

namespace freesum {

/// Exact determinant by Gaussian elimination over the rationals.
/// Throws std::invalid_argument if the matrix is not square.
Rational determinant(RatMatrix m);

std::size_t rank(RatMatrix m);

/// Solves A x = b when A is square and invertible.
std::optional<RatVector> solve(RatMatrix a, RatVector b);

/// Volume of the full-dimensional simplex spanned by d+1 points in R^d:
/// |det(v1-v0, ..., vd-v0)| / d!. Zero iff the points are affinely dependent.
/// Throws std::invalid_argument unless exactly d+1 points of dimension d are given.
Rational simplex_volume(const std::vector<RatVector>& vertices);

/// Squared k-volume of a k-simplex in R^d (k <= d) via the Gram determinant,
/// which stays rational where the plain k-volume would not.
Rational squared_simplex_volume(const std::vector<RatVector>& vertices);

bool affinely_independent(const std::vector<RatVector>& points);

/// Is x in the affine hull of the generators? The affine hull of nothing is empty.
bool affine_hull_membership(const RatVector& x, const std::vector<RatVector>& generators);

/// Affine coordinates of x with respect to affinely independent vertices:
/// lambda with sum lambda_i v_i = x and sum lambda_i = 1, or nullopt when x is
/// not in their affine hull.
std::optional<RatVector> affine_coordinates(const std::vector<RatVector>& vertices,
                                            const RatVector& x);

/// Membership of x in conv(vertices) for affinely independent vertices.
bool simplex_contains(const std::vector<RatVector>& vertices, const RatVector& x);

/// The hyperplane through d affinely independent points in R^d.
/// The normal is a cofactor vector, so it is deterministic and integral for integral input.
Hyperplane hyperplane_through(const std::vector<RatVector>& points);

/// Sign of the side of x relative to the oriented hyperplane through `facet`.
int side_of(const std::vector<RatVector>& facet, const RatVector& x);

RatVector barycenter(const std::vector<RatVector>& points);

}  // namespace freesum
