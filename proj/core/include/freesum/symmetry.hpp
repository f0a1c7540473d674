#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "freesum/complex.hpp"
#include "freesum/webs.hpp"

namespace freesum {

using Permutation = std::vector<std::uint8_t>;  // point i goes to point perm[i]

struct LinearSymmetry {
  Permutation perm;
  RatMatrix matrix;  // image of x is matrix * x
};

Simplex apply(const Permutation& g, Simplex s);
Permutation compose(const Permutation& a, const Permutation& b);  // a after b
Permutation inverse(const Permutation& g);
Permutation identity_permutation(std::size_t n);

class SymmetryGroup {
 public:
  /// Throws std::invalid_argument if the elements have different degrees or
  /// the identity is missing. Duplicates are dropped; the identity comes first.
  explicit SymmetryGroup(std::vector<LinearSymmetry> elements);
  static SymmetryGroup trivial(const PointConfiguration& c);

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return elements_.front().perm.size(); }
  const std::vector<LinearSymmetry>& elements() const { return elements_; }
  const LinearSymmetry& operator[](std::size_t i) const { return elements_[i]; }
  /// Every product of two elements is an element.
  bool is_closed() const;

 private:
  std::vector<LinearSymmetry> elements_;
};

/// All invertible linear maps permuting the points. Images of a greedy basis
/// are tried by backtracking; a partial assignment is dropped as soon as a
/// point in the span of the assigned basis vectors maps outside the
/// configuration. Throws std::invalid_argument if the points do not span
/// linearly.
SymmetryGroup automorphism_group(const PointConfiguration& c);

/// Elements (a, b) of Aut(P) x Aut(Q) acting blockwise on the sum.
SymmetryGroup product_group(const FreeSum& fs, const SymmetryGroup& gp, const SymmetryGroup& gq);

/// Elements mapping t onto itself.
SymmetryGroup stabilizer(const SymmetryGroup& g, const Triangulation& t);

/// For elements that fix t: the induced permutation of t's cell indices.
/// Throws std::invalid_argument if some element moves t.
std::vector<std::vector<std::uint8_t>> cell_permutations(const SymmetryGroup& g, const Triangulation& t);

using CanonicalKey = std::vector<std::uint64_t>;

/// Least image (sorted cell masks, compared lexicographically) over the group.
/// Throws std::invalid_argument if the group's degree is not the number of points.
CanonicalKey canonical_form(const Triangulation& t, const SymmetryGroup& g);

/// Web key: the (cell, image cell) incidences of alpha as mask pairs, least
/// image over pairs (a, b) with a in `gp`, b in `gq`. Both groups must fix
/// the respective triangulations.
CanonicalKey canonical_form(const Web& alpha, const Triangulation& tp, const Triangulation& tq,
                            const SymmetryGroup& gp, const SymmetryGroup& gq);

/// Orbit representatives of a list of triangulations (first of each orbit kept).
std::vector<Triangulation> orbit_representatives(const std::vector<Triangulation>& list, const SymmetryGroup& g);

}  // namespace freesum
