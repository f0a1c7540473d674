#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "freesum/complex.hpp"

namespace freesum {

enum class TreeMode {
  /// The decision tree with the extra branch "0 in s, 0 not in u => s precedes u",
  /// which the separating-hyperplane definition demands.
  Definition,
  /// The tree exactly as drawn, without that branch.
  Literal,
};

/// Does s strictly precede u in the stabbing order of t? Both must be cells of t.
bool stabbing_compare_tree(const Triangulation& t, Simplex s, Simplex u, TreeMode mode = TreeMode::Definition);

/// Independent oracle from the separating-hyperplane definition:
/// a separator with offset 1 exists and none with offset -1 does.
bool stabbing_compare_lp(const Triangulation& t, Simplex s, Simplex u);

/// A ray from 0 that meets s no later than u: r lies in u and lambda * r in s
/// with 0 <= lambda < 1.
struct StabbingRay {
  RatVector r;
  Rational lambda;
};

/// The ray read off the decision tree data; nullopt when s does not precede u.
std::optional<StabbingRay> stabbing_ray(const Triangulation& t, Simplex s, Simplex u,
                                        TreeMode mode = TreeMode::Definition);

class PosetError : public std::runtime_error {
 public:
  PosetError(const std::string& what, std::vector<std::size_t> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  /// Cell indices of the offending pair or triple.
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

/// Strict stabbing order on the cells of a triangulation, indexed like t.cells().
class StabbingPoset {
 public:
  StabbingPoset() = default;
  explicit StabbingPoset(std::vector<CellSet> above);

  std::size_t size() const { return above_.size(); }
  bool precedes(std::size_t i, std::size_t j) const { return (above_[i] >> j) & 1U; }
  /// Cells j with i < j.
  CellSet above(std::size_t i) const { return above_[i]; }
  /// Cells j with j < i.
  CellSet below(std::size_t i) const { return below_[i]; }
  CellSet minimal() const;
  /// Covering relations (i, j): i < j with no k such that i < k < j.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  /// Cells ordered so that every cell comes after everything below it;
  /// ties broken by index. Throws PosetError if the relation has a cycle.
  std::vector<std::size_t> linear_extension() const;

  bool is_transitive() const;
  bool operator==(const StabbingPoset& o) const { return above_ == o.above_; }

 private:
  std::vector<CellSet> above_, below_;
};

struct PosetOptions {
  TreeMode mode = TreeMode::Definition;
  std::size_t threads = 1;
  /// The relation can fail to be transitive (already for planar configurations).
  /// When false, such a relation is kept as computed; no closure is taken.
  bool require_transitive = true;
};

/// Compares all ordered pairs with the decision tree. Throws PosetError on a
/// symmetric pair, a directed cycle, a transitivity failure (when required),
/// or a cell containing 0 that is not minimal.
StabbingPoset build_stabbing_poset(const Triangulation& t, const PosetOptions& options = {});

}  // namespace freesum
