#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"

namespace freesum {

/// Everything the web machinery needs about one summand triangulation.
struct SummandData {
  Triangulation tri;
  StabbingPoset poset;  // raw stabbing relation (see PosetOptions::require_transitive)
  StarBallPoset balls;
  CellSet star = 0;     // cells containing 0
};

SummandData make_summand_data(Triangulation t, std::size_t threads = 1);

/// A map from the cells of one triangulation (by index) to cell sets of another.
using Web = std::vector<CellSet>;

/// First relation pair (i, j), i < j in the poset, with web[i] not inside web[j].
std::optional<std::pair<std::size_t, std::size_t>> order_violation(const Web& web, const StabbingPoset& poset);
inline bool is_order_preserving(const Web& web, const StabbingPoset& poset) {
  return !order_violation(web, poset).has_value();
}

/// beta(tau) = { sigma : tau not in alpha(sigma) } for the `target_cells` cells tau.
Web complement_transpose(const Web& alpha, std::size_t target_cells);

/// Every image is a star ball of the target and the map is order preserving.
bool is_web_of_stars(const Web& alpha, const SummandData& source, const SummandData& target);

/// The complement transpose is itself a web of stars (into the source).
bool is_proper(const Web& alpha, const SummandData& source, const SummandData& target);

/// Cells of st(0) in the source go exactly to st(0) in the target.
bool satisfies_psum_condition(const Web& alpha, const SummandData& source, const SummandData& target);

struct WebSearchStats {
  std::uint64_t nodes = 0;   // partial assignments visited
  std::uint64_t emitted = 0;
};

/// Streams all proper webs alpha: source -> target with the source's st(0)
/// cells pinned to the target's st(0). Backtracks over a linear extension of
/// the source's stabbing relation; each image is a ball containing the images
/// of all predecessors. The callback returns false to stop early. Output order
/// is deterministic.
WebSearchStats enumerate_proper_psum_webs(const SummandData& source, const SummandData& target,
                                          const std::function<bool(const Web&)>& emit);

std::uint64_t count_proper_psum_webs(const SummandData& source, const SummandData& target);

}  // namespace freesum
