#include "freesum/stabbing.hpp"

#include <mutex>
#include <string>

#include "freesum/linalg.hpp"
#include "freesum/lp.hpp"
#include "parallel.hpp"

namespace freesum {

namespace {

void require_cells(const Triangulation& t, Simplex s, Simplex u) {
  if (!t.index_of(s) || !t.index_of(u)) throw std::invalid_argument("not a cell of the triangulation");
  if (s == u) throw std::invalid_argument("stabbing comparison of a cell with itself");
}

// Tree outcome together with the data needed for a stabbing ray.
std::optional<StabbingRay> decide(const Triangulation& t, Simplex s, Simplex u, TreeMode mode) {
  const auto& c = t.config();
  const RatVector zero(c.dim());
  const auto us = c.coords(u);
  if (simplex_contains(us, zero)) return std::nullopt;
  const auto ss = c.coords(s);
  if (mode == TreeMode::Definition && simplex_contains(ss, zero)) {
    return StabbingRay{barycenter(us), Rational(0)};
  }
  const Simplex shared = s & u;
  if (shared != 0 && affine_hull_membership(zero, c.coords(shared))) return std::nullopt;
  const auto r = relative_interior_point(ss, us);
  if (!r) return std::nullopt;
  const auto seg = segment_face_intersection(zero, *r, ss);
  if (seg.dim < 0) return std::nullopt;
  if (seg.dim == 0 && seg.t_min == 1) return std::nullopt;
  return StabbingRay{*r, seg.t_min};
}

bool separator_exists(const PointConfiguration& c, Simplex s, Simplex u, const Rational& offset) {
  std::vector<LinearConstraint> rows;
  for (auto i : vertices_of(s)) rows.push_back({c.point(i), Relation::LessEqual, offset});
  for (auto i : vertices_of(u)) rows.push_back({c.point(i), Relation::GreaterEqual, offset});
  return lp_feasible(rows, false).feasible;
}

}  // namespace

bool stabbing_compare_tree(const Triangulation& t, Simplex s, Simplex u, TreeMode mode) {
  require_cells(t, s, u);
  return decide(t, s, u, mode).has_value();
}

std::optional<StabbingRay> stabbing_ray(const Triangulation& t, Simplex s, Simplex u, TreeMode mode) {
  require_cells(t, s, u);
  return decide(t, s, u, mode);
}

bool stabbing_compare_lp(const Triangulation& t, Simplex s, Simplex u) {
  require_cells(t, s, u);
  const auto& c = t.config();
  return separator_exists(c, s, u, 1) && !separator_exists(c, s, u, -1);
}

StabbingPoset::StabbingPoset(std::vector<CellSet> above) : above_(std::move(above)), below_(above_.size(), 0) {
  for (std::size_t i = 0; i < above_.size(); ++i) {
    for (std::size_t j = 0; j < above_.size(); ++j) {
      if (precedes(i, j)) below_[j] |= cell_bit(i);
    }
  }
}

CellSet StabbingPoset::minimal() const {
  CellSet out = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (below_[i] == 0) out |= cell_bit(i);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> StabbingPoset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (!precedes(i, j)) continue;
      // covered iff no k with i < k < j
      if ((above_[i] & below_[j]) == 0) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> StabbingPoset::linear_extension() const {
  std::vector<std::size_t> out;
  CellSet placed = 0;
  while (out.size() < size()) {
    bool progress = false;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!((placed >> i) & 1U) && (below_[i] & ~placed) == 0) {
        out.push_back(i);
        placed |= cell_bit(i);
        progress = true;
        break;
      }
    }
    if (!progress) {
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < size(); ++i) {
        if (!((placed >> i) & 1U)) rest.push_back(i);
      }
      throw PosetError("stabbing relation has a cycle", rest);
    }
  }
  return out;
}

bool StabbingPoset::is_transitive() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (precedes(i, j) && (above_[j] & ~above_[i]) != 0) return false;
    }
  }
  return true;
}

StabbingPoset build_stabbing_poset(const Triangulation& t, const PosetOptions& options) {
  const auto& cells = t.cells();
  const std::size_t m = cells.size();
  std::vector<CellSet> above(m, 0);
  detail::parallel_for(m, options.threads, [&](std::size_t i) {
    CellSet row = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && decide(t, cells[i], cells[j], options.mode)) row |= cell_bit(j);
    }
    above[i] = row;
  });

  const auto name = [&](std::size_t i) { return simplex_to_string(cells[i]); };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!((above[i] >> j) & 1U)) continue;
      if ((above[j] >> i) & 1U) {
        throw PosetError("stabbing order not antisymmetric on " + name(i) + ", " + name(j), {i, j});
      }
      for (std::size_t k = 0; options.require_transitive && k < m; ++k) {
        if (((above[j] >> k) & 1U) && !((above[i] >> k) & 1U)) {
          throw PosetError("stabbing order not transitive on " + name(i) + " < " + name(j) + " < " + name(k),
                           {i, j, k});
        }
      }
    }
  }
  StabbingPoset poset(std::move(above));
  poset.linear_extension();
  const RatVector zero(t.config().dim());
  for (std::size_t i = 0; i < m; ++i) {
    if (simplex_contains(t.config().coords(cells[i]), zero) && poset.below(i) != 0) {
      throw PosetError("cell " + name(i) + " contains 0 but is not minimal", {i});
    }
  }
  return poset;
}

}  // namespace freesum
