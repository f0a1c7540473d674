#include "freesum/starballs.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "freesum/linalg.hpp"
#include "freesum/lp.hpp"

namespace freesum {

Subcomplex cone_over(const PointConfiguration& c, const Subcomplex& sub) {
  const auto origin = c.origin_index();
  if (!origin) throw std::invalid_argument("configuration has no origin point");
  const RatVector zero(c.dim());
  std::vector<Simplex> cells;
  for (Simplex f : sub.generators) {
    if (has_vertex(f, *origin) || affine_hull_membership(zero, c.coords(f))) {
      throw std::domain_error("cone degenerate");
    }
    cells.push_back(f | bit(*origin));
  }
  return make_subcomplex(std::move(cells));
}

namespace {

bool ridge_connected(const std::vector<Simplex>& cells, int d) {
  if (cells.empty()) return false;
  std::vector<bool> seen(cells.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!seen[j] && simplex_size(cells[i] & cells[j]) == d) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == cells.size();
}

}  // namespace

StarShapeReport star_shape_report(const Triangulation& t, CellSet set) {
  StarShapeReport r;
  const auto& c = t.config();
  const int d = static_cast<int>(c.dim());
  const RatVector zero(c.dim());
  const auto cells = t.cells_of(set);

  r.pure_connected = ridge_connected(cells, d);
  try {
    const CellSet st = star_cells(t, zero);
    r.contains_star = (st & ~set) == 0;
  } catch (const std::domain_error&) {
    r.contains_star = false;
  }
  if (cells.empty()) return r;

  r.facets_avoid_origin = true;
  for (Simplex cell : cells) r.ball_volume += cell_volume(c, cell);
  bool inward = false;
  for (Simplex f : boundary_facets(cells)) {
    auto pts = c.coords(f);
    if (affine_hull_membership(zero, pts)) {
      r.facets_avoid_origin = false;
      continue;
    }
    const auto owner = std::find_if(cells.begin(), cells.end(), [&](Simplex s) { return (s & f) == f; });
    const auto apex = vertices_of(*owner & ~f).front();
    if (side_of(pts, c.point(apex)) != side_of(pts, zero) && !inward) {
      inward = true;
      r.witness_ray = barycenter(pts);
    }
    pts.push_back(zero);
    r.cone_volume += simplex_volume(pts);
  }
  r.volume_identity = r.cone_volume == r.ball_volume;
  if (!(r.pure_connected && r.contains_star && r.facets_avoid_origin) || r.volume_identity) r.witness_ray.reset();
  r.ok = r.pure_connected && r.contains_star && r.facets_avoid_origin && r.volume_identity;
  return r;
}

int boundary_crossings(const Triangulation& t, CellSet set, const RatVector& direction) {
  const auto& c = t.config();
  const std::size_t d = c.dim();
  std::vector<std::pair<Rational, Rational>> spans;
  for (Simplex cell : t.cells_of(set)) {
    const auto verts = vertices_of(cell);
    // variables: t, lambda_0..lambda_d
    LinearProgram lp(d + 2);
    for (std::size_t k = 0; k < d + 2; ++k) lp.require_nonnegative(k);
    RatVector sum(d + 2);
    for (std::size_t k = 1; k < d + 2; ++k) sum[k] = 1;
    lp.add(sum, Relation::Equal, 1);
    for (std::size_t a = 0; a < d; ++a) {
      RatVector row(d + 2);
      row[0] = direction[a];
      for (std::size_t k = 0; k < verts.size(); ++k) row[k + 1] = -c.point(verts[k])[a];
      lp.add(row, Relation::Equal, 0);
    }
    RatVector obj(d + 2);
    obj[0] = 1;
    const auto lo = lp.minimize(obj);
    if (lo.status != LpStatus::Optimal) continue;
    spans.emplace_back(lo.objective, lp.maximize(obj).objective);
  }
  if (spans.empty()) return 0;
  std::sort(spans.begin(), spans.end());
  int components = 1;
  Rational reach = spans.front().second;
  for (const auto& [lo, hi] : spans) {
    if (lo > reach) ++components;
    reach = std::max(reach, hi);
  }
  return 2 * components - 1;
}

std::vector<CellSet> shadow_predecessors(const Triangulation& t) {
  const auto& c = t.config();
  const std::size_t d = c.dim();
  const std::size_t m = t.size();
  const RatVector zero(d);
  std::vector<CellSet> pred(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto vi = vertices_of(t.cell(i));
    if (simplex_contains(c.coords(t.cell(i)), zero)) continue;  // the cone is the cell itself
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto vj = vertices_of(t.cell(j));
      // variables: mu (cell j), nu (cone over cell i), s
      const std::size_t n = 2 * (d + 1) + 1;
      const std::size_t s = n - 1;
      LinearProgram lp(n);
      for (std::size_t k = 0; k < n - 1; ++k) lp.require_nonnegative(k);
      RatVector mu_sum(n), nu_sum(n);
      for (std::size_t k = 0; k <= d; ++k) {
        mu_sum[k] = 1;
        nu_sum[d + 1 + k] = 1;
      }
      lp.add(mu_sum, Relation::Equal, 1);
      lp.add(nu_sum, Relation::LessEqual, 1);
      for (std::size_t a = 0; a < d; ++a) {
        RatVector row(n);
        for (std::size_t k = 0; k <= d; ++k) {
          row[k] = c.point(vj[k])[a];
          row[d + 1 + k] = -c.point(vi[k])[a];
        }
        lp.add(row, Relation::Equal, 0);
      }
      for (std::size_t k = 0; k <= d; ++k) {
        RatVector row(n);
        row[k] = 1;
        row[s] = -1;
        lp.add(row, Relation::GreaterEqual, 0);
      }
      RatVector cap(n);
      cap[s] = 1;
      lp.add(cap, Relation::LessEqual, 1);
      const auto best = lp.maximize(cap);
      if (best.status == LpStatus::Optimal && sgn(best.objective) > 0) pred[i] |= cell_bit(j);
    }
  }
  return pred;
}

StarBallPoset::StarBallPoset(std::vector<CellSet> balls) : balls_(std::move(balls)) {
  std::sort(balls_.begin(), balls_.end(), [](CellSet a, CellSet b) {
    const int ca = cell_count(a), cb = cell_count(b);
    return ca != cb ? ca < cb : a < b;
  });
  balls_.erase(std::unique(balls_.begin(), balls_.end()), balls_.end());
  for (std::size_t i = 0; i < balls_.size(); ++i) index_[balls_[i]] = i;
}

std::optional<std::size_t> StarBallPoset::index_of(CellSet ball) const {
  const auto it = index_.find(ball);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StarBallPoset enumerate_star_balls(const Triangulation& t) {
  const std::size_t m = t.size();
  const auto pred = shadow_predecessors(t);
  // closure[i]: everything a ball containing cell i must contain
  std::vector<CellSet> closure(m);
  for (std::size_t i = 0; i < m; ++i) closure[i] = pred[i] | cell_bit(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      CellSet grown = closure[i];
      for (std::size_t j = 0; j < m; ++j) {
        if ((closure[i] >> j) & 1U) grown |= closure[j];
      }
      if (grown != closure[i]) {
        closure[i] = grown;
        changed = true;
      }
    }
  }

  const CellSet star = star_cells(t, RatVector(t.config().dim()));
  CellSet start = star;
  for (std::size_t i = 0; i < m; ++i) {
    if ((star >> i) & 1U) start |= closure[i];
  }

  std::vector<CellSet> balls{0};
  std::unordered_set<CellSet> seen{start};
  std::vector<CellSet> frontier{start};
  while (!frontier.empty()) {
    std::vector<CellSet> next;
    for (CellSet set : frontier) {
      if (is_strictly_star_shaped(t, set)) balls.push_back(set);
      for (std::size_t i = 0; i < m; ++i) {
        if ((set >> i) & 1U) continue;
        const CellSet grown = set | closure[i];
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
  }
  return StarBallPoset(std::move(balls));
}

StarBallPoset enumerate_star_balls_brute_force(const Triangulation& t, std::size_t max_cells) {
  const std::size_t m = t.size();
  if (m > max_cells) throw std::length_error("too many cells for the brute-force star-ball enumeration");
  std::vector<CellSet> balls{0};
  for (CellSet set = 1; set < (CellSet{1} << m); ++set) {
    if (is_strictly_star_shaped(t, set)) balls.push_back(set);
  }
  return StarBallPoset(std::move(balls));
}

}  // namespace freesum
