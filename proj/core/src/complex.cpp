#include "freesum/complex.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "freesum/linalg.hpp"
#include "freesum/lp.hpp"
#include "parallel.hpp"

namespace freesum {

namespace {

void require_cellset_size(const Triangulation& t) {
  if (t.size() > 64) throw std::length_error("cell sets hold at most 64 cells");
}

}  // namespace

Simplex make_simplex(std::initializer_list<std::size_t> indices) {
  return make_simplex(std::vector<std::size_t>(indices));
}

Simplex make_simplex(const std::vector<std::size_t>& indices) {
  Simplex s = 0;
  for (auto i : indices) {
    if (i >= kMaxPoints) throw std::out_of_range("point index beyond 63");
    s |= bit(i);
  }
  return s;
}

std::vector<std::size_t> vertices_of(Simplex s) {
  std::vector<std::size_t> v;
  while (s) {
    v.push_back(static_cast<std::size_t>(__builtin_ctzll(s)));
    s &= s - 1;
  }
  return v;
}

bool lex_less(Simplex a, Simplex b) {
  const Simplex x = a ^ b;
  if (!x) return false;
  const Simplex low = x & (~x + 1);
  const Simplex above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

std::string simplex_to_string(Simplex s) {
  std::string out = "{";
  bool first = true;
  for (auto i : vertices_of(s)) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

PointConfiguration::PointConfiguration(std::vector<RatVector> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("empty point configuration");
  if (points_.size() > kMaxPoints) throw std::invalid_argument("at most 64 points are supported");
  dim_ = points_[0].size();
  if (dim_ == 0) throw std::invalid_argument("points must have positive dimension");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim_) throw std::invalid_argument("points of different dimensions");
    if (is_zero(points_[i])) origin_ = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (points_[i] == points_[j]) throw std::invalid_argument("duplicate point " + to_string(points_[i]));
    }
  }
}

std::vector<RatVector> PointConfiguration::coords(Simplex s) const {
  std::vector<RatVector> out;
  for (auto i : vertices_of(s)) out.push_back(points_.at(i));
  return out;
}

bool PointConfiguration::spans() const {
  RatMatrix edges;
  for (std::size_t i = 1; i < points_.size(); ++i) edges.push_back(subtract(points_[i], points_[0]));
  return rank(std::move(edges)) == dim_;
}

bool PointConfiguration::origin_is_interior() const {
  if (!spans()) return false;
  // maximize t subject to lambda_i >= t, sum lambda = 1, sum lambda_i p_i = 0
  const std::size_t n = points_.size();
  LinearProgram lp(n + 1);
  RatVector sum(n + 1);
  for (std::size_t i = 0; i < n; ++i) sum[i] = 1;
  lp.add(sum, Relation::Equal, 1);
  for (std::size_t c = 0; c < dim_; ++c) {
    RatVector row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = points_[i][c];
    lp.add(std::move(row), Relation::Equal, 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (origin_ && *origin_ == i) continue;
    RatVector row(n + 1);
    row[i] = 1;
    row[n] = -1;
    lp.add(std::move(row), Relation::GreaterEqual, 0);
  }
  RatVector obj(n + 1);
  obj[n] = 1;
  lp.add(obj, Relation::LessEqual, 1);
  const auto s = lp.maximize(obj);
  return s.status == LpStatus::Optimal && sgn(s.objective) > 0;
}

// ---------------------------------------------------------------------------

Triangulation::Triangulation(ConfigPtr config, std::vector<Simplex> cells)
    : config_(std::move(config)), cells_(std::move(cells)) {
  if (!config_) throw std::invalid_argument("triangulation without configuration");
  const Simplex all = config_->all_points();
  for (Simplex s : cells_) {
    if (s & ~all) throw std::invalid_argument("cell " + simplex_to_string(s) + " uses an index out of range");
    if (static_cast<std::size_t>(simplex_size(s)) != config_->dim() + 1) {
      throw std::invalid_argument("cell " + simplex_to_string(s) + " is not full-dimensional");
    }
  }
  std::sort(cells_.begin(), cells_.end(), lex_less);
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

std::optional<std::size_t> Triangulation::index_of(Simplex s) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), s, lex_less);
  if (it == cells_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

Simplex Triangulation::used_points() const {
  Simplex u = 0;
  for (Simplex s : cells_) u |= s;
  return u;
}

CellSet Triangulation::all_cells() const {
  require_cellset_size(*this);
  return cells_.size() == 64 ? ~CellSet{0} : cell_bit(cells_.size()) - 1;
}

std::vector<Simplex> Triangulation::cells_of(CellSet set) const {
  std::vector<Simplex> out;
  for (auto i : vertices_of(set)) out.push_back(cells_.at(i));
  return out;
}

void Subcomplex::normalize() {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  std::vector<Simplex> kept;
  for (Simplex g : generators) {
    bool maximal = true;
    for (Simplex h : generators) {
      if (h != g && (g & ~h) == 0) {
        maximal = false;
        break;
      }
    }
    if (maximal) kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end(), lex_less);
  generators = std::move(kept);
}

bool Subcomplex::contains_face(Simplex s) const {
  return std::any_of(generators.begin(), generators.end(), [&](Simplex g) { return (s & ~g) == 0; });
}

Subcomplex make_subcomplex(std::vector<Simplex> generators) {
  Subcomplex s{std::move(generators)};
  s.normalize();
  return s;
}

Simplex minimal_face_containing(const Triangulation& t, const RatVector& x) {
  const auto& c = t.config();
  for (Simplex s : t.cells()) {
    const auto verts = vertices_of(s);
    const auto lambda = affine_coordinates(c.coords(s), x);
    if (!lambda) continue;
    Simplex face = 0;
    bool inside = true;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const int sg = sgn((*lambda)[k]);
      if (sg < 0) {
        inside = false;
        break;
      }
      if (sg > 0) face |= bit(verts[k]);
    }
    if (inside) return face;
  }
  throw std::domain_error("point not covered");
}

CellSet star_cells(const Triangulation& t, const RatVector& x) {
  require_cellset_size(t);
  const Simplex face = minimal_face_containing(t, x);
  CellSet out = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if ((face & ~t.cell(i)) == 0) out |= cell_bit(i);
  }
  return out;
}

Subcomplex star(const Triangulation& t, const RatVector& x) {
  const Simplex face = minimal_face_containing(t, x);
  std::vector<Simplex> gens;
  for (Simplex s : t.cells()) {
    if ((face & ~s) == 0) gens.push_back(s);
  }
  return make_subcomplex(std::move(gens));
}

Subcomplex link(const Triangulation& t, const RatVector& x) {
  const Simplex face = minimal_face_containing(t, x);
  std::vector<Simplex> gens;
  for (Simplex s : t.cells()) {
    if ((face & ~s) == 0) gens.push_back(s & ~face);
  }
  return make_subcomplex(std::move(gens));
}

std::vector<Simplex> boundary_facets(const std::vector<Simplex>& cells) {
  std::unordered_map<Simplex, int> count;
  for (Simplex s : cells) {
    for (Simplex v = s; v; v &= v - 1) ++count[s & ~(v & (~v + 1))];
  }
  std::vector<Simplex> out;
  for (const auto& [f, n] : count) {
    if (n == 1 && f) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Subcomplex boundary(const Subcomplex& s) {
  if (s.generators.empty()) return {};
  const int k = simplex_size(s.generators[0]);
  for (Simplex g : s.generators) {
    if (simplex_size(g) != k) throw std::invalid_argument("boundary of a non-pure complex");
  }
  return make_subcomplex(boundary_facets(s.generators));
}

Subcomplex restriction(const Triangulation& t, Simplex vertex_set) {
  std::vector<Simplex> gens;
  for (Simplex s : t.cells()) {
    if ((s & ~vertex_set) == 0) {
      gens.push_back(s);
      continue;
    }
    // Faces: the part of the cell inside the vertex set.
    const Simplex f = s & vertex_set;
    if (f) gens.push_back(f);
  }
  return make_subcomplex(std::move(gens));
}

CellSet restriction_cells(const Triangulation& t, const std::vector<std::vector<RatVector>>& region) {
  require_cellset_size(t);
  CellSet out = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const RatVector b = barycenter(t.config().coords(t.cell(i)));
    for (const auto& r : region) {
      if (simplex_contains(r, b)) {
        out |= cell_bit(i);
        break;
      }
    }
  }
  return out;
}

long euler_characteristic(const Subcomplex& s) {
  std::set<Simplex> faces;
  for (Simplex g : s.generators) {
    // all nonempty subsets of g
    for (Simplex f = g; f; f = (f - 1) & g) faces.insert(f);
  }
  long chi = 0;
  for (Simplex f : faces) chi += (simplex_size(f) % 2 == 1) ? 1 : -1;
  return chi;
}

bool is_pseudomanifold(const Subcomplex& s, bool closed) {
  if (s.generators.empty()) return true;
  const int k = simplex_size(s.generators[0]);
  std::unordered_map<Simplex, int> count;
  for (Simplex g : s.generators) {
    if (simplex_size(g) != k) return false;
    if (k == 1) continue;
    for (Simplex v = g; v; v &= v - 1) ++count[g & ~(v & (~v + 1))];
  }
  for (const auto& [f, n] : count) {
    if (n > 2) return false;
    if (closed && n != 2) return false;
  }
  return true;
}

Rational cell_volume(const PointConfiguration& c, Simplex s) { return simplex_volume(c.coords(s)); }

// ---------------------------------------------------------------------------

bool cells_intersect_properly(const PointConfiguration& c, Simplex s, Simplex u) {
  if (s == u) return true;
  const Simplex shared = s & u;
  const std::size_t d = c.dim();
  // Shared ridge: proper iff the two apexes lie strictly on opposite sides.
  if (static_cast<std::size_t>(simplex_size(shared)) == d && simplex_size(s) == simplex_size(u) &&
      static_cast<std::size_t>(simplex_size(s)) == d + 1) {
    const auto facet = c.coords(shared);
    const auto a = c.point(vertices_of(s & ~shared)[0]);
    const auto b = c.point(vertices_of(u & ~shared)[0]);
    return side_of(facet, a) * side_of(facet, b) < 0;
  }
  // a.x = beta on shared, a.x <= beta - 1 on s only, a.x >= beta + 1 on u only.
  std::vector<LinearConstraint> rows;
  auto row = [&](std::size_t i, Relation rel, int rhs) {
    RatVector coeffs(d + 1);
    for (std::size_t k = 0; k < d; ++k) coeffs[k] = c.point(i)[k];
    coeffs[d] = -1;
    rows.push_back({std::move(coeffs), rel, Rational(rhs)});
  };
  for (auto i : vertices_of(shared)) row(i, Relation::Equal, 0);
  for (auto i : vertices_of(s & ~shared)) row(i, Relation::LessEqual, -1);
  for (auto i : vertices_of(u & ~shared)) row(i, Relation::GreaterEqual, 1);
  return lp_feasible(rows, false).feasible;
}

namespace {

bool on_hull_boundary(const PointConfiguration& c, Simplex ridge) {
  const auto pts = c.coords(ridge);
  const Hyperplane h = hyperplane_through(pts);
  int seen = 0;
  for (const auto& p : c.points()) {
    const int s = sign(h.evaluate(p));
    if (s == 0) continue;
    if (seen == 0) seen = s;
    else if (seen != s) return false;
  }
  return true;
}

}  // namespace

VerificationReport verify_triangulation(const Triangulation& t, const VerifyOptions& options) {
  VerificationReport r;
  const auto& c = t.config();
  const std::size_t d = c.dim();
  const auto& cells = t.cells();

  for (Simplex s : cells) {
    const Rational v = cell_volume(c, s);
    if (sgn(v) == 0) {
      r.nondegenerate = false;
      r.problems.push_back("degenerate cell " + simplex_to_string(s));
    }
    r.cell_volume_sum += v;
  }

  // Ridge screen.
  std::map<Simplex, std::vector<Simplex>> ridge_cells;
  for (Simplex s : cells) {
    for (Simplex v = s; v; v &= v - 1) ridge_cells[s & ~(v & (~v + 1))].push_back(s);
  }
  if (r.nondegenerate) {
    for (const auto& [ridge, owners] : ridge_cells) {
      const bool hull = on_hull_boundary(c, ridge);
      if (owners.size() > 2) {
        r.ridges = false;
        r.problems.push_back("ridge " + simplex_to_string(ridge) + " lies in " +
                             std::to_string(owners.size()) + " cells");
      } else if (owners.size() == 1 && !hull) {
        r.ridges = false;
        r.problems.push_back("interior ridge " + simplex_to_string(ridge) + " lies in only one cell");
      } else if (owners.size() == 2 && hull) {
        r.ridges = false;
        r.problems.push_back("hull ridge " + simplex_to_string(ridge) + " lies in two cells");
      }
    }
  }
  (void)d;

  if (options.pairwise && r.nondegenerate) {
    const std::size_t m = cells.size();
    std::mutex mu;
    detail::parallel_for(m, options.threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!cells_intersect_properly(c, cells[i], cells[j])) {
          std::lock_guard<std::mutex> lock(mu);
          r.proper_intersections = false;
          r.problems.push_back("cells " + simplex_to_string(cells[i]) + " and " +
                               simplex_to_string(cells[j]) + " intersect improperly");
        }
      }
    });
  }

  // Hull volume from an independent placing triangulation (reverse insertion order).
  if (c.spans()) {
    std::vector<std::size_t> order(c.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
    const Triangulation hull = placing_triangulation(t.config_ptr(), order);
    r.hull_volume = 0;
    for (Simplex s : hull.cells()) r.hull_volume += cell_volume(c, s);
  }
  if (r.hull_volume != r.cell_volume_sum) {
    r.covering = false;
    r.problems.push_back("cell volumes sum to " + to_string(r.cell_volume_sum) + " but the hull has volume " +
                         to_string(r.hull_volume) + " (deficit " +
                         to_string(Rational(r.hull_volume - r.cell_volume_sum)) + ")");
  }
  r.ok = r.nondegenerate && r.proper_intersections && r.covering && r.ridges;
  return r;
}

// ---------------------------------------------------------------------------

Triangulation placing_triangulation(const ConfigPtr& cp, const std::vector<std::size_t>& order) {
  const auto& c = *cp;
  const std::size_t d = c.dim();

  // Greedy initial simplex.
  std::vector<std::size_t> start, rest;
  RatMatrix edges;
  for (auto i : order) {
    if (i >= c.size()) throw std::out_of_range("placing order index out of range");
    if (start.size() == d + 1) {
      rest.push_back(i);
      continue;
    }
    if (start.empty()) {
      start.push_back(i);
      continue;
    }
    edges.push_back(subtract(c.point(i), c.point(start[0])));
    if (rank(edges) == start.size()) {
      start.push_back(i);
    } else {
      edges.pop_back();
      rest.push_back(i);
    }
  }
  if (start.size() != d + 1) throw std::invalid_argument("placing order does not span the space");

  struct Facet {
    Simplex verts;
    std::size_t apex;  // vertex of the owning cell opposite to the facet
  };
  std::vector<Simplex> cells;
  std::vector<Facet> facets;
  const Simplex first = make_simplex(start);
  cells.push_back(first);
  for (auto v : start) facets.push_back({first & ~bit(v), v});

  for (auto p : rest) {
    const RatVector& x = c.point(p);
    std::vector<bool> visible(facets.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const Hyperplane h = hyperplane_through(c.coords(facets[f].verts));
      const int sp = sign(h.evaluate(x));
      const int sa = sign(h.evaluate(c.point(facets[f].apex)));
      if (sp != 0 && sp != sa) {
        visible[f] = true;
        any = true;
      }
    }
    if (!any) continue;
    // Horizon ridges: ridges of visible facets not shared with another visible facet.
    std::map<Simplex, int> ridge_count;
    std::vector<Facet> kept;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!visible[f]) {
        kept.push_back(facets[f]);
        continue;
      }
      const Simplex fv = facets[f].verts;
      cells.push_back(fv | bit(p));
      for (Simplex v = fv; v; v &= v - 1) ++ridge_count[fv & ~(v & (~v + 1))];
    }
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!visible[f]) continue;
      const Simplex fv = facets[f].verts;
      for (Simplex v = fv; v; v &= v - 1) {
        const Simplex lowbit = v & (~v + 1);
        const Simplex ridge = fv & ~lowbit;
        if (ridge_count[ridge] == 1) {
          // The new facet ridge+p belongs to cell fv+p; its apex is the dropped vertex.
          kept.push_back({ridge | bit(p), static_cast<std::size_t>(__builtin_ctzll(lowbit))});
        }
      }
    }
    facets = std::move(kept);
  }
  return Triangulation(cp, std::move(cells));
}

Triangulation placing_triangulation(const ConfigPtr& c) {
  std::vector<std::size_t> order(c->size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return placing_triangulation(c, order);
}

// ---------------------------------------------------------------------------

RegularityResult is_regular(const Triangulation& t) {
  const auto& c = t.config();
  const std::size_t n = c.size();
  const std::size_t gap = n;
  LinearProgram lp(n + 1);

  auto fold_row = [&](Simplex base, std::size_t q) {
    const auto verts = vertices_of(base);
    const auto lambda = affine_coordinates(c.coords(base), c.point(q));
    if (!lambda) throw std::logic_error("is_regular: point outside the affine hull of a cell");
    RatVector row(n + 1);
    row[q] += 1;
    for (std::size_t k = 0; k < verts.size(); ++k) row[verts[k]] -= (*lambda)[k];
    row[gap] = -1;
    lp.add(std::move(row), Relation::GreaterEqual, 0);
  };

  std::map<Simplex, std::vector<Simplex>> ridge_cells;
  for (Simplex s : t.cells()) {
    for (Simplex v = s; v; v &= v - 1) ridge_cells[s & ~(v & (~v + 1))].push_back(s);
  }
  for (const auto& [ridge, owners] : ridge_cells) {
    if (owners.size() != 2) continue;
    const std::size_t q = vertices_of(owners[1] & ~ridge)[0];
    fold_row(owners[0], q);
  }
  const Simplex used = t.used_points();
  for (std::size_t p = 0; p < n; ++p) {
    if (has_vertex(used, p)) continue;
    for (Simplex s : t.cells()) {
      if (simplex_contains(c.coords(s), c.point(p))) {
        fold_row(s, p);
        break;
      }
    }
  }
  // Heights are fixed up to an affine function; pin one cell to zero.
  if (!t.cells().empty()) {
    for (auto v : vertices_of(t.cell(0))) {
      RatVector row(n + 1);
      row[v] = 1;
      lp.add(std::move(row), Relation::Equal, 0);
    }
  }
  RatVector obj(n + 1);
  obj[gap] = 1;
  lp.add(obj, Relation::LessEqual, 1);
  const auto s = lp.maximize(obj);
  RegularityResult r;
  if (s.status != LpStatus::Optimal) throw std::logic_error("is_regular: LP did not reach an optimum");
  r.gap = s.objective;
  r.regular = sgn(s.objective) > 0;
  r.heights.assign(s.point.begin(), s.point.begin() + static_cast<long>(n));
  return r;
}

// ---------------------------------------------------------------------------

ConfigPtr cross(std::size_t d) {
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < d; ++i) {
    RatVector e(d);
    e[i] = 1;
    pts.push_back(e);
    e[i] = -1;
    pts.push_back(e);
  }
  pts.push_back(RatVector(d));
  return make_config(std::move(pts));
}

ConfigPtr dp(std::size_t d) {
  std::vector<RatVector> pts = cross(d)->points();
  pts.pop_back();
  pts.push_back(RatVector(d, Rational(1)));
  pts.push_back(RatVector(d, Rational(-1)));
  pts.push_back(RatVector(d));
  return make_config(std::move(pts));
}

ConfigPtr dp_minus(std::size_t d) {
  std::vector<RatVector> pts = cross(d)->points();
  pts.pop_back();
  pts.push_back(RatVector(d, Rational(-1)));
  pts.push_back(RatVector(d));
  return make_config(std::move(pts));
}

ConfigPtr interval(const std::vector<Rational>& values) {
  std::vector<RatVector> pts;
  for (const auto& v : values) pts.push_back(RatVector{v});
  return make_config(std::move(pts));
}

Simplex FreeSum::p_to_sum_mask(Simplex s) const {
  Simplex out = 0;
  for (auto i : vertices_of(s)) out |= bit(p_to_sum.at(i));
  return out;
}

Simplex FreeSum::q_to_sum_mask(Simplex s) const {
  Simplex out = 0;
  for (auto i : vertices_of(s)) out |= bit(q_to_sum.at(i));
  return out;
}

Simplex FreeSum::p_part(Simplex s) const {
  Simplex out = 0;
  for (auto i : vertices_of(s)) {
    if (sum_to_p[i] >= 0) out |= bit(static_cast<std::size_t>(sum_to_p[i]));
  }
  return out;
}

Simplex FreeSum::q_part(Simplex s) const {
  Simplex out = 0;
  for (auto i : vertices_of(s)) {
    if (sum_to_q[i] >= 0) out |= bit(static_cast<std::size_t>(sum_to_q[i]));
  }
  return out;
}

FreeSum free_sum(const ConfigPtr& p, const ConfigPtr& q) {
  if (!p->origin_index() || !p->origin_is_interior()) {
    throw std::invalid_argument("free_sum: 0 is not an interior point of the first summand");
  }
  if (!q->origin_index() || !q->origin_is_interior()) {
    throw std::invalid_argument("free_sum: 0 is not an interior point of the second summand");
  }
  const std::size_t d = p->dim();
  const std::size_t e = q->dim();
  FreeSum fs;
  fs.p = p;
  fs.q = q;
  std::vector<RatVector> pts;
  for (std::size_t i = 0; i < p->size(); ++i) {
    RatVector v = p->point(i);
    v.resize(d + e);
    fs.p_to_sum.push_back(pts.size());
    pts.push_back(std::move(v));
  }
  fs.origin = fs.p_to_sum[*p->origin_index()];
  for (std::size_t i = 0; i < q->size(); ++i) {
    if (i == *q->origin_index()) {
      fs.q_to_sum.push_back(fs.origin);
      continue;
    }
    RatVector v(d);
    v.insert(v.end(), q->point(i).begin(), q->point(i).end());
    fs.q_to_sum.push_back(pts.size());
    pts.push_back(std::move(v));
  }
  fs.sum = make_config(std::move(pts));
  fs.sum_to_p.assign(fs.sum->size(), -1);
  fs.sum_to_q.assign(fs.sum->size(), -1);
  for (std::size_t i = 0; i < fs.p_to_sum.size(); ++i) fs.sum_to_p[fs.p_to_sum[i]] = static_cast<long>(i);
  for (std::size_t i = 0; i < fs.q_to_sum.size(); ++i) fs.sum_to_q[fs.q_to_sum[i]] = static_cast<long>(i);
  return fs;
}

}  // namespace freesum
