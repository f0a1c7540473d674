#include "freesum/sumtri.hpp"

#include <algorithm>
#include <stdexcept>

#include "freesum/linalg.hpp"
#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"

namespace freesum {

const char* side_name(Side s) {
  switch (s) {
    case Side::P: return "P";
    case Side::Q: return "Q";
    case Side::Both: return "both";
  }
  return "?";
}

CellSplit split_cell(const FreeSum& fs, Simplex c) {
  CellSplit out;
  out.p = fs.p_part(c);
  out.q = fs.q_part(c);
  out.dim_p = simplex_size(out.p) - 1;
  out.dim_q = simplex_size(out.q) - 1;
  out.origin_vertex = has_vertex(c, fs.origin);
  return out;
}

namespace {

// One summand seen as X, the other as Y.
struct Orient {
  const FreeSum& fs;
  bool x_is_p;

  const PointConfiguration& x() const { return x_is_p ? *fs.p : *fs.q; }
  const PointConfiguration& y() const { return x_is_p ? *fs.q : *fs.p; }
  Simplex x_to_sum(Simplex s) const { return x_is_p ? fs.p_to_sum_mask(s) : fs.q_to_sum_mask(s); }
  Simplex y_to_sum(Simplex s) const { return x_is_p ? fs.q_to_sum_mask(s) : fs.p_to_sum_mask(s); }
  Simplex x_part(Simplex c) const { return x_is_p ? fs.p_part(c) : fs.q_part(c); }
  Simplex y_part(Simplex c) const { return x_is_p ? fs.q_part(c) : fs.p_part(c); }
  std::size_t x_origin() const { return x_is_p ? *fs.p->origin_index() : *fs.q->origin_index(); }
  std::size_t y_origin() const { return x_is_p ? *fs.q->origin_index() : *fs.p->origin_index(); }
};

void add_joins(std::vector<Simplex>& out, const Orient& o, const Triangulation& tx, const Triangulation& ty,
               const Web& web) {
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (web[i] == 0) continue;
    const Simplex base = o.x_to_sum(tx.cell(i));
    for (Simplex f : boundary_facets(ty.cells_of(web[i]))) out.push_back(base | o.y_to_sum(f));
  }
}

// Faces of the link of sigma (an X-simplex), in Y indices.
std::vector<Simplex> link_faces(const Orient& o, const Triangulation& t, Simplex sigma_x) {
  const Simplex s = o.x_to_sum(sigma_x);
  std::vector<Simplex> out;
  for (Simplex c : t.cells()) {
    if ((s & ~c) == 0) out.push_back(o.y_part(c & ~s));
  }
  return out;
}

bool in_cone(const PointConfiguration& y, std::size_t origin, const std::vector<Simplex>& faces, Simplex cell) {
  const RatVector b = barycenter(y.coords(cell));
  for (Simplex f : faces) {
    const auto lambda = affine_coordinates(y.coords(f | bit(origin)), b);
    if (!lambda) continue;
    if (std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return sgn(l) >= 0; })) return true;
  }
  return false;
}

// Cells of ty inside the cone over the link of each X-cell. With `drop_origin`,
// cells having 0 as a vertex map to the empty set.
Web read_web(const Orient& o, const Triangulation& t, const Triangulation& tx, const Triangulation& ty,
             bool drop_origin) {
  Web web(tx.size(), 0);
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (drop_origin && has_vertex(tx.cell(i), o.x_origin())) continue;
    const auto faces = link_faces(o, t, tx.cell(i));
    for (std::size_t j = 0; j < ty.size(); ++j) {
      if (in_cone(o.y(), o.y_origin(), faces, ty.cell(j))) web[i] |= cell_bit(j);
    }
  }
  return web;
}

void require_summand_size(const Triangulation& t) {
  if (t.size() > 64) throw std::length_error("summand triangulation has more than 64 cells");
}

}  // namespace

Triangulation assemble_sum(const FreeSum& fs, const Triangulation& tp, const Triangulation& tq, const Web& alpha,
                           const Web& beta) {
  if (alpha.size() != tp.size() || beta.size() != tq.size()) throw std::invalid_argument("web size mismatch");
  std::vector<Simplex> cells;
  add_joins(cells, Orient{fs, true}, tp, tq, alpha);
  add_joins(cells, Orient{fs, false}, tq, tp, beta);
  return Triangulation(fs.sum, std::move(cells));
}

SumTriangulation construct_sum_triangulation(const FreeSum& fs, const SummandData& p, const SummandData& q,
                                             const Web& web, Side orientation) {
  if (&p.tri.config() != fs.p.get() || &q.tri.config() != fs.q.get()) {
    throw std::invalid_argument("summand triangulations are not over the free sum's summands");
  }
  if (orientation == Side::Both) throw std::invalid_argument("orientation must be P or Q");
  const bool on_p = orientation == Side::P;
  const SummandData& src = on_p ? p : q;
  const SummandData& tgt = on_p ? q : p;
  if (web.size() != src.tri.size()) throw std::invalid_argument("web size mismatch");
  if (!is_web_of_stars(web, src, tgt)) throw std::invalid_argument("not a web of stars");
  if (!is_proper(web, src, tgt)) throw std::invalid_argument("web is not proper");
  if (!satisfies_psum_condition(web, src, tgt)) throw std::invalid_argument("star of 0 is not pinned");
  const Web other = complement_transpose(web, tgt.tri.size());
  SumProvenance prov{orientation, p.tri, q.tri, on_p ? web : other, on_p ? other : web};
  Triangulation sum = assemble_sum(fs, prov.tp, prov.tq, prov.alpha, prov.beta);
  return SumTriangulation{std::move(sum), std::move(prov)};
}

Side origin_part(const FreeSum& fs, const Triangulation& t) {
  const RatVector zero(fs.sum->dim());
  const Simplex face = minimal_face_containing(t, zero);
  if (face == bit(fs.origin)) return Side::Both;
  std::optional<Side> side;
  for (Simplex c : t.cells()) {
    if ((face & ~c) != 0) continue;
    const CellSplit sp = split_cell(fs, c);
    const RatVector zp(fs.p->dim());
    const RatVector zq(fs.q->dim());
    auto holds = [](const PointConfiguration& cfg, Simplex s, const RatVector& z) {
      const auto lambda = affine_coordinates(cfg.coords(s), z);
      return lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return sgn(l) >= 0; });
    };
    const bool in_p = holds(*fs.p, sp.p, zp);
    const bool in_q = holds(*fs.q, sp.q, zq);
    if (in_p == in_q) throw std::logic_error("origin in both or neither part of " + simplex_to_string(c));
    const Side s = in_p ? Side::P : Side::Q;
    if (side && *side != s) throw std::logic_error("st(0) cells disagree on the part containing 0");
    side = s;
  }
  if (!side) throw std::logic_error("empty star of 0");
  return *side;
}

Decomposition decompose(const FreeSum& fs, const Triangulation& t, const DecomposeOptions& options) {
  if (&t.config() != fs.sum.get()) throw std::invalid_argument("triangulation is not over the free sum");
  if (options.verify) {
    VerifyOptions vo;
    vo.threads = options.threads;
    const auto report = verify_triangulation(t, vo);
    if (!report.ok) {
      std::string msg = "not a triangulation";
      if (!report.problems.empty()) msg += ": " + report.problems.front();
      throw std::invalid_argument(msg);
    }
  }
  const Side side = origin_part(fs, t);
  const Side primary = side == Side::Both ? (options.prefer == Side::Q ? Side::Q : Side::P) : side;
  const Orient o{fs, primary == Side::P};

  // full-dimensional parts
  std::vector<Simplex> xs, ys;
  const int dx = static_cast<int>(o.x().dim());
  const int dy = static_cast<int>(o.y().dim());
  for (Simplex c : t.cells()) {
    const Simplex xp = o.x_part(c);
    const Simplex yp = o.y_part(c);
    if (simplex_size(xp) == dx + 1) xs.push_back(xp);
    if (simplex_size(yp) == dy + 1) ys.push_back(yp);
  }
  if (side != Side::Both) {
    // cone from 0 over the link of the primary part of an st(0) cell
    const RatVector zero(fs.sum->dim());
    const Simplex face = minimal_face_containing(t, zero);
    Simplex star_part = 0;
    for (Simplex c : t.cells()) {
      if ((face & ~c) == 0) {
        star_part = o.x_part(c);
        break;
      }
    }
    if (simplex_size(star_part) != dx + 1) throw std::logic_error("part containing 0 is not full-dimensional");
    for (Simplex f : link_faces(o, t, star_part)) ys.push_back(f | bit(o.y_origin()));
  }
  const ConfigPtr& cx = o.x_is_p ? fs.p : fs.q;
  const ConfigPtr& cy = o.x_is_p ? fs.q : fs.p;
  Triangulation tx(cx, xs);
  Triangulation ty(cy, ys);
  require_summand_size(tx);
  require_summand_size(ty);
  Web wx = read_web(o, t, tx, ty, false);
  Web wy = read_web(Orient{fs, !o.x_is_p}, t, ty, tx, true);

  DecomposeChecks checks;
  auto fail = [&](bool& flag, std::string what) {
    flag = false;
    checks.problems.push_back(std::move(what));
  };

  // balls
  auto check_balls = [&](const Web& w, const Triangulation& target, const char* name) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != 0 && !is_strictly_star_shaped(target, w[i])) {
        fail(checks.balls, std::string(name) + " image of cell " + std::to_string(i) + " is not a star ball");
      }
    }
  };
  check_balls(wx, ty, "primary");
  check_balls(wy, tx, "secondary");

  PosetOptions po;
  po.threads = options.threads;
  po.require_transitive = false;
  const StabbingPoset px = build_stabbing_poset(tx, po);
  const StabbingPoset py = build_stabbing_poset(ty, po);
  if (auto v = order_violation(wx, px)) {
    fail(checks.order_preserving, "primary web breaks order at " + std::to_string(v->first) + "<" +
                                      std::to_string(v->second));
  }
  if (auto v = order_violation(wy, py)) {
    fail(checks.order_preserving, "secondary web breaks order at " + std::to_string(v->first) + "<" +
                                      std::to_string(v->second));
  }
  if (complement_transpose(wx, ty.size()) != wy) fail(checks.compatible, "webs are not complementary");

  const RatVector zx(o.x().dim());
  const RatVector zy(o.y().dim());
  const CellSet star_x = star_cells(tx, zx);
  const CellSet star_y = star_cells(ty, zy);
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (((star_x >> i) & 1U) && wx[i] != star_y) {
      fail(checks.pinned, "st(0) cell " + std::to_string(i) + " is not sent to st(0)");
    }
  }

  // membership in the cone over the link, without the case split
  const Web& lx = wx;
  const Web ly = read_web(Orient{fs, !o.x_is_p}, t, ty, tx, false);
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (has_vertex(tx.cell(i), o.x_origin())) continue;
    for (std::size_t j = 0; j < ty.size(); ++j) {
      if (has_vertex(ty.cell(j), o.y_origin())) continue;
      const bool a = (lx[i] >> j) & 1U;
      const bool b = (ly[j] >> i) & 1U;
      if (a == b) {
        fail(checks.complementarity, "cells " + std::to_string(i) + " and " + std::to_string(j) +
                                         " break complementarity");
      }
    }
  }

  SumProvenance prov{primary, o.x_is_p ? tx : ty, o.x_is_p ? ty : tx, o.x_is_p ? wx : wy, o.x_is_p ? wy : wx};
  const Triangulation back = assemble_sum(fs, prov.tp, prov.tq, prov.alpha, prov.beta);
  if (!(back == t)) fail(checks.round_trip, "reassembly differs from the input");
  return Decomposition{side, std::move(prov), std::move(checks)};
}

}  // namespace freesum
