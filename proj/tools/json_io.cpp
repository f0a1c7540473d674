#include "json_io.hpp"

#include <stdexcept>

namespace freesum::cli {

json points_json(const PointConfiguration& c) {
  json out = json::array();
  for (const auto& p : c.points()) {
    json row = json::array();
    for (const auto& x : p) row.push_back(to_string(x));
    out.push_back(std::move(row));
  }
  return out;
}

json cells_json(const Triangulation& t) {
  json out = json::array();
  for (Simplex s : t.cells()) out.push_back(vertices_of(s));
  return out;
}

json cell_set_json(CellSet s) {
  json out = json::array();
  for (std::size_t i = 0; s; ++i, s >>= 1) {
    if (s & 1U) out.push_back(i);
  }
  return out;
}

json web_json(const Web& w) {
  json out = json::array();
  for (CellSet s : w) out.push_back(cell_set_json(s));
  return out;
}

Web web_from_json(const json& j, std::size_t source_cells, std::size_t target_cells) {
  const json* images = &j;
  if (j.is_object()) {
    if (!j.contains("alpha")) throw std::invalid_argument("web object without \"alpha\"");
    images = &j.at("alpha");
  }
  if (!images->is_array()) throw std::invalid_argument("web images must be an array");
  if (images->size() != source_cells) {
    throw std::invalid_argument("web has " + std::to_string(images->size()) + " images for " +
                                std::to_string(source_cells) + " source cells");
  }
  Web w;
  for (const auto& image : *images) {
    if (!image.is_array()) throw std::invalid_argument("each web image must be an array of cell indices");
    CellSet s = 0;
    for (const auto& k : image) {
      if (!k.is_number_unsigned() || k.get<std::size_t>() >= target_cells) {
        throw std::invalid_argument("web image refers to cell " + k.dump() + " of " + std::to_string(target_cells));
      }
      s |= cell_bit(k.get<std::size_t>());
    }
    w.push_back(s);
  }
  return w;
}

json verification_json(const VerificationReport& r) {
  return json{{"ok", r.ok},
              {"nondegenerate", r.nondegenerate},
              {"proper_intersections", r.proper_intersections},
              {"covering", r.covering},
              {"ridges", r.ridges},
              {"cell_volume_sum", to_string(r.cell_volume_sum)},
              {"hull_volume", to_string(r.hull_volume)},
              {"problems", r.problems}};
}

json stabbing_json(const Triangulation& t, const StabbingPoset& poset) {
  json relation = json::array();
  for (std::size_t i = 0; i < poset.size(); ++i)
    for (std::size_t j = 0; j < poset.size(); ++j)
      if (poset.precedes(i, j)) relation.push_back({i, j});
  json hasse = json::array();
  const bool transitive = poset.is_transitive();
  if (transitive) {
    for (const auto& [i, j] : poset.hasse_edges()) hasse.push_back({i, j});
  }
  return json{{"cells", cells_json(t)},
              {"minimal", cell_set_json(poset.minimal())},
              {"relation", relation},
              {"transitive", transitive},
              {"hasse", transitive ? hasse : json(nullptr)}};
}

json star_balls_json(const Triangulation& t, const StarBallPoset& balls) {
  json list = json::array();
  for (CellSet b : balls.balls()) list.push_back(cell_set_json(b));
  json hasse = json::array();
  const std::size_t n = balls.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || !balls.includes(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k) {
        if (k != i && k != j && balls.includes(i, k) && balls.includes(k, j)) cover = false;
      }
      if (cover) hasse.push_back({i, j});
    }
  }
  return json{{"cells", cells_json(t)}, {"balls", list}, {"hasse", hasse}};
}

json checks_json(const DecomposeChecks& c) {
  return json{{"ok", c.ok()},
              {"balls", c.balls},
              {"order_preserving", c.order_preserving},
              {"compatible", c.compatible},
              {"pinned", c.pinned},
              {"complementarity", c.complementarity},
              {"round_trip", c.round_trip},
              {"problems", c.problems}};
}

namespace {

json conventions_json(const ConventionCounts& c) {
  return json{{"raw", c.raw},
              {"source_orbits", c.source_orbits},
              {"target_orbits", c.target_orbits},
              {"pair_orbits", c.pair_orbits}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json count_report_json(const CountReport& r, bool with_pairs) {
  json out{{"homomorphisms", r.homomorphisms},
           {"convention", kHomomorphismConvention},
           {"p_classes", r.p_classes},
           {"q_classes", r.q_classes},
           {"groups",
            {{"p", r.p_group}, {"q", r.q_group}, {"product", r.product_group}, {"full", r.full_group}}},
           {"p_sum", conventions_json(r.p_sum)},
           {"q_sum", conventions_json(r.q_sum)},
           {"distinct_triangulations", {{"product_group", optional_json(r.distinct_product)},
                                        {"full_group", optional_json(r.distinct_full)}}},
           {"regular_triangulations", {{"product_group", optional_json(r.regular_product)},
                                       {"full_group", optional_json(r.regular_full)}}},
           {"aborted", r.aborted},
           {"abort_reason", r.aborted ? json(r.abort_reason) : json(nullptr)},
           {"memory_estimate", r.memory_estimate},
           {"peak_rss", r.peak_rss},
           {"seconds", r.seconds}};
  auto table = [](const std::optional<OrderingTable>& t) -> json {
    if (!t) return nullptr;
    return {{"regular_ordered", t->regular_ordered},
            {"regular_unordered", t->regular_unordered},
            {"nonregular_ordered", t->nonregular_ordered},
            {"nonregular_unordered", t->nonregular_unordered}};
  };
  out["regular_vs_ordered"] = {{"per_web", table(r.ordering)}, {"per_class", table(r.ordering_classes)}};
  if (with_pairs) {
    json pairs = json::array();
    for (const auto& p : r.pairs) {
      pairs.push_back({{"p", p.p_index},
                       {"q", p.q_index},
                       {"p_sum", conventions_json(p.p_sum)},
                       {"q_sum", conventions_json(p.q_sum)}});
    }
    out["pairs"] = std::move(pairs);
  }
  return out;
}

}  // namespace freesum::cli
