#pragma once

#include <string>

#include "freesum/census.hpp"
#include "freesum/complex.hpp"
#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"
#include "freesum/sumtri.hpp"
#include "freesum/webs.hpp"
#include "json.hpp"

namespace freesum::cli {

using nlohmann::json;

json points_json(const PointConfiguration& c);
json cells_json(const Triangulation& t);
json cell_set_json(CellSet s);
json web_json(const Web& w);

/// Reads {"alpha": [[cells of the target], ...], "orientation": "p"|"q"}.
/// Throws std::invalid_argument on shape errors.
Web web_from_json(const json& j, std::size_t source_cells, std::size_t target_cells);

json verification_json(const VerificationReport& r);
json stabbing_json(const Triangulation& t, const StabbingPoset& poset);
json star_balls_json(const Triangulation& t, const StarBallPoset& balls);
json checks_json(const DecomposeChecks& c);
json count_report_json(const CountReport& r, bool with_pairs);

}  // namespace freesum::cli
