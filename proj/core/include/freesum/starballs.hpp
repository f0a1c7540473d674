#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "freesum/complex.hpp"

namespace freesum {

/// Cells {0} u F for the generators F of `sub`. The configuration must contain
/// the origin as a point. Throws std::domain_error("cone degenerate") when
/// 0 lies in the affine hull of some generator.
Subcomplex cone_over(const PointConfiguration& c, const Subcomplex& sub);

struct StarShapeReport {
  bool ok = false;
  bool pure_connected = false;      // nonempty and ridge-connected
  bool contains_star = false;       // every cell containing 0 is present
  bool facets_avoid_origin = false; // 0 outside aff(F) for each boundary facet F
  bool volume_identity = false;     // sum of vol(0 * F) equals the ball volume
  Rational cone_volume, ball_volume;
  /// For candidates that pass the first three tests but not the last: a point
  /// r on an inward facing boundary facet, so the ray through r crosses the
  /// boundary at least twice.
  std::optional<RatVector> witness_ray;
};

StarShapeReport star_shape_report(const Triangulation& t, CellSet cells);
inline bool is_strictly_star_shaped(const Triangulation& t, CellSet cells) { return star_shape_report(t, cells).ok; }

/// Number of times the ray from 0 in `direction` crosses the boundary of the
/// union of `cells` (0 must be interior to the union).
int boundary_crossings(const Triangulation& t, CellSet cells, const RatVector& direction);

/// shadow[i]: cells j != i whose interior meets conv({0} u cell i). Every
/// strictly star-shaped ball is closed under these predecessors.
std::vector<CellSet> shadow_predecessors(const Triangulation& t);

/// The star balls of t with the empty ball, ordered by size and then by mask.
class StarBallPoset {
 public:
  StarBallPoset() = default;
  explicit StarBallPoset(std::vector<CellSet> balls);

  const std::vector<CellSet>& balls() const { return balls_; }
  std::size_t size() const { return balls_.size(); }
  CellSet operator[](std::size_t i) const { return balls_[i]; }
  std::optional<std::size_t> index_of(CellSet ball) const;
  bool contains(CellSet ball) const { return index_.count(ball) > 0; }
  /// i <= j by inclusion
  bool includes(std::size_t i, std::size_t j) const { return (balls_[i] & ~balls_[j]) == 0; }

  bool operator==(const StarBallPoset& o) const { return balls_ == o.balls_; }

 private:
  std::vector<CellSet> balls_;
  std::unordered_map<CellSet, std::size_t> index_;
};

/// Grows from st(0) through sets closed under shadow predecessors (adding a
/// strongly connected component of the shadow relation at a time) and keeps
/// those that pass star_shape_report. Requires 0 in the interior of conv(t).
StarBallPoset enumerate_star_balls(const Triangulation& t);

/// Tests every subset of cells. Throws std::length_error above `max_cells`.
StarBallPoset enumerate_star_balls_brute_force(const Triangulation& t, std::size_t max_cells = 20);

}  // namespace freesum
