#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freesum/rational.hpp"

namespace freesum {

/// A simplex is the set of its vertex indices, stored as a bitmask.
/// Configurations are therefore limited to 64 points.
using Simplex = std::uint64_t;
/// A set of cells of one triangulation, by position in Triangulation::cells().
using CellSet = std::uint64_t;

constexpr std::size_t kMaxPoints = 64;
constexpr std::size_t kMaxCells = 64;

inline int simplex_size(Simplex s) { return __builtin_popcountll(s); }
inline bool has_vertex(Simplex s, std::size_t i) { return (s >> i) & 1U; }
inline Simplex bit(std::size_t i) { return Simplex{1} << i; }
Simplex make_simplex(std::initializer_list<std::size_t> indices);
Simplex make_simplex(const std::vector<std::size_t>& indices);
std::vector<std::size_t> vertices_of(Simplex s);
/// Lexicographic order on sorted index lists ({0,1} < {0,1,2} < {0,2}).
bool lex_less(Simplex a, Simplex b);
/// "{0,1,4}"
std::string simplex_to_string(Simplex s);

inline int cell_count(CellSet c) { return __builtin_popcountll(c); }
inline CellSet cell_bit(std::size_t i) { return CellSet{1} << i; }

class PointConfiguration {
 public:
  /// Throws std::invalid_argument on duplicate points, mixed dimensions,
  /// more than 64 points or an empty list.
  explicit PointConfiguration(std::vector<RatVector> points);

  const std::vector<RatVector>& points() const { return points_; }
  const RatVector& point(std::size_t i) const { return points_.at(i); }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  std::optional<std::size_t> origin_index() const { return origin_; }
  Simplex all_points() const { return points_.size() == 64 ? ~Simplex{0} : bit(points_.size()) - 1; }

  std::vector<RatVector> coords(Simplex s) const;
  /// The affine hull of the points is the whole space.
  bool spans() const;
  /// 0 is a strictly positive convex combination of the points and they span.
  bool origin_is_interior() const;

  bool operator==(const PointConfiguration& o) const { return points_ == o.points_; }

 private:
  std::vector<RatVector> points_;
  std::size_t dim_;
  std::optional<std::size_t> origin_;
};

using ConfigPtr = std::shared_ptr<const PointConfiguration>;

inline ConfigPtr make_config(std::vector<RatVector> points) {
  return std::make_shared<const PointConfiguration>(std::move(points));
}

/// Maximal cells of a triangulation. Cells are kept sorted with lex_less and
/// must each have dim+1 vertices; geometric validity is the verifier's job.
class Triangulation {
 public:
  Triangulation(ConfigPtr config, std::vector<Simplex> cells);

  const PointConfiguration& config() const { return *config_; }
  const ConfigPtr& config_ptr() const { return config_; }
  const std::vector<Simplex>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  Simplex cell(std::size_t i) const { return cells_.at(i); }
  std::optional<std::size_t> index_of(Simplex s) const;
  Simplex used_points() const;
  CellSet all_cells() const;
  std::vector<Simplex> cells_of(CellSet set) const;

  bool operator==(const Triangulation& o) const { return cells_ == o.cells_; }

 private:
  ConfigPtr config_;
  std::vector<Simplex> cells_;
};

/// A simplicial complex inside a triangulation, stored by its inclusion-maximal faces.
struct Subcomplex {
  std::vector<Simplex> generators;

  /// Drops non-maximal generators and sorts.
  void normalize();
  bool contains_face(Simplex s) const;
  bool operator==(const Subcomplex& o) const { return generators == o.generators; }
};

Subcomplex make_subcomplex(std::vector<Simplex> generators);

/// The unique minimal face of `t` containing x. Throws std::domain_error
/// ("point not covered") when x lies outside every cell.
Simplex minimal_face_containing(const Triangulation& t, const RatVector& x);

Subcomplex star(const Triangulation& t, const RatVector& x);
Subcomplex link(const Triangulation& t, const RatVector& x);
/// Cells of t that contain x, as a CellSet.
CellSet star_cells(const Triangulation& t, const RatVector& x);

/// (k-1)-faces lying in exactly one generator of a pure k-dimensional complex.
/// Throws std::invalid_argument on non-pure input.
Subcomplex boundary(const Subcomplex& s);
/// Boundary facets of a set of full-dimensional cells.
std::vector<Simplex> boundary_facets(const std::vector<Simplex>& cells);

/// Cells of t whose vertices all lie in `vertex_set`.
Subcomplex restriction(const Triangulation& t, Simplex vertex_set);
/// Full-dimensional cells of t inside the union of the given closed simplices
/// (each a list of points). The region must be a union of cells of t.
CellSet restriction_cells(const Triangulation& t, const std::vector<std::vector<RatVector>>& region);

/// Euler characteristic of the complex generated by a subcomplex.
long euler_characteristic(const Subcomplex& s);
/// Every codimension-one face of a pure complex lies in at most two generators;
/// `closed` additionally demands exactly two.
bool is_pseudomanifold(const Subcomplex& s, bool closed);

Rational cell_volume(const PointConfiguration& c, Simplex s);

struct VerificationReport {
  bool ok = true;
  bool nondegenerate = true;
  bool proper_intersections = true;
  bool covering = true;
  bool ridges = true;
  Rational cell_volume_sum;
  Rational hull_volume;
  std::vector<std::string> problems;
};

struct VerifyOptions {
  bool pairwise = true;
  std::size_t threads = 1;
};

VerificationReport verify_triangulation(const Triangulation& t, const VerifyOptions& options = {});

/// conv(s) and conv(u) meet in the common face spanned by their shared vertices
/// (decided by a separating-hyperplane LP).
bool cells_intersect_properly(const PointConfiguration& c, Simplex s, Simplex u);

/// Beneath-and-beyond. When the first d+1 points of `order` are affinely
/// dependent, the initial simplex is the greedy choice of points in `order`
/// that raise the affine rank; the others keep their relative order.
/// Throws std::invalid_argument if the ordered points do not span.
Triangulation placing_triangulation(const ConfigPtr& c, const std::vector<std::size_t>& order);
Triangulation placing_triangulation(const ConfigPtr& c);

struct RegularityResult {
  bool regular = false;
  RatVector heights;  // one per point of the configuration
  Rational gap;       // maximized fold gap, capped at 1
};

/// Unused points are required to lie strictly above the lifted surface.
RegularityResult is_regular(const Triangulation& t);

// -- configurations ---------------------------------------------------------

ConfigPtr cross(std::size_t d);
ConfigPtr dp(std::size_t d);
ConfigPtr dp_minus(std::size_t d);
ConfigPtr interval(const std::vector<Rational>& values);

struct FreeSum {
  ConfigPtr p, q, sum;
  std::vector<std::size_t> p_to_sum, q_to_sum;
  std::vector<long> sum_to_p, sum_to_q;  // -1 where the point is not in that summand
  std::size_t origin = 0;                 // index of 0 in the sum

  Simplex p_to_sum_mask(Simplex s) const;
  Simplex q_to_sum_mask(Simplex s) const;
  /// Vertices of a sum simplex in P (origin included when present).
  Simplex p_part(Simplex s) const;
  Simplex q_part(Simplex s) const;
};

/// P x {0} together with {0} x Q, the two origin copies merged. Throws
/// std::invalid_argument if either summand lacks 0 as an interior point.
FreeSum free_sum(const ConfigPtr& p, const ConfigPtr& q);

}  // namespace freesum
