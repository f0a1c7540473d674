#pragma once

#include <optional>
#include <vector>

#include "freesum/rational.hpp"

namespace freesum {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  RatVector coefficients;
  Relation relation;
  Rational rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RatVector point;     // one value per variable; empty when infeasible
  Rational objective;  // valid only when Optimal
};

/// Dense two-phase simplex over the rationals. Pivoting follows Bland's rule,
/// so every run on the same input performs the same pivots.
/// Variables are free unless marked nonnegative.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_variables);

  std::size_t num_variables() const { return num_vars_; }
  std::size_t num_constraints() const { return rows_.size(); }

  void add(RatVector coefficients, Relation relation, Rational rhs);
  void add(const LinearConstraint& c) { add(c.coefficients, c.relation, c.rhs); }
  void require_nonnegative(std::size_t variable);

  LpSolution maximize(const RatVector& objective) const;
  LpSolution minimize(const RatVector& objective) const;
  /// Phase one only.
  LpSolution find_feasible() const;

 private:
  std::size_t num_vars_;
  std::vector<LinearConstraint> rows_;
  std::vector<bool> nonnegative_;
};

struct Feasibility {
  bool feasible = false;
  RatVector point;  // feasible point (free variables)
  /// Infeasibility certificate: one multiplier per constraint with
  /// lambda >= 0 on <= rows, lambda <= 0 on >= rows, free on = rows,
  /// sum lambda_i a_i = 0 and sum lambda_i b_i < 0.
  RatVector witness;
};

/// Feasibility of a system over free variables. The certificate is computed
/// only when `want_witness` is set, since it costs a second LP.
Feasibility lp_feasible(const std::vector<LinearConstraint>& constraints, bool want_witness = true);

/// Checks a certificate produced by lp_feasible.
bool is_farkas_witness(const std::vector<LinearConstraint>& constraints, const RatVector& witness);

/// A point in the relative interior of cone(generators) intersected with
/// conv(simplex), or nullopt if that set is empty.
std::optional<RatVector> relative_interior_point(const std::vector<RatVector>& cone_generators,
                                                 const std::vector<RatVector>& simplex);

struct SegmentIntersection {
  int dim = -1;                 // -1 empty, 0 a point, 1 a segment
  Rational t_min, t_max;        // parameter range on a + t (b - a), when nonempty
  std::optional<RatVector> point;  // the single point when dim == 0
};

/// Dimension of conv{a,b} intersected with conv(simplex). Requires a != b.
SegmentIntersection segment_face_intersection(const RatVector& a, const RatVector& b,
                                              const std::vector<RatVector>& simplex);

inline int segment_face_intersection_dim(const RatVector& a, const RatVector& b,
                                         const std::vector<RatVector>& simplex) {
  return segment_face_intersection(a, b, simplex).dim;
}

}  // namespace freesum
