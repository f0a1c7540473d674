#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freesum/complex.hpp"
#include "freesum/webs.hpp"

namespace freesum {

enum class Side { P, Q, Both };

const char* side_name(Side s);

struct CellSplit {
  Simplex p = 0;  // indices into the first summand
  Simplex q = 0;  // indices into the second summand
  int dim_p = -1;
  int dim_q = -1;
  bool origin_vertex = false;
};

/// Vertex partition of a cell of the sum; the origin goes to both parts.
CellSplit split_cell(const FreeSum& fs, Simplex c);

/// The summand data and webs a sum triangulation is built from. `orientation`
/// names the side whose star is pinned (P for a P-sum triangulation).
struct SumProvenance {
  Side orientation = Side::P;
  Triangulation tp;
  Triangulation tq;
  Web alpha;  // cells of tp -> cell sets of tq
  Web beta;   // cells of tq -> cell sets of tp
};

struct SumTriangulation {
  Triangulation triangulation;
  std::optional<SumProvenance> provenance;
};

/// sigma + facet for each facet on the boundary of alpha(sigma), and the same
/// with the roles swapped for beta. No validation.
Triangulation assemble_sum(const FreeSum& fs, const Triangulation& tp, const Triangulation& tq, const Web& alpha,
                           const Web& beta);

/// `web` goes from the `orientation` side to the other one and must be proper
/// with the star pinned; throws std::invalid_argument otherwise.
SumTriangulation construct_sum_triangulation(const FreeSum& fs, const SummandData& p, const SummandData& q,
                                             const Web& web, Side orientation = Side::P);

/// Both iff 0 is a vertex; otherwise the summand whose part of the st(0)
/// cells contains 0. Throws std::logic_error if st(0) cells disagree.
Side origin_part(const FreeSum& fs, const Triangulation& t);

struct DecomposeOptions {
  Side prefer = Side::P;  // orientation used when 0 is a vertex
  bool verify = true;
  std::size_t threads = 1;
};

struct DecomposeChecks {
  bool balls = true;          // each nonempty image is a strictly star-shaped ball
  bool order_preserving = true;
  bool compatible = true;     // beta is the complement transpose of alpha
  bool pinned = true;         // primary st(0) cells go to the other st(0)
  bool complementarity = true;
  bool round_trip = true;
  std::vector<std::string> problems;
  bool ok() const { return balls && order_preserving && compatible && pinned && complementarity && round_trip; }
};

struct Decomposition {
  Side side;
  SumProvenance sum;
  DecomposeChecks checks;
};

/// Summand triangulations from the full-dimensional parts, the uncovered ball
/// refined as a cone from 0, and the two webs read off from the links.
/// Throws std::invalid_argument if t fails verification.
Decomposition decompose(const FreeSum& fs, const Triangulation& t, const DecomposeOptions& options = {});

}  // namespace freesum
