#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freesum/complex.hpp"

namespace freesum {

/// Proper webs for one orientation, counted four ways. Summand triangulations
/// are orbit representatives; orbits of webs are taken under the stabilizer of
/// the source triangulation, of the target triangulation, or of both.
struct ConventionCounts {
  std::uint64_t raw = 0;
  std::uint64_t source_orbits = 0;
  std::uint64_t target_orbits = 0;
  std::uint64_t pair_orbits = 0;

  ConventionCounts& operator+=(const ConventionCounts& o);
};

/// The convention that reproduces the reference homomorphism counts.
inline constexpr const char* kHomomorphismConvention = "p_sum.target_orbits";

struct PairCount {
  std::size_t p_index = 0;
  std::size_t q_index = 0;
  ConventionCounts p_sum;
  ConventionCounts q_sum;
};

/// Sum triangulations by regularity and by whether both summands are regular
/// with the images of alpha and of beta forming chains. Counted per web, or
/// per class where a class is ordered when one of its webs is.
struct OrderingTable {
  std::uint64_t regular_ordered = 0;
  std::uint64_t regular_unordered = 0;
  std::uint64_t nonregular_ordered = 0;
  std::uint64_t nonregular_unordered = 0;
};

struct CountReport {
  std::size_t p_classes = 0;
  std::size_t q_classes = 0;
  std::size_t p_group = 0;
  std::size_t q_group = 0;
  std::size_t product_group = 0;
  std::size_t full_group = 0;
  ConventionCounts p_sum;
  ConventionCounts q_sum;
  std::uint64_t homomorphisms = 0;  // p_sum.target_orbits
  // filled when triangulations are materialized
  std::optional<std::uint64_t> distinct_product;  // sum triangulations up to Aut(P) x Aut(Q)
  std::optional<std::uint64_t> distinct_full;     // up to Aut(P + Q)
  std::optional<std::uint64_t> regular_product;
  std::optional<std::uint64_t> regular_full;
  std::optional<OrderingTable> ordering;          // per web, both orientations
  std::optional<OrderingTable> ordering_classes;  // per class under Aut(P + Q)
  std::vector<PairCount> pairs;
  bool aborted = false;
  std::string abort_reason;
  std::uint64_t memory_estimate = 0;  // bytes held by stored keys
  std::uint64_t peak_rss = 0;         // bytes, process high-water mark; 0 if unknown
  double seconds = 0;
};

struct CensusOptions {
  std::size_t threads = 1;
  bool q_sum = true;            // also count webs from the second summand
  bool all_conventions = true;  // also source and pair orbits
  bool materialize = false;     // build the sum triangulations and test regularity
  std::uint64_t memory_budget = 0;  // bytes; 0 for no limit
  bool sample_rss = true;                     // also hold the process peak RSS to the budget
  std::uint64_t rss_check_interval = 1 << 16;  // webs between samples
};

/// Peak resident set size of this process in bytes, 0 where unsupported.
std::uint64_t peak_rss_bytes();

/// Streams all proper pinned webs for every pair of representatives. The
/// lists are reduced modulo the summand symmetry groups first. The memory
/// budget bounds both the stored keys and the sampled peak RSS of the
/// process; once exceeded the run stops and the partial counts are returned
/// with `aborted` set.
CountReport census(const ConfigPtr& p, const ConfigPtr& q, const std::vector<Triangulation>& p_list,
                   const std::vector<Triangulation>& q_list, const CensusOptions& options = {});

}  // namespace freesum
