// One PASS/FAIL line per acceptance criterion on stdout; details on stderr.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "line_cases.hpp"
#include "fixtures.hpp"
#include "freesum/census.hpp"
#include "freesum/enumerate.hpp"
#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"
#include "freesum/sumtri.hpp"
#include "freesum/symmetry.hpp"
#include "freesum/webs.hpp"

using namespace freesum;
using namespace fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) summary << "failed: ";
      else summary << "; ";
      summary << what;
      pass = false;
    }
  }
};

std::vector<Triangulation> all_of(const ConfigPtr& c) {
  EnumerateOptions o;
  o.max_dim = 4;
  o.max_points = 12;
  return brute_force_triangulations(c, o);
}

RatVector random_direction(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> coord(-60, 60);
  for (;;) {
    RatVector r(d);
    for (auto& x : r) x = make_rational(coord(rng), 1 + static_cast<long>(rng() % 7));
    if (!is_zero(r)) return r;
  }
}

// 1. the six triangulations of {-1,0,1,2} + {-1,0,1}
void exhaustive_line(Outcome& o) {
  const auto start = Clock::now();
  const Line L({-1, 0, 1, 2}, {-1, 0, 1});
  const auto all = brute_force_triangulations(L.fs.sum);
  o.require(all.size() == 6, "expected 6 triangulations, found " + std::to_string(all.size()));
  const auto cases = line_cases(L);
  std::set<std::size_t> matched;
  for (const auto& t : all) {
    o.require(verify_triangulation(t).ok, "a triangulation fails verification");
    const Decomposition d = decompose(L.fs, t);
    o.require(d.checks.ok(), "decomposition checks fail");
    const SumTriangulation back = construct_sum_triangulation(
        L.fs, make_summand_data(d.sum.tp), make_summand_data(d.sum.tq),
        d.sum.orientation == Side::P ? d.sum.alpha : d.sum.beta, d.sum.orientation);
    o.require(back.triangulation == t, "construct after decompose is not the identity");
    bool found = false;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const Case& c = cases[k];
      if (d.side == c.side && d.sum.orientation == c.orientation && d.sum.tp == c.tp && d.sum.tq == c.tq &&
          d.sum.alpha == c.alpha && d.sum.beta == c.beta) {
        matched.insert(k);
        found = true;
      }
    }
    o.require(found, "a decomposition matches no table");
  }
  o.require(matched.size() == 6, "not every table is realized");
  const double s = since(start);
  o.require(s < 1.0, "took " + std::to_string(s) + " s");
  o.summary << (o.pass ? "" : " | ") << all.size() << " triangulations, " << matched.size()
            << " tables matched, round trips exact [" << s << " s]";
}

// 2. the hexagon and grid example
void hexagon_example(Outcome& o) {
  const auto start = Clock::now();
  const SummandData p = make_summand_data(hexagon());
  const SummandData q = make_summand_data(grid());
  const FreeSum fs = free_sum(p.tri.config_ptr(), q.tri.config_ptr());
  Web alpha(3);
  const auto t = [&](Simplex s) { return cell_bit(*q.tri.index_of(s)); };
  alpha[*p.tri.index_of(hex_s1)] = t(grid_t1) | t(grid_t2) | t(grid_t3);
  alpha[*p.tri.index_of(hex_s2)] = t(grid_t2);
  alpha[*p.tri.index_of(hex_s3)] = t(grid_t2) | t(grid_t3) | t(grid_t4);
  const SumTriangulation st = construct_sum_triangulation(fs, p, q, alpha);
  const std::size_t cells = st.triangulation.size();
  const int vertices = simplex_size(st.triangulation.used_points());
  o.require(cells == 24, "cells = " + std::to_string(cells));
  o.require(vertices == 11, "vertices = " + std::to_string(vertices));
  o.require(verify_triangulation(st.triangulation).ok, "verification fails");
  const double s = since(start);
  o.require(s < 1.0, "took " + std::to_string(s) + " s");
  o.summary << (o.pass ? "" : " | ") << cells << " cells, " << vertices << " vertices, verified [" << s << " s]";
}

std::string optional_count(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "-"; }

void census_line(std::ostream& out, const CountReport& r) {
  out << "homomorphisms=" << r.homomorphisms << " (" << kHomomorphismConvention << ")"
      << ", sum triangulations up to Aut(P+Q)=" << optional_count(r.distinct_full)
      << " [regular " << optional_count(r.regular_full) << "]"
      << ", up to Aut(P)xAut(Q)=" << optional_count(r.distinct_product)
      << " [regular " << optional_count(r.regular_product) << "]";
}

// 3.
void dp2_cross4(Outcome& o) {
  const auto p = dp(2), q = cross(4);
  CensusOptions opt;
  opt.materialize = true;
  const CountReport r = census(p, q, all_of(p), all_of(q), opt);
  o.require(r.homomorphisms == 16, "homomorphisms = " + std::to_string(r.homomorphisms));
  o.require(r.distinct_full == 13u, "distinct sum triangulations differ from 13");
  census_line(o.summary << (o.pass ? "" : " | "), r);
  o.summary << "; reference 13 [" << r.seconds << " s]";
}

// 4.
void dp2_dp2(Outcome& o) {
  const auto p = dp(2);
  const auto list = all_of(p);
  CensusOptions opt;
  opt.materialize = true;
  const CountReport r = census(p, p, list, list, opt);
  o.require(r.homomorphisms == 1157, "homomorphisms = " + std::to_string(r.homomorphisms));
  o.require(r.seconds < 1800, "slower than 30 min");
  census_line(o.summary << (o.pass ? "" : " | "), r);
  o.summary << "; reference 204 [" << r.seconds << " s]";
}

// 5.
void stretch(Outcome& o) {
  const auto p = dp(2), q = dp_minus(4);
  CensusOptions opt;
  opt.q_sum = false;
  opt.all_conventions = false;
  opt.memory_budget = std::uint64_t{4} << 30;
  const CountReport r = census(p, q, all_of(p), all_of(q), opt);
  o.require(!r.aborted, "aborted: " + r.abort_reason);
  o.require(r.homomorphisms == 1581647, "homomorphisms = " + std::to_string(r.homomorphisms));
  o.require(r.peak_rss < opt.memory_budget, "peak RSS over 4 GiB");
  o.summary << (o.pass ? "" : " | ") << "homomorphisms=" << r.homomorphisms << " over " << r.p_classes << "x"
            << r.q_classes << " classes, count-only, peak RSS " << (r.peak_rss >> 20) << " MiB of 4096 [" << r.seconds
            << " s]";
}

// 6.
void symmetry(Outcome& o) {
  const auto start = Clock::now();
  const std::size_t a = automorphism_group(*dp(2)).order();
  const std::size_t b = automorphism_group(*dp(4)).order();
  const std::size_t c = automorphism_group(*free_sum(dp(2), dp(4)).sum).order();
  o.require(a == 12, "|Aut DP(2)| = " + std::to_string(a));
  o.require(b == 240, "|Aut DP(4)| = " + std::to_string(b));
  o.require(c == 2880, "|Aut DP(2)+DP(4)| = " + std::to_string(c));
  const double s = since(start);
  o.require(s < 60, "slower than a minute");
  o.summary << (o.pass ? "" : " | ") << "orders " << a << ", " << b << ", " << c << " [" << s << " s]";
}

// 7.
void oracle(Outcome& o) {
  const auto start = Clock::now();
  std::mt19937 rng(2024);
  std::size_t configs = 0, pairs = 0, disagreements = 0;
  while (configs < 500) {
    const std::size_t d = 1 + configs % 3;
    const std::size_t n = std::min<std::size_t>(8, d + 2 + rng() % 6);
    const auto t = random_triangulation(rng, d, n, 3);
    if (!t) continue;
    ++configs;
    for (Simplex a : t->cells()) {
      for (Simplex b : t->cells()) {
        if (a == b) continue;
        ++pairs;
        if (stabbing_compare_tree(*t, a, b) != stabbing_compare_lp(*t, a, b)) ++disagreements;
      }
    }
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.summary << (o.pass ? "" : " | ") << configs << " configurations, " << pairs << " ordered cell pairs, "
            << disagreements << " disagreements [" << since(start) << " s]";
}

// 8.
void star_balls(Outcome& o) {
  const auto start = Clock::now();
  std::mt19937 rng(808);
  std::vector<Triangulation> pool;
  auto take = [&](const std::vector<Triangulation>& list) {
    for (const auto& t : list)
      if (t.size() <= 6) pool.push_back(t);
  };
  take(all_of(dp(2)));
  take(all_of(cross(3)));
  take(all_of(line({-2, -1, 0, 1, 2, 3})));
  for (int k = 0; k < 40; ++k) {
    const std::size_t d = 2 + k % 2;
    const auto t = random_triangulation(rng, d, d + 2 + rng() % 3, 3);
    if (!t) continue;
    EnumerateOptions e;
    e.max_dim = 3;
    take(brute_force_triangulations(t->config_ptr(), e));
  }
  std::size_t balls = 0, rays = 0, bad_rays = 0, mismatches = 0;
  for (const auto& t : pool) {
    const auto fast = enumerate_star_balls(t);
    if (!(fast == enumerate_star_balls_brute_force(t))) ++mismatches;
    for (CellSet b : fast.balls()) {
      if (!b) continue;
      ++balls;
      for (int k = 0; k < 100; ++k) {
        ++rays;
        if (boundary_crossings(t, b, random_direction(rng, t.config().dim())) != 1) ++bad_rays;
      }
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " enumeration mismatches");
  o.require(bad_rays == 0, std::to_string(bad_rays) + " rays crossing more than once");
  o.summary << (o.pass ? "" : " | ") << pool.size() << " triangulations, " << balls << " balls, " << rays
            << " rays, " << mismatches << " mismatches [" << since(start) << " s]";
}

// 9.
void construction_suite(Outcome& o) {
  const auto start = Clock::now();
  std::mt19937 rng(99);
  std::size_t pairs = 0, webs = 0, bad_construct = 0, bad_round_trip = 0;
  while (pairs < 100) {
    const std::size_t dp_ = 1 + pairs % 2, dq = 1 + (pairs / 2) % 2;
    const auto tp = random_triangulation(rng, dp_, dp_ + 3 + rng() % 3, 3);
    const auto tq = random_triangulation(rng, dq, dq + 3 + rng() % 3, 3);
    if (!tp || !tq) continue;
    ++pairs;
    const SummandData p = make_summand_data(*tp);
    const SummandData q = make_summand_data(*tq);
    const FreeSum fs = free_sum(tp->config_ptr(), tq->config_ptr());
    enumerate_proper_psum_webs(p, q, [&](const Web& w) {
      ++webs;
      const SumTriangulation st = construct_sum_triangulation(fs, p, q, w);
      if (!verify_triangulation(st.triangulation).ok) {
        ++bad_construct;
        return true;
      }
      DecomposeOptions opt;
      opt.prefer = Side::P;
      const Decomposition d = decompose(fs, st.triangulation, opt);
      if (!d.checks.ok() || assemble_sum(fs, d.sum.tp, d.sum.tq, d.sum.alpha, d.sum.beta) != st.triangulation) {
        ++bad_round_trip;
      }
      return true;
    });
  }
  o.require(bad_construct == 0, std::to_string(bad_construct) + " constructions fail verification");
  o.require(bad_round_trip == 0, std::to_string(bad_round_trip) + " decompositions do not round-trip");
  o.summary << (o.pass ? "" : " | ") << pairs << " summand pairs, " << webs << " proper webs, " << bad_construct
            << " bad constructions, " << bad_round_trip << " bad round trips [" << since(start) << " s]";
}

std::string table_text(const OrderingTable& c) {
  std::ostringstream s;
  s << "regular&ordered=" << c.regular_ordered << " regular&unordered=" << c.regular_unordered
    << " nonregular&ordered=" << c.nonregular_ordered << " nonregular&unordered=" << c.nonregular_unordered;
  return s.str();
}

// 10.
void regularity(Outcome& o) {
  const auto start = Clock::now();
  const Line L({-2, -1, 0, 1, 2}, {-2, -1, 0, 1, 2});
  const auto tp = L.tp({{-2, -1}, {-1, 0}, {0, 1}, {1, 2}});
  const auto tq = L.tq({{-2, -1}, {-1, 0}, {0, 1}, {1, 2}});
  const Web alpha = table(tp, tq,
                          {{L.ps(-2, -1), {L.qs(-1, 0), L.qs(0, 1), L.qs(1, 2)}},
                           {L.ps(-1, 0), {L.qs(-1, 0), L.qs(0, 1)}},
                           {L.ps(0, 1), {L.qs(-1, 0), L.qs(0, 1)}},
                           {L.ps(1, 2), {L.qs(-2, -1), L.qs(-1, 0), L.qs(0, 1)}}});
  const auto st = construct_sum_triangulation(L.fs, make_summand_data(tp), make_summand_data(tq), alpha);
  const bool example_regular = is_regular(st.triangulation).regular;
  o.require(!example_regular, "the example is reported regular");

  std::mt19937 rng(50);
  std::size_t placing = 0, regular = 0;
  while (placing < 50) {
    const std::size_t d = 1 + placing % 3;
    const auto t = random_triangulation(rng, d, d + 2 + rng() % 5, 4);
    if (!t) continue;
    ++placing;
    regular += is_regular(*t).regular ? 1 : 0;
  }
  o.require(regular == placing, std::to_string(placing - regular) + " placing triangulations reported non-regular");

  CensusOptions opt;
  opt.materialize = true;
  const auto lp = line({-1, 0, 1, 2}), lq = line({-1, 0, 1});
  const CountReport one = census(lp, lq, all_of(lp), all_of(lq), opt);
  const CountReport two = census(dp(2), cross(4), all_of(dp(2)), all_of(cross(4)), opt);
  o.summary << (o.pass ? "" : " | ") << "example non-regular, " << regular << "/" << placing
            << " placing triangulations regular; regular vs ordered images (data only, per class / per web):"
            << " line family {" << table_text(*one.ordering_classes) << " / " << table_text(*one.ordering)
            << "}, DP(2)+cross(4) {" << table_text(*two.ordering_classes) << " / " << table_text(*two.ordering)
            << "} ["
            << since(start) << " s]";
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  bool skip_stretch = false;
  app.add_option("--only", only, "Run only these criteria");
  app.add_flag("--skip-stretch", skip_stretch, "Leave out criterion 5");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "1-D exhaustive classification", exhaustive_line},
      {2, "hexagon example", hexagon_example},
      {3, "DP(2)+cross(4) census", dp2_cross4},
      {4, "DP(2)+DP(2) census", dp2_dp2},
      {5, "DP(2)+DP-(4) census (stretch)", stretch},
      {6, "automorphism group orders", symmetry},
      {7, "stabbing tree vs LP oracle", oracle},
      {8, "star-ball soundness", star_balls},
      {9, "construction and decomposition suite", construction_suite},
      {10, "regularity and the ordered-images experiment", regularity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    if (skip_stretch && c.id == 5) {
      std::cout << "SKIP " << c.id << " " << c.name << "\n" << std::flush;
      continue;
    }
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << o.summary.str() << "\n"
              << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
