#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "freesum/webs.hpp"

using namespace freesum;
using namespace fixtures;

namespace {

struct Example {
  SummandData p = make_summand_data(hexagon());
  SummandData q = make_summand_data(grid());
  std::size_t s1 = *p.tri.index_of(hex_s1), s2 = *p.tri.index_of(hex_s2), s3 = *p.tri.index_of(hex_s3);
  std::size_t t1 = *q.tri.index_of(grid_t1), t2 = *q.tri.index_of(grid_t2), t3 = *q.tri.index_of(grid_t3),
              t4 = *q.tri.index_of(grid_t4);

  Web alpha() const {
    Web a(3);
    a[s1] = cell_bit(t1) | cell_bit(t2) | cell_bit(t3);
    a[s2] = cell_bit(t2);
    a[s3] = cell_bit(t2) | cell_bit(t3) | cell_bit(t4);
    return a;
  }
};

// All order-preserving assignments of balls with the star cells pinned, by brute force.
std::uint64_t brute_force_count(const SummandData& p, const SummandData& q) {
  const std::size_t m = p.tri.size();
  const auto& balls = q.balls.balls();
  std::vector<std::size_t> choice(m, 0);
  std::uint64_t count = 0;
  for (;;) {
    Web alpha(m);
    for (std::size_t i = 0; i < m; ++i) alpha[i] = balls[choice[i]];
    if (satisfies_psum_condition(alpha, p, q) && is_web_of_stars(alpha, p, q) && is_proper(alpha, p, q)) ++count;
    std::size_t k = 0;
    while (k < m && ++choice[k] == balls.size()) choice[k++] = 0;
    if (k == m) return count;
  }
}

}  // namespace

TEST_CASE("worked example webs") {
  const Example ex;
  const Web alpha = ex.alpha();
  CHECK(is_order_preserving(alpha, ex.p.poset));
  CHECK(is_web_of_stars(alpha, ex.p, ex.q));
  CHECK(is_proper(alpha, ex.p, ex.q));
  CHECK(satisfies_psum_condition(alpha, ex.p, ex.q));

  const Web beta = complement_transpose(alpha, 4);
  CHECK(beta[ex.t1] == (cell_bit(ex.s2) | cell_bit(ex.s3)));
  CHECK(beta[ex.t2] == 0);
  CHECK(beta[ex.t3] == cell_bit(ex.s2));
  CHECK(beta[ex.t4] == (cell_bit(ex.s1) | cell_bit(ex.s2)));
  CHECK(complement_transpose(beta, 3) == alpha);

  Web swapped = alpha;
  std::swap(swapped[ex.s1], swapped[ex.s2]);
  const auto bad = order_violation(swapped, ex.p.poset);
  REQUIRE(bad);
  CHECK(bad->first == ex.s2);
  CHECK(ex.p.poset.precedes(ex.s2, ex.s1));
  CHECK((swapped[ex.s2] & ~swapped[ex.s1]) != 0);
}

TEST_CASE("constant star web") {
  const Example ex;
  const Web alpha(3, ex.q.star);
  CHECK(is_order_preserving(alpha, ex.p.poset));
  CHECK(is_proper(alpha, ex.p, ex.q));
  CHECK(satisfies_psum_condition(alpha, ex.p, ex.q));
  const Web beta = complement_transpose(alpha, 4);
  for (std::size_t tau = 0; tau < 4; ++tau) {
    CHECK(beta[tau] == (((ex.q.star >> tau) & 1U) ? CellSet{0} : ex.p.tri.all_cells()));
  }
}

TEST_CASE("one-dimensional line webs") {
  const auto q = make_summand_data(Triangulation(line({-1, 0, 1}), {make_simplex({0, 1}), make_simplex({1, 2})}));
  const auto p4 = line({-1, 0, 1, 2});
  const std::vector<std::vector<Simplex>> cases = {
      {make_simplex({0, 1}), make_simplex({1, 2}), make_simplex({2, 3})},  // (a)
      {make_simplex({0, 1}), make_simplex({1, 3})},                        // (b)
      {make_simplex({0, 2}), make_simplex({2, 3})},                        // (c)
      {make_simplex({0, 3})},                                              // (e)
  };
  for (const auto& cells : cases) {
    const auto p = make_summand_data(Triangulation(p4, cells));
    std::vector<Web> found;
    enumerate_proper_psum_webs(p, q, [&](const Web& w) {
      found.push_back(w);
      return true;
    });
    REQUIRE(found.size() == 1);
    CHECK(found[0] == Web(cells.size(), q.tri.all_cells()));
    CHECK(complement_transpose(found[0], 2) == Web(2, 0));
  }

  // (d): alpha = (empty, empty, everything) is a Q-sum web, not a P-sum one
  const auto pa = make_summand_data(Triangulation(p4, cases[0]));
  const auto qd = make_summand_data(Triangulation(line({-1, 0, 1}), {make_simplex({0, 2})}));
  const Web d = {0, 0, 1};
  CHECK_FALSE(satisfies_psum_condition(d, pa, qd));
  CHECK(complement_transpose(d, 1) == Web{pa.star});

  const auto single = make_summand_data(Triangulation(line({-1, 0, 1}), {make_simplex({0, 1}), make_simplex({1, 2})}));
  CHECK(count_proper_psum_webs(single, single) == 1);
}

TEST_CASE("enumerator matches brute force and obeys the structural identities") {
  std::mt19937 rng(77);
  int pairs = 0, improper_seen = 0;
  std::uint64_t total = 0;
  for (int trial = 0; trial < 80 && pairs < 40; ++trial) {
    const std::size_t d = 1 + trial % 2, e = 1 + (trial / 2) % 2;
    const auto tp = random_triangulation(rng, d, d + 2 + rng() % 3);
    const auto tq = random_triangulation(rng, e, e + 2 + rng() % 3);
    if (!tp || !tq) continue;
    const auto p = make_summand_data(*tp);
    const auto q = make_summand_data(*tq);
    if (std::pow(double(q.balls.size()), double(p.tri.size())) > 2e5) continue;
    ++pairs;
    std::uint64_t streamed = 0;
    enumerate_proper_psum_webs(p, q, [&](const Web& alpha) {
      ++streamed;
      CHECK(is_web_of_stars(alpha, p, q));
      CHECK(is_proper(alpha, p, q));
      CHECK(satisfies_psum_condition(alpha, p, q));
      const Web beta = complement_transpose(alpha, q.tri.size());
      CHECK(complement_transpose(beta, p.tri.size()) == alpha);
      for (std::size_t tau = 0; tau < q.tri.size(); ++tau) {
        if ((q.star >> tau) & 1U) CHECK(beta[tau] == 0);
      }
      return true;
    });
    CHECK(streamed == brute_force_count(p, q));
    total += streamed;

    // some order-preserving pinned web that is not proper, if any exists
    const auto& balls = q.balls.balls();
    for (CellSet b : balls) {
      Web alpha(p.tri.size(), b);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if ((p.star >> i) & 1U) alpha[i] = q.star;
      }
      if (is_web_of_stars(alpha, p, q) && !is_proper(alpha, p, q)) ++improper_seen;
    }
  }
  CHECK(pairs >= 20);
  CHECK(total > 0);
  MESSAGE("webs streamed: " << total << ", improper constant-style webs seen: " << improper_seen);
}

TEST_CASE("early stop") {
  const Example ex;
  int seen = 0;
  const auto stats = enumerate_proper_psum_webs(ex.p, ex.q, [&](const Web&) { return ++seen < 5; });
  CHECK(seen == 5);
  CHECK(stats.emitted == 5);
  CHECK(count_proper_psum_webs(ex.p, ex.q) == 64);
}

TEST_CASE("an order-preserving web whose complement transpose is not a web") {
  const auto pc = make_config({v({0, 0}), v({2, -1}), v({4, 2}), v({2, 1}), v({-1, 1}), v({-2, -1}),
                               RatVector{Rational(3, 2), Rational(3)}, v({-4, 0})});
  const auto p = make_summand_data(Triangulation(
      pc, {make_simplex({0, 1, 3}), make_simplex({0, 1, 5}), make_simplex({0, 3, 6}), make_simplex({0, 5, 6}),
           make_simplex({1, 2, 3}), make_simplex({2, 3, 6}), make_simplex({5, 6, 7})}));
  const auto qc = make_config({v({0, 0}), v({4, 4}), RatVector{Rational(2), Rational(1, 2)}, v({-3, -2}), v({-1, 3})});
  const auto q = make_summand_data(Triangulation(qc, {make_simplex({1, 2, 3}), make_simplex({1, 3, 4})}));
  REQUIRE(verify_triangulation(p.tri).ok);
  REQUIRE(verify_triangulation(q.tri).ok);

  Web alpha(p.tri.size(), q.tri.all_cells());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if ((p.star >> i) & 1U) alpha[i] = q.star;
  }
  alpha[*p.tri.index_of(make_simplex({1, 2, 3}))] = q.star;
  CHECK(is_web_of_stars(alpha, p, q));
  CHECK(satisfies_psum_condition(alpha, p, q));
  CHECK_FALSE(is_proper(alpha, p, q));
  // beta of the outer triangle: the star of 0 plus {1,2,3}, which is not strictly star shaped
  const Web beta = complement_transpose(alpha, 2);
  const CellSet outer = beta[*q.tri.index_of(make_simplex({1, 3, 4}))];
  CHECK(outer == (p.star | cell_bit(*p.tri.index_of(make_simplex({1, 2, 3})))));
  CHECK_FALSE(p.balls.contains(outer));
}
