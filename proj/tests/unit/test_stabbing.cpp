#include <random>

#include "doctest.h"
#include "freesum/linalg.hpp"
#include "freesum/stabbing.hpp"

using namespace freesum;

namespace {

RatVector v(std::initializer_list<long> xs) {
  RatVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

ConfigPtr line(std::initializer_list<long> xs) {
  std::vector<Rational> vals;
  for (long x : xs) vals.emplace_back(x);
  return interval(vals);
}

// Example hexagon: fan from (0,1).
Triangulation hexagon() {
  const auto c = make_config({v({1, 0}), v({0, 1}), v({-1, 1}), v({-1, 0}), v({1, -1}), v({0, 0})});
  return Triangulation(c, {make_simplex({1, 2, 3}), make_simplex({1, 3, 4}), make_simplex({0, 1, 4})});
}

ConfigPtr random_config(std::mt19937& rng, std::size_t d, std::size_t n) {
  std::uniform_int_distribution<int> coord(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (;;) {
    std::vector<RatVector> pts;
    while (pts.size() < n) {
      RatVector p(d);
      for (auto& x : p) x = make_rational(coord(rng), den(rng));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    auto c = make_config(pts);
    if (c->spans()) return c;
  }
}

}  // namespace

TEST_CASE("one-dimensional comparisons") {
  const auto c = line({-1, 0, 1, 2});
  const Triangulation t(c, {make_simplex({0, 1}), make_simplex({1, 2}), make_simplex({2, 3})});
  const Simplex left = make_simplex({0, 1}), mid = make_simplex({1, 2}), right = make_simplex({2, 3});
  CHECK(stabbing_compare_tree(t, mid, right));
  CHECK_FALSE(stabbing_compare_tree(t, right, mid));
  CHECK_FALSE(stabbing_compare_tree(t, left, mid));
  CHECK_FALSE(stabbing_compare_tree(t, mid, left));
  // Every separator of [-1,0] and [1,2] lies in [0,1], so [-1,0] stays on the
  // origin's side and x = 1/2 separates strictly.
  CHECK(stabbing_compare_tree(t, left, right));
  CHECK(stabbing_compare_lp(t, left, right));
  CHECK_FALSE(stabbing_compare_tree(t, right, left));
  // the flowchart read literally misses this relation
  CHECK_FALSE(stabbing_compare_tree(t, left, right, TreeMode::Literal));
  CHECK_THROWS_AS(stabbing_compare_tree(t, left, left), std::invalid_argument);
  CHECK_THROWS_AS(stabbing_compare_tree(t, left, make_simplex({0, 3})), std::invalid_argument);
}

TEST_CASE("LP oracle on the separation examples") {
  const auto c = line({-1, 0, 1, 2});
  const Triangulation t(c, {make_simplex({0, 1}), make_simplex({1, 2}), make_simplex({2, 3})});
  CHECK(stabbing_compare_lp(t, make_simplex({1, 2}), make_simplex({2, 3})));
  CHECK_FALSE(stabbing_compare_lp(t, make_simplex({2, 3}), make_simplex({1, 2})));
  CHECK_FALSE(stabbing_compare_lp(t, make_simplex({2, 3}), make_simplex({0, 1})));
}

TEST_CASE("posets of segment triangulations") {
  const auto c = line({-1, 0, 1, 2});
  const Triangulation t(c, {make_simplex({0, 1}), make_simplex({1, 2}), make_simplex({2, 3})});
  const auto p = build_stabbing_poset(t);
  // cells: [-1,0]=0, [0,1]=1, [1,2]=2
  CHECK(p.minimal() == (cell_bit(0) | cell_bit(1)));
  CHECK(p.hasse_edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 2}});
  const auto lit = build_stabbing_poset(t, {TreeMode::Literal, 1});
  CHECK(lit.hasse_edges() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}});

  const auto c5 = line({-2, -1, 0, 1, 2});
  const Triangulation t5(c5, {make_simplex({0, 1}), make_simplex({1, 2}), make_simplex({2, 3}),
                              make_simplex({3, 4})});
  const auto p5 = build_stabbing_poset(t5, {TreeMode::Literal, 1});
  CHECK(p5.hasse_edges() == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {2, 3}});
  const auto d5 = build_stabbing_poset(t5);
  CHECK(d5.precedes(1, 3));
  CHECK(d5.precedes(2, 0));
  CHECK_FALSE(d5.precedes(0, 3));
  CHECK_FALSE(d5.precedes(3, 0));
  const auto ext = d5.linear_extension();
  CHECK(ext.size() == 4);
  CHECK(ext[0] == 1);
  CHECK(ext[1] == 2);
}

TEST_CASE("hexagon cells") {
  const auto t = hexagon();
  const Simplex s1 = make_simplex({1, 2, 3}), s2 = make_simplex({1, 3, 4}), s3 = make_simplex({0, 1, 4});
  CHECK(stabbing_compare_tree(t, s2, s1));
  CHECK(stabbing_compare_tree(t, s2, s3));
  CHECK_FALSE(stabbing_compare_tree(t, s1, s3));
  CHECK_FALSE(stabbing_compare_tree(t, s3, s1));
  const auto p = build_stabbing_poset(t);
  CHECK(p.minimal() == cell_bit(*t.index_of(s2)));
}

TEST_CASE("tree agrees with the LP oracle and yields stabbing rays") {
  std::mt19937 rng(31);
  int comparisons = 0, related = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::size_t n = d + 1 + rng() % (8 - d);
    const auto c = random_config(rng, d, n);
    const auto t = placing_triangulation(c);
    const RatVector zero(d);
    for (Simplex s : t.cells()) {
      for (Simplex u : t.cells()) {
        if (s == u) continue;
        ++comparisons;
        const bool tree = stabbing_compare_tree(t, s, u);
        CHECK_MESSAGE(tree == stabbing_compare_lp(t, s, u), "trial " << trial);
        const auto ray = stabbing_ray(t, s, u);
        CHECK(ray.has_value() == tree);
        if (ray) {
          ++related;
          CHECK(simplex_contains(c->coords(u), ray->r));
          CHECK(simplex_contains(c->coords(s), scale(ray->r, ray->lambda)));
          CHECK(sgn(ray->lambda) >= 0);
          CHECK(ray->lambda < 1);
        }
      }
    }
  }
  CHECK(comparisons > 500);
  CHECK(related > 20);
}

TEST_CASE("cells containing 0 are exactly the minimal ones") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 3;
    auto c = random_config(rng, d, d + 2 + rng() % 4);
    auto pts = c->points();
    if (!c->origin_index()) pts.push_back(RatVector(d));
    c = make_config(pts);
    if (!c->origin_is_interior()) continue;
    const auto t = placing_triangulation(c);
    const auto p = build_stabbing_poset(t, {TreeMode::Definition, 1, false});
    CellSet at_zero = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (simplex_contains(c->coords(t.cell(i)), RatVector(d))) at_zero |= cell_bit(i);
    }
    CHECK_MESSAGE(p.minimal() == at_zero, "trial " << trial);
  }
}

TEST_CASE("the stabbing relation need not be transitive") {
  // A < B < C while x = -1 separates A from C with 0 on C's side.
  const auto c = make_config({v({2, 4}), v({-2, -2}), v({-1, -1}), v({-4, 2}), RatVector{Rational(2, 3), Rational(1)},
                              RatVector{Rational(1), Rational(2, 3)}, RatVector{Rational(3, 2), Rational(-1, 3)},
                              v({1, -2}), v({0, 0})});
  const Triangulation t(c, {make_simplex({0, 3, 4}), make_simplex({0, 4, 5}), make_simplex({0, 5, 6}),
                            make_simplex({1, 2, 3}), make_simplex({1, 2, 5}), make_simplex({1, 5, 7}),
                            make_simplex({2, 3, 8}), make_simplex({2, 5, 8}), make_simplex({3, 4, 5}),
                            make_simplex({3, 5, 8}), make_simplex({5, 6, 7})});
  REQUIRE(verify_triangulation(t).ok);
  const Simplex a = make_simplex({1, 2, 3}), b = make_simplex({1, 5, 7}), cc = make_simplex({0, 5, 6});
  CHECK(stabbing_compare_lp(t, a, b));
  CHECK(stabbing_compare_lp(t, b, cc));
  CHECK_FALSE(stabbing_compare_lp(t, a, cc));
  CHECK_FALSE(stabbing_compare_lp(t, cc, a));
  CHECK_THROWS_AS(build_stabbing_poset(t), PosetError);
  try {
    build_stabbing_poset(t);
  } catch (const PosetError& e) {
    CHECK(e.witness().size() == 3);
  }
  const auto relaxed = build_stabbing_poset(t, {TreeMode::Definition, 1, false});
  CHECK_FALSE(relaxed.is_transitive());
  CHECK(relaxed.precedes(*t.index_of(a), *t.index_of(b)));
  CHECK(relaxed.linear_extension().size() == t.size());
}
