#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "freesum/enumerate.hpp"
#include "freesum/io.hpp"

using namespace freesum;
using namespace fixtures;

namespace {

void check_error(std::string_view text, std::size_t line, std::size_t column, const std::string& part) {
  try {
    parse_points(text);
    FAIL("accepted: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
    CHECK(e.message().find(part) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("point matrices") {
  const auto c = parse_points("[[1,0],[0,1],[0,0]]");
  CHECK(c->size() == 3);
  CHECK(c->dim() == 2);
  CHECK(c->point(1) == v({0, 1}));
  const auto h = parse_points("[[1/2,0]]");
  CHECK(h->point(0)[0] == make_rational(1, 2));
  const auto plain = parse_points("# hexagon\n1 0\n0 1\n-1 1 # third\n\n-1, 0\n");
  CHECK(plain->size() == 4);
  CHECK(plain->point(3) == v({-1, 0}));
  CHECK(parse_points(" [ [ 2/4 , -3 ]\n, [1,1] ] ")->point(0) == RatVector{make_rational(1, 2), Rational(-3)});
}

TEST_CASE("point errors carry positions") {
  check_error("[[1,0],[0,1,2]]", 1, 8, "dimension");
  check_error("[[1,0],\n [0,x]]", 2, 5, "expected a number");
  check_error("[[1,0],[1/0,1]]", 1, 9, "zero denominator");
  check_error("1 0\n0 1\n1 0\n", 3, 1, "duplicate");
  check_error("1 0\n0 1 1\n", 2, 1, "dimension");
  check_error("[[1,0]] extra", 1, 9, "trailing");
  check_error("", 1, 1, "no points");
  check_error("[[1,0],", 1, 8, "end of input");
}

TEST_CASE("triangulation files") {
  const auto c = line({-1, 0, 1});
  const auto t = parse_triangulation("{{0,1},{1,2}}", c);
  CHECK(t.size() == 2);
  CHECK(t.cell(0) == make_simplex({0, 1}));
  CHECK(format_triangulation(t) == "{{0,1},{1,2}}");
  const auto many = parse_triangulations("T[1]:=[0,3:{{0,1},{1,2}}];\nT[2]:=[0,3:{{0,2}}];\n", c);
  REQUIRE(many.size() == 2);
  CHECK(many[1].cell(0) == make_simplex({0, 2}));
  CHECK(parse_triangulations("# nothing\n", c).empty());
}

TEST_CASE("triangulation errors") {
  const auto c = line({-1, 0, 1});
  auto fails = [&](std::string_view text, std::size_t line, std::size_t column, const std::string& part) {
    try {
      parse_triangulations(text, c);
      FAIL("accepted: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
      CHECK(e.message().find(part) != std::string::npos);
    }
  };
  fails("{{0,1},{1,3}}", 1, 8, "out of range");
  fails("{{0,1},\n{1,2,0}}", 2, 1, "vertices in dimension");
  fails("{{0,0}}", 1, 2, "repeated");
  fails("{{0,1}{1,2}}", 1, 7, "expected ','");
  fails("{{}}", 1, 3, "empty cell");
  CHECK_THROWS_AS(parse_triangulation("{{0,1}} {{1,2}}", c), ParseError);
}

TEST_CASE("round trips") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = random_triangulation(rng, 1 + trial % 3, 4 + trial % 4);
    if (!t) continue;
    const std::string pts = format_points(t->config());
    const auto back = parse_points(pts);
    CHECK(*back == t->config());
    CHECK(format_points(*back) == pts);
    const std::string tri = format_triangulation(*t);
    const auto again = parse_triangulation(tri, back);
    CHECK(again == *t);
    CHECK(format_triangulation(again) == tri);
  }
  const auto all = brute_force_triangulations(dp(2));
  std::string text;
  for (const auto& t : all) text += format_triangulation(t) + "\n";
  CHECK(parse_triangulations(text, dp(2)) == all);
  CHECK(format_points(*parse_points("[[1,0],[0,1],[0,0]]")) == "[[1,0],\n [0,1],\n [0,0]]\n");
}
