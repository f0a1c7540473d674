#pragma once

#include <algorithm>
#include <optional>
#include <random>

#include "freesum/complex.hpp"

namespace fixtures {

using namespace freesum;

inline RatVector v(std::initializer_list<long> xs) {
  RatVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline ConfigPtr line(std::initializer_list<long> xs) {
  std::vector<Rational> vals;
  for (long x : xs) vals.emplace_back(x);
  return interval(vals);
}

inline CellSet cells(const Triangulation& t, std::initializer_list<Simplex> list) {
  CellSet out = 0;
  for (Simplex s : list) out |= cell_bit(t.index_of(s).value());
  return out;
}

// Hexagon of the worked example, fanned from (0,1): s1 = {1,2,3}, s2 = {1,3,4} (holds 0), s3 = {0,1,4}.
inline Triangulation hexagon() {
  const auto c = make_config({v({1, 0}), v({0, 1}), v({-1, 1}), v({-1, 0}), v({1, -1}), v({0, 0})});
  return Triangulation(c, {make_simplex({1, 2, 3}), make_simplex({1, 3, 4}), make_simplex({0, 1, 4})});
}
inline const Simplex hex_s1 = make_simplex({1, 2, 3});
inline const Simplex hex_s2 = make_simplex({1, 3, 4});
inline const Simplex hex_s3 = make_simplex({0, 1, 4});

// 3x3 grid, row by row from (-1,-1); t2 = {(-1,-1),(1,0),(0,1)} holds 0.
inline Triangulation grid() {
  std::vector<RatVector> pts;
  for (long y = -1; y <= 1; ++y)
    for (long x = -1; x <= 1; ++x) pts.push_back(v({x, y}));
  return Triangulation(make_config(pts), {make_simplex({0, 5, 7}), make_simplex({5, 7, 8}), make_simplex({0, 2, 5}),
                                          make_simplex({0, 6, 7})});
}
inline const Simplex grid_t1 = make_simplex({5, 7, 8});
inline const Simplex grid_t2 = make_simplex({0, 5, 7});
inline const Simplex grid_t3 = make_simplex({0, 6, 7});
inline const Simplex grid_t4 = make_simplex({0, 2, 5});

// Random configuration containing 0 as an interior point, triangulated by a random placing order.
inline std::optional<Triangulation> random_triangulation(std::mt19937& rng, std::size_t d, std::size_t n,
                                                         int range = 4) {
  std::uniform_int_distribution<int> coord(-range, range);
  std::uniform_int_distribution<int> den(1, 2);
  std::vector<RatVector> pts{RatVector(d)};
  while (pts.size() < n) {
    RatVector p(d);
    for (auto& x : p) x = make_rational(coord(rng), den(rng));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  auto c = make_config(pts);
  if (!c->origin_is_interior()) return std::nullopt;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  return placing_triangulation(c, order);
}

}  // namespace fixtures
