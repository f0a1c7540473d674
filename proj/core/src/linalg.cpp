#include "freesum/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace freesum {

namespace {

// Row-echelon form in place; returns the rank and the determinant sign/product
// bookkeeping through `det` (only meaningful for square input).
std::size_t eliminate(RatMatrix& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == rows) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != r) {
      std::swap(m[pivot], m[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (det && r < rows) *det = 0;
  return r;
}

Rational factorial(std::size_t k) {
  Rational f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

}  // namespace

Rational determinant(RatMatrix m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
  }
  if (m.empty()) return 1;
  Rational det;
  eliminate(m, &det);
  return det;
}

std::size_t rank(RatMatrix m) { return eliminate(m, nullptr); }

std::optional<RatVector> solve(RatMatrix a, RatVector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve needs a square matrix");
    a[i].push_back(b[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t j = c; j <= n; ++j) a[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

Rational simplex_volume(const std::vector<RatVector>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("simplex_volume of an empty vertex list");
  const std::size_t d = vertices[0].size();
  if (vertices.size() != d + 1) {
    throw std::invalid_argument("simplex_volume expects d+1 points in R^d");
  }
  RatMatrix edges;
  edges.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) edges.push_back(subtract(vertices[i], vertices[0]));
  return abs(determinant(std::move(edges))) / factorial(d);
}

Rational squared_simplex_volume(const std::vector<RatVector>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("squared_simplex_volume of an empty vertex list");
  const std::size_t k = vertices.size() - 1;
  if (k > vertices[0].size()) throw std::invalid_argument("more than d+1 points in R^d");
  std::vector<RatVector> edges;
  for (std::size_t i = 1; i <= k; ++i) edges.push_back(subtract(vertices[i], vertices[0]));
  RatMatrix gram(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(edges[i], edges[j]);
  }
  const Rational f = factorial(k);
  return determinant(std::move(gram)) / (f * f);
}

bool affinely_independent(const std::vector<RatVector>& points) {
  if (points.size() <= 1) return true;
  RatMatrix edges;
  for (std::size_t i = 1; i < points.size(); ++i) edges.push_back(subtract(points[i], points[0]));
  return rank(std::move(edges)) == points.size() - 1;
}

bool affine_hull_membership(const RatVector& x, const std::vector<RatVector>& generators) {
  if (generators.empty()) return false;
  RatMatrix edges;
  for (std::size_t i = 1; i < generators.size(); ++i) {
    edges.push_back(subtract(generators[i], generators[0]));
  }
  const std::size_t r = rank(edges);
  edges.push_back(subtract(x, generators[0]));
  return rank(std::move(edges)) == r;
}

std::optional<RatVector> affine_coordinates(const std::vector<RatVector>& vertices,
                                            const RatVector& x) {
  // Least-squares free approach: pick k independent coordinate rows of the
  // (d+1) x k system [v; 1] lambda = [x; 1] and check the rest.
  const std::size_t k = vertices.size();
  if (k == 0) return std::nullopt;
  const std::size_t d = x.size();
  RatMatrix sys(d + 1, RatVector(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) sys[i][j] = vertices[j][i];
    sys[i][k] = x[i];
  }
  for (std::size_t j = 0; j < k; ++j) sys[d][j] = 1;
  sys[d][k] = 1;

  // Gauss-Jordan on the augmented system.
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < k && r <= d; ++c) {
    std::size_t p = r;
    while (p <= d && sgn(sys[p][c]) == 0) ++p;
    if (p > d) continue;
    std::swap(sys[p], sys[r]);
    const Rational inv = 1 / sys[r][c];
    for (std::size_t j = c; j <= k; ++j) sys[r][j] *= inv;
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == r || sgn(sys[i][c]) == 0) continue;
      const Rational f = sys[i][c];
      for (std::size_t j = c; j <= k; ++j) sys[i][j] -= f * sys[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < k) throw std::invalid_argument("affine_coordinates: vertices are affinely dependent");
  for (std::size_t i = r; i <= d; ++i) {
    if (sgn(sys[i][k]) != 0) return std::nullopt;
  }
  RatVector lambda(k);
  for (std::size_t i = 0; i < r; ++i) lambda[pivot_col[i]] = sys[i][k];
  return lambda;
}

bool simplex_contains(const std::vector<RatVector>& vertices, const RatVector& x) {
  const auto lambda = affine_coordinates(vertices, x);
  if (!lambda) return false;
  for (const auto& l : *lambda) {
    if (sgn(l) < 0) return false;
  }
  return true;
}

Hyperplane hyperplane_through(const std::vector<RatVector>& points) {
  const std::size_t d = points.empty() ? 0 : points[0].size();
  if (points.size() != d || d == 0) {
    throw std::invalid_argument("hyperplane_through expects d points in R^d");
  }
  // Normal = cofactor expansion of det[x - p0; p1 - p0; ...] along the first row.
  RatMatrix edges;
  for (std::size_t i = 1; i < d; ++i) edges.push_back(subtract(points[i], points[0]));
  RatVector normal(d);
  for (std::size_t c = 0; c < d; ++c) {
    RatMatrix minor;
    for (const auto& e : edges) {
      RatVector row;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != c) row.push_back(e[j]);
      }
      minor.push_back(std::move(row));
    }
    normal[c] = ((c % 2) ? -1 : 1) * determinant(std::move(minor));
  }
  if (is_zero(normal)) throw std::invalid_argument("hyperplane_through: points are affinely dependent");
  Hyperplane h{normal, dot(normal, points[0])};
  return h;
}

int side_of(const std::vector<RatVector>& facet, const RatVector& x) {
  return sign(hyperplane_through(facet).evaluate(x));
}

RatVector barycenter(const std::vector<RatVector>& points) {
  RatVector c(points.at(0).size());
  for (const auto& p : points) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  }
  const Rational n = static_cast<unsigned long>(points.size());
  for (auto& x : c) x /= n;
  return c;
}

}  // namespace freesum
