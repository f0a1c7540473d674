#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace freesum {

// Exact rationals; GMP keeps every value in lowest terms with a positive
// denominator after each arithmetic operation.
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Parses "7", "-3", "1/2" or "-4/6" (normalized to -2/3).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// num/den in lowest terms (mpq_class(num, den) alone does not reduce).
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "[a,b,c]" with every entry normalized.
std::string to_string(const RatVector& v);

inline int sign(const Rational& x) { return sgn(x); }

RatVector add(const RatVector& a, const RatVector& b);
RatVector subtract(const RatVector& a, const RatVector& b);
RatVector scale(const RatVector& a, const Rational& factor);
Rational dot(const RatVector& a, const RatVector& b);
bool is_zero(const RatVector& v);

/// An affine hyperplane {x : normal . x = offset}.
struct Hyperplane {
  RatVector normal;
  Rational offset;

  /// normal . x - offset
  Rational evaluate(const RatVector& x) const { return dot(normal, x) - offset; }
  bool is_linear() const { return sign(offset) == 0; }
};

}  // namespace freesum
