#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freesum/complex.hpp"

namespace freesum {

/// Malformed input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_, column_;
};

/// Either a bracketed matrix "[[1,0],[0,1/2]]" or plain rows of numbers
/// separated by blanks or commas. '#' starts a comment.
ConfigPtr parse_points(std::string_view text);

/// One point per row: "[[1,0],\n [0,1]]\n".
std::string format_points(const PointConfiguration& c);

/// Every top-level "{{..},{..}}" group in the text, in order. Text between
/// groups is skipped, so tool output such as "T[1]:=[0,6:{{0,1,2}}];" loads
/// as is. Indices are 0-based and each cell needs dim+1 of them.
std::vector<Triangulation> parse_triangulations(std::string_view text, const ConfigPtr& config);

/// Exactly one group.
Triangulation parse_triangulation(std::string_view text, const ConfigPtr& config);

/// "{{0,1},{1,2}}"
std::string format_triangulation(const Triangulation& t);

}  // namespace freesum
