#include "freesum/io.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace freesum {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  // whitespace and comments; newlines too unless told otherwise
  void skip(bool newlines = true) {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') get();
      } else if (c == '\n' ? newlines : std::isspace(static_cast<unsigned char>(c)) != 0) {
        get();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }
  [[noreturn]] void fail_found(const char* what) const {
    std::string message(what);
    message += found();
    fail(message);
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      std::string what = "expected '";
      what += c;
      what += '\'';
      fail_found(what.c_str());
    }
    get();
  }

  std::string found() const {
    if (done()) return ", found end of input";
    return std::string(", found '") + peek() + "'";
  }

  Rational number() {
    const std::size_t l = line_, c = column_;
    std::string token;
    while (!done()) {
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch)) == 0 && ch != '-' && ch != '+' && ch != '/') break;
      token += get();
    }
    if (token.empty()) fail_found("expected a number");
    try {
      return parse_rational(token);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), l, c);
    }
  }

  std::size_t index() {
    const std::size_t l = line_, c = column_;
    std::string token;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())) != 0) token += get();
    if (token.empty()) fail_found("expected an index");
    if (token.size() > 6) throw ParseError("index " + token + " out of range", l, c);
    return std::stoul(token);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, column_ = 1;
};

struct Row {
  RatVector point;
  std::size_t line, column;
};

std::vector<Row> bracketed_rows(Cursor& in) {
  std::vector<Row> rows;
  in.expect('[');
  in.skip();
  if (in.peek() == ']') in.fail("no points");
  while (true) {
    in.skip();
    Row row{{}, in.line(), in.column()};
    in.expect('[');
    in.skip();
    while (true) {
      in.skip();
      row.point.push_back(in.number());
      in.skip();
      if (in.peek() == ']') break;
      in.expect(',');
    }
    in.get();
    rows.push_back(std::move(row));
    in.skip();
    if (in.peek() == ']') break;
    in.expect(',');
  }
  in.get();
  in.skip();
  if (!in.done()) in.fail("trailing text after the point matrix");
  return rows;
}

std::vector<Row> plain_rows(Cursor& in) {
  std::vector<Row> rows;
  while (true) {
    in.skip();
    if (in.done()) break;
    Row row{{}, in.line(), in.column()};
    while (!in.done() && in.peek() != '\n') {
      row.point.push_back(in.number());
      in.skip(false);
      if (in.peek() == ',') {
        in.get();
        in.skip(false);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::size_t> index_group(Cursor& in) {
  std::vector<std::size_t> out;
  in.expect('{');
  in.skip();
  if (in.peek() == '}') in.fail("empty cell");
  while (true) {
    in.skip();
    out.push_back(in.index());
    in.skip();
    if (in.peek() == '}') break;
    in.expect(',');
  }
  in.get();
  return out;
}

Triangulation triangulation_group(Cursor& in, const ConfigPtr& config) {
  std::vector<Simplex> cells;
  in.expect('{');
  in.skip();
  if (in.peek() == '}') in.fail("triangulation without cells");
  while (true) {
    in.skip();
    const std::size_t l = in.line(), c = in.column();
    const auto indices = index_group(in);
    Simplex s = 0;
    for (std::size_t i : indices) {
      if (i >= config->size()) {
        throw ParseError("index " + std::to_string(i) + " out of range for " + std::to_string(config->size()) +
                             " points",
                         l, c);
      }
      if (has_vertex(s, i)) throw ParseError("repeated index " + std::to_string(i), l, c);
      s |= bit(i);
    }
    if (indices.size() != config->dim() + 1) {
      throw ParseError("cell with " + std::to_string(indices.size()) + " vertices in dimension " +
                           std::to_string(config->dim()),
                       l, c);
    }
    cells.push_back(s);
    in.skip();
    if (in.peek() == '}') break;
    in.expect(',');
  }
  in.get();
  try {
    return Triangulation(config, std::move(cells));
  } catch (const std::invalid_argument& e) {
    in.fail(e.what());
  }
}

}  // namespace

ConfigPtr parse_points(std::string_view text) {
  Cursor in(text);
  in.skip();
  if (in.done()) in.fail("no points");
  const std::vector<Row> rows = in.peek() == '[' ? bracketed_rows(in) : plain_rows(in);
  if (rows.empty()) in.fail("no points");
  std::map<RatVector, std::size_t> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.point.size() != rows[0].point.size()) {
      throw ParseError("point of dimension " + std::to_string(r.point.size()) + ", expected " +
                           std::to_string(rows[0].point.size()),
                       r.line, r.column);
    }
    if (!seen.emplace(r.point, i).second) {
      throw ParseError("duplicate of point " + std::to_string(seen[r.point]), r.line, r.column);
    }
  }
  std::vector<RatVector> points;
  for (const auto& r : rows) points.push_back(r.point);
  return make_config(std::move(points));
}

std::string format_points(const PointConfiguration& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",\n ";
    out += to_string(c.point(i));
  }
  out += "]\n";
  return out;
}

std::vector<Triangulation> parse_triangulations(std::string_view text, const ConfigPtr& config) {
  Cursor in(text);
  std::vector<Triangulation> out;
  while (true) {
    while (!in.done() && in.peek() != '{' && in.peek() != '#') in.get();
    in.skip();
    if (in.done()) break;
    if (in.peek() != '{') continue;
    out.push_back(triangulation_group(in, config));
  }
  return out;
}

Triangulation parse_triangulation(std::string_view text, const ConfigPtr& config) {
  auto all = parse_triangulations(text, config);
  if (all.size() != 1) {
    throw ParseError("expected one triangulation, found " + std::to_string(all.size()), 1, 1);
  }
  return std::move(all.front());
}

std::string format_triangulation(const Triangulation& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += simplex_to_string(t.cell(i));
  }
  out += '}';
  return out;
}

}  // namespace freesum
