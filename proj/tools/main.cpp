#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "freesum/census.hpp"
#include "freesum/enumerate.hpp"
#include "freesum/io.hpp"
#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"
#include "freesum/sumtri.hpp"
#include "freesum/symmetry.hpp"
#include "freesum/webs.hpp"
#include "json_io.hpp"

namespace fs = std::filesystem;
using namespace freesum;
using freesum::cli::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Failure : std::runtime_error {
  Failure(int code, std::string kind, const std::string& message, json detail = json::object())
      : std::runtime_error(message), code(code), kind(std::move(kind)), detail(std::move(detail)) {}
  int code;
  std::string kind;
  json detail;
};

int report_error(int code, const std::string& kind, const std::string& message, json detail = json::object()) {
  detail["kind"] = kind;
  detail["message"] = message;
  detail["exit_code"] = code;
  std::cerr << json{{"error", detail}}.dump() << "\n";
  return code;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kUsage, "io", "cannot read " + path, {{"file", path}});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure(kUsage, "io", "cannot write " + path, {{"file", path}});
}

template <class F>
auto parsing(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw Failure(kUsage, "parse", e.message(),
                  {{"file", path}, {"line", e.line()}, {"column", e.column()}});
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, "invalid_input", e.what(), {{"file", path}});
  }
}

ConfigPtr load_points(const std::string& path) {
  const std::string text = read_text(path);
  return parsing(path, [&] { return parse_points(text); });
}

Triangulation load_triangulation(const std::string& path, const ConfigPtr& c) {
  const std::string text = read_text(path);
  return parsing(path, [&] { return parse_triangulation(text, c); });
}

// a file, or every regular file of a directory in name order
std::vector<Triangulation> load_triangulations(const std::string& path, const ConfigPtr& c) {
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Triangulation> out;
  for (const auto& f : files) {
    const std::string text = read_text(f);
    auto part = parsing(f, [&] { return parse_triangulations(text, c); });
    for (auto& t : part) out.push_back(std::move(t));
  }
  if (out.empty()) throw Failure(kUsage, "invalid_input", "no triangulations in " + path, {{"file", path}});
  return out;
}

std::string triangulation_lines(const std::vector<Triangulation>& list) {
  std::string out;
  for (const auto& t : list) out += format_triangulation(t) + "\n";
  return out;
}

Side parse_side(const std::string& s) { return s == "q" ? Side::Q : Side::P; }

std::string side_key(Side s) { return s == Side::Q ? "q" : (s == Side::P ? "p" : "both"); }

// Point index lookup, used to carry a triangulation onto a reordered copy of its points.
Triangulation rebind(const Triangulation& t, const ConfigPtr& target) {
  std::map<RatVector, std::size_t> where;
  for (std::size_t i = 0; i < target->size(); ++i) where[target->point(i)] = i;
  std::vector<Simplex> cells;
  for (Simplex s : t.cells()) {
    Simplex m = 0;
    for (auto v : vertices_of(s)) m |= bit(where.at(t.config().point(v)));
    cells.push_back(m);
  }
  return Triangulation(target, cells);
}

// P is spanned by the first k coordinates and Q by the rest.
std::vector<std::size_t> split_candidates(const PointConfiguration& c) {
  std::vector<std::size_t> out;
  const std::size_t n = c.dim();
  for (std::size_t k = 1; k < n; ++k) {
    bool ok = true;
    for (const auto& p : c.points()) {
      bool low = false, high = false;
      for (std::size_t i = 0; i < n; ++i) (i < k ? low : high) |= sgn(p[i]) != 0;
      if (low && high) ok = false;
    }
    if (ok) out.push_back(k);
  }
  return out;
}

FreeSum split_sum(const PointConfiguration& c, std::optional<std::size_t> split) {
  const auto candidates = split_candidates(c);
  std::size_t k = 0;
  if (split) {
    if (std::find(candidates.begin(), candidates.end(), *split) == candidates.end()) {
      throw Failure(kUsage, "invalid_input", "points are not a free sum at split " + std::to_string(*split),
                    {{"candidates", candidates}});
    }
    k = *split;
  } else if (candidates.size() == 1) {
    k = candidates.front();
  } else {
    throw Failure(kUsage, "usage",
                  candidates.empty() ? "points are not a free sum along coordinates"
                                     : "several coordinate splits fit; pass --split",
                  {{"candidates", candidates}});
  }
  std::vector<RatVector> p, q;
  for (const auto& x : c.points()) {
    const bool in_q = std::all_of(x.begin(), x.begin() + static_cast<long>(k), [](const Rational& r) { return sgn(r) == 0; });
    const bool in_p = std::all_of(x.begin() + static_cast<long>(k), x.end(), [](const Rational& r) { return sgn(r) == 0; });
    if (in_p) p.emplace_back(x.begin(), x.begin() + static_cast<long>(k));
    if (in_q) q.emplace_back(x.begin() + static_cast<long>(k), x.end());
  }
  try {
    return free_sum(make_config(p), make_config(q));
  } catch (const std::invalid_argument& e) {
    throw Failure(kUsage, "invalid_input", e.what());
  }
}

SummandData summand(const Triangulation& t) {
  try {
    return make_summand_data(t);
  } catch (const PosetError& e) {
    throw Failure(kFailed, "poset", e.what(), {{"witness", e.witness()}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulations of free sums of point configurations"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto add = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

  // gen
  std::string shape;
  std::size_t gen_dim = 2;
  std::vector<std::string> values{"-1", "0", "1"};
  {
    auto* c = add("gen", "Write a standard point configuration");
    c->add_option("--shape", shape, "dp | dp-minus | cross | interval")
        ->required()
        ->check(CLI::IsMember({"dp", "dp-minus", "cross", "interval"}));
    c->add_option("--dim", gen_dim, "Dimension")->check(CLI::Range(1, 32));
    c->add_option("--values", values, "Interval points (rationals)")->delimiter(',');
    c->callback([&] {
      action = [&] {
        ConfigPtr cfg;
        if (shape == "dp") {
          cfg = dp(gen_dim);
        } else if (shape == "dp-minus") {
          cfg = dp_minus(gen_dim);
        } else if (shape == "cross") {
          cfg = cross(gen_dim);
        } else {
          std::vector<Rational> vals;
          for (const auto& s : values) vals.push_back(parsing("--values", [&] { return parse_rational(s); }));
          cfg = parsing("--values", [&] { return interval(vals); });
        }
        std::cout << format_points(*cfg);
        return kOk;
      };
    });
  }

  // shared file options
  std::string points, tri;
  std::string p_points, q_points, p_tri, q_tri;
  auto need_points = [&](CLI::App* c) {
    c->add_option("--points", points, "Point file ('-' for stdin)")->required();
  };
  auto need_tri = [&](CLI::App* c) {
    need_points(c);
    c->add_option("--triangulation", tri, "Triangulation file")->required();
  };
  auto need_pair = [&](CLI::App* c, bool triangulations) {
    c->add_option("--p-points", p_points, "Points of the first summand")->required();
    c->add_option("--q-points", q_points, "Points of the second summand")->required();
    if (triangulations) {
      c->add_option("--p-triangulation", p_tri, "Triangulation of the first summand")->required();
      c->add_option("--q-triangulation", q_tri, "Triangulation of the second summand")->required();
    }
  };

  // triangulate
  std::vector<std::size_t> order;
  {
    auto* c = add("triangulate", "Placing triangulation");
    need_points(c);
    c->add_option("--order", order, "Insertion order of the points")->delimiter(',');
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        if (!order.empty()) {
          std::vector<bool> seen(cfg->size());
          for (auto i : order) {
            if (i >= cfg->size() || seen[i]) throw Failure(kUsage, "usage", "--order must list distinct point indices");
            seen[i] = true;
          }
        }
        const auto t = parsing(points, [&] {
          return order.empty() ? placing_triangulation(cfg) : placing_triangulation(cfg, order);
        });
        std::cout << format_triangulation(t) << "\n";
        return kOk;
      };
    });
  }

  // enumerate-triangulations
  bool mod_symmetry = false;
  EnumerateOptions enum_options;
  {
    auto* c = add("enumerate-triangulations", "All triangulations of a small configuration");
    need_points(c);
    c->add_flag("--mod-symmetry", mod_symmetry, "One per orbit of the automorphism group");
    c->add_option("--max-points", enum_options.max_points, "Size guard")->capture_default_str();
    c->add_option("--max-dim", enum_options.max_dim, "Dimension guard")->capture_default_str();
    c->add_option("--limit", enum_options.limit, "Stop after this many (0 for all)");
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        auto all = parsing(points, [&] { return brute_force_triangulations(cfg, enum_options); });
        if (mod_symmetry) all = orbit_representatives(all, automorphism_group(*cfg));
        std::cout << triangulation_lines(all);
        return kOk;
      };
    });
  }

  // stabbing
  bool literal = false;
  {
    auto* c = add("stabbing", "Stabbing order of the cells as JSON");
    need_tri(c);
    c->add_flag("--literal", literal, "Decision tree without the branch for cells through 0");
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        const auto t = load_triangulation(tri, cfg);
        PosetOptions o;
        o.mode = literal ? TreeMode::Literal : TreeMode::Definition;
        o.require_transitive = false;
        try {
          print(cli::stabbing_json(t, build_stabbing_poset(t, o)));
        } catch (const PosetError& e) {
          throw Failure(kFailed, "poset", e.what(), {{"witness", e.witness()}});
        }
        return kOk;
      };
    });
  }

  // star-balls
  {
    auto* c = add("star-balls", "Strictly star-shaped balls around 0 as JSON");
    need_tri(c);
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        const auto t = load_triangulation(tri, cfg);
        print(cli::star_balls_json(t, parsing(points, [&] { return enumerate_star_balls(t); })));
        return kOk;
      };
    });
  }

  // webs
  bool count_only = false;
  std::uint64_t web_limit = 0;
  std::string orientation = "p";
  {
    auto* c = add("webs", "Proper pinned webs of stars, one JSON object per line");
    need_pair(c, true);
    c->add_flag("--count-only", count_only, "Print only the number of webs");
    c->add_option("--limit", web_limit, "Stop after this many (0 for all)");
    c->add_option("--orientation", orientation, "p: from the first summand; q: from the second")
        ->check(CLI::IsMember({"p", "q"}));
    c->callback([&] {
      action = [&] {
        const auto pc = load_points(p_points), qc = load_points(q_points);
        const auto sp = summand(load_triangulation(p_tri, pc));
        const auto sq = summand(load_triangulation(q_tri, qc));
        const bool from_p = orientation == "p";
        const auto& src = from_p ? sp : sq;
        const auto& tgt = from_p ? sq : sp;
        std::uint64_t n = 0;
        const auto stats = enumerate_proper_psum_webs(src, tgt, [&](const Web& w) {
          ++n;
          if (!count_only) std::cout << json{{"orientation", orientation}, {"alpha", cli::web_json(w)}}.dump() << "\n";
          return web_limit == 0 || n < web_limit;
        });
        if (count_only) print({{"count", n}, {"nodes", stats.nodes}, {"orientation", orientation}});
        return kOk;
      };
    });
  }

  // sum
  std::string web_file, points_out, tri_out;
  {
    auto* c = add("sum", "Build a sum triangulation from summand triangulations and a web");
    need_pair(c, true);
    c->add_option("--web", web_file, "Web JSON: {\"orientation\": \"p\", \"alpha\": [[...], ...]}")->required();
    c->add_option("--points-out", points_out, "Write the points of the sum here");
    c->add_option("--triangulation-out", tri_out, "Write the triangulation here");
    c->callback([&] {
      action = [&] {
        const auto pc = load_points(p_points), qc = load_points(q_points);
        const auto sp = summand(load_triangulation(p_tri, pc));
        const auto sq = summand(load_triangulation(q_tri, qc));
        const std::string text = read_text(web_file);
        json wj;
        try {
          wj = json::parse(text);
        } catch (const json::parse_error& e) {
          throw Failure(kUsage, "parse", e.what(), {{"file", web_file}, {"byte", e.byte}});
        }
        const Side side = wj.is_object() && wj.value("orientation", "p") == "q" ? Side::Q : Side::P;
        const auto& src = side == Side::P ? sp : sq;
        const auto& tgt = side == Side::P ? sq : sp;
        const Web w = parsing(web_file, [&] { return cli::web_from_json(wj, src.tri.size(), tgt.tri.size()); });
        const FreeSum f = parsing(p_points, [&] { return free_sum(pc, qc); });
        std::optional<SumTriangulation> st;
        try {
          st = construct_sum_triangulation(f, sp, sq, w, side);
        } catch (const std::invalid_argument& e) {
          throw Failure(kFailed, "invalid_web", e.what(), {{"file", web_file}});
        }
        const auto report = verify_triangulation(st->triangulation);
        if (!points_out.empty()) write_text(points_out, format_points(*f.sum));
        if (!tri_out.empty()) write_text(tri_out, format_triangulation(st->triangulation) + "\n");
        print({{"points", cli::points_json(*f.sum)},
               {"triangulation", format_triangulation(st->triangulation)},
               {"cells", st->triangulation.size()},
               {"vertices", simplex_size(st->triangulation.used_points())},
               {"orientation", side_key(side)},
               {"beta", cli::web_json(st->provenance->beta)},
               {"verification", cli::verification_json(report)}});
        return report.ok ? kOk : kFailed;
      };
    });
  }

  // decompose
  std::optional<std::size_t> split;
  std::string prefer = "p", out_dir;
  {
    auto* c = add("decompose", "Recover summand triangulations and webs from a sum triangulation");
    need_tri(c);
    c->add_option("--split", split, "Dimension of the first summand (coordinates 1..k)");
    c->add_option("--prefer", prefer, "Orientation when 0 is a vertex")->check(CLI::IsMember({"p", "q"}));
    c->add_option("--out-dir", out_dir, "Write p.points, p.tri, q.points, q.tri and web.json here");
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        const auto t = load_triangulation(tri, cfg);
        const FreeSum f = split_sum(*cfg, split);
        const auto mapped = rebind(t, f.sum);
        DecomposeOptions o;
        o.prefer = parse_side(prefer);
        std::optional<Decomposition> d;
        try {
          d = decompose(f, mapped, o);
        } catch (const std::invalid_argument& e) {
          throw Failure(kFailed, "not_a_sum", e.what(), {{"file", tri}});
        } catch (const std::logic_error& e) {
          throw Failure(kFailed, "not_a_sum", e.what(), {{"file", tri}});
        }
        const auto& s = d->sum;
        const json web{{"orientation", side_key(s.orientation)},
                       {"alpha", cli::web_json(s.alpha)},
                       {"beta", cli::web_json(s.beta)}};
        if (!out_dir.empty()) {
          fs::create_directories(out_dir);
          write_text(out_dir + "/p.points", format_points(*f.p));
          write_text(out_dir + "/q.points", format_points(*f.q));
          write_text(out_dir + "/p.tri", format_triangulation(s.tp) + "\n");
          write_text(out_dir + "/q.tri", format_triangulation(s.tq) + "\n");
          json alpha_file = s.orientation == Side::Q ? json{{"orientation", "q"}, {"alpha", cli::web_json(s.beta)}}
                                                     : json{{"orientation", "p"}, {"alpha", cli::web_json(s.alpha)}};
          write_text(out_dir + "/web.json", alpha_file.dump(2) + "\n");
        }
        print({{"side", side_key(d->side)},
               {"split", f.p->dim()},
               {"p", {{"points", cli::points_json(*f.p)}, {"triangulation", format_triangulation(s.tp)}}},
               {"q", {{"points", cli::points_json(*f.q)}, {"triangulation", format_triangulation(s.tq)}}},
               {"web", web},
               {"checks", cli::checks_json(d->checks)}});
        return d->checks.ok() ? kOk : kFailed;
      };
    });
  }

  // verify
  {
    auto* c = add("verify", "Check that a set of simplices triangulates the configuration");
    need_tri(c);
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        const auto report = verify_triangulation(load_triangulation(tri, cfg));
        print(cli::verification_json(report));
        return report.ok ? kOk : kFailed;
      };
    });
  }

  // regular
  {
    auto* c = add("regular", "Decide regularity; print heights when regular");
    need_tri(c);
    c->callback([&] {
      action = [&] {
        const auto cfg = load_points(points);
        const auto r = is_regular(load_triangulation(tri, cfg));
        json heights = nullptr;
        if (r.regular) {
          heights = json::array();
          for (const auto& h : r.heights) heights.push_back(to_string(h));
        }
        print({{"regular", r.regular}, {"heights", heights}});
        return kOk;
      };
    });
  }

  // census
  std::string p_list, q_list;
  CensusOptions census_options;
  bool materialize = false, with_pairs = false, lean = false;
  EnumerateOptions census_enum;
  census_enum.max_dim = 4;
  census_enum.max_points = 12;
  {
    auto* c = add("census", "Count proper webs over all pairs of summand triangulations");
    need_pair(c, false);
    c->add_option("--p-triangulations", p_list, "File or directory; enumerated when omitted");
    c->add_option("--q-triangulations", q_list, "File or directory; enumerated when omitted");
    c->add_option("--threads", census_options.threads, "Worker threads")->check(CLI::Range(1, 256));
    c->add_option("--memory-budget", census_options.memory_budget, "Bytes (K/M/G suffixes); 0 for none")
        ->transform(CLI::AsSizeValue(false))
        ->envname("FREESUM_MEMORY_BUDGET");
    auto* m = c->add_flag("--materialize", materialize, "Build every sum triangulation; count distinct and regular");
    c->add_flag("--count-only", lean, "Only the homomorphism convention, one orientation")->excludes(m);
    c->add_flag("--pairs", with_pairs, "Include per-pair counts");
    c->add_option("--max-points", census_enum.max_points, "Size guard when enumerating")->capture_default_str();
    c->add_option("--max-dim", census_enum.max_dim, "Dimension guard when enumerating")->capture_default_str();
    c->callback([&] {
      action = [&] {
        const auto pc = load_points(p_points), qc = load_points(q_points);
        auto list = [&](const std::string& path, const ConfigPtr& cfg, const std::string& name) {
          if (!path.empty()) return load_triangulations(path, cfg);
          return parsing(name, [&] { return brute_force_triangulations(cfg, census_enum); });
        };
        const auto lp = list(p_list, pc, p_points);
        const auto lq = list(q_list, qc, q_points);
        census_options.materialize = materialize;
        census_options.q_sum = !lean;
        census_options.all_conventions = !lean;
        const CountReport r = parsing(p_points, [&] { return census(pc, qc, lp, lq, census_options); });
        print(cli::count_report_json(r, with_pairs));
        if (r.aborted) {
          return report_error(kResource, "resource", r.abort_reason,
                              {{"memory_budget", census_options.memory_budget},
                               {"memory_estimate", r.memory_estimate},
                               {"peak_rss", r.peak_rss}});
        }
        return kOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(kUsage, "usage", e.what());
  }

  try {
    return action();
  } catch (const Failure& f) {
    return report_error(f.code, f.kind, f.what(), f.detail);
  } catch (const std::length_error& e) {
    return report_error(kResource, "resource", e.what());
  } catch (const std::bad_alloc&) {
    return report_error(kResource, "resource", "out of memory");
  } catch (const std::exception& e) {
    return report_error(kFailed, "error", e.what());
  }
}
