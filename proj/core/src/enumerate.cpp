#include "freesum/enumerate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "freesum/linalg.hpp"

namespace freesum {

namespace {

class TriangulationSearch {
 public:
  TriangulationSearch(const ConfigPtr& c, std::size_t limit) : c_(c), limit_(limit), n_(c->size()), d_(c->dim()) {
    std::vector<bool> pick(n_, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(n_, d_ + 1)), true);
    std::sort(pick.begin(), pick.end(), std::greater<>());
    do {
      Simplex s = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (pick[i]) s |= bit(i);
      if (affinely_independent(c_->coords(s))) {
        index_.emplace(s, candidates_.size());
        candidates_.push_back(s);
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    compat_.assign(candidates_.size() * candidates_.size(), -1);
  }

  std::vector<Triangulation> run() {
    if (candidates_.empty()) return {};
    const RatVector x = generic_point();
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < candidates_.size(); ++i)
      if (simplex_contains(c_->coords(candidates_[i]), x)) first.push_back(i);
    for (std::size_t i : first) {
      if (done()) break;
      chosen_.push_back(i);
      descend();
      chosen_.pop_back();
    }
    std::sort(found_.begin(), found_.end(),
              [](const Triangulation& a, const Triangulation& b) {
                return std::lexicographical_compare(a.cells().begin(), a.cells().end(), b.cells().begin(),
                                                    b.cells().end(), lex_less);
              });
    return std::move(found_);
  }

 private:
  bool done() const { return limit_ != 0 && found_.size() >= limit_; }

  // A point off the boundary of every candidate simplex.
  RatVector generic_point() const {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> w(1, 1000);
    const auto verts = c_->coords(candidates_.front());
    for (int attempt = 0; attempt < 1000; ++attempt) {
      RatVector x(d_);
      Rational total = 0;
      for (const auto& v : verts) {
        const Rational wi = w(rng);
        total += wi;
        for (std::size_t r = 0; r < d_; ++r) x[r] += wi * v[r];
      }
      for (auto& xi : x) xi /= total;
      bool ok = true;
      for (Simplex s : candidates_) {
        const auto lambda = affine_coordinates(c_->coords(s), x);
        if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& l) { return sgn(l) == 0; })) {
          ok = false;
          break;
        }
      }
      if (ok) return x;
    }
    throw std::logic_error("no generic point found");
  }

  bool on_hull(Simplex ridge) {
    auto it = hull_.find(ridge);
    if (it != hull_.end()) return it->second;
    const auto facet = c_->coords(ridge);
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const int s = side_of(facet, c_->point(i));
      pos += s > 0;
      neg += s < 0;
    }
    return hull_[ridge] = (pos == 0 || neg == 0);
  }

  bool compatible(std::size_t a, std::size_t b) {
    signed char& v = compat_[a * candidates_.size() + b];
    if (v < 0) {
      v = cells_intersect_properly(*c_, candidates_[a], candidates_[b]) ? 1 : 0;
      compat_[b * candidates_.size() + a] = v;
    }
    return v == 1;
  }

  void descend() {
    if (done()) return;
    // open interior ridge with its cell
    std::map<Simplex, int> count;
    std::map<Simplex, Simplex> owner;
    for (std::size_t k : chosen_) {
      const Simplex s = candidates_[k];
      for (Simplex r = s; r; r &= r - 1) {
        const Simplex ridge = s & ~(r & -r);
        ++count[ridge];
        owner[ridge] = s;
      }
    }
    std::optional<Simplex> open;
    for (const auto& [ridge, k] : count) {
      if (k == 1 && !on_hull(ridge)) {
        open = ridge;
        break;
      }
    }
    if (!open) {
      std::vector<Simplex> cells;
      for (std::size_t k : chosen_) cells.push_back(candidates_[k]);
      found_.emplace_back(c_, std::move(cells));
      return;
    }
    const Simplex ridge = *open;
    const auto facet = c_->coords(ridge);
    const Simplex apex = owner[ridge] & ~ridge;
    const int apex_side = side_of(facet, c_->point(static_cast<std::size_t>(__builtin_ctzll(apex))));
    for (std::size_t v = 0; v < n_; ++v) {
      if (has_vertex(ridge, v) || side_of(facet, c_->point(v)) != -apex_side) continue;
      const std::size_t cand = index_.at(ridge | bit(v));
      if (!std::all_of(chosen_.begin(), chosen_.end(), [&](std::size_t k) { return k != cand && compatible(k, cand); })) {
        continue;
      }
      chosen_.push_back(cand);
      descend();
      chosen_.pop_back();
      if (done()) return;
    }
  }

  ConfigPtr c_;
  std::size_t limit_;
  std::size_t n_, d_;
  std::vector<Simplex> candidates_;
  std::map<Simplex, std::size_t> index_;
  std::vector<signed char> compat_;
  std::map<Simplex, bool> hull_;
  std::vector<std::size_t> chosen_;
  std::vector<Triangulation> found_;
};

}  // namespace

std::vector<Triangulation> brute_force_triangulations(const ConfigPtr& c, const EnumerateOptions& options) {
  if (c->size() > options.max_points || c->dim() > options.max_dim) {
    throw std::length_error("configuration too large for brute-force enumeration (" + std::to_string(c->size()) +
                            " points in dimension " + std::to_string(c->dim()) +
                            "); supply triangulations from an external tool instead");
  }
  if (!c->spans()) throw std::invalid_argument("points do not span");
  return TriangulationSearch(c, options.limit).run();
}

}  // namespace freesum
