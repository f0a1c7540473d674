#include "freesum/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "freesum/linalg.hpp"

namespace freesum {

Simplex apply(const Permutation& g, Simplex s) {
  Simplex out = 0;
  while (s) {
    const int i = __builtin_ctzll(s);
    out |= bit(g[static_cast<std::size_t>(i)]);
    s &= s - 1;
  }
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation inverse(const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<std::uint8_t>(i);
  return out;
}

Permutation identity_permutation(std::size_t n) {
  Permutation out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(i);
  return out;
}

SymmetryGroup::SymmetryGroup(std::vector<LinearSymmetry> elements) {
  if (elements.empty()) throw std::invalid_argument("empty group");
  const std::size_t n = elements.front().perm.size();
  const Permutation id = identity_permutation(n);
  std::set<Permutation> seen;
  bool has_identity = false;
  for (auto& e : elements) {
    if (e.perm.size() != n) throw std::invalid_argument("group elements of different degree");
    if (!seen.insert(e.perm).second) continue;
    if (e.perm == id) {
      has_identity = true;
      elements_.insert(elements_.begin(), std::move(e));
    } else {
      elements_.push_back(std::move(e));
    }
  }
  if (!has_identity) throw std::invalid_argument("group without identity");
}

SymmetryGroup SymmetryGroup::trivial(const PointConfiguration& c) {
  RatMatrix m(c.dim(), RatVector(c.dim()));
  for (std::size_t i = 0; i < c.dim(); ++i) m[i][i] = 1;
  return SymmetryGroup({LinearSymmetry{identity_permutation(c.size()), m}});
}

bool SymmetryGroup::is_closed() const {
  std::set<Permutation> all;
  for (const auto& e : elements_) all.insert(e.perm);
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      if (!all.count(compose(a.perm, b.perm))) return false;
    }
  }
  return true;
}

namespace {

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const PointConfiguration& c) : c_(c), d_(c.dim()) {
    RatMatrix rows;
    for (std::size_t i = 0; i < c.size() && basis_.size() < d_; ++i) {
      RatMatrix trial = rows;
      trial.push_back(c.point(i));
      if (rank(trial) > rows.size()) {
        rows = std::move(trial);
        basis_.push_back(i);
      }
    }
    if (basis_.size() < d_) throw std::invalid_argument("points do not span linearly");
    // columns are the basis points
    RatMatrix b(d_, RatVector(d_));
    for (std::size_t k = 0; k < d_; ++k)
      for (std::size_t r = 0; r < d_; ++r) b[r][k] = c.point(basis_[k])[r];
    by_level_.resize(d_ + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      coords_.push_back(*solve(b, c.point(i)));
      std::size_t level = 0;
      for (std::size_t k = 0; k < d_; ++k)
        if (sgn(coords_.back()[k]) != 0) level = k + 1;
      by_level_[level].push_back(i);
      lookup_.emplace(c.point(i), i);
    }
    // #{j : p_i + p_j is a point} is preserved by linear symmetries
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        RatVector s = c.point(i);
        for (std::size_t r = 0; r < d_; ++r) s[r] += c.point(j)[r];
        k += lookup_.count(s);
      }
      invariant_.push_back(k);
    }
    for (std::size_t col = 0; col < d_; ++col) {
      RatVector e(d_);
      e[col] = 1;
      inverse_cols_.push_back(*solve(b, e));
    }
  }

  std::vector<LinearSymmetry> run() {
    perm_.assign(c_.size(), 0);
    images_.clear();
    if (!place_level(0)) return {};
    descend(0);
    return std::move(found_);
  }

 private:
  bool place_level(std::size_t level) {
    for (std::size_t i : by_level_[level]) {
      RatVector img(d_);
      for (std::size_t k = 0; k < level; ++k) {
        if (sgn(coords_[i][k]) == 0) continue;
        for (std::size_t r = 0; r < d_; ++r) img[r] += coords_[i][k] * images_[k][r];
      }
      auto it = lookup_.find(img);
      if (it == lookup_.end()) return false;
      perm_[i] = static_cast<std::uint8_t>(it->second);
    }
    return true;
  }

  void descend(std::size_t k) {
    if (k == d_) {
      std::vector<bool> hit(c_.size(), false);
      for (auto j : perm_) {
        if (hit[j]) return;
        hit[j] = true;
      }
      RatMatrix m(d_, RatVector(d_));
      for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t col = 0; col < d_; ++col)
          for (std::size_t kk = 0; kk < d_; ++kk) m[r][col] += images_[kk][r] * inverse_cols_[col][kk];
      found_.push_back(LinearSymmetry{perm_, std::move(m)});
      return;
    }
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (invariant_[j] != invariant_[basis_[k]]) continue;
      if (std::find(chosen_.begin(), chosen_.end(), j) != chosen_.end()) continue;
      chosen_.push_back(j);
      images_.push_back(c_.point(j));
      if (place_level(k + 1)) descend(k + 1);
      images_.pop_back();
      chosen_.pop_back();
    }
  }

  const PointConfiguration& c_;
  std::size_t d_;
  std::vector<std::size_t> basis_;
  std::vector<RatVector> coords_;
  std::vector<std::vector<std::size_t>> by_level_;
  std::map<RatVector, std::size_t> lookup_;
  std::vector<RatVector> inverse_cols_;
  Permutation perm_;
  std::vector<RatVector> images_;
  std::vector<LinearSymmetry> found_;
  std::vector<std::size_t> invariant_;
  std::vector<std::size_t> chosen_;
};

void require_degree(const SymmetryGroup& g, std::size_t n) {
  if (g.degree() != n) throw std::invalid_argument("group does not act on these points");
}

}  // namespace

SymmetryGroup automorphism_group(const PointConfiguration& c) { return SymmetryGroup(AutomorphismSearch(c).run()); }

SymmetryGroup product_group(const FreeSum& fs, const SymmetryGroup& gp, const SymmetryGroup& gq) {
  require_degree(gp, fs.p->size());
  require_degree(gq, fs.q->size());
  const std::size_t d = fs.p->dim();
  const std::size_t e = fs.q->dim();
  std::vector<LinearSymmetry> out;
  out.reserve(gp.order() * gq.order());
  for (const auto& a : gp.elements()) {
    for (const auto& b : gq.elements()) {
      Permutation perm(fs.sum->size());
      for (std::size_t i = 0; i < fs.p->size(); ++i) perm[fs.p_to_sum[i]] = static_cast<std::uint8_t>(fs.p_to_sum[a.perm[i]]);
      for (std::size_t i = 0; i < fs.q->size(); ++i) perm[fs.q_to_sum[i]] = static_cast<std::uint8_t>(fs.q_to_sum[b.perm[i]]);
      RatMatrix m(d + e, RatVector(d + e));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col) m[r][col] = a.matrix[r][col];
      for (std::size_t r = 0; r < e; ++r)
        for (std::size_t col = 0; col < e; ++col) m[d + r][d + col] = b.matrix[r][col];
      out.push_back(LinearSymmetry{std::move(perm), std::move(m)});
    }
  }
  return SymmetryGroup(std::move(out));
}

SymmetryGroup stabilizer(const SymmetryGroup& g, const Triangulation& t) {
  require_degree(g, t.config().size());
  std::vector<LinearSymmetry> out;
  std::vector<Simplex> image;
  for (const auto& e : g.elements()) {
    image.clear();
    for (Simplex s : t.cells()) image.push_back(apply(e.perm, s));
    std::sort(image.begin(), image.end(), lex_less);
    if (image == t.cells()) out.push_back(e);
  }
  return SymmetryGroup(std::move(out));
}

std::vector<std::vector<std::uint8_t>> cell_permutations(const SymmetryGroup& g, const Triangulation& t) {
  require_degree(g, t.config().size());
  if (t.size() > 256) throw std::length_error("too many cells");
  std::vector<std::vector<std::uint8_t>> out;
  for (const auto& e : g.elements()) {
    std::vector<std::uint8_t> perm(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto j = t.index_of(apply(e.perm, t.cell(i)));
      if (!j) throw std::invalid_argument("group element does not fix the triangulation");
      perm[i] = static_cast<std::uint8_t>(*j);
    }
    out.push_back(std::move(perm));
  }
  return out;
}

CanonicalKey canonical_form(const Triangulation& t, const SymmetryGroup& g) {
  require_degree(g, t.config().size());
  CanonicalKey best, cur;
  for (const auto& e : g.elements()) {
    cur.clear();
    for (Simplex s : t.cells()) cur.push_back(apply(e.perm, s));
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best.swap(cur);
  }
  return best;
}

CanonicalKey canonical_form(const Web& alpha, const Triangulation& tp, const Triangulation& tq,
                            const SymmetryGroup& gp, const SymmetryGroup& gq) {
  require_degree(gp, tp.config().size());
  require_degree(gq, tq.config().size());
  if (alpha.size() != tp.size()) throw std::invalid_argument("web size mismatch");
  CanonicalKey best, cur;
  std::vector<std::pair<Simplex, Simplex>> pairs;
  for (const auto& a : gp.elements()) {
    for (const auto& b : gq.elements()) {
      pairs.clear();
      for (std::size_t i = 0; i < tp.size(); ++i) {
        const Simplex s = apply(a.perm, tp.cell(i));
        if (alpha[i] == 0) pairs.emplace_back(s, 0);
        for (auto j : vertices_of(alpha[i])) pairs.emplace_back(s, apply(b.perm, tq.cell(j)));
      }
      std::sort(pairs.begin(), pairs.end());
      cur.clear();
      for (const auto& [s, u] : pairs) {
        cur.push_back(s);
        cur.push_back(u);
      }
      if (best.empty() || cur < best) best.swap(cur);
    }
  }
  return best;
}

std::vector<Triangulation> orbit_representatives(const std::vector<Triangulation>& list, const SymmetryGroup& g) {
  std::set<CanonicalKey> seen;
  std::vector<Triangulation> out;
  for (const auto& t : list) {
    if (seen.insert(canonical_form(t, g)).second) out.push_back(t);
  }
  return out;
}

}  // namespace freesum
