#include "freesum/lp.hpp"

#include <stdexcept>

namespace freesum {

namespace {

// Standard-form tableau: rows T x = rhs, x >= 0, with an explicit basis.
// The cost row holds reduced costs of a minimization; its last entry is
// minus the current objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, RatVector(cols + 1)), cost_(cols + 1), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void set_costs(const RatVector& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost_[j] = 0;
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[i][j]) != 0) cost_[j] -= cb * t_[i][j];
      }
    }
  }

  Rational objective() const { return -cost_[cols_]; }

  // Runs the simplex with Bland's rule over the allowed columns.
  // Returns false if unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    RatVector& pr = t_[r];
    const Rational inv = 1 / pr[c];
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) pr[j] *= inv;
    }
    // Collect the nonzero pattern of the pivot row once.
    nz_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) nz_.push_back(j);
    }
    auto reduce = [&](RatVector& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t j : nz_) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i != r) reduce(t_[i]);
    }
    reduce(cost_);
    basis_[r] = c;
  }

  RatVector values() const {
    RatVector x(cols_);
    for (std::size_t i = 0; i < t_.size(); ++i) x[basis_[i]] = t_[i][cols_];
    return x;
  }

 private:
  std::vector<RatVector> t_;
  RatVector cost_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::vector<std::size_t> nz_;
};

}  // namespace

LinearProgram::LinearProgram(std::size_t num_variables)
    : num_vars_(num_variables), nonnegative_(num_variables, false) {}

void LinearProgram::add(RatVector coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() != num_vars_) {
    throw std::invalid_argument("constraint length does not match the number of variables");
  }
  rows_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::require_nonnegative(std::size_t variable) { nonnegative_.at(variable) = true; }

LpSolution LinearProgram::minimize(const RatVector& objective) const {
  RatVector neg(objective.size());
  for (std::size_t i = 0; i < objective.size(); ++i) neg[i] = -objective[i];
  LpSolution s = maximize(neg);
  if (s.status == LpStatus::Optimal) s.objective = -s.objective;
  return s;
}

LpSolution LinearProgram::find_feasible() const { return maximize(RatVector(num_vars_)); }

LpSolution LinearProgram::maximize(const RatVector& objective) const {
  if (objective.size() != num_vars_) throw std::invalid_argument("objective length mismatch");

  // Column layout: structural (free variables split into +/-), then one
  // slack or surplus per inequality, then artificials.
  std::vector<std::size_t> pos_col(num_vars_), neg_col(num_vars_, SIZE_MAX);
  std::size_t n = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    pos_col[v] = n++;
    if (!nonnegative_[v]) neg_col[v] = n++;
  }
  const std::size_t m = rows_.size();

  std::vector<int> row_sign(m, 1);
  std::vector<Relation> rel(m);
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = rows_[i].relation;
    if (sgn(rows_[i].rhs) < 0) {
      row_sign[i] = -1;
      if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::Equal) slack_col[i] = n++;
  }
  const std::size_t first_art = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (rel[i] != Relation::LessEqual) art_col[i] = n++;
  }

  Tableau tab(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows_[i];
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (sgn(row.coefficients[v]) == 0) continue;
      Rational a = row_sign[i] < 0 ? Rational(-row.coefficients[v]) : row.coefficients[v];
      if (neg_col[v] != SIZE_MAX) tab.at(i, neg_col[v]) = -a;
      tab.at(i, pos_col[v]) = std::move(a);
    }
    tab.rhs(i) = row_sign[i] < 0 ? Rational(-row.rhs) : row.rhs;
    if (rel[i] == Relation::LessEqual) {
      tab.at(i, slack_col[i]) = 1;
      tab.basis()[i] = slack_col[i];
    } else {
      if (rel[i] == Relation::GreaterEqual) tab.at(i, slack_col[i]) = -1;
      tab.at(i, art_col[i]) = 1;
      tab.basis()[i] = art_col[i];
    }
  }

  std::vector<bool> allowed(n, true);
  if (first_art < n) {
    RatVector phase1(n);
    for (std::size_t j = first_art; j < n; ++j) phase1[j] = 1;
    tab.set_costs(phase1);
    tab.optimize(allowed);
    if (sgn(tab.objective()) != 0) return {LpStatus::Infeasible, {}, 0};
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (sgn(tab.at(i, j)) != 0) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = first_art; j < n; ++j) allowed[j] = false;
  }

  RatVector cost(n);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    cost[pos_col[v]] = -objective[v];
    if (neg_col[v] != SIZE_MAX) cost[neg_col[v]] = objective[v];
  }
  tab.set_costs(cost);
  const bool bounded = tab.optimize(allowed);

  const RatVector x = tab.values();
  LpSolution sol;
  sol.point.assign(num_vars_, Rational(0));
  for (std::size_t v = 0; v < num_vars_; ++v) {
    sol.point[v] = x[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) sol.point[v] -= x[neg_col[v]];
  }
  if (!bounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.objective = dot(objective, sol.point);
  return sol;
}

Feasibility lp_feasible(const std::vector<LinearConstraint>& constraints, bool want_witness) {
  Feasibility f;
  if (constraints.empty()) {
    f.feasible = true;
    return f;
  }
  const std::size_t n = constraints[0].coefficients.size();
  LinearProgram lp(n);
  for (const auto& c : constraints) lp.add(c);
  const LpSolution s = lp.find_feasible();
  if (s.status != LpStatus::Infeasible) {
    f.feasible = true;
    f.point = s.point;
    return f;
  }
  if (!want_witness) return f;

  // Farkas system: sum lambda_i a_i = 0, sum lambda_i b_i = -1, signs per relation.
  const std::size_t m = constraints.size();
  LinearProgram dual(m);
  for (std::size_t v = 0; v < n; ++v) {
    RatVector row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = constraints[i].coefficients[v];
    dual.add(std::move(row), Relation::Equal, 0);
  }
  RatVector brow(m);
  for (std::size_t i = 0; i < m; ++i) brow[i] = constraints[i].rhs;
  dual.add(std::move(brow), Relation::Equal, -1);
  for (std::size_t i = 0; i < m; ++i) {
    RatVector unit(m);
    unit[i] = 1;
    if (constraints[i].relation == Relation::LessEqual) {
      dual.add(std::move(unit), Relation::GreaterEqual, 0);
    } else if (constraints[i].relation == Relation::GreaterEqual) {
      dual.add(std::move(unit), Relation::LessEqual, 0);
    }
  }
  const LpSolution w = dual.find_feasible();
  if (w.status == LpStatus::Infeasible) {
    throw std::logic_error("lp_feasible: primal and Farkas system both infeasible");
  }
  f.witness = w.point;
  return f;
}

bool is_farkas_witness(const std::vector<LinearConstraint>& constraints, const RatVector& witness) {
  if (constraints.empty() || witness.size() != constraints.size()) return false;
  const std::size_t n = constraints[0].coefficients.size();
  RatVector combo(n);
  Rational b = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    const int s = sgn(witness[i]);
    if (c.relation == Relation::LessEqual && s < 0) return false;
    if (c.relation == Relation::GreaterEqual && s > 0) return false;
    for (std::size_t v = 0; v < n; ++v) combo[v] += witness[i] * c.coefficients[v];
    b += witness[i] * c.rhs;
  }
  return is_zero(combo) && sgn(b) < 0;
}

std::optional<RatVector> relative_interior_point(const std::vector<RatVector>& cone_generators,
                                                 const std::vector<RatVector>& simplex) {
  if (simplex.empty()) return std::nullopt;
  const std::size_t d = simplex[0].size();
  const std::size_t k = cone_generators.size();
  const std::size_t l = simplex.size();
  const std::size_t nv = k + l;

  // Lifted description: lambda >= 0 (cone), mu >= 0 (simplex), sum mu = 1,
  // V lambda = W mu. The image of its relative interior under mu -> W mu is the
  // relative interior of the target set.
  auto base = [&](std::size_t extra) {
    LinearProgram lp(nv + extra);
    for (std::size_t i = 0; i < nv; ++i) lp.require_nonnegative(i);
    RatVector sum(nv + extra);
    for (std::size_t j = 0; j < l; ++j) sum[k + j] = 1;
    lp.add(std::move(sum), Relation::Equal, 1);
    for (std::size_t c = 0; c < d; ++c) {
      RatVector row(nv + extra);
      for (std::size_t i = 0; i < k; ++i) row[i] = cone_generators[i][c];
      for (std::size_t j = 0; j < l; ++j) row[k + j] = -simplex[j][c];
      lp.add(std::move(row), Relation::Equal, 0);
    }
    return lp;
  };

  LinearProgram lp = base(0);
  LpSolution first = lp.find_feasible();
  if (first.status == LpStatus::Infeasible) return std::nullopt;

  // A variable is not implied zero iff some feasible point makes it positive.
  // Each LP solution can certify several variables at once.
  std::vector<bool> positive(nv, false);
  auto absorb = [&](const RatVector& p) {
    for (std::size_t i = 0; i < nv; ++i) {
      if (sgn(p[i]) > 0) positive[i] = true;
    }
  };
  absorb(first.point);
  for (std::size_t i = 0; i < nv; ++i) {
    if (positive[i]) continue;
    RatVector obj(nv);
    obj[i] = 1;
    const LpSolution s = lp.maximize(obj);
    if (s.status == LpStatus::Unbounded) positive[i] = true;
    else if (s.status == LpStatus::Optimal) absorb(s.point);
  }

  // Maximize the smallest free coordinate; t <= mu_j keeps this bounded.
  LinearProgram centre = base(1);
  const std::size_t t = nv;
  for (std::size_t i = 0; i < nv; ++i) {
    RatVector row(nv + 1);
    row[i] = 1;
    if (positive[i]) {
      row[t] = -1;
      centre.add(std::move(row), Relation::GreaterEqual, 0);
    } else {
      centre.add(std::move(row), Relation::Equal, 0);
    }
  }
  RatVector tcap(nv + 1);
  tcap[t] = 1;
  centre.add(tcap, Relation::LessEqual, 1);
  const LpSolution s = centre.maximize(tcap);
  if (s.status != LpStatus::Optimal) throw std::logic_error("relative_interior_point: centring LP failed");

  RatVector r(d);
  for (std::size_t j = 0; j < l; ++j) {
    const Rational& mu = s.point[k + j];
    if (sgn(mu) == 0) continue;
    for (std::size_t c = 0; c < d; ++c) r[c] += mu * simplex[j][c];
  }
  return r;
}

SegmentIntersection segment_face_intersection(const RatVector& a, const RatVector& b,
                                              const std::vector<RatVector>& simplex) {
  if (a == b) throw std::invalid_argument("segment_face_intersection: degenerate segment");
  const std::size_t d = a.size();
  const std::size_t l = simplex.size();
  // Variables: t, mu_1..mu_l.  a + t (b - a) = sum mu_j w_j.
  LinearProgram lp(l + 1);
  for (std::size_t i = 0; i <= l; ++i) lp.require_nonnegative(i);
  RatVector tmax(l + 1);
  tmax[0] = 1;
  lp.add(tmax, Relation::LessEqual, 1);
  RatVector sum(l + 1);
  for (std::size_t j = 0; j < l; ++j) sum[j + 1] = 1;
  lp.add(std::move(sum), Relation::Equal, 1);
  for (std::size_t c = 0; c < d; ++c) {
    RatVector row(l + 1);
    row[0] = b[c] - a[c];
    for (std::size_t j = 0; j < l; ++j) row[j + 1] = -simplex[j][c];
    lp.add(std::move(row), Relation::Equal, -a[c]);
  }
  SegmentIntersection out;
  const LpSolution hi = lp.maximize(tmax);
  if (hi.status == LpStatus::Infeasible) return out;
  const LpSolution lo = lp.minimize(tmax);
  out.t_min = lo.objective;
  out.t_max = hi.objective;
  if (out.t_min == out.t_max) {
    out.dim = 0;
    out.point = add(a, scale(subtract(b, a), out.t_min));
  } else {
    out.dim = 1;
  }
  return out;
}

}  // namespace freesum
