#include "freesum/webs.hpp"

#include <algorithm>

namespace freesum {

SummandData make_summand_data(Triangulation t, std::size_t threads) {
  SummandData s{t, build_stabbing_poset(t, {TreeMode::Definition, threads, false}), enumerate_star_balls(t), 0};
  s.star = star_cells(s.tri, RatVector(s.tri.config().dim()));
  return s;
}

std::optional<std::pair<std::size_t, std::size_t>> order_violation(const Web& web, const StabbingPoset& poset) {
  for (std::size_t i = 0; i < poset.size(); ++i) {
    for (std::size_t j = 0; j < poset.size(); ++j) {
      if (poset.precedes(i, j) && (web[i] & ~web[j]) != 0) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

Web complement_transpose(const Web& alpha, std::size_t target_cells) {
  Web beta(target_cells, 0);
  for (std::size_t tau = 0; tau < target_cells; ++tau) {
    for (std::size_t sigma = 0; sigma < alpha.size(); ++sigma) {
      if (!((alpha[sigma] >> tau) & 1U)) beta[tau] |= cell_bit(sigma);
    }
  }
  return beta;
}

bool is_web_of_stars(const Web& alpha, const SummandData& source, const SummandData& target) {
  if (alpha.size() != source.tri.size()) return false;
  for (CellSet b : alpha) {
    if (!target.balls.contains(b)) return false;
  }
  return is_order_preserving(alpha, source.poset);
}

bool is_proper(const Web& alpha, const SummandData& source, const SummandData& target) {
  if (alpha.size() != source.tri.size()) return false;
  return is_web_of_stars(complement_transpose(alpha, target.tri.size()), target, source);
}

bool satisfies_psum_condition(const Web& alpha, const SummandData& source, const SummandData& target) {
  for (std::size_t i = 0; i < source.tri.size(); ++i) {
    if (((source.star >> i) & 1U) && alpha[i] != target.star) return false;
  }
  return true;
}

namespace {

class WebSearch {
 public:
  WebSearch(const SummandData& source, const SummandData& target, const std::function<bool(const Web&)>& emit)
      : src_(source), tgt_(target), emit_(emit), alpha_(source.tri.size(), 0) {
    // images must be down-sets of the target relation, or beta cannot be order preserving
    for (CellSet b : target.balls.balls()) {
      bool down = true;
      for (std::size_t tau = 0; tau < target.tri.size() && down; ++tau) {
        if (((b >> tau) & 1U) && (target.poset.below(tau) & ~b) != 0) down = false;
      }
      if (down) candidates_.push_back(b);
    }
    for (std::size_t i : source.poset.linear_extension()) {
      if ((source.star >> i) & 1U) {
        alpha_[i] = target.star;
        assigned_ |= cell_bit(i);
      } else {
        order_.push_back(i);
      }
    }
  }

  WebSearchStats run() {
    if (std::find(candidates_.begin(), candidates_.end(), tgt_.star) == candidates_.end()) return stats_;
    if (extendable()) descend(0);
    return stats_;
  }

 private:
  // Each partial beta(tau), read on the assigned cells, must agree with some
  // ball of the source (or the empty set) on those cells.
  bool extendable() const {
    for (std::size_t tau = 0; tau < tgt_.tri.size(); ++tau) {
      CellSet partial = 0;
      for (std::size_t s = 0; s < alpha_.size(); ++s) {
        if (((assigned_ >> s) & 1U) && !((alpha_[s] >> tau) & 1U)) partial |= cell_bit(s);
      }
      bool found = false;
      for (CellSet b : src_.balls.balls()) {
        if ((b & assigned_) == partial) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  bool descend(std::size_t k) {
    ++stats_.nodes;
    if (k == order_.size()) {
      if (!is_proper(alpha_, src_, tgt_)) return true;
      ++stats_.emitted;
      return emit_(alpha_);
    }
    const std::size_t sigma = order_[k];
    CellSet lower = 0;
    for (std::size_t p = 0; p < alpha_.size(); ++p) {
      if ((src_.poset.below(sigma) >> p) & 1U) lower |= alpha_[p];
    }
    for (CellSet b : candidates_) {
      if ((lower & ~b) != 0) continue;
      alpha_[sigma] = b;
      assigned_ |= cell_bit(sigma);
      const bool go_on = !extendable() || descend(k + 1);
      assigned_ &= ~cell_bit(sigma);
      if (!go_on) {
        alpha_[sigma] = 0;
        return false;
      }
    }
    alpha_[sigma] = 0;
    return true;
  }

  const SummandData& src_;
  const SummandData& tgt_;
  const std::function<bool(const Web&)>& emit_;
  Web alpha_;
  CellSet assigned_ = 0;
  std::vector<std::size_t> order_;
  std::vector<CellSet> candidates_;
  WebSearchStats stats_;
};

}  // namespace

WebSearchStats enumerate_proper_psum_webs(const SummandData& source, const SummandData& target,
                                          const std::function<bool(const Web&)>& emit) {
  return WebSearch(source, target, emit).run();
}

std::uint64_t count_proper_psum_webs(const SummandData& source, const SummandData& target) {
  return enumerate_proper_psum_webs(source, target, [](const Web&) { return true; }).emitted;
}

}  // namespace freesum
