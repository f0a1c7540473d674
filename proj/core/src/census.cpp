#include "freesum/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

#include "freesum/sumtri.hpp"
#include "freesum/symmetry.hpp"
#include "freesum/webs.hpp"
#include "parallel.hpp"

namespace freesum {

std::uint64_t peak_rss_bytes() {
#if defined(__APPLE__)
  rusage u{};
  if (getrusage(RUSAGE_SELF, &u) != 0) return 0;
  return static_cast<std::uint64_t>(u.ru_maxrss);
#elif defined(__unix__)
  rusage u{};
  if (getrusage(RUSAGE_SELF, &u) != 0) return 0;
  return static_cast<std::uint64_t>(u.ru_maxrss) * 1024;
#else
  return 0;
#endif
}

ConventionCounts& ConventionCounts::operator+=(const ConventionCounts& o) {
  raw += o.raw;
  source_orbits += o.source_orbits;
  target_orbits += o.target_orbits;
  pair_orbits += o.pair_orbits;
  return *this;
}

namespace {

using CellPerm = std::vector<std::uint8_t>;

CellSet permute_set(CellSet s, const CellPerm& h) {
  CellSet out = 0;
  while (s) {
    out |= cell_bit(h[static_cast<std::size_t>(__builtin_ctzll(s))]);
    s &= s - 1;
  }
  return out;
}

// No element of the group maps w to a lexicographically smaller web.
bool orbit_minimal(const Web& w, const std::vector<CellPerm>& gs, const std::vector<CellPerm>* hs, Web& scratch) {
  scratch.resize(w.size());
  const std::size_t nh = hs ? hs->size() : 1;
  for (const auto& g : gs) {
    for (std::size_t k = 0; k < nh; ++k) {
      for (std::size_t i = 0; i < w.size(); ++i) scratch[g[i]] = hs ? permute_set(w[i], (*hs)[k]) : w[i];
      if (scratch < w) return false;
    }
  }
  return true;
}

void tally(OrderingTable& t, bool regular, bool ordered) {
  if (regular) {
    ++(ordered ? t.regular_ordered : t.regular_unordered);
  } else {
    ++(ordered ? t.nonregular_ordered : t.nonregular_unordered);
  }
}

bool images_form_chain(const Web& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if ((w[i] & ~w[j]) != 0 && (w[j] & ~w[i]) != 0) return false;
    }
  }
  return true;
}

struct SummandSet {
  std::vector<Triangulation> reps;
  std::vector<SummandData> data;
  std::vector<std::vector<CellPerm>> cell_perms;
  std::vector<bool> regular;
};

SummandSet prepare(const ConfigPtr& c, const std::vector<Triangulation>& list, const SymmetryGroup& g, std::size_t threads,
              bool need_regular) {
  SummandSet s;
  for (const auto& t : list) {
    if (&t.config() != c.get() && !(t.config() == *c)) throw std::invalid_argument("triangulation over other points");
  }
  // rebind onto c so that every triangulation shares one configuration
  std::vector<Triangulation> bound;
  for (const auto& t : list) bound.emplace_back(c, t.cells());
  s.reps = orbit_representatives(bound, g);
  std::vector<std::optional<SummandData>> data(s.reps.size());
  s.cell_perms.resize(s.reps.size());
  std::vector<char> reg(s.reps.size(), 0);
  detail::parallel_for(s.reps.size(), threads, [&](std::size_t i) {
    data[i] = make_summand_data(s.reps[i]);
    s.cell_perms[i] = cell_permutations(stabilizer(g, s.reps[i]), s.reps[i]);
    if (need_regular) reg[i] = is_regular(s.reps[i]).regular ? 1 : 0;
  });
  for (auto& d : data) s.data.push_back(std::move(*d));
  s.regular.assign(reg.begin(), reg.end());
  return s;
}

class Census {
 public:
  Census(const ConfigPtr& p, const ConfigPtr& q, const CensusOptions& options)
      : options_(options),
        fs_(free_sum(p, q)),
        gp_(automorphism_group(*p)),
        gq_(automorphism_group(*q)),
        product_(product_group(fs_, gp_, gq_)),
        full_group_(automorphism_group(*fs_.sum)) {}

  CountReport run(const std::vector<Triangulation>& p_list, const std::vector<Triangulation>& q_list) {
    const auto start = std::chrono::steady_clock::now();
    sp_ = prepare(fs_.p, p_list, gp_, options_.threads, options_.materialize);
    sq_ = prepare(fs_.q, q_list, gq_, options_.threads, options_.materialize);
    const std::size_t np = sp_.reps.size(), nq = sq_.reps.size();
    report_.pairs.resize(np * nq);
    std::exception_ptr error;
    std::mutex error_mutex;
    detail::parallel_for(np * nq, options_.threads, [&](std::size_t k) {
      if (abort_) return;
      try {
        run_pair(k / nq, k % nq, report_.pairs[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        abort_ = true;
      }
    });
    if (error) std::rethrow_exception(error);

    report_.p_classes = np;
    report_.q_classes = nq;
    report_.p_group = gp_.order();
    report_.q_group = gq_.order();
    report_.product_group = product_.order();
    report_.full_group = full_group_.order();
    for (const auto& pc : report_.pairs) {
      report_.p_sum += pc.p_sum;
      report_.q_sum += pc.q_sum;
    }
    report_.homomorphisms = report_.p_sum.target_orbits;
    if (options_.materialize) {
      report_.distinct_product = product_keys_.size();
      report_.distinct_full = full_.size();
      std::uint64_t rp = 0, rf = 0;
      OrderingTable per_class;
      for (const auto& [key, full_key] : product_keys_) rp += full_.at(full_key).regular ? 1 : 0;
      for (const auto& [key, info] : full_) {
        rf += info.regular ? 1 : 0;
        tally(per_class, info.regular, info.ordered);
      }
      report_.ordering_classes = per_class;
      report_.regular_product = rp;
      report_.regular_full = rf;
      report_.ordering = table_;
    }
    report_.memory_estimate = memory_;
    report_.peak_rss = peak_rss_bytes();
    report_.aborted = abort_;
    if (abort_) report_.abort_reason = "memory budget exceeded";
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(report_);
  }

 private:
  void run_pair(std::size_t i, std::size_t j, PairCount& out) {
    out.p_index = i;
    out.q_index = j;
    if (options_.memory_budget != 0 && options_.sample_rss) sample_rss();
    if (abort_) return;
    stream(i, j, true, out.p_sum);
    if (options_.q_sum && !abort_) stream(i, j, false, out.q_sum);
  }

  void stream(std::size_t i, std::size_t j, bool p_side, ConventionCounts& counts) {
    const SummandData& src = p_side ? sp_.data[i] : sq_.data[j];
    const SummandData& tgt = p_side ? sq_.data[j] : sp_.data[i];
    const auto& gs = p_side ? sp_.cell_perms[i] : sq_.cell_perms[j];
    const auto& hs = p_side ? sq_.cell_perms[j] : sp_.cell_perms[i];
    const std::vector<CellPerm> id_src{gs.front()};
    Web scratch;
    std::uint64_t since_sample = 0;
    enumerate_proper_psum_webs(src, tgt, [&](const Web& w) {
      ++counts.raw;
      if (orbit_minimal(w, id_src, &hs, scratch)) ++counts.target_orbits;
      if (options_.all_conventions) {
        if (orbit_minimal(w, gs, nullptr, scratch)) ++counts.source_orbits;
        if (orbit_minimal(w, gs, &hs, scratch)) ++counts.pair_orbits;
      }
      if (options_.materialize) record(i, j, p_side, w);
      if (options_.memory_budget != 0 && options_.sample_rss && ++since_sample % std::max<std::uint64_t>(1, options_.rss_check_interval) == 0) sample_rss();
      return !abort_;
    });
  }

  void record(std::size_t i, std::size_t j, bool p_side, const Web& w) {
    const Web other = complement_transpose(w, p_side ? sq_.reps[j].size() : sp_.reps[i].size());
    const Web& alpha = p_side ? w : other;
    const Web& beta = p_side ? other : w;
    const Triangulation t = assemble_sum(fs_, sp_.reps[i], sq_.reps[j], alpha, beta);
    CanonicalKey full_key = canonical_form(t, full_group_);
    CanonicalKey product_key = canonical_form(t, product_);
    std::optional<bool> regular;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = full_.find(full_key);
      if (it != full_.end()) regular = it->second.regular;
    }
    if (!regular) regular = is_regular(t).regular;
    const bool ordered = sp_.regular[i] && sq_.regular[j] && images_form_chain(alpha) && images_form_chain(beta);
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, fresh] = full_.emplace(full_key, ClassInfo{*regular, ordered});
    if (fresh) charge(full_key.size());
    it->second.ordered = it->second.ordered || ordered;
    if (product_keys_.emplace(std::move(product_key), full_key).second) charge(2 * full_key.size());
    tally(table_, *regular, ordered);
  }

  void sample_rss() {
    const std::uint64_t rss = peak_rss_bytes();
    if (rss > options_.memory_budget) abort_ = true;
  }

  void charge(std::size_t words) {
    memory_ += words * sizeof(std::uint64_t) + 96;
    if (options_.memory_budget != 0 && memory_ > options_.memory_budget) abort_ = true;
  }

  CensusOptions options_;
  FreeSum fs_;
  SymmetryGroup gp_, gq_, product_, full_group_;
  SummandSet sp_, sq_;
  CountReport report_;
  std::atomic<bool> abort_{false};
  std::mutex mutex_;
  struct ClassInfo {
    bool regular;
    bool ordered;  // some web representation is ordered
  };
  std::map<CanonicalKey, ClassInfo> full_;
  std::map<CanonicalKey, CanonicalKey> product_keys_;
  OrderingTable table_;
  std::uint64_t memory_ = 0;
};

}  // namespace

CountReport census(const ConfigPtr& p, const ConfigPtr& q, const std::vector<Triangulation>& p_list,
                   const std::vector<Triangulation>& q_list, const CensusOptions& options) {
  return Census(p, q, options).run(p_list, q_list);
}

}  // namespace freesum
