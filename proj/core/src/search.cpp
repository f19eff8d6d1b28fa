#include "rainbow/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Number of independent subtrees the tree is split into. Fixed so that the
// split (and therefore the sequential-equivalent node count) does not depend
// on the number of workers.
constexpr std::size_t kTargetSubtrees = 64;
constexpr std::uint64_t kClockStride = 1u << 14;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<std::uint64_t>(p);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
    if (acc > kSaturated) return kSaturated;  // C(n, i) only grows for i <= n/2
  }
  return static_cast<std::uint64_t>(acc);
}

void check_search_args(int k, int t, int n) {
  if (k < 3) throw std::invalid_argument("k must be >= 3, got " + std::to_string(k));
  if (t < 1 || n < 1) throw std::invalid_argument("t and n must be >= 1");
  if (static_cast<std::int64_t>(t) * n > kSearchGuard) {
    throw GuardViolation("search guard: t*n = " + std::to_string(static_cast<std::int64_t>(t) * n) +
                         " exceeds " + std::to_string(kSearchGuard));
  }
}

// Partial canonical coloring of positions 1..depth.
struct Partial {
  std::vector<Color> colors;  // 1-indexed, size m+1
  std::vector<int> remaining;
  int introduced = 0;
  int depth = 0;
};

struct Problem {
  int k;
  int t;
  int n;
  int m;
  bool can_be_rainbow;  // false when k > t
};

// True if some AP(k) whose last term is `pos` has pairwise distinct colors.
bool rainbow_ends_at(const Problem& pb, const std::vector<Color>& colors, int pos,
                     std::vector<std::uint32_t>& stamp, std::uint32_t& epoch) {
  if (!pb.can_be_rainbow) return false;
  const int span = pb.k - 1;
  for (int d = 1; pos - span * d >= 1; ++d) {
    bool distinct = true;
    if (pb.t <= 64) {
      std::uint64_t seen = 0;
      for (int i = 0, p = pos; i < pb.k; ++i, p -= d) {
        const std::uint64_t bit = std::uint64_t{1} << colors[static_cast<std::size_t>(p)];
        if (seen & bit) {
          distinct = false;
          break;
        }
        seen |= bit;
      }
    } else {
      if (++epoch == 0) {
        std::fill(stamp.begin(), stamp.end(), 0u);
        epoch = 1;
      }
      for (int i = 0, p = pos; i < pb.k; ++i, p -= d) {
        auto& s = stamp[static_cast<std::size_t>(colors[static_cast<std::size_t>(p)])];
        if (s == epoch) {
          distinct = false;
          break;
        }
        s = epoch;
      }
    }
    if (distinct) return true;
  }
  return false;
}

std::uint64_t completions_of(const Problem& pb, const Partial& st) {
  std::vector<int> spare(st.remaining.begin(), st.remaining.begin() + st.introduced);
  return count_canonical_completions(pb.m - st.depth, spare, pb.t - st.introduced, pb.n);
}

struct SubtreeResult {
  std::optional<std::vector<Color>> witness;
  std::uint64_t nodes = 0;
  std::uint64_t examined = 0;
  bool exhausted = false;
  bool timed_out = false;
  bool cancelled = false;
};

// Stop signal shared by workers. A subtree is abandoned when a global stop
// is raised or when a lower-indexed subtree has already decided the outcome.
struct StopSignal {
  std::atomic<bool> halt{false};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};

  [[nodiscard]] bool should_stop(std::size_t index) const {
    return halt.load(std::memory_order_relaxed) || index > cutoff.load(std::memory_order_relaxed);
  }
  void lower_cutoff(std::size_t index) {
    std::size_t cur = cutoff.load();
    while (index < cur && !cutoff.compare_exchange_weak(cur, index)) {
    }
  }
};

class SubtreeSearch {
 public:
  SubtreeSearch(const Problem& pb, Partial start, std::size_t index, std::uint64_t cap,
                Clock::time_point deadline, bool has_deadline, const StopSignal* stop,
                std::atomic<std::uint64_t>* shared_nodes, std::uint64_t shared_budget)
      : pb_(pb),
        st_(std::move(start)),
        index_(index),
        cap_(cap),
        deadline_(deadline),
        has_deadline_(has_deadline),
        stop_(stop),
        shared_nodes_(shared_nodes),
        shared_budget_(shared_budget),
        stamp_(static_cast<std::size_t>(pb.t), 0u) {}

  SubtreeResult run() {
    descend();
    return std::move(result_);
  }

 private:
  // Returns true when the search must stop (witness, budget, cancel).
  bool descend() {
    if (st_.depth == pb_.m) {
      result_.examined = sat_add(result_.examined, 1);
      result_.witness = std::vector<Color>(st_.colors.begin() + 1, st_.colors.end());
      return true;
    }
    const int pos = st_.depth + 1;
    const int top = std::min(st_.introduced, pb_.t - 1);
    for (int c = 0; c <= top; ++c) {
      auto& cap = st_.remaining[static_cast<std::size_t>(c)];
      if (cap == 0) continue;
      if (tick()) return true;
      const bool fresh = c == st_.introduced;
      st_.colors[static_cast<std::size_t>(pos)] = c;
      --cap;
      if (fresh) ++st_.introduced;
      st_.depth = pos;
      bool stop = false;
      if (rainbow_ends_at(pb_, st_.colors, pos, stamp_, epoch_)) {
        result_.examined = sat_add(result_.examined, completions_of(pb_, st_));
      } else {
        stop = descend();
      }
      st_.depth = pos - 1;
      if (fresh) --st_.introduced;
      ++cap;
      if (stop) return true;
    }
    return false;
  }

  bool tick() {
    ++result_.nodes;
    if (result_.nodes > cap_) {
      result_.exhausted = true;
      return true;
    }
    if (shared_nodes_ != nullptr &&
        shared_nodes_->fetch_add(1, std::memory_order_relaxed) + 1 > shared_budget_) {
      result_.exhausted = true;
      return true;
    }
    if ((result_.nodes & (kClockStride - 1)) == 0) {
      if (stop_ != nullptr && stop_->should_stop(index_)) {
        result_.cancelled = true;
        return true;
      }
      if (has_deadline_ && Clock::now() > deadline_) {
        result_.timed_out = true;
        return true;
      }
    }
    return false;
  }

  const Problem& pb_;
  Partial st_;
  std::size_t index_;
  std::uint64_t cap_;
  Clock::time_point deadline_;
  bool has_deadline_;
  const StopSignal* stop_;
  std::atomic<std::uint64_t>* shared_nodes_;
  std::uint64_t shared_budget_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  SubtreeResult result_;
};

struct Split {
  std::vector<Partial> prefixes;
  std::uint64_t nodes = 0;
  std::uint64_t examined = 0;  // completions of prefixes pruned while splitting
};

// Expands the tree breadth-first, level by level, until at least
// kTargetSubtrees live prefixes exist or the full depth is reached.
// Expansion preserves lexicographic order.
Split split_tree(const Problem& pb) {
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(pb.t), 0u);
  std::uint32_t epoch = 0;
  Split split;
  Partial root;
  root.colors.assign(static_cast<std::size_t>(pb.m) + 1, -1);
  root.remaining.assign(static_cast<std::size_t>(pb.t), pb.n);
  split.prefixes.push_back(std::move(root));
  while (split.prefixes.size() < kTargetSubtrees && !split.prefixes.empty() &&
         split.prefixes.front().depth < pb.m) {
    std::vector<Partial> next;
    for (const Partial& p : split.prefixes) {
      const int pos = p.depth + 1;
      const int top = std::min(p.introduced, pb.t - 1);
      for (int c = 0; c <= top; ++c) {
        if (p.remaining[static_cast<std::size_t>(c)] == 0) continue;
        ++split.nodes;
        Partial child = p;
        child.colors[static_cast<std::size_t>(pos)] = c;
        --child.remaining[static_cast<std::size_t>(c)];
        if (c == child.introduced) ++child.introduced;
        child.depth = pos;
        if (rainbow_ends_at(pb, child.colors, pos, stamp, epoch)) {
          split.examined = sat_add(split.examined, completions_of(pb, child));
        } else {
          next.push_back(std::move(child));
        }
      }
    }
    split.prefixes = std::move(next);
  }
  return split;
}

SearchOutcome run_search(int k, int t, int n, const SearchConfig& cfg) {
  check_search_args(k, t, n);
  check_config(cfg);
  const auto started = Clock::now();
  const bool has_deadline = cfg.time_budget > 0;
  const auto deadline =
      started + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(
                    has_deadline ? cfg.time_budget : 0.0));

  const Problem pb{k, t, n, t * n, k <= t};
  SearchOutcome out;
  auto finish = [&]() {
    out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return out;
  };

  Split split = split_tree(pb);
  out.stats.nodes = split.nodes;
  out.stats.canonical_colorings_examined = split.examined;
  if (split.nodes > cfg.node_budget) {
    out.budget_exhausted = true;
    return finish();
  }
  const std::uint64_t cap = cfg.node_budget - split.nodes;
  const std::size_t count = split.prefixes.size();
  std::vector<std::optional<SubtreeResult>> results(count);
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(cfg.parallel_width), count));

  if (cfg.deterministic) {
    // Each subtree runs with the whole remaining budget as its cap; the merge
    // below replays them in order as a single sequential walk would, so the
    // outcome is independent of how many workers ran them.
    StopSignal stop;
    std::mutex frontier_mutex;
    std::size_t frontier = 0;
    std::uint64_t frontier_nodes = split.nodes;
    bool decided = false;

    auto settle = [&](std::size_t i, SubtreeResult r) {
      const std::lock_guard lock(frontier_mutex);
      if (r.witness) stop.lower_cutoff(i);
      if (r.timed_out) stop.halt.store(true);
      results[i] = std::move(r);
      while (!decided && frontier < count && results[frontier] && !results[frontier]->cancelled) {
        const SubtreeResult& f = *results[frontier];
        frontier_nodes = sat_add(frontier_nodes, f.nodes);
        if (f.exhausted || f.witness || frontier_nodes > cfg.node_budget) {
          stop.lower_cutoff(frontier);
          decided = true;
          break;
        }
        ++frontier;
      }
    };

    std::atomic<std::size_t> next_index{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next_index.fetch_add(1);
        if (i >= count || stop.should_stop(i)) return;
        SubtreeSearch search(pb, split.prefixes[i], i, cap, deadline, has_deadline, &stop,
                             nullptr, cfg.node_budget);
        settle(i, search.run());
      }
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < count; ++i) {
      if (!results[i] || results[i]->cancelled) {
        // Only reachable when a timeout halted the workers early.
        out.budget_exhausted = true;
        break;
      }
      const SubtreeResult& r = *results[i];
      out.stats.nodes = sat_add(out.stats.nodes, r.nodes);
      out.stats.canonical_colorings_examined =
          sat_add(out.stats.canonical_colorings_examined, r.examined);
      if (r.timed_out || r.exhausted || out.stats.nodes > cfg.node_budget) {
        out.budget_exhausted = true;
        break;
      }
      if (r.witness) {
        out.witness = validate_equinumerous(*r.witness, t, n, k);
        break;
      }
    }
    return finish();
  }

  // Free-running mode: first witness wins, one global node counter.
  StopSignal stop;
  std::atomic<std::uint64_t> shared_nodes{split.nodes};
  std::atomic<std::size_t> next_index{0};
  std::mutex result_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next_index.fetch_add(1);
      if (i >= count || stop.halt.load()) return;
      SubtreeSearch search(pb, split.prefixes[i], i, cap, deadline, has_deadline, &stop,
                           &shared_nodes, cfg.node_budget);
      SubtreeResult r = search.run();
      if (r.witness || r.exhausted || r.timed_out) stop.halt.store(true);
      const std::lock_guard lock(result_mutex);
      results[i] = std::move(r);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  bool exhausted = false;
  for (std::size_t i = 0; i < count; ++i) {
    if (!results[i]) continue;
    const SubtreeResult& r = *results[i];
    out.stats.canonical_colorings_examined =
        sat_add(out.stats.canonical_colorings_examined, r.examined);
    exhausted = exhausted || r.exhausted || r.timed_out || r.cancelled;
    if (r.witness && !out.witness) out.witness = validate_equinumerous(*r.witness, t, n, k);
  }
  const bool all_ran = std::all_of(results.begin(), results.end(),
                                   [](const auto& r) { return r.has_value(); });
  out.stats.nodes = std::min(shared_nodes.load(), cfg.node_budget);
  out.budget_exhausted = !out.witness && (exhausted || !all_ran);
  return finish();
}

}  // namespace

void check_config(const SearchConfig& cfg) {
  if (cfg.node_budget == 0) throw std::invalid_argument("node_budget must be positive");
  if (cfg.parallel_width < 1) throw std::invalid_argument("parallel_width must be >= 1");
}

std::uint64_t count_canonical_completions(std::int64_t remaining_positions,
                                          const std::vector<int>& spare_capacity,
                                          int unused_colors, int n) {
  std::uint64_t total = 1;
  std::int64_t free = remaining_positions;
  for (const int spare : spare_capacity) {
    total = sat_mul(total, sat_binomial(free, spare));
    free -= spare;
  }
  // Unlabeled classes of size n: the class holding the first free cell
  // picks n-1 companions, and so on.
  for (int i = 0; i < unused_colors; ++i) {
    total = sat_mul(total, sat_binomial(free - 1, n - 1));
    free -= n;
  }
  return free == 0 ? total : 0;
}

std::uint64_t count_canonical_colorings(int t, int n) {
  return count_canonical_completions(static_cast<std::int64_t>(t) * n, {}, t, n);
}

SearchOutcome search_rainbow_free(int k, int t, int n, const SearchConfig& cfg) {
  return run_search(k, t, n, cfg);
}

std::string to_string(VerificationStatus status) {
  switch (status) {
    case VerificationStatus::all_contain_rainbow: return "all_contain_rainbow";
    case VerificationStatus::counterexample_found: return "counterexample_found";
    case VerificationStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

VerificationResult verify_all(int k, int t, int n, const SearchConfig& cfg) {
  const SearchOutcome outcome = run_search(k, t, n, cfg);
  VerificationResult result;
  result.k = k;
  result.t = t;
  result.n = n;
  result.stats = outcome.stats;
  result.canonical_colorings_examined = outcome.stats.canonical_colorings_examined;
  if (outcome.witness) {
    result.status = VerificationStatus::counterexample_found;
    result.counterexample = outcome.witness;
  } else if (outcome.budget_exhausted) {
    result.status = VerificationStatus::budget_exhausted;
  } else {
    result.status = VerificationStatus::all_contain_rainbow;
  }
  return result;
}

}  // namespace rainbow
