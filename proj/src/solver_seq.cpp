#include <bit>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "egsolve/solver.hpp"

namespace egsolve {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  explicit Deadline(double seconds) {
    if (seconds > 0) {
      at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(seconds));
      armed = true;
    }
  }
  void check() const {
    if (armed && Clock::now() >= at) {
      throw TimeoutError("solve timed out");
    }
  }
  Clock::time_point at{};
  bool armed = false;
};

// Fixed-capacity FIFO over vertex ids; membership is tracked by the caller.
class RingQueue {
 public:
  explicit RingQueue(uint32_t capacity)
      : buf_(capacity == 0 ? 1 : capacity), mask_or_cap_(buf_.size()) {}
  bool empty() const { return size_ == 0; }
  void push(VertexId v) {
    buf_[tail_] = v;
    tail_ = tail_ + 1 == mask_or_cap_ ? 0 : tail_ + 1;
    ++size_;
  }
  VertexId pop() {
    VertexId v = buf_[head_];
    head_ = head_ + 1 == mask_or_cap_ ? 0 : head_ + 1;
    --size_;
    return v;
  }

 private:
  std::vector<VertexId> buf_;
  size_t mask_or_cap_;
  size_t head_ = 0;
  size_t tail_ = 0;
  size_t size_ = 0;
};

uint64_t satisfied_edge_count(const GameArena& g,
                              const std::vector<int64_t>& f, VertexId v) {
  uint64_t n = 0;
  const int64_t fv = f[v];
  for (auto [t, w] : g.successors(v)) {
    if (fv >= detail::raw_ominus(f[t], w)) ++n;
  }
  return n;
}

void verify_seq_invariants(const GameArena& g, const std::vector<int64_t>& f,
                           const std::vector<int64_t>& counts,
                           const std::vector<uint8_t>& in_list) {
  if (!counter_invariant_holds(g, f, counts, in_list)) {
    throw InternalInvariantError("successor counter bookkeeping is wrong");
  }
  ProgressMeasure view = ProgressMeasure::from_raw(f, g.id());
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (in_list[v]) continue;
    if (!epm_condition_holds(g, view, v)) {
      throw InternalInvariantError("violated vertex " + std::to_string(v) +
                                   " is missing from the worklist");
    }
  }
}

}  // namespace

bool debug_checks_enabled_from_env() {
  const char* v = std::getenv("EGSOLVE_DEBUG_CHECKS");
  return v != nullptr && std::strcmp(v, "1") == 0;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kSeq:
      return "seq";
    case Variant::kSweep:
      return "sweep";
    case Variant::kFrontier:
      return "frontier";
  }
  return "?";
}

std::string Mapping::label() const {
  if (kind == Kind::kPerVertex) return "vertex";
  return "chunk" + std::to_string(chunk);
}

bool counter_invariant_holds(const GameArena& arena,
                             const std::vector<int64_t>& f_raw,
                             const std::vector<int64_t>& counts,
                             const std::vector<uint8_t>& in_list) {
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    if (!arena.is_player0(v) || in_list[v] ||
        f_raw[v] == detail::kRawTop) {
      continue;
    }
    uint64_t expect = satisfied_edge_count(arena, f_raw, v);
    if (counts[v] != static_cast<int64_t>(expect) || counts[v] < 1) {
      return false;
    }
  }
  return true;
}

SolveReport solve_seq(const GameArena& arena, const SolverOptions& options,
                      SeqInspector* inspector) {
  const auto start = Clock::now();
  Deadline deadline(options.timeout_seconds);
  const uint32_t n = arena.num_vertices();
  const int64_t cap = arena.stats().credit_cap;

  std::vector<int64_t> f(n, 0);
  std::vector<int64_t> count(n, 0);
  std::vector<uint8_t> in_list(n, 0);
  RingQueue queue(n);

  // Seed: player-0 vertices with only negative moves, player-1 vertices with
  // at least one. Everything else already satisfies its condition at f == 0.
  for (uint32_t v = 0; v < n; ++v) {
    uint64_t nonneg = 0;
    for (auto [t, w] : arena.successors(v)) {
      (void)t;
      if (w >= 0) ++nonneg;
    }
    bool seeded = arena.is_player0(v)
                      ? nonneg == 0
                      : nonneg < arena.out_degree(v);
    if (seeded) {
      queue.push(v);
      in_list[v] = 1;
    }
    if (arena.is_player0(v)) {
      count[v] = seeded ? 0 : static_cast<int64_t>(nonneg);
    }
  }

  SolveReport report;
  report.variant = Variant::kSeq;
  report.mapping = options.mapping;
  report.workers = 1;

  auto fetch = [&](VertexId t) { return f[t]; };
  while (true) {
    if (inspector != nullptr) {
      inspector->at_loop_head(arena, f, count, in_list);
    }
    if (options.debug_checks) {
      verify_seq_invariants(arena, f, count, in_list);
    }
    if (queue.empty()) break;
    if ((report.pops & 1023) == 0) deadline.check();

    VertexId v = queue.pop();
    in_list[v] = 0;
    report.pops++;

    const int64_t old = f[v];
    const int64_t lifted = detail::raw_lift(arena, v, cap, fetch);
    report.applications++;
    if (lifted == old) continue;  // scheduled vertices are always violated
    if (options.debug_checks && lifted < old) {
      throw InternalInvariantError("lift decreased the measure");
    }
    f[v] = lifted;
    report.lifts++;

    if (arena.is_player0(v)) {
      count[v] = static_cast<int64_t>(satisfied_edge_count(arena, f, v));
    }
    for (auto [u, w] : arena.predecessors(v)) {
      // Only predecessors this edge now leaves violated are of interest;
      // a value of top never compares below anything, so top vertices are
      // never rescheduled.
      if (f[u] >= detail::raw_ominus(lifted, w)) continue;
      if (arena.is_player0(u)) {
        if (f[u] >= detail::raw_ominus(old, w)) count[u]--;
        if (count[u] <= 0 && !in_list[u]) {
          queue.push(u);
          in_list[u] = 1;
        }
      } else if (!in_list[u]) {
        queue.push(u);
        in_list[u] = 1;
      }
    }
  }

  report.measure = ProgressMeasure::from_raw(std::move(f), arena.id());
  std::tie(report.w0, report.w1) = winning_sets(report.measure);
  report.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

uint32_t choose_chunk_size(const GameArena& arena) {
  long long rounded = llround(arena.stats().avg_out_degree);
  if (rounded < 1) rounded = 1;
  if (rounded > 64) rounded = 64;
  return std::bit_floor(static_cast<uint32_t>(rounded));
}

EnergyValue lift_chunked(const GameArena& arena, const ProgressMeasure& f,
                         VertexId v, uint32_t lanes) {
  if (lanes == 0 || lanes > 64 || !std::has_single_bit(lanes)) {
    throw InvalidConfigError("lane count must be a power of two in [1, 64]");
  }
  const std::vector<int64_t>& raw = f.raw();
  int64_t r =
      detail::raw_lift_chunked(arena, v, lanes, arena.stats().credit_cap,
                               [&](VertexId t) { return raw[t]; });
  return EnergyValue::from_raw(r);
}

SolveReport solve(const GameArena& arena, Variant variant,
                  const SolverOptions& options) {
  switch (variant) {
    case Variant::kSeq:
      return solve_seq(arena, options);
    case Variant::kSweep:
      return solve_sweep(arena, options);
    case Variant::kFrontier:
      return solve_frontier(arena, options);
  }
  throw InvalidConfigError("unknown solver variant");
}

}  // namespace egsolve
