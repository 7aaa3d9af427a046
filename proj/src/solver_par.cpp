#include <algorithm>
#include <atomic>
#include <barrier>
#include <bit>
#include <chrono>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

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

struct alignas(64) WorkerCounters {
  uint64_t lifts = 0;
  uint64_t applications = 0;
};

void validate_options(const SolverOptions& options) {
  if (options.workers < 1 || options.workers > 1024) {
    throw InvalidConfigError("worker count must be in [1, 1024]");
  }
  if (options.mapping.kind == Mapping::Kind::kChunked) {
    uint32_t h = options.mapping.chunk;
    if (h == 0 || h > 64 || !std::has_single_bit(h)) {
      throw InvalidConfigError("chunk size must be a power of two in [1, 64]");
    }
  }
}

std::vector<size_t> even_bounds(size_t count, int workers) {
  std::vector<size_t> b(workers + 1);
  for (int w = 0; w <= workers; ++w) {
    b[w] = count * static_cast<size_t>(w) / static_cast<size_t>(workers);
  }
  return b;
}

// Cut points giving each worker roughly the same number of successor edges.
std::vector<size_t> edge_balanced_bounds(const GameArena& g,
                                         const std::vector<VertexId>& items,
                                         int workers) {
  uint64_t total = 0;
  for (VertexId v : items) total += g.out_degree(v);
  std::vector<size_t> b(workers + 1, 0);
  size_t idx = 0;
  uint64_t acc = 0;
  for (int w = 1; w < workers; ++w) {
    uint64_t goal = total / static_cast<uint64_t>(workers) *
                        static_cast<uint64_t>(w) +
                    total % static_cast<uint64_t>(workers) *
                        static_cast<uint64_t>(w) / workers;
    while (idx < items.size() && acc < goal) acc += g.out_degree(items[idx++]);
    b[w] = idx;
  }
  b[workers] = items.size();
  return b;
}

uint64_t sat_mul(uint64_t a, uint64_t b) {
  uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? UINT64_MAX : r;
}

// Every sweep but the last raises at least one vertex, each vertex can rise
// at most credit_cap + 1 times, so this budget can only bind on a bug.
uint64_t default_sweep_budget(const GameArena& g) {
  uint64_t per_vertex =
      static_cast<uint64_t>(g.stats().credit_cap) + 1;
  return sat_add(sat_mul(g.num_edges(), per_vertex), 1);
}

SolveReport finish_report(const GameArena& arena,
                          const std::atomic<int64_t>* f, SolveReport report,
                          Clock::time_point start) {
  std::vector<int64_t> raw(arena.num_vertices());
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    raw[v] = f[v].load(std::memory_order_relaxed);
  }
  report.measure = ProgressMeasure::from_raw(std::move(raw), arena.id());
  std::tie(report.w0, report.w1) = winning_sets(report.measure);
  report.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

void check_monotone(const std::atomic<int64_t>* f, std::vector<int64_t>& prev) {
  for (size_t v = 0; v < prev.size(); ++v) {
    int64_t cur = f[v].load(std::memory_order_relaxed);
    if (cur < prev[v]) {
      throw InternalInvariantError("measure decreased across a round");
    }
    prev[v] = cur;
  }
}

}  // namespace

SolveReport solve_sweep(const GameArena& arena, const SolverOptions& options) {
  validate_options(options);
  const auto start = Clock::now();
  Deadline deadline(options.timeout_seconds);
  const uint32_t n = arena.num_vertices();
  const int64_t cap = arena.stats().credit_cap;
  const int workers = options.workers;
  const bool chunked = options.mapping.kind == Mapping::Kind::kChunked;
  const uint32_t lanes = chunked ? options.mapping.chunk : 1;

  SolveReport report;
  report.variant = Variant::kSweep;
  report.mapping = options.mapping;
  report.workers = workers;
  if (n == 0) {
    report.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  }

  std::unique_ptr<std::atomic<int64_t>[]> f(new std::atomic<int64_t>[n]);
  for (uint32_t v = 0; v < n; ++v) f[v].store(0, std::memory_order_relaxed);

  const uint64_t budget =
      options.sweep_bound ? *options.sweep_bound : default_sweep_budget(arena);

  std::vector<size_t> bounds;
  if (chunked) {
    std::vector<VertexId> all(n);
    for (uint32_t v = 0; v < n; ++v) all[v] = v;
    bounds = edge_balanced_bounds(arena, all, workers);
  } else {
    bounds = even_bounds(n, workers);
  }

  std::atomic<bool> changed{false};
  bool stop = false;
  uint64_t sweeps = 0;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<WorkerCounters> counters(workers);
  std::vector<int64_t> prev;
  if (options.debug_checks) prev.assign(n, 0);

  auto on_round_end = [&]() noexcept {
    try {
      sweeps++;
      bool any_change = changed.load(std::memory_order_relaxed);
      changed.store(false, std::memory_order_relaxed);
      if (error) {
        stop = true;
        return;
      }
      if (options.debug_checks) check_monotone(f.get(), prev);
      if (!any_change) {
        stop = true;
        return;
      }
      if (sweeps >= budget) {
        throw BoundExhaustedError(
            "sweep budget of " + std::to_string(budget) +
            " exhausted before reaching a fixpoint");
      }
      deadline.check();
    } catch (...) {
      error = std::current_exception();
      stop = true;
    }
  };

  std::barrier barrier(workers, on_round_end);
  auto fetch = [&](VertexId t) {
    return f[t].load(std::memory_order_relaxed);
  };

  auto worker = [&](int id) {
    WorkerCounters& mine = counters[id];
    const size_t lo = bounds[id];
    const size_t hi = bounds[id + 1];
    while (!stop) {
      try {
        bool local_change = false;
        for (size_t i = lo; i < hi; ++i) {
          VertexId v = static_cast<VertexId>(i);
          int64_t old = f[v].load(std::memory_order_relaxed);
          int64_t cand = chunked
                             ? detail::raw_lift_chunked(arena, v, lanes, cap,
                                                        fetch)
                             : detail::raw_lift(arena, v, cap, fetch);
          mine.applications++;
          if (cand > old) {  // clamped lift: never lowers a value
            f[v].store(cand, std::memory_order_relaxed);
            mine.lifts++;
            local_change = true;
          }
        }
        if (local_change) changed.store(true, std::memory_order_relaxed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
      barrier.arrive_and_wait();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int id = 1; id < workers; ++id) pool.emplace_back(worker, id);
    worker(0);
  }
  if (error) std::rethrow_exception(error);

  for (const WorkerCounters& c : counters) {
    report.lifts += c.lifts;
    report.applications += c.applications;
  }
  report.rounds = sweeps;
  return finish_report(arena, f.get(), std::move(report), start);
}

SolveReport solve_frontier(const GameArena& arena,
                           const SolverOptions& options) {
  validate_options(options);
  const auto start = Clock::now();
  Deadline deadline(options.timeout_seconds);
  const uint32_t n = arena.num_vertices();
  const int64_t cap = arena.stats().credit_cap;
  const int workers = options.workers;
  const bool chunked = options.mapping.kind == Mapping::Kind::kChunked;
  const uint32_t lanes = chunked ? options.mapping.chunk : 1;

  SolveReport report;
  report.variant = Variant::kFrontier;
  report.mapping = options.mapping;
  report.workers = workers;
  if (n == 0) {
    report.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  }

  std::unique_ptr<std::atomic<int64_t>[]> f(new std::atomic<int64_t>[n]);
  for (uint32_t v = 0; v < n; ++v) f[v].store(0, std::memory_order_relaxed);
  std::unique_ptr<std::atomic<uint8_t>[]> in_next(new std::atomic<uint8_t>[n]);
  for (uint32_t v = 0; v < n; ++v) {
    in_next[v].store(0, std::memory_order_relaxed);
  }

  std::vector<VertexId> current;
  std::vector<std::vector<VertexId>> local_next(workers);
  std::vector<size_t> seed_bounds = even_bounds(n, workers);
  std::vector<size_t> bounds;
  bool stop = false;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<WorkerCounters> counters(workers);
  uint64_t pops = 0;
  uint64_t rounds = 0;
  std::vector<int64_t> prev;
  std::vector<uint8_t> mark;
  if (options.debug_checks) {
    prev.assign(n, 0);
    mark.assign(n, 0);
  }

  auto gather_and_partition = [&](bool first) {
    if (!first) {
      pops += current.size();
      rounds++;
    }
    current.clear();
    for (auto& buf : local_next) {
      current.insert(current.end(), buf.begin(), buf.end());
      buf.clear();
    }
    // Flags are cleared for everything gathered; vertices already at top are
    // dropped, lifting them again could never change anything.
    size_t keep = 0;
    for (VertexId u : current) {
      in_next[u].store(0, std::memory_order_relaxed);
      if (f[u].load(std::memory_order_relaxed) != detail::kRawTop) {
        current[keep++] = u;
      }
    }
    current.resize(keep);

    if (options.debug_checks) {
      check_monotone(f.get(), prev);
      for (VertexId u : current) {
        if (mark[u]) {
          throw InternalInvariantError("duplicate frontier entry " +
                                       std::to_string(u));
        }
        mark[u] = 1;
      }
      ProgressMeasure view = ProgressMeasure::from_raw(prev, arena.id());
      for (uint32_t v = 0; v < n; ++v) {
        if (!mark[v] && !epm_condition_holds(arena, view, v)) {
          throw InternalInvariantError("violated vertex " +
                                       std::to_string(v) +
                                       " is missing from the frontier");
        }
      }
      for (VertexId u : current) mark[u] = 0;
    }

    if (current.empty()) {
      stop = true;
      return;
    }
    bounds = chunked ? edge_balanced_bounds(arena, current, workers)
                     : even_bounds(current.size(), workers);
    deadline.check();
  };

  bool first_sync = true;
  auto on_round_end = [&]() noexcept {
    try {
      if (error) {
        stop = true;
        return;
      }
      gather_and_partition(first_sync);
      first_sync = false;
    } catch (...) {
      error = std::current_exception();
      stop = true;
    }
  };

  std::barrier barrier(workers, on_round_end);
  auto fetch = [&](VertexId t) {
    return f[t].load(std::memory_order_relaxed);
  };

  auto worker = [&](int id) {
    WorkerCounters& mine = counters[id];
    std::vector<VertexId>& next = local_next[id];

    // Seeding doubles as round zero: vertices that violate their condition
    // at f == 0 are exactly those whose moves force a negative step.
    try {
      for (size_t i = seed_bounds[id]; i < seed_bounds[id + 1]; ++i) {
        VertexId v = static_cast<VertexId>(i);
        bool any_neg = false;
        bool all_neg = true;
        for (auto [t, w] : arena.successors(v)) {
          (void)t;
          if (w < 0) {
            any_neg = true;
          } else {
            all_neg = false;
          }
        }
        if (arena.is_player0(v) ? all_neg : any_neg) next.push_back(v);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
    barrier.arrive_and_wait();

    while (!stop) {
      try {
        for (size_t i = bounds[id]; i < bounds[id + 1]; ++i) {
          VertexId v = current[i];
          int64_t old = f[v].load(std::memory_order_relaxed);
          int64_t cand =
              chunked
                  ? detail::raw_lift_chunked(arena, v, lanes, cap, fetch)
                  : detail::raw_lift(arena, v, cap, fetch);
          mine.applications++;
          if (cand <= old) continue;
          f[v].store(cand, std::memory_order_relaxed);
          mine.lifts++;
          for (auto [u, w] : arena.predecessors(v)) {
            (void)w;
            if (f[u].load(std::memory_order_relaxed) == detail::kRawTop) {
              continue;
            }
            if (in_next[u].exchange(1, std::memory_order_relaxed) == 0) {
              next.push_back(u);
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
      barrier.arrive_and_wait();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int id = 1; id < workers; ++id) pool.emplace_back(worker, id);
    worker(0);
  }
  if (error) std::rethrow_exception(error);

  for (const WorkerCounters& c : counters) {
    report.lifts += c.lifts;
    report.applications += c.applications;
  }
  report.pops = pops;
  report.rounds = rounds;
  return finish_report(arena, f.get(), std::move(report), start);
}

}  // namespace egsolve
