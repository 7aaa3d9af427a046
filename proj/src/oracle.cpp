#include "egsolve/oracle.hpp"

#include <algorithm>

namespace egsolve::oracle {

namespace {

// Breadth-first reachability over a strategy-restricted edge view. Returns
// false through `ok` if the walk reaches a player-0 vertex without a choice.
struct RestrictedView {
  const GameArena& g;
  const Strategy* strategy;  // may be null: player 0 unrestricted

  template <class Fn>
  bool for_each_edge(VertexId u, Fn&& fn) const {
    if (strategy != nullptr && g.is_player0(u)) {
      if (!strategy->defined(u)) return false;
      uint64_t e = strategy->choice_edge[u];
      fn(g.csr_targets()[e], g.csr_weights()[e]);
      return true;
    }
    for (auto [t, w] : g.successors(u)) fn(t, w);
    return true;
  }
};

bool reachable_set(const RestrictedView& view, uint32_t n,
                   const std::vector<VertexId>& roots,
                   std::vector<uint8_t>& in_reach) {
  in_reach.assign(n, 0);
  std::vector<VertexId> stack;
  for (VertexId v : roots) {
    if (!in_reach[v]) {
      in_reach[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    bool ok = view.for_each_edge(u, [&](VertexId t, Weight) {
      if (!in_reach[t]) {
        in_reach[t] = 1;
        stack.push_back(t);
      }
    });
    if (!ok) return false;
  }
  return true;
}

// Negative-cycle test on the subgraph induced by `in_reach`: start every
// distance at zero and relax for |reachable| rounds; a relaxation in the
// final round certifies a negative cycle inside the subgraph.
bool has_negative_cycle(const RestrictedView& view, uint32_t n,
                        const std::vector<uint8_t>& in_reach) {
  uint64_t reach_count = 0;
  for (uint32_t v = 0; v < n; ++v) reach_count += in_reach[v];
  if (reach_count == 0) return false;
  std::vector<int64_t> dist(n, 0);
  bool relaxed = false;
  for (uint64_t round = 0; round < reach_count + 1; ++round) {
    relaxed = false;
    for (uint32_t u = 0; u < n; ++u) {
      if (!in_reach[u]) continue;
      view.for_each_edge(u, [&](VertexId t, Weight w) {
        if (dist[u] + w < dist[t]) {
          dist[t] = dist[u] + w;
          relaxed = true;
        }
      });
    }
    if (!relaxed) return false;
  }
  return relaxed;
}

}  // namespace

ProgressMeasure min_credit_attractor(const GameArena& arena) {
  const uint32_t n = arena.num_vertices();
  const int64_t cap = arena.stats().credit_cap;
  const uint64_t credits = static_cast<uint64_t>(cap) + 1;
  uint64_t states;
  if (__builtin_mul_overflow(credits, static_cast<uint64_t>(n), &states) ||
      states > kMaxProductStates) {
    throw TooLargeError("credit-annotated product exceeds " +
                        std::to_string(kMaxProductStates) + " states");
  }

  auto index = [credits](VertexId v, int64_t c) {
    return static_cast<uint64_t>(v) * credits + static_cast<uint64_t>(c);
  };

  std::vector<uint8_t> lost(states, 0);
  std::vector<int32_t> moves_left(states, 0);
  std::vector<uint64_t> queue;

  for (uint32_t v = 0; v < n; ++v) {
    for (int64_t c = 0; c <= cap; ++c) {
      uint64_t s = index(v, c);
      if (arena.is_player0(v)) {
        int32_t avail = 0;
        for (auto [t, w] : arena.successors(v)) {
          (void)t;
          if (c + w >= 0) ++avail;
        }
        moves_left[s] = avail;
        if (avail == 0) {
          lost[s] = 1;
          queue.push_back(s);
        }
      } else {
        bool can_break = false;
        for (auto [t, w] : arena.successors(v)) {
          (void)t;
          if (c + w < 0) {
            can_break = true;
            break;
          }
        }
        if (can_break) {
          lost[s] = 1;
          queue.push_back(s);
        }
      }
    }
  }

  auto touch = [&](VertexId u, int64_t c) {
    uint64_t s = index(u, c);
    if (lost[s]) return;
    if (!arena.is_player0(u)) {
      lost[s] = 1;
      queue.push_back(s);
    } else if (--moves_left[s] == 0) {
      lost[s] = 1;
      queue.push_back(s);
    }
  };

  for (size_t head = 0; head < queue.size(); ++head) {
    uint64_t s = queue[head];
    VertexId v = static_cast<VertexId>(s / credits);
    int64_t c_here = static_cast<int64_t>(s % credits);
    for (auto [u, w] : arena.predecessors(v)) {
      if (c_here < cap) {
        int64_t c = c_here - w;
        if (c >= 0 && c <= cap) touch(u, c);
      } else {
        // Saturated credit: every source credit whose move lands at or
        // above the cap maps here.
        int64_t lo = cap - w;
        if (lo < 0) lo = 0;
        for (int64_t c = lo; c <= cap; ++c) touch(u, c);
      }
    }
  }

  std::vector<int64_t> raw(n, detail::kRawTop);
  for (uint32_t v = 0; v < n; ++v) {
    for (int64_t c = 0; c <= cap; ++c) {
      if (!lost[index(v, c)]) {
        raw[v] = c;
        break;
      }
    }
  }
  return ProgressMeasure::from_raw(std::move(raw), arena.id());
}

std::vector<VertexId> winning_set_by_strategy_enum(const GameArena& arena) {
  const uint32_t n = arena.num_vertices();
  std::vector<VertexId> player0;
  uint64_t combinations = 1;
  for (uint32_t v = 0; v < n; ++v) {
    if (!arena.is_player0(v)) continue;
    player0.push_back(v);
    if (__builtin_mul_overflow(combinations,
                               static_cast<uint64_t>(arena.out_degree(v)),
                               &combinations) ||
        combinations > kMaxStrategies) {
      throw TooLargeError("strategy space exceeds " +
                          std::to_string(kMaxStrategies) + " combinations");
    }
  }

  std::vector<uint64_t> pick(player0.size(), 0);
  std::vector<uint8_t> winning(n, 0);
  std::vector<uint8_t> in_reach;

  for (uint64_t combo = 0; combo < combinations; ++combo) {
    Strategy s;
    s.choice_edge.assign(n, Strategy::kNoChoice);
    for (size_t i = 0; i < player0.size(); ++i) {
      VertexId v = player0[i];
      s.choice_edge[v] = arena.csr_offsets()[v] + pick[i];
    }
    RestrictedView view{arena, &s};
    for (uint32_t v = 0; v < n; ++v) {
      if (winning[v]) continue;
      if (!reachable_set(view, n, {v}, in_reach)) continue;
      if (!has_negative_cycle(view, n, in_reach)) winning[v] = 1;
    }
    for (size_t i = 0; i < pick.size(); ++i) {
      if (++pick[i] < arena.out_degree(player0[i])) break;
      pick[i] = 0;
    }
  }

  std::vector<VertexId> result;
  for (uint32_t v = 0; v < n; ++v) {
    if (winning[v]) result.push_back(v);
  }
  return result;
}

bool verify_strategy(const GameArena& arena, const Strategy& strategy,
                     const std::vector<VertexId>& claimed_w0) {
  for (VertexId v : claimed_w0) {
    if (v >= arena.num_vertices()) {
      throw MalformedStrategyError("claimed vertex " + std::to_string(v) +
                                   " is out of range");
    }
    if (!arena.is_player0(v)) continue;
    if (!strategy.defined(v)) {
      throw MalformedStrategyError("no choice at claimed vertex " +
                                   std::to_string(v));
    }
    uint64_t e = strategy.choice_edge[v];
    if (e < arena.csr_offsets()[v] || e >= arena.csr_offsets()[v + 1]) {
      throw MalformedStrategyError("choice at vertex " + std::to_string(v) +
                                   " is not one of its successors");
    }
  }
  RestrictedView view{arena, &strategy};
  std::vector<uint8_t> in_reach;
  if (!reachable_set(view, arena.num_vertices(), claimed_w0, in_reach)) {
    return false;  // the play can reach a player-0 vertex with no choice
  }
  return !has_negative_cycle(view, arena.num_vertices(), in_reach);
}

bool verify_measure(const GameArena& arena, const ProgressMeasure& f) {
  if (f.size() != arena.num_vertices()) {
    throw CountMismatchError("measure length does not match the arena");
  }
  if (!is_progress_measure(arena, f)) return false;
  return f == min_credit_attractor(arena);
}

}  // namespace egsolve::oracle
