#include "egsolve/measure_ops.hpp"

#include <cassert>

namespace egsolve {

EnergyValue lift_value(const GameArena& arena, const ProgressMeasure& f,
                       VertexId v) {
  assert(f.size() == arena.num_vertices());
  assert(f.arena_id() == 0 || f.arena_id() == arena.id());
  const std::vector<int64_t>& raw = f.raw();
  int64_t r = detail::raw_lift(arena, v, arena.stats().credit_cap,
                               [&](VertexId t) { return raw[t]; });
  return EnergyValue::from_raw(r);
}

bool epm_condition_holds(const GameArena& arena, const ProgressMeasure& f,
                         VertexId v) {
  const std::vector<int64_t>& raw = f.raw();
  const int64_t fv = raw[v];
  if (arena.is_player0(v)) {
    for (auto [t, w] : arena.successors(v)) {
      if (fv >= detail::raw_ominus(raw[t], w)) return true;
    }
    return false;
  }
  for (auto [t, w] : arena.successors(v)) {
    if (fv < detail::raw_ominus(raw[t], w)) return false;
  }
  return true;
}

bool is_progress_measure(const GameArena& arena, const ProgressMeasure& f) {
  if (f.size() != arena.num_vertices()) {
    throw CountMismatchError("measure length does not match the arena");
  }
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    if (!epm_condition_holds(arena, f, v)) return false;
  }
  return true;
}

std::pair<std::vector<VertexId>, std::vector<VertexId>> winning_sets(
    const ProgressMeasure& f) {
  std::vector<VertexId> w0, w1;
  for (uint32_t v = 0; v < f.size(); ++v) {
    if (f[v].is_top()) {
      w1.push_back(v);
    } else {
      w0.push_back(v);
    }
  }
  return {std::move(w0), std::move(w1)};
}

Strategy extract_strategy(const GameArena& arena, const ProgressMeasure& f) {
  if (f.size() != arena.num_vertices()) {
    throw CountMismatchError("measure length does not match the arena");
  }
  const std::vector<int64_t>& raw = f.raw();
  Strategy s;
  s.choice_edge.assign(arena.num_vertices(), Strategy::kNoChoice);
  for (uint32_t v = 0; v < arena.num_vertices(); ++v) {
    if (!arena.is_player0(v) || f[v].is_top()) continue;
    const int64_t fv = raw[v];
    const uint64_t begin = arena.csr_offsets()[v];
    const uint64_t end = arena.csr_offsets()[v + 1];
    bool found = false;
    for (uint64_t i = begin; i < end; ++i) {
      VertexId t = arena.csr_targets()[i];
      if (fv >= detail::raw_ominus(raw[t], arena.csr_weights()[i])) {
        s.choice_edge[v] = i;
        found = true;
        break;
      }
    }
    if (!found) throw NoWitnessError(v);
  }
  return s;
}

}  // namespace egsolve
