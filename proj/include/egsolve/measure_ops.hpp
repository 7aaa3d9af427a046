#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "egsolve/arena.hpp"
#include "egsolve/energy.hpp"

namespace egsolve {

// Memoryless player-0 choice map. The choice is stored as a CSR edge index
// (not just a target vertex) so that parallel edges with different weights
// stay distinguishable; the chosen successor is the edge's target.
struct Strategy {
  static constexpr uint64_t kNoChoice = UINT64_MAX;

  std::vector<uint64_t> choice_edge;  // per vertex; kNoChoice where undefined

  bool defined(VertexId v) const {
    return v < choice_edge.size() && choice_edge[v] != kNoChoice;
  }
  VertexId target(const GameArena& arena, VertexId v) const {
    return arena.csr_targets()[choice_edge[v]];
  }
};

namespace detail {

// delta(f, v) evaluated at v over a raw value fetch, capped to top above the
// credit bound: min over successors for player 0, max for player 1.
template <class Fetch>
int64_t raw_lift(const GameArena& g, VertexId v, int64_t credit_cap,
                 Fetch&& fetch) {
  const uint64_t begin = g.csr_offsets()[v];
  const uint64_t end = g.csr_offsets()[v + 1];
  const VertexId* targets = g.csr_targets().data();
  const Weight* weights = g.csr_weights().data();
  int64_t acc = raw_ominus(fetch(targets[begin]), weights[begin]);
  if (g.is_player0(v)) {
    for (uint64_t i = begin + 1; i < end && acc > 0; ++i) {
      int64_t c = raw_ominus(fetch(targets[i]), weights[i]);
      if (c < acc) acc = c;
    }
  } else {
    for (uint64_t i = begin + 1; i < end && acc != kRawTop; ++i) {
      int64_t c = raw_ominus(fetch(targets[i]), weights[i]);
      if (c > acc) acc = c;
    }
  }
  return acc > credit_cap ? kRawTop : acc;
}

// Same value as raw_lift, computed the way a cooperating lane group would:
// each of the `lanes` lanes strides over the successor row, partial results
// are folded by a binary reduction tree. min/max are associative and
// commutative, so the result is identical to the scalar scan.
template <class Fetch>
int64_t raw_lift_chunked(const GameArena& g, VertexId v, uint32_t lanes,
                         int64_t credit_cap, Fetch&& fetch) {
  constexpr uint32_t kMaxLanes = 64;
  const uint64_t begin = g.csr_offsets()[v];
  const uint64_t count = g.csr_offsets()[v + 1] - begin;
  const VertexId* targets = g.csr_targets().data() + begin;
  const Weight* weights = g.csr_weights().data() + begin;
  const bool minimize = g.is_player0(v);

  int64_t acc[kMaxLanes];
  for (uint32_t lane = 0; lane < lanes; ++lane) {
    acc[lane] = minimize ? kRawTop : 0;  // neutral element per reduction
    for (uint64_t i = lane; i < count; i += lanes) {
      int64_t c = raw_ominus(fetch(targets[i]), weights[i]);
      if (minimize ? c < acc[lane] : c > acc[lane]) acc[lane] = c;
    }
  }
  for (uint32_t step = 1; step < lanes; step <<= 1) {
    for (uint32_t lane = 0; lane + step < lanes; lane += 2 * step) {
      int64_t other = acc[lane + step];
      if (minimize ? other < acc[lane] : other > acc[lane]) acc[lane] = other;
    }
  }
  return acc[0] > credit_cap ? kRawTop : acc[0];
}

}  // namespace detail

// delta(f, v) at v: min (player 0) / max (player 1) over successors of
// f(v') ominus w(v, v'), capped to top beyond the arena's credit bound.
// The raw value may lie below f(v); solvers either apply it only to vertices
// whose local condition is violated or clamp with max(f(v), .).
EnergyValue lift_value(const GameArena& arena, const ProgressMeasure& f,
                       VertexId v);

// True iff the local progress-measure condition holds at v: some successor
// satisfies f(v) >= f(v') ominus w for player 0, all successors for player 1.
bool epm_condition_holds(const GameArena& arena, const ProgressMeasure& f,
                         VertexId v);

// True iff f satisfies the local condition at every vertex.
bool is_progress_measure(const GameArena& arena, const ProgressMeasure& f);

// Splits vertices by finiteness of the least measure: finite vertices are
// won by player 0 with f(v) as the minimum sufficient initial credit.
std::pair<std::vector<VertexId>, std::vector<VertexId>> winning_sets(
    const ProgressMeasure& f);

// For each player-0 vertex with finite measure, picks the first successor
// (row order) satisfying the local condition. Requires the least measure;
// raises NoWitnessError if some finite player-0 vertex has no witness.
Strategy extract_strategy(const GameArena& arena, const ProgressMeasure& f);

}  // namespace egsolve
