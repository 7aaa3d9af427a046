#pragma once

#include <vector>

#include "egsolve/arena.hpp"
#include "egsolve/energy.hpp"
#include "egsolve/measure_ops.hpp"

namespace egsolve::oracle {

// Hard caps on the exhaustive constructions; exceeding them raises
// TooLargeError rather than silently degrading.
inline constexpr uint64_t kMaxProductStates = 10'000'000;
inline constexpr uint64_t kMaxStrategies = 100'000;

// Ground truth via an explicit credit-annotated safety game: states (v, c)
// with c in [0, credit_cap], moves available when the credit stays
// nonnegative, and a backward attractor to the states where player 0 is
// stuck. The least credit keeping (v, c) safe equals the least progress
// measure, with top where no credit works. Deliberately shares no machinery
// with the lifting solvers.
ProgressMeasure min_credit_attractor(const GameArena& arena);

// Player-0 winning set by exhaustive enumeration of memoryless strategies:
// v is winning iff some strategy leaves no negative cycle reachable from v
// in the restricted graph. Tiny inputs only.
std::vector<VertexId> winning_set_by_strategy_enum(const GameArena& arena);

// True iff the strategy-restricted graph has no negative cycle reachable
// from any claimed winning vertex. Raises MalformedStrategyError when the
// strategy is undefined or inconsistent on a claimed player-0 vertex.
bool verify_strategy(const GameArena& arena, const Strategy& strategy,
                     const std::vector<VertexId>& claimed_w0);

// True iff f is a progress measure and pointwise equals the attractor's
// least measure.
bool verify_measure(const GameArena& arena, const ProgressMeasure& f);

}  // namespace egsolve::oracle
