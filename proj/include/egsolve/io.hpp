#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "egsolve/arena.hpp"
#include "egsolve/energy.hpp"
#include "egsolve/measure_ops.hpp"
#include "egsolve/solver.hpp"

namespace egsolve {

// Arena text format, newline-terminated lines with single-space fields:
//   eg <V> <E>
//   v <id> <owner>        exactly V lines, ids 0..V-1 in order, owner 0 or 1
//   e <src> <dst> <weight> exactly E lines
// Lines starting with '#' are comments and may appear anywhere.
GameArena parse_arena(std::string_view text);
std::string write_arena(const GameArena& arena);

// Solution format: one line per vertex, ordered by id:
//   <id> <value>            value is a nonnegative integer or the token T
//   <id> <value> <target>   chosen successor for finite player-0 vertices
struct SolutionDocument {
  std::vector<EnergyValue> values;
  std::vector<VertexId> strategy;  // kNoTarget where absent

  static constexpr VertexId kNoTarget = UINT32_MAX;

  friend bool operator==(const SolutionDocument&,
                         const SolutionDocument&) = default;
};

SolutionDocument make_solution(const GameArena& arena,
                               const SolveReport& report);
std::string write_solution(const SolutionDocument& doc);
SolutionDocument parse_solution(std::string_view text);

ProgressMeasure measure_from_solution(const SolutionDocument& doc);

enum class Family : uint8_t { kRandom = 0, kCycleChain = 1, kClique = 2 };

Family family_from_name(std::string_view name);
std::string family_name(Family family);

// Deterministic generator input: equal specs give byte-identical arenas.
struct GenSpec {
  uint64_t n = 1;          // vertex count
  double d = 1.0;          // target average out-degree (Random family)
  int64_t wmin = 0;
  int64_t wmax = 0;
  double p0_frac = 0.5;    // fraction of player-0 vertices
  uint64_t seed = 0;
  Family family = Family::kRandom;
};

// Families:
//   Random     n vertices; one forced edge per vertex plus uniformly sampled
//              extras up to round(n*d) edges; uniform weights in [wmin,wmax].
//   CycleChain cycles of doubling length (2, 4, 8, ...) chained together;
//              even cycles close to weight len-1 against unit-negative
//              interiors, odd cycles are fully negative. Weights are clamped
//              into [wmin, wmax]. Stresses slow value propagation.
//   Clique     all n*n ordered pairs, self-loops included, uniform weights.
GameArena generate(const GenSpec& spec);

}  // namespace egsolve
