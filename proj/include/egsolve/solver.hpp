#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egsolve/arena.hpp"
#include "egsolve/energy.hpp"
#include "egsolve/measure_ops.hpp"

namespace egsolve {

enum class Variant : uint8_t { kSeq = 0, kSweep = 1, kFrontier = 2 };

std::string variant_name(Variant v);

// How parallel workers divide lift work: one worker per frontier vertex, or
// a group of 2^k lanes cooperating on one vertex's successor reduction.
struct Mapping {
  enum class Kind : uint8_t { kPerVertex = 0, kChunked = 1 };

  Kind kind = Kind::kPerVertex;
  uint32_t chunk = 1;  // lane count when chunked; power of two in [1, 64]

  static Mapping per_vertex() { return Mapping{}; }
  static Mapping chunked(uint32_t lanes) {
    return Mapping{Kind::kChunked, lanes};
  }
  std::string label() const;
};

struct SolverOptions {
  int workers = 1;
  Mapping mapping{};
  // Sweep budget override; the default is a provably sufficient bound.
  std::optional<uint64_t> sweep_bound;
  // Enables the expensive per-step invariant scans.
  bool debug_checks = false;
  // Cooperative cancellation budget in seconds; 0 disables.
  double timeout_seconds = 0.0;
};

// True when EGSOLVE_DEBUG_CHECKS=1 is set in the environment.
bool debug_checks_enabled_from_env();

struct SolveReport {
  ProgressMeasure measure;
  std::vector<VertexId> w0;
  std::vector<VertexId> w1;
  uint64_t lifts = 0;         // lift applications that raised a value
  uint64_t applications = 0;  // all lift applications, no-ops included
  uint64_t pops = 0;          // worklist / frontier extractions
  uint64_t rounds = 0;        // sweeps or frontier rounds; 0 for seq
  double wall_seconds = 0.0;
  Variant variant = Variant::kSeq;
  Mapping mapping{};
  int workers = 1;
};

// Test hook called at the head of every sequential main-loop iteration
// (including the terminal one with an empty worklist).
struct SeqInspector {
  virtual ~SeqInspector() = default;
  virtual void at_loop_head(const GameArena& arena,
                            const std::vector<int64_t>& f_raw,
                            const std::vector<int64_t>& counts,
                            const std::vector<uint8_t>& in_list) = 0;
};

// Counter-based sequential solver. FIFO extraction; every pop strictly
// raises the popped vertex's value.
SolveReport solve_seq(const GameArena& arena, const SolverOptions& options = {},
                      SeqInspector* inspector = nullptr);

// Full-vertex parallel sweeps with the clamped lift until a sweep changes
// nothing. Raises BoundExhaustedError if the sweep budget runs out first.
SolveReport solve_sweep(const GameArena& arena,
                        const SolverOptions& options = {});

// Frontier rounds: lift the active set in parallel, notify predecessors of
// changed vertices into the next frontier with flag-based deduplication.
SolveReport solve_frontier(const GameArena& arena,
                           const SolverOptions& options = {});

SolveReport solve(const GameArena& arena, Variant variant,
                  const SolverOptions& options = {});

// Largest power of two at most max(1, round(avg out-degree)), clamped to the
// supported lane range.
uint32_t choose_chunk_size(const GameArena& arena);

// delta with the successor scan strided over `lanes` lanes and tree-combined;
// value-identical to lift_value.
EnergyValue lift_chunked(const GameArena& arena, const ProgressMeasure& f,
                         VertexId v, uint32_t lanes);

// Bookkeeping invariant of the sequential solver, checkable on a snapshot:
// every player-0 vertex outside the worklist with a finite value has
// count == |successor edges satisfying the local condition| >= 1.
bool counter_invariant_holds(const GameArena& arena,
                             const std::vector<int64_t>& f_raw,
                             const std::vector<int64_t>& counts,
                             const std::vector<uint8_t>& in_list);

}  // namespace egsolve
