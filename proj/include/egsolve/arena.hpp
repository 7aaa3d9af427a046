#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "egsolve/errors.hpp"

namespace egsolve {

using VertexId = uint32_t;
using Weight = int64_t;

enum class Owner : uint8_t { kPlayer0 = 0, kPlayer1 = 1 };

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  Weight weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct ArenaStats {
  // Sum over vertices of the magnitude of the worst outgoing negative weight.
  // Finite measure values never need to exceed this bound.
  int64_t credit_cap = 0;
  int64_t max_abs_weight = 0;
  uint32_t max_out_degree = 0;
  double avg_out_degree = 0.0;
};

// Total two-player weighted game graph held in dual compressed-adjacency
// form: CSR rows give successors, the CSC transpose gives predecessors.
// Immutable once built and safe to share across threads.
class GameArena {
 public:
  struct Arc {
    VertexId vertex;  // successor (CSR) or predecessor (CSC) endpoint
    Weight weight;
  };

  // Contiguous view over one CSR row or CSC column.
  class ArcRange {
   public:
    class iterator {
     public:
      iterator(const VertexId* ids, const Weight* weights)
          : ids_(ids), weights_(weights) {}
      Arc operator*() const { return Arc{*ids_, *weights_}; }
      iterator& operator++() {
        ++ids_;
        ++weights_;
        return *this;
      }
      friend bool operator==(const iterator& a, const iterator& b) {
        return a.ids_ == b.ids_;
      }

     private:
      const VertexId* ids_;
      const Weight* weights_;
    };

    ArcRange(const VertexId* ids, const Weight* weights, size_t count)
        : ids_(ids), weights_(weights), count_(count) {}
    iterator begin() const { return iterator(ids_, weights_); }
    iterator end() const { return iterator(ids_ + count_, weights_ + count_); }
    size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    Arc operator[](size_t i) const { return Arc{ids_[i], weights_[i]}; }

   private:
    const VertexId* ids_;
    const Weight* weights_;
    size_t count_;
  };

  // Validates totality, id density, and overflow-safety of the credit bound.
  // Edge order within a CSR row follows the input order of that source's
  // edges, which keeps tie-breaking downstream deterministic.
  static GameArena build(uint32_t num_vertices, std::span<const Edge> edges,
                         std::span<const Owner> owners);

  uint32_t num_vertices() const { return num_vertices_; }
  uint64_t num_edges() const { return csr_targets_.size(); }
  uint64_t id() const { return id_; }

  Owner owner(VertexId v) const { return owners_[v]; }
  bool is_player0(VertexId v) const { return owners_[v] == Owner::kPlayer0; }

  const ArenaStats& stats() const { return stats_; }

  ArcRange successors(VertexId v) const {
    uint64_t begin = csr_offsets_[v];
    return ArcRange(csr_targets_.data() + begin, csr_weights_.data() + begin,
                    csr_offsets_[v + 1] - begin);
  }
  ArcRange predecessors(VertexId v) const {
    uint64_t begin = csc_offsets_[v];
    return ArcRange(csc_sources_.data() + begin, csc_weights_.data() + begin,
                    csc_offsets_[v + 1] - begin);
  }
  size_t out_degree(VertexId v) const {
    return csr_offsets_[v + 1] - csr_offsets_[v];
  }

  std::span<const uint64_t> csr_offsets() const { return csr_offsets_; }
  std::span<const VertexId> csr_targets() const { return csr_targets_; }
  std::span<const Weight> csr_weights() const { return csr_weights_; }
  std::span<const uint64_t> csc_offsets() const { return csc_offsets_; }
  std::span<const VertexId> csc_sources() const { return csc_sources_; }
  std::span<const Weight> csc_weights() const { return csc_weights_; }
  std::span<const Owner> owners() const { return owners_; }

  // Edges flattened back out of the CSR layout (row by row).
  std::vector<Edge> edge_list() const;

 private:
  GameArena() = default;

  uint64_t id_ = 0;
  uint32_t num_vertices_ = 0;
  std::vector<Owner> owners_;
  std::vector<uint64_t> csr_offsets_;
  std::vector<VertexId> csr_targets_;
  std::vector<Weight> csr_weights_;
  std::vector<uint64_t> csc_offsets_;
  std::vector<VertexId> csc_sources_;
  std::vector<Weight> csc_weights_;
  ArenaStats stats_;
};

// Recomputes the cached statistics from the adjacency alone.
ArenaStats compute_stats(const GameArena& arena);

// Returns an equivalent arena with all player-0 vertices at the low indices,
// plus the old-id -> new-id permutation. Per-vertex edge order is preserved.
std::pair<GameArena, std::vector<VertexId>> reorder_by_owner(
    const GameArena& arena);

}  // namespace egsolve
