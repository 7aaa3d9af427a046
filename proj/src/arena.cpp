#include "egsolve/arena.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>

#include "egsolve/energy.hpp"

namespace egsolve {

namespace {

std::atomic<uint64_t> g_next_arena_id{1};

}  // namespace

GameArena GameArena::build(uint32_t num_vertices, std::span<const Edge> edges,
                           std::span<const Owner> owners) {
  if (owners.size() != num_vertices) {
    throw CountMismatchError("owner list does not cover every vertex");
  }
  for (const Edge& e : edges) {
    if (e.src >= num_vertices) throw DanglingVertexIdError(e.src);
    if (e.dst >= num_vertices) throw DanglingVertexIdError(e.dst);
    if (e.weight == std::numeric_limits<Weight>::min()) {
      throw OverflowError("edge weight magnitude not representable");
    }
  }

  GameArena g;
  g.id_ = g_next_arena_id.fetch_add(1, std::memory_order_relaxed);
  g.num_vertices_ = num_vertices;
  g.owners_.assign(owners.begin(), owners.end());

  const uint64_t m = edges.size();
  g.csr_offsets_.assign(num_vertices + 1, 0);
  for (const Edge& e : edges) g.csr_offsets_[e.src + 1]++;
  for (uint32_t v = 0; v < num_vertices; ++v) {
    if (g.csr_offsets_[v + 1] == 0) throw NonTotalArenaError(v);
    g.csr_offsets_[v + 1] += g.csr_offsets_[v];
  }

  // Stable counting sort by source keeps each row in input order.
  g.csr_targets_.resize(m);
  g.csr_weights_.resize(m);
  {
    std::vector<uint64_t> cursor(g.csr_offsets_.begin(),
                                 g.csr_offsets_.end() - 1);
    for (const Edge& e : edges) {
      uint64_t slot = cursor[e.src]++;
      g.csr_targets_[slot] = e.dst;
      g.csr_weights_[slot] = e.weight;
    }
  }

  // CSC as the stable transpose of the CSR rows.
  g.csc_offsets_.assign(num_vertices + 1, 0);
  for (uint64_t i = 0; i < m; ++i) g.csc_offsets_[g.csr_targets_[i] + 1]++;
  for (uint32_t v = 0; v < num_vertices; ++v) {
    g.csc_offsets_[v + 1] += g.csc_offsets_[v];
  }
  g.csc_sources_.resize(m);
  g.csc_weights_.resize(m);
  {
    std::vector<uint64_t> cursor(g.csc_offsets_.begin(),
                                 g.csc_offsets_.end() - 1);
    for (uint32_t v = 0; v < num_vertices; ++v) {
      for (uint64_t i = g.csr_offsets_[v]; i < g.csr_offsets_[v + 1]; ++i) {
        uint64_t slot = cursor[g.csr_targets_[i]]++;
        g.csc_sources_[slot] = v;
        g.csc_weights_[slot] = g.csr_weights_[i];
      }
    }
  }

  g.stats_ = compute_stats(g);
  return g;
}

ArenaStats compute_stats(const GameArena& arena) {
  ArenaStats s;
  const uint32_t n = arena.num_vertices();
  for (uint32_t v = 0; v < n; ++v) {
    auto row = arena.successors(v);
    int64_t worst = 0;  // magnitude of the worst negative outgoing weight
    for (auto [t, w] : row) {
      (void)t;
      if (w < 0 && -w > worst) worst = -w;
      int64_t mag = w < 0 ? -w : w;
      if (mag > s.max_abs_weight) s.max_abs_weight = mag;
    }
    if (__builtin_add_overflow(s.credit_cap, worst, &s.credit_cap)) {
      throw OverflowError("credit bound exceeds the representable range");
    }
    if (row.size() > s.max_out_degree) {
      s.max_out_degree = static_cast<uint32_t>(row.size());
    }
  }
  // Keep headroom so a lift candidate (at most cap + max |weight|) never
  // reaches the top sentinel.
  if (s.credit_cap > std::numeric_limits<int64_t>::max() - s.max_abs_weight - 2) {
    throw OverflowError("credit bound exceeds the representable range");
  }
  s.avg_out_degree =
      n == 0 ? 0.0
             : static_cast<double>(arena.num_edges()) / static_cast<double>(n);
  return s;
}

std::vector<Edge> GameArena::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (uint32_t v = 0; v < num_vertices_; ++v) {
    for (auto [t, w] : successors(v)) out.push_back(Edge{v, t, w});
  }
  return out;
}

std::pair<GameArena, std::vector<VertexId>> reorder_by_owner(
    const GameArena& arena) {
  const uint32_t n = arena.num_vertices();
  std::vector<VertexId> perm(n);   // old id -> new id
  std::vector<VertexId> inv(n);    // new id -> old id
  uint32_t next = 0;
  for (uint32_t v = 0; v < n; ++v) {
    if (arena.is_player0(v)) {
      perm[v] = next;
      inv[next++] = v;
    }
  }
  for (uint32_t v = 0; v < n; ++v) {
    if (!arena.is_player0(v)) {
      perm[v] = next;
      inv[next++] = v;
    }
  }

  std::vector<Owner> owners(n);
  std::vector<Edge> edges;
  edges.reserve(arena.num_edges());
  for (uint32_t nv = 0; nv < n; ++nv) {
    VertexId old = inv[nv];
    owners[nv] = arena.owner(old);
    for (auto [t, w] : arena.successors(old)) {
      edges.push_back(Edge{nv, perm[t], w});
    }
  }
  return {GameArena::build(n, edges, owners), std::move(perm)};
}

}  // namespace egsolve
