#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tad/model/time.h"
#include "tad/model/types.h"

namespace tad {

struct Arc {
  VertexId from;
  VertexId to;
  Time weight;

  friend bool operator==(Arc const&, Arc const&) = default;
};

struct Edge {
  VertexId target;
  Time weight;
};

// Directed weighted walking graph in compressed adjacency form. Arcs are
// kept sorted by (from, to, weight); parallel arcs and self-loops are
// stored as given.
class TransferGraph {
public:
  TransferGraph() = default;

  // Throws Error on out-of-range endpoints or negative/unreachable weights.
  TransferGraph(std::size_t vertex_count, std::vector<Arc> arcs);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<Edge const> out(VertexId v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }

  std::vector<Arc> arcs() const;
  TransferGraph reversed() const;

  friend bool operator==(TransferGraph const& a, TransferGraph const& b) {
    return a.arcs() == b.arcs() && a.vertex_count() == b.vertex_count();
  }

private:
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
};

// Plain one-to-all Dijkstra over the graph. Used by the engines for walking
// legs that need no speedup structure.
std::vector<Time> walk_distances(TransferGraph const& g, VertexId source);

}  // namespace tad
