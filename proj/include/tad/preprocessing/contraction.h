#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tad/model/time.h"
#include "tad/model/transfer_graph.h"
#include "tad/model/types.h"
#include "tad/util/indexed_heap.h"

namespace tad {

struct HierarchyEdge {
  VertexId target;
  Time weight;
  // Contracted vertex this shortcut bypasses; kNoVertex for original arcs.
  VertexId via;
};

// Vertex ordering plus the upward and downward search graphs.
//
// up(v) holds arcs v->w with rank(w) > rank(v); down(v) holds arcs w->v with
// rank(w) > rank(v), stored at v with `target` = w so that a backward
// search can climb them. In a Core-CH only contracted vertices have entries.
class ContractionHierarchy {
public:
  ContractionHierarchy() = default;

  std::size_t vertex_count() const { return rank_.size(); }
  std::uint32_t rank(VertexId v) const { return rank_[v]; }
  std::vector<std::uint32_t> const& ranks() const { return rank_; }

  std::span<HierarchyEdge const> up(VertexId v) const {
    return {up_.data() + up_offsets_[v], up_.data() + up_offsets_[v + 1]};
  }
  std::span<HierarchyEdge const> down(VertexId v) const {
    return {down_.data() + down_offsets_[v],
            down_.data() + down_offsets_[v + 1]};
  }
  std::size_t up_edge_count() const { return up_.size(); }
  std::size_t down_edge_count() const { return down_.size(); }
  std::size_t shortcut_count() const;

  // Hierarchy of the reversed graph: up and down swap roles.
  ContractionHierarchy reversed() const;

  // Text dump: one "rank <v> <rank>" line per vertex, then every edge.
  std::string dump() const;

  static ContractionHierarchy from_lists(
      std::vector<std::uint32_t> rank,
      std::vector<std::vector<HierarchyEdge>> const& up,
      std::vector<std::vector<HierarchyEdge>> const& down);

private:
  std::vector<std::uint32_t> rank_;
  std::vector<std::size_t> up_offsets_;
  std::vector<HierarchyEdge> up_;
  std::vector<std::size_t> down_offsets_;
  std::vector<HierarchyEdge> down_;
};

// Partially contracted hierarchy plus the graph over the uncontracted core.
struct CoreCH {
  ContractionHierarchy hierarchy;
  std::vector<std::uint8_t> is_core;
  // Same vertex ids as the input graph; only core vertices have arcs.
  TransferGraph core_graph;
  std::size_t core_vertex_count{0};

  bool core(VertexId v) const { return is_core[v] != 0; }
};

struct ContractionOptions {
  // Witness searches stop after this many settled vertices. A cut-off search
  // may add a superfluous shortcut, never a wrong distance.
  std::size_t witness_settle_limit{500};
  // Vertices contracted first, in this order, before the priority queue
  // takes over; protected vertices in it are skipped. Mostly for tests.
  std::vector<VertexId> order;
};

inline constexpr double kDefaultMaxAvgCoreDegree = 14.0;

ContractionHierarchy build_ch(TransferGraph const& graph,
                              ContractionOptions options = {});

// Contracts everything except `protected_vertices`, stopping early once the
// remaining graph's average out-degree (arcs per vertex) exceeds
// `max_avg_core_degree`.
CoreCH build_core_ch(TransferGraph const& graph,
                     std::span<VertexId const> protected_vertices,
                     double max_avg_core_degree = kDefaultMaxAvgCoreDegree,
                     ContractionOptions options = {});

// Bidirectional point-to-point search on a complete hierarchy. Owns its
// scratch space; one instance per thread.
class CHQuery {
public:
  explicit CHQuery(ContractionHierarchy const& ch);

  Time distance(VertexId s, VertexId t);

  // Vertex sequence of a shortest s-t path in the original graph with all
  // shortcuts expanded; empty when t is unreachable.
  std::vector<VertexId> path(VertexId s, VertexId t);

private:
  void run(VertexId s, VertexId t);
  void unpack(VertexId from, VertexId to, VertexId via,
              std::vector<VertexId>& out) const;

  ContractionHierarchy const& ch_;
  StampedTimes fwd_dist_;
  StampedTimes bwd_dist_;
  std::vector<VertexId> fwd_parent_;
  std::vector<VertexId> fwd_parent_via_;
  std::vector<VertexId> bwd_parent_;
  std::vector<VertexId> bwd_parent_via_;
  IndexedHeap fwd_heap_;
  IndexedHeap bwd_heap_;
  Time best_{kUnreachable};
  VertexId meeting_{kNoVertex};
};

Time ch_query(ContractionHierarchy const& ch, VertexId s, VertexId t);

// Target-distance buckets for one-to-many searches.
struct Buckets {
  struct Entry {
    std::uint32_t target_index;
    Time distance;
  };

  std::vector<VertexId> targets;
  std::vector<std::size_t> offsets;
  std::vector<Entry> entries;

  std::span<Entry const> at(VertexId v) const {
    return {entries.data() + offsets[v], entries.data() + offsets[v + 1]};
  }
};

// Backward search on the downward graph from every target; each settled
// vertex receives (target, distance) in its bucket.
Buckets build_buckets(ContractionHierarchy const& ch,
                      std::span<VertexId const> targets);

// Upward search from `source` scanning buckets. Reusable scratch.
class BucketQuery {
public:
  BucketQuery(ContractionHierarchy const& ch, Buckets const& buckets);

  // Distances indexed like buckets.targets; unreachable when disconnected.
  std::vector<Time> const& run(VertexId source);

  std::size_t settled() const { return settled_; }

private:
  ContractionHierarchy const& ch_;
  Buckets const& buckets_;
  StampedTimes dist_;
  IndexedHeap heap_;
  std::vector<Time> result_;
  std::size_t settled_{0};
};

std::vector<Time> bucket_one_to_many(ContractionHierarchy const& ch,
                                     Buckets const& buckets, VertexId source);

}  // namespace tad
