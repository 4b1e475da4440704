#include "tad/model/transfer_graph.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "fmt/core.h"

#include "tad/model/error.h"

namespace tad {

TransferGraph::TransferGraph(std::size_t vertex_count, std::vector<Arc> arcs) {
  for (auto const& a : arcs) {
    if (a.from >= vertex_count || a.to >= vertex_count) {
      throw Error{fmt::format("arc {}->{} out of range for {} vertices", a.from,
                              a.to, vertex_count)};
    }
    if (a.weight < Time::zero() || !a.weight.is_finite()) {
      throw Error{fmt::format("arc {}->{} has invalid weight {}", a.from, a.to,
                              a.weight.seconds())};
    }
  }
  std::sort(begin(arcs), end(arcs), [](Arc const& a, Arc const& b) {
    return std::tie(a.from, a.to, a.weight) < std::tie(b.from, b.to, b.weight);
  });
  offsets_.assign(vertex_count + 1, 0);
  edges_.reserve(arcs.size());
  for (auto const& a : arcs) {
    ++offsets_[a.from + 1];
    edges_.push_back({a.to, a.weight});
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    offsets_[v + 1] += offsets_[v];
  }
}

std::vector<Arc> TransferGraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(edges_.size());
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (auto const& e : out(v)) {
      result.push_back({v, e.target, e.weight});
    }
  }
  return result;
}

TransferGraph TransferGraph::reversed() const {
  auto a = arcs();
  for (auto& arc : a) {
    std::swap(arc.from, arc.to);
  }
  return TransferGraph{vertex_count(), std::move(a)};
}

std::vector<Time> walk_distances(TransferGraph const& g, VertexId source) {
  std::vector<Time> dist(g.vertex_count(), kUnreachable);
  using entry = std::pair<Time, VertexId>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> pq;
  dist[source] = Time::zero();
  pq.emplace(Time::zero(), source);
  while (!pq.empty()) {
    auto const [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) {
      continue;
    }
    for (auto const& e : g.out(v)) {
      auto const nd = d + e.weight;
      if (nd < dist[e.target]) {
        dist[e.target] = nd;
        pq.emplace(nd, e.target);
      }
    }
  }
  return dist;
}

}  // namespace tad
