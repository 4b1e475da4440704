#include "tad/engines/query.h"

#include "fmt/core.h"

#include "tad/model/error.h"

namespace tad {

std::string_view to_string(TransferMode m) {
  switch (m) {
    case TransferMode::kPlain: return "plain";
    case TransferMode::kCoreCH: return "core-ch";
    case TransferMode::kBucketCH: return "bucket-ch";
  }
  return "?";
}

std::optional<TransferMode> parse_transfer_mode(std::string_view s) {
  if (s == "plain") {
    return TransferMode::kPlain;
  }
  if (s == "core-ch") {
    return TransferMode::kCoreCH;
  }
  if (s == "bucket-ch") {
    return TransferMode::kBucketCH;
  }
  return std::nullopt;
}

namespace {

std::vector<VertexId> stop_vertices(Network const& network) {
  std::vector<VertexId> v;
  v.reserve(network.stops().size());
  for (auto const& s : network.stops()) {
    v.push_back(s.vertex);
  }
  return v;
}

}  // namespace

BucketCHData build_bucket_ch(Network const& network, ContractionHierarchy ch) {
  BucketCHData data;
  data.ch = std::move(ch);
  data.reversed = data.ch.reversed();
  auto const targets = stop_vertices(network);
  data.to_stops = build_buckets(data.ch, targets);
  data.from_stops = build_buckets(data.reversed, targets);
  return data;
}

BucketCHData build_bucket_ch(Network const& network, ContractionOptions options) {
  return build_bucket_ch(network, build_ch(network.graph(), options));
}

CoreCH build_network_core_ch(Network const& network, double max_avg_core_degree,
                             ContractionOptions options) {
  auto const stops = stop_vertices(network);
  return build_core_ch(network.graph(), stops, max_avg_core_degree, options);
}

void check_request(Network const& network, QueryRequest const& r,
                   TransferData data) {
  auto const n = network.vertex_count();
  if (r.source >= n) {
    throw Error{fmt::format("source vertex {} out of range", r.source)};
  }
  if (r.target != kNoVertex && r.target >= n) {
    throw Error{fmt::format("target vertex {} out of range", r.target)};
  }
  if (!r.departure.is_finite() || r.departure < Time::zero()) {
    throw Error{"departure time must be finite and non-negative"};
  }
  switch (r.mode) {
    case TransferMode::kPlain: break;
    case TransferMode::kCoreCH: {
      if (data.core == nullptr) {
        throw Error{"core-ch transfer mode requires Core-CH data"};
      }
      auto const& core = *data.core;
      if (core.is_core.size() != n || core.hierarchy.vertex_count() != n) {
        throw Error{"Core-CH data was built for a different graph"};
      }
      for (auto const& s : network.stops()) {
        if (!core.core(s.vertex)) {
          throw Error{fmt::format("stop {} was contracted in the Core-CH", s.id)};
        }
      }
      break;
    }
    case TransferMode::kBucketCH: {
      if (data.bucket == nullptr) {
        throw Error{"bucket-ch transfer mode requires Bucket-CH data"};
      }
      auto const& b = *data.bucket;
      if (b.ch.vertex_count() != n ||
          b.to_stops.targets.size() != network.stops().size()) {
        throw Error{"Bucket-CH data was built for a different network"};
      }
      break;
    }
  }
}

}  // namespace tad
