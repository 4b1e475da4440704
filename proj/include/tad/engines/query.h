#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tad/model/network.h"
#include "tad/model/time.h"
#include "tad/model/types.h"
#include "tad/preprocessing/contraction.h"
#include "tad/util/indexed_heap.h"

namespace tad {

enum class TransferMode { kPlain, kCoreCH, kBucketCH };

std::string_view to_string(TransferMode);
std::optional<TransferMode> parse_transfer_mode(std::string_view);

struct QueryRequest {
  VertexId source{kNoVertex};
  // kNoVertex runs one-to-all (plain mode only) until the queue drains.
  VertexId target{kNoVertex};
  Time departure{0};
  TransferMode mode{TransferMode::kPlain};
  bool pruning{true};
};

struct QueryStats {
  std::uint64_t settled{0};
  std::uint64_t scanned_trips{0};
  std::uint64_t relaxed_edges{0};
  std::uint64_t rounds{0};
  std::chrono::nanoseconds wall{0};
};

struct QueryResult {
  Time arrival{kUnreachable};
  QueryStats stats;
};

// Full CH with distance buckets towards every stop and from every stop.
struct BucketCHData {
  ContractionHierarchy ch;
  ContractionHierarchy reversed;
  Buckets to_stops;    // build_buckets(ch, stop vertices)
  Buckets from_stops;  // build_buckets(reversed, stop vertices)
};

BucketCHData build_bucket_ch(Network const& network,
                             ContractionHierarchy ch);
BucketCHData build_bucket_ch(Network const& network,
                             ContractionOptions options = {});

CoreCH build_network_core_ch(Network const& network,
                             double max_avg_core_degree = kDefaultMaxAvgCoreDegree,
                             ContractionOptions options = {});

// Optional speedup structures handed to an engine; not owned.
struct TransferData {
  CoreCH const* core{nullptr};
  BucketCHData const* bucket{nullptr};
};

// Arrival labels with O(1) reset between queries. Labels only decrease
// within a query (asserted in debug builds).
class Labels {
public:
  explicit Labels(std::size_t n = 0) : times_(n) {}

  void resize(std::size_t n) { times_.resize(n); }
  void reset() { times_.reset(); }

  Time operator[](VertexId v) const { return times_.get(v); }

  // Lowers the label of v to t when that is an improvement.
  bool improve(VertexId v, Time t) {
    if (t < times_.get(v)) {
      times_.set(v, t);
      return true;
    }
    return false;
  }

private:
  StampedTimes times_;
};

// Throws Error on an out-of-range vertex or missing/mismatched speedup data.
void check_request(Network const& network, QueryRequest const& request,
                   TransferData data);

}  // namespace tad
