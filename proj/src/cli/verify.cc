#include "tad/cli/verify.h"

#include <random>
#include <sstream>

#include "fmt/core.h"
#include "tad/engines/engines.h"
#include "tad/model/error.h"
#include "tad/oracle/oracle.h"
#include "tad/preprocessing/filter.h"

namespace tad {

std::string_view to_string(VerifyVariant v) {
  switch (v) {
    case VerifyVariant::kMixed: return "mixed";
    case VerifyVariant::kClosure: return "closure";
    case VerifyVariant::kDense: return "dense";
    case VerifyVariant::kZeroBuffer: return "zero-buffer";
  }
  return "?";
}

GenParams verify_params(std::uint64_t seed, VerifyVariant variant) {
  std::mt19937_64 rng{seed ^ 0x9e3779b97f4a7c15ULL};
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  GenParams p;
  p.seed = seed;
  p.stop_count = pick(5, 30);
  p.extra_vertex_count = pick(0, 25);
  p.trip_count = pick(5, 60);
  p.max_trip_length = std::min<std::size_t>(p.stop_count, pick(2, 7));
  p.horizon = Time::hms(3, 0);
  p.walk_degree = pick(1, 3);
  p.area_km = static_cast<double>(pick(1, 4));
  switch (variant) {
    case VerifyVariant::kMixed: break;
    case VerifyVariant::kClosure: p.closure_mode = true; break;
    case VerifyVariant::kDense:
      p.stop_count = pick(6, 11);
      p.extra_vertex_count = pick(0, 4);
      p.trip_count = pick(30, 60);
      p.max_trip_length = 5;
      p.horizon = Time::hms(1, 0);
      p.buffer_rate = 1.0;
      p.min_buffer = Time{300};
      p.max_buffer = Time{900};
      p.walk_degree = 1;
      break;
    case VerifyVariant::kZeroBuffer: p.buffer_rate = 0.0; break;
  }
  return p;
}

namespace {

std::vector<Time> dijkstra(TransferGraph const& g, VertexId s) {
  return walk_distances(g, s);
}

std::string describe(VertexId s, VertexId t, Time dep) {
  return fmt::format("query {} -> {} at {}", s, t, format_clock(dep));
}

}  // namespace

std::optional<PropertyFailure> check_network(GenParams const& params,
                                             std::size_t queries,
                                             bool inject_fault) {
  auto const net = generate(params);
  auto fail = [](std::string property, std::string detail) {
    return std::optional<PropertyFailure>{
        PropertyFailure{std::move(property), std::move(detail)}};
  };

  // Filtering: strictly FIFO output, idempotent, nothing dominated left.
  for (auto const& board : net.boards()) {
    auto const out = filter_dominated(board_connections(board));
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (!(out[i - 1].departure < out[i].departure &&
            out[i - 1].arrival < out[i].arrival)) {
        return fail("filter-fifo", "filtered board is not strictly FIFO");
      }
    }
    if (filter_dominated(out) != out) {
      return fail("filter-idempotent", "filtering twice changed the board");
    }
  }

  // CH family against plain Dijkstra.
  auto const core = build_network_core_ch(net);
  auto const bucket = build_bucket_ch(net);
  {
    CHQuery chq{bucket.ch};
    BucketQuery bq{bucket.ch, bucket.to_stops};
    std::mt19937_64 rng{params.seed};
    for (std::size_t i = 0; i < 5; ++i) {
      auto const s = static_cast<VertexId>(rng() % net.vertex_count());
      auto const ref = dijkstra(net.graph(), s);
      for (VertexId t = 0; t < net.vertex_count(); ++t) {
        if (chq.distance(s, t) != ref[t]) {
          return fail("ch-exact", fmt::format("ch distance {} -> {}", s, t));
        }
      }
      auto const& many = bq.run(s);
      for (StopIdx k = 0; k < net.stops().size(); ++k) {
        if (many[k] != ref[net.vertex_of_stop(k)]) {
          return fail("bucket-exact", fmt::format("bucket distance {} -> stop {}", s, k));
        }
      }
    }
    for (StopIdx a = 0; a < net.stops().size(); a += 3) {
      auto const va = net.vertex_of_stop(a);
      auto const ref = dijkstra(net.graph(), va);
      auto const got = dijkstra(core.core_graph, va);
      for (auto const& b : net.stops()) {
        if (got[b.vertex] != ref[b.vertex]) {
          return fail("core-ch-exact",
                      fmt::format("core distance {} -> {}", net.stops()[a].id, b.id));
        }
      }
    }
  }

  TadEngine tad{net, {&core, &bucket}};
  tad.inject_pruning_fault(inject_fault);
  MrEngine mr{net, core};
  std::optional<CsaEngine> csa;
  if (net.footpaths_closed()) {
    csa.emplace(net);
  }
  std::optional<TdEngine> td;
  if (!net.has_buffers()) {
    td.emplace(net);
  }

  std::mt19937_64 rng{params.seed * 31 + 7};
  std::uniform_int_distribution<Time::rep> time(0, params.horizon.seconds() - 1);
  for (std::size_t i = 0; i < queries; ++i) {
    // Alternate stop-to-stop and arbitrary-vertex queries.
    VertexId s;
    VertexId t;
    if (i % 2 == 0) {
      s = net.vertex_of_stop(static_cast<StopIdx>(rng() % net.stops().size()));
      t = net.vertex_of_stop(static_cast<StopIdx>(rng() % net.stops().size()));
    } else {
      s = static_cast<VertexId>(rng() % net.vertex_count());
      t = static_cast<VertexId>(rng() % net.vertex_count());
    }
    auto const dep = Time{time(rng)};
    auto const what = describe(s, t, dep);
    auto const expected = oracle_query(net, s, t, dep);

    for (auto mode : {TransferMode::kPlain, TransferMode::kCoreCH,
                      TransferMode::kBucketCH}) {
      QueryRequest r{s, t, dep, mode, true};
      auto const got = tad.query(r).arrival;
      if (got != expected) {
        return fail(mode == TransferMode::kPlain ? "oracle-equivalence"
                                                 : "transfer-mode-invariance",
                    fmt::format("{}: tad({}) {} but oracle {}", what,
                                to_string(mode), format_clock(got),
                                format_clock(expected)));
      }
      r.pruning = false;
      if (auto const off = tad.query(r).arrival; off != got) {
        return fail("pruning-invariance",
                    fmt::format("{}: pruning off {} vs on {}", what,
                                format_clock(off), format_clock(got)));
      }
    }
    QueryRequest const plain{s, t, dep, TransferMode::kPlain, true};
    if (auto const got = mr.query(plain).arrival; got != expected) {
      return fail("oracle-equivalence",
                  fmt::format("{}: mr {} but oracle {}", what, format_clock(got),
                              format_clock(expected)));
    }
    if (csa) {
      if (auto const got = csa->query(plain).arrival; got != expected) {
        return fail("oracle-equivalence",
                    fmt::format("{}: csa {} but oracle {}", what,
                                format_clock(got), format_clock(expected)));
      }
    }
    if (td) {
      if (auto const got = td->query(plain).arrival; got != expected) {
        return fail("zero-buffer-collapse",
                    fmt::format("{}: td {} but oracle {}", what, format_clock(got),
                                format_clock(expected)));
      }
    }
  }
  return std::nullopt;
}

GenParams shrink(GenParams params, std::string const& property,
                 std::size_t queries, bool inject_fault) {
  auto still_fails = [&](GenParams const& p) {
    try {
      auto const f = check_network(p, queries, inject_fault);
      return f.has_value() && f->property == property;
    } catch (Error const&) {
      return false;  // infeasible candidate
    }
  };
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<GenParams> candidates;
    auto add = [&](auto&& change) {
      auto c = params;
      change(c);
      c.max_trip_length = std::min(c.max_trip_length, c.stop_count);
      c.min_trip_length = std::min(c.min_trip_length, c.max_trip_length);
      candidates.push_back(c);
    };
    if (params.trip_count > 1) {
      add([](GenParams& c) { c.trip_count /= 2; });
      add([](GenParams& c) { c.trip_count -= 1; });
    }
    if (params.extra_vertex_count > 0) {
      add([](GenParams& c) { c.extra_vertex_count /= 2; });
      add([](GenParams& c) { c.extra_vertex_count -= 1; });
    }
    if (params.stop_count > 2) {
      add([](GenParams& c) { c.stop_count -= 1; });
    }
    if (params.max_trip_length > 2) {
      add([](GenParams& c) { c.max_trip_length -= 1; });
    }
    if (params.walk_degree > 0) {
      add([](GenParams& c) { c.walk_degree -= 1; });
    }
    for (auto const& c : candidates) {
      if (still_fails(c)) {
        params = c;
        progress = true;
        break;
      }
    }
  }
  return params;
}

VerifyReport run_verify(VerifyOptions const& options,
                        std::function<void(std::uint64_t)> const& on_seed) {
  VerifyReport report;
  for (std::size_t i = 0; i < options.seed_count; ++i) {
    auto const seed = options.first_seed + i;
    if (on_seed) {
      on_seed(seed);
    }
    for (auto variant : {VerifyVariant::kMixed, VerifyVariant::kClosure,
                         VerifyVariant::kDense, VerifyVariant::kZeroBuffer}) {
      auto const params = verify_params(seed, variant);
      ++report.networks;
      auto failure = check_network(params, options.queries, options.inject_fault);
      if (failure) {
        auto const minimized =
            shrink(params, failure->property, options.queries, options.inject_fault);
        if (auto const again =
                check_network(minimized, options.queries, options.inject_fault)) {
          failure = again;
        }
        report.failures.push_back({seed, variant, *failure, minimized});
      }
    }
  }
  return report;
}

}  // namespace tad
