#include "tad/cli/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fmt/core.h"
#include "fmt/ostream.h"
#include "tad/cli/artifacts.h"
#include "tad/cli/verify.h"
#include "tad/engines/engines.h"
#include "tad/model/error.h"
#include "tad/model/gtfs.h"
#include "tad/netgen/netgen.h"

namespace fs = std::filesystem;

namespace tad {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Thrown for user errors that end the command with a message.
struct Refusal {
  std::string message;
  int code{1};
};

struct Artifacts {
  Network network;
  std::optional<BucketCHData> bucket;
  std::optional<CoreCH> core;
};

Artifacts load_artifacts(fs::path const& dir, bool want_ch, bool want_core) {
  Artifacts a{load_network(dir / kNetworkFile), {}, {}};
  if (want_ch && fs::exists(dir / kChFile)) {
    auto ch = load_hierarchy(dir / kChFile);
    if (ch.vertex_count() != a.network.vertex_count()) {
      throw Error{fmt::format("{} does not match the network", kChFile)};
    }
    a.bucket = build_bucket_ch(a.network, std::move(ch));
  }
  if (want_core && fs::exists(dir / kCoreChFile)) {
    a.core = load_core_ch(dir / kCoreChFile);
    if (a.core->is_core.size() != a.network.vertex_count()) {
      throw Error{fmt::format("{} does not match the network", kCoreChFile)};
    }
  }
  return a;
}

enum class EngineKind { kTad, kTd, kCsa, kMr };

std::optional<EngineKind> parse_engine(std::string_view s) {
  if (s == "tad") return EngineKind::kTad;
  if (s == "td") return EngineKind::kTd;
  if (s == "csa") return EngineKind::kCsa;
  if (s == "mr") return EngineKind::kMr;
  return std::nullopt;
}

std::string_view engine_name(EngineKind e) {
  switch (e) {
    case EngineKind::kTad: return "tad";
    case EngineKind::kTd: return "td";
    case EngineKind::kCsa: return "csa";
    case EngineKind::kMr: return "mr";
  }
  return "?";
}

// Why `engine` cannot run in `mode` on these artifacts, if it cannot.
std::optional<std::string> incompatibility(EngineKind engine, TransferMode mode,
                                           Artifacts const& a,
                                           bool allow_unsound) {
  if (engine == EngineKind::kTd && a.network.has_buffers() && !allow_unsound) {
    return "td runs on dominance-filtered departure boards; with buffer times "
           "filtering can drop the only connection a transferring passenger "
           "can still catch, so its answers may be wrong on this network "
           "(pass --allow-unsound to run it anyway)";
  }
  if (engine == EngineKind::kMr && mode != TransferMode::kCoreCH) {
    return "mr only runs with --mode core-ch";
  }
  if (engine == EngineKind::kCsa && mode != TransferMode::kPlain) {
    return "csa only runs with --mode plain";
  }
  if (engine == EngineKind::kCsa && !a.network.footpaths_closed()) {
    return "csa needs transitively closed footpaths; rebuild with "
           "--footpaths-closed on a closed network";
  }
  if (mode == TransferMode::kCoreCH && !a.core) {
    return fmt::format("mode core-ch needs {}; build with --core-ch", kCoreChFile);
  }
  if (mode == TransferMode::kBucketCH && !a.bucket) {
    return fmt::format("mode bucket-ch needs {}; build with --ch", kChFile);
  }
  return std::nullopt;
}

// One engine instance answering requests in one mode.
class Runner {
public:
  Runner(EngineKind kind, TransferMode mode, Artifacts const& a) : mode_{mode} {
    TransferData data{a.core ? &*a.core : nullptr, a.bucket ? &*a.bucket : nullptr};
    switch (kind) {
      case EngineKind::kTad: tad_.emplace(a.network, data); break;
      case EngineKind::kTd: td_.emplace(a.network, data); break;
      case EngineKind::kCsa: csa_.emplace(a.network); break;
      case EngineKind::kMr: mr_.emplace(a.network, *a.core); break;
    }
  }

  QueryResult run(VertexId s, VertexId t, Time dep, bool pruning = true) {
    QueryRequest const r{s, t, dep, mode_, pruning};
    if (tad_) return tad_->query(r);
    if (td_) return td_->query(r);
    if (csa_) return csa_->query(r);
    return mr_->query(r);
  }

  bool mr_round_cap_hit() const { return mr_ && mr_->round_cap_hit(); }

private:
  TransferMode mode_;
  std::optional<TadEngine> tad_;
  std::optional<TdEngine> td_;
  std::optional<CsaEngine> csa_;
  std::optional<MrEngine> mr_;
};

VertexId resolve_place(Network const& n, std::string const& text) {
  if (auto const s = n.find_stop(text)) {
    return n.vertex_of_stop(*s);
  }
  VertexId v{};
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc{} && ptr == text.data() + text.size() && v < n.vertex_count()) {
    return v;
  }
  throw Refusal{fmt::format("'{}' is neither a stop id nor a vertex index", text)};
}

Time parse_time_arg(std::string const& text) {
  auto const t = parse_hms(text);
  if (!t) {
    throw Refusal{fmt::format("malformed time '{}', expected HH:MM:SS", text)};
  }
  return *t;
}

std::vector<std::string> split_list(std::string const& s) {
  std::vector<std::string> out;
  std::stringstream ss{s};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string out;
  std::string fixture;
  GenParams params;
  std::string horizon{"24:00:00"};
  Time::rep min_buffer{60};
  Time::rep max_buffer{600};
};

int cmd_gen(GenArgs const& args, std::ostream& out) {
  Network net;
  if (!args.fixture.empty()) {
    net = paper_fixture(args.fixture);
  } else {
    auto p = args.params;
    p.horizon = parse_time_arg(args.horizon);
    p.min_buffer = Time{args.min_buffer};
    p.max_buffer = Time{args.max_buffer};
    net = generate(p);
  }
  write_network_files(net, args.out);
  fmt::print(out, "wrote {} stops, {} trips, {} vertices, {} arcs to {}\n",
             net.stops().size(), net.trips().size(), net.vertex_count(),
             net.graph().edge_count(), args.out);
  if (args.fixture.empty() && args.params.closure_mode) {
    fmt::print(out, "footpaths are closed; build with --footpaths-closed to enable csa\n");
  }
  return 0;
}

// ---- build -----------------------------------------------------------------

struct BuildArgs {
  std::string gtfs;
  std::string graph;
  std::string mapping;
  std::string out;
  bool ch{false};
  bool core_ch{false};
  double max_core_degree{kDefaultMaxAvgCoreDegree};
  bool footpaths_closed{false};
};

int cmd_build(BuildArgs const& args, std::ostream& out, std::ostream& err) {
  fs::path const dir{args.gtfs};
  auto const graph_path = args.graph.empty() ? dir / "graph.txt" : fs::path{args.graph};
  auto mapping_path = args.mapping.empty() ? dir / "mapping.txt" : fs::path{args.mapping};

  auto start = Clock::now();
  auto tt = parse_gtfs(dir);
  auto graph = parse_transfer_graph(graph_path);
  std::optional<std::vector<VertexId>> mapping;
  if (!args.mapping.empty() || fs::exists(mapping_path)) {
    mapping = parse_stop_mapping(mapping_path, tt);
  }
  AssembleOptions options;
  options.footpaths_closed = args.footpaths_closed;
  auto const net = assemble_network(std::move(tt), std::move(graph), mapping, options);
  fmt::print(out, "parse and assemble: {:.1f} ms ({} stops, {} trips, {} vertices, {} arcs)\n",
             ms_since(start), net.stops().size(), net.trips().size(),
             net.vertex_count(), net.graph().edge_count());

  if (auto const report = validate_network(net); !report.empty()) {
    for (auto const& line : report) {
      fmt::print(err, "invalid: {}\n", line);
    }
    fmt::print(err, "validation failed with {} violation(s)\n", report.size());
    return 1;
  }
  fmt::print(out, "validation: ok\n");
  if (args.footpaths_closed) {
    start = Clock::now();
    CsaEngine check{net};  // throws when the claim is false
    fmt::print(out, "footpath closure check: {:.1f} ms\n", ms_since(start));
  }

  fs::create_directories(args.out);
  fs::path const out_dir{args.out};
  save_network(net, out_dir / kNetworkFile);
  if (args.ch) {
    start = Clock::now();
    auto ch = build_ch(net.graph());
    fmt::print(out, "CH construction: {:.1f} ms ({} shortcuts)\n", ms_since(start),
               ch.shortcut_count());
    save_hierarchy(ch, out_dir / kChFile);
    start = Clock::now();
    auto const bucket = build_bucket_ch(net, std::move(ch));
    fmt::print(out, "Bucket construction: {:.1f} ms ({} entries)\n", ms_since(start),
               bucket.to_stops.entries.size() + bucket.from_stops.entries.size());
  }
  if (args.core_ch) {
    start = Clock::now();
    auto const core = build_network_core_ch(net, args.max_core_degree);
    fmt::print(out, "Core-CH construction: {:.1f} ms ({} core vertices, {} core arcs)\n",
               ms_since(start), core.core_vertex_count, core.core_graph.edge_count());
    save_core_ch(core, out_dir / kCoreChFile);
  }
  fmt::print(out, "artifacts written to {}\n", args.out);
  return 0;
}

// ---- query -----------------------------------------------------------------

struct QueryArgs {
  std::string artifacts;
  std::string from;
  std::string to;
  std::string at;
  std::string engine{"tad"};
  std::string mode;
  bool allow_unsound{false};
  bool no_pruning{false};
};

TransferMode resolve_mode(std::string const& text, EngineKind engine) {
  if (text.empty()) {
    return engine == EngineKind::kMr ? TransferMode::kCoreCH : TransferMode::kPlain;
  }
  auto const m = parse_transfer_mode(text);
  if (!m) {
    throw Refusal{fmt::format("unknown mode '{}' (plain, core-ch, bucket-ch)", text)};
  }
  return *m;
}

int cmd_query(QueryArgs const& args, std::ostream& out) {
  auto const engine = parse_engine(args.engine);
  if (!engine) {
    throw Refusal{fmt::format("unknown engine '{}' (tad, td, csa, mr)", args.engine)};
  }
  auto const mode = resolve_mode(args.mode, *engine);
  auto const a = load_artifacts(args.artifacts, mode == TransferMode::kBucketCH,
                                mode == TransferMode::kCoreCH);
  if (auto const why = incompatibility(*engine, mode, a, args.allow_unsound)) {
    throw Refusal{"refusing to run: " + *why, 2};
  }
  auto const s = resolve_place(a.network, args.from);
  auto const t = resolve_place(a.network, args.to);
  auto const dep = parse_time_arg(args.at);
  Runner runner{*engine, mode, a};
  auto const r = runner.run(s, t, dep, !args.no_pruning);
  fmt::print(out, "{}\n", format_clock(r.arrival));
  fmt::print(out,
             "engine={} mode={} settled={} scanned_trips={} relaxed={} rounds={} "
             "time_us={}\n",
             engine_name(*engine), to_string(mode), r.stats.settled,
             r.stats.scanned_trips, r.stats.relaxed_edges, r.stats.rounds,
             std::chrono::duration_cast<std::chrono::microseconds>(r.stats.wall).count());
  if (runner.mr_round_cap_hit()) {
    fmt::print(out, "warning: round cap reached; result may be an overestimate\n");
  }
  return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string artifacts;
  std::size_t queries{1000};
  std::uint64_t seed{1};
  std::string engines{"tad"};
  std::string modes{"plain"};
  std::size_t warmup{10};
  std::string out;
  bool strict{false};
  std::size_t parallel{1};
  bool allow_unsound{false};
};

struct BenchQuery {
  VertexId source;
  VertexId target;
  Time departure;
};

std::vector<BenchQuery> bench_queries(Network const& n, std::uint64_t seed,
                                      std::size_t count) {
  std::mt19937_64 rng{seed};
  auto draw = [&](std::uint64_t bound) {
    // Unbiased bounded draw that does not depend on the standard library's
    // distribution implementation.
    auto const limit = std::numeric_limits<std::uint64_t>::max() -
                       std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return x % bound;
  };
  std::vector<BenchQuery> qs;
  for (std::size_t i = 0; i < count; ++i) {
    auto const s = static_cast<VertexId>(draw(n.vertex_count()));
    auto const t = static_cast<VertexId>(draw(n.vertex_count()));
    qs.push_back({s, t, Time{static_cast<Time::rep>(draw(24 * 3600))}});
  }
  return qs;
}

struct Measured {
  std::vector<Time> arrivals;
  std::vector<double> micros;
};

Measured measure(EngineKind engine, TransferMode mode, Artifacts const& a,
                 std::vector<BenchQuery> const& qs, std::size_t warmup,
                 std::size_t parallel) {
  Measured m{std::vector<Time>(qs.size()), std::vector<double>(qs.size())};
  auto shard = [&](std::size_t first, std::size_t step) {
    Runner runner{engine, mode, a};
    for (std::size_t i = 0; i < std::min(warmup, qs.size()); ++i) {
      runner.run(qs[i].source, qs[i].target, qs[i].departure);
    }
    for (auto i = first; i < qs.size(); i += step) {
      auto const start = Clock::now();
      auto const r = runner.run(qs[i].source, qs[i].target, qs[i].departure);
      m.micros[i] = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
      m.arrivals[i] = r.arrival;
    }
  };
  if (parallel <= 1) {
    shard(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < parallel; ++k) {
      threads.emplace_back(shard, k, parallel);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  return m;
}

int cmd_bench(BenchArgs const& args, std::ostream& out, std::ostream& err) {
  if (args.queries == 0) {
    throw Refusal{"--queries must be positive"};
  }
  std::vector<EngineKind> engines;
  for (auto const& e : split_list(args.engines)) {
    auto const k = parse_engine(e);
    if (!k) {
      throw Refusal{fmt::format("unknown engine '{}'", e)};
    }
    engines.push_back(*k);
  }
  std::vector<TransferMode> modes;
  for (auto const& m : split_list(args.modes)) {
    auto const k = parse_transfer_mode(m);
    if (!k) {
      throw Refusal{fmt::format("unknown mode '{}'", m)};
    }
    modes.push_back(*k);
  }
  auto const a = load_artifacts(args.artifacts, true, true);
  auto const qs = bench_queries(a.network, args.seed, args.queries);
  auto const reference =
      measure(EngineKind::kTad, TransferMode::kPlain, a, qs, 0, args.parallel).arrivals;

  std::ostringstream csv;
  csv << "engine,mode,mean_us,median_us,p95_us,mismatches\n";
  std::size_t total_mismatches = 0;
  for (auto const engine : engines) {
    for (auto const mode : modes) {
      if (auto const why = incompatibility(engine, mode, a, args.allow_unsound)) {
        fmt::print(err, "skipping {}({}): {}\n", engine_name(engine), to_string(mode), *why);
        continue;
      }
      auto m = measure(engine, mode, a, qs, args.warmup, args.parallel);
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < qs.size(); ++i) {
        mismatches += m.arrivals[i] != reference[i] ? 1 : 0;
      }
      total_mismatches += mismatches;
      auto sorted = m.micros;
      std::sort(begin(sorted), end(sorted));
      double sum = 0;
      for (auto x : sorted) {
        sum += x;
      }
      auto const mean = sum / static_cast<double>(sorted.size());
      auto const median = sorted[sorted.size() / 2];
      auto const p95 = sorted[std::min(sorted.size() - 1, sorted.size() * 95 / 100)];
      csv << fmt::format("{},{},{},{},{},{}\n", engine_name(engine), to_string(mode),
                         std::llround(mean), std::llround(median), std::llround(p95),
                         mismatches);
    }
  }
  if (args.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f{args.out};
    f << csv.str();
    if (!f) {
      throw Error{fmt::format("cannot write {}", args.out)};
    }
  }
  if (args.strict && total_mismatches > 0) {
    fmt::print(err, "strict: {} mismatch(es) against tad(plain)\n", total_mismatches);
    return 1;
  }
  return 0;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(VerifyOptions const& options, bool quiet, std::ostream& out,
               std::ostream& err) {
  if (options.seed_count == 0) {
    fmt::print(err, "warning: empty grid, nothing was verified\n");
    fmt::print(out, "verify: PASS (vacuous)\n");
    return 0;
  }
  auto const report = run_verify(options, [&](std::uint64_t seed) {
    if (!quiet) {
      fmt::print(err, "seed {}\n", seed);
    }
  });
  for (auto const& f : report.failures) {
    auto const& p = f.minimized;
    fmt::print(out, "FAIL {} seed={} variant={}: {}\n", f.failure.property, f.seed,
               to_string(f.variant), f.failure.detail);
    fmt::print(out,
               "  minimized: tad gen --out repro --seed {} --stops {} "
               "--extra-vertices {} --trips {} --min-length {} --max-length {} "
               "--walk-degree {} --horizon {} --buffer-rate {} --min-buffer {} "
               "--max-buffer {} --non-fifo-rate {} --area-km {}{}\n",
               p.seed, p.stop_count, p.extra_vertex_count, p.trip_count,
               p.min_trip_length, p.max_trip_length, p.walk_degree,
               format_gtfs_time(p.horizon), p.buffer_rate, p.min_buffer.seconds(),
               p.max_buffer.seconds(), p.non_fifo_rate, p.area_km,
               p.closure_mode ? " --closure" : "");
  }
  fmt::print(out, "verify: {} on {} networks ({} failure(s))\n",
             report.passed() ? "PASS" : "FAIL", report.networks,
             report.failures.size());
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Earliest-arrival public transit routing with buffer times"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a network or write a fixture");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--fixture", gen.fixture, "motivating, pruning or nonfifo_intro");
  g->add_option("--seed", gen.params.seed);
  g->add_option("--stops", gen.params.stop_count);
  g->add_option("--extra-vertices", gen.params.extra_vertex_count);
  g->add_option("--trips", gen.params.trip_count);
  g->add_option("--min-length", gen.params.min_trip_length, "Stops per trip, at least");
  g->add_option("--max-length", gen.params.max_trip_length, "Stops per trip, at most");
  g->add_option("--horizon", gen.horizon, "First departures fall before this");
  g->add_option("--non-fifo-rate", gen.params.non_fifo_rate);
  g->add_option("--buffer-rate", gen.params.buffer_rate);
  g->add_option("--min-buffer", gen.min_buffer, "Seconds");
  g->add_option("--max-buffer", gen.max_buffer, "Seconds");
  g->add_option("--walk-degree", gen.params.walk_degree);
  g->add_option("--area-km", gen.params.area_km);
  g->add_flag("--closure", gen.params.closure_mode,
              "Add direct arcs for every stop-to-stop walk");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Validate a GTFS feed and write artifacts");
  b->add_option("--gtfs", build.gtfs, "GTFS directory")->required();
  b->add_option("--graph", build.graph, "Transfer graph (default <gtfs>/graph.txt)");
  b->add_option("--mapping", build.mapping,
                "Stop to vertex mapping (default <gtfs>/mapping.txt if present)");
  b->add_option("--out", build.out, "Artifact directory")->required();
  b->add_flag("--ch", build.ch, "Build the full CH used by bucket-ch mode");
  b->add_flag("--core-ch", build.core_ch, "Build the Core-CH");
  b->add_option("--max-core-degree", build.max_core_degree);
  b->add_flag("--footpaths-closed", build.footpaths_closed,
              "Declare (and check) transitively closed stop footpaths");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Answer one earliest-arrival query");
  q->add_option("--artifacts", query.artifacts)->required();
  q->add_option("--from", query.from, "Stop id or vertex index")->required();
  q->add_option("--to", query.to, "Stop id or vertex index")->required();
  q->add_option("--at", query.at, "Departure time HH:MM:SS")->required();
  q->add_option("--engine", query.engine, "tad, td, csa or mr");
  q->add_option("--mode", query.mode, "plain, core-ch or bucket-ch");
  q->add_flag("--allow-unsound", query.allow_unsound);
  q->add_flag("--no-pruning", query.no_pruning);

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Time engines on random queries (CSV)");
  be->add_option("--artifacts", bench.artifacts)->required();
  be->add_option("--queries", bench.queries);
  be->add_option("--seed", bench.seed);
  be->add_option("--engines", bench.engines, "Comma separated");
  be->add_option("--modes", bench.modes, "Comma separated");
  be->add_option("--warmup", bench.warmup);
  be->add_option("--out", bench.out, "CSV file (default stdout)");
  be->add_flag("--strict", bench.strict, "Exit nonzero on any mismatch");
  be->add_option("--parallel", bench.parallel, "Query shards run concurrently");
  be->add_flag("--allow-unsound", bench.allow_unsound);

  VerifyOptions verify;
  bool quiet = false;
  auto* v = app.add_subcommand("verify", "Run the property battery over a seed grid");
  v->add_option("--seeds", verify.seed_count, "Number of seeds (0 = empty grid)");
  v->add_option("--first-seed", verify.first_seed);
  v->add_option("--queries", verify.queries, "Queries per network");
  v->add_flag("--inject-fault", verify.inject_fault,
              "Test-only: break the pruning rule to check the battery notices");
  v->add_flag("--quiet", quiet);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::ParseError const& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*b) return cmd_build(build, out, err);
    if (*q) return cmd_query(query, out);
    if (*be) return cmd_bench(bench, out, err);
    if (*v) return cmd_verify(verify, quiet, out, err);
  } catch (Refusal const& r) {
    fmt::print(err, "error: {}\n", r.message);
    return r.code;
  } catch (std::exception const& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace tad
