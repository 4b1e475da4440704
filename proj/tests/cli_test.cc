#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tad/cli/artifacts.h"
#include "tad/cli/cli.h"
#include "tad/model/error.h"
#include "tad/netgen/netgen.h"

#include "support.h"

namespace tad {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  auto const code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(std::string const& s) {
  return s.substr(0, s.find('\n'));
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    auto const* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string{"tad_cli_"} + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(std::string const& name) const { return (dir_ / name).string(); }

  // gen + build of the motivating example into <dir>/m and <dir>/a.
  void build_motivating(std::vector<std::string> extra = {}) {
    ASSERT_EQ(run({"gen", "--out", path("m"), "--fixture", "motivating"}).code, 0);
    std::vector<std::string> args{"build", "--gtfs", path("m"), "--out", path("a")};
    args.insert(end(args), begin(extra), end(extra));
    auto const r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(r.out.find("validation: ok"), std::string::npos);
  }

  fs::path dir_;
};

TEST_F(Cli, MotivatingQuery) {
  build_motivating({"--ch", "--core-ch", "--footpaths-closed"});
  for (std::string const engine : {"tad", "csa", "mr"}) {
    auto const r = run({"query", "--artifacts", path("a"), "--from", "A", "--to",
                        "C", "--at", "07:50:00", "--engine", engine});
    EXPECT_EQ(r.code, 0) << engine << ": " << r.err;
    EXPECT_EQ(first_line(r.out), "10:30:00") << engine;
  }
  for (std::string const mode : {"plain", "core-ch", "bucket-ch"}) {
    auto const r = run({"query", "--artifacts", path("a"), "--from", "A", "--to",
                        "C", "--at", "07:50:00", "--mode", mode});
    EXPECT_EQ(first_line(r.out), "10:30:00") << mode;
  }
}

TEST_F(Cli, TdIsRefusedWithBuffers) {
  build_motivating();
  auto const refused = run({"query", "--artifacts", path("a"), "--from", "A",
                            "--to", "C", "--at", "07:50:00", "--engine", "td"});
  EXPECT_EQ(refused.code, 2);
  EXPECT_NE(refused.err.find("--allow-unsound"), std::string::npos);
  auto const forced =
      run({"query", "--artifacts", path("a"), "--from", "A", "--to", "C", "--at",
           "07:50:00", "--engine", "td", "--allow-unsound"});
  EXPECT_EQ(forced.code, 0);
  EXPECT_EQ(first_line(forced.out), "UNREACHABLE");
}

TEST_F(Cli, SourceEqualsTargetEchoesDeparture) {
  build_motivating();
  auto const r = run({"query", "--artifacts", path("a"), "--from", "B", "--to",
                      "B", "--at", "12:34:56"});
  EXPECT_EQ(first_line(r.out), "12:34:56");
}

TEST_F(Cli, UnknownStopIsAnError) {
  build_motivating();
  auto const r = run({"query", "--artifacts", path("a"), "--from", "A", "--to",
                      "Nowhere", "--at", "08:00:00"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("Nowhere"), std::string::npos);
}

TEST_F(Cli, MissingCoreChIsReported) {
  build_motivating();
  auto const r = run({"query", "--artifacts", path("a"), "--from", "A", "--to",
                      "C", "--at", "08:00:00", "--mode", "core-ch"});
  EXPECT_NE(r.code, 0);
}

TEST_F(Cli, CorruptStopTimesNameTheRow) {
  ASSERT_EQ(run({"gen", "--out", path("m"), "--fixture", "motivating"}).code, 0);
  {
    std::ofstream f{path("m/stop_times.txt"), std::ios::app};
    f << "T1,25:xx:00,25:00:00,C,4\n";
  }
  auto const r = run({"build", "--gtfs", path("m"), "--out", path("a")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("stop_times.txt"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("25:xx:00"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("a/network.json")));
}

TEST_F(Cli, InconsistentTripIsInvalid) {
  ASSERT_EQ(run({"gen", "--out", path("m"), "--fixture", "motivating"}).code, 0);
  {
    std::ofstream f{path("m/stop_times.txt"), std::ios::app};
    f << "T1,09:00:00,09:00:00,A,4\n";  // arrives before leaving C
  }
  auto const r = run({"build", "--gtfs", path("m"), "--out", path("a")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("invalid: trip T1"), std::string::npos)
      << r.out << r.err;
}

TEST_F(Cli, FootpathsClosedIsChecked) {
  ASSERT_EQ(run({"gen", "--out", path("g"), "--seed", "4", "--stops", "10",
                 "--trips", "10"}).code, 0);
  auto const r = run({"build", "--gtfs", path("g"), "--out", path("a"),
                      "--footpaths-closed"});
  EXPECT_NE(r.code, 0);
  ASSERT_EQ(run({"gen", "--out", path("c"), "--seed", "4", "--stops", "10",
                 "--trips", "10", "--closure"}).code, 0);
  EXPECT_EQ(run({"build", "--gtfs", path("c"), "--out", path("b"),
                 "--footpaths-closed"}).code, 0);
}

TEST_F(Cli, CoreChStopDistancesSurviveTheRoundTrip) {
  ASSERT_EQ(run({"gen", "--out", path("g"), "--seed", "9", "--stops", "15",
                 "--extra-vertices", "40", "--trips", "20"}).code, 0);
  ASSERT_EQ(run({"build", "--gtfs", path("g"), "--out", path("a"), "--ch",
                 "--core-ch"}).code, 0);
  auto const net = load_network(path("a/network.json"));
  auto const core = load_core_ch(path("a/core-ch.bin"));
  auto const ch = load_hierarchy(path("a/ch.bin"));
  ASSERT_EQ(core.hierarchy.vertex_count(), net.vertex_count());
  for (auto const& s : net.stops()) {
    EXPECT_TRUE(core.core(s.vertex));
    auto const ref = test::reference_distances(net.graph(), s.vertex);
    auto const in_core = test::reference_distances(core.core_graph, s.vertex);
    for (auto const& o : net.stops()) {
      EXPECT_EQ(in_core[o.vertex], ref[o.vertex]);
      EXPECT_EQ(ch_query(ch, s.vertex, o.vertex), ref[o.vertex]);
    }
  }
}

TEST_F(Cli, BenchIsDeterministicAndAgrees) {
  ASSERT_EQ(run({"gen", "--out", path("g"), "--seed", "5", "--stops", "30",
                 "--trips", "60", "--closure"}).code, 0);
  ASSERT_EQ(run({"build", "--gtfs", path("g"), "--out", path("a"), "--ch",
                 "--core-ch", "--footpaths-closed"}).code, 0);
  auto bench = [&](std::string const& parallel) {
    return run({"bench", "--artifacts", path("a"), "--queries", "40", "--seed",
                "3", "--engines", "tad,csa,mr", "--modes",
                "plain,core-ch,bucket-ch", "--strict", "--parallel", parallel});
  };
  auto const a = bench("1");
  auto const b = bench("2");
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  // Drop the timing columns; what remains must be identical.
  auto strip = [](std::string const& csv) {
    std::istringstream in{csv};
    std::string line, out;
    while (std::getline(in, line)) {
      auto const first = line.find(',');
      auto const second = line.find(',', first + 1);
      out += line.substr(0, second) + "|" + line.substr(line.rfind(',') + 1) + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(first_line(a.out), "engine,mode,mean_us,median_us,p95_us,mismatches");
  std::istringstream rows{a.out};
  std::string line;
  std::getline(rows, line);
  std::size_t count = 0;
  while (std::getline(rows, line)) {
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0") << line;
    ++count;
  }
  // tad x3, csa(plain), mr(core-ch)
  EXPECT_EQ(count, 5U);
}

TEST_F(Cli, BenchStrictFailsOnMismatch) {
  build_motivating();
  auto const r = run({"bench", "--artifacts", path("a"), "--queries", "200",
                      "--engines", "tad,td", "--allow-unsound", "--strict"});
  // td loses journeys on this buffered network only for some departures; if
  // it mismatches, strict mode must say so through the exit code.
  bool const mismatched = r.out.find("td,plain,") != std::string::npos &&
                          r.out.substr(r.out.find("td,plain,")).find(",0\n") ==
                              std::string::npos;
  EXPECT_EQ(r.code != 0, mismatched) << r.out;
}

TEST_F(Cli, VerifyPassesAndCatchesTheFault) {
  auto const ok = run({"verify", "--seeds", "5", "--quiet"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("PASS"), std::string::npos);

  auto const bad = run({"verify", "--seeds", "30", "--inject-fault", "--quiet"});
  EXPECT_NE(bad.code, 0);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
  EXPECT_NE(bad.out.find("seed="), std::string::npos);
  EXPECT_NE(bad.out.find("tad gen --out"), std::string::npos);
}

TEST_F(Cli, VerifyEmptyGridIsVacuous) {
  auto const r = run({"verify", "--seeds", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("vacuous"), std::string::npos);
  EXPECT_NE(r.err.find("empty grid"), std::string::npos);
}

TEST_F(Cli, UnknownEngineAndBadTime) {
  build_motivating();
  EXPECT_NE(run({"query", "--artifacts", path("a"), "--from", "A", "--to", "C",
                 "--at", "08:00:00", "--engine", "warp"}).code, 0);
  EXPECT_NE(run({"query", "--artifacts", path("a"), "--from", "A", "--to", "C",
                 "--at", "eight"}).code, 0);
}

TEST_F(Cli, NetworkArtifactRoundTrip) {
  auto const net = generate(GenParams{});
  save_network(net, path("n.json"));
  auto const back = load_network(path("n.json"));
  ASSERT_EQ(back.stops().size(), net.stops().size());
  ASSERT_EQ(back.trips().size(), net.trips().size());
  EXPECT_EQ(back.graph().arcs().size(), net.graph().arcs().size());
  for (std::size_t t = 0; t < net.trips().size(); ++t) {
    ASSERT_EQ(back.trips()[t].events.size(), net.trips()[t].events.size());
    for (std::size_t i = 0; i < net.trips()[t].events.size(); ++i) {
      EXPECT_EQ(back.trips()[t].events[i].arrival, net.trips()[t].events[i].arrival);
      EXPECT_EQ(back.trips()[t].events[i].departure,
                net.trips()[t].events[i].departure);
    }
  }
  for (std::size_t s = 0; s < net.stops().size(); ++s) {
    EXPECT_EQ(back.stops()[s].buffer, net.stops()[s].buffer);
    EXPECT_EQ(back.stops()[s].vertex, net.stops()[s].vertex);
  }
}

TEST_F(Cli, BadMagicIsRejected) {
  {
    std::ofstream f{path("n.json")};
    f << R"({"magic":"something-else","version":1})";
  }
  EXPECT_THROW(load_network(path("n.json")), Error);
  {
    std::ofstream f{path("ch.bin"), std::ios::binary};
    f << "NOTACH00garbage";
  }
  EXPECT_THROW(load_hierarchy(path("ch.bin")), Error);
}

}  // namespace
}  // namespace tad
