#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <eigenfmt/bench/cli.hpp>

namespace fs = std::filesystem;
using namespace eigenfmt;

namespace {

// The CLI chats on stdout/stderr; keep the test log readable.
struct Quiet {
  std::streambuf* out = std::cout.rdbuf();
  std::streambuf* err = std::cerr.rdbuf();
  std::ostringstream sink;
  Quiet() {
    std::cout.rdbuf(sink.rdbuf());
    std::cerr.rdbuf(sink.rdbuf());
  }
  ~Quiet() {
    std::cout.rdbuf(out);
    std::cerr.rdbuf(err);
  }
};

int invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"eigenfmt"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  Quiet q;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("eigenfmt_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

void seed_graph_fixtures(const fs::path& root) {
  write_file(root / "data" / "bio" / "ring.edges", "% ring of six\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n");
  write_file(root / "data" / "road" / "path.edges", "1 2\n2 3\n3 4\n");
  write_file(root / "data" / "road" / "notes.md", "not a matrix\n");
}

}  // namespace

TEST_CASE("cli usage errors exit nonzero") {
  CHECK(invoke({}) != 0);
  CHECK(invoke({"run", "--bogus-flag"}) != 0);
  CHECK(invoke({"frobnicate"}) != 0);
  CHECK(invoke({"--help"}) == 0);
}

TEST_CASE("cli prepare/reference/run/report round trip") {
  TempDir tmp("roundtrip");
  seed_graph_fixtures(tmp.path);
  write_file(tmp.path / "general" / "sym3.mtx",
             "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 2.0\n2 2 2.0\n"
             "3 3 2.0\n2 1 -1.0\n");
  const std::string ws = (tmp.path / "ws").string();

  REQUIRE(invoke({"prepare", "--kind", "graph", "--out", ws,
                  (tmp.path / "data").string()}) == 0);
  REQUIRE(invoke({"prepare", "--kind", "general", "--out", ws,
                  (tmp.path / "general").string()}) == 0);

  auto archived = read_archive(ws);
  REQUIRE(archived.size() == 3);  // .md sidecar skipped, archives merged
  CHECK(archived[0].name == "path");
  CHECK(archived[0].class_name == "infrastructure");
  CHECK(archived[1].name == "ring");
  CHECK(archived[1].class_name == "biological");
  CHECK(archived[2].name == "sym3");
  CHECK(archived[2].class_name == "general");

  REQUIRE(invoke({"reference", "--out", ws, "--count", "2", "--buffer", "1"}) == 0);
  CHECK(fs::exists(fs::path(ws) / "reference"));

  REQUIRE(invoke({"run", "--out", ws, "--count", "2", "--buffer", "1", "--formats",
                  "Float16,Posit16,Float64"}) == 0);
  const fs::path reports = fs::path(ws) / "reports";
  const auto outcome_lines = lines_of(read_file(reports / "outcomes.csv"));
  REQUIRE(outcome_lines.size() == 1 + 3 * 3);
  CHECK(outcome_lines[0] ==
        "matrix,class,format,bits,status,eigenvalue_rel_error,eigenvalue_abs_error,"
        "eigenvector_rel_error,eigenvector_abs_error,matvecs,restarts");
  for (std::size_t i = 1; i < outcome_lines.size(); ++i)
    CHECK(outcome_lines[i].find(",ok,") != std::string::npos);
  CHECK(fs::exists(reports / "eigen_biological_16" / "eigenvalues_relative_error.sorted.csv"));
  CHECK(fs::exists(reports / "eigen_general_64" / "eigenvectors_relative_error.sorted.csv"));

  // report regenerates byte-identical CSVs from the raw outcomes
  const std::string before =
      read_file(reports / "eigen_biological_16" / "eigenvalues_relative_error.sorted.csv");
  const std::string raw_before = read_file(reports / "outcomes.csv");
  REQUIRE(invoke({"report", "--out", ws}) == 0);
  CHECK(read_file(reports / "eigen_biological_16" / "eigenvalues_relative_error.sorted.csv") ==
        before);
  CHECK(read_file(reports / "outcomes.csv") == raw_before);
}

TEST_CASE("cli config file mirrors flags") {
  TempDir tmp("config");
  seed_graph_fixtures(tmp.path);
  const std::string ws_a = (tmp.path / "a").string();
  const std::string ws_b = (tmp.path / "b").string();
  REQUIRE(invoke({"prepare", "--kind", "graph", "--out", ws_a,
                  (tmp.path / "data").string()}) == 0);
  REQUIRE(invoke({"prepare", "--kind", "graph", "--out", ws_b,
                  (tmp.path / "data").string()}) == 0);

  write_file(tmp.path / "sweep.conf",
             "out = " + ws_b + "\ncount = 2\nbuffer = 1\nformats = Float16,Posit16\n"
             "workers = 2\nseed = 7\n");
  REQUIRE(invoke({"run", "--out", ws_a, "--count", "2", "--buffer", "1", "--formats",
                  "Float16,Posit16", "--seed", "7"}) == 0);
  REQUIRE(invoke({"run", "--config", (tmp.path / "sweep.conf").string()}) == 0);

  CHECK(read_file(fs::path(ws_a) / "reports" / "outcomes.csv") ==
        read_file(fs::path(ws_b) / "reports" / "outcomes.csv"));
}

TEST_CASE("cli prepare rejects unknown graph categories without an override") {
  TempDir tmp("classmap");
  write_file(tmp.path / "data" / "mystery" / "m.edges", "1 2\n2 3\n");
  const std::string ws = (tmp.path / "ws").string();
  CHECK(invoke({"prepare", "--kind", "graph", "--out", ws,
                (tmp.path / "data").string()}) != 0);

  write_file(tmp.path / "override.map", "mystery social\n");
  REQUIRE(invoke({"prepare", "--kind", "graph", "--out", ws, "--class-map",
                  (tmp.path / "override.map").string(), (tmp.path / "data").string()}) == 0);
  auto archived = read_archive(ws);
  REQUIRE(archived.size() == 1);
  CHECK(archived[0].class_name == "social");
  CHECK(archived[0].category == "mystery");
}

TEST_CASE("cli prepare filters oversized or unsymmetric external matrices") {
  TempDir tmp("filter");
  // not symmetric -> filtered out
  write_file(tmp.path / "general" / "skew.mtx",
             "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1.0\n2 1 -1.0\n");
  write_file(tmp.path / "general" / "keep.mtx",
             "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1.0\n2 2 1.0\n");
  const std::string ws = (tmp.path / "ws").string();
  REQUIRE(invoke({"prepare", "--kind", "general", "--out", ws,
                  (tmp.path / "general").string()}) == 0);
  auto archived = read_archive(ws);
  REQUIRE(archived.size() == 1);
  CHECK(archived[0].name == "keep");
}
