#pragma once

// Command-line front end: prepare | reference | run | report. Kept in a
// header so the test suite can drive it in-process with argv vectors.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "../graph/classes.hpp"
#include "../graph/laplacian.hpp"
#include "../sparse/archive.hpp"
#include "../sparse/edge_list.hpp"
#include "../sparse/matrix_market.hpp"
#include "experiment.hpp"
#include "reference.hpp"
#include "report.hpp"
#include "sweep.hpp"

namespace eigenfmt {
namespace cli {

namespace fs = std::filesystem;

struct Options {
  RunConfig run;
  std::string tol8, tol16, tol32, tol64;
  // prepare only
  std::string kind = "graph";
  std::string class_map_file;
  std::vector<std::string> inputs;
};

inline void apply_tolerances(Options& o) {
  if (!o.tol8.empty()) o.run.tol.set(8, Real::parse(o.tol8));
  if (!o.tol16.empty()) o.run.tol.set(16, Real::parse(o.tol16));
  if (!o.tol32.empty()) o.run.tol.set(32, Real::parse(o.tol32));
  if (!o.tol64.empty()) o.run.tol.set(64, Real::parse(o.tol64));
}

inline std::vector<fs::path> collect_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p))
        if (e.is_regular_file()) files.push_back(e.path());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw std::runtime_error("input not found: " + in);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline int do_prepare(const Options& o) {
  ClassMap classes;
  if (!o.class_map_file.empty()) {
    std::ifstream in(o.class_map_file);
    if (!in) throw std::runtime_error("cannot read class map: " + o.class_map_file);
    classes.load_overrides(in);
  }

  std::vector<TestMatrix> out;
  std::size_t skipped = 0;
  for (const auto& f : collect_inputs(o.inputs)) {
    const std::string ext = f.extension().string();
    const std::string name = f.stem().string();
    if (o.kind == "general") {
      if (ext != ".mtx") {
        ++skipped;
        continue;
      }
      std::ifstream in(f);
      if (!in) throw std::runtime_error("cannot open " + f.string());
      auto m = make_square(read_matrix_market(in));
      if (!keep_external_matrix(m)) {
        std::cerr << "filtered out: " << name << "\n";
        ++skipped;
        continue;
      }
      out.push_back({name, "general", "suitesparse", std::move(m)});
      continue;
    }
    // graph inputs: edge lists or coordinate files, category = parent directory
    SparseMatrix raw;
    std::ifstream in(f);
    if (!in) throw std::runtime_error("cannot open " + f.string());
    if (ext == ".mtx") {
      raw = read_matrix_market(in);
    } else if (ext == ".edges" || ext == ".txt") {
      raw = read_edge_list(in);
    } else {
      ++skipped;
      continue;
    }
    const std::string category = f.parent_path().filename().string();
    const std::string cls = classes.class_of(category);
    auto lap = normalized_laplacian(make_square(raw));
    out.push_back({name, cls, category, std::move(lap)});
  }

  const std::size_t added = out.size();
  // Successive prepare calls accumulate into one archive (graphs first,
  // then external matrices, say). Name collisions are rejected downstream.
  if (fs::exists(fs::path(o.run.out) / "manifest")) {
    auto existing = read_archive(o.run.out);
    out.insert(out.end(), std::make_move_iterator(existing.begin()),
               std::make_move_iterator(existing.end()));
  }
  write_archive(o.run.out, std::move(out));
  std::cout << "archived " << added << " matrices under " << o.run.out << " (skipped " << skipped
            << ")\n";
  return 0;
}

inline int do_reference(const Options& o) {
  auto ms = read_archive(o.run.out);
  ReferenceCache cache(fs::path(o.run.out) / "reference");
  const std::size_t pairs = o.run.count + o.run.buffer;
  std::size_t failed = 0;
  for (const auto* m : selected_matrices(ms, o.run)) {
    const auto& e = cache.obtain(*m, pairs, o.run.tol.reference, o.run.seed);
    if (!e.ok) {
      ++failed;
      std::cerr << "reference failed: " << m->name << "\n";
    }
  }
  std::cout << "reference cache ready (" << failed << " failures)\n";
  return 0;
}

inline int do_run(const Options& o) {
  auto ms = read_archive(o.run.out);
  ReferenceCache cache(fs::path(o.run.out) / "reference");
  auto outcomes = run_sweep(ms, cache, o.run);
  emit_reports(outcomes, fs::path(o.run.out) / "reports");
  std::size_t ok = 0;
  for (const auto& e : outcomes)
    if (e.status == OutcomeStatus::ok) ++ok;
  std::cout << outcomes.size() << " experiments, " << ok << " ok; reports under "
            << (fs::path(o.run.out) / "reports").string() << "\n";
  return 0;
}

inline int do_report(const Options& o) {
  const fs::path dir = fs::path(o.run.out) / "reports";
  auto outcomes = load_outcomes(dir / "outcomes.csv");
  emit_reports(outcomes, dir);
  std::cout << "reports regenerated under " << dir.string() << "\n";
  return 0;
}

inline int run_cli(int argc, const char* const* argv) {
  Options o;
  CLI::App app{"eigensolver precision workbench for machine-number formats"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from a `key = value` file");

  app.add_option("--out", o.run.out, "workspace directory (archive, cache, reports)")
      ->capture_default_str();
  app.add_option("--formats", o.run.formats, "comma-separated format names")->delimiter(',');
  app.add_option("--classes", o.run.classes, "comma-separated class filter")->delimiter(',');
  app.add_option("--bits", o.run.bits, "comma-separated bit-width filter")->delimiter(',');
  app.add_option("--count", o.run.count, "eigenpairs to report")->capture_default_str();
  app.add_option("--buffer", o.run.buffer, "extra eigenpairs solved for alignment")
      ->capture_default_str();
  app.add_option("--seed", o.run.seed, "seed for starting vectors")->capture_default_str();
  app.add_option("--workers", o.run.workers, "parallel matrix workers")->capture_default_str();
  app.add_option("--tol-8", o.tol8, "residual tolerance for 8-bit formats");
  app.add_option("--tol-16", o.tol16, "residual tolerance for 16-bit formats");
  app.add_option("--tol-32", o.tol32, "residual tolerance for 32-bit formats");
  app.add_option("--tol-64", o.tol64, "residual tolerance for 64-bit formats");

  auto* prep = app.add_subcommand("prepare", "ingest matrix files into the archive");
  prep->add_option("--kind", o.kind, "input kind: graph or general")
      ->check(CLI::IsMember({"graph", "general"}))
      ->capture_default_str();
  prep->add_option("--class-map", o.class_map_file, "category to class override file");
  prep->add_option("inputs", o.inputs, "matrix files or directories")->required();

  auto* ref = app.add_subcommand("reference", "build the high-precision reference cache");
  auto* run = app.add_subcommand("run", "run the format sweep and emit reports");
  auto* rep = app.add_subcommand("report", "regenerate CSV reports from raw outcomes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    apply_tolerances(o);
    if (prep->parsed()) return do_prepare(o);
    if (ref->parsed()) return do_reference(o);
    if (run->parsed()) return do_run(o);
    if (rep->parsed()) return do_report(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cli
}  // namespace eigenfmt
