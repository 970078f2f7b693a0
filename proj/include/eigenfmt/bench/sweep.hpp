#pragma once

// Parallel sweep over (matrix, format) tasks. References are built in a
// single pass before the sweep; workers then consume an index into an
// immutable task list and write into preallocated slots, so the result is
// identical for any worker count. The final list is sorted by matrix name
// then format name.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "../formats/registry.hpp"
#include "../sparse/archive.hpp"
#include "experiment.hpp"
#include "reference.hpp"

namespace eigenfmt {

// resolves the format filter to concrete names in registry order;
// Reference participates only when requested by name
inline std::vector<std::string> selected_formats(const RunConfig& cfg) {
  for (const auto& name : cfg.formats)
    if (!find_format(name)) throw std::invalid_argument("unknown format: " + name);
  std::vector<std::string> out;
  for (const auto& f : all_formats()) {
    const bool named = std::find(cfg.formats.begin(), cfg.formats.end(),
                                 std::string(f.name)) != cfg.formats.end();
    if (cfg.formats.empty()) {
      if (f.bits == 0) continue;
    } else if (!named) {
      continue;
    }
    if (!cfg.bits.empty() && f.bits != 0 &&
        std::find(cfg.bits.begin(), cfg.bits.end(), f.bits) == cfg.bits.end())
      continue;
    out.emplace_back(f.name);
  }
  return out;
}

inline std::vector<const TestMatrix*> selected_matrices(const std::vector<TestMatrix>& all,
                                                        const RunConfig& cfg) {
  std::vector<const TestMatrix*> out;
  for (const auto& m : all) {
    if (!cfg.classes.empty() &&
        std::find(cfg.classes.begin(), cfg.classes.end(), m.class_name) == cfg.classes.end())
      continue;
    out.push_back(&m);
  }
  std::sort(out.begin(), out.end(),
            [](const TestMatrix* a, const TestMatrix* b) { return a->name < b->name; });
  return out;
}

inline std::vector<ExperimentOutcome> run_sweep(const std::vector<TestMatrix>& matrices,
                                                ReferenceCache& cache, const RunConfig& cfg) {
  const auto formats = selected_formats(cfg);
  const auto selected = selected_matrices(matrices, cfg);

  const std::size_t pairs = cfg.count + cfg.buffer;
  std::vector<const ReferenceEntry*> refs;
  refs.reserve(selected.size());
  for (const auto* m : selected)
    refs.push_back(&cache.obtain(*m, pairs, cfg.tol.reference, cfg.seed));

  struct Task {
    const TestMatrix* matrix;
    const ReferenceEntry* ref;
    const std::string* format;
  };
  std::vector<Task> tasks;
  tasks.reserve(selected.size() * formats.size());
  for (std::size_t i = 0; i < selected.size(); ++i)
    for (const auto& f : formats) tasks.push_back({selected[i], refs[i], &f});

  std::vector<ExperimentOutcome> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      results[i] = run_experiment(*tasks[i].matrix, *tasks[i].format, tasks[i].ref, cfg);
    }
  };
  const std::size_t nw = std::min(cfg.workers ? cfg.workers : 1, tasks.size());
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(results.begin(), results.end(),
            [](const ExperimentOutcome& a, const ExperimentOutcome& b) {
              if (a.matrix != b.matrix) return a.matrix < b.matrix;
              return a.format < b.format;
            });
  return results;
}

}  // namespace eigenfmt
