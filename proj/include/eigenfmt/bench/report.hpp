#pragma once

// CSV emission. Per (class, bit-width) directory `eigen_<class>_<bits>`
// with two cumulative-distribution files; each format column is sorted
// ascending on its own, failure sentinels sort after every finite value
// (`inf_omega` first, `inf_sigma` last). A raw `outcomes.csv` keeps the
// unsorted per-experiment records including statuses and counters.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "../formats/registry.hpp"
#include "experiment.hpp"

namespace eigenfmt {
namespace detail {

// shortest digit string that round-trips the double
inline std::string csv_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct ErrorCell {
  int rank;  // 0 finite, 1 inf_omega, 2 inf_sigma
  Real value;
};

inline std::string render(const ErrorCell& c) {
  if (c.rank == 1) return "inf_omega";
  if (c.rank == 2) return "inf_sigma";
  return csv_number(c.value.to_double());
}

inline int format_order(const std::string& name) {
  const auto& table = all_formats();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].name == name) return static_cast<int>(i);
  return static_cast<int>(table.size());
}

inline std::string bits_token(int bits) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d", bits);
  return buf;
}

}  // namespace detail

inline void emit_reports(const std::vector<ExperimentOutcome>& outcomes,
                         const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  {
    std::ofstream raw(out_dir / "outcomes.csv", std::ios::trunc);
    if (!raw) throw std::runtime_error("cannot write outcomes.csv under " + out_dir.string());
    raw << "matrix,class,format,bits,status,eigenvalue_rel_error,eigenvalue_abs_error,"
           "eigenvector_rel_error,eigenvector_abs_error,matvecs,restarts\n";
    for (const auto& o : outcomes) {
      raw << o.matrix << ',' << o.class_name << ',' << o.format << ',' << o.bits << ','
          << to_string(o.status) << ',';
      if (o.status == OutcomeStatus::ok) {
        raw << detail::csv_number(o.eigenvalue_rel_error.to_double()) << ','
            << detail::csv_number(o.eigenvalue_abs_error.to_double()) << ','
            << detail::csv_number(o.eigenvector_rel_error.to_double()) << ','
            << detail::csv_number(o.eigenvector_abs_error.to_double());
      } else {
        raw << ",,,";
      }
      raw << ',' << o.matvecs << ',' << o.restarts << '\n';
    }
  }

  // group: (class, bits) -> format -> cells
  struct Group {
    std::map<std::string, std::vector<detail::ErrorCell>> values, vectors;
  };
  std::map<std::pair<std::string, int>, Group> groups;
  for (const auto& o : outcomes) {
    if (o.status == OutcomeStatus::prep_error) continue;
    if (o.bits == 0) continue;  // reference runs have no width directory
    auto& g = groups[{o.class_name, o.bits}];
    detail::ErrorCell vcell, qcell;
    if (o.status == OutcomeStatus::ok) {
      vcell = {0, o.eigenvalue_rel_error};
      qcell = {0, o.eigenvector_rel_error};
      // infinities are valid measurements and sort after finite values on
      // their own; an unordered value would poison the sort, so report it
      // as a convergence failure
      if (o.eigenvalue_rel_error.is_nan()) vcell.rank = 1;
      if (o.eigenvector_rel_error.is_nan()) qcell.rank = 1;
    } else if (o.status == OutcomeStatus::nonconvergence) {
      vcell = qcell = {1, Real(0.0)};
    } else {
      vcell = qcell = {2, Real(0.0)};
    }
    g.values[o.format].push_back(vcell);
    g.vectors[o.format].push_back(qcell);
  }

  auto write_table = [&](const fs::path& file,
                         std::map<std::string, std::vector<detail::ErrorCell>>& cols) {
    std::vector<std::string> names;
    for (const auto& [name, cells] : cols) names.push_back(name);
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      return detail::format_order(a) < detail::format_order(b);
    });
    std::size_t rows = 0;
    for (auto& [name, cells] : cols) {
      std::stable_sort(cells.begin(), cells.end(),
                       [](const detail::ErrorCell& a, const detail::ErrorCell& b) {
                         if (a.rank != b.rank) return a.rank < b.rank;
                         if (a.rank != 0) return false;
                         return a.value < b.value;
                       });
      rows = std::max(rows, cells.size());
    }
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report file: " + file.string());
    out << "percent";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      const double percent = static_cast<double>(i + 1) / static_cast<double>(rows);
      out << detail::csv_number(percent);
      for (const auto& n : names) {
        const auto& cells = cols[n];
        out << ',';
        if (i < cells.size()) out << detail::render(cells[i]);
      }
      out << '\n';
    }
  };

  for (auto& [key, group] : groups) {
    const fs::path dir =
        out_dir / ("eigen_" + key.first + "_" + detail::bits_token(key.second));
    fs::create_directories(dir);
    write_table(dir / "eigenvalues_relative_error.sorted.csv", group.values);
    write_table(dir / "eigenvectors_relative_error.sorted.csv", group.vectors);
  }
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline Real parse_error_cell(const std::string& s) {
  if (s.empty()) return Real(0.0);
  return Real(std::strtod(s.c_str(), nullptr));
}

inline OutcomeStatus parse_status(const std::string& s) {
  if (s == "ok") return OutcomeStatus::ok;
  if (s == "nonconvergence") return OutcomeStatus::nonconvergence;
  if (s == "dynamic_range") return OutcomeStatus::dynamic_range;
  if (s == "prep_error") return OutcomeStatus::prep_error;
  throw std::runtime_error("unknown outcome status: " + s);
}

}  // namespace detail

// Reads back a raw outcomes.csv, so sorted reports can be regenerated
// without repeating the sweep. Error magnitudes round-trip through the
// shortest-representation doubles used when the file was written.
inline std::vector<ExperimentOutcome> load_outcomes(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read outcomes file: " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty outcomes file: " + file.string());
  std::vector<ExperimentOutcome> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 11)
      throw std::runtime_error("malformed outcomes row at line " + std::to_string(lineno));
    ExperimentOutcome e;
    e.matrix = f[0];
    e.class_name = f[1];
    e.format = f[2];
    e.bits = static_cast<int>(std::strtol(f[3].c_str(), nullptr, 10));
    e.status = detail::parse_status(f[4]);
    e.eigenvalue_rel_error = detail::parse_error_cell(f[5]);
    e.eigenvalue_abs_error = detail::parse_error_cell(f[6]);
    e.eigenvector_rel_error = detail::parse_error_cell(f[7]);
    e.eigenvector_abs_error = detail::parse_error_cell(f[8]);
    e.matvecs = std::strtoull(f[9].c_str(), nullptr, 10);
    e.restarts = std::strtoull(f[10].c_str(), nullptr, 10);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace eigenfmt
