#pragma once

// On-disk archive of prepared matrices. Each matrix is a canonical text
// payload (values in exact hexadecimal) under matrices/<class>/<name>, and
// a `manifest` file lists every entry with its checksum. Serialization is
// deterministic, so rewriting an archive is byte-identical.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace eigenfmt {

struct TestMatrix {
  std::string name;
  std::string class_name;
  std::string category;
  SparseMatrix matrix;
};

class ArchiveError : public std::runtime_error {
public:
  explicit ArchiveError(const std::string& message) : std::runtime_error(message) {}
};

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

inline std::string serialize_matrix(const TestMatrix& m) {
  std::ostringstream os;
  os << "eigenfmt matrix 1\n";
  os << "name " << m.name << "\n";
  os << "class " << m.class_name << "\n";
  os << "category " << m.category << "\n";
  os << "rows " << m.matrix.rows() << "\n";
  os << "cols " << m.matrix.cols() << "\n";
  os << "nnz " << m.matrix.nnz() << "\n";
  for (const auto& e : m.matrix.entries())
    os << e.row << " " << e.col << " " << e.value.to_hex() << "\n";
  return os.str();
}

inline TestMatrix deserialize_matrix(const std::string& payload) {
  std::istringstream is(payload);
  std::string line;
  auto next = [&](const std::string& what) {
    if (!std::getline(is, line)) throw ArchiveError("matrix payload truncated at " + what);
    return line;
  };
  if (next("header") != "eigenfmt matrix 1") throw ArchiveError("bad matrix payload header");
  TestMatrix m;
  auto field = [&](const std::string& key) {
    std::string l = next(key);
    if (l.rfind(key + " ", 0) != 0) throw ArchiveError("expected field '" + key + "'");
    return l.substr(key.size() + 1);
  };
  m.name = field("name");
  m.class_name = field("class");
  m.category = field("category");
  std::size_t rows = std::stoull(field("rows"));
  std::size_t cols = std::stoull(field("cols"));
  std::size_t nnz = std::stoull(field("nnz"));
  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::istringstream ls(next("entry"));
    std::size_t r, c;
    std::string val;
    if (!(ls >> r >> c >> val)) throw ArchiveError("bad matrix entry line");
    entries.push_back({r, c, Real::parse(val)});
  }
  m.matrix = SparseMatrix::from_triplets(rows, cols, std::move(entries));
  return m;
}

inline std::string matrix_checksum(const TestMatrix& m) {
  return hex64(fnv1a64(serialize_matrix(m)));
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ArchiveError("cannot write " + p.string());
  out << bytes;
  if (!out) throw ArchiveError("short write to " + p.string());
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ArchiveError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

// Writes matrices (sorted by name) plus the manifest under `dir`.
inline void write_archive(const std::filesystem::path& dir, std::vector<TestMatrix> matrices) {
  std::sort(matrices.begin(), matrices.end(),
            [](const TestMatrix& a, const TestMatrix& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < matrices.size(); ++i)
    if (matrices[i].name == matrices[i - 1].name)
      throw ArchiveError("duplicate matrix name '" + matrices[i].name + "'");
  std::filesystem::create_directories(dir / "matrices");
  std::ostringstream manifest;
  manifest << "eigenfmt archive 1\n";
  for (const auto& m : matrices) {
    std::string payload = serialize_matrix(m);
    std::string rel = "matrices/" + m.class_name + "/" + m.name;
    std::filesystem::create_directories(dir / "matrices" / m.class_name);
    detail::write_file(dir / rel, payload);
    manifest << m.name << " " << m.class_name << " " << m.category << " " << m.matrix.rows()
             << " " << m.matrix.nnz() << " " << hex64(fnv1a64(payload)) << " " << rel << "\n";
  }
  detail::write_file(dir / "manifest", manifest.str());
}

inline std::vector<TestMatrix> read_archive(const std::filesystem::path& dir) {
  std::istringstream is(detail::read_file(dir / "manifest"));
  std::string line;
  if (!std::getline(is, line) || line != "eigenfmt archive 1")
    throw ArchiveError("bad or missing archive manifest");
  std::vector<TestMatrix> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name, cls, category, checksum, rel;
    std::size_t n, nnz;
    if (!(ls >> name >> cls >> category >> n >> nnz >> checksum >> rel))
      throw ArchiveError("manifest line " + std::to_string(lineno) + " malformed");
    std::string payload = detail::read_file(dir / rel);
    if (hex64(fnv1a64(payload)) != checksum)
      throw ArchiveError("checksum mismatch for '" + name + "'");
    TestMatrix m = deserialize_matrix(payload);
    if (m.name != name || m.class_name != cls || m.matrix.rows() != n || m.matrix.nnz() != nnz)
      throw ArchiveError("manifest disagrees with payload for '" + name + "'");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace eigenfmt
