#pragma once

// Matrix Market coordinate reader: real, integer, and pattern fields with
// general or symmetric layout. Indices are 1-based in the file; symmetric
// files store one triangle and are expanded on load. Values are parsed
// straight into reference precision with no double intermediate. Errors
// carry the 1-based line number.

#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace eigenfmt {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

inline Real parse_real_token(const std::string& tok, std::size_t line) {
  try {
    Real v = Real::parse(tok);
    if (!v.is_finite()) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError(line, "bad numeric value '" + tok + "'");
  }
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "bad index '" + tok + "'");
  return static_cast<std::size_t>(std::stoull(tok));
}

}  // namespace detail

inline SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty input");
  ++lineno;
  auto header = detail::split_ws(line);
  if (header.size() < 5 || header[0] != "%%MatrixMarket" || header[1] != "matrix")
    throw ParseError(lineno, "missing '%%MatrixMarket matrix' header");
  const std::string& format = header[2];
  const std::string& field = header[3];
  const std::string& sym = header[4];
  if (format != "coordinate") throw ParseError(lineno, "unsupported format '" + format + "'");
  if (field != "real" && field != "integer" && field != "pattern")
    throw ParseError(lineno, "unsupported field '" + field + "'");
  if (sym != "general" && sym != "symmetric")
    throw ParseError(lineno, "unsupported symmetry '" + sym + "'");
  const bool pattern = field == "pattern";
  const bool symmetric = sym == "symmetric";

  std::size_t rows = 0, cols = 0, declared = 0;
  bool have_dims = false;
  std::vector<Triplet> entries;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '%') continue;
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!have_dims) {
      if (tok.size() != 3) throw ParseError(lineno, "size line needs rows cols nnz");
      rows = detail::parse_index(tok[0], lineno);
      cols = detail::parse_index(tok[1], lineno);
      declared = detail::parse_index(tok[2], lineno);
      have_dims = true;
      continue;
    }
    const std::size_t want_tokens = pattern ? 2 : 3;
    if (tok.size() != want_tokens)
      throw ParseError(lineno, "entry needs " + std::to_string(want_tokens) + " fields");
    std::size_t r = detail::parse_index(tok[0], lineno);
    std::size_t c = detail::parse_index(tok[1], lineno);
    if (r < 1 || r > rows || c < 1 || c > cols)
      throw ParseError(lineno, "index out of range");
    Real v = pattern ? Real(1.0) : detail::parse_real_token(tok[2], lineno);
    ++seen;
    if (symmetric && c > r) throw ParseError(lineno, "symmetric entry above the diagonal");
    entries.push_back({r - 1, c - 1, v});
    if (symmetric && r != c) entries.push_back({c - 1, r - 1, v});
  }
  if (!have_dims) throw ParseError(lineno + 1, "missing size line");
  if (seen != declared)
    throw ParseError(lineno + 1, "expected " + std::to_string(declared) + " entries, found " +
                                     std::to_string(seen));
  return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

}  // namespace eigenfmt
