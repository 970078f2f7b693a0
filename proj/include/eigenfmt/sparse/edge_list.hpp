#pragma once

// Whitespace-separated edge lists: "u v" or "u v w" per line, with '%' or
// '#' comment lines. If any vertex id 0 appears the file is taken as
// 0-based, otherwise as 1-based. Missing weights default to 1; repeated
// edges are summed. The result is the (possibly asymmetric) adjacency
// matrix; symmetrization happens later in the pipeline.

#include <istream>
#include <string>
#include <vector>

#include "matrix_market.hpp"

namespace eigenfmt {

inline SparseMatrix read_edge_list(std::istream& in) {
  struct RawEdge {
    std::size_t u, v;
    Real w;
  };
  std::vector<RawEdge> edges;
  std::string line;
  std::size_t lineno = 0;
  bool saw_zero = false;
  std::size_t max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '%' || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 && tok.size() != 3)
      throw ParseError(lineno, "edge needs 'u v' or 'u v w'");
    std::size_t u = detail::parse_index(tok[0], lineno);
    std::size_t v = detail::parse_index(tok[1], lineno);
    Real w = tok.size() == 3 ? detail::parse_real_token(tok[2], lineno) : Real(1.0);
    saw_zero = saw_zero || u == 0 || v == 0;
    max_id = std::max({max_id, u, v});
    edges.push_back({u, v, std::move(w)});
    any = true;
  }
  if (!any) throw ParseError(lineno + 1, "no edges");
  const std::size_t base = saw_zero ? 0 : 1;
  const std::size_t n = max_id + 1 - base;
  std::vector<Triplet> entries;
  entries.reserve(edges.size());
  for (auto& e : edges) entries.push_back({e.u - base, e.v - base, std::move(e.w)});
  return SparseMatrix::from_triplets(n, n, std::move(entries));
}

}  // namespace eigenfmt
