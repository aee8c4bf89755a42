#pragma once

// Graphviz rendering of the 1-skeleton of an HDA. Squares (one per symmetry
// orbit of 2-cells) are drawn as dashed diagonals or as dashed clusters.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "hdabridge/hda.hpp"

namespace hdabridge {

enum class SquareStyle { diagonal, cluster };

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

/// Lowest-indexed 2-cell of every orbit under sigma_0.
inline std::vector<std::uint32_t> square_representatives(const Hda& h) {
  std::vector<std::uint32_t> reps;
  const auto& c = h.complex();
  for (std::uint32_t k = 0; k < h.size(2); ++k) {
    const auto t = c.transposition({2, k}, 0);
    if (t == kNoCell || t >= k) reps.push_back(k);
  }
  return reps;
}

}  // namespace detail

inline std::string export_dot(const Hda& h, SquareStyle style = SquareStyle::diagonal) {
  const auto& c = h.complex();
  const VertexEnds ends(c);
  auto vertex = [&](std::uint32_t v) { return detail::dot_quote(h.name({0, v})); };
  std::ostringstream os;
  os << "digraph hda {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::uint32_t v = 0; v < h.size(0); ++v) {
    os << "  " << vertex(v);
    if (v == h.initial()) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (std::uint32_t k = 0; k < h.size(1); ++k)
    os << "  " << vertex(ends.source(CellId{1, k})) << " -> " << vertex(ends.target(CellId{1, k}))
       << " [label=" << detail::dot_quote(h.symbol_name(h.label(CellId{1, k})[0])) << "];\n";
  const auto reps = detail::square_representatives(h);
  for (std::size_t q = 0; q < reps.size(); ++q) {
    const CellId id{2, reps[q]};
    const auto w = h.label(id);
    const std::string label = h.symbol_name(w[0]) + "|" + h.symbol_name(w[1]);
    if (style == SquareStyle::diagonal) {
      os << "  " << vertex(ends.source(id)) << " -> " << vertex(ends.target(id))
         << " [style=dashed, arrowhead=none, constraint=false, label=" << detail::dot_quote(label) << "];\n";
      continue;
    }
    std::vector<std::uint32_t> corners;
    for (std::uint32_t v : {ends.source(id), ends.target(c.face(id, 0, Sign::minus)),
                            ends.source(c.face(id, 0, Sign::plus)), ends.target(id)})
      if (std::find(corners.begin(), corners.end(), v) == corners.end()) corners.push_back(v);
    os << "  subgraph cluster_square" << q << " {\n    style=dashed;\n    label=" << detail::dot_quote(label)
       << ";\n";
    for (auto v : corners) os << "    " << vertex(v) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hdabridge
