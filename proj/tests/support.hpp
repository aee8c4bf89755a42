#pragma once

// Shared test helpers: the standard n-cube as a pattern complex and the
// term-model evaluation of its (degenerate) cells.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "hdabridge/hdabridge.hpp"

namespace testsupport {

using namespace hdabridge;

/// A face of [0,1]^n: entry 0 or 1 fixes a coordinate, 2 leaves it free.
using Pattern = std::vector<int>;

struct PatternCube {
  CubicalComplex complex;
  std::vector<std::vector<Pattern>> patterns;  // [dim][index]
  std::map<Pattern, CellId> ids;
};

inline std::uint32_t free_count(const Pattern& p) {
  std::uint32_t k = 0;
  for (int v : p) k += v == 2;
  return k;
}

/// d_i^s of a pattern sets its i-th free coordinate to s.
inline Pattern pattern_face(const Pattern& p, std::uint32_t i, Sign s) {
  Pattern q = p;
  std::uint32_t seen = 0;
  for (auto& v : q)
    if (v == 2 && seen++ == i) {
      v = s == Sign::plus ? 1 : 0;
      break;
    }
  return q;
}

/// All faces of [0,1]^n up to dimension `top`.
inline PatternCube pattern_cube(std::uint32_t n, std::uint32_t top) {
  PatternCube out;
  std::vector<Pattern> all;
  Pattern p(n, 0);
  auto rec = [&](auto&& self, std::uint32_t at) -> void {
    if (at == n) {
      all.push_back(p);
      return;
    }
    for (int v = 0; v < 3; ++v) {
      p[at] = v;
      self(self, at + 1);
    }
  };
  rec(rec, 0);
  out.patterns.resize(top + 1);
  for (std::uint32_t d = 0; d <= top; ++d)
    for (const auto& q : all) {
      if (free_count(q) != d) continue;
      std::vector<Cell> faces;
      for (std::uint32_t i = 0; i < d; ++i)
        for (Sign s : kSigns) faces.push_back(Cell::of(out.ids.at(pattern_face(q, i, s))));
      const std::uint32_t k = out.complex.add_cell(d, faces);
      out.ids[q] = {d, k};
      out.patterns[d].push_back(q);
    }
  return out;
}

/// A cell of the free cubical set on the cube as a map [0,1]^m -> [0,1]^n:
/// per output coordinate, 0 or 1 for a constant, 2 + j for input coordinate j.
struct CubeMapTerm {
  std::uint32_t inputs = 0;
  std::vector<int> coords;
  bool operator==(const CubeMapTerm&) const = default;
};

inline CubeMapTerm evaluate(const PatternCube& cube, const Cell& x) {
  const Pattern& p = cube.patterns.at(x.base.dim).at(x.base.index);
  CubeMapTerm t{x.dim(), {}};
  std::vector<int> free_inputs;
  for (std::uint32_t j = 0; j < x.dim(); ++j)
    if (!x.degenerate_at(j)) free_inputs.push_back(static_cast<int>(j));
  std::size_t r = 0;
  for (int v : p) t.coords.push_back(v == 2 ? 2 + free_inputs[r++] : v);
  return t;
}

/// Precomposition with the face inclusion fixing input i to s.
inline CubeMapTerm restrict_input(const CubeMapTerm& t, std::uint32_t i, Sign s) {
  CubeMapTerm out{t.inputs - 1, t.coords};
  for (auto& v : out.coords) {
    if (v < 2) continue;
    const int j = v - 2;
    if (j == static_cast<int>(i))
      v = s == Sign::plus ? 1 : 0;
    else if (j > static_cast<int>(i))
      v -= 1;
  }
  return out;
}

/// Precomposition with the projection forgetting a new input at position k.
inline CubeMapTerm add_input(const CubeMapTerm& t, std::uint32_t k) {
  CubeMapTerm out{t.inputs + 1, t.coords};
  for (auto& v : out.coords)
    if (v >= 2 && v - 2 >= static_cast<int>(k)) v += 1;
  return out;
}

/// Every cell (degenerate or not) of dimension <= top over the stored cells.
inline std::vector<Cell> all_cells(const CubicalComplex& c, std::uint32_t top) {
  std::vector<Cell> out;
  for (std::uint32_t d = 0; d < c.levels() && d <= top; ++d)
    for (std::uint32_t k = 0; k < c.size(d); ++k)
      for (std::uint32_t m = d; m <= top; ++m)
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
          if (static_cast<std::uint32_t>(std::popcount(mask)) == m - d) out.push_back(Cell{{d, k}, mask});
  return out;
}

/// Cells of the HDA of an event structure, counted directly: pairs of a
/// configuration and a word of distinct fresh events, each enabled at it and
/// pairwise compatible. Returns per-length counts of words and of their
/// underlying sets.
struct EsCellCounts {
  std::vector<std::size_t> cells;
  std::vector<std::size_t> orbits;
};

inline EsCellCounts es_cell_counts(const EventStructure& es) {
  const std::size_t n = es.events.size();
  auto enabled_at = [&](std::uint64_t x, std::size_t e) {
    if ((x >> e) & 1) return false;
    for (std::size_t d = 0; d < n; ++d) {
      if (d != e && es.leq(d, e) && !((x >> d) & 1)) return false;
      if (((x >> d) & 1) && es.conflict(d, e)) return false;
    }
    return true;
  };
  auto is_configuration = [&](std::uint64_t x) {
    for (std::size_t e = 0; e < n; ++e) {
      if (!((x >> e) & 1)) continue;
      for (std::size_t d = 0; d < n; ++d) {
        if (es.leq(d, e) && !((x >> d) & 1)) return false;
        if (((x >> d) & 1) && es.conflict(d, e)) return false;
      }
    }
    return true;
  };
  EsCellCounts out{std::vector<std::size_t>(n + 1, 0), std::vector<std::size_t>(n + 1, 0)};
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (!is_configuration(x)) continue;
    for (std::uint64_t step = 0; step < (std::uint64_t{1} << n); ++step) {
      bool ok = true;
      for (std::size_t e = 0; e < n && ok; ++e) {
        if (!((step >> e) & 1)) continue;
        ok = enabled_at(x, e);
        for (std::size_t d = 0; d < n && ok; ++d)
          if (((step >> d) & 1) && es.conflict(d, e)) ok = false;
      }
      if (!ok) continue;
      const auto k = static_cast<std::size_t>(std::popcount(step));
      std::size_t orderings = 1;
      for (std::size_t f = 2; f <= k; ++f) orderings *= f;
      out.cells[k] += orderings;
      out.orbits[k] += 1;
    }
  }
  while (out.cells.size() > 1 && out.cells.back() == 0) {
    out.cells.pop_back();
    out.orbits.pop_back();
  }
  return out;
}

}  // namespace testsupport
