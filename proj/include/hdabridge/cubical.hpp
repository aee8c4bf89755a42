#pragma once

// Finite precubical, cubical and symmetric cubical sets.
//
// Only non-degenerate cells are stored. A possibly degenerate cell is a
// `Cell`: a stored base cell plus the set of positions (a bit mask over the
// cell's coordinates) occupied by degeneracies. Writing the degenerate
// positions j1 < ... < jr, the cell is iota_jr(...iota_j1(base)), which is the
// unique normal form under iota_i iota_j = iota_{j+1} iota_i.
//
// Face convention: an n-cell has faces d_i^- and d_i^+ for 0 <= i < n, and
// for i <= j the identity  d_i^b d_{j+1}^a = d_j^a d_i^b  holds. On label
// words d_i deletes entry i, so coordinate i is the one being frozen.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hdabridge/error.hpp"
#include "hdabridge/report.hpp"
#include "hdabridge/word.hpp"

namespace hdabridge {

inline constexpr std::uint32_t kMaxDim = 31;
inline constexpr std::uint32_t kNoCell = std::numeric_limits<std::uint32_t>::max();

struct CellId {
  std::uint32_t dim = 0;
  std::uint32_t index = 0;
  auto operator<=>(const CellId&) const = default;
};

/// A degeneracy witness: non-degenerate base plus degenerate positions.
struct Cell {
  CellId base;
  std::uint32_t degeneracies = 0;

  static Cell of(CellId id) { return Cell{id, 0}; }
  static Cell of(std::uint32_t dim, std::uint32_t index) { return Cell{{dim, index}, 0}; }

  std::uint32_t dim() const { return base.dim + static_cast<std::uint32_t>(std::popcount(degeneracies)); }
  bool degenerate() const { return degeneracies != 0; }
  bool degenerate_at(std::uint32_t pos) const { return (degeneracies >> pos) & 1u; }

  std::vector<std::uint32_t> degeneracy_positions() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = degeneracies; m != 0; m &= m - 1)
      out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
    return out;
  }

  auto operator<=>(const Cell&) const = default;
};

namespace bits {

inline std::uint32_t low(std::uint32_t k) { return k >= 32 ? ~0u : ((1u << k) - 1u); }

/// Deletes bit position i, shifting higher bits down.
inline std::uint32_t remove(std::uint32_t mask, std::uint32_t i) {
  return (mask & low(i)) | ((mask >> (i + 1)) << i);
}

/// Opens a zero at position k, shifting bits at k and above up.
inline std::uint32_t insert_zero(std::uint32_t mask, std::uint32_t k) {
  return (mask & low(k)) | ((mask >> k) << (k + 1));
}

/// Places bit t of `inner` at the t-th position left free by `outer`.
inline std::uint32_t scatter(std::uint32_t inner, std::uint32_t outer) {
  std::uint32_t out = 0;
  std::uint32_t pos = 0;
  for (std::uint32_t t = 0; inner >> t; ++t) {
    while ((outer >> pos) & 1u) ++pos;
    if ((inner >> t) & 1u) out |= 1u << pos;
    ++pos;
  }
  return out;
}

}  // namespace bits

/// Applies further degeneracies at the positions of `outer` (positions of the
/// resulting cell) to an already normalized cell.
inline Cell with_degeneracies(const Cell& inner, std::uint32_t outer) {
  return Cell{inner.base, outer | bits::scatter(inner.degeneracies, outer)};
}

class CubicalComplex {
 public:
  CubicalComplex() = default;

  /// Appends a non-degenerate cell. `faces` lists d_0^-, d_0^+, d_1^-, ...
  std::uint32_t add_cell(std::uint32_t dim, std::vector<Cell> faces) {
    if (dim > kMaxDim) fail(ErrorCode::dimension_cap_exceeded, "cell dimension " + std::to_string(dim));
    if (faces.size() != 2u * dim)
      fail(ErrorCode::arity_mismatch, "a " + std::to_string(dim) + "-cell needs " +
                                          std::to_string(2 * dim) + " faces");
    ensure_dim(dim);
    faces_[dim].insert(faces_[dim].end(), faces.begin(), faces.end());
    if (symmetric_ && dim >= 2) sym_[dim].insert(sym_[dim].end(), dim - 1, kNoCell);
    return counts_[dim]++;
  }

  std::uint32_t add_vertex() { return add_cell(0, {}); }

  std::size_t size(std::uint32_t dim) const { return dim < counts_.size() ? counts_[dim] : 0; }

  /// Number of stored dimension levels (max_dim + 1 for a non-empty complex).
  std::uint32_t levels() const { return static_cast<std::uint32_t>(counts_.size()); }

  std::uint32_t max_dim() const {
    for (std::uint32_t n = levels(); n-- > 0;)
      if (counts_[n] != 0) return n;
    return 0;
  }

  std::size_t total_cells() const {
    std::size_t n = 0;
    for (auto c : counts_) n += c;
    return n;
  }

  bool contains(CellId id) const { return id.index < size(id.dim); }

  const Cell& face(CellId id, std::uint32_t i, Sign s) const {
    return faces_[id.dim][(std::size_t{id.index} * id.dim + i) * 2 + static_cast<unsigned>(s)];
  }
  std::span<const Cell> faces(CellId id) const {
    return {faces_[id.dim].data() + std::size_t{id.index} * 2 * id.dim, 2u * id.dim};
  }
  void set_face(CellId id, std::uint32_t i, Sign s, Cell target) {
    faces_[id.dim][(std::size_t{id.index} * id.dim + i) * 2 + static_cast<unsigned>(s)] = target;
  }

  bool symmetric() const { return symmetric_; }

  /// Turns on the transposition tables; unset entries read as kNoCell.
  void make_symmetric() {
    if (symmetric_) return;
    symmetric_ = true;
    for (std::uint32_t n = 0; n < levels(); ++n)
      if (n >= 2) sym_[n].assign(std::size_t{counts_[n]} * (n - 1), kNoCell);
  }

  std::uint32_t transposition(CellId id, std::uint32_t i) const {
    if (!symmetric_ || id.dim < 2) return kNoCell;
    return sym_[id.dim][std::size_t{id.index} * (id.dim - 1) + i];
  }
  void set_transposition(CellId id, std::uint32_t i, std::uint32_t target) {
    if (!symmetric_) fail(ErrorCode::invalid_model, "transposition on a non-symmetric complex");
    if (id.dim < 2 || i + 2 > id.dim)
      fail(ErrorCode::index_out_of_range, "transposition index " + std::to_string(i) + " on a " +
                                              std::to_string(id.dim) + "-cell");
    sym_[id.dim][std::size_t{id.index} * (id.dim - 1) + i] = target;
  }

  /// Makes dimensions below `levels` present, possibly empty.
  void ensure_levels(std::uint32_t levels) {
    if (levels > 0) ensure_dim(levels - 1);
  }

  /// Keeps dimensions <= n.
  CubicalComplex truncated(std::uint32_t n) const {
    CubicalComplex out = *this;
    if (out.levels() > n + 1) {
      out.counts_.resize(n + 1);
      out.faces_.resize(n + 1);
      out.sym_.resize(n + 1);
    }
    return out;
  }

  bool operator==(const CubicalComplex&) const = default;

 private:
  void ensure_dim(std::uint32_t dim) {
    if (dim < levels()) return;
    counts_.resize(dim + 1, 0);
    faces_.resize(dim + 1);
    sym_.resize(dim + 1);
  }

  std::vector<std::uint32_t> counts_;
  std::vector<std::vector<Cell>> faces_;
  std::vector<std::vector<std::uint32_t>> sym_;
  bool symmetric_ = false;
};

/// d_i^s of an arbitrary (possibly degenerate) cell, in normal form.
inline Cell cell_face(const CubicalComplex& c, const Cell& x, std::uint32_t i, Sign s) {
  const std::uint32_t n = x.dim();
  if (i >= n)
    fail(ErrorCode::index_out_of_range, "face " + std::to_string(i) + " of a " + std::to_string(n) + "-cell");
  if (x.degenerate_at(i)) return Cell{x.base, bits::remove(x.degeneracies, i)};
  const std::uint32_t p = i - static_cast<std::uint32_t>(std::popcount(x.degeneracies & bits::low(i)));
  return with_degeneracies(c.face(x.base, p, s), bits::remove(x.degeneracies, i));
}

/// iota_k of a cell.
inline Cell degeneracy(const Cell& x, std::uint32_t k) {
  const std::uint32_t n = x.dim();
  if (k > n)
    fail(ErrorCode::index_out_of_range, "degeneracy " + std::to_string(k) + " of a " + std::to_string(n) + "-cell");
  if (n + 1 > kMaxDim) fail(ErrorCode::dimension_cap_exceeded, "degeneracy beyond the dimension cap");
  return Cell{x.base, bits::insert_zero(x.degeneracies, k) | (1u << k)};
}

/// sigma_i (exchange of coordinates i and i+1) of a cell.
inline Cell transpose(const CubicalComplex& c, const Cell& x, std::uint32_t i) {
  const std::uint32_t n = x.dim();
  if (i + 1 >= n)
    fail(ErrorCode::index_out_of_range, "transposition " + std::to_string(i) + " of a " +
                                            std::to_string(n) + "-cell");
  const bool a = x.degenerate_at(i);
  const bool b = x.degenerate_at(i + 1);
  if (a && b) return x;
  if (a != b) return Cell{x.base, x.degeneracies ^ (3u << i)};
  if (!c.symmetric()) fail(ErrorCode::invalid_model, "transposition on a non-symmetric complex");
  const std::uint32_t p = i - static_cast<std::uint32_t>(std::popcount(x.degeneracies & bits::low(i)));
  const std::uint32_t t = c.transposition(x.base, p);
  if (t == kNoCell) fail(ErrorCode::invalid_model, "missing transposition");
  return Cell{{x.base.dim, t}, x.degeneracies};
}

/// 0-source and 0-target of every stored cell, per dimension.
class VertexEnds {
 public:
  explicit VertexEnds(const CubicalComplex& c) : source_(c.levels()), target_(c.levels()) {
    for (std::uint32_t n = 0; n < c.levels(); ++n) {
      source_[n].resize(c.size(n));
      target_[n].resize(c.size(n));
      for (std::uint32_t k = 0; k < c.size(n); ++k) {
        if (n == 0) {
          source_[0][k] = target_[0][k] = k;
          continue;
        }
        const Cell& lo = c.face({n, k}, 0, Sign::minus);
        const Cell& hi = c.face({n, k}, 0, Sign::plus);
        source_[n][k] = source_[lo.base.dim][lo.base.index];
        target_[n][k] = target_[hi.base.dim][hi.base.index];
      }
    }
  }

  std::uint32_t source(const Cell& x) const { return source_[x.base.dim][x.base.index]; }
  std::uint32_t target(const Cell& x) const { return target_[x.base.dim][x.base.index]; }
  std::uint32_t source(CellId id) const { return source_[id.dim][id.index]; }
  std::uint32_t target(CellId id) const { return target_[id.dim][id.index]; }

 private:
  std::vector<std::vector<std::uint32_t>> source_;
  std::vector<std::vector<std::uint32_t>> target_;
};

enum class ComplexKind { precubical, cubical, symmetric };

inline std::string describe(const Cell& x) {
  std::string s = "(" + std::to_string(x.base.dim) + "," + std::to_string(x.base.index) + ")";
  if (x.degenerate()) {
    s += "iota{";
    bool first = true;
    for (auto p : x.degeneracy_positions()) {
      if (!first) s += ",";
      s += std::to_string(p);
      first = false;
    }
    s += "}";
  }
  return s;
}

namespace detail {

inline bool well_formed(const CubicalComplex& c, const Cell& x) {
  if (!c.contains(x.base)) return false;
  const std::uint32_t n = x.dim();
  return n <= kMaxDim && (x.degeneracies >> n) == 0;
}

}  // namespace detail

/// Checks face typing and the cubical identities on every stored cell; for
/// symmetric complexes also involution, braid, and face compatibility of the
/// transpositions.
inline ValidationReport validate_complex(const CubicalComplex& c, ComplexKind kind) {
  ValidationReport report;
  const bool sym = kind == ComplexKind::symmetric;
  if (sym && !c.symmetric()) report.add("symmetric-structure", "complex carries no transposition tables");

  for (std::uint32_t n = 1; n < c.levels(); ++n) {
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      for (std::uint32_t i = 0; i < n; ++i) {
        for (Sign s : kSigns) {
          const Cell& f = c.face({n, k}, i, s);
          const std::string where = "cell (" + std::to_string(n) + "," + std::to_string(k) + ") face " +
                                    std::to_string(i) + sign_char(s);
          if (!detail::well_formed(c, f) || f.dim() != n - 1)
            report.add("face-typing", where + " -> " + describe(f));
          else if (kind == ComplexKind::precubical && f.degenerate())
            report.add("precubical-face", where + " is degenerate");
        }
      }
      if (sym && c.symmetric() && n >= 2) {
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
          const std::uint32_t t = c.transposition({n, k}, i);
          if (t == kNoCell || t >= c.size(n))
            report.add("transposition-typing", "cell (" + std::to_string(n) + "," + std::to_string(k) +
                                                   ") sigma" + std::to_string(i));
        }
      }
    }
  }
  if (!report.ok()) return report;

  for (std::uint32_t n = 2; n < c.levels(); ++n) {
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      const Cell x = Cell::of(n, k);
      const std::string cell = "cell (" + std::to_string(n) + "," + std::to_string(k) + ")";
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        for (std::uint32_t j = i; j + 1 < n; ++j) {
          for (Sign a : kSigns) {
            for (Sign b : kSigns) {
              const Cell lhs = cell_face(c, cell_face(c, x, j + 1, a), i, b);
              const Cell rhs = cell_face(c, cell_face(c, x, i, b), j, a);
              if (lhs != rhs)
                report.add("face-face", cell + " i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                            " a=" + sign_char(a) + " b=" + sign_char(b) + ": " +
                                            describe(lhs) + " vs " + describe(rhs));
            }
          }
        }
      }
      if (!sym || !c.symmetric()) continue;
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        const Cell y = transpose(c, x, i);
        if (transpose(c, y, i) != x) report.add("symmetry-involution", cell + " sigma" + std::to_string(i));
        if (i + 2 < n) {
          const Cell l = transpose(c, transpose(c, transpose(c, x, i), i + 1), i);
          const Cell r = transpose(c, transpose(c, transpose(c, x, i + 1), i), i + 1);
          if (l != r) report.add("symmetry-braid", cell + " sigma" + std::to_string(i));
        }
        for (std::uint32_t j = 0; j < n; ++j) {
          for (Sign s : kSigns) {
            const Cell got = cell_face(c, y, j, s);
            Cell want;
            if (j == i)
              want = cell_face(c, x, i + 1, s);
            else if (j == i + 1)
              want = cell_face(c, x, i, s);
            else if (j < i)
              want = transpose(c, cell_face(c, x, j, s), i - 1);
            else
              want = transpose(c, cell_face(c, x, j, s), i);
            if (got != want)
              report.add("symmetry-face", cell + " sigma" + std::to_string(i) + " face " + std::to_string(j) +
                                              sign_char(s) + ": " + describe(got) + " vs " + describe(want));
          }
        }
      }
    }
  }
  return report;
}

/// Number of orbits of the transposition action on the non-degenerate n-cells.
inline std::size_t symmetry_orbits(const CubicalComplex& c, std::uint32_t n) {
  if (!c.symmetric() || n < 2) return c.size(n);
  std::vector<bool> seen(c.size(n), false);
  std::size_t orbits = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t k = 0; k < c.size(n); ++k) {
    if (seen[k]) continue;
    ++orbits;
    seen[k] = true;
    stack.push_back(k);
    while (!stack.empty()) {
      const std::uint32_t cur = stack.back();
      stack.pop_back();
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        const std::uint32_t t = c.transposition({n, cur}, i);
        if (t != kNoCell && !seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  return orbits;
}

}  // namespace hdabridge
