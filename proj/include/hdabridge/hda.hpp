#pragma once

// Higher dimensional automata: pointed symmetric cubical complexes labeled by
// words over an alphabet whose symbol 0 is the star.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hdabridge/cubical.hpp"
#include "hdabridge/error.hpp"
#include "hdabridge/report.hpp"
#include "hdabridge/word.hpp"

namespace hdabridge {

class Hda {
 public:
  Hda() : alphabet_{"*"} {}

  /// Alphabet = {*} followed by `symbols` in order, so symbol k+1 names symbols[k].
  explicit Hda(const std::vector<std::string>& symbols) : alphabet_{"*"} {
    for (const auto& s : symbols) add_symbol(s);
  }

  Symbol add_symbol(const std::string& name) {
    if (name == "*") fail(ErrorCode::star_clash, "the star is reserved");
    if (find_symbol(name)) fail(ErrorCode::invalid_model, "duplicate symbol '" + name + "'");
    alphabet_.push_back(name);
    return static_cast<Symbol>(alphabet_.size() - 1);
  }

  std::optional<Symbol> find_symbol(std::string_view name) const {
    for (std::size_t k = 0; k < alphabet_.size(); ++k)
      if (alphabet_[k] == name) return static_cast<Symbol>(k);
    return std::nullopt;
  }
  Symbol symbol(std::string_view name) const {
    if (auto s = find_symbol(name)) return *s;
    fail(ErrorCode::invalid_model, "unknown symbol '" + std::string(name) + "'");
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& symbol_name(Symbol s) const { return alphabet_.at(s); }

  std::uint32_t add_vertex(std::string name = {}) {
    names_.resize(std::max<std::size_t>(names_.size(), 1));
    const std::uint32_t id = complex_.add_vertex();
    names_[0].resize(id + 1);
    names_[0][id] = std::move(name);
    ensure_label_level(0);
    return id;
  }

  std::uint32_t add_cell(std::vector<Cell> faces, LabelWord label, std::string name = {}) {
    const auto dim = static_cast<std::uint32_t>(label.size());
    for (Symbol s : label)
      if (s >= alphabet_.size()) fail(ErrorCode::invalid_model, "label symbol out of range");
    const std::uint32_t id = complex_.add_cell(dim, std::move(faces));
    ensure_label_level(dim);
    labels_[dim].insert(labels_[dim].end(), label.begin(), label.end());
    if (!name.empty()) {
      if (names_.size() <= dim) names_.resize(dim + 1);
      names_[dim].resize(id + 1);
      names_[dim][id] = std::move(name);
    }
    return id;
  }

  void ensure_levels(std::uint32_t levels) {
    complex_.ensure_levels(levels);
    if (levels > 0) ensure_label_level(levels - 1);
  }

  CubicalComplex& complex() { return complex_; }
  const CubicalComplex& complex() const { return complex_; }

  std::uint32_t initial() const { return initial_; }
  void set_initial(std::uint32_t v) { initial_ = v; }

  std::size_t size(std::uint32_t dim) const { return complex_.size(dim); }
  std::uint32_t max_dim() const { return complex_.max_dim(); }

  std::span<const Symbol> label(CellId id) const {
    return {labels_[id.dim].data() + std::size_t{id.index} * id.dim, id.dim};
  }
  void set_label(CellId id, std::span<const Symbol> word) {
    std::copy(word.begin(), word.end(), labels_[id.dim].begin() + std::size_t{id.index} * id.dim);
  }

  /// Label of a possibly degenerate cell: stars fill the degenerate positions.
  LabelWord label(const Cell& x) const {
    auto base = label(x.base);
    LabelWord out;
    out.reserve(x.dim());
    std::size_t k = 0;
    for (std::uint32_t p = 0; p < x.dim(); ++p) out.push_back(x.degenerate_at(p) ? kStar : base[k++]);
    return out;
  }

  std::string name(CellId id) const {
    if (id.dim < names_.size() && id.index < names_[id.dim].size() && !names_[id.dim][id.index].empty())
      return names_[id.dim][id.index];
    return default_name(id);
  }
  bool has_explicit_name(CellId id) const {
    return id.dim < names_.size() && id.index < names_[id.dim].size() && !names_[id.dim][id.index].empty();
  }
  static std::string default_name(CellId id) {
    return "c" + std::to_string(id.dim) + "_" + std::to_string(id.index);
  }

  std::string word_string(std::span<const Symbol> w) const {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += ",";
      s += alphabet_.at(w[i]);
    }
    return s + ")";
  }

  /// Drops every cell above dimension n.
  Hda truncated(std::uint32_t n) const {
    Hda out = *this;
    out.complex_ = complex_.truncated(n);
    if (out.labels_.size() > n + 1) out.labels_.resize(n + 1);
    if (out.names_.size() > n + 1) out.names_.resize(n + 1);
    return out;
  }

  bool operator==(const Hda&) const = default;

 private:
  void ensure_label_level(std::uint32_t dim) {
    if (labels_.size() <= dim) labels_.resize(dim + 1);
  }

  CubicalComplex complex_;
  std::vector<std::string> alphabet_;
  std::vector<std::vector<Symbol>> labels_;
  std::vector<std::vector<std::string>> names_;
  std::uint32_t initial_ = 0;
};

/// Structure plus labeling naturality; symmetric HDAs also check the
/// transposition identities and their action on labels.
inline ValidationReport validate_hda(const Hda& h) {
  ValidationReport report;
  if (h.alphabet().empty() || h.alphabet()[0] != "*") report.add("alphabet", "symbol 0 must be '*'");
  if (h.size(0) == 0 || h.initial() >= h.size(0)) report.add("initial", "initial state is not a 0-cell");
  const auto& c = h.complex();
  report.merge(validate_complex(c, c.symmetric() ? ComplexKind::symmetric : ComplexKind::cubical));
  if (!report.ok()) return report;
  for (std::uint32_t n = 1; n < c.levels(); ++n) {
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      const Cell x = Cell::of(n, k);
      const LabelWord w = h.label(x);
      for (std::uint32_t i = 0; i < n; ++i) {
        const LabelWord expect = word_face(std::span<const Symbol>(w), i);
        for (Sign s : kSigns) {
          if (h.label(cell_face(c, x, i, s)) != expect)
            report.add("label-face", h.name(x.base) + " face " + std::to_string(i) + sign_char(s));
        }
      }
      if (c.symmetric()) {
        for (std::uint32_t i = 0; i + 1 < n; ++i)
          if (h.label(transpose(c, x, i)) != word_transpose(std::span<const Symbol>(w), i))
            report.add("label-symmetry", h.name(x.base) + " sigma" + std::to_string(i));
      }
    }
  }
  return report;
}

/// Faces (all 2n of them) of a possibly degenerate cell.
inline std::vector<Cell> boundary(const CubicalComplex& c, const Cell& x) {
  std::vector<Cell> out;
  out.reserve(2 * x.dim());
  for (std::uint32_t i = 0; i < x.dim(); ++i)
    for (Sign s : kSigns) out.push_back(cell_face(c, x, i, s));
  return out;
}

namespace detail {

/// For every non-degenerate cell whose label has a star at position j and
/// whose j-faces agree, the degenerate cell iota_j(d_j^- x) is a competitor
/// with the same label. Returns true when such a competitor matches on the
/// faces selected by `sources_only`.
inline bool collides_with_degeneracy(const Hda& h, const Cell& x, bool sources_only) {
  const auto& c = h.complex();
  const auto w = h.label(x.base);
  for (std::uint32_t j = 0; j < x.dim(); ++j) {
    if (w[j] != kStar) continue;
    const Cell d = degeneracy(cell_face(c, x, j, Sign::minus), j);
    bool same = true;
    for (std::uint32_t i = 0; i < x.dim() && same; ++i)
      for (Sign s : kSigns) {
        if (sources_only && s == Sign::plus) continue;
        if (cell_face(c, x, i, s) != cell_face(c, d, i, s)) {
          same = false;
          break;
        }
      }
    if (same) return true;
  }
  return false;
}

}  // namespace detail

/// No two distinct cells of one dimension share all faces and the label.
inline bool check_strong_labeling(const Hda& h) {
  const auto& c = h.complex();
  for (std::uint32_t n = 1; n < c.levels(); ++n) {
    std::map<std::pair<std::vector<Cell>, LabelWord>, std::uint32_t> seen;
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      const Cell x = Cell::of(n, k);
      auto key = std::make_pair(boundary(c, x), LabelWord(h.label(x.base).begin(), h.label(x.base).end()));
      if (!seen.emplace(std::move(key), k).second) return false;
      if (detail::collides_with_degeneracy(h, x, false)) return false;
    }
  }
  return true;
}

inline bool check_linear_labeling(const Hda& h) {
  const auto& c = h.complex();
  for (std::uint32_t n = 2; n < c.levels(); ++n)
    for (std::uint32_t k = 0; k < c.size(n); ++k)
      if (!is_linear(h.label(CellId{n, k}), kStar)) return false;
  return true;
}

/// n-determinism: n-cells with equal source faces and equal labels coincide.
/// For n = 0 every vertex has the empty label and no sources, so the check is
/// only meaningful for n >= 1; `check_deterministic(h)` covers all n >= 1.
inline bool check_deterministic(const Hda& h, std::uint32_t n) {
  const auto& c = h.complex();
  if (n == 0) return c.size(0) <= 1;
  std::map<std::pair<std::vector<Cell>, LabelWord>, std::uint32_t> seen;
  for (std::uint32_t k = 0; k < c.size(n); ++k) {
    const Cell x = Cell::of(n, k);
    std::vector<Cell> sources;
    for (std::uint32_t i = 0; i < n; ++i) sources.push_back(cell_face(c, x, i, Sign::minus));
    auto w = h.label(x.base);
    if (!seen.emplace(std::make_pair(std::move(sources), LabelWord(w.begin(), w.end())), k).second) return false;
    if (detail::collides_with_degeneracy(h, x, true)) return false;
  }
  return true;
}

inline bool check_deterministic(const Hda& h) {
  for (std::uint32_t n = 1; n < h.complex().levels(); ++n)
    if (!check_deterministic(h, n)) return false;
  return true;
}

inline Hda truncate(const Hda& h, std::uint32_t n) { return h.truncated(n); }

/// Left adjoint of truncation: the same cells, nothing above the top level.
/// With sparse storage this is the identity on representations.
inline Hda pad_skeleton(const Hda& h) { return h; }
inline CubicalComplex pad_skeleton(const CubicalComplex& c) { return c; }

// ---------------------------------------------------------------------------
// Coskeleton filling

namespace detail {

/// Enumerates the compatible k-shells built from non-degenerate (k-1)-cells:
/// families f[2i+s] with d_i^b f_{j+1,a} = d_j^a f_{i,b} for i <= j.
template <class Visit>
void for_each_shell(const CubicalComplex& c, std::uint32_t k, Visit&& visit) {
  const std::uint32_t m = k - 1;
  const std::size_t pool = c.size(m);
  std::vector<Cell> shell(2 * k);
  auto compatible = [&](std::size_t slot) {
    const std::uint32_t q = static_cast<std::uint32_t>(slot / 2);
    const Sign qs = kSigns[slot % 2];
    for (std::size_t other = 0; other < slot; ++other) {
      const std::uint32_t p = static_cast<std::uint32_t>(other / 2);
      const Sign ps = kSigns[other % 2];
      if (p == q) continue;
      // p < q: identity with i = p, j + 1 = q.
      const Cell lhs = cell_face(c, shell[slot], p, ps);
      const Cell rhs = cell_face(c, shell[other], q - 1, qs);
      if (lhs != rhs) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == shell.size()) {
      visit(std::as_const(shell));
      return;
    }
    for (std::uint32_t idx = 0; idx < pool; ++idx) {
      shell[slot] = Cell::of(m, idx);
      if (compatible(slot)) self(self, slot + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Fills every compatible k-shell (from_dim < k <= max_dim) of non-degenerate
/// (k-1)-cells that has no filler yet with one fresh k-cell. Fillers are
/// appended in the lexicographic order of their shells. Symmetric complexes get
/// the transpositions of the new cells wired up.
inline CubicalComplex coskeleton_fill(const CubicalComplex& input, std::uint32_t from_dim, std::uint32_t max_dim,
                                      std::uint32_t dim_cap = 8) {
  if (from_dim < 1) fail(ErrorCode::index_out_of_range, "coskeleton filling starts above dimension 1");
  if (max_dim > dim_cap) fail(ErrorCode::dimension_cap_exceeded, "max_dim " + std::to_string(max_dim));
  CubicalComplex c = input.truncated(std::max(from_dim, input.max_dim()));
  for (std::uint32_t k = from_dim + 1; k <= max_dim; ++k) {
    std::map<std::vector<Cell>, std::uint32_t> filled;
    for (std::uint32_t idx = 0; idx < c.size(k); ++idx) {
      auto f = c.faces({k, idx});
      filled.emplace(std::vector<Cell>(f.begin(), f.end()), idx);
    }
    std::vector<std::vector<Cell>> fresh;
    detail::for_each_shell(c, k, [&](const std::vector<Cell>& shell) {
      if (!filled.count(shell)) fresh.push_back(shell);
    });
    for (auto& shell : fresh) {
      const std::uint32_t id = c.add_cell(k, shell);
      filled.emplace(std::move(shell), id);
    }
    if (c.symmetric() && k >= 2) {
      for (std::uint32_t idx = 0; idx < c.size(k); ++idx) {
        for (std::uint32_t i = 0; i + 1 < k; ++i) {
          if (c.transposition({k, idx}, i) != kNoCell) continue;
          const Cell x = Cell::of(k, idx);
          std::vector<Cell> image;
          for (std::uint32_t j = 0; j < k; ++j)
            for (Sign s : kSigns) {
              if (j == i)
                image.push_back(cell_face(c, x, i + 1, s));
              else if (j == i + 1)
                image.push_back(cell_face(c, x, i, s));
              else if (j < i)
                image.push_back(transpose(c, cell_face(c, x, j, s), i - 1));
              else
                image.push_back(transpose(c, cell_face(c, x, j, s), i));
            }
          auto it = filled.find(image);
          if (it != filled.end()) c.set_transposition({k, idx}, i, it->second);
        }
      }
    }
  }
  return c;
}

/// Labeled variant: a shell is filled only when its face labels agree on a
/// single word, which becomes the filler's label.
inline Hda coskeleton_fill(const Hda& h, std::uint32_t from_dim, std::uint32_t max_dim, std::uint32_t dim_cap = 8) {
  if (from_dim < 1) fail(ErrorCode::index_out_of_range, "coskeleton filling starts above dimension 1");
  if (max_dim > dim_cap) fail(ErrorCode::dimension_cap_exceeded, "max_dim " + std::to_string(max_dim));
  Hda out = h.truncated(std::max(from_dim, h.max_dim()));
  for (std::uint32_t k = from_dim + 1; k <= max_dim; ++k) {
    auto& c = out.complex();
    std::map<std::vector<Cell>, std::uint32_t> filled;
    for (std::uint32_t idx = 0; idx < c.size(k); ++idx) {
      auto f = c.faces({k, idx});
      filled.emplace(std::vector<Cell>(f.begin(), f.end()), idx);
    }
    std::vector<std::pair<std::vector<Cell>, LabelWord>> fresh;
    detail::for_each_shell(c, k, [&](const std::vector<Cell>& shell) {
      if (filled.count(shell)) return;
      LabelWord w(k, kStar);
      std::vector<bool> known(k, false);
      for (std::uint32_t i = 0; i < k; ++i) {
        for (Sign s : kSigns) {
          const LabelWord f = out.label(shell[2 * i + static_cast<unsigned>(s)]);
          for (std::uint32_t p = 0, q = 0; p < k; ++p) {
            if (p == i) continue;
            if (!known[p]) {
              w[p] = f[q];
              known[p] = true;
            } else if (w[p] != f[q]) {
              return;
            }
            ++q;
          }
        }
      }
      fresh.emplace_back(shell, std::move(w));
    });
    for (auto& [shell, w] : fresh) {
      const std::uint32_t id = out.add_cell(shell, w);
      filled.emplace(shell, id);
    }
    if (c.symmetric() && k >= 2) {
      for (std::uint32_t idx = 0; idx < c.size(k); ++idx) {
        for (std::uint32_t i = 0; i + 1 < k; ++i) {
          if (c.transposition({k, idx}, i) != kNoCell) continue;
          const Cell x = Cell::of(k, idx);
          std::vector<Cell> image;
          for (std::uint32_t j = 0; j < k; ++j)
            for (Sign s : kSigns) {
              if (j == i)
                image.push_back(cell_face(c, x, i + 1, s));
              else if (j == i + 1)
                image.push_back(cell_face(c, x, i, s));
              else if (j < i)
                image.push_back(transpose(c, cell_face(c, x, j, s), i - 1));
              else
                image.push_back(transpose(c, cell_face(c, x, j, s), i));
            }
          auto it = filled.find(image);
          if (it != filled.end()) c.set_transposition({k, idx}, i, it->second);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

/// kappa sends each stored cell to a (possibly degenerate) cell of the target;
/// lambda is a pointed map between alphabets.
struct HdaMorphism {
  std::vector<std::vector<Cell>> cells;
  std::vector<Symbol> labels;

  Cell apply(const Cell& x) const {
    return with_degeneracies(cells.at(x.base.dim).at(x.base.index), x.degeneracies);
  }
  Cell apply(CellId id) const { return cells.at(id.dim).at(id.index); }

  bool operator==(const HdaMorphism&) const = default;
  auto operator<=>(const HdaMorphism&) const = default;
};

inline HdaMorphism identity_morphism(const Hda& h) {
  HdaMorphism m;
  m.cells.resize(h.complex().levels());
  for (std::uint32_t n = 0; n < h.complex().levels(); ++n)
    for (std::uint32_t k = 0; k < h.size(n); ++k) m.cells[n].push_back(Cell::of(n, k));
  for (Symbol s = 0; s < h.alphabet().size(); ++s) m.labels.push_back(s);
  return m;
}

/// `first` then `second`.
inline HdaMorphism compose(const HdaMorphism& first, const HdaMorphism& second) {
  HdaMorphism m;
  m.cells.resize(first.cells.size());
  for (std::size_t n = 0; n < first.cells.size(); ++n)
    for (const Cell& x : first.cells[n]) m.cells[n].push_back(second.apply(x));
  for (Symbol s : first.labels) m.labels.push_back(second.labels.at(s));
  return m;
}

inline ValidationReport validate_morphism(const HdaMorphism& m, const Hda& src, const Hda& dst) {
  ValidationReport report;
  const auto& a = src.complex();
  const auto& b = dst.complex();
  if (m.labels.size() != src.alphabet().size()) {
    report.add("label-map", "arity differs from the source alphabet");
    return report;
  }
  if (m.labels[0] != kStar) report.add("label-map", "star must map to star");
  for (Symbol s : m.labels)
    if (s >= dst.alphabet().size()) report.add("label-map", "image outside the target alphabet");
  if (m.cells.size() < a.levels()) {
    report.add("cell-map", "missing dimensions");
    return report;
  }
  for (std::uint32_t n = 0; n < a.levels(); ++n) {
    if (m.cells[n].size() != a.size(n)) {
      report.add("cell-map", "dimension " + std::to_string(n) + " has the wrong number of images");
      return report;
    }
    for (const Cell& y : m.cells[n])
      if (!detail::well_formed(b, y) || y.dim() != n) {
        report.add("cell-map", "image " + describe(y) + " is not an " + std::to_string(n) + "-cell of the target");
        return report;
      }
  }
  if (!report.ok()) return report;
  if (m.cells[0].empty() || m.cells[0][src.initial()] != Cell::of(0, dst.initial()))
    report.add("initial", "initial state not preserved");
  for (std::uint32_t n = 0; n < a.levels(); ++n) {
    for (std::uint32_t k = 0; k < a.size(n); ++k) {
      const Cell x = Cell::of(n, k);
      const Cell img = m.apply(x);
      LabelWord mapped;
      for (Symbol s : src.label(x.base)) mapped.push_back(m.labels[s]);
      if (dst.label(img) != mapped) report.add("label-square", src.name(x.base));
      for (std::uint32_t i = 0; i < n; ++i)
        for (Sign s : kSigns)
          if (m.apply(cell_face(a, x, i, s)) != cell_face(b, img, i, s))
            report.add("naturality-face", src.name(x.base) + " face " + std::to_string(i) + sign_char(s));
      if (a.symmetric() && n >= 2) {
        if (!b.symmetric()) {
          report.add("naturality-symmetry", "target carries no symmetry");
          continue;
        }
        for (std::uint32_t i = 0; i + 1 < n; ++i)
          if (m.apply(transpose(a, x, i)) != transpose(b, img, i))
            report.add("naturality-symmetry", src.name(x.base) + " sigma" + std::to_string(i));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Lookup of cells by (0-source, label), for HDAs in which that pair determines
// the cell (every HDA generated by a cubical transition system or an ACR).

class CellIndex {
 public:
  explicit CellIndex(const Hda& h) : ends_(h.complex()) {
    const auto& c = h.complex();
    for (std::uint32_t n = 0; n < c.levels(); ++n)
      for (std::uint32_t k = 0; k < c.size(n); ++k) {
        const auto w = h.label(CellId{n, k});
        Key key{ends_.source(CellId{n, k}), LabelWord(w.begin(), w.end())};
        if (!index_.emplace(std::move(key), CellId{n, k}).second) ambiguous_ = true;
      }
  }

  bool ambiguous() const { return ambiguous_; }

  std::optional<CellId> find(std::uint32_t vertex, const LabelWord& word) const {
    auto it = index_.find(Key{vertex, word});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// The cell with the given 0-source whose label is `word`, stars becoming
  /// degenerate positions.
  std::optional<Cell> find_with_stars(std::uint32_t vertex, const LabelWord& word) const {
    LabelWord core;
    std::uint32_t mask = 0;
    for (std::uint32_t p = 0; p < word.size(); ++p) {
      if (word[p] == kStar)
        mask |= 1u << p;
      else
        core.push_back(word[p]);
    }
    auto base = find(vertex, core);
    if (!base) return std::nullopt;
    return Cell{*base, mask};
  }

  const VertexEnds& ends() const { return ends_; }

 private:
  using Key = std::pair<std::uint32_t, LabelWord>;
  VertexEnds ends_;
  std::map<Key, CellId> index_;
  bool ambiguous_ = false;
};

}  // namespace hdabridge
