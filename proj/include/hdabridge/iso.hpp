#pragma once

// Backtracking search for HDA morphisms (used for hom-set enumeration and
// isomorphism tests) and canonical orderings used for structural equality.

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "hdabridge/error.hpp"
#include "hdabridge/functors.hpp"
#include "hdabridge/hda.hpp"
#include "hdabridge/models.hpp"

namespace hdabridge {

struct MorphismSearch {
  std::optional<std::vector<Symbol>> labels;  // fixed label map; otherwise all pointed maps
  bool injective = false;                     // cells go to distinct non-degenerate cells
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  std::size_t budget = 2'000'000;  // search nodes
};

struct MorphismSearchResult {
  std::vector<HdaMorphism> morphisms;
  bool budget_exhausted = false;
};

namespace detail {

class MorphismSearcher {
 public:
  MorphismSearcher(const Hda& a, const Hda& b, const MorphismSearch& opts, MorphismSearchResult& out)
      : a_(a), b_(b), opts_(opts), out_(out), ends_a_(a.complex()), ends_b_(b.complex()) {
    const auto& cb = b.complex();
    by_key_.resize(cb.levels());
    for (std::uint32_t n = 0; n < cb.levels(); ++n)
      for (std::uint32_t k = 0; k < cb.size(n); ++k) {
        const auto w = b.label(CellId{n, k});
        by_key_[n][{ends_b_.source(CellId{n, k}), LabelWord(w.begin(), w.end())}].push_back(k);
      }
    const auto& ca = a.complex();
    incident_.resize(a.size(0));
    for (std::uint32_t k = 0; k < a.size(1); ++k) {
      incident_[ends_a_.source(CellId{1, k})].push_back(k);
      if (ends_a_.target(CellId{1, k}) != ends_a_.source(CellId{1, k}))
        incident_[ends_a_.target(CellId{1, k})].push_back(k);
    }
    for (std::uint32_t n = 1; n < ca.levels(); ++n)
      for (std::uint32_t k = 0; k < ca.size(n); ++k) order_.push_back({n, k});
  }

  void run() {
    if (a_.size(0) == 0 || b_.size(0) == 0) return;
    if (opts_.labels) {
      labels_ = *opts_.labels;
      search_vertices(0);
      return;
    }
    labels_.assign(a_.alphabet().size(), kStar);
    search_labels(1);
  }

 private:
  bool stop() const { return out_.budget_exhausted || out_.morphisms.size() >= opts_.limit; }

  bool tick() {
    if (++nodes_ > opts_.budget) out_.budget_exhausted = true;
    return !out_.budget_exhausted;
  }

  void search_labels(std::size_t s) {
    if (stop()) return;
    if (s == labels_.size()) {
      search_vertices(0);
      return;
    }
    for (Symbol t = 0; t < b_.alphabet().size() && !stop(); ++t) {
      labels_[s] = t;
      search_labels(s + 1);
    }
    labels_[s] = kStar;
  }

  LabelWord mapped(CellId id) const {
    LabelWord w;
    for (Symbol s : a_.label(id)) w.push_back(labels_[s]);
    return w;
  }

  void init_images() {
    images_.assign(a_.complex().levels(), {});
    for (std::uint32_t n = 0; n < a_.complex().levels(); ++n) images_[n].assign(a_.size(n), Cell{});
    used_.assign(b_.complex().levels(), {});
    for (std::uint32_t n = 0; n < b_.complex().levels(); ++n) used_[n].assign(b_.size(n), false);
  }

  bool edge_possible(std::uint32_t k) const {
    const CellId id{1, k};
    const std::uint32_t u = images_[0][ends_a_.source(id)].base.index;
    const std::uint32_t v = images_[0][ends_a_.target(id)].base.index;
    const LabelWord w = mapped(id);
    if (w[0] == kStar && u == v && !opts_.injective) return true;
    auto it = by_key_.size() > 1 ? by_key_[1].find({u, w}) : by_key_[0].end();
    if (by_key_.size() <= 1 || it == by_key_[1].end()) return false;
    for (std::uint32_t e : it->second)
      if (ends_b_.target(CellId{1, e}) == v && !(opts_.injective && used_[1][e])) return true;
    return false;
  }

  void search_vertices(std::uint32_t v) {
    if (v == 0) init_images();
    if (stop() || !tick()) return;
    if (v == a_.size(0)) {
      search_cells(0);
      return;
    }
    for (std::uint32_t t = 0; t < b_.size(0) && !stop(); ++t) {
      if (v == a_.initial() && t != b_.initial()) continue;
      if (opts_.injective && used_[0][t]) continue;
      images_[0][v] = Cell::of(0, t);
      bool ok = true;
      for (std::uint32_t k : incident_[v]) {
        const CellId id{1, k};
        if (ends_a_.source(id) > v || ends_a_.target(id) > v) continue;
        if (!edge_possible(k)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used_[0][t] = true;
      search_vertices(v + 1);
      used_[0][t] = false;
    }
  }

  Cell image_of(const Cell& x) const {
    return with_degeneracies(images_[x.base.dim][x.base.index], x.degeneracies);
  }

  void search_cells(std::size_t pos) {
    if (stop() || !tick()) return;
    if (pos == order_.size()) {
      finish();
      return;
    }
    const CellId id = order_[pos];
    const std::uint32_t n = id.dim;
    const auto& ca = a_.complex();
    const auto& cb = b_.complex();
    const LabelWord w = mapped(id);
    std::vector<Cell> faces;
    for (std::uint32_t i = 0; i < n; ++i)
      for (Sign s : kSigns) faces.push_back(image_of(ca.face(id, i, s)));
    std::vector<Cell> candidates;
    const std::uint32_t src = images_[0][ends_a_.source(id)].base.index;
    if (n < by_key_.size()) {
      auto it = by_key_[n].find({src, w});
      if (it != by_key_[n].end())
        for (std::uint32_t k : it->second)
          if (!(opts_.injective && used_[n][k])) candidates.push_back(Cell::of(n, k));
    }
    if (!opts_.injective)
      for (std::uint32_t j = 0; j < n; ++j)
        if (w[j] == kStar) {
          const Cell d = degeneracy(faces[2 * j], j);
          if (std::find(candidates.begin(), candidates.end(), d) == candidates.end()) candidates.push_back(d);
        }
    for (const Cell& cand : candidates) {
      if (stop()) return;
      bool ok = true;
      for (std::uint32_t i = 0; i < n && ok; ++i)
        for (Sign s : kSigns)
          if (cell_face(cb, cand, i, s) != faces[2 * i + static_cast<unsigned>(s)]) {
            ok = false;
            break;
          }
      if (!ok) continue;
      images_[n][id.index] = cand;
      if (!cand.degenerate()) used_[n][cand.base.index] = true;
      search_cells(pos + 1);
      if (!cand.degenerate()) used_[n][cand.base.index] = false;
    }
  }

  void finish() {
    HdaMorphism m{images_, labels_};
    if (validate_morphism(m, a_, b_).ok()) out_.morphisms.push_back(std::move(m));
  }

  const Hda& a_;
  const Hda& b_;
  const MorphismSearch& opts_;
  MorphismSearchResult& out_;
  VertexEnds ends_a_, ends_b_;
  std::vector<std::map<std::pair<std::uint32_t, LabelWord>, std::vector<std::uint32_t>>> by_key_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<CellId> order_;
  std::vector<Symbol> labels_;
  std::vector<std::vector<Cell>> images_;
  std::vector<std::vector<bool>> used_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// All morphisms a -> b (up to `opts.limit`), in search order.
inline MorphismSearchResult enumerate_hda_morphisms(const Hda& a, const Hda& b, const MorphismSearch& opts = {}) {
  MorphismSearchResult out;
  detail::MorphismSearcher(a, b, opts, out).run();
  return out;
}

/// Structure- and label-preserving bijection, matching labels by name.
inline std::optional<HdaMorphism> iso_check(const Hda& a, const Hda& b, std::size_t budget = 2'000'000) {
  if (a.alphabet().size() != b.alphabet().size() || a.complex().symmetric() != b.complex().symmetric())
    return std::nullopt;
  const std::uint32_t levels = std::max(a.complex().levels(), b.complex().levels());
  for (std::uint32_t n = 0; n < levels; ++n)
    if (a.size(n) != b.size(n)) return std::nullopt;
  std::vector<Symbol> labels{kStar};
  for (std::size_t s = 1; s < a.alphabet().size(); ++s) {
    const auto t = b.find_symbol(a.alphabet()[s]);
    if (!t) return std::nullopt;
    labels.push_back(*t);
  }
  MorphismSearch opts;
  opts.labels = labels;
  opts.injective = true;
  opts.limit = 1;
  opts.budget = budget;
  auto res = enumerate_hda_morphisms(a, b, opts);
  if (res.morphisms.empty() && res.budget_exhausted) fail(ErrorCode::size_limit, "isomorphism search budget exhausted");
  if (res.morphisms.empty()) return std::nullopt;
  return res.morphisms.front();
}

inline std::optional<HdaMorphism> iso_check(const TransitionSystem& a, const TransitionSystem& b) {
  return iso_check(ts_to_hda1(a), ts_to_hda1(b));
}

inline std::optional<HdaMorphism> iso_check(const Acr& a, const Acr& b) {
  return iso_check(acr_to_hda2(a), acr_to_hda2(b));
}

/// Event structures up to a permutation of events (names are not compared).
inline std::optional<std::vector<Index>> iso_check(const EventStructure& a, const EventStructure& b) {
  const std::size_t n = a.events.size();
  if (b.events.size() != n) return std::nullopt;
  std::vector<Index> perm(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    for (Index t = 0; t < n; ++t) {
      if (used[t]) continue;
      bool ok = true;
      for (std::size_t j = 0; j <= k && ok; ++j) {
        const Index u = j == k ? t : perm[j];
        ok = a.leq(j, k) == b.leq(u, t) && a.leq(k, j) == b.leq(t, u) && a.conflict(j, k) == b.conflict(u, t);
      }
      if (!ok) continue;
      perm[k] = t;
      used[t] = true;
      if (self(self, k + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return perm;
}

// ---------------------------------------------------------------------------
// Canonical orderings. Names are kept; only indices are renumbered.

namespace detail {

inline std::vector<Index> name_order(const std::vector<std::string>& names) {
  std::vector<Index> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return names[x] < names[y]; });
  return order;
}

inline std::vector<Index> inverse(const std::vector<Index>& order) {
  std::vector<Index> inv(order.size());
  for (Index k = 0; k < order.size(); ++k) inv[order[k]] = k;
  return inv;
}

}  // namespace detail

/// Events sorted by name; states numbered breadth-first from the initial
/// state (successors by event name, then by old index), unreachable states
/// after in their old order.
inline TransitionSystem canonical(const TransitionSystem& t) {
  const auto event_order = detail::name_order(t.events);
  const auto event_new = detail::inverse(event_order);
  std::vector<std::vector<std::pair<Index, Index>>> out(t.states.size());
  for (const auto& tr : t.transitions) out[tr.source].emplace_back(event_new[tr.event], tr.target);
  for (auto& v : out) std::sort(v.begin(), v.end());
  std::vector<Index> order;
  std::vector<bool> seen(t.states.size(), false);
  if (!t.states.empty()) {
    std::deque<Index> queue{t.initial};
    seen[t.initial] = true;
    while (!queue.empty()) {
      const Index s = queue.front();
      queue.pop_front();
      order.push_back(s);
      for (auto [e, to] : out[s])
        if (!seen[to]) {
          seen[to] = true;
          queue.push_back(to);
        }
    }
  }
  for (Index s = 0; s < t.states.size(); ++s)
    if (!seen[s]) order.push_back(s);
  const auto state_new = detail::inverse(order);
  TransitionSystem c;
  for (Index s : order) c.states.push_back(t.states[s]);
  for (Index e : event_order) c.events.push_back(t.events[e]);
  c.initial = t.states.empty() ? 0 : state_new[t.initial];
  for (const auto& tr : t.transitions)
    c.transitions.insert({state_new[tr.source], event_new[tr.event], state_new[tr.target]});
  return c;
}

inline Acr canonical(const Acr& a) {
  Acr c;
  c.ts = canonical(a.ts);
  std::map<std::string, Index> state, event;
  for (Index k = 0; k < c.ts.states.size(); ++k) state.emplace(c.ts.states[k], k);
  for (Index k = 0; k < c.ts.events.size(); ++k) event.emplace(c.ts.events[k], k);
  // Names are unique in valid models, so they carry the renumbering.
  for (const auto& [s, x, y] : a.independence)
    c.independence.insert({state.at(a.ts.states[s]), event.at(a.ts.events[x]), event.at(a.ts.events[y])});
  return c;
}

inline EventStructure canonical(const EventStructure& es) {
  const auto order = detail::name_order(es.events);
  const std::size_t n = order.size();
  EventStructure c{{}, Relation(n), Relation(n)};
  for (Index e : order) c.events.push_back(es.events[e]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      c.leq.set(a, b, es.leq(order[a], order[b]));
      c.conflict.set(a, b, es.conflict(order[a], order[b]));
    }
  return c;
}

/// Vertices breadth-first along edges (by label, then old index); higher
/// cells sorted by (renumbered faces, label, old index).
inline Hda canonical(const Hda& h) {
  const auto& c = h.complex();
  const std::uint32_t levels = c.levels();
  std::vector<std::vector<std::uint32_t>> renum(levels);
  std::vector<std::vector<std::uint32_t>> order(levels);
  {
    std::vector<std::vector<std::tuple<LabelWord, std::uint32_t, std::uint32_t>>> out(h.size(0));
    for (std::uint32_t k = 0; k < h.size(1); ++k) {
      const auto w = h.label(CellId{1, k});
      out[c.face({1, k}, 0, Sign::minus).base.index].emplace_back(LabelWord(w.begin(), w.end()), k,
                                                                 c.face({1, k}, 0, Sign::plus).base.index);
    }
    for (auto& v : out) std::sort(v.begin(), v.end());
    std::vector<bool> seen(h.size(0), false);
    if (h.size(0) > 0) {
      std::deque<std::uint32_t> queue{h.initial()};
      seen[h.initial()] = true;
      while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        order[0].push_back(v);
        for (const auto& [w, k, to] : out[v])
          if (!seen[to]) {
            seen[to] = true;
            queue.push_back(to);
          }
      }
    }
    for (std::uint32_t v = 0; v < h.size(0); ++v)
      if (!seen[v]) order[0].push_back(v);
    renum[0].resize(h.size(0));
    for (std::uint32_t k = 0; k < order[0].size(); ++k) renum[0][order[0][k]] = k;
  }
  auto mapped = [&](const Cell& x) { return Cell{{x.base.dim, renum[x.base.dim][x.base.index]}, x.degeneracies}; };
  for (std::uint32_t n = 1; n < levels; ++n) {
    std::vector<std::tuple<std::vector<Cell>, LabelWord, std::uint32_t>> keys;
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      std::vector<Cell> faces;
      for (const Cell& f : c.faces({n, k})) faces.push_back(mapped(f));
      const auto w = h.label(CellId{n, k});
      keys.emplace_back(std::move(faces), LabelWord(w.begin(), w.end()), k);
    }
    std::sort(keys.begin(), keys.end());
    renum[n].resize(c.size(n));
    for (std::uint32_t k = 0; k < keys.size(); ++k) {
      order[n].push_back(std::get<2>(keys[k]));
      renum[n][std::get<2>(keys[k])] = k;
    }
  }
  Hda out;
  for (std::size_t s = 1; s < h.alphabet().size(); ++s) out.add_symbol(h.alphabet()[s]);
  if (c.symmetric()) out.complex().make_symmetric();
  for (std::uint32_t v : order[0]) out.add_vertex(h.has_explicit_name({0, v}) ? h.name({0, v}) : std::string());
  out.set_initial(h.size(0) ? renum[0][h.initial()] : 0);
  for (std::uint32_t n = 1; n < levels; ++n)
    for (std::uint32_t k : order[n]) {
      std::vector<Cell> faces;
      for (const Cell& f : c.faces({n, k})) faces.push_back(mapped(f));
      const auto w = h.label(CellId{n, k});
      out.add_cell(std::move(faces), LabelWord(w.begin(), w.end()),
                   h.has_explicit_name({n, k}) ? h.name({n, k}) : std::string());
    }
  if (c.symmetric())
    for (std::uint32_t n = 2; n < levels; ++n)
      for (std::uint32_t k = 0; k < c.size(n); ++k)
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
          const auto t = c.transposition({n, k}, i);
          if (t != kNoCell) out.complex().set_transposition({n, renum[n][k]}, i, renum[n][t]);
        }
  return out;
}

}  // namespace hdabridge
