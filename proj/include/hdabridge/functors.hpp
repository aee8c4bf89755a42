#pragma once

// Translations between the traditional models and HDAs, in both directions,
// on objects and on morphisms (namespace fmap), plus regions and the
// transposition bijection between Petri net and HDA morphisms.

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hdabridge/cts.hpp"
#include "hdabridge/error.hpp"
#include "hdabridge/hda.hpp"
#include "hdabridge/models.hpp"

namespace hdabridge {

// ---------------------------------------------------------------------------
// Transition systems and 1-dimensional HDAs

namespace detail {

/// Symbol of each event in ts_to_hda1's alphabet: events keep their order,
/// an event named "*" becomes the star.
inline std::vector<Symbol> ts_symbols(const TransitionSystem& t) {
  std::vector<Symbol> out;
  Symbol next = 1;
  for (const auto& e : t.events) out.push_back(e == "*" ? kStar : next++);
  return out;
}

inline Hda ts_alphabet(const TransitionSystem& t) {
  Hda h;
  for (const auto& e : t.events)
    if (e != "*") h.add_symbol(e);
  return h;
}

}  // namespace detail

/// Vertices are states, edges are transitions (in set order). With `idle`,
/// *-transitions are read as idle steps: loops become degenerate cells and are
/// not stored. Without it, a "*" event yields *-labeled edges.
inline Hda ts_to_hda1(const TransitionSystem& t, bool idle = false) {
  Hda h = detail::ts_alphabet(t);
  h.complex().make_symmetric();
  for (const auto& s : t.states) h.add_vertex(s);
  h.set_initial(t.initial);
  const auto sym = detail::ts_symbols(t);
  for (const auto& tr : t.transitions) {
    if (idle && sym[tr.event] == kStar) {
      if (tr.source != tr.target) fail(ErrorCode::invalid_model, "an idle transition must be a loop");
      continue;
    }
    h.add_cell({Cell::of(0, tr.source), Cell::of(0, tr.target)}, {sym[tr.event]});
  }
  return h;
}

/// States are 0-cells, events the non-star labels, transitions the
/// non-degenerate edges. *-labeled edges are idle steps and produce nothing,
/// unless `keep_idle` is set, in which case a trailing "*" event records them.
inline TransitionSystem hda1_to_ts(const Hda& h, bool keep_idle = false) {
  TransitionSystem t;
  for (std::uint32_t v = 0; v < h.size(0); ++v) t.states.push_back(h.name({0, v}));
  t.initial = h.initial();
  t.events.assign(h.alphabet().begin() + 1, h.alphabet().end());
  if (keep_idle) t.events.push_back("*");
  const auto& c = h.complex();
  for (std::uint32_t k = 0; k < h.size(1); ++k) {
    const Symbol s = h.label(CellId{1, k})[0];
    if (s == kStar && !keep_idle) continue;
    const Index e = s == kStar ? static_cast<Index>(t.events.size() - 1) : s - 1;
    t.transitions.insert({c.face({1, k}, 0, Sign::minus).base.index, e, c.face({1, k}, 0, Sign::plus).base.index});
  }
  return t;
}

/// Labeled variant: edges carry the label of their event.
inline Hda lts_to_hda1(const LabeledTransitionSystem& l) {
  Hda h;
  for (const auto& x : l.labels) h.add_symbol(x);
  h.complex().make_symmetric();
  for (const auto& s : l.ts.states) h.add_vertex(s);
  h.set_initial(l.ts.initial);
  for (const auto& tr : l.ts.transitions)
    h.add_cell({Cell::of(0, tr.source), Cell::of(0, tr.target)}, {l.labeling.at(tr.event) + 1});
  return h;
}

/// The monad T on pointed 1-dimensional complexes: one *-labeled loop per
/// vertex, stored as an ordinary edge.
inline Hda idle_loops(const Hda& h) {
  Hda out = h.truncated(1);
  for (std::uint32_t v = 0; v < h.size(0); ++v) out.add_cell({Cell::of(0, v), Cell::of(0, v)}, {kStar});
  return out;
}

// ---------------------------------------------------------------------------
// Automata with concurrency relations and 2-dimensional HDAs

namespace detail {

inline std::map<Transition, std::uint32_t> edge_ids(const TransitionSystem& t) {
  std::map<Transition, std::uint32_t> ids;
  std::uint32_t k = 0;
  for (const auto& tr : t.transitions) ids.emplace(tr, k++);
  return ids;
}

}  // namespace detail

/// One 2-cell per ordered independence (a1, s, a2), labeled (a1, a2). Face
/// index i deletes label entry i, so the 0-faces are the a2-edges and the
/// 1-faces the a1-edges of the square.
inline Hda acr_to_hda2(const Acr& a) {
  const auto report = validate_acr(a);
  if (!report.ok()) fail(ErrorCode::square_incomplete, report.violations().front().rule + ": " +
                                                           report.violations().front().where);
  if (a.ts.find_event("*")) fail(ErrorCode::star_clash, "automaton has a '*' event");
  Hda h = ts_to_hda1(a.ts);
  const auto ids = detail::edge_ids(a.ts);
  std::map<std::tuple<Index, Index, Index>, std::uint32_t> squares;
  for (const auto& [s, a1, a2] : a.independence) {
    const Index s1 = *a.successor(s, a1);
    const Index s2 = *a.successor(s, a2);
    const Index r = *a.successor(s1, a2);
    auto edge = [&](Index from, Index e, Index to) { return Cell::of(1, ids.at({from, e, to})); };
    const std::uint32_t id = h.add_cell(
        {edge(s, a2, s2), edge(s1, a2, r), edge(s, a1, s1), edge(s2, a1, r)}, {a1 + 1, a2 + 1});
    squares.emplace(std::make_tuple(s, a1, a2), id);
  }
  for (const auto& [key, id] : squares) {
    const auto& [s, a1, a2] = key;
    h.complex().set_transposition({2, id}, 0, squares.at({s, a2, a1}));
  }
  return h;
}

/// Underlying TS from the 1-skeleton; a I_s b whenever a 2-cell with 0-source
/// s is labeled (a, b).
inline Acr hda2_to_acr(const Hda& h) {
  if (!check_deterministic(h, 1)) fail(ErrorCode::not_one_deterministic, "two equally labeled edges share a source");
  Acr a;
  a.ts = hda1_to_ts(h.truncated(1));
  const VertexEnds ends(h.complex());
  for (std::uint32_t k = 0; k < h.size(2); ++k) {
    const auto w = h.label(CellId{2, k});
    if (w[0] == kStar || w[1] == kStar) continue;
    a.add_independence(ends.source(CellId{2, k}), w[0] - 1, w[1] - 1);
  }
  const auto report = validate_acr(a);
  if (!report.ok()) fail(ErrorCode::square_incomplete, report.violations().front().rule + ": " +
                                                           report.violations().front().where);
  return a;
}

// ---------------------------------------------------------------------------
// Event structures

inline CtsHda es_to_cts_hda(const EventStructure& es) {
  return cts_to_hda(es_to_cts(es), static_cast<std::uint32_t>(es.events.size()));
}

inline Hda es_to_hda(const EventStructure& es) { return es_to_cts_hda(es).hda; }

/// e <= e' when every run through e' meets e first; e # e' when no run meets
/// both. Runs are the paths of edges from the initial vertex; higher cells add
/// no run words that their boundary paths do not already give.
inline EventStructure hda_to_es(const Hda& h) {
  if (!check_linear_labeling(h)) fail(ErrorCode::not_linear, "some cell label repeats an event");
  const std::size_t n = h.alphabet().size() - 1;
  if (n > 64) fail(ErrorCode::size_limit, "at most 64 events are supported");
  const auto& c = h.complex();
  std::vector<std::vector<std::pair<std::uint32_t, Symbol>>> out(h.size(0));
  for (std::uint32_t k = 0; k < h.size(1); ++k)
    out[c.face({1, k}, 0, Sign::minus).base.index].emplace_back(c.face({1, k}, 0, Sign::plus).base.index,
                                                               h.label(CellId{1, k})[0]);

  std::vector<EventSet> not_before(n, 0);  // bit e of not_before[e']: e' met without e
  std::vector<EventSet> together(n, 0);
  EventSet occurring = 0;
  std::set<std::pair<std::uint32_t, EventSet>> seen{{h.initial(), 0}};
  std::deque<std::pair<std::uint32_t, EventSet>> queue{{h.initial(), 0}};
  while (!queue.empty()) {
    const auto [v, met] = queue.front();
    queue.pop_front();
    for (const auto& [to, s] : out[v]) {
      EventSet next = met;
      if (s != kStar) {
        const std::size_t e = s - 1;
        const EventSet bit = EventSet{1} << e;
        not_before[e] |= ~met & ~bit;
        next |= bit;
        occurring |= bit;
        for (std::size_t f = 0; f < n; ++f)
          if ((next >> f) & 1u) {
            together[e] |= EventSet{1} << f;
            together[f] |= bit;
          }
      }
      if (seen.insert({to, next}).second) queue.emplace_back(to, next);
    }
  }

  EventStructure es{std::vector<std::string>(h.alphabet().begin() + 1, h.alphabet().end()), Relation(n), Relation(n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const bool occurs = (occurring >> b) & 1u;
      if (a == b || (occurs && !((not_before[b] >> a) & 1u))) es.leq.set(a, b);
      if (a != b && !((together[a] >> b) & 1u)) es.conflict.set(a, b);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (es.leq(a, b) && es.leq(b, a))
        fail(ErrorCode::not_partial_order, es.events[a] + " and " + es.events[b] + " precede each other");
  return es;
}

// ---------------------------------------------------------------------------
// Petri nets

/// The HDA of a net with the marking graph that numbers its vertices.
struct NetHda {
  CtsHda cts;
  MarkingGraph graph;

  const Hda& hda() const { return cts.hda; }
  std::optional<std::uint32_t> vertex(const Marking& m) const {
    auto it = graph.index.find(m);
    if (it == graph.index.end()) return std::nullopt;
    return it->second;
  }
};

inline NetHda pn_to_net_hda(const PetriNet& net, std::size_t max_states, std::uint32_t max_dim,
                            bool truncate = false) {
  NetHda out;
  out.graph = reachable_markings(net, max_states);
  out.cts = cts_to_hda(pn_to_cts(net, max_states), max_dim, truncate);
  return out;
}

inline Hda pn_to_hda(const PetriNet& net, std::size_t max_states, std::uint32_t max_dim, bool truncate = false) {
  return pn_to_net_hda(net, max_states, max_dim, truncate).cts.hda;
}

// ---------------------------------------------------------------------------
// Regions

/// r[k] = (R'(e), R''(e)) for the label with symbol k+1; s[v] = S(v).
struct Region {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> r;
  std::vector<std::uint32_t> s;

  bool operator==(const Region&) const = default;
  auto operator<=>(const Region&) const = default;
};

inline std::pair<std::uint32_t, std::uint32_t> region_weight(const Region& reg, std::span<const Symbol> word) {
  std::pair<std::uint32_t, std::uint32_t> w{0, 0};
  for (Symbol s : word)
    if (s != kStar) {
      w.first += reg.r.at(s - 1).first;
      w.second += reg.r.at(s - 1).second;
    }
  return w;
}

namespace detail {

inline bool region_holds(const Hda& h, const VertexEnds& ends, const Region& reg, std::uint32_t from_dim) {
  const auto& c = h.complex();
  for (std::uint32_t n = from_dim; n < c.levels(); ++n)
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      const auto [pre, post] = region_weight(reg, h.label(CellId{n, k}));
      const std::uint32_t x = reg.s[ends.source(CellId{n, k})];
      const std::uint32_t y = reg.s[ends.target(CellId{n, k})];
      if (x < pre || y < post || x - pre != y - post) return false;
    }
  return true;
}

}  // namespace detail

/// Coherence on every stored cell: S(x) = m + R'(y) and S(x') = m + R''(y) for
/// some m >= 0, x and x' being the 0-source and 0-target of y.
inline bool region_check(const Hda& h, const Region& reg) {
  if (reg.r.size() + 1 != h.alphabet().size() || reg.s.size() != h.size(0)) return false;
  return detail::region_holds(h, VertexEnds(h.complex()), reg, 1);
}

/// Every region whose values all lie in [0, cap], sorted. For each choice of
/// r the edges fix S up to one offset per connected component; the offsets are
/// enumerated and the higher cells checked.
inline std::vector<Region> enumerate_regions(const Hda& h, std::uint32_t cap) {
  const std::size_t labels = h.alphabet().size() - 1;
  const std::size_t nv = h.size(0);
  const auto& c = h.complex();
  const VertexEnds ends(c);
  struct Edge {
    std::uint32_t from, to;
    Symbol s;
  };
  std::vector<Edge> edges;
  for (std::uint32_t k = 0; k < h.size(1); ++k)
    edges.push_back({ends.source(CellId{1, k}), ends.target(CellId{1, k}), h.label(CellId{1, k})[0]});
  std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> adjacent(nv);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    adjacent[edges[k].from].emplace_back(edges[k].to, k);
    adjacent[edges[k].to].emplace_back(edges[k].from, k);
  }
  std::vector<std::uint32_t> component(nv, kNoCell);
  std::vector<std::vector<std::uint32_t>> members;
  for (std::uint32_t v = 0; v < nv; ++v) {
    if (component[v] != kNoCell) continue;
    const auto id = static_cast<std::uint32_t>(members.size());
    members.emplace_back();
    std::deque<std::uint32_t> queue{v};
    component[v] = id;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      members[id].push_back(u);
      for (auto [w, e] : adjacent[u])
        if (component[w] == kNoCell) {
          component[w] = id;
          queue.push_back(w);
        }
    }
  }

  std::vector<Region> out;
  Region reg;
  reg.r.assign(labels, {0, 0});
  reg.s.assign(nv, 0);
  std::vector<std::int64_t> offset(nv);
  std::vector<std::int64_t> lo(members.size()), hi(members.size());
  const std::size_t slots = 2 * labels;
  std::vector<std::uint32_t> digits(slots, 0);
  for (;;) {
    for (std::size_t k = 0; k < labels; ++k) reg.r[k] = {digits[2 * k], digits[2 * k + 1]};
    bool consistent = true;
    std::vector<bool> placed(nv, false);
    for (std::size_t comp = 0; comp < members.size() && consistent; ++comp) {
      const auto root = members[comp][0];
      offset[root] = 0;
      placed[root] = true;
      std::deque<std::uint32_t> queue{root};
      while (!queue.empty() && consistent) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto [w, e] : adjacent[u]) {
          const auto [pre, post] = region_weight(reg, std::span<const Symbol>(&edges[e].s, 1));
          const std::int64_t delta = std::int64_t{post} - std::int64_t{pre};
          const std::int64_t want = edges[e].from == u ? offset[u] + delta : offset[u] - delta;
          if (edges[e].from == u && edges[e].to == u) {
            if (delta != 0) consistent = false;
            continue;
          }
          if (!placed[w]) {
            placed[w] = true;
            offset[w] = want;
            queue.push_back(w);
          } else if (offset[w] != want) {
            consistent = false;
          }
        }
      }
      lo[comp] = hi[comp] = 0;
      for (auto v : members[comp]) {
        lo[comp] = std::min(lo[comp], offset[v]);
        hi[comp] = std::max(hi[comp], offset[v]);
      }
      if (hi[comp] - lo[comp] > std::int64_t{cap}) consistent = false;
    }
    if (consistent) {
      // Bases b with lo + b >= 0 and hi + b <= cap, odometer over components.
      std::vector<std::int64_t> base(members.size());
      for (std::size_t comp = 0; comp < members.size(); ++comp) base[comp] = -lo[comp];
      for (;;) {
        for (std::size_t comp = 0; comp < members.size(); ++comp)
          for (auto v : members[comp]) reg.s[v] = static_cast<std::uint32_t>(base[comp] + offset[v]);
        if (detail::region_holds(h, ends, reg, 1)) out.push_back(reg);
        std::size_t comp = 0;
        for (; comp < members.size(); ++comp) {
          if (hi[comp] + base[comp] < std::int64_t{cap}) {
            ++base[comp];
            break;
          }
          base[comp] = -lo[comp];
        }
        if (comp == members.size()) break;
      }
    }
    std::size_t k = 0;
    for (; k < slots; ++k) {
      if (digits[k] < cap) {
        ++digits[k];
        break;
      }
      digits[k] = 0;
    }
    if (k == slots) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The net whose places are the regions within `cap`.
struct SynthesizedNet {
  PetriNet net;
  std::vector<Region> places;
};

inline SynthesizedNet hda_to_pn(const Hda& h, std::uint32_t cap) {
  SynthesizedNet out;
  out.places = enumerate_regions(h, cap);
  auto& net = out.net;
  for (std::size_t k = 1; k < h.alphabet().size(); ++k) net.add_event(h.alphabet()[k]);
  for (std::size_t p = 0; p < out.places.size(); ++p) {
    const Region& reg = out.places[p];
    const Index id = net.add_place("p" + std::to_string(p), reg.s[h.initial()]);
    for (std::size_t e = 0; e < reg.r.size(); ++e) {
      net.pre[e][id] = reg.r[e].first;
      net.post[e][id] = reg.r[e].second;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transposition between Hom(pn(C), N) and Hom(C, hda(N))

/// f: pn(C) -> N becomes C -> hda(N) with kappa(x)(p) = S_phi(p)(x) and
/// lambda = psi.
inline HdaMorphism transpose_to_hda(const PnMorphism& f, const Hda& c, const SynthesizedNet& pn,
                                    const PetriNet& net, const NetHda& target) {
  const auto report = validate_morphism(f, pn.net, net);
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  HdaMorphism m;
  m.labels.push_back(kStar);
  for (const auto& e : f.events) m.labels.push_back(e ? *e + 1 : kStar);
  const auto& cx = c.complex();
  m.cells.resize(cx.levels());
  std::vector<std::uint32_t> vertex(c.size(0));
  for (std::uint32_t x = 0; x < c.size(0); ++x) {
    Marking mk(net.places.size());
    for (std::size_t p = 0; p < mk.size(); ++p) mk[p] = pn.places[f.places[p]].s[x];
    const auto v = target.vertex(mk);
    if (!v) fail(ErrorCode::out_of_reachable_fragment, "marking " + marking_name(net, mk) + " is not reachable");
    vertex[x] = *v;
    m.cells[0].push_back(Cell::of(0, *v));
  }
  const VertexEnds ends(cx);
  for (std::uint32_t n = 1; n < cx.levels(); ++n)
    for (std::uint32_t k = 0; k < cx.size(n); ++k) {
      std::vector<Index> word;
      std::uint32_t mask = 0;
      const auto w = c.label(CellId{n, k});
      for (std::uint32_t p = 0; p < n; ++p) {
        if (m.labels[w[p]] == kStar)
          mask |= 1u << p;
        else
          word.push_back(m.labels[w[p]] - 1);
      }
      const auto id = target.cts.find(vertex[ends.source(CellId{n, k})], word);
      if (!id) fail(ErrorCode::out_of_reachable_fragment, "no cell for " + c.word_string(w) + " in the net's HDA");
      m.cells[n].push_back(Cell{{static_cast<std::uint32_t>(word.size()), *id}, mask});
    }
  return m;
}

/// g: C -> hda(N) becomes pn(C) -> N; phi(p) is the region S(x) = kappa(x)(p),
/// R(e) = (pre(lambda e)(p), post(lambda e)(p)).
inline PnMorphism transpose_to_pn(const HdaMorphism& g, const Hda& c, const SynthesizedNet& pn,
                                  const PetriNet& net, const NetHda& target) {
  const auto report = validate_morphism(g, c, target.hda());
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  PnMorphism f;
  const std::size_t labels = c.alphabet().size() - 1;
  for (std::size_t e = 0; e < labels; ++e) {
    const Symbol s = g.labels[e + 1];
    f.events.push_back(s == kStar ? std::nullopt : std::optional<Index>(s - 1));
  }
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    Region reg;
    for (std::size_t e = 0; e < labels; ++e)
      reg.r.emplace_back(f.events[e] ? net.pre[*f.events[e]][p] : 0, f.events[e] ? net.post[*f.events[e]][p] : 0);
    for (std::uint32_t x = 0; x < c.size(0); ++x) reg.s.push_back(target.graph.markings[g.cells[0][x].base.index][p]);
    auto it = std::lower_bound(pn.places.begin(), pn.places.end(), reg);
    if (it == pn.places.end() || *it != reg)
      fail(ErrorCode::cap_exceeded, "the region of place " + net.places[p] + " lies outside the enumerated places");
    f.places.push_back(static_cast<Index>(it - pn.places.begin()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Action on morphisms

namespace fmap {

inline std::vector<Symbol> label_map(const PartialMap& events) {
  std::vector<Symbol> out{kStar};
  for (const auto& e : events) out.push_back(e ? *e + 1 : kStar);
  return out;
}

inline PartialMap event_map(const std::vector<Symbol>& labels) {
  PartialMap out;
  for (std::size_t s = 1; s < labels.size(); ++s)
    out.push_back(labels[s] == kStar ? std::nullopt : std::optional<Index>(labels[s] - 1));
  return out;
}

/// Edges go to the edge of the image transition, or to the degenerate loop on
/// the image state when tau is undefined.
inline HdaMorphism ts_to_hda1(const TsMorphism& m, const TransitionSystem& src, const TransitionSystem& dst) {
  if (src.find_event("*") || dst.find_event("*")) fail(ErrorCode::star_clash, "expected transition systems without '*'");
  const auto report = validate_morphism(m, src, dst);
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  const auto ids = detail::edge_ids(dst);
  HdaMorphism h;
  h.labels = label_map(m.events);
  h.cells.resize(2);
  for (Index s : m.states) h.cells[0].push_back(Cell::of(0, s));
  for (const auto& tr : src.transitions) {
    if (m.events[tr.event])
      h.cells[1].push_back(Cell::of(1, ids.at({m.states[tr.source], *m.events[tr.event], m.states[tr.target]})));
    else
      h.cells[1].push_back(Cell{{0, m.states[tr.source]}, 1});
  }
  return h;
}

inline TsMorphism hda1_to_ts(const HdaMorphism& m) {
  TsMorphism t;
  for (const Cell& v : m.cells.at(0)) t.states.push_back(v.base.index);
  t.events = event_map(m.labels);
  return t;
}

inline HdaMorphism acr_to_hda2(const AcrMorphism& m, const Acr& src, const Acr& dst) {
  const auto report = validate_morphism(m, src, dst);
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  const Hda a = hdabridge::acr_to_hda2(src);
  const Hda b = hdabridge::acr_to_hda2(dst);
  const CellIndex index(b);
  HdaMorphism h;
  h.labels = label_map(m.events);
  const VertexEnds ends(a.complex());
  h.cells.resize(a.complex().levels());
  for (std::uint32_t n = 0; n < a.complex().levels(); ++n)
    for (std::uint32_t k = 0; k < a.size(n); ++k) {
      LabelWord w;
      for (Symbol s : a.label(CellId{n, k})) w.push_back(h.labels[s]);
      const auto img = index.find_with_stars(m.states[ends.source(CellId{n, k})], w);
      if (!img) fail(ErrorCode::invalid_morphism, "image cell missing");
      h.cells[n].push_back(*img);
    }
  return h;
}

inline AcrMorphism hda2_to_acr(const HdaMorphism& m) { return hda1_to_ts(m); }

/// Configurations go to their images, events to their images.
inline CtsMorphism es_to_cts(const EsMorphism& f, const EventStructure& src, const EventStructure& dst) {
  const auto report = validate_morphism(f, src, dst);
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  const auto a = configurations(src);
  const auto b = configurations(dst);
  std::map<EventSet, Index> index;
  for (Index k = 0; k < b.size(); ++k) index.emplace(b[k], k);
  CtsMorphism m;
  for (EventSet x : a) {
    EventSet y = 0;
    for (std::size_t e = 0; e < src.events.size(); ++e)
      if (((x >> e) & 1u) && f.events[e]) y |= EventSet{1} << *f.events[e];
    m.states.push_back(index.at(y));
  }
  m.events = f.events;
  m.labels = label_map(f.events);
  return m;
}

inline HdaMorphism es_to_hda(const EsMorphism& f, const EventStructure& src, const EventStructure& dst) {
  return cts_morphism_to_hda_morphism(es_to_cts(f, src, dst), es_to_cts_hda(src), es_to_cts_hda(dst));
}

inline EsMorphism hda_to_es(const HdaMorphism& m) { return {event_map(m.labels)}; }

/// Markings M of the source go to M . phi.
inline CtsMorphism pn_to_cts(const PnMorphism& g, const PetriNet& src, const PetriNet& dst, std::size_t max_states) {
  const auto report = validate_morphism(g, src, dst);
  if (!report.ok()) fail(ErrorCode::invalid_morphism, report.violations().front().rule);
  const auto a = reachable_markings(src, max_states);
  const auto b = reachable_markings(dst, max_states);
  CtsMorphism m;
  for (const auto& mk : a.markings) {
    Marking image(dst.places.size());
    for (std::size_t q = 0; q < image.size(); ++q) image[q] = mk[g.places[q]];
    auto it = b.index.find(image);
    if (it == b.index.end())
      fail(ErrorCode::out_of_reachable_fragment, "image marking " + marking_name(dst, image) + " not reachable");
    m.states.push_back(it->second);
  }
  m.events = g.events;
  m.labels = label_map(g.events);
  return m;
}

inline HdaMorphism pn_to_hda(const PnMorphism& g, const PetriNet& src, const PetriNet& dst, std::size_t max_states,
                             std::uint32_t max_dim) {
  return cts_morphism_to_hda_morphism(pn_to_cts(g, src, dst, max_states),
                                      pn_to_net_hda(src, max_states, max_dim).cts,
                                      pn_to_net_hda(dst, max_states, max_dim).cts);
}

/// h: C2 -> C gives pn(C2) -> pn(C); a place (R, S) of pn(C) pulls back to
/// (R . lambda, S . kappa_0).
inline PnMorphism hda_to_pn(const HdaMorphism& h, const Hda& src, const SynthesizedNet& src_pn,
                            const SynthesizedNet& dst_pn) {
  PnMorphism f;
  f.events = event_map(h.labels);
  for (const Region& reg : dst_pn.places) {
    Region back;
    for (std::size_t s = 1; s < h.labels.size(); ++s)
      back.r.push_back(h.labels[s] == kStar ? std::make_pair(0u, 0u) : reg.r.at(h.labels[s] - 1));
    for (std::uint32_t x = 0; x < src.size(0); ++x) back.s.push_back(reg.s.at(h.cells[0][x].base.index));
    auto it = std::lower_bound(src_pn.places.begin(), src_pn.places.end(), back);
    if (it == src_pn.places.end() || *it != back)
      fail(ErrorCode::invalid_morphism, "pulled back region is not a region of the source");
    f.places.push_back(static_cast<Index>(it - src_pn.places.begin()));
  }
  return f;
}

}  // namespace fmap

}  // namespace hdabridge
