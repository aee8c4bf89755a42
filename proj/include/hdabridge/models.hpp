#pragma once

// The traditional models: transition systems (plain and labeled), automata
// with concurrency relations, prime event structures and Petri nets, together
// with their morphisms and axiom validators. States, events and places are
// referred to by their index; names are kept for I/O.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hdabridge/error.hpp"
#include "hdabridge/report.hpp"
#include "hdabridge/word.hpp"

namespace hdabridge {

using Index = std::uint32_t;
using PartialMap = std::vector<std::optional<Index>>;

namespace detail {

inline std::optional<Index> find_name(const std::vector<std::string>& names, std::string_view name) {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<Index>(k);
  return std::nullopt;
}

inline void check_unique(const std::vector<std::string>& names, const char* what, ValidationReport& report) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) report.add("unique-names", std::string(what) + " '" + n + "' repeats");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Transition systems

struct Transition {
  Index source = 0;
  Index event = 0;
  Index target = 0;
  auto operator<=>(const Transition&) const = default;
};

struct TransitionSystem {
  std::vector<std::string> states;
  Index initial = 0;
  std::vector<std::string> events;
  std::set<Transition> transitions;

  std::optional<Index> find_state(std::string_view n) const { return detail::find_name(states, n); }
  std::optional<Index> find_event(std::string_view n) const { return detail::find_name(events, n); }

  Index state(std::string_view n) {
    if (auto k = find_state(n)) return *k;
    states.emplace_back(n);
    return static_cast<Index>(states.size() - 1);
  }
  Index event(std::string_view n) {
    if (auto k = find_event(n)) return *k;
    events.emplace_back(n);
    return static_cast<Index>(events.size() - 1);
  }
  void add(std::string_view src, std::string_view ev, std::string_view dst) {
    const Index s = state(src);
    const Index e = event(ev);
    transitions.insert({s, e, state(dst)});
  }

  bool operator==(const TransitionSystem&) const = default;
};

inline ValidationReport validate_ts(const TransitionSystem& t) {
  ValidationReport report;
  if (t.initial >= t.states.size()) report.add("initial", "initial state out of range");
  detail::check_unique(t.states, "state", report);
  detail::check_unique(t.events, "event", report);
  for (const auto& tr : t.transitions)
    if (tr.source >= t.states.size() || tr.target >= t.states.size() || tr.event >= t.events.size())
      report.add("transition-typing", "transition out of range");
  return report;
}

struct TsMorphism {
  std::vector<Index> states;
  PartialMap events;
  bool operator==(const TsMorphism&) const = default;
};

inline TsMorphism identity_morphism(const TransitionSystem& t) {
  TsMorphism m;
  for (Index s = 0; s < t.states.size(); ++s) m.states.push_back(s);
  for (Index e = 0; e < t.events.size(); ++e) m.events.emplace_back(e);
  return m;
}

inline PartialMap compose_partial(const PartialMap& first, const PartialMap& second) {
  PartialMap out;
  for (const auto& e : first) out.push_back(e ? second.at(*e) : std::nullopt);
  return out;
}

inline TsMorphism compose(const TsMorphism& first, const TsMorphism& second) {
  TsMorphism m;
  for (Index s : first.states) m.states.push_back(second.states.at(s));
  m.events = compose_partial(first.events, second.events);
  return m;
}

inline ValidationReport validate_morphism(const TsMorphism& m, const TransitionSystem& src,
                                          const TransitionSystem& dst) {
  ValidationReport report;
  if (m.states.size() != src.states.size() || m.events.size() != src.events.size()) {
    report.add("morphism-typing", "component arity differs from the source");
    return report;
  }
  for (Index s : m.states)
    if (s >= dst.states.size()) report.add("morphism-typing", "state image out of range");
  for (const auto& e : m.events)
    if (e && *e >= dst.events.size()) report.add("morphism-typing", "event image out of range");
  if (!report.ok()) return report;
  if (m.states[src.initial] != dst.initial) report.add("initial", "initial state not preserved");
  for (const auto& tr : src.transitions) {
    const auto& ev = m.events[tr.event];
    const std::string where = src.states[tr.source] + " -" + src.events[tr.event] + "-> " + src.states[tr.target];
    if (ev) {
      if (!dst.transitions.count({m.states[tr.source], *ev, m.states[tr.target]}))
        report.add("transition-preserved", where);
    } else if (m.states[tr.source] != m.states[tr.target]) {
      report.add("idle-collapse", where);
    }
  }
  return report;
}

/// Adds the idle event * and a *-loop on every state.
inline TransitionSystem idle_completion(const TransitionSystem& t) {
  if (t.find_event("*")) fail(ErrorCode::star_clash, "transition system already has a '*' event");
  TransitionSystem out = t;
  const Index star = out.event("*");
  for (Index s = 0; s < out.states.size(); ++s) out.transitions.insert({s, star, s});
  return out;
}

// ---------------------------------------------------------------------------
// Labeled transition systems

struct LabeledTransitionSystem {
  TransitionSystem ts;
  std::vector<std::string> labels;
  std::vector<Index> labeling;  // event -> label
  bool operator==(const LabeledTransitionSystem&) const = default;
};

struct LtsMorphism {
  TsMorphism ts;
  PartialMap labels;
  bool operator==(const LtsMorphism&) const = default;
};

inline ValidationReport validate_lts(const LabeledTransitionSystem& l) {
  ValidationReport report = validate_ts(l.ts);
  detail::check_unique(l.labels, "label", report);
  if (l.labeling.size() != l.ts.events.size()) report.add("labeling", "labeling arity differs from events");
  for (Index x : l.labeling)
    if (x >= l.labels.size()) report.add("labeling", "label out of range");
  return report;
}

/// The label square l2 . tau = lambda . l1 is read in the Kleisli sense: both
/// sides are undefined together or defined and equal.
inline ValidationReport validate_morphism(const LtsMorphism& m, const LabeledTransitionSystem& src,
                                          const LabeledTransitionSystem& dst) {
  ValidationReport report = validate_morphism(m.ts, src.ts, dst.ts);
  if (!report.ok()) return report;
  if (m.labels.size() != src.labels.size()) {
    report.add("morphism-typing", "label map arity");
    return report;
  }
  for (Index e = 0; e < src.ts.events.size(); ++e) {
    const auto& lhs = m.ts.events[e];
    const auto& rhs = m.labels[src.labeling[e]];
    const bool ok = lhs ? (rhs && dst.labeling[*lhs] == *rhs) : !rhs;
    if (!ok) report.add("label-square", src.ts.events[e]);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Automata with concurrency relations

struct Acr {
  TransitionSystem ts;
  /// (state, a, b) meaning a I_state b; kept symmetric.
  std::set<std::tuple<Index, Index, Index>> independence;

  bool independent(Index s, Index a, Index b) const { return independence.count({s, a, b}) != 0; }
  void add_independence(Index s, Index a, Index b) {
    independence.insert({s, a, b});
    independence.insert({s, b, a});
  }
  std::optional<Index> successor(Index s, Index e) const {
    auto it = ts.transitions.lower_bound({s, e, 0});
    if (it != ts.transitions.end() && it->source == s && it->event == e) return it->target;
    return std::nullopt;
  }

  bool operator==(const Acr&) const = default;
};

using AcrMorphism = TsMorphism;

inline ValidationReport validate_acr(const Acr& a) {
  ValidationReport report = validate_ts(a.ts);
  if (!report.ok()) return report;
  std::map<std::pair<Index, Index>, Index> next;
  for (const auto& tr : a.ts.transitions) {
    auto [it, fresh] = next.emplace(std::make_pair(tr.source, tr.event), tr.target);
    if (!fresh && it->second != tr.target)
      report.add("determinism", a.ts.states[tr.source] + " has two " + a.ts.events[tr.event] + "-successors");
  }
  for (const auto& [s, x, y] : a.independence) {
    if (s >= a.ts.states.size() || x >= a.ts.events.size() || y >= a.ts.events.size()) {
      report.add("independence-typing", "independence triple out of range");
      continue;
    }
    const std::string where = a.ts.events[x] + " I_" + a.ts.states[s] + " " + a.ts.events[y];
    if (x == y) report.add("independence-irreflexive", where);
    if (!a.independent(s, y, x)) report.add("independence-symmetric", where);
    auto s1 = next.find({s, x});
    auto s2 = next.find({s, y});
    if (s1 == next.end() || s2 == next.end()) {
      report.add("square-completion", where + ": missing first step");
      continue;
    }
    auto r1 = next.find({s1->second, y});
    auto r2 = next.find({s2->second, x});
    if (r1 == next.end() || r2 == next.end() || r1->second != r2->second)
      report.add("square-completion", where + ": square does not close");
  }
  return report;
}

inline ValidationReport validate_morphism(const AcrMorphism& m, const Acr& src, const Acr& dst) {
  ValidationReport report = validate_morphism(m, src.ts, dst.ts);
  if (!report.ok()) return report;
  for (const auto& [s, x, y] : src.independence) {
    const auto& fx = m.events[x];
    const auto& fy = m.events[y];
    if (fx && fy && !dst.independent(m.states[s], *fx, *fy))
      report.add("independence-preserved", src.ts.events[x] + " I_" + src.ts.states[s] + " " + src.ts.events[y]);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Event structures

class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t a, std::size_t b) const { return bits_[a * n_ + b] != 0; }
  void set(std::size_t a, std::size_t b, bool v = true) { bits_[a * n_ + b] = v ? 1 : 0; }

  bool operator==(const Relation&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<char> bits_;
};

/// `leq` is the full (reflexive) causal order, `conflict` the full
/// incompatibility relation.
struct EventStructure {
  std::vector<std::string> events;
  Relation leq;
  Relation conflict;

  std::optional<Index> find_event(std::string_view n) const { return detail::find_name(events, n); }
  bool operator==(const EventStructure&) const = default;
};

/// Builds an event structure from generating pairs: the causal order is
/// closed reflexively and transitively, conflicts symmetrically and
/// hereditarily.
inline EventStructure make_event_structure(std::vector<std::string> events,
                                           const std::vector<std::pair<Index, Index>>& causes,
                                           const std::vector<std::pair<Index, Index>>& conflicts) {
  const std::size_t n = events.size();
  EventStructure es{std::move(events), Relation(n), Relation(n)};
  for (std::size_t e = 0; e < n; ++e) es.leq.set(e, e);
  for (auto [a, b] : causes) es.leq.set(a, b);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (es.leq(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (es.leq(k, j)) es.leq.set(i, j);
  for (auto [a, b] : conflicts) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (es.leq(a, x) && es.leq(b, y)) {
          es.conflict.set(x, y);
          es.conflict.set(y, x);
        }
  }
  return es;
}

inline ValidationReport validate_es(const EventStructure& es) {
  ValidationReport report;
  const std::size_t n = es.events.size();
  detail::check_unique(es.events, "event", report);
  if (es.leq.size() != n || es.conflict.size() != n) {
    report.add("relation-typing", "relation size differs from the event count");
    return report;
  }
  const auto& ev = es.events;
  for (std::size_t a = 0; a < n; ++a) {
    if (!es.leq(a, a)) report.add("order-reflexive", ev[a]);
    if (es.conflict(a, a)) report.add("conflict-irreflexive", ev[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && es.leq(a, b) && es.leq(b, a)) report.add("order-antisymmetric", ev[a] + "," + ev[b]);
      if (es.conflict(a, b) != es.conflict(b, a)) report.add("conflict-symmetric", ev[a] + "," + ev[b]);
      for (std::size_t c = 0; c < n; ++c) {
        if (es.leq(a, b) && es.leq(b, c) && !es.leq(a, c))
          report.add("order-transitive", ev[a] + "<=" + ev[b] + "<=" + ev[c]);
        if (es.conflict(a, b) && es.leq(b, c) && !es.conflict(a, c))
          report.add("hereditary-conflict", ev[a] + "#" + ev[b] + "<=" + ev[c]);
      }
    }
  }
  return report;
}

struct EsMorphism {
  PartialMap events;
  bool operator==(const EsMorphism&) const = default;
};

inline EsMorphism identity_morphism(const EventStructure& es) {
  EsMorphism m;
  for (Index e = 0; e < es.events.size(); ++e) m.events.emplace_back(e);
  return m;
}

inline EsMorphism compose(const EsMorphism& first, const EsMorphism& second) {
  return {compose_partial(first.events, second.events)};
}

inline ValidationReport validate_morphism(const EsMorphism& m, const EventStructure& src, const EventStructure& dst) {
  ValidationReport report;
  const std::size_t n = src.events.size();
  if (m.events.size() != n) {
    report.add("morphism-typing", "event map arity");
    return report;
  }
  for (const auto& e : m.events)
    if (e && *e >= dst.events.size()) {
      report.add("morphism-typing", "event image out of range");
      return report;
    }
  for (std::size_t e = 0; e < n; ++e) {
    if (!m.events[e]) continue;
    const Index fe = *m.events[e];
    for (std::size_t d = 0; d < dst.events.size(); ++d) {
      if (!dst.leq(d, fe)) continue;
      bool covered = false;
      for (std::size_t c = 0; c < n && !covered; ++c) covered = src.leq(c, e) && m.events[c] == static_cast<Index>(d);
      if (!covered) report.add("causes-reflected", dst.events[d] + " <= f(" + src.events[e] + ")");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!m.events[a] || !m.events[b]) continue;
      const Index fa = *m.events[a], fb = *m.events[b];
      if ((fa == fb || dst.conflict(fa, fb)) && !src.conflict(a, b))
        report.add("conflict-reflected", src.events[a] + "," + src.events[b]);
    }
  return report;
}

using EventSet = std::uint64_t;

/// All finite, downward closed, conflict-free subsets, ordered by size then
/// by bit pattern.
inline std::vector<EventSet> configurations(const EventStructure& es) {
  const std::size_t n = es.events.size();
  if (n > 64) fail(ErrorCode::size_limit, "configurations support at most 64 events");
  std::vector<EventSet> below(n, 0), clash(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && es.leq(b, a)) below[a] |= EventSet{1} << b;
      if (es.conflict(a, b)) clash[a] |= EventSet{1} << b;
    }
  std::set<EventSet> seen{0};
  std::deque<EventSet> queue{0};
  while (!queue.empty()) {
    const EventSet x = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < n; ++e) {
      const EventSet bit = EventSet{1} << e;
      if ((x & bit) || (below[e] & ~x) || (clash[e] & x)) continue;
      if (seen.insert(x | bit).second) queue.push_back(x | bit);
    }
  }
  std::vector<EventSet> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(),
                   [](EventSet a, EventSet b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

// ---------------------------------------------------------------------------
// Petri nets

using Marking = std::vector<std::uint32_t>;

struct PetriNet {
  std::vector<std::string> places;
  Marking initial;
  std::vector<std::string> events;
  std::vector<Marking> pre;
  std::vector<Marking> post;

  std::optional<Index> find_place(std::string_view n) const { return detail::find_name(places, n); }
  std::optional<Index> find_event(std::string_view n) const { return detail::find_name(events, n); }

  Index add_place(std::string name, std::uint32_t tokens = 0) {
    places.push_back(std::move(name));
    initial.push_back(tokens);
    for (auto& m : pre) m.push_back(0);
    for (auto& m : post) m.push_back(0);
    return static_cast<Index>(places.size() - 1);
  }
  Index add_event(std::string name) {
    events.push_back(std::move(name));
    pre.emplace_back(places.size(), 0);
    post.emplace_back(places.size(), 0);
    return static_cast<Index>(events.size() - 1);
  }

  bool operator==(const PetriNet&) const = default;
};

inline ValidationReport validate_pn(const PetriNet& n) {
  ValidationReport report;
  detail::check_unique(n.places, "place", report);
  detail::check_unique(n.events, "event", report);
  if (n.initial.size() != n.places.size()) report.add("marking-typing", "initial marking arity");
  if (n.pre.size() != n.events.size() || n.post.size() != n.events.size())
    report.add("flow-typing", "pre/post arity differs from events");
  for (const auto& m : n.pre)
    if (m.size() != n.places.size()) report.add("flow-typing", "pre marking arity");
  for (const auto& m : n.post)
    if (m.size() != n.places.size()) report.add("flow-typing", "post marking arity");
  return report;
}

/// phi maps places of the target back to places of the source; psi is a
/// partial map on events. An undefined psi(e) behaves as the empty event:
/// pre(e) . phi = post(e) . phi = 0.
struct PnMorphism {
  std::vector<Index> places;
  PartialMap events;
  bool operator==(const PnMorphism&) const = default;
  auto operator<=>(const PnMorphism&) const = default;
};

inline PnMorphism identity_morphism(const PetriNet& n) {
  PnMorphism m;
  for (Index p = 0; p < n.places.size(); ++p) m.places.push_back(p);
  for (Index e = 0; e < n.events.size(); ++e) m.events.emplace_back(e);
  return m;
}

inline PnMorphism compose(const PnMorphism& first, const PnMorphism& second) {
  PnMorphism m;
  for (Index p : second.places) m.places.push_back(first.places.at(p));
  m.events = compose_partial(first.events, second.events);
  return m;
}

inline ValidationReport validate_morphism(const PnMorphism& m, const PetriNet& src, const PetriNet& dst) {
  ValidationReport report;
  if (m.places.size() != dst.places.size() || m.events.size() != src.events.size()) {
    report.add("morphism-typing", "component arity");
    return report;
  }
  for (Index p : m.places)
    if (p >= src.places.size()) report.add("morphism-typing", "place image out of range");
  for (const auto& e : m.events)
    if (e && *e >= dst.events.size()) report.add("morphism-typing", "event image out of range");
  if (!report.ok()) return report;
  for (Index q = 0; q < dst.places.size(); ++q) {
    const Index p = m.places[q];
    if (dst.initial[q] != src.initial[p]) report.add("initial-marking", dst.places[q]);
    for (Index e = 0; e < src.events.size(); ++e) {
      const auto& f = m.events[e];
      const std::uint32_t want_pre = f ? dst.pre[*f][q] : 0;
      const std::uint32_t want_post = f ? dst.post[*f][q] : 0;
      if (src.pre[e][p] != want_pre) report.add("pre-condition", src.events[e] + " at " + dst.places[q]);
      if (src.post[e][p] != want_post) report.add("post-condition", src.events[e] + " at " + dst.places[q]);
    }
  }
  return report;
}

inline bool covers(const Marking& m, const Marking& need) {
  for (std::size_t p = 0; p < m.size(); ++p)
    if (m[p] < need[p]) return false;
  return true;
}

/// Fires a word of events (symbol k names event k-1, the star contributes
/// nothing) as one step: the word's pre-sets are consumed together.
inline Marking fire(const PetriNet& net, const Marking& m, std::span<const Symbol> word) {
  Marking need(net.places.size(), 0);
  Marking gain(net.places.size(), 0);
  for (Symbol s : word) {
    if (s == kStar) continue;
    if (s > net.events.size()) fail(ErrorCode::index_out_of_range, "event symbol out of range");
    for (std::size_t p = 0; p < need.size(); ++p) {
      need[p] += net.pre[s - 1][p];
      gain[p] += net.post[s - 1][p];
    }
  }
  Marking out = m;
  for (std::size_t p = 0; p < need.size(); ++p) {
    if (m[p] < need[p])
      fail(ErrorCode::not_enabled, "place " + net.places[p] + " holds " + std::to_string(m[p]) + " of " +
                                       std::to_string(need[p]) + " tokens");
    out[p] = m[p] - need[p] + gain[p];
  }
  return out;
}

struct MarkingGraph {
  std::vector<Marking> markings;  // markings[0] is the initial marking
  std::map<Marking, Index> index;
  std::vector<Transition> edges;  // (marking, event, marking)
};

/// Breadth-first closure of the initial marking under single firings.
inline MarkingGraph reachable_markings(const PetriNet& net, std::size_t max_states) {
  if (max_states < 1) fail(ErrorCode::explosion_limit, "max_states must be positive");
  MarkingGraph g;
  g.markings.push_back(net.initial);
  g.index.emplace(net.initial, 0);
  for (std::size_t k = 0; k < g.markings.size(); ++k) {
    for (Index e = 0; e < net.events.size(); ++e) {
      if (!covers(g.markings[k], net.pre[e])) continue;
      Marking next = g.markings[k];
      for (std::size_t p = 0; p < next.size(); ++p) next[p] = next[p] - net.pre[e][p] + net.post[e][p];
      auto [it, fresh] = g.index.emplace(next, static_cast<Index>(g.markings.size()));
      if (fresh) {
        if (g.markings.size() >= max_states)
          fail(ErrorCode::explosion_limit, "more than " + std::to_string(max_states) + " reachable markings");
        g.markings.push_back(std::move(next));
      }
      g.edges.push_back({static_cast<Index>(k), e, it->second});
    }
  }
  return g;
}

}  // namespace hdabridge
