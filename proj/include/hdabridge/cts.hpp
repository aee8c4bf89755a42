#pragma once

// Cubical transition systems: a state space with a successor function on
// events and an enabling predicate on finite multisets of events. The HDA of a
// CTS has, in dimension n, one cell (x, w) per state x and word w of length n
// whose multiset is enabled at x.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdabridge/error.hpp"
#include "hdabridge/hda.hpp"
#include "hdabridge/models.hpp"
#include "hdabridge/report.hpp"

namespace hdabridge {

using Multiset = std::vector<std::uint32_t>;  // multiplicity per event

struct Cts {
  std::vector<std::string> states;
  Index initial = 0;
  std::vector<std::string> events;
  std::vector<std::string> labels{"*"};  // labels[0] is the star
  std::vector<Symbol> labeling;          // event -> label
  std::vector<std::vector<std::optional<Index>>> delta;  // [state][event]
  std::function<bool(Index, const Multiset&)> enabled;

  /// Fires the events of m one after the other, in increasing event order.
  std::optional<Index> successor(Index x, const Multiset& m) const {
    std::optional<Index> at = x;
    for (std::size_t e = 0; e < m.size() && at; ++e)
      for (std::uint32_t k = 0; k < m[e] && at; ++k) at = delta[*at][e];
    return at;
  }
};

namespace detail {

template <class Visit>
void for_each_multiset(std::size_t events, std::uint32_t max_size, Visit&& visit) {
  Multiset m(events, 0);
  auto rec = [&](auto&& self, std::size_t e, std::uint32_t left) -> void {
    if (e == events) {
      visit(std::as_const(m));
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      m[e] = k;
      self(self, e + 1, left - k);
    }
    m[e] = 0;
  };
  rec(rec, 0, max_size);
}

template <class Visit>
void for_each_submultiset(const Multiset& m, Visit&& visit) {
  Multiset sub(m.size(), 0);
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == m.size()) {
      visit(std::as_const(sub));
      return;
    }
    for (std::uint32_t k = 0; k <= m[e]; ++k) {
      sub[e] = k;
      self(self, e + 1);
    }
    sub[e] = 0;
  };
  rec(rec, 0);
}

inline std::string multiset_string(const Cts& c, const Multiset& m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t e = 0; e < m.size(); ++e)
    for (std::uint32_t k = 0; k < m[e]; ++k) {
      if (!first) s += ",";
      s += c.events[e];
      first = false;
    }
  return s + "}";
}

}  // namespace detail

/// Checks typing, the unit axiom and the decomposition axiom over every
/// multiset with at most `max_word` elements.
inline ValidationReport validate_cts(const Cts& c, std::uint32_t max_word) {
  ValidationReport report;
  const std::size_t ne = c.events.size();
  if (c.initial >= c.states.size()) report.add("initial", "initial state out of range");
  if (c.labels.empty() || c.labels[0] != "*") report.add("labels", "label 0 must be the star");
  if (c.labeling.size() != ne) report.add("labeling", "labeling arity differs from events");
  for (Symbol l : c.labeling)
    if (l >= c.labels.size()) report.add("labeling", "label out of range");
  if (c.delta.size() != c.states.size()) report.add("delta-typing", "delta arity differs from states");
  for (const auto& row : c.delta) {
    if (row.size() != ne) report.add("delta-typing", "delta row arity differs from events");
    for (const auto& t : row)
      if (t && *t >= c.states.size()) report.add("delta-typing", "successor out of range");
  }
  if (!c.enabled) report.add("enabled", "no enabling predicate");
  if (!report.ok()) return report;

  for (Index x = 0; x < c.states.size(); ++x) {
    if (!c.enabled(x, Multiset(ne, 0))) report.add("unit", c.states[x] + " does not enable the empty word");
    detail::for_each_multiset(ne, max_word, [&](const Multiset& m) {
      if (!c.enabled(x, m)) return;
      const auto whole = c.successor(x, m);
      const std::string where = c.states[x] + " " + detail::multiset_string(c, m);
      if (!whole) {
        report.add("decomposition", where + ": successor undefined");
        return;
      }
      detail::for_each_submultiset(m, [&](const Multiset& first) {
        Multiset rest(ne);
        for (std::size_t e = 0; e < ne; ++e) rest[e] = m[e] - first[e];
        const auto mid = c.successor(x, first);
        if (!c.enabled(x, first) || !mid) {
          report.add("decomposition", where + ": prefix " + detail::multiset_string(c, first) + " not enabled");
          return;
        }
        if (!c.enabled(*mid, rest)) {
          report.add("decomposition", where + ": suffix " + detail::multiset_string(c, rest) + " not enabled");
          return;
        }
        if (c.successor(*mid, rest) != whole)
          report.add("decomposition", where + ": successors disagree across " + detail::multiset_string(c, first));
      });
    });
  }
  return report;
}

/// The HDA of a CTS together with the lookup (state, event word) -> cell.
struct CtsHda {
  Hda hda;
  std::vector<std::map<std::vector<Index>, std::uint32_t>> cells;  // key: state then events

  std::optional<std::uint32_t> find(Index state, const std::vector<Index>& word) const {
    if (word.size() >= cells.size()) return std::nullopt;
    std::vector<Index> key{state};
    key.insert(key.end(), word.begin(), word.end());
    auto it = cells[word.size()].find(key);
    if (it == cells[word.size()].end()) return std::nullopt;
    return it->second;
  }
};

/// Cells are generated level by level; within a level they are ordered by
/// state, then lexicographically by word. An enabled word longer than
/// `max_dim` raises DimensionCapExceeded unless `truncate` is set, in which
/// case the higher cells are dropped.
inline CtsHda cts_to_hda(const Cts& c, std::uint32_t max_dim, bool truncate = false) {
  const std::size_t ne = c.events.size();
  CtsHda out;
  out.hda = Hda(std::vector<std::string>(c.labels.begin() + 1, c.labels.end()));
  out.cells.emplace_back();
  for (Index x = 0; x < c.states.size(); ++x) {
    out.hda.add_vertex(c.states[x]);
    out.cells[0].emplace(std::vector<Index>{x}, x);
  }
  out.hda.set_initial(c.initial);
  out.hda.complex().make_symmetric();

  std::vector<std::vector<Index>> level;  // keys of the previous level, in order
  for (Index x = 0; x < c.states.size(); ++x) level.push_back({x});
  Multiset m(ne, 0);
  for (std::uint32_t n = 1; !level.empty(); ++n) {
    std::vector<std::vector<Index>> next;
    for (const auto& key : level) {
      std::fill(m.begin(), m.end(), 0);
      for (std::size_t p = 1; p < key.size(); ++p) ++m[key[p]];
      for (Index e = 0; e < ne; ++e) {
        ++m[e];
        if (c.enabled(key[0], m)) {
          next.push_back(key);
          next.back().push_back(e);
        }
        --m[e];
      }
    }
    if (next.empty()) break;
    if (n > max_dim) {
      if (truncate) break;
      fail(ErrorCode::dimension_cap_exceeded,
           "an enabled word of length " + std::to_string(n) + " exceeds max_dim " + std::to_string(max_dim));
    }
    out.cells.emplace_back();
    const auto& prev = out.cells[n - 1];
    auto lookup = [&](const std::vector<Index>& k) -> std::uint32_t {
      auto it = prev.find(k);
      if (it == prev.end()) fail(ErrorCode::invalid_model, "cubical transition system violates decomposition");
      return it->second;
    };
    for (const auto& key : next) {
      const Index x = key[0];
      std::vector<Cell> faces;
      faces.reserve(2 * n);
      LabelWord label;
      for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<Index> rest{x};
        for (std::uint32_t p = 0; p < n; ++p)
          if (p != i) rest.push_back(key[p + 1]);
        faces.push_back(Cell::of(n - 1, lookup(rest)));
        const auto y = c.delta[x][key[i + 1]];
        if (!y) fail(ErrorCode::invalid_model, "cubical transition system violates decomposition");
        rest[0] = *y;
        faces.push_back(Cell::of(n - 1, lookup(rest)));
        label.push_back(c.labeling[key[i + 1]]);
      }
      const std::uint32_t id = out.hda.add_cell(std::move(faces), std::move(label));
      out.cells[n].emplace(key, id);
    }
    if (n >= 2) {
      for (const auto& key : next) {
        const std::uint32_t id = out.cells[n].at(key);
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
          auto swapped = key;
          std::swap(swapped[i + 1], swapped[i + 2]);
          out.hda.complex().set_transposition({n, id}, i, out.cells[n].at(swapped));
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

struct CtsMorphism {
  std::vector<Index> states;
  PartialMap events;
  std::vector<Symbol> labels;  // pointed: labels[0] == 0
};

inline CtsMorphism identity_morphism(const Cts& c) {
  CtsMorphism m;
  for (Index x = 0; x < c.states.size(); ++x) m.states.push_back(x);
  for (Index e = 0; e < c.events.size(); ++e) m.events.emplace_back(e);
  for (Symbol l = 0; l < c.labels.size(); ++l) m.labels.push_back(l);
  return m;
}

inline ValidationReport validate_morphism(const CtsMorphism& f, const Cts& src, const Cts& dst,
                                          std::uint32_t max_word) {
  ValidationReport report;
  if (f.states.size() != src.states.size() || f.events.size() != src.events.size() ||
      f.labels.size() != src.labels.size()) {
    report.add("morphism-typing", "component arity");
    return report;
  }
  for (Index x : f.states)
    if (x >= dst.states.size()) report.add("morphism-typing", "state image out of range");
  for (const auto& e : f.events)
    if (e && *e >= dst.events.size()) report.add("morphism-typing", "event image out of range");
  for (Symbol l : f.labels)
    if (l >= dst.labels.size()) report.add("morphism-typing", "label image out of range");
  if (!f.labels.empty() && f.labels[0] != kStar) report.add("label-map", "star must map to star");
  if (!report.ok()) return report;
  if (f.states[src.initial] != dst.initial) report.add("initial", "initial state not preserved");
  for (Index e = 0; e < src.events.size(); ++e) {
    const Symbol want = f.events[e] ? dst.labeling[*f.events[e]] : kStar;
    if (f.labels[src.labeling[e]] != want) report.add("label-square", src.events[e]);
  }
  for (Index x = 0; x < src.states.size(); ++x) {
    detail::for_each_multiset(src.events.size(), max_word, [&](const Multiset& m) {
      if (!src.enabled(x, m)) return;
      Multiset image(dst.events.size(), 0);
      for (std::size_t e = 0; e < m.size(); ++e)
        if (f.events[e]) image[*f.events[e]] += m[e];
      const std::string where = src.states[x] + " " + detail::multiset_string(src, m);
      if (!dst.enabled(f.states[x], image)) {
        report.add("enabling-preserved", where);
        return;
      }
      const auto a = src.successor(x, m);
      const auto b = dst.successor(f.states[x], image);
      if (!a || !b || f.states[*a] != *b) report.add("successor-preserved", where);
    });
  }
  return report;
}

/// kappa(x, w) = (sigma(x), tau(w)), undefined events becoming degenerate
/// positions.
inline HdaMorphism cts_morphism_to_hda_morphism(const CtsMorphism& f, const CtsHda& src, const CtsHda& dst) {
  HdaMorphism m;
  m.labels = f.labels;
  m.cells.resize(src.cells.size());
  for (std::uint32_t n = 0; n < src.cells.size(); ++n) {
    m.cells[n].resize(src.cells[n].size());
    for (const auto& [key, id] : src.cells[n]) {
      std::vector<Index> word;
      std::uint32_t mask = 0;
      for (std::uint32_t p = 0; p < n; ++p) {
        const auto& e = f.events.at(key[p + 1]);
        if (e)
          word.push_back(*e);
        else
          mask |= 1u << p;
      }
      const auto target = dst.find(f.states.at(key[0]), word);
      if (!target) fail(ErrorCode::invalid_morphism, "image cell missing from the target HDA");
      m.cells[n][id] = Cell{{static_cast<std::uint32_t>(word.size()), *target}, mask};
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Instances

inline std::string configuration_name(const EventStructure& es, EventSet x) {
  std::string s = "{";
  bool first = true;
  for (std::size_t e = 0; e < es.events.size(); ++e)
    if ((x >> e) & 1u) {
      if (!first) s += ",";
      s += es.events[e];
      first = false;
    }
  return s + "}";
}

/// States are the configurations; a multiset is enabled when it is a set of
/// fresh, individually enabled, pairwise compatible events.
inline Cts es_to_cts(const EventStructure& es) {
  const std::size_t n = es.events.size();
  const auto configs = configurations(es);
  auto below = std::make_shared<std::vector<EventSet>>(n, 0);
  auto clash = std::make_shared<std::vector<EventSet>>(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && es.leq(b, a)) (*below)[a] |= EventSet{1} << b;
      if (es.conflict(a, b)) (*clash)[a] |= EventSet{1} << b;
    }
  auto sets = std::make_shared<std::vector<EventSet>>(configs);
  std::map<EventSet, Index> index;
  for (Index k = 0; k < configs.size(); ++k) index.emplace(configs[k], k);

  Cts c;
  c.events = es.events;
  for (Index e = 0; e < n; ++e) {
    c.labels.push_back(es.events[e]);
    c.labeling.push_back(e + 1);
  }
  c.initial = index.at(0);
  for (EventSet x : configs) {
    c.states.push_back(configuration_name(es, x));
    std::vector<std::optional<Index>> row(n);
    for (std::size_t e = 0; e < n; ++e) {
      const EventSet bit = EventSet{1} << e;
      if (!(x & bit) && !((*below)[e] & ~x) && !((*clash)[e] & x)) row[e] = index.at(x | bit);
    }
    c.delta.push_back(std::move(row));
  }
  c.enabled = [below, clash, sets](Index state, const Multiset& m) {
    const EventSet x = (*sets)[state];
    EventSet chosen = 0;
    for (std::size_t e = 0; e < m.size(); ++e) {
      if (m[e] == 0) continue;
      const EventSet bit = EventSet{1} << e;
      if (m[e] > 1 || (x & bit) || ((*below)[e] & ~x) || ((*clash)[e] & (x | chosen))) return false;
      chosen |= bit;
    }
    return true;
  };
  return c;
}

inline std::string marking_name(const PetriNet& net, const Marking& m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p] == 0) continue;
    if (!first) s += ",";
    s += net.places[p];
    if (m[p] > 1) s += ":" + std::to_string(m[p]);
    first = false;
  }
  return s + "}";
}

/// States are the reachable markings (in breadth-first order); a multiset is
/// enabled when the marking covers the sum of its pre-sets.
inline Cts pn_to_cts(const PetriNet& net, std::size_t max_states) {
  const auto graph = reachable_markings(net, max_states);
  const std::size_t ne = net.events.size();
  Cts c;
  c.events = net.events;
  for (Index e = 0; e < ne; ++e) {
    c.labels.push_back(net.events[e]);
    c.labeling.push_back(e + 1);
  }
  c.initial = 0;
  for (const auto& m : graph.markings) {
    c.states.push_back(marking_name(net, m));
    c.delta.emplace_back(ne);
  }
  for (const auto& t : graph.edges) c.delta[t.source][t.event] = t.target;
  auto markings = std::make_shared<std::vector<Marking>>(graph.markings);
  auto pre = std::make_shared<std::vector<Marking>>(net.pre);
  c.enabled = [markings, pre](Index state, const Multiset& m) {
    const Marking& at = (*markings)[state];
    for (std::size_t p = 0; p < at.size(); ++p) {
      std::uint64_t need = 0;
      for (std::size_t e = 0; e < m.size(); ++e) need += std::uint64_t{m[e]} * (*pre)[e][p];
      if (need > at[p]) return false;
    }
    return true;
  };
  return c;
}

}  // namespace hdabridge
