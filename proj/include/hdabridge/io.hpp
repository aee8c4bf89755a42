#pragma once

// JSON documents for every model kind. Each document carries "kind" and
// "format_version"; models refer to states, events, places and cells by name.

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hdabridge/error.hpp"
#include "hdabridge/hda.hpp"
#include "hdabridge/models.hpp"

namespace hdabridge {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

using ModelDocument = std::variant<TransitionSystem, LabeledTransitionSystem, Acr, EventStructure, PetriNet, Hda>;

inline std::string kind_of(const ModelDocument& doc) {
  static const char* const kinds[] = {"ts", "lts", "acr", "es", "pnet", "hda"};
  return kinds[doc.index()];
}

namespace detail {

inline json header(const char* kind) { return json{{"kind", kind}, {"format_version", kFormatVersion}}; }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>)
    if (!j.is_number_unsigned()) fail(ErrorCode::parse_error, std::string(what) + ": expected a non-negative integer");
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string(what) + ": " + e.what());
  }
}

inline std::vector<std::string> names(const json& j, const char* what) {
  return as<std::vector<std::string>>(j, what);
}

inline Index lookup(const std::vector<std::string>& names, const std::string& n, const char* what) {
  if (auto k = find_name(names, n)) return *k;
  fail(ErrorCode::parse_error, std::string("unknown ") + what + " '" + n + "'");
}

inline std::vector<std::string> triple(const json& j) {
  auto t = as<std::vector<std::string>>(j, "triple");
  if (t.size() != 3) fail(ErrorCode::parse_error, "expected a [source, event, target] triple");
  return t;
}

inline std::pair<std::string, std::string> pair_of(const json& j) {
  auto t = as<std::vector<std::string>>(j, "pair");
  if (t.size() != 2) fail(ErrorCode::parse_error, "expected a pair");
  return {t[0], t[1]};
}

inline void ts_body(const TransitionSystem& t, json& j) {
  j["states"] = t.states;
  j["initial"] = t.states.empty() ? std::string() : t.states.at(t.initial);
  j["events"] = t.events;
  json tr = json::array();
  for (const auto& x : t.transitions) tr.push_back({t.states[x.source], t.events[x.event], t.states[x.target]});
  j["transitions"] = std::move(tr);
}

inline TransitionSystem parse_ts_body(const json& j) {
  TransitionSystem t;
  t.states = names(field(j, "states"), "states");
  t.events = names(field(j, "events"), "events");
  t.initial = lookup(t.states, as<std::string>(field(j, "initial"), "initial"), "state");
  for (const auto& x : field(j, "transitions")) {
    const auto v = triple(x);
    t.transitions.insert({lookup(t.states, v[0], "state"), lookup(t.events, v[1], "event"),
                          lookup(t.states, v[2], "state")});
  }
  return t;
}

inline json marking_json(const std::vector<std::string>& places, const Marking& m) {
  json out = json::object();
  for (std::size_t p = 0; p < m.size(); ++p)
    if (m[p] != 0) out[places[p]] = m[p];
  return out;
}

inline Marking parse_marking(const json& j, const std::vector<std::string>& places) {
  Marking m(places.size(), 0);
  if (!j.is_object()) fail(ErrorCode::parse_error, "a marking is an object from place names to counts");
  for (const auto& [k, v] : j.items()) m[lookup(places, k, "place")] = as<std::uint32_t>(v, "token count");
  return m;
}

inline json cell_ref(const Hda& h, const Cell& x) {
  const std::string base = h.name(x.base);
  if (!x.degenerate()) return base;
  return json{{"base", base}, {"degen", x.degeneracy_positions()}};
}

}  // namespace detail

inline json to_json(const TransitionSystem& t) {
  json j = detail::header("ts");
  detail::ts_body(t, j);
  return j;
}

inline json to_json(const LabeledTransitionSystem& l) {
  json j = detail::header("lts");
  detail::ts_body(l.ts, j);
  j["labels"] = l.labels;
  json lab = json::object();
  for (std::size_t e = 0; e < l.ts.events.size() && e < l.labeling.size(); ++e)
    lab[l.ts.events[e]] = l.labels.at(l.labeling[e]);
  j["labeling"] = std::move(lab);
  return j;
}

/// Independence is listed once per unordered pair; parsing restores symmetry.
inline json to_json(const Acr& a) {
  json j = detail::header("acr");
  detail::ts_body(a.ts, j);
  json ind = json::array();
  for (const auto& [s, x, y] : a.independence)
    if (x < y || !a.independent(s, y, x)) ind.push_back({a.ts.states[s], a.ts.events[x], a.ts.events[y]});
  j["independence"] = std::move(ind);
  return j;
}

/// "order" lists the strict pairs e < e', "conflict" each unordered pair once.
inline json to_json(const EventStructure& es) {
  json j = detail::header("es");
  j["events"] = es.events;
  json order = json::array(), conflict = json::array();
  for (std::size_t a = 0; a < es.events.size(); ++a)
    for (std::size_t b = 0; b < es.events.size(); ++b) {
      if (a != b && es.leq(a, b)) order.push_back({es.events[a], es.events[b]});
      if (a < b && es.conflict(a, b)) conflict.push_back({es.events[a], es.events[b]});
    }
  j["order"] = std::move(order);
  j["conflict"] = std::move(conflict);
  return j;
}

inline json to_json(const PetriNet& n) {
  json j = detail::header("pnet");
  j["places"] = n.places;
  j["initial"] = detail::marking_json(n.places, n.initial);
  j["events"] = n.events;
  json pre = json::object(), post = json::object();
  for (std::size_t e = 0; e < n.events.size(); ++e) {
    pre[n.events[e]] = detail::marking_json(n.places, n.pre[e]);
    post[n.events[e]] = detail::marking_json(n.places, n.post[e]);
  }
  j["pre"] = std::move(pre);
  j["post"] = std::move(post);
  return j;
}

/// Cells are named per dimension; faces map "n,i,sign" to {cell: face}, a
/// degenerate face being {"base": name, "degen": [positions]}.
inline json to_json(const Hda& h) {
  json j = detail::header("hda");
  const auto& c = h.complex();
  j["alphabet"] = std::vector<std::string>(h.alphabet().begin() + 1, h.alphabet().end());
  j["symmetric"] = c.symmetric();
  json dims = json::array(), cells = json::object(), faces = json::object(), sym = json::object(),
       labels = json::object();
  for (std::uint32_t n = 0; n < c.levels(); ++n) {
    dims.push_back(n);
    json level = json::array();
    for (std::uint32_t k = 0; k < c.size(n); ++k) level.push_back(h.name({n, k}));
    cells[std::to_string(n)] = std::move(level);
    if (n == 0) continue;
    json lab = json::object();
    for (std::uint32_t k = 0; k < c.size(n); ++k) {
      json w = json::array();
      for (Symbol s : h.label(CellId{n, k})) w.push_back(h.symbol_name(s));
      lab[h.name({n, k})] = std::move(w);
    }
    labels[std::to_string(n)] = std::move(lab);
    for (std::uint32_t i = 0; i < n; ++i)
      for (Sign s : kSigns) {
        json map = json::object();
        for (std::uint32_t k = 0; k < c.size(n); ++k) map[h.name({n, k})] = detail::cell_ref(h, c.face({n, k}, i, s));
        faces[std::to_string(n) + "," + std::to_string(i) + "," + sign_char(s)] = std::move(map);
      }
    if (c.symmetric())
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        json map = json::object();
        for (std::uint32_t k = 0; k < c.size(n); ++k) {
          const auto t = c.transposition({n, k}, i);
          if (t != kNoCell) map[h.name({n, k})] = h.name({n, t});
        }
        sym[std::to_string(n) + "," + std::to_string(i)] = std::move(map);
      }
  }
  j["dims"] = std::move(dims);
  j["cells"] = std::move(cells);
  j["faces"] = std::move(faces);
  j["sym"] = std::move(sym);
  j["labels"] = std::move(labels);
  j["initial"] = c.size(0) ? h.name({0, h.initial()}) : std::string();
  return j;
}

inline json to_json(const ModelDocument& doc) {
  return std::visit([](const auto& m) { return to_json(m); }, doc);
}

namespace detail {

inline Hda parse_hda(const json& j) {
  Hda h;
  for (const auto& s : names(field(j, "alphabet"), "alphabet")) {
    if (s == "*") fail(ErrorCode::parse_error, "the alphabet lists symbols other than '*'");
    if (h.find_symbol(s)) fail(ErrorCode::parse_error, "duplicate symbol '" + s + "'");
    h.add_symbol(s);
  }
  const bool symmetric = j.contains("symmetric") ? as<bool>(j.at("symmetric"), "symmetric") : true;
  if (symmetric) h.complex().make_symmetric();
  const json& cells = field(j, "cells");
  std::vector<std::vector<std::string>> level_names;
  for (std::uint32_t n = 0; cells.contains(std::to_string(n)); ++n)
    level_names.push_back(names(cells.at(std::to_string(n)), "cells"));
  if (level_names.empty()) fail(ErrorCode::parse_error, "an HDA needs at least one 0-cell");
  std::vector<std::map<std::string, std::uint32_t>> index(level_names.size());
  for (std::uint32_t n = 0; n < level_names.size(); ++n)
    for (std::uint32_t k = 0; k < level_names[n].size(); ++k)
      if (!index[n].emplace(level_names[n][k], k).second)
        fail(ErrorCode::parse_error, "duplicate " + std::to_string(n) + "-cell '" + level_names[n][k] + "'");
  auto explicit_name = [](std::uint32_t n, std::uint32_t k, const std::string& s) {
    return s == Hda::default_name(CellId{n, k}) ? std::string() : s;
  };
  h.ensure_levels(static_cast<std::uint32_t>(level_names.size()));
  for (std::uint32_t k = 0; k < level_names[0].size(); ++k) h.add_vertex(explicit_name(0, k, level_names[0][k]));
  const json empty = json::object();
  const json& faces = j.contains("faces") ? j.at("faces") : empty;
  const json& labels = j.contains("labels") ? j.at("labels") : empty;
  auto resolve = [&](const json& ref, std::uint32_t dim) -> Cell {
    if (ref.is_string()) {
      if (dim >= index.size()) fail(ErrorCode::parse_error, "face dimension out of range");
      auto it = index[dim].find(ref.get<std::string>());
      if (it == index[dim].end()) fail(ErrorCode::parse_error, "unknown face '" + ref.get<std::string>() + "'");
      return Cell::of(dim, it->second);
    }
    const auto degen = as<std::vector<std::uint32_t>>(field(ref, "degen"), "degen");
    std::uint32_t mask = 0;
    for (auto p : degen) {
      if (p >= dim || (mask >> p) & 1u) fail(ErrorCode::parse_error, "bad degeneracy positions");
      mask |= 1u << p;
    }
    const std::uint32_t base_dim = dim - static_cast<std::uint32_t>(degen.size());
    auto it = index[base_dim].find(as<std::string>(field(ref, "base"), "base"));
    if (it == index[base_dim].end()) fail(ErrorCode::parse_error, "unknown degenerate face base");
    return Cell{{base_dim, it->second}, mask};
  };
  for (std::uint32_t n = 1; n < level_names.size(); ++n) {
    const json& lab = field(labels, std::to_string(n).c_str());
    std::vector<std::vector<const json*>> refs(2 * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (Sign s : kSigns) {
        const json& map = field(faces, (std::to_string(n) + "," + std::to_string(i) + "," + sign_char(s)).c_str());
        for (const auto& name : level_names[n]) refs[2 * i + static_cast<unsigned>(s)].push_back(&field(map, name.c_str()));
      }
    for (std::uint32_t k = 0; k < level_names[n].size(); ++k) {
      std::vector<Cell> fs;
      for (std::uint32_t slot = 0; slot < 2 * n; ++slot) fs.push_back(resolve(*refs[slot][k], n - 1));
      LabelWord w;
      for (const auto& s : names(field(lab, level_names[n][k].c_str()), "label")) {
        auto sym = h.find_symbol(s);
        if (!sym) fail(ErrorCode::parse_error, "unknown label symbol '" + s + "'");
        w.push_back(*sym);
      }
      if (w.size() != n) fail(ErrorCode::parse_error, "label length differs from the cell dimension");
      h.add_cell(std::move(fs), std::move(w), explicit_name(n, k, level_names[n][k]));
    }
  }
  if (symmetric && j.contains("sym")) {
    for (std::uint32_t n = 2; n < level_names.size(); ++n)
      for (std::uint32_t i = 0; i + 1 < n; ++i) {
        const auto key = std::to_string(n) + "," + std::to_string(i);
        if (!j.at("sym").contains(key)) continue;
        for (const auto& [from, to] : j.at("sym").at(key).items()) {
          auto a = index[n].find(from);
          auto b = index[n].find(as<std::string>(to, "sym"));
          if (a == index[n].end() || b == index[n].end()) fail(ErrorCode::parse_error, "unknown cell in sym");
          h.complex().set_transposition({n, a->second}, i, b->second);
        }
      }
  }
  h.set_initial(lookup(level_names[0], as<std::string>(field(j, "initial"), "initial"), "0-cell"));
  return h;
}

}  // namespace detail

inline ModelDocument parse_document(const json& j) {
  using namespace detail;
  const auto kind = as<std::string>(field(j, "kind"), "kind");
  if (j.contains("format_version") && as<int>(j.at("format_version"), "format_version") != kFormatVersion)
    fail(ErrorCode::parse_error, "unsupported format_version");
  if (kind == "ts") return parse_ts_body(j);
  if (kind == "lts") {
    LabeledTransitionSystem l;
    l.ts = parse_ts_body(j);
    l.labels = names(field(j, "labels"), "labels");
    const json& lab = field(j, "labeling");
    for (const auto& e : l.ts.events)
      l.labeling.push_back(lookup(l.labels, as<std::string>(field(lab, e.c_str()), "labeling"), "label"));
    return l;
  }
  if (kind == "acr") {
    Acr a;
    a.ts = parse_ts_body(j);
    for (const auto& x : field(j, "independence")) {
      const auto v = triple(x);
      a.add_independence(lookup(a.ts.states, v[0], "state"), lookup(a.ts.events, v[1], "event"),
                         lookup(a.ts.events, v[2], "event"));
    }
    return a;
  }
  if (kind == "es") {
    const auto events = names(field(j, "events"), "events");
    const std::size_t n = events.size();
    EventStructure es{events, Relation(n), Relation(n)};
    for (std::size_t e = 0; e < n; ++e) es.leq.set(e, e);
    for (const auto& x : field(j, "order")) {
      const auto [a, b] = pair_of(x);
      es.leq.set(lookup(events, a, "event"), lookup(events, b, "event"));
    }
    for (const auto& x : field(j, "conflict")) {
      const auto [a, b] = pair_of(x);
      es.conflict.set(lookup(events, a, "event"), lookup(events, b, "event"));
      es.conflict.set(lookup(events, b, "event"), lookup(events, a, "event"));
    }
    return es;
  }
  if (kind == "pnet") {
    PetriNet net;
    for (const auto& p : names(field(j, "places"), "places")) net.add_place(p);
    for (const auto& e : names(field(j, "events"), "events")) net.add_event(e);
    net.initial = parse_marking(field(j, "initial"), net.places);
    const json empty = json::object();
    for (std::size_t e = 0; e < net.events.size(); ++e) {
      const char* name = net.events[e].c_str();
      const json& pre = field(j, "pre");
      const json& post = field(j, "post");
      net.pre[e] = parse_marking(pre.contains(name) ? pre.at(name) : empty, net.places);
      net.post[e] = parse_marking(post.contains(name) ? post.at(name) : empty, net.places);
    }
    return net;
  }
  if (kind == "hda") return parse_hda(j);
  fail(ErrorCode::unknown_kind, "unknown model kind '" + kind + "'");
}

inline ModelDocument parse_document(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, e.what());
  }
  return parse_document(j);
}

inline ModelDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, e.what());
  }
  return parse_document(j);
}

inline ValidationReport validate(const ModelDocument& doc) {
  struct Visitor {
    ValidationReport operator()(const TransitionSystem& t) const { return validate_ts(t); }
    ValidationReport operator()(const LabeledTransitionSystem& l) const { return validate_lts(l); }
    ValidationReport operator()(const Acr& a) const { return validate_acr(a); }
    ValidationReport operator()(const EventStructure& es) const { return validate_es(es); }
    ValidationReport operator()(const PetriNet& n) const { return validate_pn(n); }
    ValidationReport operator()(const Hda& h) const { return validate_hda(h); }
  };
  return std::visit(Visitor{}, doc);
}

}  // namespace hdabridge
