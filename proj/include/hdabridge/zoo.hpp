#pragma once

// Small named models used by the tests, the law suites and the fixtures.

#include "hdabridge/hda.hpp"
#include "hdabridge/models.hpp"

namespace hdabridge::zoo {

/// Three events a, b, c on seven states with the squares a|c and b|c at x and
/// a|b at x3; its runs never order or exclude any two events.
inline Acr three_event_staircase() {
  Acr a;
  auto& t = a.ts;
  for (const char* s : {"x", "x1", "x2", "x3", "y", "y1", "y2"}) t.state(s);
  for (const char* e : {"a", "b", "c"}) t.event(e);
  t.initial = *t.find_state("x");
  t.add("x", "a", "x1");
  t.add("x", "b", "x2");
  t.add("x", "c", "x3");
  t.add("x1", "c", "y1");
  t.add("x2", "c", "y2");
  t.add("x3", "a", "y1");
  t.add("x3", "b", "y2");
  t.add("y1", "b", "y");
  t.add("y2", "a", "y");
  auto st = [&](const char* s) { return *t.find_state(s); };
  auto ev = [&](const char* e) { return *t.find_event(e); };
  a.add_independence(st("x"), ev("a"), ev("c"));
  a.add_independence(st("x"), ev("b"), ev("c"));
  a.add_independence(st("x3"), ev("a"), ev("b"));
  return a;
}

/// The full cube on three events, every square independent.
inline Acr three_event_cube() {
  Acr a;
  auto& t = a.ts;
  for (const char* s : {"x", "x1", "x2", "x3", "y1", "y2", "y3", "y"}) t.state(s);
  for (const char* e : {"a", "b", "c"}) t.event(e);
  t.initial = *t.find_state("x");
  t.add("x", "a", "x1");
  t.add("x", "b", "x2");
  t.add("x", "c", "x3");
  t.add("x1", "b", "y3");
  t.add("x1", "c", "y1");
  t.add("x2", "a", "y3");
  t.add("x2", "c", "y2");
  t.add("x3", "a", "y1");
  t.add("x3", "b", "y2");
  t.add("y1", "b", "y");
  t.add("y2", "a", "y");
  t.add("y3", "c", "y");
  for (const auto& tr : t.transitions)
    for (const auto& other : t.transitions)
      if (tr.source == other.source && tr.event != other.event) a.add_independence(tr.source, tr.event, other.event);
  return a;
}

/// n pairwise concurrent events named a, b, c, ...
inline EventStructure concurrent_events(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(std::string(1, static_cast<char>('a' + k)));
  return make_event_structure(std::move(names), {}, {});
}

/// x -e1-> y1 -e2-> z and x -e2-> y2 -e1-> z.
inline TransitionSystem diamond() {
  TransitionSystem t;
  for (const char* s : {"x", "y1", "y2", "z"}) t.state(s);
  t.event("e1");
  t.event("e2");
  t.add("x", "e1", "y1");
  t.add("x", "e2", "y2");
  t.add("y1", "e2", "z");
  t.add("y2", "e1", "z");
  return t;
}

inline Acr diamond_interleaved() { return Acr{diamond(), {}}; }

inline Acr diamond_square() {
  Acr a{diamond(), {}};
  a.add_independence(0, 0, 1);
  return a;
}

/// Two events sharing the lock place h, so they never fire together; f and g
/// are self-loops, a and i are isolated.
inline PetriNet mutex_net() {
  PetriNet n;
  for (const char* p : {"a", "b", "c", "d", "e", "f", "g", "h", "i"}) n.add_place(p);
  for (const char* p : {"a", "b", "c", "f", "g", "h"}) n.initial[*n.find_place(p)] = 1;
  const Index e1 = n.add_event("e1");
  const Index e2 = n.add_event("e2");
  auto arc = [&](Index e, const char* p, bool pre) { (pre ? n.pre : n.post)[e][*n.find_place(p)] = 1; };
  for (const char* p : {"b", "f", "h"}) arc(e1, p, true);
  for (const char* p : {"d", "f", "h"}) arc(e1, p, false);
  for (const char* p : {"c", "g", "h"}) arc(e2, p, true);
  for (const char* p : {"e", "g", "h"}) arc(e2, p, false);
  return n;
}

inline PetriNet mutex_net_without_lock() {
  const PetriNet full = mutex_net();
  PetriNet n;
  for (Index p = 0; p < full.places.size(); ++p)
    if (full.places[p] != "h") n.add_place(full.places[p], full.initial[p]);
  for (Index e = 0; e < full.events.size(); ++e) {
    const Index id = n.add_event(full.events[e]);
    for (Index p = 0, q = 0; p < full.places.size(); ++p) {
      if (full.places[p] == "h") continue;
      n.pre[id][q] = full.pre[e][p];
      n.post[id][q] = full.post[e][p];
      ++q;
    }
  }
  return n;
}

/// One place holding twice the pre-set of its only event.
inline PetriNet double_token_net() {
  PetriNet n;
  n.add_place("p", 2);
  const Index e = n.add_event("e");
  n.pre[e][0] = 1;
  return n;
}

/// One place, one token, one event consuming it.
inline PetriNet single_event_net() {
  PetriNet n;
  n.add_place("p", 1);
  const Index e = n.add_event("e");
  n.pre[e][0] = 1;
  return n;
}

/// A token cycling between two places.
inline PetriNet token_ring() {
  PetriNet n;
  n.add_place("p", 1);
  n.add_place("q", 0);
  const Index f = n.add_event("f");
  const Index g = n.add_event("g");
  n.pre[f][0] = 1;
  n.post[f][1] = 1;
  n.pre[g][1] = 1;
  n.post[g][0] = 1;
  return n;
}

/// a then b, with no square.
inline TransitionSystem sequence_ab() {
  TransitionSystem t;
  t.add("s0", "a", "s1");
  t.add("s1", "b", "s2");
  return t;
}

}  // namespace hdabridge::zoo
