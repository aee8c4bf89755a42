#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace hdabridge;

namespace {

std::vector<Index> shuffled(std::size_t n, std::mt19937_64& rng) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// State k moves to position p[k] and is renamed.
TransitionSystem permuted(const TransitionSystem& t, std::mt19937_64& rng) {
  const auto p = shuffled(t.states.size(), rng);
  TransitionSystem out;
  out.states.resize(t.states.size());
  for (Index k = 0; k < p.size(); ++k) out.states[p[k]] = "r" + std::to_string(k);
  out.events = t.events;
  out.initial = p.empty() ? 0 : p[t.initial];
  for (const auto& tr : t.transitions) out.transitions.insert({p[tr.source], tr.event, p[tr.target]});
  return out;
}

EventStructure permuted(const EventStructure& es, const std::vector<Index>& p) {
  const std::size_t n = es.events.size();
  EventStructure out{std::vector<std::string>(n), Relation(n), Relation(n)};
  for (Index a = 0; a < n; ++a) {
    out.events[p[a]] = "f" + std::to_string(a);
    for (Index b = 0; b < n; ++b) {
      out.leq.set(p[a], p[b], es.leq(a, b));
      out.conflict.set(p[a], p[b], es.conflict(a, b));
    }
  }
  return out;
}

Hda two_disjoint_edges() {
  Hda h;
  const Symbol a = h.add_symbol("a");
  const Symbol b = h.add_symbol("b");
  const auto x = h.add_vertex("x");
  const auto y = h.add_vertex("y");
  const auto u = h.add_vertex("u");
  const auto v = h.add_vertex("v");
  h.add_cell({Cell::of(0, x), Cell::of(0, y)}, {a});
  h.add_cell({Cell::of(0, u), Cell::of(0, v)}, {b});
  h.add_cell({Cell::of(0, x), Cell::of(0, u)}, {a});
  h.add_cell({Cell::of(0, y), Cell::of(0, v)}, {b});
  return h;
}

}  // namespace

TEST(Iso, RenamedTransitionSystems) {
  std::mt19937_64 rng(5);
  GeneratorConfig cfg;
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto gen_rng = instance_rng(3, i);
    const auto t = gen::transition_system(gen_rng, cfg);
    const auto r = permuted(t, rng);
    EXPECT_TRUE(iso_check(t, r).has_value()) << i;
    EXPECT_EQ(canonical(t).transitions.size(), canonical(r).transitions.size());
  }
}

TEST(Iso, RenamedAcrAndHda) {
  const Acr a = zoo::three_event_staircase();
  std::mt19937_64 rng(9);
  const TransitionSystem moved = permuted(a.ts, rng);
  Acr b{moved, {}};
  std::map<std::string, Index> where;
  for (Index k = 0; k < a.ts.states.size(); ++k)
    for (Index m = 0; m < moved.states.size(); ++m)
      if (moved.states[m] == "r" + std::to_string(k)) where[a.ts.states[k]] = m;
  for (const auto& [s, x, y] : a.independence) b.independence.insert({where.at(a.ts.states[s]), x, y});
  ASSERT_TRUE(validate_acr(b).ok());
  EXPECT_TRUE(iso_check(a, b).has_value());
  EXPECT_TRUE(iso_check(acr_to_hda2(a), acr_to_hda2(b)).has_value());
  EXPECT_FALSE(iso_check(a, Acr{a.ts, {}}).has_value());
}

TEST(Iso, SquareIsNotTwoDisjointEdges) {
  const Hda square = acr_to_hda2(zoo::diamond_square());
  const Hda ring = two_disjoint_edges();
  ASSERT_TRUE(validate_hda(ring).ok());
  EXPECT_FALSE(iso_check(square, ring).has_value());
  EXPECT_FALSE(iso_check(truncate(square, 1), ring).has_value());
  EXPECT_TRUE(iso_check(truncate(square, 1), acr_to_hda2(zoo::diamond_interleaved())).has_value());
}

TEST(Iso, LabelsMatterByName) {
  TransitionSystem t;
  t.add("x", "a", "y");
  TransitionSystem u;
  u.add("x", "b", "y");
  EXPECT_FALSE(iso_check(t, u).has_value());
  EXPECT_TRUE(iso_check(t, t).has_value());
}

TEST(Iso, MutexNetIsInterleavedDiamond) {
  const Hda h = pn_to_hda(zoo::mutex_net(), 100, 3);
  EXPECT_TRUE(iso_check(h, ts_to_hda1(zoo::diamond())).has_value());
  EXPECT_TRUE(iso_check(h, acr_to_hda2(zoo::diamond_interleaved())).has_value());
  EXPECT_FALSE(iso_check(h, acr_to_hda2(zoo::diamond_square())).has_value());
}

TEST(Iso, IsoIsAMorphismWithInverse) {
  const Hda a = es_to_hda(zoo::concurrent_events(3));
  const Hda b = canonical(a);
  const auto f = iso_check(a, b);
  const auto g = iso_check(b, a);
  ASSERT_TRUE(f && g);
  EXPECT_TRUE(validate_morphism(*f, a, b).ok());
  EXPECT_TRUE(validate_morphism(*g, b, a).ok());
}

TEST(Iso, EventStructuresUpToPermutation) {
  std::mt19937_64 rng(11);
  GeneratorConfig cfg;
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto gen_rng = instance_rng(4, i);
    const auto es = gen::event_structure(gen_rng, cfg);
    const auto p = shuffled(es.events.size(), rng);
    const auto target = permuted(es, p);
    const auto found = iso_check(es, target);
    ASSERT_TRUE(found.has_value()) << i;
    const auto& f = *found;
    for (Index a = 0; a < es.events.size(); ++a)
      for (Index b = 0; b < es.events.size(); ++b) {
        EXPECT_EQ(target.leq(f[a], f[b]), es.leq(a, b));
        EXPECT_EQ(target.conflict(f[a], f[b]), es.conflict(a, b));
      }
  }
  const auto chain = make_event_structure({"a", "b"}, {{0, 1}}, {});
  const auto free = make_event_structure({"a", "b"}, {}, {});
  EXPECT_FALSE(iso_check(chain, free).has_value());
}

TEST(Canonical, IndependentOfInputOrder) {
  const TransitionSystem t = zoo::diamond();
  TransitionSystem shuffled_events = t;
  std::reverse(shuffled_events.events.begin(), shuffled_events.events.end());
  shuffled_events.transitions.clear();
  for (const auto& tr : t.transitions)
    shuffled_events.transitions.insert({tr.source, static_cast<Index>(t.events.size() - 1 - tr.event), tr.target});
  EXPECT_EQ(canonical(t), canonical(shuffled_events));
  const auto es = make_event_structure({"c", "a", "b"}, {{1, 2}}, {{0, 1}});
  const auto es2 = make_event_structure({"b", "c", "a"}, {{2, 0}}, {{1, 2}});
  EXPECT_EQ(canonical(es), canonical(es2));
  const Hda h = acr_to_hda2(zoo::three_event_cube());
  EXPECT_EQ(to_json(canonical(h)), to_json(canonical(canonical(h))));
}
