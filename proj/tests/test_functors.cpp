#include <gtest/gtest.h>

#include "support.hpp"

using namespace hdabridge;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::invalid_model;
}

}  // namespace

TEST(TsToHda1, Examples) {
  TransitionSystem one;
  one.add("x", "a", "y");
  const Hda h = ts_to_hda1(one);
  EXPECT_EQ(h.size(0), 2u);
  EXPECT_EQ(h.size(1), 1u);
  EXPECT_EQ(h.symbol_name(h.label(CellId{1, 0})[0]), "a");
  const Hda d = ts_to_hda1(zoo::diamond());
  EXPECT_EQ(d.size(0), 4u);
  EXPECT_EQ(d.size(1), 4u);
  EXPECT_TRUE(validate_hda(d).ok());
}

TEST(TsToHda1, EdgeCountIdentityAndRoundTrip) {
  GeneratorConfig cfg;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = instance_rng(21, i);
    const auto t = gen::transition_system(rng, cfg);
    const Hda h = ts_to_hda1(t);
    EXPECT_EQ(h.size(1), t.transitions.size());
    EXPECT_TRUE(check_strong_labeling(h));
    EXPECT_EQ(hda1_to_ts(h), t) << i;
  }
}

TEST(Hda1ToTs, ParallelEdgesCollapse) {
  Hda h;
  const Symbol a = h.add_symbol("a");
  const auto x = h.add_vertex("x");
  const auto y = h.add_vertex("y");
  h.add_cell({Cell::of(0, x), Cell::of(0, y)}, {a});
  h.add_cell({Cell::of(0, x), Cell::of(0, y)}, {a});
  EXPECT_EQ(hda1_to_ts(h).transitions.size(), 1u);
  Hda point;
  point.add_vertex("p");
  const auto t = hda1_to_ts(point);
  EXPECT_EQ(t.states, (std::vector<std::string>{"p"}));
  EXPECT_TRUE(t.transitions.empty());
}

TEST(Hda1ToTs, IdleEdges) {
  TransitionSystem t = idle_completion(zoo::sequence_ab());
  const Hda h = ts_to_hda1(t, true);
  EXPECT_EQ(h.size(1), 2u);
  EXPECT_EQ(hda1_to_ts(idle_loops(h), true), t);
  EXPECT_EQ(hda1_to_ts(idle_loops(h)), zoo::sequence_ab());
  TransitionSystem bad;
  bad.add("x", "*", "y");
  EXPECT_EQ(code_of([&] { ts_to_hda1(bad, true); }), ErrorCode::invalid_model);
}

TEST(AcrToHda2, StaircaseSquares) {
  const Hda h = acr_to_hda2(zoo::three_event_staircase());
  EXPECT_EQ(h.size(0), 7u);
  EXPECT_EQ(h.size(1), 9u);
  EXPECT_EQ(h.size(2), 6u);
  EXPECT_EQ(symmetry_orbits(h.complex(), 2), 3u);
  EXPECT_TRUE(validate_hda(h).ok());
  EXPECT_TRUE(check_deterministic(h, 1));
  EXPECT_EQ(acr_to_hda2(zoo::diamond_interleaved()).size(2), 0u);
}

TEST(AcrToHda2, FacesAreLabelConsistent) {
  const Hda h = acr_to_hda2(zoo::diamond_square());
  for (std::uint32_t k = 0; k < h.size(2); ++k) {
    const auto w = h.label(CellId{2, k});
    for (Sign s : kSigns) {
      EXPECT_EQ(h.label(cell_face(h.complex(), Cell::of(2, k), 0, s)), (LabelWord{w[1]}));
      EXPECT_EQ(h.label(cell_face(h.complex(), Cell::of(2, k), 1, s)), (LabelWord{w[0]}));
    }
  }
}

TEST(AcrToHda2, RejectsMissingSquare) {
  Acr a = zoo::diamond_square();
  a.ts.transitions.erase({2, 0, 3});
  EXPECT_EQ(code_of([&] { acr_to_hda2(a); }), ErrorCode::square_incomplete);
}

TEST(Hda2ToAcr, RoundTripAndBaseVertex) {
  const Acr a = zoo::three_event_staircase();
  EXPECT_EQ(hda2_to_acr(acr_to_hda2(a)), a);
  const Acr back = hda2_to_acr(acr_to_hda2(zoo::diamond_square()));
  EXPECT_TRUE(back.independent(0, 0, 1));
  EXPECT_EQ(back.independence.size(), 2u);
}

TEST(Hda2ToAcr, MutatedClosingEdge) {
  Hda h = acr_to_hda2(zoo::diamond_square());
  // y2 -e1-> z relabeled e2: the square at x no longer closes.
  const auto ids = detail::edge_ids(zoo::diamond());
  const LabelWord e2{2};
  h.set_label({1, ids.at({2, 0, 3})}, e2);
  EXPECT_EQ(code_of([&] { hda2_to_acr(h); }), ErrorCode::square_incomplete);
}

TEST(Hda2ToAcr, NotOneDeterministic) {
  TransitionSystem t;
  t.add("x", "a", "y");
  t.add("x", "a", "z");
  EXPECT_EQ(code_of([&] { hda2_to_acr(ts_to_hda1(t)); }), ErrorCode::not_one_deterministic);
}

TEST(EsToHda, Examples) {
  const Hda h = es_to_hda(zoo::concurrent_events(3));
  EXPECT_EQ(h.size(0), 8u);
  EXPECT_EQ(h.size(1), 12u);
  EXPECT_EQ(h.size(2), 12u);
  EXPECT_EQ(h.size(3), 6u);
  EXPECT_EQ(es_to_hda(make_event_structure({"a", "b"}, {}, {{0, 1}})).size(2), 0u);
  EXPECT_EQ(es_to_hda(make_event_structure({}, {}, {})).size(0), 1u);
}

TEST(HdaToEs, Examples) {
  const auto three = zoo::concurrent_events(3);
  EXPECT_EQ(hda_to_es(es_to_hda(three)), three);
  const auto es = hda_to_es(acr_to_hda2(zoo::three_event_staircase()));
  EXPECT_EQ(es.events, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(es, three);
  const auto seq = hda_to_es(ts_to_hda1(zoo::sequence_ab()));
  EXPECT_TRUE(seq.leq(0, 1));
  EXPECT_FALSE(seq.leq(1, 0));
  EXPECT_FALSE(seq.conflict(0, 1));
}

TEST(HdaToEs, ConflictFromBranching) {
  TransitionSystem t;
  t.add("x", "a", "y");
  t.add("x", "b", "z");
  const auto es = hda_to_es(ts_to_hda1(t));
  EXPECT_TRUE(es.conflict(0, 1));
  EXPECT_TRUE(validate_es(es).ok());
}

TEST(HdaToEs, NotLinearAndCycles) {
  const Hda ee = pn_to_hda(zoo::double_token_net(), 10, 3);
  EXPECT_EQ(code_of([&] { hda_to_es(ee); }), ErrorCode::not_linear);
  TransitionSystem loop;
  loop.add("x", "a", "y");
  loop.add("y", "b", "x");
  loop.add("x", "b", "z");
  loop.add("z", "a", "x");
  const Hda cyc = ts_to_hda1(loop);
  // first occurrences decide causality, so cycles still give a partial order
  TransitionSystem two;
  two.add("x", "a", "y");
  two.add("y", "b", "w");
  two.add("x", "b", "z");
  two.add("z", "a", "w");
  EXPECT_NO_THROW(hda_to_es(cyc));
  EXPECT_NO_THROW(hda_to_es(ts_to_hda1(two)));
}

TEST(HdaToEs, ComonadOnRandomCorpus) {
  GeneratorConfig cfg;
  cfg.max_es_events = 6;
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = instance_rng(13, i);
    const auto es = gen::event_structure(rng, cfg);
    EXPECT_EQ(hda_to_es(es_to_hda(es)), es) << i;
  }
}

TEST(PnToHda, MutexNet) {
  const Hda h = pn_to_hda(zoo::mutex_net(), 100, 3);
  EXPECT_EQ(h.size(0), 4u);
  EXPECT_EQ(h.size(1), 4u);
  EXPECT_EQ(h.size(2), 0u);
  EXPECT_TRUE(iso_check(h, acr_to_hda2(zoo::diamond_interleaved())).has_value());
  const Hda free = pn_to_hda(zoo::mutex_net_without_lock(), 100, 3);
  EXPECT_EQ(free.size(2), 2u);
  EXPECT_EQ(symmetry_orbits(free.complex(), 2), 1u);
  EXPECT_TRUE(iso_check(free, acr_to_hda2(zoo::diamond_square())).has_value());
}

TEST(PnToHda, DoubleTokenGivesSelfConcurrency) {
  const Hda h = pn_to_hda(zoo::double_token_net(), 10, 3);
  ASSERT_GE(h.size(2), 1u);
  const Symbol e = h.symbol("e");
  EXPECT_EQ(LabelWord(h.label(CellId{2, 0}).begin(), h.label(CellId{2, 0}).end()), (LabelWord{e, e}));
  EXPECT_TRUE(validate_hda(h).ok());
}

TEST(FunctorsOnMorphisms, IdentitiesToIdentities) {
  const auto t = zoo::diamond();
  EXPECT_EQ(fmap::ts_to_hda1(identity_morphism(t), t, t), identity_morphism(ts_to_hda1(t)));
  const auto a = zoo::three_event_staircase();
  EXPECT_EQ(fmap::acr_to_hda2(identity_morphism(a.ts), a, a), identity_morphism(acr_to_hda2(a)));
  const auto es = zoo::concurrent_events(3);
  EXPECT_EQ(fmap::es_to_hda(identity_morphism(es), es, es), identity_morphism(es_to_hda(es)));
  const auto n = zoo::mutex_net();
  EXPECT_EQ(fmap::pn_to_hda(identity_morphism(n), n, n, 100, 3), identity_morphism(pn_to_hda(n, 100, 3)));
  const Hda h = acr_to_hda2(a);
  EXPECT_EQ(fmap::hda2_to_acr(identity_morphism(h)), identity_morphism(a.ts));
  EXPECT_EQ(fmap::hda_to_es(identity_morphism(es_to_hda(es))), identity_morphism(es));
}

TEST(FunctorsOnMorphisms, DiamondCollapse) {
  // x, y1, y2, z onto u -a-> v with e1 -> a and e2 idle
  const auto src = zoo::diamond();
  TransitionSystem dst;
  dst.add("u", "a", "v");
  const TsMorphism m{{0, 1, 0, 1}, {Index{0}, std::nullopt}};
  ASSERT_TRUE(validate_morphism(m, src, dst).ok());
  const HdaMorphism h = fmap::ts_to_hda1(m, src, dst);
  const Hda a = ts_to_hda1(src);
  const Hda b = ts_to_hda1(dst);
  EXPECT_TRUE(validate_morphism(h, a, b).ok());
  const VertexEnds ends(a.complex());
  for (std::uint32_t k = 0; k < a.size(1); ++k) {
    const Cell img = h.apply(CellId{1, k});
    if (a.label(CellId{1, k})[0] == 1)
      EXPECT_EQ(img, Cell::of(1, 0));
    else
      EXPECT_EQ(img, degeneracy(Cell::of(0, m.states[ends.source(CellId{1, k})]), 0));
  }
  EXPECT_EQ(fmap::hda1_to_ts(h), m);
}

TEST(FunctorsOnMorphisms, PnUndefinedEventGoesToDegeneracy) {
  // mutex without lock onto the single-event net: e1 -> e, e2 forgotten
  const auto src = zoo::mutex_net_without_lock();
  const auto dst = zoo::single_event_net();
  const PnMorphism g{{*src.find_place("b")}, {Index{0}, std::nullopt}};
  ASSERT_TRUE(validate_morphism(g, src, dst).ok()) << validate_morphism(g, src, dst);
  const HdaMorphism h = fmap::pn_to_hda(g, src, dst, 100, 3);
  const Hda a = pn_to_hda(src, 100, 3);
  const Hda b = pn_to_hda(dst, 100, 3);
  EXPECT_TRUE(validate_morphism(h, a, b).ok());
  const VertexEnds ends(a.complex());
  for (std::uint32_t k = 0; k < a.size(1); ++k)
    if (a.label(CellId{1, k})[0] == a.symbol("e2")) {
      const Cell img = h.apply(CellId{1, k});
      EXPECT_EQ(img, degeneracy(h.apply(CellId{0, ends.source(CellId{1, k})}), 0));
    }
}

TEST(FunctorsOnMorphisms, CompositionOnTs) {
  const auto a = zoo::diamond();
  TransitionSystem b;
  b.add("u", "a", "v");
  TransitionSystem c;
  c.state("w");
  const TsMorphism f{{0, 1, 0, 1}, {Index{0}, std::nullopt}};
  const TsMorphism g{{0, 0}, {std::nullopt}};
  EXPECT_EQ(fmap::ts_to_hda1(compose(f, g), a, c), compose(fmap::ts_to_hda1(f, a, b), fmap::ts_to_hda1(g, b, c)));
}
