#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace hdabridge;

namespace {

// Every candidate (place map, partial event map), filtered by validation.
std::optional<std::set<PnMorphism>> brute_force_pn_morphisms(const PetriNet& src, const PetriNet& dst) {
  std::set<PnMorphism> out;
  const std::size_t np = dst.places.size(), ne = src.events.size();
  if (src.places.empty() && np > 0) return out;
  std::size_t place_maps = 1, event_maps = 1;
  for (std::size_t k = 0; k < np; ++k) place_maps *= src.places.size();
  for (std::size_t k = 0; k < ne; ++k) event_maps *= dst.events.size() + 1;
  if (place_maps * event_maps > 200'000) return std::nullopt;
  for (std::size_t pm = 0; pm < place_maps; ++pm)
    for (std::size_t em = 0; em < event_maps; ++em) {
      PnMorphism m;
      for (std::size_t k = 0, x = pm; k < np; ++k, x /= src.places.size()) m.places.push_back(x % src.places.size());
      for (std::size_t k = 0, x = em; k < ne; ++k, x /= dst.events.size() + 1) {
        const std::size_t d = x % (dst.events.size() + 1);
        m.events.push_back(d == 0 ? std::nullopt : std::optional<Index>(d - 1));
      }
      if (validate_morphism(m, src, dst).ok()) out.insert(m);
    }
  return out;
}

GeneratorConfig seeded(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Laws, ComonadRoundTrips) {
  for (auto kind : {ComonadKind::sts, ComonadKind::acr, ComonadKind::es}) {
    const auto report = check_comonad_identity(kind, seeded(0), 100);
    EXPECT_TRUE(report.ok()) << report.to_text();
    EXPECT_EQ(report.passed, 100u) << report.law;
  }
}

TEST(Laws, OtherSeedsAlsoPass) {
  for (std::uint64_t seed : {1u, 42u}) {
    EXPECT_TRUE(check_comonad_identity(ComonadKind::es, seeded(seed), 30).ok());
    EXPECT_TRUE(check_kleisli_lift(seeded(seed), 30).ok());
  }
}

TEST(Laws, InstancesReplayAlone) {
  const GeneratorConfig cfg;
  auto first = instance_rng(7, 13);
  auto again = instance_rng(7, 13);
  EXPECT_EQ(gen::event_structure(first, cfg), gen::event_structure(again, cfg));
  auto other = instance_rng(7, 14);
  auto base = instance_rng(7, 13);
  EXPECT_NE(gen::transition_system(base, cfg), gen::transition_system(other, cfg));
}

TEST(Laws, GeneratedModelsAreValid) {
  const GeneratorConfig cfg;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = instance_rng(2, i);
    EXPECT_TRUE(validate_ts(gen::transition_system(rng, cfg)).ok());
    EXPECT_TRUE(validate_acr(gen::acr(rng, cfg)).ok());
    EXPECT_TRUE(validate_es(gen::event_structure(rng, cfg)).ok());
  }
}

TEST(Laws, ZooModelsRoundTrip) {
  const Acr stair = zoo::three_event_staircase();
  EXPECT_EQ(canonical(hda2_to_acr(acr_to_hda2(stair))), canonical(stair));
  const auto single = make_event_structure({"e"}, {}, {});
  EXPECT_EQ(canonical(hda_to_es(es_to_hda(single))), canonical(single));
}

TEST(Laws, KleisliLift) {
  const auto report = check_kleisli_lift(seeded(0), 100);
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_EQ(report.passed, 100u);
  EXPECT_TRUE(kleisli_lift_holds(TransitionSystem{{"x"}, 0, {}, {}}));
  EXPECT_TRUE(kleisli_lift_holds(zoo::diamond()));
  TransitionSystem starred;
  starred.add("x", "*", "y");
  try {
    kleisli_lift_holds(starred);
    ADD_FAILURE() << "expected StarClash";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::star_clash);
  }
}

TEST(Laws, PnMorphismEnumerationMatchesBruteForce) {
  const auto fx = adjunction_fixtures();
  std::size_t compared = 0;
  for (const auto& [sn, src] : fx.nets)
    for (const auto& [dn, dst] : fx.nets) {
      const auto expected = brute_force_pn_morphisms(src, dst);
      if (!expected) continue;
      ++compared;
      const auto found = enumerate_pn_morphisms(src, dst);
      const std::set<PnMorphism> as_set(found.begin(), found.end());
      EXPECT_EQ(as_set.size(), found.size()) << sn << " -> " << dn;
      EXPECT_EQ(as_set, *expected) << sn << " -> " << dn;
    }
  EXPECT_GE(compared, fx.nets.size() * fx.nets.size() / 2);
}

TEST(Laws, AdjunctionPnHda) {
  const auto report = check_adjunction_pn_hda(adjunction_fixtures(), AdjunctionConfig{});
  EXPECT_TRUE(report.ok()) << report.to_text();
  EXPECT_GT(report.passed, 0u);
}

TEST(Laws, ReportFormats) {
  LawReport r;
  r.law = "x";
  r.tried = 2;
  r.passed = 1;
  r.counterexample = json{{"instance", 1}};
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.to_json()["ok"], false);
  EXPECT_NE(r.to_text().find("FAIL"), std::string::npos);
}
