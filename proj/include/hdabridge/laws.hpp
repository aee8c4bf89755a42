#pragma once

// Seeded random model generators and executable checks of the comonad
// identities, the Kleisli lift and the Petri net / HDA adjunction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdabridge/functors.hpp"
#include "hdabridge/io.hpp"
#include "hdabridge/iso.hpp"
#include "hdabridge/zoo.hpp"

namespace hdabridge {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::uint32_t max_states = 8;
  std::uint32_t max_events = 4;
  std::uint32_t max_es_events = 8;
  double density = 0.3;
};

struct LawReport {
  std::string law;
  std::size_t tried = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::optional<json> counterexample;

  bool ok() const { return !counterexample.has_value(); }

  json to_json() const {
    json j{{"law", law}, {"tried", tried}, {"passed", passed}, {"skipped", skipped}, {"ok", ok()}};
    j["counterexample"] = counterexample ? *counterexample : json(nullptr);
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << law << ": " << (ok() ? "pass" : "FAIL") << " (" << passed << "/" << tried << " passed, " << skipped
       << " skipped)\n";
    if (counterexample) os << "  counterexample: " << counterexample->dump() << "\n";
    return os.str();
  }
};

/// Every instance draws from its own engine so it can be replayed alone.
inline std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t instance) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(instance), static_cast<std::uint32_t>(instance >> 32)};
  return std::mt19937_64(seq);
}

namespace gen {

inline std::uint32_t uniform(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

inline bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Possibly nondeterministic, with self-loops and parallel transitions.
inline TransitionSystem transition_system(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  TransitionSystem t;
  const auto ns = uniform(rng, 1, std::max<std::uint32_t>(cfg.max_states, 1));
  const auto ne = uniform(rng, 0, cfg.max_events);
  for (std::uint32_t s = 0; s < ns; ++s) t.states.push_back("s" + std::to_string(s));
  for (std::uint32_t e = 0; e < ne; ++e) t.events.push_back("e" + std::to_string(e));
  t.initial = uniform(rng, 0, ns - 1);
  if (ne > 0) {
    const auto nt = uniform(rng, 0, 2 * ns);
    for (std::uint32_t k = 0; k < nt; ++k)
      t.transitions.insert({uniform(rng, 0, ns - 1), uniform(rng, 0, ne - 1), uniform(rng, 0, ns - 1)});
  }
  return t;
}

/// Deterministic automaton in which some diamonds are closed and then some
/// closed diamonds declared independent.
inline Acr acr(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  const auto ns = uniform(rng, 1, std::max<std::uint32_t>(cfg.max_states, 1));
  const auto ne = uniform(rng, 0, cfg.max_events);
  std::vector<std::vector<std::optional<Index>>> delta(ns, std::vector<std::optional<Index>>(ne));
  for (auto& row : delta)
    for (auto& t : row)
      if (chance(rng, cfg.density + 0.2)) t = uniform(rng, 0, ns - 1);
  for (Index s = 0; s < ns; ++s)
    for (Index a = 0; a < ne; ++a)
      for (Index b = a + 1; b < ne; ++b) {
        const auto s1 = delta[s][a], s2 = delta[s][b];
        if (!s1 || !s2 || delta[*s1][b] || delta[*s2][a] || !chance(rng, 0.5)) continue;
        const Index r = uniform(rng, 0, ns - 1);
        delta[*s1][b] = r;
        delta[*s2][a] = r;
      }
  Acr out;
  for (std::uint32_t s = 0; s < ns; ++s) out.ts.states.push_back("s" + std::to_string(s));
  for (std::uint32_t e = 0; e < ne; ++e) out.ts.events.push_back("e" + std::to_string(e));
  out.ts.initial = uniform(rng, 0, ns - 1);
  for (Index s = 0; s < ns; ++s)
    for (Index e = 0; e < ne; ++e)
      if (delta[s][e]) out.ts.transitions.insert({s, e, *delta[s][e]});
  for (Index s = 0; s < ns; ++s)
    for (Index a = 0; a < ne; ++a)
      for (Index b = a + 1; b < ne; ++b) {
        const auto s1 = delta[s][a], s2 = delta[s][b];
        if (!s1 || !s2 || !delta[*s1][b] || delta[*s1][b] != delta[*s2][a]) continue;
        if (chance(rng, 0.6)) out.add_independence(s, a, b);
      }
  return out;
}

/// Random causal order and hereditary conflict; conflicts that would make an
/// event conflict with itself are dropped.
inline EventStructure event_structure(std::mt19937_64& rng, const GeneratorConfig& cfg) {
  const auto n = uniform(rng, 0, cfg.max_es_events);
  std::vector<std::string> names;
  for (std::uint32_t e = 0; e < n; ++e) names.push_back("e" + std::to_string(e));
  std::vector<std::pair<Index, Index>> causes, conflicts;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (chance(rng, cfg.density)) causes.emplace_back(a, b);
  EventStructure es = make_event_structure(names, causes, conflicts);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      if (!chance(rng, cfg.density / 2)) continue;
      conflicts.emplace_back(a, b);
      EventStructure next = make_event_structure(names, causes, conflicts);
      bool ok = true;
      for (Index e = 0; e < n; ++e) ok = ok && !next.conflict(e, e);
      if (ok)
        es = std::move(next);
      else
        conflicts.pop_back();
    }
  return es;
}

}  // namespace gen

namespace detail {

inline void record(LawReport& report, std::uint64_t seed, std::size_t instance, json model, const std::string& why) {
  if (report.counterexample) return;
  report.counterexample = json{{"seed", seed}, {"instance", instance}, {"model", std::move(model)}, {"detail", why}};
}

}  // namespace detail

enum class ComonadKind { sts, acr, es };

/// The round trip through HDAs is the identity (after canonical renumbering),
/// and every intermediate HDA validates.
inline LawReport check_comonad_identity(ComonadKind kind, const GeneratorConfig& cfg, std::size_t count) {
  static const char* const names[] = {"comonad-sts", "comonad-acr", "comonad-es"};
  LawReport report;
  report.law = names[static_cast<int>(kind)];
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = instance_rng(cfg.seed, i);
    ++report.tried;
    try {
      switch (kind) {
        case ComonadKind::sts: {
          const auto t = gen::transition_system(rng, cfg);
          const Hda h = ts_to_hda1(t);
          if (!validate_hda(h).ok()) detail::record(report, cfg.seed, i, to_json(t), "ts_to_hda1 output invalid");
          else if (!check_strong_labeling(h)) detail::record(report, cfg.seed, i, to_json(t), "not strongly labeled");
          else if (canonical(hda1_to_ts(h)) != canonical(t))
            detail::record(report, cfg.seed, i, to_json(t), "round trip differs");
          else ++report.passed;
          break;
        }
        case ComonadKind::acr: {
          const auto a = gen::acr(rng, cfg);
          const Hda h = acr_to_hda2(a);
          if (!validate_hda(h).ok()) detail::record(report, cfg.seed, i, to_json(a), "acr_to_hda2 output invalid");
          else if (!check_deterministic(h, 1)) detail::record(report, cfg.seed, i, to_json(a), "not 1-deterministic");
          else if (canonical(hda2_to_acr(h)) != canonical(a))
            detail::record(report, cfg.seed, i, to_json(a), "round trip differs");
          else ++report.passed;
          break;
        }
        case ComonadKind::es: {
          const auto es = gen::event_structure(rng, cfg);
          const Hda h = es_to_hda(es);
          if (!validate_hda(h).ok()) detail::record(report, cfg.seed, i, to_json(es), "es_to_hda output invalid");
          else if (!check_linear_labeling(h)) detail::record(report, cfg.seed, i, to_json(es), "not linear");
          else if (canonical(hda_to_es(h)) != canonical(es))
            detail::record(report, cfg.seed, i, to_json(es), "round trip differs");
          else ++report.passed;
          break;
        }
      }
    } catch (const Error& e) {
      detail::record(report, cfg.seed, i, json(nullptr), e.what());
    }
    if (!report.ok()) break;
  }
  return report;
}

/// F((T)_*) = T(F(T)) and (G C)_* = G(T C), compared after canonical
/// renumbering. Raises StarClash when `t` already has a "*" event.
inline bool kleisli_lift_holds(const TransitionSystem& t) {
  const Hda lhs = canonical(ts_to_hda1(idle_completion(t)));
  const Hda rhs = canonical(idle_loops(ts_to_hda1(t)));
  if (lhs != rhs) return false;
  const Hda c = ts_to_hda1(t);
  return canonical(hda1_to_ts(idle_loops(c), true)) == canonical(idle_completion(hda1_to_ts(c)));
}

inline LawReport check_kleisli_lift(const GeneratorConfig& cfg, std::size_t count) {
  LawReport report;
  report.law = "kleisli-lift";
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = instance_rng(cfg.seed, i);
    const auto t = gen::transition_system(rng, cfg);
    ++report.tried;
    try {
      if (kleisli_lift_holds(t))
        ++report.passed;
      else
        detail::record(report, cfg.seed, i, to_json(t), "functor equations differ");
    } catch (const Error& e) {
      detail::record(report, cfg.seed, i, to_json(t), e.what());
    }
    if (!report.ok()) break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Petri net / HDA adjunction

/// Every Petri net morphism src -> dst. For a fixed event map each target
/// place independently picks a source place with the matching column.
inline std::vector<PnMorphism> enumerate_pn_morphisms(const PetriNet& src, const PetriNet& dst,
                                                      std::size_t limit = 1'000'000) {
  std::vector<PnMorphism> out;
  const std::size_t ne = src.events.size();
  PartialMap psi(ne);
  auto per_psi = [&]() {
    std::vector<std::vector<Index>> options(dst.places.size());
    for (Index q = 0; q < dst.places.size(); ++q) {
      for (Index p = 0; p < src.places.size(); ++p) {
        bool ok = src.initial[p] == dst.initial[q];
        for (Index e = 0; e < ne && ok; ++e) {
          const std::uint32_t want_pre = psi[e] ? dst.pre[*psi[e]][q] : 0;
          const std::uint32_t want_post = psi[e] ? dst.post[*psi[e]][q] : 0;
          ok = src.pre[e][p] == want_pre && src.post[e][p] == want_post;
        }
        if (ok) options[q].push_back(p);
      }
      if (options[q].empty()) return;
    }
    std::vector<std::size_t> pick(dst.places.size(), 0);
    for (;;) {
      if (out.size() >= limit) fail(ErrorCode::size_limit, "Petri net hom-set exceeds the limit");
      PnMorphism m;
      m.events = psi;
      for (Index q = 0; q < dst.places.size(); ++q) m.places.push_back(options[q][pick[q]]);
      out.push_back(std::move(m));
      std::size_t q = 0;
      for (; q < pick.size(); ++q) {
        if (++pick[q] < options[q].size()) break;
        pick[q] = 0;
      }
      if (q == pick.size()) break;
    }
  };
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == ne) {
      per_psi();
      return;
    }
    psi[e] = std::nullopt;
    self(self, e + 1);
    for (Index t = 0; t < dst.events.size(); ++t) {
      psi[e] = t;
      self(self, e + 1);
    }
    psi[e] = std::nullopt;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct AdjunctionConfig {
  std::size_t max_states = 64;
  std::uint32_t max_dim = 4;
  std::size_t budget = 2'000'000;  // search nodes per HDA hom-set
  std::size_t naturality_limit = 8;  // morphisms per naturality family
};

/// Largest token count or arc weight of a net; regions up to this cap suffice
/// for every transposed morphism into it.
inline std::uint32_t region_cap_for(const PetriNet& net, std::size_t max_states) {
  std::uint32_t cap = 1;
  for (const auto& m : reachable_markings(net, max_states).markings)
    for (auto v : m) cap = std::max(cap, v);
  for (Index e = 0; e < net.events.size(); ++e)
    for (Index p = 0; p < net.places.size(); ++p) cap = std::max({cap, net.pre[e][p], net.post[e][p]});
  return cap;
}

struct AdjunctionFixture {
  std::vector<std::pair<std::string, Hda>> hdas;
  std::vector<std::pair<std::string, PetriNet>> nets;
};

inline AdjunctionFixture adjunction_fixtures() {
  AdjunctionFixture f;
  {
    Hda point;
    point.add_vertex("x");
    f.hdas.emplace_back("point", point);
  }
  {
    TransitionSystem t;
    t.add("x", "e", "y");
    f.hdas.emplace_back("edge", ts_to_hda1(t));
  }
  {
    TransitionSystem t;
    t.add("x", "e", "x");
    f.hdas.emplace_back("loop", ts_to_hda1(t));
  }
  f.hdas.emplace_back("sequence", ts_to_hda1(zoo::sequence_ab()));
  f.hdas.emplace_back("diamond", ts_to_hda1(zoo::diamond()));
  f.hdas.emplace_back("square", acr_to_hda2(zoo::diamond_square()));
  f.nets.emplace_back("single-event", zoo::single_event_net());
  f.nets.emplace_back("double-token", zoo::double_token_net());
  f.nets.emplace_back("token-ring", zoo::token_ring());
  f.nets.emplace_back("mutex", zoo::mutex_net());
  f.nets.emplace_back("mutex-without-lock", zoo::mutex_net_without_lock());
  return f;
}

/// Exhaustive bijection and naturality check on every (C, N) fixture pair.
/// Hom-sets whose enumeration exceeds the budget are skipped and counted.
inline LawReport check_adjunction_pn_hda(const AdjunctionFixture& fx, const AdjunctionConfig& cfg) {
  LawReport report;
  report.law = "adjunction-pn";
  std::uint32_t cap = 1;
  std::vector<NetHda> net_hdas;
  for (const auto& [name, net] : fx.nets) {
    cap = std::max(cap, region_cap_for(net, cfg.max_states));
    net_hdas.push_back(pn_to_net_hda(net, cfg.max_states, cfg.max_dim));
  }
  std::vector<SynthesizedNet> pns;
  for (const auto& [name, c] : fx.hdas) pns.push_back(hda_to_pn(c, cap));

  auto fail_with = [&](const std::string& c, const std::string& n, const std::string& why) {
    if (!report.counterexample) report.counterexample = json{{"hda", c}, {"net", n}, {"detail", why}};
  };
  auto hda_homs = [&](const Hda& a, const Hda& b) -> std::optional<std::vector<HdaMorphism>> {
    MorphismSearch opts;
    opts.budget = cfg.budget;
    auto res = enumerate_hda_morphisms(a, b, opts);
    if (res.budget_exhausted) return std::nullopt;
    std::sort(res.morphisms.begin(), res.morphisms.end());
    return res.morphisms;
  };

  // Morphisms between fixtures on either side, for the naturality squares.
  std::vector<std::vector<std::vector<PnMorphism>>> net_maps(fx.nets.size());
  for (std::size_t a = 0; a < fx.nets.size(); ++a)
    for (std::size_t b = 0; b < fx.nets.size(); ++b) {
      auto homs = enumerate_pn_morphisms(fx.nets[a].second, fx.nets[b].second);
      if (homs.size() > cfg.naturality_limit) homs.resize(cfg.naturality_limit);
      net_maps[a].push_back(std::move(homs));
    }
  std::vector<std::vector<std::vector<HdaMorphism>>> hda_maps(fx.hdas.size());
  for (std::size_t a = 0; a < fx.hdas.size(); ++a)
    for (std::size_t b = 0; b < fx.hdas.size(); ++b) {
      MorphismSearch opts;
      opts.budget = cfg.budget;
      opts.limit = cfg.naturality_limit;
      hda_maps[a].push_back(enumerate_hda_morphisms(fx.hdas[a].second, fx.hdas[b].second, opts).morphisms);
    }

  for (std::size_t ci = 0; ci < fx.hdas.size() && report.ok(); ++ci)
    for (std::size_t ni = 0; ni < fx.nets.size() && report.ok(); ++ni) {
      const auto& [cname, c] = fx.hdas[ci];
      const auto& [nname, net] = fx.nets[ni];
      ++report.tried;
      try {
        const auto pn_homs = enumerate_pn_morphisms(pns[ci].net, net);
        const auto homs = hda_homs(c, net_hdas[ni].hda());
        if (!homs) {
          ++report.skipped;
          continue;
        }
        std::vector<HdaMorphism> images;
        for (const auto& f : pn_homs) {
          const HdaMorphism g = transpose_to_hda(f, c, pns[ci], net, net_hdas[ni]);
          if (!validate_morphism(g, c, net_hdas[ni].hda()).ok()) return fail_with(cname, nname, "transpose is not a morphism"), report;
          if (transpose_to_pn(g, c, pns[ci], net, net_hdas[ni]) != f)
            return fail_with(cname, nname, "transpose_to_pn . transpose_to_hda != id"), report;
          images.push_back(g);
        }
        for (const auto& g : *homs)
          if (transpose_to_hda(transpose_to_pn(g, c, pns[ci], net, net_hdas[ni]), c, pns[ci], net, net_hdas[ni]) != g)
            return fail_with(cname, nname, "transpose_to_hda . transpose_to_pn != id"), report;
        std::sort(images.begin(), images.end());
        if (images != *homs) return fail_with(cname, nname, "hom-sets differ in size"), report;

        // Naturality in N: post-composition with g: N -> N2.
        for (std::size_t n2 = 0; n2 < fx.nets.size(); ++n2) {
          const auto& net2 = fx.nets[n2].second;
          for (const auto& g : net_maps[ni][n2]) {
            const HdaMorphism hg = fmap::pn_to_hda(g, net, net2, cfg.max_states, cfg.max_dim);
            for (const auto& f : pn_homs) {
              const auto lhs = transpose_to_hda(compose(f, g), c, pns[ci], net2, net_hdas[n2]);
              const auto rhs = compose(transpose_to_hda(f, c, pns[ci], net, net_hdas[ni]), hg);
              if (lhs != rhs) return fail_with(cname, nname, "naturality in the net fails"), report;
            }
          }
        }
        // Naturality in C: pre-composition with h: C2 -> C.
        for (std::size_t c2 = 0; c2 < fx.hdas.size(); ++c2) {
          const auto& hda2 = fx.hdas[c2].second;
          for (const auto& h : hda_maps[c2][ci]) {
            const PnMorphism ph = fmap::hda_to_pn(h, hda2, pns[c2], pns[ci]);
            for (const auto& f : pn_homs) {
              const auto lhs = transpose_to_hda(compose(ph, f), hda2, pns[c2], net, net_hdas[ni]);
              const auto rhs = compose(h, transpose_to_hda(f, c, pns[ci], net, net_hdas[ni]));
              if (lhs != rhs) return fail_with(cname, nname, "naturality in the HDA fails"), report;
            }
          }
        }
        ++report.passed;
      } catch (const Error& e) {
        fail_with(cname, nname, e.what());
      }
    }
  return report;
}

}  // namespace hdabridge
