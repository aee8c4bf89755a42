// Command-line front end: validate, translate, laws, export-dot, regions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hdabridge/hdabridge.hpp"

namespace hb = hdabridge;

namespace {

enum Exit : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kParseError = 3,
  kUnknownKind = 4,
  kNoSuchFunctor = 5,
  kExplosionLimit = 6,
  kDimensionCap = 7,
  kCapExceeded = 8,
  kNotLinear = 9,
  kNotOneDeterministic = 10,
  kSquareIncomplete = 11,
  kNotPartialOrder = 12,
  kLawCounterexample = 13,
  kOtherError = 14,
  kIoError = 15,
};

const char* const kExitHelp = R"(Exit status:
   0  success
   1  the model violates its axioms (validate, or input to translate)
   2  usage error
   3  ParseError: malformed JSON or schema
   4  UnknownKind: unsupported "kind"
   5  NoSuchFunctor: no translation between the requested kinds
   6  ExplosionLimit: more reachable markings than --max-states
   7  DimensionCapExceeded: enabled words longer than --max-dim
   8  CapExceeded: a region value exceeds --cap
   9  NotLinear: an HDA label repeats an event
  10  NotOneDeterministic: equally labeled edges share a source
  11  SquareIncomplete: independence without a closing square
  12  NotPartialOrder: induced causality is not antisymmetric
  13  a law suite found a counterexample
  14  any other library error
  15  input or output file cannot be opened
)";

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(hb::ErrorCode code) {
  switch (code) {
    case hb::ErrorCode::parse_error: return kParseError;
    case hb::ErrorCode::unknown_kind: return kUnknownKind;
    case hb::ErrorCode::no_such_functor: return kNoSuchFunctor;
    case hb::ErrorCode::explosion_limit: return kExplosionLimit;
    case hb::ErrorCode::dimension_cap_exceeded: return kDimensionCap;
    case hb::ErrorCode::cap_exceeded: return kCapExceeded;
    case hb::ErrorCode::not_linear: return kNotLinear;
    case hb::ErrorCode::not_one_deterministic: return kNotOneDeterministic;
    case hb::ErrorCode::square_incomplete: return kSquareIncomplete;
    case hb::ErrorCode::not_partial_order: return kNotPartialOrder;
    default: return kOtherError;
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot write " + path);
  out << text;
}

struct Caps {
  std::uint32_t cap = 1;
  std::size_t max_states = 10000;
  std::uint32_t max_dim = 3;
  bool idle = false;
  bool truncate = false;
};

hb::Hda to_hda(const hb::ModelDocument& doc, const Caps& caps) {
  struct Visitor {
    const Caps& caps;
    hb::Hda operator()(const hb::TransitionSystem& t) const { return hb::ts_to_hda1(t, caps.idle); }
    hb::Hda operator()(const hb::LabeledTransitionSystem& l) const { return hb::lts_to_hda1(l); }
    hb::Hda operator()(const hb::Acr& a) const { return hb::acr_to_hda2(a); }
    hb::Hda operator()(const hb::EventStructure& es) const {
      return hb::cts_to_hda(hb::es_to_cts(es), caps.max_dim, caps.truncate).hda;
    }
    hb::Hda operator()(const hb::PetriNet& n) const {
      return hb::pn_to_hda(n, caps.max_states, caps.max_dim, caps.truncate);
    }
    hb::Hda operator()(const hb::Hda& h) const { return h; }
  };
  return std::visit(Visitor{caps}, doc);
}

hb::ModelDocument from_hda(const hb::Hda& h, const std::string& kind, const Caps& caps) {
  if (kind == "hda") return h;
  if (kind == "ts") return hb::hda1_to_ts(h.truncated(1), caps.idle);
  if (kind == "acr") return hb::hda2_to_acr(h);
  if (kind == "es") return hb::hda_to_es(h);
  if (kind == "pnet") return hb::hda_to_pn(h, caps.cap).net;
  hb::fail(hb::ErrorCode::no_such_functor, "no functor from hda to '" + kind + "'");
}

hb::ModelDocument load(const std::string& path) { return hb::parse_document(read_input(path)); }

void require_valid(const hb::ModelDocument& doc) {
  const auto report = hb::validate(doc);
  if (!report.ok()) {
    std::ostringstream os;
    os << report;
    throw hb::Error(hb::ErrorCode::invalid_model, "input is not a valid " + hb::kind_of(doc) + ":\n" + os.str());
  }
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HDABRIDGE_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate between models of concurrency and higher dimensional automata."};
  app.footer(kExitHelp);
  app.require_subcommand(1);

  std::string input, output = "-";
  Caps caps;

  auto* validate = app.add_subcommand("validate", "Check a model document against its axioms");
  validate->add_option("path", input, "Model document, '-' for stdin")->required();

  auto* translate = app.add_subcommand("translate", "Apply a functor (through hda when composite)");
  std::string to;
  translate->add_option("path", input, "Model document, '-' for stdin")->required();
  translate->add_option("--to", to, "Target kind: ts, acr, es, pnet, hda")->required();
  translate->add_option("--cap", caps.cap, "Largest region value when synthesizing nets")->capture_default_str();
  translate->add_option("--max-states", caps.max_states, "Reachable marking limit")->capture_default_str();
  translate->add_option("--max-dim", caps.max_dim, "Largest cell dimension generated")->capture_default_str();
  translate->add_flag("--idle", caps.idle, "Read '*' transitions as idle steps (ts <-> hda)");
  translate->add_flag("--truncate", caps.truncate, "Drop cells above --max-dim instead of failing");
  translate->add_option("-o,--output", output, "Output path, '-' for stdout")->capture_default_str();

  auto* laws = app.add_subcommand("laws", "Run a law suite; JSON on stdout, text on stderr");
  std::string suite;
  std::uint64_t seed = default_seed();
  std::size_t count = 100;
  laws->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"comonad-sts", "comonad-acr", "comonad-es", "adjunction-pn", "kleisli"}));
  laws->add_option("--seed", seed, "Generator seed (default $HDABRIDGE_SEED or 0)");
  laws->add_option("--count", count, "Random instances (ignored by adjunction-pn)")->capture_default_str();

  auto* dot = app.add_subcommand("export-dot", "Render the 1-skeleton and squares as Graphviz DOT");
  std::string style = "diagonal";
  dot->add_option("path", input, "Model document, '-' for stdin")->required();
  dot->add_option("--dim2", style, "Square rendering")
      ->check(CLI::IsMember({"diagonal", "cluster"}))
      ->capture_default_str();
  dot->add_option("--max-states", caps.max_states, "Reachable marking limit")->capture_default_str();
  dot->add_option("--max-dim", caps.max_dim, "Largest cell dimension generated")->capture_default_str();
  dot->add_flag("--idle", caps.idle, "Read '*' transitions as idle steps");
  dot->add_option("-o,--output", output, "Output path, '-' for stdout")->capture_default_str();

  auto* regions = app.add_subcommand("regions", "List the regions of a model's HDA as JSON");
  regions->add_option("path", input, "Model document, '-' for stdin")->required();
  regions->add_option("--cap", caps.cap, "Largest region value")->capture_default_str();
  regions->add_option("--max-states", caps.max_states, "Reachable marking limit")->capture_default_str();
  regions->add_option("--max-dim", caps.max_dim, "Largest cell dimension generated")->capture_default_str();
  regions->add_option("-o,--output", output, "Output path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      const auto doc = load(input);
      const auto report = hb::validate(doc);
      std::cout << hb::kind_of(doc) << ": " << report;
      return report.ok() ? kOk : kValidationFailed;
    }
    if (translate->parsed()) {
      const auto doc = load(input);
      const auto report = hb::validate(doc);
      if (!report.ok()) {
        std::cerr << hb::kind_of(doc) << ": " << report;
        return kValidationFailed;
      }
      const hb::Hda h = to_hda(doc, caps);
      write_output(output, hb::to_json(from_hda(h, to, caps)).dump(2) + "\n");
      return kOk;
    }
    if (laws->parsed()) {
      hb::GeneratorConfig cfg;
      cfg.seed = seed;
      hb::LawReport report;
      if (suite == "comonad-sts") report = hb::check_comonad_identity(hb::ComonadKind::sts, cfg, count);
      if (suite == "comonad-acr") report = hb::check_comonad_identity(hb::ComonadKind::acr, cfg, count);
      if (suite == "comonad-es") report = hb::check_comonad_identity(hb::ComonadKind::es, cfg, count);
      if (suite == "kleisli") report = hb::check_kleisli_lift(cfg, count);
      if (suite == "adjunction-pn") report = hb::check_adjunction_pn_hda(hb::adjunction_fixtures(), {});
      std::cout << report.to_json().dump(2) << "\n";
      std::cerr << report.to_text();
      return report.ok() ? kOk : kLawCounterexample;
    }
    if (dot->parsed()) {
      const auto doc = load(input);
      require_valid(doc);
      const auto s = style == "cluster" ? hb::SquareStyle::cluster : hb::SquareStyle::diagonal;
      write_output(output, hb::export_dot(to_hda(doc, caps), s));
      return kOk;
    }
    if (regions->parsed()) {
      const auto doc = load(input);
      require_valid(doc);
      const hb::Hda h = to_hda(doc, caps);
      hb::json out = hb::json::array();
      for (const auto& reg : hb::enumerate_regions(h, caps.cap)) {
        hb::json r = hb::json::object(), s = hb::json::object();
        for (std::size_t k = 0; k < reg.r.size(); ++k) r[h.alphabet()[k + 1]] = {reg.r[k].first, reg.r[k].second};
        for (std::uint32_t v = 0; v < reg.s.size(); ++v) s[h.name({0, v})] = reg.s[v];
        out.push_back({{"R", r}, {"S", s}});
      }
      write_output(output, out.dump(2) + "\n");
      return kOk;
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const hb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == hb::ErrorCode::invalid_model && (dot->parsed() || regions->parsed()) ? kValidationFailed
                                                                                             : exit_for(e.code());
  }
  return kUsage;
}
