#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <cctype>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kfl/axioms.hpp"
#include "kfl/error.hpp"
#include "kfl/lab.hpp"
#include "kfl/model_json.hpp"
#include "kfl/witness.hpp"

namespace kfl::cli {

namespace {

struct LoadedModel {
  ModelDocument doc;
  Model model;
};

LoadedModel load(const std::string& path) {
  ModelDocument doc = load_model_document(path);
  Model m = to_model(doc);
  return {std::move(doc), std::move(m)};
}

std::string set_text(NodeSet s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (Node k : s) {
    if (!first) out += ", ";
    out += names[k];
    first = false;
  }
  return out + "}";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

Formula parse_formula_arg(const std::string& text) {
  auto start = text.find_first_not_of(" \t\n");
  if (start != std::string::npos && text[start] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(std::string("formula JSON: ") + e.what());
    }
    return formula_from_json(j);
  }
  return parse(text);
}

unsigned threads_from_env() {
  const char* env = std::getenv("KFL_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0') throw Error("KFL_THREADS must be a non-negative integer");
  return static_cast<unsigned>(v);
}

// check ---------------------------------------------------------------------

struct CheckOptions {
  std::string model;
  std::string formula;
  std::string node;
};

int do_check(const CheckOptions& o, std::ostream& out) {
  auto [doc, m] = load(o.model);
  Formula f = parse_formula_arg(o.formula);
  std::optional<Node> only;
  if (!o.node.empty()) {
    only = doc.index_of(o.node);
    if (!only) throw Error("unknown node '" + o.node + "'");
  }
  NodeSet ext = extension(m, f);
  std::size_t width = 4;
  for (const auto& n : doc.nodes) width = std::max(width, n.size());
  out << "formula: " << render(f) << "\n";
  for (Node k = 0; k < m.size(); ++k) {
    if (only && *only != k) continue;
    out << doc.nodes[k] << std::string(width - doc.nodes[k].size() + 2, ' ')
        << yes_no(ext.contains(k)) << "\n";
  }
  bool ok = only ? ext.contains(*only) : ext == m.frame().nodes();
  if (!only) out << (ok ? "satisfied at every node" : "not satisfied at every node") << "\n";
  return ok ? kOk : kDoesNotHold;
}

// props ---------------------------------------------------------------------

int do_props(const std::string& path, std::ostream& out) {
  auto [doc, m] = load(path);
  const Frame& f = m.frame();
  const auto& names = doc.nodes;
  DefinableAlgebra algebra = definable_sets(m);
  out << "reflexive: " << yes_no(is_reflexive(f)) << "\n";
  out << "transitive: " << yes_no(is_transitive(f)) << "\n";
  out << "connected: " << yes_no(is_connected(f)) << "\n";
  out << "atom-persistent: " << yes_no(is_atom_persistent(m)) << "\n";
  out << "formula-persistent: " << yes_no(is_formula_persistent(f, algebra, f.nodes())) << "\n";
  out << "definable sets: " << algebra.size() << "\n";
  for (Node k = 0; k < f.size(); ++k) {
    NodeSet region = reach_plus(f, k);
    out << names[k] << ": R+ = " << set_text(region, names)
        << ", reflexive: " << yes_no(is_reflexive_on(f, region))
        << ", transitive: " << yes_no(is_transitive_on(f, region))
        << ", atom-persistent: " << yes_no(is_atom_persistent(m, region))
        << ", formula-persistent: " << yes_no(is_formula_persistent(f, algebra, region)) << "\n";
  }
  return kOk;
}

// axiom ---------------------------------------------------------------------

struct AxiomOptions {
  std::string model;
  std::string name;
  std::string scheme;
  bool frame = false;
  bool persistent_only = false;
};

int do_axiom(const AxiomOptions& o, std::ostream& out) {
  if (o.name.empty() == o.scheme.empty()) throw CLI::ValidationError("exactly one of --name and --scheme is required");
  if (o.persistent_only && !o.frame) throw CLI::ValidationError("--persistent-only needs --frame");
  auto [doc, m] = load(o.model);
  Scheme s = o.name.empty() ? Scheme::axiom("custom", parse(o.scheme, ParseMode::Scheme))
                            : get_scheme(o.name);
  SchemeVerdict v = o.frame ? frame_validates_scheme(m.frame(), s, o.persistent_only)
                            : model_validates_scheme(m, s);
  out << s.name() << " ("
      << (o.frame ? (o.persistent_only ? "frame level, persistent valuations" : "frame level")
                  : "model level")
      << "): " << (v.holds ? "holds" : "fails") << "\n";
  if (v.holds) return kOk;
  out << "failing node: " << doc.nodes[*v.failing_node] << "\n";
  for (const auto& [meta, set] : *v.failing_assignment) {
    out << "  " << meta << " = " << set_text(set, doc.nodes);
    if (auto it = v.failing_formulas->find(meta); it != v.failing_formulas->end())
      out << " as " << render(it->second);
    out << "\n";
  }
  for (const auto& p : v.failing_instance->premises) out << "premise: " << render(p) << "\n";
  out << "instance: " << render(v.failing_instance->conclusion) << "\n";
  return kDoesNotHold;
}

// verify --------------------------------------------------------------------

struct VerifyOptions {
  std::string theorem;
  std::size_t max_nodes = 3;
  std::size_t atoms = 3;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool allow_large = false;
};

int do_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.samples.has_value() != o.seed.has_value())
    throw CLI::ValidationError("--sample and --seed must be given together");
  SweepConfig cfg;
  cfg.max_nodes = o.max_nodes;
  cfg.atoms = o.atoms;
  cfg.allow_large = o.allow_large;
  cfg.threads = threads_from_env();
  if (o.samples) {
    cfg.mode = SweepMode::Sampled;
    cfg.samples = *o.samples;
    cfg.seed = o.seed;
  }
  VerificationReport r = verify_theorem(o.theorem, cfg);
  if (o.json)
    out << to_json(r).dump(2) << "\n";
  else
    out << to_text(r);
  return r.passed() ? kOk : kDoesNotHold;
}

// witness -------------------------------------------------------------------

std::vector<CountermodelTheorem> witness_targets(const std::string& id) {
  std::string lower;
  for (char c : id) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower.rfind("thm-", 0) == 0) lower = lower.substr(4);
  if (lower == "a4") return {CountermodelTheorem::A4Reflexivity, CountermodelTheorem::A4Persistency};
  if (lower == "a5b")
    return {CountermodelTheorem::A5bTransitivity, CountermodelTheorem::A5bPersistency};
  if (auto t = countermodel_theorem_from_string(lower)) return {*t};
  throw UnknownNameError("unknown countermodel theorem '" + id +
                         "'; valid ids: mp, a1, a4, a4-reflexivity, a4-persistency, a5a, a5b, "
                         "a5b-transitivity, a5b-persistency, a6 (optionally prefixed with thm-)");
}

int do_witness(const std::string& theorem, const std::string& path, std::ostream& out,
               std::ostream& err) {
  auto targets = witness_targets(theorem);
  auto [doc, m] = load(path);
  for (CountermodelTheorem t : targets) {
    auto w = find_violation(m, required_violation(t));
    if (!w) continue;
    if (t == CountermodelTheorem::A6 && !(is_reflexive(m.frame()) && is_transitive(m.frame()))) {
      err << "kfl witness: the A6 construction needs a reflexive and transitive frame\n";
      return kDoesNotHold;
    }
    Countermodel c = build_countermodel(t, *w, m);
    out << countermodel_to_json(c, doc.nodes).dump(2) << "\n";
    return kOk;
  }
  err << "kfl witness: no violation for " << theorem << " in this model\n";
  return kNothingToWitness;
}

// enumerate -----------------------------------------------------------------

struct EnumerateOptions {
  std::size_t nodes = 1;
  std::vector<std::string> filter;
  bool count_only = false;
  bool allow_large = false;
};

int do_enumerate(const EnumerateOptions& o, std::ostream& out) {
  std::vector<bool (*)(const Frame&)> tests;
  for (const auto& raw : o.filter) {
    std::string name;
    for (char c : raw) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == "reflexive")
      tests.push_back(&is_reflexive);
    else if (name == "transitive")
      tests.push_back(&is_transitive);
    else if (name == "connected")
      tests.push_back(&is_connected);
    else
      throw CLI::ValidationError("--filter", "unknown property '" + raw +
                                                 "'; valid: reflexive, transitive, connected");
  }
  std::uint64_t count = 0;
  for (const Frame& f : enumerate_frames(o.nodes, o.allow_large)) {
    if (!std::all_of(tests.begin(), tests.end(), [&](auto t) { return t(f); })) continue;
    ++count;
    if (!o.count_only) out << to_json(to_document(Model(f))).dump() << "\n";
  }
  if (o.count_only) out << count << "\n";
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kripke-frame workbench for BL and Goedel-Dummett logic", "kfl"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Per-node forcing table for a formula");
  check_cmd->add_option("--model", check.model, "Model JSON file")->required();
  check_cmd->add_option("--formula", check.formula, "Formula text, or formula JSON")->required();
  check_cmd->add_option("--node", check.node, "Report only this node");

  std::string props_model;
  auto* props_cmd = app.add_subcommand("props", "Frame and persistency properties of a model");
  props_cmd->add_option("--model", props_model, "Model JSON file")->required();

  AxiomOptions axiom;
  auto* axiom_cmd = app.add_subcommand("axiom", "Check a scheme in a model or its frame");
  axiom_cmd->add_option("--model", axiom.model, "Model JSON file")->required();
  axiom_cmd->add_option("--name", axiom.name, "A1..A7, MP, GODEL or LIN");
  axiom_cmd->add_option("--scheme", axiom.scheme, "Ad-hoc scheme text with metavariables");
  axiom_cmd->add_flag("--frame", axiom.frame, "Quantify over all valuations of the frame");
  axiom_cmd->add_flag("--persistent-only", axiom.persistent_only,
                      "With --frame: only successor-closed valuations");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep frames and report on a theorem");
  verify_cmd->add_option("--theorem", verify.theorem, "Theorem id, e.g. thm-a1")->required();
  verify_cmd->add_option("--max-nodes", verify.max_nodes, "Largest frame size")
      ->check(CLI::Range(1, 5));
  verify_cmd->add_option("--atoms", verify.atoms, "Atoms in model-level valuations")
      ->check(CLI::Range(0, 8));
  verify_cmd->add_option("--sample", verify.samples, "Random samples at --max-nodes")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Seed for --sample");
  verify_cmd->add_flag("--json", verify.json, "Emit the report as JSON");
  verify_cmd->add_flag("--allow-large", verify.allow_large, "Lift the exhaustive size guard");

  std::string witness_theorem;
  std::string witness_model;
  auto* witness_cmd = app.add_subcommand("witness", "Emit the proof countermodel for a defect");
  witness_cmd->add_option("--theorem", witness_theorem, "mp, a1, a4, a5a, a5b, a6, ...")->required();
  witness_cmd->add_option("--model", witness_model, "Model JSON file")->required();

  EnumerateOptions enumerate;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List or count labeled frames");
  enumerate_cmd->add_option("--nodes", enumerate.nodes, "Node count")->required()->check(
      CLI::Range(1, 5));
  enumerate_cmd->add_option("--filter", enumerate.filter, "reflexive,transitive,connected")
      ->delimiter(',');
  enumerate_cmd->add_flag("--count-only", enumerate.count_only, "Print only the count");
  enumerate_cmd->add_flag("--allow-large", enumerate.allow_large, "Allow 5-node enumeration");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) return do_check(check, out);
    if (*props_cmd) return do_props(props_model, out);
    if (*axiom_cmd) return do_axiom(axiom, out);
    if (*verify_cmd) return do_verify(verify, out);
    if (*witness_cmd) return do_witness(witness_theorem, witness_model, out, err);
    if (*enumerate_cmd) return do_enumerate(enumerate, out);
  } catch (const CLI::Error& e) {
    err << "kfl: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "kfl: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace kfl::cli
