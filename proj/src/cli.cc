#include "ambig/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ambig/campaign.h"
#include "ambig/errors.h"
#include "ambig/semantics.h"
#include "ambig/structure_io.h"
#include "ambig/syntax.h"
#include "ambig/transforms.h"
#include "ambig/translation.h"

namespace ambig {

using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

// Raised for bad requests that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string model;
  std::string out;
  bool json = false;
};

Structure need_model(const Globals& g) {
  if (g.model.empty()) throw UsageError("--model is required");
  return load_structure(g.model);
}

void write_text(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write '" + g.out + "'");
  f << text << "\n";
}

json state_map_json(const Structure& source, const Structure& derived, const StateMap& map) {
  json out = json::object();
  for (StateIndex w = 0; w < map.size(); ++w) {
    json entry = {{"source", source.states[map[w].old]}};
    if (map[w].tag) entry["copy"] = *map[w].tag;
    out[derived.states[w]] = entry;
  }
  return out;
}

int cmd_validate(const Globals& g, std::ostream& out) {
  Structure m = need_model(g);
  Report r = validate_core(m);
  if (m.signals) r.merge(validate_signals(m));
  r.merge(validate_priors(m));
  out << json({{"ok", r.ok()}, {"findings", r.to_json()}}).dump(2) << "\n";
  return r.ok() ? kPass : kFail;
}

struct EvalArgs {
  std::string formula, state, mode = "ou";
  int agent = 1;
  bool show_value = false;
};

int cmd_eval(const Globals& g, const EvalArgs& a, std::ostream& out) {
  Structure m = need_model(g);
  Formula f = parse_formula(a.formula);
  EvalMode mode;
  try {
    mode = parse_mode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  StateIndex w = m.state_index(a.state);
  Evaluator ev(m, mode);
  bool value = ev.holds(w, a.agent, f);
  std::optional<Rational> lhs;
  if (a.show_value && f.op() == Op::kProb) lhs = ev.probability_sum(w, a.agent, f);
  if (g.json) {
    json j = {{"value", value}};
    if (lhs) j["lhs"] = lhs->str();
    out << j.dump() << "\n";
  } else {
    out << (value ? "true" : "false") << "\n";
    if (lhs) out << "value " << *lhs << "\n";
  }
  return kPass;
}

struct TransformArgs {
  std::string kind;
  std::optional<int> agent;
  std::string state;
  std::string sidecar;
};

int cmd_transform(const Globals& g, const TransformArgs& a, std::ostream& out) {
  Structure m = need_model(g);
  std::optional<json> side;
  Structure result;
  if (a.kind == "fix-interpretation") {
    if (!a.agent) throw UsageError("fix-interpretation needs --agent");
    result = fix_interpretation(m, *a.agent);
  } else if (a.kind == "disjoint-copies") {
    Transformed t = disjoint_copies(m);
    side = json{{"state_map", state_map_json(m, t.model, t.map)}};
    result = std::move(t.model);
  } else if (a.kind == "label-partitions") {
    if (a.state.empty()) throw UsageError("label-partitions needs --state");
    Transformed t = label_partitions(m, m.state_index(a.state));
    json fresh = json::array();
    for (const FreshProp& p : t.fresh) {
      fresh.push_back({{"name", p.name}, {"agent", p.agent}, {"cell", set_json(t.model, p.cell)}});
    }
    side = json{{"state_map", state_map_json(m, t.model, t.map)}, {"fresh_props", fresh}};
    result = std::move(t.model);
  } else if (a.kind == "generate-priors") {
    result = m;
    result.priors = generate_priors(m);
  } else if (a.kind == "lift-indexed") {
    result = lift_to_indexed(m);
  } else {
    throw UsageError("unknown transform '" + a.kind + "'");
  }
  write_text(g, out, dump_structure(result));
  if (side) {
    std::string path = !a.sidecar.empty() ? a.sidecar : !g.out.empty() ? g.out + ".map.json" : "";
    if (!path.empty()) {
      std::ofstream f(path);
      if (!f) throw UsageError("cannot write '" + path + "'");
      f << side->dump(2) << "\n";
    }
  }
  return kPass;
}

struct TranslateArgs {
  std::string formula, mode = "in";
  int agent = 1;
};

int cmd_translate(const Globals& g, const TranslateArgs& a, std::ostream& out) {
  if (a.mode != "in" && a.mode != "ou") throw UsageError("--mode must be in or ou");
  Formula f = parse_formula(a.formula);
  std::optional<Formula> taut;
  if (!g.model.empty()) taut = load_structure(g.model).tautology_atom();
  Formula t = translate(f, a.agent, a.mode == "in" ? Scope::kInnermost : Scope::kOutermost, taut);
  std::string text = print_formula(t);
  write_text(g, out, g.json ? json({{"formula", text}}).dump() : text);
  return kPass;
}

struct CheckArgs {
  CampaignConfig cfg;
  std::string checks;
  std::string fault;
};

int cmd_check(const Globals& g, CheckArgs a, std::ostream& out, std::ostream& err) {
  if (!a.checks.empty() && a.checks != "all") {
    std::stringstream ss(a.checks);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) a.cfg.checks.push_back(item);
    }
  }
  if (!a.fault.empty()) {
    if (a.fault != "naive-cb") throw UsageError("unknown fault '" + a.fault + "'");
    a.cfg.inject_naive_cb = true;
  }
  CampaignReport report;
  try {
    report = run_campaign(a.cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const CampaignFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  json j = report.to_json();
  j["seed"] = a.cfg.seed;
  j["trials"] = a.cfg.trials;
  write_text(g, out, j.dump(2));
  return report.ok() ? kPass : kFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checker for epistemic probability logic with ambiguous propositions",
               "ambig"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--model", g.model, "Structure file (JSON)");
  app.add_option("--out", g.out, "Write the main output here instead of stdout");
  app.add_flag("--json", g.json, "Machine-readable output");

  app.add_subcommand("validate", "Check A1-A6 and prior consistency");

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a formula at a state");
  eval->add_option("--formula", ea.formula)->required();
  eval->add_option("--state", ea.state)->required();
  eval->add_option("--agent", ea.agent);
  eval->add_option("--mode", ea.mode)->check(CLI::IsMember({"common", "ou", "in", "ou-ai", "in-ai"}));
  eval->add_flag("--show-value", ea.show_value, "Also print the left-hand side of a probability formula");

  TransformArgs ta;
  CLI::App* transform = app.add_subcommand("transform", "Rewrite a structure");
  transform->add_option("kind", ta.kind,
                        "fix-interpretation, disjoint-copies, label-partitions, "
                        "generate-priors or lift-indexed")
      ->required();
  transform->add_option("--agent", ta.agent);
  transform->add_option("--state", ta.state);
  transform->add_option("--sidecar", ta.sidecar, "State map / fresh proposition table");

  TranslateArgs tr;
  CLI::App* translate_cmd = app.add_subcommand("translate", "Compile into indexed propositions");
  translate_cmd->add_option("--formula", tr.formula)->required();
  translate_cmd->add_option("--agent", tr.agent);
  translate_cmd->add_option("--mode", tr.mode);

  CheckArgs ca;
  CLI::App* check = app.add_subcommand("check", "Run a randomized verification campaign");
  check->add_option("--seed", ca.cfg.seed);
  check->add_option("--trials", ca.cfg.trials);
  check->add_option("--max-states", ca.cfg.bounds.max_states);
  check->add_option("--max-agents", ca.cfg.bounds.max_agents);
  check->add_option("--max-props", ca.cfg.bounds.max_props);
  check->add_option("--max-depth", ca.cfg.bounds.max_depth);
  check->add_option("--formulas", ca.cfg.formulas_per_trial, "Formulas per trial");
  check->add_option("--checks", ca.checks, "Comma-separated list, or all");
  check->add_option("--inject-fault", ca.fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (app.got_subcommand("validate")) return cmd_validate(g, out);
    if (eval->parsed()) return cmd_eval(g, ea, out);
    if (transform->parsed()) return cmd_transform(g, ta, out);
    if (translate_cmd->parsed()) return cmd_translate(g, tr, out);
    if (check->parsed()) return cmd_check(g, ca, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelFormatError& e) {
    err << "model error: " << e.what() << "\n";
    return kUsage;
  } catch (const UndefinedConditional& e) {
    err << "undefined: " << e.what() << "\n";
    return kUsage;
  } catch (const NonMeasurable& e) {
    err << "not measurable: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownState& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownAgent& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownProp& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModePrereqMissing& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    // Preconditions of the requested operation (AlreadyIndexed,
    // NotCommonInterpretation, CoreInvalid, ...).
    err << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace ambig
