#include "ambig/campaign.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "ambig/semantics.h"
#include "ambig/structure_io.h"
#include "ambig/syntax.h"
#include "ambig/transforms.h"
#include "ambig/translation.h"

namespace ambig {

using nlohmann::json;

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {
      "thm1-ab", "thm1-ac", "thm1-da", "thm2-in", "thm2-ou",
      "prop1", "mode-agreement", "inai-eq-in", "cb-oracle"};
  return names;
}

bool CampaignReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.failed == 0; });
}

json CampaignReport::to_json(bool with_timing) const {
  json out = {{"ok", ok()}, {"checks", json::array()}};
  for (const CheckResult& c : checks) {
    json j = {{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    if (with_timing) j["elapsed_seconds"] = c.seconds;
    out["checks"].push_back(std::move(j));
  }
  return out;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

using Outcome = std::optional<json>;

struct Trial {
  Rng& rng;
  const CampaignConfig& cfg;

  std::vector<Formula> corpus(const Structure& m, int depth) {
    FormulaOptions opt = formula_options_for(m, depth);
    std::vector<Formula> out;
    for (int k = 0; k < cfg.formulas_per_trial; ++k) out.push_back(random_formula(rng, opt));
    return out;
  }
  std::vector<Formula> corpus(const Structure& m) { return corpus(m, cfg.bounds.max_depth); }
};

json with_model(const Structure& m, json detail) {
  detail["structure"] = structure_to_json(m);
  return detail;
}

Outcome from_report(const Structure& m, const Report& r) {
  if (r.ok()) return std::nullopt;
  return with_model(m, r.findings().front().witness);
}

Outcome thm1_ab(Trial& t) {
  Structure m = random_structure(t.rng, t.cfg.bounds);
  std::vector<Formula> fs = t.corpus(m);
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    Structure d = fix_interpretation(m, i);
    StateMap map;
    for (StateIndex w = 0; w < m.num_states(); ++w) map.push_back({w, std::nullopt});
    Report r = verify_transform_equivalence(m, d, map, fs, TransformClaim::kFixInterpretation, i);
    if (!r.ok()) return from_report(m, r);
  }
  return std::nullopt;
}

Outcome thm1_ac(Trial& t) {
  Structure m = random_structure(t.rng, t.cfg.bounds);
  std::vector<Formula> fs = t.corpus(m);
  Transformed d = disjoint_copies(m);
  return from_report(m, verify_transform_equivalence(m, d.model, d.map, fs,
                                                     TransformClaim::kDisjointCopies));
}

Outcome thm1_da(Trial& t) {
  Structure m = random_structure(t.rng, t.cfg.bounds, {.common_interpretation = true});
  std::vector<Formula> fs = t.corpus(m);
  StateIndex w = t.rng.below(m.num_states());
  Transformed d = label_partitions(m, w);
  Report core = validate_core(d.model);
  core.merge(validate_signals(d.model));
  if (!core.ok()) return from_report(m, core);
  return from_report(m, verify_transform_equivalence(m, d.model, d.map, fs,
                                                     TransformClaim::kLabelPartitions));
}

Outcome thm2(Trial& t, Scope scope) {
  Structure m = random_structure(t.rng, t.cfg.bounds);
  std::vector<Formula> fs = t.corpus(m);
  return from_report(m, verify_theorem2(m, fs, {scope}));
}

Outcome prop1(Trial& t) {
  Structure m = random_structure(t.rng, t.cfg.bounds, {.coarse_atoms = true});
  std::vector<Prior> nu = generate_priors(m);
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    const Prior& p = nu[i - 1];
    const AgentModel& a = m.agent(i);
    Rational total;
    for (const Rational& x : p) {
      if (x.sign() < 0) return with_model(m, {{"agent", i}, {"problem", "negative prior"}});
      total += x;
    }
    if (total != Rational(1)) {
      return with_model(m, {{"agent", i}, {"problem", "prior sums to " + total.str()}});
    }
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      Rational cell = prior_measure(p, a.cells[c]);
      if (cell.sign() <= 0) {
        return with_model(m, {{"agent", i}, {"cell", set_json(m, a.cells[c])},
                              {"problem", "cell has prior mass " + cell.str()}});
      }
      const CellBelief& b = a.beliefs[c];
      for (std::size_t k = 0; k < b.atoms.size(); ++k) {
        Rational cond = prior_measure(p, b.atoms[k]) / cell;
        if (cond != b.mass[k]) {
          return with_model(m, {{"agent", i}, {"atom", set_json(m, b.atoms[k])},
                                {"conditioned", cond.str()}, {"measure", b.mass[k].str()}});
        }
      }
    }
  }
  return std::nullopt;
}

json ext_json(const Structure& m, const Extension& e) {
  return {{"holds", set_json(m, e.holds)}, {"undefined", set_json(m, e.undefined)}};
}

Outcome compare_modes(const Structure& m, const std::vector<Formula>& fs,
                      const std::vector<EvalMode>& modes) {
  std::vector<std::unique_ptr<Evaluator>> evs;
  for (EvalMode mode : modes) evs.push_back(std::make_unique<Evaluator>(m, mode));
  for (const Formula& f : fs) {
    const Formula core = evs[0]->prepare(f);
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
      const Extension& base = evs[0]->evaluate(i, core);
      for (std::size_t k = 1; k < evs.size(); ++k) {
        const Extension& other = evs[k]->evaluate(i, core);
        if (other.holds == base.holds && other.undefined == base.undefined) continue;
        return with_model(m, {{"formula", print_formula(f)},
                              {"agent", i},
                              {"mode_a", mode_name(modes[0])},
                              {"value_a", ext_json(m, base)},
                              {"mode_b", mode_name(modes[k])},
                              {"value_b", ext_json(m, other)}});
      }
    }
  }
  return std::nullopt;
}

Outcome mode_agreement(Trial& t) {
  Structure m = random_structure(t.rng, t.cfg.bounds,
                                 {.common_interpretation = true, .coarse_atoms = true});
  return compare_modes(m, t.corpus(m),
                       {EvalMode::kCommon, EvalMode::kOutermost, EvalMode::kInnermost});
}

Outcome inai_eq_in(Trial& t, int trial) {
  SignalScheme scheme = trial % 2 ? SignalScheme::kCrossInterpretation : SignalScheme::kCellLabels;
  Structure m = random_ai_structure(t.rng, t.cfg.bounds, scheme, {.coarse_atoms = true});
  return compare_modes(m, t.corpus(m), {EvalMode::kInnermost, EvalMode::kInnermostAI});
}

// CB_G f against the three-valued conjunction of EB^1..EB^K, K = |states|*|G|+1.
Outcome cb_oracle(Trial& t, int trial) {
  Structure m;
  std::vector<EvalMode> modes;
  switch (trial % 3) {
    case 0:
      m = random_structure(t.rng, t.cfg.bounds, {.coarse_atoms = true});
      modes = {EvalMode::kOutermost, EvalMode::kInnermost};
      break;
    case 1:
      m = random_structure(t.rng, t.cfg.bounds, {.common_interpretation = true});
      modes = {EvalMode::kCommon, EvalMode::kOutermost, EvalMode::kInnermost};
      break;
    default:
      m = random_ai_structure(t.rng, t.cfg.bounds, SignalScheme::kCrossInterpretation);
      modes = {EvalMode::kOutermostAI, EvalMode::kInnermostAI, EvalMode::kOutermost,
               EvalMode::kInnermost};
      break;
  }
  FormulaOptions opt = formula_options_for(m, std::max(0, t.cfg.bounds.max_depth - 1));
  for (int k = 0; k < t.cfg.formulas_per_trial; ++k) {
    const Formula body = random_formula(t.rng, opt);
    std::vector<AgentId> g;
    for (AgentId i = 1; i <= opt.agents; ++i) {
      if (t.rng.chance(1, 2)) g.push_back(i);
    }
    if (g.empty()) g.push_back(t.rng.between(1, opt.agents));
    const AgentSet group = make_agent_set(g);
    const int bound = static_cast<int>(m.num_states() * group.size()) + 1;
    for (EvalMode mode : modes) {
      Evaluator ev(m, mode);
      const Formula core = ev.prepare(body);
      const Formula cb = Formula::common_belief(group, core);
      std::vector<Formula> levels;
      Formula level = core;
      for (int step = 0; step < bound; ++step) {
        std::optional<Formula> next;
        for (AgentId j : group) {
          Formula b = belief_core(j, level);
          next = next ? Formula::conj(*next, b) : b;
        }
        level = *next;
        levels.push_back(level);
      }
      for (AgentId i = 1; i <= opt.agents; ++i) {
        const Extension& got = ev.evaluate(i, cb);
        StateSet holds = m.full_set(), undefined = m.empty_set();
        for (const Formula& l : levels) {
          const Extension& e = ev.evaluate(i, l);
          holds &= e.holds;
          undefined |= e.undefined;
        }
        holds -= undefined;
        if (got.holds == holds && got.undefined == undefined) continue;
        return with_model(m, {{"formula", print_formula(cb)},
                              {"mode", mode_name(mode)},
                              {"agent", i},
                              {"reachability", ext_json(m, got)},
                              {"oracle", {{"holds", set_json(m, holds)},
                                          {"undefined", set_json(m, undefined)}}}});
      }
    }
  }
  return std::nullopt;
}

Outcome run_check(const std::string& name, Trial& t, int trial) {
  if (name == "thm1-ab") return thm1_ab(t);
  if (name == "thm1-ac") return thm1_ac(t);
  if (name == "thm1-da") return thm1_da(t);
  if (name == "thm2-in") {
    return thm2(t, t.cfg.inject_naive_cb ? Scope::kNaiveInnermost : Scope::kInnermost);
  }
  if (name == "thm2-ou") return thm2(t, Scope::kOutermost);
  if (name == "prop1") return prop1(t);
  if (name == "mode-agreement") return mode_agreement(t);
  if (name == "inai-eq-in") return inai_eq_in(t, trial);
  if (name == "cb-oracle") return cb_oracle(t, trial);
  throw std::invalid_argument("unknown check '" + name + "'");
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const GenBounds& b = cfg.bounds;
  if (b.max_states < 1 || b.max_agents < 1 || b.max_props < 1 || b.max_depth < 1) {
    throw std::invalid_argument("all bounds must be at least 1");
  }
  if (cfg.formulas_per_trial < 1) throw std::invalid_argument("need at least one formula per trial");
  const std::vector<std::string>& names = cfg.checks.empty() ? all_checks() : cfg.checks;
  for (const std::string& n : names) {
    if (std::find(all_checks().begin(), all_checks().end(), n) == all_checks().end()) {
      throw std::invalid_argument("unknown check '" + n + "'");
    }
  }

  CampaignReport report;
  for (const std::string& name : names) {
    CheckResult res;
    res.name = name;
    const auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < cfg.trials; ++trial) {
      Rng rng(splitmix64(splitmix64(cfg.seed) ^ fnv1a(name) ^
                         splitmix64(static_cast<std::uint64_t>(trial))));
      Trial t{rng, cfg};
      Outcome out;
      try {
        out = run_check(name, t, trial);
      } catch (const std::exception& e) {
        throw CampaignFailure(name + " trial " + std::to_string(trial) + ": " + e.what());
      }
      if (!out) {
        ++res.passed;
        continue;
      }
      ++res.failed;
      if (!res.counterexample) {
        (*out)["trial"] = trial;
        res.counterexample = std::move(out);
      }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(res));
  }
  return report;
}

}  // namespace ambig
