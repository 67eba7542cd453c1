// Randomized comparisons against the brute-force evaluator, and the
// semantic invariants that only make sense over many generated models.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ambig/errors.h"
#include "ambig/generators.h"
#include "ambig/semantics.h"
#include "ambig/structure_io.h"
#include "ambig/syntax.h"
#include "brute.h"
#include "support.h"

using namespace ambig;
using brute::Truth;
using testing::F;

namespace {

GenBounds small() {
  GenBounds b;
  b.max_states = 4;
  b.max_agents = 3;
  b.max_props = 2;
  b.max_depth = 3;
  return b;
}

// Zeroes a few prior weights so that some conditioning events become null.
void thin_priors(Rng& rng, Structure& m) {
  for (Prior& nu : *m.priors) {
    if (!rng.chance(1, 2)) continue;
    StateIndex w = rng.below(nu.size());
    Rational keep = nu[w];
    nu[w] = Rational();
    bool any = false;
    for (const Rational& x : nu) any = any || x.sign() > 0;
    if (!any) nu[w] = keep;
  }
}

std::vector<EvalMode> modes_for(const Structure& m) {
  std::vector<EvalMode> out = {EvalMode::kOutermost, EvalMode::kInnermost};
  if (is_common_interpretation(m)) out.push_back(EvalMode::kCommon);
  if (m.priors && m.signals) {
    out.push_back(EvalMode::kOutermostAI);
    out.push_back(EvalMode::kInnermostAI);
  }
  return out;
}

Structure any_model(Rng& rng, int trial) {
  GenBounds b = small();
  StructureOptions opt;
  opt.coarse_atoms = trial % 4 == 1;
  switch (trial % 4) {
    case 0:
    case 1:
      opt.common_interpretation = trial % 8 < 2;
      return random_structure(rng, b, opt);
    case 2:
      return random_ai_structure(rng, b, SignalScheme::kCellLabels, opt);
    default: {
      opt.min_agents = 2;
      Structure m = random_ai_structure(rng, b, SignalScheme::kCrossInterpretation, opt);
      thin_priors(rng, m);
      return m;
    }
  }
}

std::string truth_text(Truth t) {
  return t == Truth::kTrue ? "true" : t == Truth::kFalse ? "false" : "undefined";
}

// Evaluator result for every agent, or nullopt if it raised NonMeasurable.
std::optional<brute::Table> library_table(const Structure& m, const Formula& f, EvalMode mode) {
  Evaluator ev(m, mode);
  const Formula core = ev.prepare(f);
  brute::Table out;
  try {
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
      const Extension& e = ev.evaluate(i, core);
      std::vector<Truth> row;
      for (StateIndex w = 0; w < m.num_states(); ++w) {
        row.push_back(e.undefined.test(w) ? Truth::kUndefined
                      : e.holds.test(w)   ? Truth::kTrue
                                          : Truth::kFalse);
      }
      out.push_back(row);
    }
  } catch (const NonMeasurable&) {
    return std::nullopt;
  }
  return out;
}

std::optional<brute::Table> oracle_table(const Structure& m, const Formula& f, EvalMode mode) {
  try {
    return brute::evaluate(m, f, mode);
  } catch (const NonMeasurable&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("evaluator agrees with the brute-force oracle in every mode") {
  Rng rng(31337);
  int compared = 0, undefined_seen = 0, unmeasurable = 0;
  for (int trial = 0; trial < 600; ++trial) {
    Structure m = any_model(rng, trial);
    for (int k = 0; k < 3; ++k) {
      FormulaOptions fo = formula_options_for(m, 1 + static_cast<int>(rng.below(3)));
      fo.full_surface = rng.chance(1, 3);
      if (fo.full_surface) fo.props = {m.props[0]};
      Formula f = random_formula(rng, fo);
      if (contains_indexed(f)) continue;
      for (EvalMode mode : modes_for(m)) {
        auto ours = library_table(m, f, mode);
        auto ref = oracle_table(m, f, mode);
        INFO(mode_name(mode) << " " << print_formula(f) << "\n" << dump_structure(m));
        REQUIRE(ours.has_value() == ref.has_value());
        if (!ref) {
          ++unmeasurable;
          continue;
        }
        for (std::size_t i = 0; i < ref->size(); ++i) {
          for (StateIndex w = 0; w < m.num_states(); ++w) {
            Truth a = (*ours)[i][w], b = (*ref)[i][w];
            if (b == Truth::kUndefined) ++undefined_seen;
            if (a != b) {
              FAIL_CHECK("agent " << i + 1 << " state " << m.states[w] << ": library "
                                  << truth_text(a) << ", oracle " << truth_text(b));
            }
          }
        }
        ++compared;
      }
    }
  }
  MESSAGE(compared << " comparisons, " << undefined_seen << " undefined entries, "
                   << unmeasurable << " non-measurable queries");
  CHECK(compared > 3000);
  CHECK(undefined_seen > 0);
}

TEST_CASE("probability values agree with the oracle") {
  Rng rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    Structure m = any_model(rng, trial);
    FormulaOptions fo = formula_options_for(m, 2);
    Formula arg = random_formula(rng, fo);
    const AgentId j = 1 + static_cast<AgentId>(rng.below(m.num_agents()));
    Formula f = Formula::prob_ge(j, {{Rational(1, 2), arg}, {Rational(1, 3), F(m.props[0].c_str())}},
                                 Rational(1, 2));
    for (EvalMode mode : modes_for(m)) {
      Evaluator ev(m, mode);
      for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
        for (StateIndex w = 0; w < m.num_states(); ++w) {
          std::optional<Rational> ref;
          bool ref_nm = false, ours_nm = false;
          try {
            ref = brute::prob_value(m, w, i, f, mode);
          } catch (const NonMeasurable&) {
            ref_nm = true;
          }
          std::optional<Rational> ours;
          try {
            ours = ev.probability_sum(w, i, f);
          } catch (const NonMeasurable&) {
            ours_nm = true;
          } catch (const UndefinedConditional&) {
          }
          INFO(mode_name(mode) << " " << print_formula(f) << " at " << m.states[w] << ", " << i);
          // The oracle reports non-measurability for any argument it looks
          // at; the library only for the argument reader it needs.
          if (ours_nm) CHECK(ref_nm);
          if (ref_nm || ours_nm) continue;
          CHECK(ours.has_value() == ref.has_value());
          if (ours && ref) CHECK(*ours == *ref);
        }
      }
    }
  }
}

TEST_CASE("surface syntax and its expansion evaluate alike") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    Structure m = any_model(rng, trial);
    FormulaOptions fo = formula_options_for(m, 3);
    fo.full_surface = true;
    fo.props = {m.props[0]};
    Formula f = random_formula(rng, fo);
    if (contains_indexed(f)) continue;
    Formula core = expand(f, m.tautology_atom());
    for (EvalMode mode : modes_for(m)) {
      auto a = oracle_table(m, f, mode);
      auto b = oracle_table(m, core, mode);
      INFO(mode_name(mode) << " " << print_formula(f));
      CHECK(a.has_value() == b.has_value());
      if (a && b) CHECK(*a == *b);
    }
  }
}

TEST_CASE("innermost probability and common belief do not depend on the outer agent") {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Structure m = any_model(rng, trial);
    Formula f = random_formula(rng, formula_options_for(m, 3));
    Formula core = expand(f, m.tautology_atom());
    if (core.op() != Op::kProb && core.op() != Op::kCommonBelief) continue;
    std::vector<EvalMode> modes = {EvalMode::kInnermost};
    if (m.priors && m.signals) modes.push_back(EvalMode::kInnermostAI);
    for (EvalMode mode : modes) {
      auto t = oracle_table(m, f, mode);
      if (!t) continue;
      INFO(mode_name(mode) << " " << print_formula(f));
      for (const auto& row : *t) CHECK(row == t->front());
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("probability formulas are constant on the believing agent's cells") {
  // Holds wherever the belief relation of j depends only on j's cell: the
  // non-ai modes by construction and in-ai through A5. Under ou-ai another
  // agent may read j's signals differently at two states of one cell.
  Rng rng(6);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Structure m = any_model(rng, trial);
    Formula arg = random_formula(rng, formula_options_for(m, 2));
    const AgentId j = 1 + static_cast<AgentId>(rng.below(m.num_agents()));
    Formula f = Formula::prob_ge(j, {{Rational(1), arg}}, Rational(1, 2));
    for (EvalMode mode : modes_for(m)) {
      if (mode == EvalMode::kOutermostAI) continue;
      auto t = oracle_table(m, f, mode);
      if (!t) continue;
      for (const auto& row : *t) {
        for (StateIndex w = 0; w < m.num_states(); ++w) {
          for (StateIndex v : members(m.cell(j, w))) CHECK(row[v] == row[w]);
        }
      }
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("outermost-ai probabilities can differ within a cell") {
  // The ambiguity fixture: agent 1's cell is {a, b} but agent 2 reads its
  // signals s and t as {a} and {b}.
  Structure m = testing::fixture("m_ai");
  brute::Table t = brute::evaluate(m, F("Pr1(p) >= 1"), EvalMode::kOutermostAI);
  CHECK(t[1][m.state_index("a")] == Truth::kTrue);
  CHECK(t[1][m.state_index("b")] == Truth::kFalse);
}

TEST_CASE("a fact can hold without the agent believing it") {
  Rng rng(8);
  std::optional<std::string> witness;
  for (int trial = 0; trial < 200 && !witness; ++trial) {
    Structure m = random_structure(rng, small());
    const std::string p = m.props[0];
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()) && !witness; ++i) {
      for (StateIndex w = 0; w < m.num_states() && !witness; ++w) {
        if (eval({m, w, i, F(p.c_str()), EvalMode::kInnermost}) &&
            !eval({m, w, i, Formula::belief(i, F(p.c_str())), EvalMode::kInnermost})) {
          witness = m.states[w] + ", agent " + std::to_string(i) + "\n" + dump_structure(m);
        }
      }
    }
  }
  REQUIRE(witness.has_value());
  MESSAGE("witness: " << *witness);
}

TEST_CASE("probability of the tautology is the coefficient sum") {
  Rng rng(9);
  const std::vector<Rational> coeffs = {Rational(1), Rational(1, 2), Rational(-1, 3),
                                        Rational(2), Rational(-1)};
  const std::vector<Rational> bounds = {Rational(0), Rational(1, 2), Rational(1),
                                        Rational(3, 2), Rational(-1, 3), Rational(5, 6)};
  for (int trial = 0; trial < 200; ++trial) {
    Structure m = any_model(rng, trial);
    const AgentId j = 1 + static_cast<AgentId>(rng.below(m.num_agents()));
    std::vector<ProbTerm> terms;
    Rational sum;
    const int n = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < n; ++k) {
      Rational c = coeffs[rng.below(coeffs.size())];
      terms.push_back({c, Formula::truth()});
      sum += c;
    }
    Rational b = bounds[rng.below(bounds.size())];
    Formula f = Formula::prob_ge(j, terms, b);
    for (EvalMode mode : modes_for(m)) {
      auto t = library_table(m, f, mode);
      REQUIRE(t.has_value());
      for (const auto& row : *t) {
        for (Truth x : row) {
          // ai modes may still be undefined on a null conditioning event.
          if (x != Truth::kUndefined) CHECK((x == Truth::kTrue) == (sum >= b));
        }
      }
    }
  }
}

TEST_CASE("propositional formulas ignore the mode") {
  Rng rng(10);
  for (int trial = 0; trial < 300; ++trial) {
    Structure m = any_model(rng, trial);
    Formula f = random_formula(rng, formula_options_for(m, 4));
    if (!is_propositional(expand(f, m.tautology_atom()))) continue;
    std::vector<EvalMode> modes = modes_for(m);
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
      StateSet first = extension(m, i, f, modes.front());
      for (EvalMode mode : modes) CHECK(extension(m, i, f, mode) == first);
      CHECK(first == prop_extension(m, i, expand(f, m.tautology_atom())));
    }
  }
}

TEST_CASE("common-interpretation models make the modes agree") {
  Rng rng(12);
  StructureOptions opt;
  opt.common_interpretation = true;
  for (int trial = 0; trial < 200; ++trial) {
    opt.coarse_atoms = trial % 2 == 0;
    Structure m = random_structure(rng, small(), opt);
    Formula f = random_formula(rng, formula_options_for(m, 3));
    auto common = library_table(m, f, EvalMode::kCommon);
    INFO(print_formula(f));
    CHECK(library_table(m, f, EvalMode::kOutermost) == common);
    CHECK(library_table(m, f, EvalMode::kInnermost) == common);
  }
}

TEST_CASE("innermost-ai matches innermost on prior-generated models") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Structure m = random_ai_structure(
        rng, small(),
        trial % 2 == 0 ? SignalScheme::kCellLabels : SignalScheme::kCrossInterpretation);
    REQUIRE(validate_priors(m).ok());
    Formula f = random_formula(rng, formula_options_for(m, 3));
    INFO(print_formula(f));
    CHECK(library_table(m, f, EvalMode::kInnermostAI) ==
          library_table(m, f, EvalMode::kInnermost));
  }
}
