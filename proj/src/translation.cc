#include "ambig/translation.h"

#include <map>
#include <utility>

#include "ambig/errors.h"
#include "ambig/semantics.h"
#include "ambig/syntax.h"

namespace ambig {

Structure lift_to_indexed(const Structure& m) {
  Structure out;
  out.states = m.states;
  out.priors = m.priors;
  std::vector<StateSet> shared;
  for (std::size_t p = 0; p < m.props.size(); ++p) {
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
      out.props.push_back(m.props[p] + "@" + std::to_string(i));
      shared.push_back(m.agent(i).interpretation[p]);
    }
  }
  for (const AgentModel& a : m.agents) {
    AgentModel b = a;
    b.interpretation = shared;
    out.agents.push_back(std::move(b));
  }
  out.finalize();
  return out;
}

namespace {

class Translator {
 public:
  explicit Translator(Scope scope) : scope_(scope) {}

  Formula run(const Formula& f, AgentId i) {
    // Probability and CB subtrees do not depend on i under innermost scope.
    AgentId key = i;
    if (scope_ != Scope::kOutermost &&
        (f.op() == Op::kProb || (f.op() == Op::kCommonBelief && scope_ == Scope::kInnermost))) {
      key = 0;
    }
    auto it = memo_.find({f.id(), key});
    if (it != memo_.end()) return it->second;
    Formula out = step(f, i);
    keep_.push_back(f);
    memo_.emplace(std::make_pair(f.id(), key), out);
    return out;
  }

 private:
  Formula step(const Formula& f, AgentId i) {
    switch (f.op()) {
      case Op::kProp:
        return Formula::indexed(f.name(), i);
      case Op::kIndexedProp:
        throw AlreadyIndexed("formula already contains indexed proposition " + f.name() +
                             "@" + std::to_string(f.agent()));
      case Op::kNot:
        return Formula::negate(run(f.child(0), i));
      case Op::kAnd:
        return Formula::conj(run(f.child(0), i), run(f.child(1), i));
      case Op::kProb: {
        const AgentId reader = scope_ == Scope::kOutermost ? i : f.agent();
        std::vector<ProbTerm> terms;
        for (std::size_t k = 0; k < f.arity(); ++k) {
          terms.push_back({f.coeffs()[k], run(f.child(k), reader)});
        }
        return Formula::prob(f.agent(), std::move(terms), f.cmp(), f.bound());
      }
      case Op::kCommonBelief: {
        if (scope_ != Scope::kInnermost) {
          return Formula::common_belief(f.group(), run(f.child(0), i));
        }
        std::optional<Formula> body;
        for (AgentId j : f.group()) {
          Formula b = Formula::belief(j, run(f.child(0), j));
          body = body ? Formula::conj(*body, b) : b;
        }
        return Formula::common_belief(f.group(), *body);
      }
      default:
        break;
    }
    throw std::logic_error("translation reached non-core syntax");
  }

  Scope scope_;
  std::map<std::pair<const void*, AgentId>, Formula> memo_;
  std::vector<Formula> keep_;
};

}  // namespace

Formula translate(const Formula& f, AgentId i, Scope scope,
                  std::optional<Formula> tautology_atom) {
  if (i < 1) throw UnknownAgent("agent indices start at 1");
  if (contains_indexed(f)) {
    throw AlreadyIndexed("formula already contains indexed propositions: " + print_formula(f));
  }
  if (!tautology_atom) {
    std::vector<std::string> names = prop_names(f);
    tautology_atom = Formula::prop(names.empty() ? "p" : names.front());
  }
  Translator t(scope);
  return t.run(expand(f, *tautology_atom), i);
}

Formula translate_in(const Formula& f, AgentId i, std::optional<Formula> tautology_atom) {
  return translate(f, i, Scope::kInnermost, std::move(tautology_atom));
}

Formula translate_ou(const Formula& f, AgentId i, std::optional<Formula> tautology_atom) {
  return translate(f, i, Scope::kOutermost, std::move(tautology_atom));
}

namespace {

const char* scope_name(Scope s) {
  switch (s) {
    case Scope::kInnermost: return "in";
    case Scope::kOutermost: return "ou";
    case Scope::kNaiveInnermost: return "in-naive";
  }
  return "?";
}

}  // namespace

Report verify_theorem2(const Structure& m, const std::vector<Formula>& corpus,
                       std::vector<Scope> scopes) {
  const Structure lifted = lift_to_indexed(m);
  Evaluator lifted_eval(lifted, EvalMode::kCommon);
  Report r;
  for (Scope scope : scopes) {
    Evaluator source(m, scope == Scope::kOutermost ? EvalMode::kOutermost : EvalMode::kInnermost);
    for (const Formula& f : corpus) {
      const Formula core = source.prepare(f);
      bool ok = true;
      for (AgentId i = 1; ok && i <= static_cast<AgentId>(m.num_agents()); ++i) {
        const Formula t = translate(core, i, scope, m.tautology_atom());
        const StateSet left = source.extension(i, core);
        // Common mode: every agent reads the lifted propositions alike.
        const StateSet right = lifted_eval.extension(1, t);
        if (left == right) continue;
        StateIndex w = (left ^ right).find_first();
        r.add("mismatch",
              std::string("translation (") + scope_name(scope) + ") disagrees for " +
                  print_formula(f) + " at " + m.states[w] + ", agent " + std::to_string(i),
              {{"scope", scope_name(scope)},
               {"formula", print_formula(f)},
               {"translated", print_formula(t)},
               {"state", m.states[w]},
               {"agent", i},
               {"source_value", static_cast<bool>(left.test(w))},
               {"translated_value", static_cast<bool>(right.test(w))}});
        ok = false;
      }
    }
  }
  return r;
}

}  // namespace ambig
