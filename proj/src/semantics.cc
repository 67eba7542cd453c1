#include "ambig/semantics.h"

#include <stdexcept>

#include "ambig/errors.h"
#include "ambig/syntax.h"

namespace ambig {

namespace {

std::string agent_text(AgentId a) { return "agent " + std::to_string(a); }

}  // namespace

Evaluator::Evaluator(const Structure& m, EvalMode mode) : m_(m), mode_(mode) {
  if (mode == EvalMode::kCommon && !is_common_interpretation(m)) {
    throw ModePrereqMissing("common mode needs a common-interpretation structure");
  }
  if (!is_ai_mode(mode)) return;
  if (!m.priors) throw ModePrereqMissing(std::string(mode_name(mode)) + " needs explicit priors");
  if (!m.signals) throw ModePrereqMissing(std::string(mode_name(mode)) + " needs signals");
  Report r = validate_signals(m);
  for (const Finding& f : r.findings()) {
    if (f.kind == "A6" && mode == EvalMode::kInnermostAI) continue;
    throw ModePrereqMissing(std::string(mode_name(mode)) + " needs valid signals: " +
                            f.message);
  }
}

Formula Evaluator::prepare(const Formula& f) const {
  if (is_core(f)) return f;
  return expand(f, m_.tautology_atom());
}

bool Evaluator::holds(StateIndex w, AgentId i, const Formula& f) {
  m_.agent(i);
  if (w >= m_.num_states()) throw UnknownState("state index out of range");
  const Extension& e = evaluate(i, prepare(f));
  if (e.undefined.test(w)) {
    throw UndefinedConditional("undefined at " + m_.states[w] + ": " + e.reason);
  }
  return e.holds.test(w);
}

StateSet Evaluator::extension(AgentId i, const Formula& f) {
  m_.agent(i);
  const Extension& e = evaluate(i, prepare(f));
  if (e.undefined.any()) {
    throw UndefinedConditional("undefined at " + set_text(m_, e.undefined) + ": " +
                               e.reason);
  }
  return e.holds;
}

const Extension& Evaluator::evaluate(AgentId i, const Formula& f) {
  // Under innermost scope, probability and common-belief formulas do not
  // depend on the outer agent.
  AgentId key = i;
  if (is_inner_mode(mode_) && (f.op() == Op::kProb || f.op() == Op::kCommonBelief)) {
    key = 0;
  }
  auto [it, fresh] = memo_.try_emplace(f.id(), MemoEntry{f, {}});
  auto found = it->second.by_agent.find(key);
  if (found != it->second.by_agent.end()) return found->second;
  Extension e = compute(i, f);
  // Recursion may have rehashed memo_; look the entry up again.
  return memo_.at(f.id()).by_agent.emplace(key, std::move(e)).first->second;
}

Extension Evaluator::compute(AgentId i, const Formula& f) {
  switch (f.op()) {
    case Op::kProp:
      return {m_.agent(i).interpretation[m_.prop_index(f.name())], m_.empty_set(), {}};
    case Op::kIndexedProp: {
      if (mode_ != EvalMode::kCommon) {
        throw ModePrereqMissing("indexed proposition " + f.name() + "@" +
                                std::to_string(f.agent()) +
                                " can only be evaluated in common mode");
      }
      std::string name = f.name() + "@" + std::to_string(f.agent());
      return {m_.agent(i).interpretation[m_.prop_index(name)], m_.empty_set(), {}};
    }
    case Op::kNot: {
      const Extension& a = evaluate(i, f.child(0));
      return {~a.holds - a.undefined, a.undefined, a.reason};
    }
    case Op::kAnd: {
      Extension a = evaluate(i, f.child(0));
      const Extension& b = evaluate(i, f.child(1));
      StateSet undef = a.undefined | b.undefined;
      return {(a.holds & b.holds) - undef, undef,
              a.reason.empty() ? b.reason : a.reason};
    }
    case Op::kProb:
      if (f.cmp() != Cmp::kGe) break;
      return compute_prob(i, f);
    case Op::kCommonBelief:
      return compute_common_belief(i, f);
    default:
      break;
  }
  throw std::logic_error("evaluator reached non-core syntax");
}

AgentId Evaluator::arg_reader(AgentId outer, AgentId j) const {
  return is_inner_mode(mode_) ? j : outer;
}

std::string Evaluator::null_event_text(AgentId j, StateIndex w, AgentId reader,
                                       const StateSet& event) const {
  return agent_text(j) + "'s signal " + print_formula((*m_.signals)[j - 1][w]) + " at " +
         m_.states[w] + " read by " + agent_text(reader) + " is " + set_text(m_, event) +
         ", which has prior mass 0";
}

const StateSet& Evaluator::signal_event(AgentId j, StateIndex w, AgentId reader) {
  long key = (static_cast<long>(j) * static_cast<long>(m_.num_agents() + 1) + reader) *
                 static_cast<long>(m_.num_states()) +
             static_cast<long>(w);
  auto it = signal_events_.find(key);
  if (it != signal_events_.end()) return it->second;
  Formula sig = expand((*m_.signals)[j - 1][w], m_.tautology_atom());
  return signal_events_.emplace(key, prop_extension(m_, reader, sig)).first->second;
}

Extension Evaluator::compute_prob(AgentId i, const Formula& f) {
  const AgentId j = f.agent();
  m_.agent(j);
  const AgentId reader = arg_reader(i, j);
  // Memo entries are node-stable, so pointers survive later evaluations.
  std::vector<const Extension*> args;
  args.reserve(f.arity());
  for (const Formula& a : f.children()) args.push_back(&evaluate(reader, a));

  Extension out{m_.empty_set(), m_.empty_set(), {}};
  auto mark_undefined = [&](const StateSet& where, const std::string& why) {
    out.undefined |= where;
    if (out.reason.empty()) out.reason = why;
  };

  if (!is_ai_mode(mode_)) {
    const AgentModel& am = m_.agent(j);
    for (std::size_t c = 0; c < am.cells.size(); ++c) {
      const CellBelief& b = am.beliefs[c];
      const StateSet support = belief_support(b);
      bool undefined = false;
      Rational value;
      for (std::size_t k = 0; k < args.size(); ++k) {
        const Extension& e = *args[k];
        if (e.undefined.intersects(support)) {
          mark_undefined(am.cells[c], e.reason);
          undefined = true;
          break;
        }
        try {
          value += f.coeffs()[k] * cell_measure(b, e.holds);
        } catch (const NonMeasurable&) {
          throw NonMeasurable(agent_text(j) + " cannot measure the event " +
                              set_text(m_, e.holds & b.sample_space) + " at " +
                              m_.states[am.cells[c].find_first()]);
        }
      }
      if (!undefined && value >= f.bound()) out.holds |= am.cells[c];
    }
    return out;
  }

  const Prior& nu = (*m_.priors)[j - 1];
  const AgentId signal_reader = mode_ == EvalMode::kOutermostAI ? i : j;
  for (StateIndex w = 0; w < m_.num_states(); ++w) {
    const StateSet& event = signal_event(j, w, signal_reader);
    Rational mass = prior_measure(nu, event);
    if (mass.is_zero()) {
      mark_undefined(m_.singleton(w), null_event_text(j, w, signal_reader, event));
      continue;
    }
    StateSet positive = m_.empty_set();
    for (StateIndex v : members(event)) {
      if (nu[v].sign() > 0) positive.set(v);
    }
    bool undefined = false;
    Rational value;
    for (std::size_t k = 0; k < args.size(); ++k) {
      const Extension& e = *args[k];
      if (e.undefined.intersects(positive)) {
        mark_undefined(m_.singleton(w), e.reason);
        undefined = true;
        break;
      }
      value += f.coeffs()[k] * prior_measure(nu, e.holds & event);
    }
    if (!undefined && value / mass >= f.bound()) out.holds.set(w);
  }
  return out;
}

const Evaluator::Edges& Evaluator::edges(AgentId outer, AgentId j) {
  if (mode_ != EvalMode::kOutermostAI) outer = 0;
  long key = static_cast<long>(outer) * static_cast<long>(m_.num_agents() + 1) + j;
  auto it = edges_.find(key);
  if (it != edges_.end()) return it->second;

  Edges out;
  for (StateIndex w = 0; w < m_.num_states(); ++w) {
    if (!is_ai_mode(mode_)) {
      out.succ.emplace_back(belief_support(m_.belief(j, w)));
      out.reason.emplace_back();
      continue;
    }
    const AgentId reader = mode_ == EvalMode::kOutermostAI ? outer : j;
    const StateSet& event = signal_event(j, w, reader);
    const Prior& nu = (*m_.priors)[j - 1];
    StateSet positive = m_.empty_set();
    for (StateIndex v : members(event)) {
      if (nu[v].sign() > 0) positive.set(v);
    }
    if (positive.none()) {
      out.succ.emplace_back(std::nullopt);
      out.reason.push_back(null_event_text(j, w, reader, event));
    } else {
      out.succ.emplace_back(std::move(positive));
      out.reason.emplace_back();
    }
  }
  return edges_.emplace(key, std::move(out)).first->second;
}

Extension Evaluator::compute_common_belief(AgentId i, const Formula& f) {
  const AgentSet& g = f.group();
  const Formula& body = f.child(0);
  const bool inner = is_inner_mode(mode_);

  // End checks: the body as read by the last edge's agent (innermost) or by
  // the outer agent throughout (outermost, common).
  std::vector<Extension> check;
  std::vector<const Edges*> rel;
  for (AgentId j : g) {
    m_.agent(j);
    check.push_back(evaluate(inner ? j : i, body));
    rel.push_back(&edges(i, j));
  }

  Extension out{m_.empty_set(), m_.empty_set(), {}};
  const std::size_t n = m_.num_states();
  for (StateIndex start = 0; start < n; ++start) {
    std::vector<StateSet> seen(g.size(), StateSet(n));
    std::vector<std::pair<StateIndex, std::size_t>> todo;
    bool undefined = false, failed = false;
    std::string why;

    auto expand_from = [&](StateIndex v) {
      for (std::size_t l = 0; l < g.size(); ++l) {
        const auto& succ = rel[l]->succ[v];
        if (!succ) {
          undefined = true;
          if (why.empty()) why = rel[l]->reason[v];
          continue;
        }
        StateSet fresh = *succ - seen[l];
        seen[l] |= fresh;
        for (StateIndex u : members(fresh)) todo.emplace_back(u, l);
      }
    };

    expand_from(start);
    while (!todo.empty()) {
      auto [v, l] = todo.back();
      todo.pop_back();
      const Extension& c = check[l];
      if (c.undefined.test(v)) {
        undefined = true;
        if (why.empty()) why = c.reason;
      } else if (!c.holds.test(v)) {
        failed = true;
      }
      expand_from(v);
    }
    if (undefined) {
      out.undefined.set(start);
      if (out.reason.empty()) out.reason = why;
    } else if (!failed) {
      out.holds.set(start);
    }
  }
  return out;
}

Rational Evaluator::probability_sum(StateIndex w, AgentId i, const Formula& prob) {
  if (prob.op() != Op::kProb) throw std::invalid_argument("not a probability formula");
  const AgentId j = prob.agent();
  m_.agent(i);
  m_.agent(j);
  const AgentId reader = arg_reader(i, j);
  Rational value;
  if (!is_ai_mode(mode_)) {
    const CellBelief& b = m_.belief(j, w);
    for (std::size_t k = 0; k < prob.arity(); ++k) {
      const Extension& e = evaluate(reader, prepare(prob.child(k)));
      if (e.undefined.intersects(belief_support(b))) throw UndefinedConditional(e.reason);
      value += prob.coeffs()[k] * cell_measure(b, e.holds);
    }
    return value;
  }
  const AgentId signal_reader = mode_ == EvalMode::kOutermostAI ? i : j;
  const StateSet& event = signal_event(j, w, signal_reader);
  const Prior& nu = (*m_.priors)[j - 1];
  Rational mass = prior_measure(nu, event);
  if (mass.is_zero()) throw UndefinedConditional(null_event_text(j, w, signal_reader, event));
  StateSet positive = m_.empty_set();
  for (StateIndex v : members(event)) {
    if (nu[v].sign() > 0) positive.set(v);
  }
  for (std::size_t k = 0; k < prob.arity(); ++k) {
    const Extension& e = evaluate(reader, prepare(prob.child(k)));
    if (e.undefined.intersects(positive)) throw UndefinedConditional(e.reason);
    value += prob.coeffs()[k] * prior_measure(nu, e.holds & event);
  }
  return value / mass;
}

bool eval(const EvalQuery& q) {
  Evaluator ev(q.model, q.mode);
  return ev.holds(q.state, q.agent, q.formula);
}

StateSet extension(const Structure& m, AgentId i, const Formula& f, EvalMode mode) {
  Evaluator ev(m, mode);
  return ev.extension(i, f);
}

StateSet common_belief_set(const Structure& m, const AgentSet& g, const Formula& f,
                           EvalMode mode, AgentId outer) {
  Evaluator ev(m, mode);
  return ev.extension(outer, Formula::common_belief(g, ev.prepare(f)));
}

std::vector<StateSet> eb_chain(Evaluator& ev, const AgentSet& g, const Formula& f,
                               int k, AgentId outer) {
  if (k < 1) throw std::invalid_argument("EB power must be at least 1");
  std::vector<StateSet> out;
  Formula level = ev.prepare(f);
  for (int step = 0; step < k; ++step) {
    std::optional<Formula> next;
    for (AgentId j : g) {
      Formula b = belief_core(j, level);
      next = next ? Formula::conj(*next, b) : b;
    }
    level = *next;
    out.push_back(ev.extension(outer, level));
  }
  return out;
}

StateSet eb_k(const Structure& m, const AgentSet& g, const Formula& f, int k,
              EvalMode mode, AgentId outer) {
  Evaluator ev(m, mode);
  return eb_chain(ev, g, f, k, outer).back();
}

Report valid_in_model(const Structure& m, const Formula& f, EvalMode mode) {
  Evaluator ev(m, mode);
  Report r;
  for (StateIndex w = 0; w < m.num_states(); ++w) {
    for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
      if (!ev.holds(w, i, f)) {
        r.add("counterexample",
              "fails at " + m.states[w] + " for agent " + std::to_string(i),
              {{"state", m.states[w]}, {"agent", i}});
        return r;
      }
    }
  }
  return r;
}

}  // namespace ambig
