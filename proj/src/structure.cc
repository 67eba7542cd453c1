#include "ambig/structure.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ambig/errors.h"

namespace ambig {

std::string_view mode_name(EvalMode mode) {
  switch (mode) {
    case EvalMode::kCommon: return "common";
    case EvalMode::kOutermost: return "ou";
    case EvalMode::kInnermost: return "in";
    case EvalMode::kOutermostAI: return "ou-ai";
    case EvalMode::kInnermostAI: return "in-ai";
  }
  return "?";
}

EvalMode parse_mode(std::string_view name) {
  for (EvalMode m : {EvalMode::kCommon, EvalMode::kOutermost, EvalMode::kInnermost,
                     EvalMode::kOutermostAI, EvalMode::kInnermostAI}) {
    if (mode_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected common, ou, in, ou-ai or in-ai)");
}

const AgentModel& Structure::agent(AgentId i) const {
  if (i < 1 || static_cast<std::size_t>(i) > agents.size()) {
    throw UnknownAgent("no agent " + std::to_string(i) + " in a structure with " +
                       std::to_string(agents.size()) + " agents");
  }
  return agents[i - 1];
}

AgentModel& Structure::agent(AgentId i) {
  return const_cast<AgentModel&>(std::as_const(*this).agent(i));
}

StateIndex Structure::state_index(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) throw UnknownState("unknown state '" + std::string(name) + "'");
  return static_cast<StateIndex>(it - states.begin());
}

std::optional<std::size_t> Structure::find_prop(std::string_view name) const {
  auto it = std::find(props.begin(), props.end(), name);
  if (it == props.end()) return std::nullopt;
  return static_cast<std::size_t>(it - props.begin());
}

std::size_t Structure::prop_index(std::string_view name) const {
  if (auto k = find_prop(name)) return *k;
  throw UnknownProp("unknown proposition '" + std::string(name) + "'");
}

void Structure::finalize() {
  const std::size_t n = states.size();
  if (n == 0) throw ModelFormatError("structure needs at least one state");
  if (agents.empty()) throw ModelFormatError("structure needs at least one agent");
  if (props.empty()) throw ModelFormatError("structure needs at least one proposition");
  if (std::set<std::string>(states.begin(), states.end()).size() != n) {
    throw ModelFormatError("duplicate state name");
  }
  if (std::set<std::string>(props.begin(), props.end()).size() != props.size()) {
    throw ModelFormatError("duplicate proposition name");
  }
  for (std::size_t a = 0; a < agents.size(); ++a) {
    AgentModel& am = agents[a];
    const std::string who = "agent " + std::to_string(a + 1);
    am.cell_of.assign(n, n);
    for (std::size_t c = 0; c < am.cells.size(); ++c) {
      const StateSet& cell = am.cells[c];
      if (cell.size() != n) throw ModelFormatError(who + ": cell sized wrongly");
      if (cell.none()) throw ModelFormatError(who + ": empty partition cell");
      for (StateIndex w : members(cell)) {
        if (am.cell_of[w] != n) {
          throw ModelFormatError(who + ": state '" + states[w] +
                                 "' lies in two partition cells");
        }
        am.cell_of[w] = c;
      }
    }
    for (StateIndex w = 0; w < n; ++w) {
      if (am.cell_of[w] == n) {
        throw ModelFormatError(who + ": partition does not cover state '" +
                               states[w] + "'");
      }
    }
    if (am.beliefs.size() != am.cells.size()) {
      throw ModelFormatError(who + ": need one probability space per cell");
    }
    for (const CellBelief& b : am.beliefs) {
      if (b.atoms.size() != b.mass.size() || b.sample_space.size() != n) {
        throw ModelFormatError(who + ": malformed probability space");
      }
      for (const StateSet& atom : b.atoms) {
        if (atom.size() != n) throw ModelFormatError(who + ": malformed atom");
      }
    }
    if (am.interpretation.size() != props.size()) {
      throw ModelFormatError(who + ": interpretation must cover every proposition");
    }
    for (const StateSet& s : am.interpretation) {
      if (s.size() != n) throw ModelFormatError(who + ": malformed interpretation");
    }
  }
  if (priors) {
    if (priors->size() != agents.size()) {
      throw ModelFormatError("priors must be given for every agent");
    }
    for (const Prior& p : *priors) {
      if (p.size() != n) throw ModelFormatError("prior sized wrongly");
    }
  }
  if (signals) {
    if (signals->size() != agents.size()) {
      throw ModelFormatError("signals must be given for every agent");
    }
    for (const auto& per_state : *signals) {
      if (per_state.size() != n) {
        throw ModelFormatError("signals must be given for every state");
      }
    }
  }
}

std::vector<StateIndex> members(const StateSet& s) {
  std::vector<StateIndex> out;
  for (auto k = s.find_first(); k != StateSet::npos; k = s.find_next(k)) {
    out.push_back(k);
  }
  return out;
}

std::string set_text(const Structure& m, const StateSet& s) {
  std::string out = "{";
  bool first = true;
  for (StateIndex w : members(s)) {
    if (!first) out += ",";
    out += m.states[w];
    first = false;
  }
  return out + "}";
}

nlohmann::json set_json(const Structure& m, const StateSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (StateIndex w : members(s)) out.push_back(m.states[w]);
  return out;
}

Rational cell_measure(const CellBelief& cell, const StateSet& event) {
  Rational total;
  StateSet inside = event & cell.sample_space;
  for (std::size_t k = 0; k < cell.atoms.size(); ++k) {
    const StateSet& atom = cell.atoms[k];
    StateSet hit = atom & inside;
    if (hit.none()) continue;
    if (hit != atom) throw NonMeasurable("event splits an algebra atom");
    total += cell.mass[k];
    inside -= atom;
  }
  if (inside.any()) throw NonMeasurable("event is not covered by algebra atoms");
  return total;
}

StateSet belief_support(const CellBelief& cell) {
  StateSet s(cell.sample_space.size());
  for (std::size_t k = 0; k < cell.atoms.size(); ++k) {
    if (cell.mass[k].sign() > 0) s |= cell.atoms[k];
  }
  return s;
}

Rational prior_measure(const Prior& prior, const StateSet& event) {
  Rational total;
  for (StateIndex w : members(event)) total += prior[w];
  return total;
}

StateSet prop_extension(const Structure& m, AgentId i, const Formula& f) {
  const AgentModel& a = m.agent(i);
  switch (f.op()) {
    case Op::kProp:
      return a.interpretation[m.prop_index(f.name())];
    case Op::kNot:
      return ~prop_extension(m, i, f.child(0));
    case Op::kAnd:
      return prop_extension(m, i, f.child(0)) & prop_extension(m, i, f.child(1));
    default:
      throw NotPropositional("not a propositional formula");
  }
}

StateSet reachable(const Structure& m, const AgentSet& g, StateIndex w) {
  if (g.empty()) throw UnknownAgent("reachability needs a nonempty group");
  StateSet seen = m.singleton(w);
  std::vector<StateIndex> todo{w};
  while (!todo.empty()) {
    StateIndex v = todo.back();
    todo.pop_back();
    for (AgentId i : g) {
      StateSet fresh = m.cell(i, v) - seen;
      for (StateIndex u : members(fresh)) todo.push_back(u);
      seen |= fresh;
    }
  }
  return seen;
}

std::vector<StateSet> belief_edges(const Structure& m, EvalMode mode,
                                   AgentId outer, AgentId j) {
  m.agent(outer);
  std::vector<StateSet> succ;
  succ.reserve(m.num_states());
  for (StateIndex w = 0; w < m.num_states(); ++w) {
    if (!is_ai_mode(mode)) {
      succ.push_back(belief_support(m.belief(j, w)));
      continue;
    }
    if (!m.priors || !m.signals) {
      throw ModePrereqMissing("ai belief relation needs priors and signals");
    }
    AgentId reader = mode == EvalMode::kOutermostAI ? outer : j;
    Formula signal = expand((*m.signals)[j - 1][w], m.tautology_atom());
    StateSet event = prop_extension(m, reader, signal);
    const Prior& prior = (*m.priors)[j - 1];
    if (prior_measure(prior, event).is_zero()) {
      throw UndefinedConditional("agent " + std::to_string(j) + "'s signal at " +
                                 m.states[w] + " read by agent " +
                                 std::to_string(reader) + " is " +
                                 set_text(m, event) + ", which has prior mass 0");
    }
    StateSet s = m.empty_set();
    for (StateIndex v : members(event)) {
      if (prior[v].sign() > 0) s.set(v);
    }
    succ.push_back(std::move(s));
  }
  return succ;
}

bool is_common_interpretation(const Structure& m) {
  for (std::size_t a = 1; a < m.agents.size(); ++a) {
    if (m.agents[a].interpretation != m.agents[0].interpretation) return false;
  }
  return true;
}

bool has_identical_priors(const Structure& m) {
  if (!m.priors) return false;
  for (const Prior& p : *m.priors) {
    if (p != m.priors->front()) return false;
  }
  return true;
}

}  // namespace ambig
