#include "ambig/transforms.h"

#include <set>

#include "ambig/errors.h"
#include "ambig/semantics.h"
#include "ambig/syntax.h"

namespace ambig {

namespace {

StateSet map_set(const StateSet& s, const std::vector<StateIndex>& to, std::size_t n) {
  StateSet out(n);
  for (StateIndex w : members(s)) out.set(to[w]);
  return out;
}

std::string fresh_name(const std::set<std::string>& taken, AgentId i, std::size_t k) {
  std::string base = "p_" + std::to_string(i) + "_c" + std::to_string(k);
  std::string name = base;
  for (int suffix = 1; taken.count(name); ++suffix) {
    name = base + "_" + std::to_string(suffix);
  }
  return name;
}

}  // namespace

Structure fix_interpretation(const Structure& m, AgentId i) {
  Structure out = m;
  const std::vector<StateSet> pi = m.agent(i).interpretation;
  for (AgentModel& a : out.agents) a.interpretation = pi;
  return out;
}

Transformed disjoint_copies(const Structure& m) {
  const std::size_t n = m.num_states();
  const std::size_t k = m.num_agents();
  const std::size_t total = n * k;
  // Copy j of state w sits at w * k + (j - 1).
  auto at = [k](StateIndex w, AgentId j) { return w * k + static_cast<std::size_t>(j - 1); };
  auto spread = [&](const StateSet& s, std::optional<AgentId> only) {
    StateSet out(total);
    for (StateIndex w : members(s)) {
      for (AgentId j = 1; j <= static_cast<AgentId>(k); ++j) {
        if (!only || *only == j) out.set(at(w, j));
      }
    }
    return out;
  };

  Transformed t;
  Structure& out = t.model;
  out.props = m.props;
  for (StateIndex w = 0; w < n; ++w) {
    for (AgentId j = 1; j <= static_cast<AgentId>(k); ++j) {
      out.states.push_back(m.states[w] + "#" + std::to_string(j));
      t.map.push_back({w, j});
    }
  }
  std::vector<StateSet> shared(m.props.size(), StateSet(total));
  for (std::size_t p = 0; p < m.props.size(); ++p) {
    for (AgentId j = 1; j <= static_cast<AgentId>(k); ++j) {
      shared[p] |= spread(m.agent(j).interpretation[p], j);
    }
  }
  for (AgentId i = 1; i <= static_cast<AgentId>(k); ++i) {
    const AgentModel& a = m.agent(i);
    AgentModel b;
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      b.cells.push_back(spread(a.cells[c], std::nullopt));
      const CellBelief& old = a.beliefs[c];
      CellBelief nb;
      nb.sample_space = spread(old.sample_space, std::nullopt);
      for (std::size_t x = 0; x < old.atoms.size(); ++x) {
        for (AgentId j = 1; j <= static_cast<AgentId>(k); ++j) {
          nb.atoms.push_back(spread(old.atoms[x], j));
          nb.mass.push_back(j == i ? old.mass[x] : Rational(0));
        }
      }
      b.beliefs.push_back(std::move(nb));
    }
    b.interpretation = shared;
    out.agents.push_back(std::move(b));
  }
  out.finalize();
  return t;
}

Transformed label_partitions(const Structure& m, StateIndex w) {
  if (!is_common_interpretation(m)) {
    throw NotCommonInterpretation("label_partitions needs a common-interpretation structure");
  }
  AgentSet everyone;
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) everyone.push_back(i);
  const StateSet keep = reachable(m, everyone, w);
  const std::size_t n = keep.count();

  Transformed t;
  Structure& out = t.model;
  std::vector<StateIndex> to(m.num_states(), n);
  for (StateIndex v : members(keep)) {
    to[v] = out.states.size();
    out.states.push_back(m.states[v]);
    t.map.push_back({v, std::nullopt});
  }
  out.props = m.props;
  std::set<std::string> taken(m.props.begin(), m.props.end());

  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    const AgentModel& a = m.agent(i);
    AgentModel b;
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      if (!(a.cells[c] & keep).any()) continue;
      b.cells.push_back(map_set(a.cells[c] & keep, to, n));
      const CellBelief& old = a.beliefs[c];
      CellBelief nb;
      nb.sample_space = map_set(old.sample_space & keep, to, n);
      for (std::size_t x = 0; x < old.atoms.size(); ++x) {
        StateSet atom = old.atoms[x] & keep;
        if (atom.none()) continue;
        nb.atoms.push_back(map_set(atom, to, n));
        nb.mass.push_back(old.mass[x]);
      }
      b.beliefs.push_back(std::move(nb));
    }
    for (const StateSet& s : a.interpretation) b.interpretation.push_back(map_set(s & keep, to, n));
    out.agents.push_back(std::move(b));
  }

  std::vector<std::vector<Formula>> signals(m.num_agents(), std::vector<Formula>(n, Formula::truth()));
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    const AgentModel& b = out.agents[i - 1];
    for (std::size_t c = 0; c < b.cells.size(); ++c) {
      std::string name = fresh_name(taken, i, c);
      taken.insert(name);
      out.props.push_back(name);
      t.fresh.push_back({name, i, b.cells[c]});
      for (StateIndex v : members(b.cells[c])) signals[i - 1][v] = Formula::prop(name);
    }
  }
  for (AgentModel& b : out.agents) {
    for (const FreshProp& f : t.fresh) b.interpretation.push_back(f.cell);
  }
  out.signals = std::move(signals);
  out.finalize();
  out.priors = generate_priors(out);
  return t;
}

std::string_view claim_name(TransformClaim c) {
  switch (c) {
    case TransformClaim::kFixInterpretation: return "a=>b";
    case TransformClaim::kDisjointCopies: return "a=>c";
    case TransformClaim::kLabelPartitions: return "d=>a";
  }
  return "?";
}

namespace {

void check_map(const Structure& m, const Structure& d, const StateMap& map,
               TransformClaim claim, AgentId agent) {
  auto fail = [&](const std::string& why) {
    throw ClaimSpecMismatch(std::string(claim_name(claim)) + ": " + why);
  };
  if (map.size() != d.num_states()) fail("state map does not cover the derived structure");
  if (d.num_agents() != m.num_agents()) fail("agent counts differ");
  std::set<std::pair<StateIndex, AgentId>> seen;
  for (const StateOrigin& o : map) {
    if (o.old >= m.num_states()) fail("state map points outside the source structure");
    if (!seen.insert({o.old, o.tag.value_or(0)}).second) fail("state map is not injective");
    if (claim == TransformClaim::kDisjointCopies) {
      if (!o.tag || *o.tag < 1 || *o.tag > static_cast<AgentId>(m.num_agents())) {
        fail("disjoint copies need an agent tag on every state");
      }
    } else if (o.tag) {
      fail("unexpected copy tag");
    }
  }
  switch (claim) {
    case TransformClaim::kFixInterpretation:
      m.agent(agent);
      if (map.size() != m.num_states()) fail("state map must be a bijection");
      for (StateIndex w = 0; w < map.size(); ++w) {
        if (map[w].old != w) fail("state map must be the identity");
      }
      break;
    case TransformClaim::kDisjointCopies:
      if (map.size() != m.num_states() * m.num_agents()) fail("need one copy per agent");
      break;
    case TransformClaim::kLabelPartitions:
      if (!is_common_interpretation(m)) fail("source must be common-interpretation");
      break;
  }
  if (!is_common_interpretation(d)) fail("derived structure is not common-interpretation");
}

}  // namespace

Report verify_transform_equivalence(const Structure& m, const Structure& derived,
                                    const StateMap& map,
                                    const std::vector<Formula>& formulas,
                                    TransformClaim claim, AgentId agent) {
  check_map(m, derived, map, claim, agent);
  const EvalMode left_mode = claim == TransformClaim::kFixInterpretation ? EvalMode::kOutermost
                             : claim == TransformClaim::kDisjointCopies ? EvalMode::kInnermost
                                                                         : EvalMode::kCommon;
  Evaluator left(m, left_mode);
  Evaluator right(derived, EvalMode::kCommon);
  Report r;
  const auto n_agents = static_cast<AgentId>(m.num_agents());
  for (const Formula& f : formulas) {
    auto compare = [&](StateIndex new_w, AgentId new_i, StateIndex old_w, AgentId old_i) {
      bool a = left.holds(old_w, old_i, f);
      bool b = right.holds(new_w, new_i, f);
      if (a == b) return true;
      r.add("mismatch",
            std::string(claim_name(claim)) + " fails for " + print_formula(f) + " at " +
                derived.states[new_w],
            {{"claim", claim_name(claim)},
             {"formula", print_formula(f)},
             {"state", m.states[old_w]},
             {"agent", old_i},
             {"derived_state", derived.states[new_w]},
             {"derived_agent", new_i},
             {"mode", mode_name(left_mode)},
             {"source_value", a},
             {"derived_value", b}});
      return false;
    };
    bool ok = true;
    for (StateIndex w = 0; ok && w < derived.num_states(); ++w) {
      const StateOrigin& o = map[w];
      switch (claim) {
        case TransformClaim::kFixInterpretation:
          ok = compare(w, agent, o.old, agent);
          break;
        case TransformClaim::kDisjointCopies:
          for (AgentId i = 1; ok && i <= n_agents; ++i) ok = compare(w, i, o.old, *o.tag);
          break;
        case TransformClaim::kLabelPartitions:
          for (AgentId i = 1; ok && i <= n_agents; ++i) ok = compare(w, i, o.old, i);
          break;
      }
    }
  }
  return r;
}

}  // namespace ambig
