// Assumption checks on structures and prior generation.

#include "ambig/errors.h"
#include "ambig/structure.h"

namespace ambig {

namespace {

using nlohmann::json;

bool measurable(const CellBelief& cell, const StateSet& event) {
  try {
    cell_measure(cell, event);
    return true;
  } catch (const NonMeasurable&) {
    return false;
  }
}

void check_algebra(const Structure& m, AgentId i, StateIndex rep,
                   const CellBelief& b, Report& r) {
  StateSet seen = m.empty_set();
  for (const StateSet& atom : b.atoms) {
    if (atom.none() || (atom & seen).any()) {
      r.add("algebra",
            "agent " + std::to_string(i) + "'s atoms at " + m.states[rep] +
                " do not partition the sample space",
            {{"agent", i}, {"state", m.states[rep]}, {"atom", set_json(m, atom)}});
      return;
    }
    seen |= atom;
  }
  if (seen != b.sample_space) {
    r.add("algebra",
          "agent " + std::to_string(i) + "'s atoms at " + m.states[rep] +
              " do not cover the sample space",
          {{"agent", i}, {"state", m.states[rep]}});
  }
}

}  // namespace

Report validate_core(const Structure& m) {
  Report r;
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    const AgentModel& a = m.agent(i);
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      const StateSet& cell = a.cells[c];
      const CellBelief& b = a.beliefs[c];
      StateIndex rep = cell.find_first();
      const std::string at = m.states[rep];
      const std::string who = "agent " + std::to_string(i);

      if (b.sample_space != cell) {
        r.add("A1", who + "'s sample space at " + at + " is not its partition cell",
              {{"agent", i}, {"state", at}, {"cell", set_json(m, cell)},
               {"sample_space", set_json(m, b.sample_space)}});
      }
      check_algebra(m, i, rep, b, r);

      Rational sum;
      for (const Rational& x : b.mass) {
        if (x.sign() < 0) {
          r.add("measure-negative", who + " has a negative mass at " + at,
                {{"agent", i}, {"state", at}, {"value", x.str()}});
        }
        sum += x;
      }
      if (sum != Rational(1)) {
        r.add("measure-sum", who + "'s measure at " + at + " sums to " + sum.str(),
              {{"agent", i}, {"state", at}, {"sum", sum.str()}});
      }

      for (AgentId j = 1; j <= static_cast<AgentId>(m.num_agents()); ++j) {
        for (const StateSet& other : m.agent(j).cells) {
          StateSet meet = cell & other;
          if (meet.none() || measurable(b, meet)) continue;
          r.add("A3",
                who + "'s cell at " + at + " meets a cell of agent " +
                    std::to_string(j) + " in a non-measurable set",
                {{"agent", i}, {"other_agent", j}, {"state", at},
                 {"other_state", m.states[other.find_first()]},
                 {"set", set_json(m, meet)}});
        }
      }
      for (std::size_t p = 0; p < m.props.size(); ++p) {
        StateSet meet = cell & a.interpretation[p];
        if (meet.none() || measurable(b, meet)) continue;
        r.add("A4",
              who + "'s reading of " + m.props[p] + " is not measurable at " + at,
              {{"agent", i}, {"state", at}, {"prop", m.props[p]},
               {"set", set_json(m, meet)}});
      }
    }
  }
  return r;
}

Report validate_signals(const Structure& m) {
  if (!m.signals) throw MissingSignals("structure has no signals");
  Report r;
  const auto n_agents = static_cast<AgentId>(m.num_agents());
  // ext[i-1][w][j-1] = [[phi_{i,w}]]_j
  std::vector<std::vector<std::vector<StateSet>>> ext(m.num_agents());
  for (AgentId i = 1; i <= n_agents; ++i) {
    for (StateIndex w = 0; w < m.num_states(); ++w) {
      Formula sig = expand((*m.signals)[i - 1][w], m.tautology_atom());
      json where = {{"agent", i}, {"state", m.states[w]}};
      if (!is_propositional(sig)) {
        r.add("signal-not-propositional",
              "agent " + std::to_string(i) + "'s signal at " + m.states[w] +
                  " is not propositional",
              where);
        return r;
      }
      std::vector<StateSet> per_reader;
      try {
        for (AgentId j = 1; j <= n_agents; ++j) {
          per_reader.push_back(prop_extension(m, j, sig));
        }
      } catch (const UnknownProp& e) {
        r.add("signal-unknown-prop", e.what(), where);
        return r;
      }
      ext[i - 1].push_back(std::move(per_reader));
    }
  }

  for (AgentId i = 1; i <= n_agents; ++i) {
    for (StateIndex w = 0; w < m.num_states(); ++w) {
      const StateSet& own = ext[i - 1][w][i - 1];
      if (own != m.cell(i, w)) {
        r.add("A5",
              "agent " + std::to_string(i) + "'s signal at " + m.states[w] +
                  " reads as " + set_text(m, own) + " but the cell is " +
                  set_text(m, m.cell(i, w)),
              {{"agent", i}, {"state", m.states[w]}, {"extension", set_json(m, own)},
               {"cell", set_json(m, m.cell(i, w))}});
      }
    }
    for (AgentId j = 1; j <= n_agents; ++j) {
      for (StateIndex w = 0; w < m.num_states(); ++w) {
        const StateSet& e = ext[i - 1][w][j - 1];
        json witness = {{"agent", i}, {"reader", j}, {"state", m.states[w]},
                        {"extension", set_json(m, e)}};
        if (!e.test(w)) {
          r.add("A6",
                "agent " + std::to_string(j) + " reads agent " + std::to_string(i) +
                    "'s signal at " + m.states[w] + " as " + set_text(m, e) +
                    ", which does not contain the state; the signal sets are "
                    "not a partition",
                witness);
          continue;
        }
        for (StateIndex v = 0; v < w; ++v) {
          const StateSet& f = ext[i - 1][v][j - 1];
          if (f != e && (f & e).any()) {
            witness["other_state"] = m.states[v];
            witness["other_extension"] = set_json(m, f);
            r.add("A6",
                  "agent " + std::to_string(j) + "'s readings of agent " +
                      std::to_string(i) + "'s signals at " + m.states[v] + " and " +
                      m.states[w] + " overlap without coinciding",
                  witness);
            break;
          }
        }
      }
    }
  }
  return r;
}

Report validate_priors(const Structure& m) {
  Report r;
  if (!m.priors) return r;
  for (AgentId i = 1; i <= static_cast<AgentId>(m.num_agents()); ++i) {
    const Prior& nu = (*m.priors)[i - 1];
    Rational sum;
    for (StateIndex w = 0; w < m.num_states(); ++w) {
      if (nu[w].sign() < 0) {
        r.add("prior-negative", "negative prior weight",
              {{"agent", i}, {"state", m.states[w]}, {"value", nu[w].str()}});
      }
      sum += nu[w];
    }
    if (sum != Rational(1)) {
      r.add("prior-sum", "agent " + std::to_string(i) + "'s prior sums to " + sum.str(),
            {{"agent", i}, {"sum", sum.str()}});
    }
    const AgentModel& a = m.agent(i);
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      Rational cell_mass = prior_measure(nu, a.cells[c]);
      if (cell_mass.sign() <= 0) continue;
      const CellBelief& b = a.beliefs[c];
      for (std::size_t k = 0; k < b.atoms.size(); ++k) {
        Rational conditioned = prior_measure(nu, b.atoms[k]) / cell_mass;
        if (conditioned != b.mass[k]) {
          r.add("prior-mismatch",
                "agent " + std::to_string(i) + "'s conditioned prior gives " +
                    conditioned.str() + " where the cell measure gives " +
                    b.mass[k].str(),
                {{"agent", i}, {"atom", set_json(m, b.atoms[k])},
                 {"conditioned", conditioned.str()}, {"measure", b.mass[k].str()}});
        }
      }
    }
  }
  return r;
}

std::vector<Prior> generate_priors(const Structure& m) {
  Report core = validate_core(m);
  for (const Finding& f : core.findings()) {
    if (f.kind != "A4") throw CoreInvalid("cannot generate priors: " + f.message);
  }
  std::vector<Prior> out;
  for (const AgentModel& a : m.agents) {
    Prior nu(m.num_states());
    const Rational cells(static_cast<long>(a.cells.size()));
    for (const CellBelief& b : a.beliefs) {
      for (std::size_t k = 0; k < b.atoms.size(); ++k) {
        // Atom mass is spread evenly over the atom's states; only the atom
        // totals are constrained.
        Rational share =
            b.mass[k] / (cells * Rational(static_cast<long>(b.atoms[k].count())));
        for (StateIndex w : members(b.atoms[k])) nu[w] = share;
      }
    }
    out.push_back(std::move(nu));
  }
  return out;
}

}  // namespace ambig
