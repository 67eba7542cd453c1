// Finite epistemic probability structures.
//
// A structure has states, agents 1..n, primitive propositions, and for each
// agent an information partition, one probability space per partition cell
// and an interpretation of every proposition. Priors and signal formulas are
// optional and only needed by the ambiguity-of-information semantics.

#ifndef AMBIG_STRUCTURE_H_
#define AMBIG_STRUCTURE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ambig/formula.h"
#include "ambig/mode.h"
#include "ambig/rational.h"
#include "ambig/report.h"

namespace ambig {

using StateIndex = std::size_t;
using StateSet = boost::dynamic_bitset<>;

// Probability space attached to one partition cell. The measurable sets are
// the unions of `atoms`.
struct CellBelief {
  StateSet sample_space;
  std::vector<StateSet> atoms;
  std::vector<Rational> mass;  // parallel to atoms
};

struct AgentModel {
  std::vector<StateSet> cells;
  std::vector<std::size_t> cell_of;     // state -> index into cells
  std::vector<CellBelief> beliefs;      // parallel to cells
  std::vector<StateSet> interpretation; // prop index -> states where true
};

// Per-state prior weights for one agent.
using Prior = std::vector<Rational>;

struct Structure {
  std::vector<std::string> states;
  std::vector<std::string> props;
  std::vector<AgentModel> agents;  // agents[i - 1] describes agent i
  std::optional<std::vector<Prior>> priors;
  // signals[i - 1][w] is agent i's signal formula at state w.
  std::optional<std::vector<std::vector<Formula>>> signals;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_agents() const { return agents.size(); }

  const AgentModel& agent(AgentId i) const;
  AgentModel& agent(AgentId i);
  StateIndex state_index(std::string_view name) const;  // UnknownState
  std::size_t prop_index(std::string_view name) const;  // UnknownProp
  std::optional<std::size_t> find_prop(std::string_view name) const;

  const StateSet& cell(AgentId i, StateIndex w) const {
    const AgentModel& a = agent(i);
    return a.cells[a.cell_of[w]];
  }
  const CellBelief& belief(AgentId i, StateIndex w) const {
    const AgentModel& a = agent(i);
    return a.beliefs[a.cell_of[w]];
  }

  StateSet empty_set() const { return StateSet(num_states()); }
  StateSet full_set() const { return ~empty_set(); }
  StateSet singleton(StateIndex w) const {
    StateSet s = empty_set();
    s.set(w);
    return s;
  }

  // The proposition used to expand `true`.
  Formula tautology_atom() const { return Formula::prop(props.at(0)); }

  // Recomputes cell_of and checks the structural invariants (partitions
  // cover and are disjoint, one belief per cell, interpretations sized to
  // the proposition set, names unique). Throws ModelFormatError.
  void finalize();
};

std::vector<StateIndex> members(const StateSet& s);
std::string set_text(const Structure& m, const StateSet& s);
nlohmann::json set_json(const Structure& m, const StateSet& s);

// Mass of `event` restricted to the cell's sample space. Throws
// NonMeasurable unless the restriction is a union of atoms.
Rational cell_measure(const CellBelief& cell, const StateSet& event);

// States lying in atoms of positive mass.
StateSet belief_support(const CellBelief& cell);

Rational prior_measure(const Prior& prior, const StateSet& event);

// A1-A4, per-cell algebra and normalization checks.
Report validate_core(const Structure& m);

// A5, A6 and propositionality of signals. Throws MissingSignals.
Report validate_signals(const Structure& m);

// Prior normalization and agreement of the cell measures with the
// conditioned priors wherever the cell has positive prior mass.
Report validate_priors(const Structure& m);

// nu_i(w) = mu_{i,w}(atom of w) / (N_i * |atom of w|). Throws CoreInvalid
// when A1-A3 or normalization fail.
std::vector<Prior> generate_priors(const Structure& m);

// [[f]]_i for propositional f. Throws NotPropositional.
StateSet prop_extension(const Structure& m, AgentId i, const Formula& f);

// States reachable from w through cells of agents in g.
StateSet reachable(const Structure& m, const AgentSet& g, StateIndex w);

// successors[w] is the set of w' that agent j considers possible at w under
// `mode`, as judged by `outer` for the outermost-ai case. Throws
// UndefinedConditional when an ai-mode conditioning event is null.
std::vector<StateSet> belief_edges(const Structure& m, EvalMode mode,
                                   AgentId outer, AgentId j);

bool is_common_interpretation(const Structure& m);
bool has_identical_priors(const Structure& m);

}  // namespace ambig

#endif  // AMBIG_STRUCTURE_H_
