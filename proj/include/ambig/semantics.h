// Truth of formulas at (structure, state, agent) under the five truth
// relations.
//
// Evaluation works on extensions: for a formula and an interpreting agent it
// computes the set of states where the formula holds, memoized per
// subformula. In the ai modes a probability can be undefined (its
// conditioning event has prior mass zero); such states are tracked
// alongside the extension and only raise UndefinedConditional when a query
// actually depends on them.

#ifndef AMBIG_SEMANTICS_H_
#define AMBIG_SEMANTICS_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ambig/formula.h"
#include "ambig/mode.h"
#include "ambig/report.h"
#include "ambig/structure.h"

namespace ambig {

struct EvalQuery {
  const Structure& model;
  StateIndex state;
  AgentId agent;  // the outer agent, on the left of the turnstile
  Formula formula;
  EvalMode mode;
};

// Three-valued extension: `holds` and `undefined` are disjoint.
struct Extension {
  StateSet holds;
  StateSet undefined;
  std::string reason;  // first cause of undefinedness, if any
};

class Evaluator {
 public:
  // Checks the mode's prerequisites; throws ModePrereqMissing.
  Evaluator(const Structure& m, EvalMode mode);

  const Structure& model() const { return m_; }
  EvalMode mode() const { return mode_; }

  // Surface formulas are expanded first.
  bool holds(StateIndex w, AgentId i, const Formula& f);
  // Throws UndefinedConditional if f is undefined anywhere.
  StateSet extension(AgentId i, const Formula& f);
  // Core formulas only; never throws UndefinedConditional.
  const Extension& evaluate(AgentId i, const Formula& core);

  // Left-hand side a_1 Pr_j(f_1) + ... of a probability formula (any
  // comparison operator) at w as judged by i.
  Rational probability_sum(StateIndex w, AgentId i, const Formula& prob);

  // Core-form expansion against this structure's tautology atom.
  Formula prepare(const Formula& f) const;

 private:
  struct MemoEntry {
    Formula keep;
    std::unordered_map<AgentId, Extension> by_agent;
  };
  // Successor sets of agent j's belief relation; a disengaged optional
  // marks a null conditioning event.
  struct Edges {
    std::vector<std::optional<StateSet>> succ;
    std::vector<std::string> reason;
  };

  Extension compute(AgentId i, const Formula& f);
  Extension compute_prob(AgentId i, const Formula& f);
  Extension compute_common_belief(AgentId i, const Formula& f);
  const Edges& edges(AgentId outer, AgentId j);
  const StateSet& signal_event(AgentId j, StateIndex w, AgentId reader);
  std::string null_event_text(AgentId j, StateIndex w, AgentId reader,
                              const StateSet& event) const;
  AgentId arg_reader(AgentId outer, AgentId j) const;

  const Structure& m_;
  EvalMode mode_;
  std::unordered_map<const void*, MemoEntry> memo_;
  std::unordered_map<long, Edges> edges_;
  std::unordered_map<long, StateSet> signal_events_;
};

bool eval(const EvalQuery& q);

StateSet extension(const Structure& m, AgentId i, const Formula& f, EvalMode mode);

// States where CB_G f holds for `outer`, by labeled reachability over the
// belief relations of the agents in G.
StateSet common_belief_set(const Structure& m, const AgentSet& g, const Formula& f,
                           EvalMode mode, AgentId outer);

// Extension of EB^k_G f.
StateSet eb_k(const Structure& m, const AgentSet& g, const Formula& f, int k,
              EvalMode mode, AgentId outer);

// Extensions of EB^1_G f .. EB^k_G f, sharing work between levels.
std::vector<StateSet> eb_chain(Evaluator& ev, const AgentSet& g, const Formula& f,
                               int k, AgentId outer);

// Empty report iff f holds at every (state, agent); otherwise one finding
// with the first counterexample in state-major order.
Report valid_in_model(const Structure& m, const Formula& f, EvalMode mode);

}  // namespace ambig

#endif  // AMBIG_SEMANTICS_H_
