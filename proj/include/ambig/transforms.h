// Model constructions that relate the ambiguous semantics to ordinary
// common-interpretation structures, and checkers that replay the
// corresponding equivalence claims on concrete models.

#ifndef AMBIG_TRANSFORMS_H_
#define AMBIG_TRANSFORMS_H_

#include <optional>
#include <string>
#include <vector>

#include "ambig/formula.h"
#include "ambig/report.h"
#include "ambig/structure.h"

namespace ambig {

// Where a state of a derived structure came from.
struct StateOrigin {
  StateIndex old;
  std::optional<AgentId> tag;  // copy index, for disjoint_copies
};

// Indexed by the new structure's state index.
using StateMap = std::vector<StateOrigin>;

struct FreshProp {
  std::string name;
  AgentId agent;
  StateSet cell;  // in the new structure
};

struct Transformed {
  Structure model;
  StateMap map;
  std::vector<FreshProp> fresh;  // label_partitions only
};

// Every agent reads propositions as agent i does.
Structure fix_interpretation(const Structure& m, AgentId i);

// One copy of the state space per agent. State w's copy j is named "w#j"
// and takes agent j's interpretation; agent i's beliefs live on copy i.
Transformed disjoint_copies(const Structure& m);

// Restriction to the states reachable from w through all agents' cells,
// with one fresh proposition "p_<i>_c<k>" per cell of each agent, used as
// that agent's signal. Priors come from generate_priors on the result.
// Throws NotCommonInterpretation.
Transformed label_partitions(const Structure& m, StateIndex w);

enum class TransformClaim {
  kFixInterpretation,  // (M,w,i) |=ou f  iff  (M'_i,w,i) |= f
  kDisjointCopies,     // (M,w,j) |=in f  iff  (M',w#j) |= f
  kLabelPartitions,    // (M,w,i) |= f    iff  (M',w,i) |= f on the restriction
};

std::string_view claim_name(TransformClaim c);

// Evaluates every formula on both sides of the claim at every relevant
// (state, agent) pair. `agent` is the fixed agent for kFixInterpretation
// and ignored otherwise. Throws ClaimSpecMismatch when the map or the
// derived structure cannot come from the named transform.
Report verify_transform_equivalence(const Structure& m, const Structure& derived,
                                    const StateMap& map,
                                    const std::vector<Formula>& formulas,
                                    TransformClaim claim, AgentId agent = 0);

}  // namespace ambig

#endif  // AMBIG_TRANSFORMS_H_
