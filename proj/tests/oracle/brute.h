// Reference evaluator for tests. Works on surface formulas directly, one
// clause at a time, recomputing every subformula from scratch. Common belief
// is the conjunction of EB^1..EB^K with K = |states| * |G| + 1. Shares no
// code with the library evaluator beyond the structure data types.

#ifndef AMBIG_TESTS_BRUTE_H_
#define AMBIG_TESTS_BRUTE_H_

#include <optional>
#include <vector>

#include "ambig/formula.h"
#include "ambig/mode.h"
#include "ambig/structure.h"

namespace brute {

enum class Truth { kFalse, kTrue, kUndefined };

// table[i - 1][w]: truth at w as judged by agent i.
using Table = std::vector<std::vector<Truth>>;

Table evaluate(const ambig::Structure& m, const ambig::Formula& f, ambig::EvalMode mode);

Truth eval(const ambig::Structure& m, ambig::StateIndex w, ambig::AgentId i,
           const ambig::Formula& f, ambig::EvalMode mode);

// Left-hand side of a probability formula at (w, i); nullopt if undefined.
std::optional<ambig::Rational> prob_value(const ambig::Structure& m, ambig::StateIndex w,
                                          ambig::AgentId i, const ambig::Formula& f,
                                          ambig::EvalMode mode);

}  // namespace brute

#endif  // AMBIG_TESTS_BRUTE_H_
