// Indexed propositions p@i ("p as agent i reads it"), the lifted
// common-interpretation structure over them, and the compilation of
// ambiguous formulas into that unambiguous language.

#ifndef AMBIG_TRANSLATION_H_
#define AMBIG_TRANSLATION_H_

#include <optional>
#include <vector>

#include "ambig/formula.h"
#include "ambig/report.h"
#include "ambig/structure.h"

namespace ambig {

// Same states, partitions and beliefs; propositions p@1..p@n for every p
// (p-major), with p@i true wherever agent i reads p as true, shared by all
// agents. Priors are kept, signals are not.
Structure lift_to_indexed(const Structure& m);

enum class Scope {
  kInnermost,
  kOutermost,
  // CB_G f -> CB_G(f translated at i). Kept as a known-wrong variant for
  // mutation testing.
  kNaiveInnermost,
};

// Surface syntax is expanded first against `tautology_atom` (default: the
// first proposition of f, or p). Throws AlreadyIndexed.
Formula translate(const Formula& f, AgentId i, Scope scope,
                  std::optional<Formula> tautology_atom = std::nullopt);
Formula translate_in(const Formula& f, AgentId i,
                     std::optional<Formula> tautology_atom = std::nullopt);
Formula translate_ou(const Formula& f, AgentId i,
                     std::optional<Formula> tautology_atom = std::nullopt);

// Checks (M,w,i) |=in f iff (M_c,w) |= f_i^in, and the outermost analogue,
// for every formula, state and agent. One finding per failing (formula,
// scope). `scopes` defaults to innermost and outermost.
Report verify_theorem2(const Structure& m, const std::vector<Formula>& corpus,
                       std::vector<Scope> scopes = {Scope::kInnermost, Scope::kOutermost});

}  // namespace ambig

#endif  // AMBIG_TRANSLATION_H_
