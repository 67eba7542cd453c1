// Concrete text syntax for formulas.
//
//   formula  := iff
//   iff      := imp ("<->" imp)*
//   imp      := or ("->" or)*
//   or       := and ("|" and)*
//   and      := unary ("&" unary)*
//   unary    := "!" unary | "B" NAT unary | "E" "{" natlist "}" ("^" NAT)? unary
//             | "CB" "{" natlist "}" unary | atom
//   atom     := IDENT | IDENT "@" NAT | "true" | "false" | "(" formula ")"
//             | probcmp
//   probcmp  := linterm (">=" | "<=" | "=" | ">" | "<") rational
//   linterm  := signedterm ("+" signedterm)*
//   signedterm := (rational "*")? "Pr" NAT "(" formula ")"
//   rational := "-"? NAT ("/" NAT)?
//
// Binary connectives associate to the left. Identifiers start with a letter
// or underscore; "true", "false", "B", "E", "CB", "Pr" and the forms B<n>
// and Pr<n> are reserved.

#ifndef AMBIG_SYNTAX_H_
#define AMBIG_SYNTAX_H_

#include <string>
#include <string_view>

#include "ambig/formula.h"

namespace ambig {

// Throws SyntaxError or UnknownAgent.
Formula parse_formula(std::string_view text);

// Canonical text; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

// Proposition names usable in formulas (and, for lifted structures, the
// "base@agent" rendering of indexed propositions).
bool is_valid_prop_name(std::string_view name);
bool is_reserved_word(std::string_view name);

}  // namespace ambig

#endif  // AMBIG_SYNTAX_H_
