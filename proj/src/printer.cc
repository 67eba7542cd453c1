#include <string>

#include "ambig/syntax.h"

namespace ambig {

namespace {

// Binding strength; higher binds tighter.
enum Level { kIffLevel = 1, kImpLevel, kOrLevel, kAndLevel, kUnaryLevel, kAtomLevel };

int level_of(const Formula& f) {
  switch (f.op()) {
    case Op::kIff: return kIffLevel;
    case Op::kImplies: return kImpLevel;
    case Op::kOr: return kOrLevel;
    case Op::kAnd: return kAndLevel;
    case Op::kNot:
    case Op::kBelief:
    case Op::kEveryoneBelieves:
    case Op::kCommonBelief:
      return kUnaryLevel;
    default:
      return kAtomLevel;
  }
}

std::string group_text(const AgentSet& g) {
  std::string s = "{";
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(g[k]);
  }
  return s + "}";
}

std::string print(const Formula& f, int min_level);

// Operand of a prefix operator. Probability comparisons get parentheses so
// the comparison visibly belongs to the operand.
std::string operand(const Formula& f, bool space) {
  std::string body;
  if (f.op() == Op::kProb) {
    body = "(" + print(f, 0) + ")";
  } else {
    body = print(f, kUnaryLevel);
  }
  if (space && body.front() != '(') return " " + body;
  return body;
}

std::string binary(const Formula& f, const char* sym, int lvl) {
  return print(f.child(0), lvl) + " " + sym + " " + print(f.child(1), lvl + 1);
}

std::string print_node(const Formula& f) {
  switch (f.op()) {
    case Op::kProp: return f.name();
    case Op::kIndexedProp: return f.name() + "@" + std::to_string(f.agent());
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
    case Op::kNot: return "!" + operand(f.child(0), false);
    case Op::kAnd: return binary(f, "&", kAndLevel);
    case Op::kOr: return binary(f, "|", kOrLevel);
    case Op::kImplies: return binary(f, "->", kImpLevel);
    case Op::kIff: return binary(f, "<->", kIffLevel);
    case Op::kBelief:
      return "B" + std::to_string(f.agent()) + operand(f.child(0), true);
    case Op::kEveryoneBelieves: {
      std::string s = "E" + group_text(f.group());
      if (f.power() != 1) s += "^" + std::to_string(f.power());
      return s + operand(f.child(0), true);
    }
    case Op::kCommonBelief:
      return "CB" + group_text(f.group()) + operand(f.child(0), true);
    case Op::kProb: {
      std::string s;
      for (std::size_t k = 0; k < f.arity(); ++k) {
        if (k) s += " + ";
        const Rational& c = f.coeffs()[k];
        if (c != Rational(1)) s += c.str() + "*";
        s += "Pr" + std::to_string(f.agent()) + "(" + print(f.child(k), 0) + ")";
      }
      return s + " " + cmp_symbol(f.cmp()) + " " + f.bound().str();
    }
  }
  return "?";
}

std::string print(const Formula& f, int min_level) {
  std::string s = print_node(f);
  if (level_of(f) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_formula(const Formula& f) { return print(f, 0); }

}  // namespace ambig
