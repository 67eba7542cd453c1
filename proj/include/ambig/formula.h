// Abstract syntax of the epistemic probability language.
//
// A Formula is an immutable, reference-counted tree. The core constructors
// are propositions (plain and agent-indexed), negation, conjunction, linear
// probability comparisons and common belief. Everything else (disjunction,
// implication, truth constants, B_i, EB^k_G, and comparison operators other
// than >=) is surface syntax removed by expand().

#ifndef AMBIG_FORMULA_H_
#define AMBIG_FORMULA_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ambig/rational.h"

namespace ambig {

// Agents are numbered 1..n.
using AgentId = int;

// Nonempty, sorted, duplicate-free set of agents.
using AgentSet = std::vector<AgentId>;

AgentSet make_agent_set(std::vector<AgentId> agents);

enum class Op {
  kProp,
  kIndexedProp,
  kNot,
  kAnd,
  kProb,
  kCommonBelief,
  // Surface only.
  kTrue,
  kFalse,
  kOr,
  kImplies,
  kIff,
  kBelief,
  kEveryoneBelieves,
};

enum class Cmp { kGe, kLe, kEq, kGt, kLt };

const char* cmp_symbol(Cmp c);

class Formula;

struct ProbTerm;

class Formula {
 public:
  static Formula prop(std::string name);
  static Formula indexed(std::string base, AgentId agent);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  // Sum of coeff_k * Pr_agent(arg_k) compared against bound.
  static Formula prob(AgentId agent, std::vector<ProbTerm> terms, Cmp cmp,
                      Rational bound);
  static Formula prob_ge(AgentId agent, std::vector<ProbTerm> terms,
                         Rational bound);
  static Formula common_belief(AgentSet group, Formula f);

  static Formula truth();
  static Formula falsity();
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula belief(AgentId agent, Formula f);
  static Formula everyone_believes(AgentSet group, int power, Formula f);

  Op op() const;
  // Proposition name (base name for indexed propositions).
  const std::string& name() const;
  // Indexed proposition index, probability agent, or belief agent.
  AgentId agent() const;
  const AgentSet& group() const;
  int power() const;
  Cmp cmp() const;
  const Rational& bound() const;

  std::size_t arity() const;
  const Formula& child(std::size_t k) const;
  const std::vector<Formula>& children() const;
  // Probability coefficients, parallel to children().
  const std::vector<Rational>& coeffs() const;

  bool is_prob_ge() const { return op() == Op::kProb && cmp() == Cmp::kGe; }

  std::size_t hash() const;
  // Identity of the shared node, for memo tables.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool is_core(const Formula& f);
  friend bool contains_indexed(const Formula& f);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct ProbTerm {
  Rational coeff;
  Formula arg;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// True iff f is built from Prop, Not and And only.
bool is_propositional(const Formula& f);

// True iff f uses only the core constructors.
bool is_core(const Formula& f);

bool contains_indexed(const Formula& f);

// Post-order list of the structurally distinct subformulas of f.
std::vector<Formula> subformulas(const Formula& f);

// Number of nodes in the tree (shared subtrees counted once per occurrence).
std::size_t tree_size(const Formula& f);

// Proposition names in first-occurrence order (indexed ones excluded).
std::vector<std::string> prop_names(const Formula& f);

// Rewrites surface syntax into core syntax. `tautology_atom` is the
// proposition p used for true := p | !p (and false := !true).
//   B_i f            -> Pr_i(f) >= 1
//   EB^1_G f         -> /\_{i in G} B_i f
//   EB^{m+1}_G f     -> EB^1_G(EB^m_G f)
//   t <= b           -> -t >= -b
//   t = b            -> t >= b & -t >= -b
//   t > b            -> !(-t >= -b)
//   t < b            -> !(t >= b)
// Connectives desugar classically through ! and &.
Formula expand(const Formula& f, const Formula& tautology_atom);

// B_i f in core form.
Formula belief_core(AgentId agent, Formula f);

}  // namespace ambig

#endif  // AMBIG_FORMULA_H_
