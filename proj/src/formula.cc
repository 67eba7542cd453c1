#include "ambig/formula.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ambig/errors.h"

namespace ambig {

struct Formula::Node {
  Op op;
  std::string name;
  AgentId agent = 0;
  AgentSet group;
  int power = 0;
  Cmp cmp = Cmp::kGe;
  Rational bound;
  std::vector<Rational> coeffs;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  // Cached so that deep shared DAGs (EB chains) are not walked as trees.
  bool core = false;
  bool indexed = false;
};

namespace {

inline void mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

void check_agent(AgentId a) {
  if (a < 1) {
    throw UnknownAgent("agent index must be positive, got " +
                       std::to_string(a));
  }
}

}  // namespace

AgentSet make_agent_set(std::vector<AgentId> agents) {
  if (agents.empty()) throw UnknownAgent("agent group must be nonempty");
  for (AgentId a : agents) check_agent(a);
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  return agents;
}

const char* cmp_symbol(Cmp c) {
  switch (c) {
    case Cmp::kGe: return ">=";
    case Cmp::kLe: return "<=";
    case Cmp::kEq: return "=";
    case Cmp::kGt: return ">";
    case Cmp::kLt: return "<";
  }
  return "?";
}

Formula Formula::make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.op) * 0x100000001b3ULL;
  mix(h, std::hash<std::string>{}(n.name));
  mix(h, static_cast<std::size_t>(n.agent));
  for (AgentId a : n.group) mix(h, static_cast<std::size_t>(a) << 8);
  mix(h, static_cast<std::size_t>(n.power));
  mix(h, static_cast<std::size_t>(n.cmp));
  mix(h, n.bound.hash());
  for (const Rational& c : n.coeffs) mix(h, c.hash());
  for (const Formula& k : n.kids) mix(h, k.hash());
  n.hash = h;
  switch (n.op) {
    case Op::kProp:
    case Op::kIndexedProp:
    case Op::kNot:
    case Op::kAnd:
    case Op::kCommonBelief:
      n.core = true;
      break;
    case Op::kProb:
      n.core = n.cmp == Cmp::kGe;
      break;
    default:
      break;
  }
  n.indexed = n.op == Op::kIndexedProp;
  for (const Formula& k : n.kids) {
    n.core = n.core && k.node_->core;
    n.indexed = n.indexed || k.node_->indexed;
  }
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  return make(Node{.op = Op::kProp, .name = std::move(name)});
}

Formula Formula::indexed(std::string base, AgentId agent) {
  if (base.empty()) throw std::invalid_argument("empty proposition name");
  check_agent(agent);
  return make(Node{.op = Op::kIndexedProp, .name = std::move(base),
                   .agent = agent});
}

Formula Formula::negate(Formula f) {
  return make(Node{.op = Op::kNot, .kids = {std::move(f)}});
}

Formula Formula::conj(Formula a, Formula b) {
  return make(Node{.op = Op::kAnd, .kids = {std::move(a), std::move(b)}});
}

Formula Formula::prob(AgentId agent, std::vector<ProbTerm> terms, Cmp cmp,
                      Rational bound) {
  check_agent(agent);
  if (terms.empty()) {
    throw std::invalid_argument("probability formula needs at least one term");
  }
  Node n{.op = Op::kProb, .agent = agent, .cmp = cmp, .bound = std::move(bound)};
  for (auto& t : terms) {
    n.coeffs.push_back(std::move(t.coeff));
    n.kids.push_back(std::move(t.arg));
  }
  return make(std::move(n));
}

Formula Formula::prob_ge(AgentId agent, std::vector<ProbTerm> terms,
                         Rational bound) {
  return prob(agent, std::move(terms), Cmp::kGe, std::move(bound));
}

Formula Formula::common_belief(AgentSet group, Formula f) {
  return make(Node{.op = Op::kCommonBelief,
                   .group = make_agent_set(std::move(group)),
                   .kids = {std::move(f)}});
}

Formula Formula::truth() { return make(Node{.op = Op::kTrue}); }
Formula Formula::falsity() { return make(Node{.op = Op::kFalse}); }

Formula Formula::disj(Formula a, Formula b) {
  return make(Node{.op = Op::kOr, .kids = {std::move(a), std::move(b)}});
}

Formula Formula::implies(Formula a, Formula b) {
  return make(Node{.op = Op::kImplies, .kids = {std::move(a), std::move(b)}});
}

Formula Formula::iff(Formula a, Formula b) {
  return make(Node{.op = Op::kIff, .kids = {std::move(a), std::move(b)}});
}

Formula Formula::belief(AgentId agent, Formula f) {
  check_agent(agent);
  return make(Node{.op = Op::kBelief, .agent = agent, .kids = {std::move(f)}});
}

Formula Formula::everyone_believes(AgentSet group, int power, Formula f) {
  if (power < 1) {
    throw std::invalid_argument("EB power must be at least 1");
  }
  return make(Node{.op = Op::kEveryoneBelieves,
                   .group = make_agent_set(std::move(group)),
                   .power = power,
                   .kids = {std::move(f)}});
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
AgentId Formula::agent() const { return node_->agent; }
const AgentSet& Formula::group() const { return node_->group; }
int Formula::power() const { return node_->power; }
Cmp Formula::cmp() const { return node_->cmp; }
const Rational& Formula::bound() const { return node_->bound; }
std::size_t Formula::arity() const { return node_->kids.size(); }
const Formula& Formula::child(std::size_t k) const { return node_->kids.at(k); }
const std::vector<Formula>& Formula::children() const { return node_->kids; }
const std::vector<Rational>& Formula::coeffs() const { return node_->coeffs; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.name != y.name ||
      x.agent != y.agent || x.group != y.group || x.power != y.power ||
      x.cmp != y.cmp || x.bound != y.bound || x.coeffs != y.coeffs ||
      x.kids.size() != y.kids.size()) {
    return false;
  }
  for (std::size_t k = 0; k < x.kids.size(); ++k) {
    if (!(x.kids[k] == y.kids[k])) return false;
  }
  return true;
}

bool is_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::kProp: return true;
    case Op::kNot: return is_propositional(f.child(0));
    case Op::kAnd:
      return is_propositional(f.child(0)) && is_propositional(f.child(1));
    default: return false;
  }
}

bool is_core(const Formula& f) { return f.node_->core; }

bool contains_indexed(const Formula& f) { return f.node_->indexed; }

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (seen.count(g)) return;
    for (const Formula& k : g.children()) visit(k);
    if (seen.insert(g).second) out.push_back(g);
  };
  visit(f);
  return out;
}

std::size_t tree_size(const Formula& f) {
  std::size_t n = 1;
  for (const Formula& k : f.children()) n += tree_size(k);
  return n;
}

std::vector<std::string> prop_names(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (g.op() == Op::kProp &&
        std::find(out.begin(), out.end(), g.name()) == out.end()) {
      out.push_back(g.name());
    }
    for (const Formula& k : g.children()) visit(k);
  };
  visit(f);
  return out;
}

Formula belief_core(AgentId agent, Formula f) {
  return Formula::prob_ge(agent, {{Rational(1), std::move(f)}}, Rational(1));
}

namespace {

std::vector<ProbTerm> terms_of(const Formula& f,
                               const std::vector<Formula>& args, bool negate) {
  std::vector<ProbTerm> terms;
  for (std::size_t k = 0; k < args.size(); ++k) {
    terms.push_back({negate ? -f.coeffs()[k] : f.coeffs()[k], args[k]});
  }
  return terms;
}

class Expander {
 public:
  explicit Expander(Formula atom) : atom_(std::move(atom)) {}

  Formula run(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Formula out = rewrite(f);
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  static Formula neg(Formula f) { return Formula::negate(std::move(f)); }
  static Formula imp(Formula a, Formula b) {
    return neg(Formula::conj(std::move(a), neg(std::move(b))));
  }

  Formula truth() {
    return neg(Formula::conj(neg(atom_), neg(neg(atom_))));
  }

  Formula rewrite(const Formula& f) {
    std::vector<Formula> kids;
    bool changed = false;
    for (const Formula& k : f.children()) {
      kids.push_back(run(k));
      changed = changed || kids.back().id() != k.id();
    }
    switch (f.op()) {
      case Op::kProp:
      case Op::kIndexedProp:
        return f;
      case Op::kNot:
        return changed ? neg(kids[0]) : f;
      case Op::kAnd:
        return changed ? Formula::conj(kids[0], kids[1]) : f;
      case Op::kCommonBelief:
        return changed ? Formula::common_belief(f.group(), kids[0]) : f;
      case Op::kProb: {
        const Rational& b = f.bound();
        switch (f.cmp()) {
          case Cmp::kGe:
            return changed ? Formula::prob_ge(f.agent(), terms_of(f, kids, false), b)
                           : f;
          case Cmp::kLe:
            return Formula::prob_ge(f.agent(), terms_of(f, kids, true), -b);
          case Cmp::kEq:
            return Formula::conj(
                Formula::prob_ge(f.agent(), terms_of(f, kids, false), b),
                Formula::prob_ge(f.agent(), terms_of(f, kids, true), -b));
          case Cmp::kGt:
            return neg(Formula::prob_ge(f.agent(), terms_of(f, kids, true), -b));
          case Cmp::kLt:
            return neg(Formula::prob_ge(f.agent(), terms_of(f, kids, false), b));
        }
        break;
      }
      case Op::kTrue:
        return truth();
      case Op::kFalse:
        return neg(truth());
      case Op::kOr:
        return neg(Formula::conj(neg(kids[0]), neg(kids[1])));
      case Op::kImplies:
        return imp(kids[0], kids[1]);
      case Op::kIff:
        return Formula::conj(imp(kids[0], kids[1]), imp(kids[1], kids[0]));
      case Op::kBelief:
        return belief_core(f.agent(), kids[0]);
      case Op::kEveryoneBelieves: {
        Formula cur = kids[0];
        for (int m = 0; m < f.power(); ++m) {
          std::optional<Formula> level;
          for (AgentId a : f.group()) {
            Formula b = belief_core(a, cur);
            level = level ? Formula::conj(*level, b) : b;
          }
          cur = *level;
        }
        return cur;
      }
    }
    throw std::logic_error("unhandled formula constructor");
  }

  Formula atom_;
  // Keyed by node identity; the nodes live as long as the input tree.
  std::unordered_map<const void*, Formula> memo_;
};

}  // namespace

Formula expand(const Formula& f, const Formula& tautology_atom) {
  return Expander(tautology_atom).run(f);
}

}  // namespace ambig
