#include "brute.h"

#include <stdexcept>
#include <string>

#include "ambig/errors.h"

namespace brute {

using namespace ambig;

namespace {

Truth from_bool(bool b) { return b ? Truth::kTrue : Truth::kFalse; }

Truth t_not(Truth a) {
  if (a == Truth::kUndefined) return a;
  return a == Truth::kTrue ? Truth::kFalse : Truth::kTrue;
}

Truth t_and(Truth a, Truth b) {
  if (a == Truth::kUndefined || b == Truth::kUndefined) return Truth::kUndefined;
  return from_bool(a == Truth::kTrue && b == Truth::kTrue);
}

Truth t_or(Truth a, Truth b) { return t_not(t_and(t_not(a), t_not(b))); }

bool compare(const Rational& lhs, Cmp c, const Rational& b) {
  switch (c) {
    case Cmp::kGe: return lhs >= b;
    case Cmp::kLe: return lhs <= b;
    case Cmp::kEq: return lhs == b;
    case Cmp::kGt: return lhs > b;
    case Cmp::kLt: return lhs < b;
  }
  throw std::logic_error("bad comparison");
}

bool holds_prop(const Structure& m, AgentId i, const std::string& name, StateIndex w) {
  for (std::size_t p = 0; p < m.props.size(); ++p) {
    if (m.props[p] == name) return m.agents[i - 1].interpretation[p].test(w);
  }
  throw UnknownProp("oracle: unknown proposition " + name);
}

// Two-valued truth of a propositional signal formula.
bool signal_true(const Structure& m, AgentId reader, const Formula& f, StateIndex w) {
  switch (f.op()) {
    case Op::kProp: return holds_prop(m, reader, f.name(), w);
    case Op::kTrue: return true;
    case Op::kFalse: return false;
    case Op::kNot: return !signal_true(m, reader, f.child(0), w);
    case Op::kAnd:
      return signal_true(m, reader, f.child(0), w) && signal_true(m, reader, f.child(1), w);
    case Op::kOr:
      return signal_true(m, reader, f.child(0), w) || signal_true(m, reader, f.child(1), w);
    case Op::kImplies:
      return !signal_true(m, reader, f.child(0), w) || signal_true(m, reader, f.child(1), w);
    case Op::kIff:
      return signal_true(m, reader, f.child(0), w) == signal_true(m, reader, f.child(1), w);
    default:
      throw NotPropositional("oracle: signal is not propositional");
  }
}

struct Oracle {
  const Structure& m;
  EvalMode mode;

  std::size_t n() const { return m.states.size(); }
  AgentId k() const { return static_cast<AgentId>(m.agents.size()); }

  Table blank() const { return Table(k(), std::vector<Truth>(n(), Truth::kFalse)); }

  // a_1 Pr_j(args_1) + ... at (w, i); nullopt when undefined.
  std::optional<Rational> lhs(AgentId j, const std::vector<Rational>& coeffs,
                              const std::vector<Table>& args, AgentId i, StateIndex w) const {
    const bool inner = mode == EvalMode::kInnermost || mode == EvalMode::kInnermostAI;
    const AgentId reader = inner ? j : i;
    Rational total;
    if (mode == EvalMode::kOutermostAI || mode == EvalMode::kInnermostAI) {
      const AgentId signal_reader = mode == EvalMode::kOutermostAI ? i : j;
      const Formula& signal = (*m.signals)[j - 1][w];
      const Prior& nu = (*m.priors)[j - 1];
      Rational given;
      for (StateIndex v = 0; v < n(); ++v) {
        if (signal_true(m, signal_reader, signal, v)) given += nu[v];
      }
      if (given.is_zero()) return std::nullopt;
      for (std::size_t t = 0; t < args.size(); ++t) {
        Rational joint;
        for (StateIndex v = 0; v < n(); ++v) {
          if (!signal_true(m, signal_reader, signal, v)) continue;
          Truth a = args[t][reader - 1][v];
          if (a == Truth::kUndefined && nu[v].sign() > 0) return std::nullopt;
          if (a == Truth::kTrue) joint += nu[v];
        }
        total += coeffs[t] * (joint / given);
      }
      return total;
    }

    const AgentModel& am = m.agents[j - 1];
    const CellBelief* space = nullptr;
    for (std::size_t c = 0; c < am.cells.size(); ++c) {
      if (am.cells[c].test(w)) space = &am.beliefs[c];
    }
    for (std::size_t t = 0; t < args.size(); ++t) {
      Rational mass;
      for (std::size_t x = 0; x < space->atoms.size(); ++x) {
        std::size_t hit = 0, size = 0;
        for (StateIndex v = 0; v < n(); ++v) {
          if (!space->atoms[x].test(v)) continue;
          ++size;
          Truth a = args[t][reader - 1][v];
          if (a == Truth::kUndefined && space->mass[x].sign() > 0) return std::nullopt;
          if (a == Truth::kTrue) ++hit;
        }
        if (hit != 0 && hit != size) throw NonMeasurable("oracle: event splits an atom");
        if (hit == size) mass += space->mass[x];
      }
      // States of the event outside every atom would make it unmeasurable.
      for (StateIndex v = 0; v < n(); ++v) {
        if (!space->sample_space.test(v) || args[t][reader - 1][v] != Truth::kTrue) continue;
        bool covered = false;
        for (const StateSet& atom : space->atoms) covered = covered || atom.test(v);
        if (!covered) throw NonMeasurable("oracle: state outside the atoms");
      }
      total += coeffs[t] * mass;
    }
    return total;
  }

  Table prob_table(AgentId j, const std::vector<Rational>& coeffs,
                   const std::vector<Table>& args, Cmp c, const Rational& bound) const {
    Table out = blank();
    for (AgentId i = 1; i <= k(); ++i) {
      for (StateIndex w = 0; w < n(); ++w) {
        auto v = lhs(j, coeffs, args, i, w);
        out[i - 1][w] = v ? from_bool(compare(*v, c, bound)) : Truth::kUndefined;
      }
    }
    return out;
  }

  // EB^1_G applied to a table: /\_{j in G} Pr_j(level) >= 1.
  Table everyone(const AgentSet& g, const Table& level) const {
    Table out(k(), std::vector<Truth>(n(), Truth::kTrue));
    for (AgentId j : g) {
      Table b = prob_table(j, {Rational(1)}, {level}, Cmp::kGe, Rational(1));
      for (AgentId i = 1; i <= k(); ++i) {
        for (StateIndex w = 0; w < n(); ++w) {
          out[i - 1][w] = t_and(out[i - 1][w], b[i - 1][w]);
        }
      }
    }
    return out;
  }

  Table run(const Formula& f) const {
    Table out = blank();
    auto pointwise = [&](auto op) {
      Table a = run(f.child(0));
      Table b = run(f.child(1));
      for (AgentId i = 1; i <= k(); ++i) {
        for (StateIndex w = 0; w < n(); ++w) out[i - 1][w] = op(a[i - 1][w], b[i - 1][w]);
      }
      return out;
    };
    switch (f.op()) {
      case Op::kProp:
        for (AgentId i = 1; i <= k(); ++i) {
          for (StateIndex w = 0; w < n(); ++w) {
            out[i - 1][w] = from_bool(holds_prop(m, i, f.name(), w));
          }
        }
        return out;
      case Op::kIndexedProp:
        for (AgentId i = 1; i <= k(); ++i) {
          for (StateIndex w = 0; w < n(); ++w) {
            out[i - 1][w] =
                from_bool(holds_prop(m, i, f.name() + "@" + std::to_string(f.agent()), w));
          }
        }
        return out;
      case Op::kTrue:
        return Table(k(), std::vector<Truth>(n(), Truth::kTrue));
      case Op::kFalse:
        return out;
      case Op::kNot: {
        Table a = run(f.child(0));
        for (auto& row : a) {
          for (Truth& t : row) t = t_not(t);
        }
        return a;
      }
      case Op::kAnd:
        return pointwise(t_and);
      case Op::kOr:
        return pointwise(t_or);
      case Op::kImplies:
        return pointwise([](Truth a, Truth b) { return t_or(t_not(a), b); });
      case Op::kIff:
        return pointwise([](Truth a, Truth b) {
          return t_and(t_or(t_not(a), b), t_or(t_not(b), a));
        });
      case Op::kProb: {
        std::vector<Table> args;
        for (const Formula& c : f.children()) args.push_back(run(c));
        return prob_table(f.agent(), f.coeffs(), args, f.cmp(), f.bound());
      }
      case Op::kBelief:
        return prob_table(f.agent(), {Rational(1)}, {run(f.child(0))}, Cmp::kGe, Rational(1));
      case Op::kEveryoneBelieves: {
        Table level = run(f.child(0));
        for (int p = 0; p < f.power(); ++p) level = everyone(f.group(), level);
        return level;
      }
      case Op::kCommonBelief: {
        const std::size_t bound = n() * f.group().size() + 1;
        Table level = run(f.child(0));
        Table acc(k(), std::vector<Truth>(n(), Truth::kTrue));
        for (std::size_t step = 0; step < bound; ++step) {
          level = everyone(f.group(), level);
          for (AgentId i = 1; i <= k(); ++i) {
            for (StateIndex w = 0; w < n(); ++w) {
              acc[i - 1][w] = t_and(acc[i - 1][w], level[i - 1][w]);
            }
          }
        }
        return acc;
      }
    }
    throw std::logic_error("oracle: unknown node");
  }
};

}  // namespace

Table evaluate(const Structure& m, const Formula& f, EvalMode mode) {
  return Oracle{m, mode}.run(f);
}

Truth eval(const Structure& m, StateIndex w, AgentId i, const Formula& f, EvalMode mode) {
  return evaluate(m, f, mode).at(i - 1).at(w);
}

std::optional<Rational> prob_value(const Structure& m, StateIndex w, AgentId i,
                                   const Formula& f, EvalMode mode) {
  if (f.op() != Op::kProb) throw std::invalid_argument("oracle: not a probability formula");
  Oracle o{m, mode};
  std::vector<Table> args;
  for (const Formula& c : f.children()) args.push_back(o.run(c));
  return o.lhs(f.agent(), f.coeffs(), args, i, w);
}

}  // namespace brute
