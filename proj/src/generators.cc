#include "ambig/generators.h"

#include <algorithm>
#include <stdexcept>

#include "ambig/errors.h"

namespace ambig {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

const char* const kPropNames[] = {"p", "q", "r", "t", "u", "v", "x", "y", "z"};

// Random coarsening of `blocks`: each block joins one of the groups, groups
// numbered by first appearance.
std::vector<StateSet> coarsen(Rng& rng, const std::vector<StateSet>& blocks) {
  std::vector<StateSet> groups;
  for (const StateSet& b : blocks) {
    std::size_t g = rng.below(groups.size() + 1);
    if (g == groups.size()) {
      groups.push_back(b);
    } else {
      groups[g] |= b;
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const StateSet& a, const StateSet& b) { return a.find_first() < b.find_first(); });
  return groups;
}

std::vector<StateSet> blocks_within(const std::vector<StateSet>& grain, const StateSet& s) {
  std::vector<StateSet> out;
  for (const StateSet& g : grain) {
    if (g.is_subset_of(s)) out.push_back(g);
  }
  return out;
}

// Integer weights in [0, 8] per block, redrawn until some weight is
// positive.
std::vector<long> weights(Rng& rng, std::size_t n) {
  std::vector<long> w(n);
  do {
    for (long& x : w) x = rng.between(0, 8);
  } while (std::all_of(w.begin(), w.end(), [](long x) { return x == 0; }));
  return w;
}

StateSet random_union(Rng& rng, const std::vector<StateSet>& grain, std::size_t n) {
  StateSet s(n);
  for (const StateSet& g : grain) {
    if (rng.chance(1, 2)) s |= g;
  }
  return s;
}

struct Skeleton {
  Structure m;
  std::vector<StateSet> grain;
};

Skeleton skeleton(Rng& rng, const GenBounds& b, const StructureOptions& opt) {
  Skeleton sk;
  Structure& m = sk.m;
  const int n = rng.between(1, b.max_states);
  const int k = rng.between(std::min(opt.min_agents, b.max_agents), b.max_agents);
  const int np = rng.between(1, std::min<int>(b.max_props, std::size(kPropNames)));
  for (int w = 1; w <= n; ++w) m.states.push_back("w" + std::to_string(w));
  for (int p = 0; p < np; ++p) m.props.emplace_back(kPropNames[p]);

  std::vector<StateSet> singletons;
  for (int w = 0; w < n; ++w) {
    singletons.emplace_back(n);
    singletons.back().set(w);
  }
  sk.grain = opt.coarse_atoms && rng.chance(1, 2) ? coarsen(rng, singletons) : singletons;

  std::vector<StateSet> common;
  for (int p = 0; p < np; ++p) common.push_back(random_union(rng, sk.grain, n));
  for (int i = 0; i < k; ++i) {
    AgentModel a;
    a.cells = coarsen(rng, sk.grain);
    for (const StateSet& cell : a.cells) {
      CellBelief cb;
      cb.sample_space = cell;
      cb.atoms = blocks_within(sk.grain, cell);
      std::vector<long> w = weights(rng, cb.atoms.size());
      long total = 0;
      for (long x : w) total += x;
      for (long x : w) cb.mass.emplace_back(x, total);
      a.beliefs.push_back(std::move(cb));
    }
    if (opt.common_interpretation) {
      a.interpretation = common;
    } else {
      for (int p = 0; p < np; ++p) a.interpretation.push_back(random_union(rng, sk.grain, n));
    }
    m.agents.push_back(std::move(a));
  }
  m.finalize();
  return sk;
}

void expect_clean(const Report& r, const char* what) {
  if (!r.ok()) {
    throw std::logic_error(std::string(what) + ": " + r.findings().front().message);
  }
}

}  // namespace

Structure random_structure(Rng& rng, const GenBounds& b, const StructureOptions& opt) {
  Structure m = skeleton(rng, b, opt).m;
  expect_clean(validate_core(m), "generated structure violates A1-A4");
  return m;
}

Structure random_ai_structure(Rng& rng, const GenBounds& b, SignalScheme scheme,
                              const StructureOptions& opt) {
  Skeleton sk = skeleton(rng, b, opt);
  Structure& m = sk.m;
  const std::size_t n = m.num_states();

  // Prior first, beliefs conditioned from it.
  std::vector<Prior> priors;
  for (AgentModel& a : m.agents) {
    std::vector<long> raw(n, 0);
    long total = 0;
    for (CellBelief& cb : a.beliefs) {
      std::vector<long> w = weights(rng, cb.atoms.size());
      long cell_total = 0;
      for (std::size_t x = 0; x < w.size(); ++x) {
        cell_total += w[x];
        // Spread the atom's weight evenly: scale by the atom size so the
        // per-state numbers stay integral.
        for (StateIndex v : members(cb.atoms[x])) raw[v] = w[x];
      }
      for (std::size_t x = 0; x < w.size(); ++x) cb.mass[x] = Rational(w[x], cell_total);
      total += cell_total;
    }
    // raw[v] is the weight of v's atom; nu(v) = raw[v] / (|atom| * total).
    Prior nu(n);
    for (const CellBelief& cb : a.beliefs) {
      for (const StateSet& atom : cb.atoms) {
        for (StateIndex v : members(atom)) {
          nu[v] = Rational(raw[v], total) / Rational(static_cast<long>(atom.count()));
        }
      }
    }
    priors.push_back(std::move(nu));
  }
  m.priors = std::move(priors);

  const auto k = static_cast<AgentId>(m.num_agents());
  std::vector<std::vector<Formula>> signals(k, std::vector<Formula>(n, Formula::truth()));
  std::vector<std::string> fresh;
  std::vector<std::vector<StateSet>> reading(k);  // reading[j][f] = [[fresh f]]_j
  for (AgentId i = 1; i <= k; ++i) {
    const AgentModel& a = m.agent(i);
    if (scheme == SignalScheme::kCellLabels) {
      for (std::size_t c = 0; c < a.cells.size(); ++c) {
        std::string name = "p_" + std::to_string(i) + "_c" + std::to_string(c);
        for (AgentId j = 1; j <= k; ++j) reading[j - 1].push_back(a.cells[c]);
        for (StateIndex v : members(a.cells[c])) signals[i - 1][v] = Formula::prop(name);
        fresh.push_back(std::move(name));
      }
      continue;
    }
    std::vector<std::vector<StateSet>> views(k);
    for (AgentId j = 1; j <= k; ++j) {
      views[j - 1] = j == i ? a.cells : coarsen(rng, sk.grain);
    }
    for (StateIndex w = 0; w < n; ++w) {
      std::string name = "s" + std::to_string(i) + "_" + m.states[w];
      for (AgentId j = 1; j <= k; ++j) {
        for (const StateSet& block : views[j - 1]) {
          if (block.test(w)) reading[j - 1].push_back(block);
        }
      }
      signals[i - 1][w] = Formula::prop(name);
      fresh.push_back(std::move(name));
    }
  }
  for (const std::string& f : fresh) m.props.push_back(f);
  for (AgentId j = 1; j <= k; ++j) {
    for (const StateSet& s : reading[j - 1]) m.agent(j).interpretation.push_back(s);
  }
  m.signals = std::move(signals);
  m.finalize();
  expect_clean(validate_core(m), "generated ai structure violates A1-A4");
  expect_clean(validate_signals(m), "generated ai structure violates A5/A6");
  expect_clean(validate_priors(m), "generated ai structure has inconsistent priors");
  return m;
}

namespace {

const char* const kCoeffs[] = {"1", "1", "1", "1/2", "-1", "2", "1/3", "3/2", "-1/2"};
const char* const kBounds[] = {"0", "1/4", "1/3", "1/2", "2/3", "3/4", "1", "-1/2", "3/2"};

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const FormulaOptions& opt) : rng_(rng), opt_(opt) {}

  Formula gen(int depth) {
    if (depth <= 0 || rng_.chance(1, 6)) return leaf();
    if (rng_.chance(1, 2)) {
      switch (rng_.below(10)) {
        case 0: case 1: case 2: case 3: case 4: case 5:
          return prob(depth);
        case 6: case 7:
          return Formula::common_belief(group(), gen(depth - 1));
        case 8:
          return Formula::belief(agent(), gen(depth - 1));
        default:
          return Formula::everyone_believes(group(), rng_.between(1, 2), gen(depth - 1));
      }
    }
    switch (rng_.below(opt_.full_surface ? 7 : 5)) {
      case 0: case 1:
        return Formula::negate(gen(depth - 1));
      case 2: case 3:
        return Formula::conj(gen(depth - 1), gen(depth - 1));
      case 4:
        return Formula::disj(gen(depth - 1), gen(depth - 1));
      case 5:
        return Formula::implies(gen(depth - 1), gen(depth - 1));
      default:
        return Formula::iff(gen(depth - 1), gen(depth - 1));
    }
  }

 private:
  AgentId agent() { return rng_.between(1, opt_.agents); }

  AgentSet group() {
    std::vector<AgentId> g;
    for (AgentId i = 1; i <= opt_.agents; ++i) {
      if (rng_.chance(1, 2)) g.push_back(i);
    }
    if (g.empty()) g.push_back(agent());
    return make_agent_set(std::move(g));
  }

  Formula leaf() {
    const std::string& p = opt_.props[rng_.below(opt_.props.size())];
    if (opt_.full_surface) {
      switch (rng_.below(10)) {
        case 0: return Formula::truth();
        case 1: return Formula::falsity();
        case 2: case 3: return Formula::indexed(p, agent());
        default: break;
      }
    }
    return Formula::prop(p);
  }

  Formula prob(int depth) {
    const AgentId j = agent();
    std::vector<ProbTerm> terms;
    const int count = rng_.chance(2, 3) ? 1 : 2;
    for (int t = 0; t < count; ++t) {
      terms.push_back({Rational::parse(kCoeffs[rng_.below(std::size(kCoeffs))]), gen(depth - 1)});
    }
    const Cmp cmps[] = {Cmp::kGe, Cmp::kGe, Cmp::kLe, Cmp::kEq, Cmp::kGt, Cmp::kLt};
    return Formula::prob(j, std::move(terms), cmps[rng_.below(std::size(cmps))],
                         Rational::parse(kBounds[rng_.below(std::size(kBounds))]));
  }

  Rng& rng_;
  const FormulaOptions& opt_;
};

}  // namespace

Formula random_formula(Rng& rng, const FormulaOptions& opt) {
  if (opt.props.empty() || opt.agents < 1) {
    throw std::invalid_argument("formula generation needs propositions and agents");
  }
  return FormulaGen(rng, opt).gen(opt.depth);
}

FormulaOptions formula_options_for(const Structure& m, int depth) {
  FormulaOptions opt;
  for (const std::string& p : m.props) {
    if (p.size() == 1) opt.props.push_back(p);
  }
  if (opt.props.empty()) opt.props = m.props;
  opt.agents = static_cast<int>(m.num_agents());
  opt.depth = depth;
  return opt;
}

}  // namespace ambig
