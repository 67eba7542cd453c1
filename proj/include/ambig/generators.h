// Seeded random structures and formulas for property tests and campaigns.

#ifndef AMBIG_GENERATORS_H_
#define AMBIG_GENERATORS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ambig/formula.h"
#include "ambig/structure.h"

namespace ambig {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). Plain modulo keeps sequences identical across
  // standard libraries; the bias is irrelevant at these sizes.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  int between(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
  bool chance(int num, int den) { return below(den) < static_cast<std::size_t>(num); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct GenBounds {
  int max_states = 5;
  int max_agents = 3;
  int max_props = 3;
  int max_depth = 4;
};

struct StructureOptions {
  bool common_interpretation = false;
  // Allow atoms coarser than singletons. Partitions and interpretations are
  // then unions of a shared grain so that A3 and A4 still hold.
  bool coarse_atoms = false;
  int min_agents = 1;
};

// Random structure satisfying A1-A4, without priors or signals.
Structure random_structure(Rng& rng, const GenBounds& b, const StructureOptions& opt = {});

enum class SignalScheme {
  // Fresh proposition per (agent, cell), read alike by everyone.
  kCellLabels,
  // Fresh proposition s<i>_<w> per (agent, state): agent i reads it as its
  // own cell, every other agent as a block of a random partition. A5 and A6
  // hold but other agents disagree about what i has learned.
  kCrossInterpretation,
};

// Random structure with priors, beliefs conditioned from them (every cell
// has positive prior mass) and signals per `scheme`.
Structure random_ai_structure(Rng& rng, const GenBounds& b, SignalScheme scheme,
                              const StructureOptions& opt = {});

struct FormulaOptions {
  std::vector<std::string> props;  // leaf propositions
  int agents = 1;
  int depth = 4;
  // Also emit or/implies/iff/true/false, indexed propositions and EB^k;
  // meant for the parser round trip.
  bool full_surface = false;
};

// Grammar-directed random formula; about half of the interior nodes are
// probability or common-belief formulas.
Formula random_formula(Rng& rng, const FormulaOptions& opt);

// Options over the single-letter propositions of m (the generators' base
// propositions), or over all of them if there are none.
FormulaOptions formula_options_for(const Structure& m, int depth);

}  // namespace ambig

#endif  // AMBIG_GENERATORS_H_
