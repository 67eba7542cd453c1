// Seeded randomized verification campaigns over generated structures.

#ifndef AMBIG_CAMPAIGN_H_
#define AMBIG_CAMPAIGN_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ambig/generators.h"

namespace ambig {

// thm1-ab, thm1-ac, thm1-da, thm2-in, thm2-ou, prop1, mode-agreement,
// inai-eq-in, cb-oracle.
const std::vector<std::string>& all_checks();

struct CampaignConfig {
  std::uint64_t seed = 0;
  int trials = 100;
  GenBounds bounds;
  std::vector<std::string> checks;  // empty means all
  int formulas_per_trial = 3;
  // Test hook: swap the innermost CB translation for the naive one.
  bool inject_naive_cb = false;
};

struct CheckResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::optional<nlohmann::json> counterexample;  // lowest failing trial
  double seconds = 0;
};

struct CampaignReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  nlohmann::json to_json(bool with_timing = true) const;
};

// Throws std::invalid_argument on bad bounds, trial counts or check names,
// and CampaignFailure (with the check and trial) on evaluation errors.
CampaignReport run_campaign(const CampaignConfig& config);

struct CampaignFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ambig

#endif  // AMBIG_CAMPAIGN_H_
