#ifndef AMBIG_MODE_H_
#define AMBIG_MODE_H_

#include <string_view>

namespace ambig {

// Which truth relation evaluates probability formulas.
//   kCommon       single shared interpretation
//   kOutermost    arguments read by the outer agent
//   kInnermost    arguments read by the believing agent
//   kOutermostAI  outer agent reads both arguments and the believer's signal
//   kInnermostAI  believer reads both, conditioning the prior on its signal
enum class EvalMode { kCommon, kOutermost, kInnermost, kOutermostAI, kInnermostAI };

// "common", "ou", "in", "ou-ai", "in-ai".
std::string_view mode_name(EvalMode mode);
// Throws std::invalid_argument on unknown names.
EvalMode parse_mode(std::string_view name);

inline bool is_ai_mode(EvalMode m) {
  return m == EvalMode::kOutermostAI || m == EvalMode::kInnermostAI;
}
inline bool is_inner_mode(EvalMode m) {
  return m == EvalMode::kInnermost || m == EvalMode::kInnermostAI;
}

}  // namespace ambig

#endif  // AMBIG_MODE_H_
