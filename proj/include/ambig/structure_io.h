// JSON structure files.
//
//   {
//     "agents": 2,
//     "states": ["w1", "w2"],
//     "props": ["p"],
//     "partitions": [[["w1"], ["w2"]], [["w1", "w2"]]],
//     "interpretations": [{"p": ["w1"]}, {"p": ["w1", "w2"]}],
//     "beliefs": [[{"measure": {"w1": "1"}}, {"measure": {"w2": "1"}}],
//                 [{"measure": {"w1": "1/2", "w2": "1/2"}}]],
//     "priors": [{"w1": "1/2", "w2": "1/2"}, ...],        (optional)
//     "signals": [{"w1": "s", "w2": "!s"}, ...]           (optional)
//   }
//
// Beliefs are listed per agent in partition-cell order. A cell may give
// "atoms" (a list of state lists); its "measure" is then keyed by atom index.
// Without atoms the algebra is the powerset and the measure is keyed by
// state. Missing keys weigh 0. Numbers are exact: "num/den" strings or JSON
// integers; floating point is rejected.

#ifndef AMBIG_STRUCTURE_IO_H_
#define AMBIG_STRUCTURE_IO_H_

#include <string>

#include <json.hpp>

#include "ambig/structure.h"

namespace ambig {

// Throws ModelFormatError.
Structure structure_from_json(const nlohmann::json& j);
Structure parse_structure(const std::string& text);
Structure load_structure(const std::string& path);

nlohmann::json structure_to_json(const Structure& m);
std::string dump_structure(const Structure& m);

}  // namespace ambig

#endif  // AMBIG_STRUCTURE_IO_H_
