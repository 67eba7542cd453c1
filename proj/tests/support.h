// Shared helpers for the test binaries.

#ifndef AMBIG_TESTS_SUPPORT_H_
#define AMBIG_TESTS_SUPPORT_H_

#include <string>
#include <vector>

#include "ambig/formula.h"
#include "ambig/structure.h"

namespace testing {

std::string fixture_path(const std::string& name);
ambig::Structure fixture(const std::string& name);

ambig::Formula F(const std::string& text);

ambig::StateSet states(const ambig::Structure& m, const std::vector<std::string>& names);
std::vector<std::string> names(const ambig::Structure& m, const ambig::StateSet& s);

}  // namespace testing

#endif  // AMBIG_TESTS_SUPPORT_H_
