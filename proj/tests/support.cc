#include "support.h"

#include "ambig/structure_io.h"
#include "ambig/syntax.h"

namespace testing {

std::string fixture_path(const std::string& name) {
  return std::string(AMBIG_FIXTURES) + "/" + name + ".json";
}

ambig::Structure fixture(const std::string& name) {
  return ambig::load_structure(fixture_path(name));
}

ambig::Formula F(const std::string& text) { return ambig::parse_formula(text); }

ambig::StateSet states(const ambig::Structure& m, const std::vector<std::string>& names) {
  ambig::StateSet s = m.empty_set();
  for (const std::string& n : names) s.set(m.state_index(n));
  return s;
}

std::vector<std::string> names(const ambig::Structure& m, const ambig::StateSet& s) {
  std::vector<std::string> out;
  for (ambig::StateIndex w : ambig::members(s)) out.push_back(m.states[w]);
  return out;
}

}  // namespace testing
