#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ambig/errors.h"
#include "ambig/generators.h"
#include "ambig/semantics.h"
#include "ambig/structure_io.h"
#include "ambig/transforms.h"
#include "support.h"

using namespace ambig;
using testing::F;
using testing::fixture;
using testing::names;

using Names = std::vector<std::string>;

namespace {

StateMap identity(const Structure& m) {
  StateMap map;
  for (StateIndex w = 0; w < m.num_states(); ++w) map.push_back({w, std::nullopt});
  return map;
}

std::vector<Formula> corpus() { return {F("p"), F("B2 p"), F("CB{1,2} p")}; }

Names extension_names(const Structure& m, AgentId i, const char* prop) {
  return names(m, m.agent(i).interpretation[m.prop_index(prop)]);
}

}  // namespace

TEST_CASE("fix_interpretation copies one agent's reading") {
  Structure m = fixture("m_red");
  Structure one = fix_interpretation(m, 1);
  CHECK(extension_names(one, 2, "p") == Names{"w1"});
  CHECK(extension_names(one, 1, "p") == Names{"w1"});
  Structure two = fix_interpretation(m, 2);
  CHECK(extension_names(two, 1, "p") == Names{"w1", "w2"});
  CHECK(is_common_interpretation(one));
  CHECK(validate_core(one).ok());
  for (AgentId j : {1, 2}) {
    CHECK(dump_structure(fix_interpretation(one, j)) == dump_structure(one));
  }
  CHECK(verify_transform_equivalence(m, one, identity(m), corpus(),
                                     TransformClaim::kFixInterpretation, 1)
            .ok());
  CHECK(verify_transform_equivalence(m, two, identity(m), corpus(),
                                     TransformClaim::kFixInterpretation, 2)
            .ok());
}

TEST_CASE("disjoint_copies on the red model") {
  Structure m = fixture("m_red");
  Transformed t = disjoint_copies(m);
  const Structure& d = t.model;
  CHECK(d.states == Names{"w1#1", "w1#2", "w2#1", "w2#2"});
  const std::size_t p = d.prop_index("p");
  for (AgentId i : {1, 2}) {
    CHECK(d.agent(i).interpretation[p].test(d.state_index("w1#2")));
    CHECK_FALSE(d.agent(i).interpretation[p].test(d.state_index("w2#1")));
  }
  const CellBelief& b = d.belief(2, d.state_index("w1#1"));
  CHECK(cell_measure(b, testing::states(d, {"w1#2"})) == Rational(1, 2));
  CHECK(cell_measure(b, testing::states(d, {"w2#2"})) == Rational(1, 2));
  CHECK(cell_measure(b, testing::states(d, {"w1#1", "w2#1"})).is_zero());
  CHECK(is_common_interpretation(d));
  CHECK(validate_core(d).ok());
  CHECK(t.map[d.state_index("w2#1")].old == m.state_index("w2"));
  CHECK(t.map[d.state_index("w2#1")].tag == 1);
  CHECK(verify_transform_equivalence(m, d, t.map, corpus(), TransformClaim::kDisjointCopies).ok());
}

TEST_CASE("disjoint_copies of a single-agent model is a relabeling") {
  Rng rng(5);
  GenBounds b;
  b.max_agents = 1;
  for (int k = 0; k < 20; ++k) {
    Structure m = random_structure(rng, b);
    Transformed t = disjoint_copies(m);
    REQUIRE(t.model.num_states() == m.num_states());
    for (StateIndex w = 0; w < m.num_states(); ++w) {
      CHECK(t.model.states[w] == m.states[w] + "#1");
      CHECK(t.map[w].old == w);
    }
    CHECK(t.model.agent(1).cells == m.agent(1).cells);
    CHECK(t.model.agent(1).interpretation == m.agent(1).interpretation);
  }
}

TEST_CASE("label_partitions on the common-interpretation red model") {
  Structure m = fixture("m_ck");
  Transformed t = label_partitions(m, m.state_index("w1"));
  const Structure& d = t.model;
  CHECK(d.states == m.states);
  REQUIRE(t.fresh.size() == 3);
  CHECK(t.fresh[0].name == "p_1_c0");
  CHECK(t.fresh[1].name == "p_1_c1");
  CHECK(t.fresh[2].name == "p_2_c0");
  CHECK(extension_names(d, 1, "p_1_c0") == Names{"w1"});
  CHECK(extension_names(d, 2, "p_1_c1") == Names{"w2"});
  CHECK(extension_names(d, 1, "p_2_c0") == Names{"w1", "w2"});
  CHECK(validate_signals(d).ok());
  CHECK(validate_priors(d).ok());
  CHECK(verify_transform_equivalence(m, d, t.map, corpus(), TransformClaim::kLabelPartitions).ok());

  CHECK_THROWS_AS(label_partitions(fixture("m_red"), 0), NotCommonInterpretation);
}

TEST_CASE("label_partitions avoids existing proposition names") {
  Structure m = fixture("m_ck");
  m.props.push_back("p_1_c0");
  for (AgentModel& a : m.agents) a.interpretation.push_back(m.empty_set());
  Transformed t = label_partitions(m, 0);
  std::set<std::string> old(m.props.begin(), m.props.end());
  for (const FreshProp& f : t.fresh) CHECK(old.count(f.name) == 0);
  CHECK(t.fresh[0].name.rfind("p_1_c0_", 0) == 0);
}

TEST_CASE("label_partitions restricts to reachable states") {
  // Two islands: nobody can reach w3 from w1.
  Structure m = parse_structure(R"({
    "agents": 1, "states": ["w1", "w2", "w3"], "props": ["p"],
    "partitions": [[["w1", "w2"], ["w3"]]],
    "interpretations": [{"p": ["w1", "w3"]}],
    "beliefs": [[{"measure": {"w1": "1/3", "w2": "2/3"}}, {"measure": {"w3": "1"}}]]})");
  Transformed t = label_partitions(m, m.state_index("w2"));
  CHECK(t.model.states == Names{"w1", "w2"});
  CHECK(t.fresh.size() == 1);
  CHECK(t.map[1].old == 1);
  std::vector<Formula> fs = {F("p"), F("Pr1(p) >= 1/3"), F("CB{1} !p"), F("B1 (p | !p)")};
  CHECK(verify_transform_equivalence(m, t.model, t.map, fs, TransformClaim::kLabelPartitions).ok());
}

TEST_CASE("corrupting the derived structure is detected") {
  Structure m = fixture("m_red");
  Structure one = fix_interpretation(m, 1);
  for (AgentModel& a : one.agents) a.interpretation[0].flip(1);
  Report r = verify_transform_equivalence(m, one, identity(m), corpus(),
                                          TransformClaim::kFixInterpretation, 1);
  REQUIRE_FALSE(r.ok());
  const Finding& f = r.findings()[0];
  CHECK(f.kind == "mismatch");
  CHECK(f.witness["claim"] == "a=>b");
  CHECK(f.witness["formula"] == "p");
  CHECK(f.witness["state"] == "w2");
  CHECK(f.witness["source_value"] == false);
  CHECK(f.witness["derived_value"] == true);

  Transformed t = disjoint_copies(m);
  t.model.agent(2).beliefs[t.model.agent(2).cell_of[0]].mass.assign(
      t.model.belief(2, 0).mass.size(), Rational());
  auto& b = t.model.agent(2).beliefs[t.model.agent(2).cell_of[0]];
  // Move agent 2's belief from copy 2 onto copy 1 of w2.
  for (std::size_t x = 0; x < b.atoms.size(); ++x) {
    if (b.atoms[x].test(t.model.state_index("w2#1"))) b.mass[x] = Rational(1);
  }
  CHECK_FALSE(verify_transform_equivalence(m, t.model, t.map, corpus(),
                                           TransformClaim::kDisjointCopies)
                  .ok());
}

TEST_CASE("inconsistent maps are rejected") {
  Structure m = fixture("m_red");
  Structure one = fix_interpretation(m, 1);
  StateMap swapped = {{1, std::nullopt}, {0, std::nullopt}};
  CHECK_THROWS_AS(verify_transform_equivalence(m, one, swapped, corpus(),
                                               TransformClaim::kFixInterpretation, 1),
                  ClaimSpecMismatch);
  StateMap twice = {{0, std::nullopt}, {0, std::nullopt}};
  CHECK_THROWS_AS(verify_transform_equivalence(m, one, twice, corpus(),
                                               TransformClaim::kFixInterpretation, 1),
                  ClaimSpecMismatch);
  Transformed t = disjoint_copies(m);
  CHECK_THROWS_AS(verify_transform_equivalence(m, t.model, identity(t.model), corpus(),
                                               TransformClaim::kDisjointCopies),
                  ClaimSpecMismatch);
  // The red model itself is not common-interpretation.
  CHECK_THROWS_AS(verify_transform_equivalence(m, m, identity(m), corpus(),
                                               TransformClaim::kFixInterpretation, 1),
                  ClaimSpecMismatch);
  CHECK_THROWS_AS(verify_transform_equivalence(m, one, identity(m), corpus(),
                                               TransformClaim::kLabelPartitions),
                  ClaimSpecMismatch);
}

TEST_CASE("transform outputs on generated models") {
  Rng rng(2024);
  GenBounds b;
  for (int trial = 0; trial < 150; ++trial) {
    StructureOptions opt;
    opt.coarse_atoms = trial % 2 == 0;
    Structure m = random_structure(rng, b, opt);
    const auto n = static_cast<AgentId>(m.num_agents());
    std::vector<Formula> fs;
    for (int k = 0; k < 4; ++k) fs.push_back(random_formula(rng, formula_options_for(m, 3)));
    INFO(dump_structure(m));

    for (AgentId i = 1; i <= n; ++i) {
      Structure fixed = fix_interpretation(m, i);
      CHECK(is_common_interpretation(fixed));
      CHECK(validate_core(fixed).ok());
      CHECK(verify_transform_equivalence(m, fixed, identity(m), fs,
                                         TransformClaim::kFixInterpretation, i)
                .ok());
    }

    Transformed t = disjoint_copies(m);
    CHECK(t.model.num_states() == m.num_states() * m.num_agents());
    CHECK(validate_core(t.model).ok());
    // Agent i's beliefs only ever put mass on copy i.
    for (AgentId i = 1; i <= n; ++i) {
      for (StateIndex w = 0; w < t.model.num_states(); ++w) {
        for (StateIndex v : members(belief_support(t.model.belief(i, w)))) {
          CHECK(t.map[v].tag == i);
        }
      }
    }
    CHECK(verify_transform_equivalence(m, t.model, t.map, fs, TransformClaim::kDisjointCopies)
              .ok());

    Structure ck = fix_interpretation(m, 1);
    const StateIndex w = rng.below(ck.num_states());
    Transformed lp = label_partitions(ck, w);
    CHECK(validate_core(lp.model).ok());
    CHECK(validate_signals(lp.model).ok());
    CHECK(names(lp.model, lp.model.full_set()) == names(ck, reachable(ck, [&] {
            AgentSet all;
            for (AgentId i = 1; i <= n; ++i) all.push_back(i);
            return all;
          }(), w)));
    for (const FreshProp& f : lp.fresh) CHECK_FALSE(ck.find_prop(f.name).has_value());
    CHECK(verify_transform_equivalence(ck, lp.model, lp.map, fs, TransformClaim::kLabelPartitions)
              .ok());
  }
}
