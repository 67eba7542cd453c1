#include "ambig/structure_io.h"

#include <fstream>
#include <optional>
#include <sstream>

#include "ambig/errors.h"
#include "ambig/syntax.h"

namespace ambig {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ModelFormatError(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

const json& require_array(const json& j, const std::string& what,
                          std::size_t size) {
  if (!j.is_array() || j.size() != size) {
    throw ModelFormatError(what + " must be an array of length " +
                           std::to_string(size));
  }
  return j;
}

Rational to_rational(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ModelFormatError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ModelFormatError(where + ": expected an exact rational string, got " +
                         v.dump());
}

StateSet state_list(const Structure& m, const json& v, const std::string& where) {
  if (!v.is_array()) throw ModelFormatError(where + ": expected a list of states");
  StateSet s = m.empty_set();
  for (const json& name : v) {
    if (!name.is_string()) throw ModelFormatError(where + ": state names are strings");
    try {
      s.set(m.state_index(name.get<std::string>()));
    } catch (const UnknownState& e) {
      throw ModelFormatError(where + ": " + e.what());
    }
  }
  return s;
}

CellBelief read_cell_belief(const Structure& m, const StateSet& cell,
                            const json& v, const std::string& where) {
  CellBelief b;
  const json& measure = require(v, "measure");
  if (!measure.is_object()) throw ModelFormatError(where + ": measure must be an object");
  if (v.contains("atoms")) {
    b.sample_space = m.empty_set();
    const json& atoms = v.at("atoms");
    if (!atoms.is_array()) throw ModelFormatError(where + ": atoms must be a list");
    for (const json& a : atoms) {
      b.atoms.push_back(state_list(m, a, where + " atom"));
      b.sample_space |= b.atoms.back();
      b.mass.emplace_back(0);
    }
    for (const auto& [key, val] : measure.items()) {
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ModelFormatError(where + ": measure keys must be atom indices");
      }
      if (k >= b.atoms.size()) throw ModelFormatError(where + ": atom index out of range");
      b.mass[k] = to_rational(val, where);
    }
    return b;
  }
  b.sample_space = cell;
  std::vector<std::pair<StateIndex, Rational>> given;
  for (const auto& [key, val] : measure.items()) {
    StateIndex w;
    try {
      w = m.state_index(key);
    } catch (const UnknownState& e) {
      throw ModelFormatError(where + ": " + e.what());
    }
    b.sample_space.set(w);
    given.emplace_back(w, to_rational(val, where));
  }
  for (StateIndex w : members(b.sample_space)) {
    b.atoms.push_back(m.singleton(w));
    Rational x;
    for (const auto& [u, val] : given) {
      if (u == w) x = val;
    }
    b.mass.push_back(x);
  }
  return b;
}

}  // namespace

Structure structure_from_json(const json& j) {
  if (!j.is_object()) throw ModelFormatError("structure file must hold a JSON object");
  Structure m;
  const json& n_json = require(j, "agents");
  if (!n_json.is_number_integer() || n_json.get<long>() < 1) {
    throw ModelFormatError("\"agents\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(n_json.get<long>());

  for (const json& s : require(j, "states")) {
    if (!s.is_string() || s.get<std::string>().empty()) {
      throw ModelFormatError("state names must be nonempty strings");
    }
    m.states.push_back(s.get<std::string>());
  }
  for (const json& p : require(j, "props")) {
    if (!p.is_string() || !is_valid_prop_name(p.get<std::string>())) {
      throw ModelFormatError("invalid proposition name " + p.dump());
    }
    m.props.push_back(p.get<std::string>());
  }
  m.agents.resize(n);

  const json& parts = require_array(require(j, "partitions"), "partitions", n);
  const json& interps = require_array(require(j, "interpretations"), "interpretations", n);
  const json& beliefs = require_array(require(j, "beliefs"), "beliefs", n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string who = "agent " + std::to_string(a + 1);
    AgentModel& am = m.agents[a];
    if (!parts[a].is_array()) throw ModelFormatError(who + ": partition must be a list");
    for (const json& cell : parts[a]) {
      am.cells.push_back(state_list(m, cell, who + " partition"));
    }
    const json& cells_belief =
        require_array(beliefs[a], who + " beliefs", am.cells.size());
    for (std::size_t c = 0; c < am.cells.size(); ++c) {
      am.beliefs.push_back(read_cell_belief(m, am.cells[c], cells_belief[c],
                                            who + " cell " + std::to_string(c)));
    }
    if (!interps[a].is_object()) {
      throw ModelFormatError(who + ": interpretation must be an object");
    }
    for (const auto& [key, val] : interps[a].items()) {
      if (!m.find_prop(key)) {
        throw ModelFormatError(who + ": interpretation of undeclared proposition '" + key + "'");
      }
    }
    for (const std::string& p : m.props) {
      if (!interps[a].contains(p)) {
        throw ModelFormatError(who + ": no interpretation for '" + p + "'");
      }
      am.interpretation.push_back(state_list(m, interps[a].at(p), who + " " + p));
    }
  }

  if (j.contains("priors")) {
    const json& pri = require_array(j.at("priors"), "priors", n);
    std::vector<Prior> priors;
    for (std::size_t a = 0; a < n; ++a) {
      if (!pri[a].is_object()) throw ModelFormatError("priors must be objects");
      Prior nu(m.num_states());
      for (const auto& [key, val] : pri[a].items()) {
        try {
          nu[m.state_index(key)] = to_rational(val, "prior");
        } catch (const UnknownState& e) {
          throw ModelFormatError(std::string("prior: ") + e.what());
        }
      }
      priors.push_back(std::move(nu));
    }
    m.priors = std::move(priors);
  }

  if (j.contains("signals")) {
    const json& sig = require_array(j.at("signals"), "signals", n);
    std::vector<std::vector<Formula>> signals;
    for (std::size_t a = 0; a < n; ++a) {
      const std::string who = "agent " + std::to_string(a + 1);
      if (!sig[a].is_object()) throw ModelFormatError("signals must be objects");
      std::vector<std::optional<Formula>> per_state(m.num_states());
      for (const auto& [key, val] : sig[a].items()) {
        if (!val.is_string()) throw ModelFormatError(who + ": signals are formula strings");
        try {
          per_state[m.state_index(key)] = parse_formula(val.get<std::string>());
        } catch (const Error& e) {
          throw ModelFormatError(who + " signal at " + key + ": " + e.what());
        }
      }
      std::vector<Formula> row;
      for (StateIndex w = 0; w < m.num_states(); ++w) {
        if (!per_state[w]) {
          throw ModelFormatError(who + ": no signal at state '" + m.states[w] + "'");
        }
        row.push_back(*per_state[w]);
      }
      signals.push_back(std::move(row));
    }
    m.signals = std::move(signals);
  }

  m.finalize();
  return m;
}

Structure parse_structure(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed JSON: ") + e.what());
  }
  return structure_from_json(j);
}

Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str());
}

json structure_to_json(const Structure& m) {
  json j;
  j["agents"] = m.num_agents();
  j["states"] = m.states;
  j["props"] = m.props;
  json parts = json::array(), interps = json::array(), beliefs = json::array();
  for (const AgentModel& a : m.agents) {
    json cells = json::array(), cell_beliefs = json::array(), interp = json::object();
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
      cells.push_back(set_json(m, a.cells[c]));
      const CellBelief& b = a.beliefs[c];
      bool singletons = true;
      for (const StateSet& atom : b.atoms) singletons = singletons && atom.count() == 1;
      json cb, measure = json::object();
      if (singletons) {
        for (std::size_t k = 0; k < b.atoms.size(); ++k) {
          measure[m.states[b.atoms[k].find_first()]] = b.mass[k].str();
        }
      } else {
        json atoms = json::array();
        for (std::size_t k = 0; k < b.atoms.size(); ++k) {
          atoms.push_back(set_json(m, b.atoms[k]));
          measure[std::to_string(k)] = b.mass[k].str();
        }
        cb["atoms"] = atoms;
      }
      cb["measure"] = measure;
      cell_beliefs.push_back(cb);
    }
    for (std::size_t p = 0; p < m.props.size(); ++p) {
      interp[m.props[p]] = set_json(m, a.interpretation[p]);
    }
    parts.push_back(cells);
    beliefs.push_back(cell_beliefs);
    interps.push_back(interp);
  }
  j["partitions"] = parts;
  j["interpretations"] = interps;
  j["beliefs"] = beliefs;
  if (m.priors) {
    json pri = json::array();
    for (const Prior& nu : *m.priors) {
      json row = json::object();
      for (StateIndex w = 0; w < m.num_states(); ++w) row[m.states[w]] = nu[w].str();
      pri.push_back(row);
    }
    j["priors"] = pri;
  }
  if (m.signals) {
    json sig = json::array();
    for (const auto& per_state : *m.signals) {
      json row = json::object();
      for (StateIndex w = 0; w < m.num_states(); ++w) {
        row[m.states[w]] = print_formula(per_state[w]);
      }
      sig.push_back(row);
    }
    j["signals"] = sig;
  }
  return j;
}

std::string dump_structure(const Structure& m) { return structure_to_json(m).dump(2); }

}  // namespace ambig
