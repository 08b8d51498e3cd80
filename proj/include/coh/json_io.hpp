#pragma once

#include <map>
#include <string>
#include <vector>

#include "coh/calculus.hpp"
#include "coh/internal_logic.hpp"
#include "coh/lattice.hpp"
#include "coh/semantics.hpp"
#include "coh/typespace.hpp"
#include "json.hpp"

namespace coh {

using json = nlohmann::json;

struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// schema versions printed by --version
const std::map<std::string, int>& schema_versions();

json to_json(const finite_model& m);
finite_model model_from_json(const json& j, const signature& sig);

json to_json(const fin_poset& p);  // {elements, leq: covering pairs}
fin_poset poset_from_json(const json& j);
json to_json(const fin_lattice& l);
fin_lattice lattice_from_json(const json& j);

json to_json(const derivation& d);
json to_json(const countermodel& cm);
json to_json(const verdict& v, bool with_proof);

// "2->1:[1,1]" with 1-based images
std::string map_key_text(const std::vector<int>& f, int m);
std::pair<std::vector<int>, int> parse_map_key(const std::string& s);

json to_json(const typespace& ts);
json to_json(const presentation& p);
// accepts {cutoff, spaces, maps} or {cutoff, lattices, homs}
presentation presentation_from_json(const json& j);

json to_json(const square& s);
square square_from_json(const json& j);

std::string fnv1a(const std::string& data);

struct run_report {
  std::string command;
  std::map<std::string, std::string> inputs;  // name -> hash
  json bounds = json::object();
  json verdicts = json::array();
  json stability = json::object();
  double wall_ms = 0;
  json to_json() const;
};

}  // namespace coh
