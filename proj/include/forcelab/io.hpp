#pragma once

#include <string>

#include <json.hpp>

#include "forcelab/forcing.hpp"
#include "forcelab/logic.hpp"
#include "forcelab/poset.hpp"
#include "forcelab/roalg.hpp"

namespace forcelab {

using Json = nlohmann::ordered_json;

// {"elements": [...], "leq": [["b","a"], ...]} where ["b","a"] means b <= a.
// Reflexive pairs are added; errors name the offending pair.
FinitePoset poset_from_json(const Json& j);
// Non-reflexive pairs only, in condition order.
Json poset_to_json(const FinitePoset& p);

// {"domain": ["{}", "{{}}"]}; membership is always recomputed.
FiniteStructure structure_from_json(const Json& j);
Json structure_to_json(const FiniteStructure& m);

// "check:<hf>" or {"pairs": [[<name>, "<label>"], ...]}, labels resolved in
// `p` (the forcing poset, formal top included).
PName name_from_json(const Json& j, const FinitePoset& p);
Json name_to_json(const PName& x, const FinitePoset& p);

Json condition_set_to_json(const FinitePoset& p, const ConditionSet& s);
// Elements as sorted label lists, in algebra order.
Json algebra_to_json(const RegularOpenAlgebra& a);

Json read_json_file(const std::string& path);

}  // namespace forcelab
