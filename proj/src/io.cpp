#include "forcelab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "forcelab/error.hpp"

namespace forcelab {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw DomainError(what + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string string_item(const Json& j, const std::string& what) {
  if (!j.is_string()) throw DomainError(what + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

}  // namespace

FinitePoset poset_from_json(const Json& j) {
  const auto& elems = field(j, "elements", "poset");
  if (!elems.is_array()) throw DomainError("poset: \"elements\" must be an array");
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  for (const auto& e : elems) {
    auto label = string_item(e, "poset element");
    if (!index.emplace(label, labels.size()).second)
      throw DomainError("poset: duplicate element '" + label + "'");
    labels.push_back(label);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (j.contains("leq")) {
    const auto& leq = j.at("leq");
    if (!leq.is_array()) throw DomainError("poset: \"leq\" must be an array");
    for (const auto& pr : leq) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
        throw DomainError("poset: leq entry " + pr.dump() + " is not a pair of labels");
      auto a = pr[0].get<std::string>();
      auto b = pr[1].get<std::string>();
      for (const auto& l : {a, b})
        if (!index.count(l))
          throw DomainError("poset: leq pair [\"" + a + "\",\"" + b + "\"] names unknown element '" +
                            l + "'");
      pairs.emplace_back(index[a], index[b]);
    }
  }
  for (const auto& [a, b] : pairs)
    if (a != b && std::find(pairs.begin(), pairs.end(), std::pair{b, a}) != pairs.end())
      throw DomainError("poset: leq pair [\"" + labels[a] + "\",\"" + labels[b] +
                        "\"] breaks antisymmetry");
  return FinitePoset::from_pairs(std::move(labels), pairs);
}

Json poset_to_json(const FinitePoset& p) {
  Json out;
  out["elements"] = Json::array();
  for (const auto& l : p.labels()) out["elements"].push_back(l);
  out["leq"] = Json::array();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) out["leq"].push_back(Json::array({p.label(a), p.label(b)}));
  return out;
}

FiniteStructure structure_from_json(const Json& j) {
  const auto& dom = field(j, "domain", "structure");
  if (!dom.is_array()) throw DomainError("structure: \"domain\" must be an array");
  std::vector<HFSet> elems;
  for (const auto& e : dom) elems.push_back(hf_parse(string_item(e, "structure domain")));
  return FiniteStructure(std::move(elems));
}

Json structure_to_json(const FiniteStructure& m) {
  Json out;
  out["domain"] = Json::array();
  for (const auto& x : m.domain()) out["domain"].push_back(hf_render(x));
  out["membership"] = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m.member(i, k))
        out["membership"].push_back(
            Json::array({hf_render(m.domain()[i]), hf_render(m.domain()[k])}));
  return out;
}

PName name_from_json(const Json& j, const FinitePoset& p) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    const std::string prefix = "check:";
    if (s.rfind(prefix, 0) != 0)
      throw DomainError("name literal '" + s + "' must start with \"check:\"");
    return check_name(one_condition(p), hf_parse(s.substr(prefix.size())));
  }
  const auto& pairs = field(j, "pairs", "name");
  if (!pairs.is_array()) throw DomainError("name: \"pairs\" must be an array");
  std::vector<PName::Pair> out;
  for (const auto& pr : pairs) {
    if (!pr.is_array() || pr.size() != 2 || !pr[1].is_string())
      throw DomainError("name: pair " + pr.dump() + " is not [name, label]");
    out.emplace_back(name_from_json(pr[0], p), p.require(pr[1].get<std::string>()));
  }
  return PName::of(std::move(out));
}

namespace {

std::optional<HFSet> as_check(const PName& x, std::size_t one) {
  std::vector<HFSet> elems;
  for (const auto& [y, q] : x.pairs()) {
    if (q != one) return std::nullopt;
    auto v = as_check(y, one);
    if (!v) return std::nullopt;
    elems.push_back(*v);
  }
  return HFSet::of(std::move(elems));
}

}  // namespace

Json name_to_json(const PName& x, const FinitePoset& p) {
  const std::size_t one = one_condition(p);
  if (auto v = as_check(x, one)) return "check:" + hf_render(*v);
  Json out;
  out["pairs"] = Json::array();
  for (const auto& [y, q] : x.pairs())
    out["pairs"].push_back(Json::array({name_to_json(y, p), p.label(q)}));
  return out;
}

Json condition_set_to_json(const FinitePoset& p, const ConditionSet& s) {
  std::vector<std::string> labels;
  for (auto i = s.find_first(); i != ConditionSet::npos; i = s.find_next(i))
    labels.push_back(p.label(i));
  std::sort(labels.begin(), labels.end());
  return Json(labels);
}

Json algebra_to_json(const RegularOpenAlgebra& a) {
  Json out;
  out["poset"] = poset_to_json(a.poset());
  out["size"] = a.size();
  out["elements"] = Json::array();
  for (const auto& e : a.elements())
    out["elements"].push_back(condition_set_to_json(a.poset(), e.members()));
  out["atoms"] = Json::array();
  for (const auto& e : a.atoms())
    out["atoms"].push_back(condition_set_to_json(a.poset(), e.members()));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace forcelab
