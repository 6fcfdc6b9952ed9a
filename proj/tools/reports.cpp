#include "reports.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "forcelab/error.hpp"
#include "forcelab/logic.hpp"
#include "forcelab/roalg.hpp"

namespace forcelab::cli {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

namespace {

std::vector<std::string> rendered(std::span<const HFSet> xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(hf_render(x));
  return out;
}

std::string braces(const std::vector<std::string>& xs) { return "{" + join(xs, ", ") + "}"; }

ConditionSet condition_set(const FinitePoset& p, const std::vector<std::string>& labels) {
  ConditionSet s = p.empty_set();
  for (const auto& l : labels) s.set(p.require(l));
  return s;
}

}  // namespace

Outcome hf_report(const HFSet& x, const Limits& limits) {
  Outcome o;
  auto code = ackermann_code(x, limits).str();
  o.report["set"] = hf_render(x);
  o.report["code"] = code;
  o.report["rank"] = rank(x);
  o.report["size"] = x.size();
  o.report["transitive"] = is_transitive(x);
  std::ostringstream t;
  t << "set         " << hf_render(x) << "\n"
    << "code        " << code << "\n"
    << "rank        " << rank(x) << "\n"
    << "size        " << x.size() << "\n"
    << "transitive  " << (is_transitive(x) ? "yes" : "no") << "\n";
  o.text = t.str();
  return o;
}

Outcome vlevel_report(std::size_t n, bool list, const Limits& limits) {
  auto level = v_level(n, limits);
  Outcome o;
  o.report["n"] = n;
  o.report["size"] = level.size();
  if (list) o.report["elements"] = rendered(level);
  std::ostringstream t;
  t << "|V_" << n << "| = " << level.size() << "\n";
  if (list)
    for (const auto& x : level) t << "  " << hf_render(x) << "\n";
  o.text = t.str();
  return o;
}

Outcome levels_report(const std::vector<std::vector<HFSet>>& levels, const std::string& title,
                      bool list) {
  Outcome o;
  o.report["levels"] = Json::array();
  std::ostringstream t;
  t << "n  |" << title << "_n|\n";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    Json row;
    row["n"] = k;
    row["size"] = levels[k].size();
    if (list) row["elements"] = rendered(levels[k]);
    o.report["levels"].push_back(row);
    t << k << "  " << levels[k].size() << "\n";
    if (list)
      for (const auto& x : levels[k]) t << "     " << hf_render(x) << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome poset_check_report(const FinitePoset& p, const std::optional<std::string>& dense) {
  Outcome o;
  auto& r = o.report;
  std::ostringstream t;
  r["size"] = p.size();
  r["elements"] = std::vector<std::string>(p.labels().begin(), p.labels().end());
  auto max = p.maximum();
  r["maximum"] = max ? Json(p.label(*max)) : Json(nullptr);
  std::vector<std::string> mins, maxs;
  for (auto i : p.minimal_elements()) mins.push_back(p.label(i));
  for (auto i : p.maximal_elements()) maxs.push_back(p.label(i));
  r["minimal"] = mins;
  r["maximal"] = maxs;
  auto viol = separativity_violation(p);
  r["separative"] = !viol;
  r["separativity_counterexample"] =
      viol ? Json::array({p.label(viol->first), p.label(viol->second)}) : Json(nullptr);
  r["splitting"] = has_splitting(p);
  r["antichain"] = is_antichain(p);
  t << "conditions  " << p.size() << "\n"
    << "maximum     " << (max ? p.label(*max) : "none") << "\n"
    << "minimal     " << braces(mins) << "\n"
    << "maximal     " << braces(maxs) << "\n"
    << "separative  "
    << (viol ? "no, " + p.label(viol->first) + " is not below " + p.label(viol->second) +
                   " yet every extension of it is compatible with it"
             : std::string("yes"))
    << "\n"
    << "splitting   " << (has_splitting(p) ? "yes" : "no") << "\n"
    << "antichain   " << (is_antichain(p) ? "yes" : "no") << "\n";
  if (dense) {
    std::vector<std::string> labels;
    std::stringstream ss(*dense);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) labels.push_back(item);
    bool d = is_dense(p, condition_set(p, labels));
    r["dense_check"] = {{"set", labels}, {"dense", d}};
    t << "dense       " << braces(labels) << " is " << (d ? "" : "not ") << "dense\n";
  }
  o.text = t.str();
  o.artifacts.emplace_back("poset.json", poset_to_json(p).dump(2) + "\n");
  o.artifacts.emplace_back("poset.dot", to_dot(p));
  return o;
}

Outcome quotient_report(const FinitePoset& p) {
  auto q = separative_quotient(p);
  Outcome o;
  std::ostringstream t;
  o.report["quotient"] = poset_to_json(q.poset);
  Json proj = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) proj[p.label(i)] = q.poset.label(q.projection[i]);
  o.report["projection"] = proj;
  o.report["separative"] = is_separative(q.poset);
  t << "quotient has " << q.poset.size() << " of " << p.size() << " conditions\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    t << "  " << p.label(i) << " -> " << q.poset.label(q.projection[i]) << "\n";
  o.text = t.str();
  o.artifacts.emplace_back("quotient.json", poset_to_json(q.poset).dump(2) + "\n");
  o.artifacts.emplace_back("quotient.dot", to_dot(q.poset, "quotient"));
  return o;
}

Outcome algebra_report(const FinitePoset& p,
                       const std::vector<std::vector<std::vector<std::string>>>& partitions,
                       const Limits& limits) {
  RegularOpenAlgebra a(p, limits);
  Outcome o;
  std::ostringstream t;
  Json alg = algebra_to_json(a);
  o.report["size"] = a.size();
  o.report["atoms"] = alg["atoms"];
  o.report["elements"] = alg["elements"];
  t << "r.o. algebra with " << a.size() << " elements, " << a.atoms().size() << " atoms\n";
  for (const auto& e : a.elements()) t << "  " << element_label(a, e) << "\n";
  if (!partitions.empty()) {
    std::vector<Partition> parts;
    for (const auto& cells : partitions) {
      Partition part;
      for (const auto& cell : cells) part.push_back(a.element(condition_set(p, cell)));
      parts.push_back(std::move(part));
    }
    auto rep = distributivity_report(a, parts);
    Json refinement = Json::array();
    for (const auto& cell : rep.refinement)
      refinement.push_back(condition_set_to_json(p, cell.members()));
    o.report["refinement"] = {{"refined", rep.refined},
                              {"input_sizes", rep.input_sizes},
                              {"cells", refinement}};
    t << "common refinement of " << parts.size() << " partitions: " << rep.refinement.size()
      << " cells\n";
    for (const auto& cell : rep.refinement) t << "  " << element_label(a, cell) << "\n";
  }
  o.text = t.str();
  o.artifacts.emplace_back("algebra.json", alg.dump(2) + "\n");
  o.artifacts.emplace_back("algebra.dot", to_dot(a));
  return o;
}

GroupChoice parse_group_choice(const std::string& s) {
  if (s == "none") return GroupChoice::None;
  if (s == "values") return GroupChoice::Values;
  throw DomainError("unknown group '" + s + "' (expected none or values)");
}

std::vector<PosetAutomorphism> build_group(const FinitePoset& p, GroupChoice g,
                                           const Limits& limits) {
  if (g == GroupChoice::Values) return value_permutation_group(p, limits);
  return {PosetAutomorphism::identity(p)};
}

Outcome homogeneity_report(const FinitePoset& p, GroupChoice g, const Limits& limits) {
  auto group = build_group(p, g, limits);
  auto viol = weak_homogeneity_violation(p, group);
  Outcome o;
  o.report["group_size"] = group.size();
  o.report["weakly_homogeneous"] = !viol;
  o.report["counterexample"] =
      viol ? Json::array({p.label(viol->first), p.label(viol->second)}) : Json(nullptr);
  std::ostringstream t;
  t << "group of " << group.size() << " automorphisms\n";
  if (viol)
    t << "not weakly homogeneous: no automorphism moves " << p.label(viol->first)
      << " to a condition compatible with " << p.label(viol->second) << "\n";
  else
    t << "weakly homogeneous\n";
  o.text = t.str();
  return o;
}

namespace {

Json map_pairs(const PartialMap& m) {
  Json out = Json::array();
  for (auto [k, v] : m.entries()) out.push_back(Json::array({k, v}));
  return out;
}

}  // namespace

Outcome rs_report(const PosetSource& source, const std::vector<std::string>& dense,
                  std::optional<std::size_t> horizon, const std::optional<std::string>& seed) {
  LazyPoset poset = source.lazy();
  auto specs = parse_dense_specs(dense, source);
  std::vector<std::string> names;
  for (const auto& s : specs) names.push_back(s.name);
  PartialMap start = seed ? parse_partial_map(*seed) : PartialMap{};
  const std::size_t h = horizon.value_or(specs.size());
  auto g = rs_generic(poset, specs, start, h);
  for (std::size_t k = 0; k < specs.size(); ++k)
    if (!g.meets(specs[k])) throw std::logic_error("generic misses " + specs[k].name);
  PartialMap u = union_map(g);
  Outcome o;
  std::vector<std::string> chain;
  for (const auto& c : g.chain()) chain.push_back(to_string(c));
  o.report["poset"] = source.text;
  o.report["dense"] = names;
  o.report["horizon"] = h;
  o.report["start"] = to_string(start);
  o.report["chain"] = chain;
  o.report["generators"] = Json::array({to_string(g.strongest())});
  o.report["union"] = to_string(u);
  o.report["union_pairs"] = map_pairs(u);
  o.report["meets_all"] = true;
  std::ostringstream t;
  t << "poset      " << source.text << "\n"
    << "dense sets " << specs.size() << ", horizon " << h << "\n"
    << "chain      " << join(chain, " >= ") << "\n"
    << "union      " << to_string(u) << "\n"
    << "all " << specs.size() << " dense sets met\n";
  o.text = t.str();
  o.artifacts.emplace_back("generic.json", o.report.dump(2) + "\n");
  return o;
}

Outcome witness_report(const HFSet& s, std::optional<std::size_t> horizon) {
  auto w = countability_witness(s, horizon.value_or(s.size()));
  Outcome o;
  Json inj = Json::array();
  std::ostringstream t;
  t << "injection of " << w.size() << " elements into w\n";
  std::vector<std::uint64_t> values;
  for (const auto& [x, v] : w) {
    inj.push_back(Json::array({hf_render(x), v}));
    values.push_back(v);
    t << "  " << hf_render(x) << " -> " << v << "\n";
  }
  std::sort(values.begin(), values.end());
  bool injective = std::adjacent_find(values.begin(), values.end()) == values.end();
  o.report["set"] = hf_render(s);
  o.report["horizon"] = horizon.value_or(s.size());
  o.report["injection"] = inj;
  o.report["total"] = w.size() == s.size();
  o.report["injective"] = injective;
  o.text = t.str();
  o.artifacts.emplace_back("witness.json", o.report.dump(2) + "\n");
  return o;
}

ModelInput model_from_json(const Json& j, const Limits& limits) {
  if (!j.is_object()) throw DomainError("model: expected a JSON object");
  if (j.contains("model")) {
    if (!j.contains("poset_code")) throw DomainError("model: missing \"poset_code\"");
    return {FiniteModel(hf_parse(j.at("model").get<std::string>())),
            hf_parse(j.at("poset_code").get<std::string>()),
            {}};
  }
  if (!j.contains("poset")) throw DomainError("model: missing \"poset\" or \"model\"");
  const auto& pj = j.at("poset");
  FinitePoset p = pj.is_string() ? parse_poset_source(pj.get<std::string>(), limits).require_finite()
                                 : poset_from_json(pj);
  HFSet code = encode_poset(p);
  std::map<HFSet, std::string> labels;
  if (!p.has_maps())
    for (std::size_t i = 0; i < p.size(); ++i) labels.emplace(p.encoding(i), p.label(i));
  std::vector<HFSet> elems{code};
  if (j.contains("subsets")) {
    for (const auto& sub : j.at("subsets")) {
      std::vector<HFSet> members;
      for (const auto& l : sub) members.push_back(p.encoding(p.require(l.get<std::string>())));
      elems.push_back(HFSet::of(std::move(members)));
    }
  }
  if (j.contains("extra"))
    for (const auto& x : j.at("extra")) elems.push_back(hf_parse(x.get<std::string>()));
  return {FiniteModel::closure_of(elems), code, std::move(labels)};
}

Outcome mgeneric_report(const ModelInput& in, const std::optional<std::string>& seed) {
  auto decoded = decode_poset(in.poset_code);
  auto label = [&](std::size_t i) {
    auto it = in.labels.find(decoded.conditions[i]);
    return it == in.labels.end() ? decoded.poset.label(i) : it->second;
  };
  auto labels = [&](const ConditionSet& set) {
    std::vector<std::string> out;
    for (auto i = set.find_first(); i != ConditionSet::npos; i = set.find_next(i))
      out.push_back(label(i));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::optional<HFSet> start;
  if (seed) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < decoded.poset.size(); ++i)
      if (label(i) == *seed) found = i;
    if (!found) throw DomainError("unknown seed condition '" + *seed + "'");
    start = decoded.conditions[*found];
  }
  auto result = m_generic(in.model, in.poset_code, start);
  const auto& rep = result.report;
  if (!rep.all_met) throw std::logic_error("m_generic missed a dense set of M");
  Outcome o;
  Json dense = Json::array();
  for (std::size_t i = 0; i < rep.dense_sets.size(); ++i)
    dense.push_back({{"set", labels(rep.dense_sets[i].members)}, {"met", rep.met[i]}});
  std::vector<std::string> chain;
  for (auto c : result.filter.chain()) chain.push_back(label(c));
  o.report["model_size"] = in.model.set().size();
  o.report["conditions"] = decoded.poset.size();
  o.report["dense_sets"] = dense;
  o.report["all_met"] = rep.all_met;
  o.report["chain"] = chain;
  o.report["filter"] = labels(rep.members);
  o.report["g"] = hf_render(rep.g_code);
  o.report["g_in_model"] = rep.g_in_model;
  o.report["splitting"] = rep.splitting;
  o.report["degenerate"] = !rep.splitting;
  o.report["union_map"] = rep.union_map ? Json(to_string(*rep.union_map)) : Json(nullptr);
  std::ostringstream t;
  t << "model has " << in.model.set().size() << " elements; poset has " << decoded.poset.size()
    << " conditions\n"
    << "dense sets in M: " << rep.dense_sets.size() << ", all met\n";
  for (const auto& d : rep.dense_sets) t << "  " << braces(labels(d.members)) << "\n";
  t << "chain      " << join(chain, " >= ") << "\n"
    << "G          " << braces(labels(rep.members)) << "\n"
    << "G in M     " << (rep.g_in_model ? "yes" : "no") << "\n"
    << "splitting  " << (rep.splitting ? "yes" : "no (degenerate: G is principal)") << "\n";
  if (rep.union_map) t << "union      " << to_string(*rep.union_map) << "\n";
  o.text = t.str();
  o.artifacts.emplace_back("mgeneric.json", o.report.dump(2) + "\n");
  return o;
}

}  // namespace forcelab::cli
