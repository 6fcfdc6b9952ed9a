#include "experiment.hpp"

#include <map>
#include <set>
#include <sstream>

#include "forcelab/error.hpp"
#include "forcelab/logic.hpp"

namespace forcelab::cli {

namespace {

const std::set<std::string> kPosetOps = {"poset", "quotient"};
const std::set<std::string> kOps = {"poset",       "quotient",  "algebra", "rs_generic",
                                    "m_generic",   "homogeneity", "l_levels", "witness"};

std::string str(const Json& step, const char* key, const std::string& fallback = "") {
  if (!step.contains(key)) {
    if (!fallback.empty()) return fallback;
    throw DomainError("step '" + step.value("label", std::string("?")) + "': missing \"" + key +
                      "\"");
  }
  if (!step.at(key).is_string())
    throw DomainError("step '" + step.value("label", std::string("?")) + "': \"" + key +
                      "\" must be a string");
  return step.at(key).get<std::string>();
}

std::optional<std::size_t> opt_nat(const Json& step, const char* key) {
  if (!step.contains(key)) return std::nullopt;
  if (!step.at(key).is_number_unsigned())
    throw DomainError("step '" + step.value("label", std::string("?")) + "': \"" + key +
                      "\" must be a natural number");
  return step.at(key).get<std::size_t>();
}

void validate(const Json& config) {
  if (!config.is_object() || !config.contains("steps") || !config.at("steps").is_array())
    throw DomainError("experiment: expected {\"steps\": [...]}");
  std::map<std::string, std::string> seen;
  for (const auto& step : config.at("steps")) {
    if (!step.is_object()) throw DomainError("experiment: every step must be an object");
    auto label = str(step, "label");
    auto op = str(step, "op");
    if (!kOps.count(op)) throw DomainError("step '" + label + "': unknown op '" + op + "'");
    if (seen.count(label)) throw DomainError("step label '" + label + "' is used twice");
    for (const auto& [key, value] : step.items()) {
      if (!value.is_string()) continue;
      auto s = value.get<std::string>();
      if (s.empty() || s[0] != '@') continue;
      auto target = s.substr(1);
      auto it = seen.find(target);
      if (it == seen.end())
        throw DomainError("step '" + label + "': \"" + key + "\" refers to '" + target +
                          "', which is not an earlier step");
      if (!kPosetOps.count(it->second))
        throw DomainError("step '" + label + "': '" + target + "' does not produce a poset");
    }
    seen.emplace(label, op);
  }
}

}  // namespace

Outcome run_experiment(const Json& config, const Limits& limits) {
  validate(config);
  std::map<std::string, PosetSource> posets;
  auto source = [&](const Json& step) {
    auto text = str(step, "poset");
    if (text[0] == '@') return posets.at(text.substr(1));
    return parse_poset_source(text, limits);
  };

  Outcome out;
  out.report["steps"] = Json::array();
  std::ostringstream text;
  for (const auto& step : config.at("steps")) {
    const auto label = str(step, "label");
    const auto op = str(step, "op");
    Outcome r;
    if (op == "poset") {
      auto src = source(step);
      if (src.is_finite()) {
        r = poset_check_report(src.require_finite(), std::nullopt);
      } else {
        r.report["poset"] = src.text;
        r.report["finite"] = false;
        r.text = "lazy poset " + src.text + "\n";
      }
      posets.emplace(label, std::move(src));
    } else if (op == "quotient") {
      auto src = source(step);
      r = quotient_report(src.require_finite());
      PosetSource q;
      q.text = "@" + label;
      q.finite = separative_quotient(src.require_finite()).poset;
      posets.emplace(label, std::move(q));
    } else if (op == "algebra") {
      std::vector<std::vector<std::vector<std::string>>> parts;
      if (step.contains("partitions"))
        parts = step.at("partitions").get<decltype(parts)>();
      r = algebra_report(source(step).require_finite(), parts, limits);
    } else if (op == "rs_generic") {
      std::vector<std::string> dense;
      if (step.contains("dense")) dense = step.at("dense").get<std::vector<std::string>>();
      std::optional<std::string> seed;
      if (step.contains("seed")) seed = str(step, "seed");
      r = rs_report(source(step), dense, opt_nat(step, "horizon"), seed);
    } else if (op == "m_generic") {
      Json model = step;
      if (step.contains("poset")) {
        auto src = source(step);
        model["poset"] = poset_to_json(src.require_finite());
      }
      std::optional<std::string> seed;
      if (step.contains("seed")) seed = str(step, "seed");
      r = mgeneric_report(model_from_json(model, limits), seed);
    } else if (op == "homogeneity") {
      r = homogeneity_report(source(step).require_finite(),
                             parse_group_choice(str(step, "group", "values")), limits);
    } else if (op == "l_levels") {
      auto n = opt_nat(step, "levels").value_or(3);
      if (step.contains("base")) {
        auto x = hf_parse(str(step, "base"));
        r = levels_report(lx_hierarchy(x, n, limits), "L(X)", false);
      } else {
        r = levels_report(l_hierarchy(n, limits), "L", false);
      }
    } else if (op == "witness") {
      r = witness_report(hf_parse(str(step, "set")), opt_nat(step, "horizon"));
    }
    out.report["steps"].push_back({{"label", label}, {"op", op}, {"result", r.report}});
    text << "== " << label << " (" << op << ")\n" << r.text;
    for (auto& [name, content] : r.artifacts)
      out.artifacts.emplace_back(label + "-" + name, std::move(content));
  }
  out.text = text.str();
  out.artifacts.emplace_back("experiment.json", out.report.dump(2) + "\n");
  return out;
}

}  // namespace forcelab::cli
