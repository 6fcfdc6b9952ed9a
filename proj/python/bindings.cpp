#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/generic.hpp"
#include "forcelab/io.hpp"
#include "forcelab/logic.hpp"
#include "forcelab/roalg.hpp"
#include "forcelab/sources.hpp"

namespace py = pybind11;
using namespace forcelab;

namespace {

std::vector<std::string> render_all(const std::vector<HFSet>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(hf_render(x));
  return out;
}

std::vector<HFSet> parse_all(const std::vector<std::string>& xs) {
  std::vector<HFSet> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(hf_parse(x));
  return out;
}

FinitePoset finite_poset(const std::string& spec) {
  auto src = parse_poset_source(spec);
  return src.require_finite();
}

std::string dump(const Json& j) { return j.dump(); }

std::string bool_value_json(const std::string& poset_spec, const std::string& formula,
                            const std::map<std::string, std::string>& names,
                            const std::string& group) {
  const FinitePoset base = finite_poset(poset_spec);
  const FinitePoset eff = forcing_poset(base);
  std::map<std::string, PName> constants;
  std::vector<PName> seeds;
  for (const auto& [var, text] : names) {
    Json j = text.rfind("check:", 0) == 0 ? Json(text) : Json::parse(text);
    auto x = name_from_json(j, eff);
    constants.emplace(var, x);
    seeds.push_back(x);
  }
  std::vector<PosetAutomorphism> g;
  if (group == "values") g = value_permutation_group(base);
  else if (group != "none") throw DomainError("unknown group '" + group + "' (none or values)");
  ForcingContext ctx(base, seeds, g);
  auto value = bool_value(ctx, {parse_formula(formula), constants});
  Json out;
  out["value"] = condition_set_to_json(ctx.poset(), value.members());
  out["is_zero"] = value == ctx.algebra().zero();
  out["is_one"] = value == ctx.algebra().one();
  return dump(out);
}

std::string homogeneity_json(const std::string& poset_spec) {
  const FinitePoset p = finite_poset(poset_spec);
  auto group = value_permutation_group(p);
  Json out;
  out["group_size"] = group.size();
  auto v = weak_homogeneity_violation(p, group);
  out["weakly_homogeneous"] = !v.has_value();
  out["violation"] = v ? Json::array({p.label(v->first), p.label(v->second)}) : Json();
  return dump(out);
}

std::string rs_json(const std::string& poset_spec, const std::vector<std::string>& dense,
                    std::optional<std::size_t> horizon) {
  auto src = parse_poset_source(poset_spec);
  auto lazy = src.lazy();
  auto specs = parse_dense_specs(dense, src);
  auto g = rs_generic(lazy, specs, lazy.top(), horizon.value_or(specs.size()));
  Json out;
  out["chain"] = Json::array();
  for (const auto& c : g.chain()) out["chain"].push_back(to_string(c));
  out["union"] = to_string(union_map(g));
  bool all = true;
  for (const auto& d : specs) all = all && g.meets(d);
  out["meets_all"] = all;
  return dump(out);
}

std::string mgeneric_json(const std::string& poset_spec,
                          const std::vector<std::vector<std::string>>& subsets) {
  const FinitePoset p = finite_poset(poset_spec);
  std::vector<HFSet> elems{encode_poset(p)};
  for (const auto& s : subsets) {
    std::vector<HFSet> codes;
    for (const auto& l : s) codes.push_back(p.encoding(p.require(l)));
    elems.push_back(HFSet::of(std::move(codes)));
  }
  auto m = FiniteModel::closure_of(elems);
  auto r = m_generic(m, encode_poset(p));
  const auto& rep = r.report;
  Json out;
  out["model_size"] = m.set().size();
  out["dense_sets"] = rep.dense_sets.size();
  out["all_met"] = rep.all_met;
  out["filter"] = condition_set_to_json(rep.decoded.poset, rep.members);
  out["g_in_model"] = rep.g_in_model;
  out["splitting"] = rep.splitting;
  out["union_map"] = rep.union_map ? Json(to_string(*rep.union_map)) : Json();
  return dump(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite forcing, definability and generic-filter workbench";

  static py::exception<Error> error(m, "ForcelabError");
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<DomainError> domain_error(m, "DomainError", error.ptr());
  static py::exception<BudgetExceeded> budget(m, "BudgetExceeded", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(domain_error, e.what());
    }
  });

  m.def("hf_canonical", [](const std::string& s) { return hf_render(hf_parse(s)); });
  m.def("hf_code", [](const std::string& s) { return ackermann_code(hf_parse(s)).str(); });
  m.def("hf_from_code", [](const std::string& code) { return hf_render(hf_from_code(BigNat(code))); });
  m.def("hf_rank", [](const std::string& s) { return rank(hf_parse(s)); });
  m.def("transitive_closure", [](const std::string& s) { return hf_render(transitive_closure(hf_parse(s))); });
  m.def("v_level", [](std::size_t n) { return render_all(v_level(n)); });

  m.def("satisfies",
        [](const std::vector<std::string>& domain, const std::string& formula,
           const std::map<std::string, std::string>& assignment) {
          Assignment env;
          for (const auto& [k, v] : assignment) env.emplace(k, hf_parse(v));
          return satisfies(FiniteStructure(parse_all(domain)), parse_formula(formula), env);
        },
        py::arg("domain"), py::arg("formula"), py::arg("assignment") = std::map<std::string, std::string>{});
  m.def("def_exact", [](const std::vector<std::string>& domain) {
    return render_all(def_exact(FiniteStructure(parse_all(domain))));
  });
  m.def("def_by_depth", [](const std::vector<std::string>& domain, std::size_t depth) {
    return render_all(def_by_depth(FiniteStructure(parse_all(domain)), depth));
  });
  m.def("l_hierarchy", [](std::size_t n) {
    std::vector<std::vector<std::string>> out;
    for (const auto& level : l_hierarchy(n)) out.push_back(render_all(level));
    return out;
  });

  m.def("poset_json", [](const std::string& spec) { return dump(poset_to_json(finite_poset(spec))); });
  m.def("is_separative", [](const std::string& spec) { return is_separative(finite_poset(spec)); });
  m.def("is_dense", [](const std::string& spec, const std::vector<std::string>& labels) {
    auto p = finite_poset(spec);
    auto d = p.empty_set();
    for (const auto& l : labels) d.set(p.require(l));
    return is_dense(p, d);
  });
  m.def("quotient_json", [](const std::string& spec) {
    return dump(poset_to_json(separative_quotient(finite_poset(spec)).poset));
  });
  m.def("ro_algebra_json", [](const std::string& spec) {
    return dump(algebra_to_json(ro_algebra(finite_poset(spec))));
  });

  m.def("bool_value_json", &bool_value_json, py::arg("poset"), py::arg("formula"),
        py::arg("names"), py::arg("group") = "none");
  m.def("homogeneity_json", &homogeneity_json, py::arg("poset"));
  m.def("rs_generic_json", &rs_json, py::arg("poset"), py::arg("dense"),
        py::arg("horizon") = std::nullopt);
  m.def("m_generic_json", &mgeneric_json, py::arg("poset"), py::arg("subsets"));
  m.def("countability_witness", [](const std::string& s, std::optional<std::size_t> horizon) {
    auto set = hf_parse(s);
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (const auto& [x, n] : countability_witness(set, horizon.value_or(set.size())))
      out.emplace_back(hf_render(x), n);
    return out;
  }, py::arg("set"), py::arg("horizon") = std::nullopt);
}
