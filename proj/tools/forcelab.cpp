#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "forcelab/error.hpp"
#include "forcelab/forcing.hpp"
#include "forcelab/logic.hpp"
#include "reports.hpp"

namespace fs = std::filesystem;
using namespace forcelab;
using namespace forcelab::cli;

namespace {

struct Globals {
  bool json = false;
  std::string out;
  Limits limits;
};

void add_budget_flags(CLI::App& app, Limits& l) {
  auto group = "Budgets";
  app.add_option("--max-code-bits", l.max_code_bits, "Largest Ackermann code, in bits")
      ->group(group)->capture_default_str();
  app.add_option("--max-level-size", l.max_level_size, "Largest V_n / L_n level")
      ->group(group)->capture_default_str();
  app.add_option("--max-subsets", l.max_subsets, "Largest family of subsets")
      ->group(group)->capture_default_str();
  app.add_option("--max-structure-size", l.max_structure_size, "Largest structure domain")
      ->group(group)->capture_default_str();
  app.add_option("--max-automorphisms", l.max_automorphisms, "Largest automorphism list")
      ->group(group)->capture_default_str();
  app.add_option("--max-depth", l.max_depth, "Deepest quantifier depth for def")
      ->group(group)->capture_default_str();
  app.add_option("--max-type-tuples", l.max_type_tuples, "Most tuples in a type table")
      ->group(group)->capture_default_str();
  app.add_option("--max-poset-size", l.max_poset_size, "Largest explicit poset")
      ->group(group)->capture_default_str();
  app.add_option("--max-algebra-size", l.max_algebra_size, "Largest r.o. algebra")
      ->group(group)->capture_default_str();
  app.add_option("--max-names", l.max_names, "Largest name universe")
      ->group(group)->capture_default_str();
  app.add_option("--max-group-size", l.max_group_size, "Largest automorphism group")
      ->group(group)->capture_default_str();
}

FiniteStructure load_structure(const std::string& file, std::optional<std::size_t> vlevel,
                               const Limits& limits) {
  if (!file.empty() && vlevel) throw DomainError("give either --structure or --vlevel");
  if (vlevel) return FiniteStructure(v_level(*vlevel, limits));
  if (file.empty()) throw DomainError("a structure is required (--structure or --vlevel)");
  return structure_from_json(read_json_file(file));
}

Assignment parse_assignments(const std::vector<std::string>& items) {
  Assignment a;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DomainError("assignment '" + item + "' must look like var=<hf set>");
    a[item.substr(0, eq)] = hf_parse(item.substr(eq + 1));
  }
  return a;
}

Outcome logic_eval(const FiniteStructure& m, const Formula& phi, const Assignment& a) {
  bool value = satisfies(m, phi, a);
  Outcome o;
  o.report["formula"] = to_string(phi);
  o.report["domain_size"] = m.size();
  o.report["value"] = value;
  o.text = std::string(value ? "true" : "false") + "\n";
  return o;
}

Outcome logic_def(const FiniteStructure& m, const std::optional<std::string>& formula,
                  std::optional<std::size_t> depth, bool with_parameters, const Limits& limits) {
  Outcome o;
  std::ostringstream t;
  auto list = [](const std::vector<HFSet>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(hf_render(x));
    return out;
  };
  if (formula) {
    auto phi = parse_formula(*formula);
    auto set = defined_set(m, phi);
    o.report["formula"] = to_string(phi);
    o.report["defined_set"] = hf_render(set);
    o.text = hf_render(set) + "\n";
    return o;
  }
  std::vector<HFSet> family;
  if (depth) {
    family = def_by_depth(m, *depth, limits);
    o.report["method"] = "depth";
    o.report["depth"] = *depth;
  } else {
    family = def_exact(m, limits, DefOptions{with_parameters});
    o.report["method"] = with_parameters ? "exact-with-parameters" : "exact";
  }
  auto elems = definable_elements(m, limits);
  o.report["domain_size"] = m.size();
  o.report["count"] = family.size();
  o.report["subsets"] = list(family);
  o.report["definable_elements"] = list(elems);
  t << family.size() << " definable subsets of a " << m.size() << "-element structure\n";
  for (const auto& x : family) t << "  " << hf_render(x) << "\n";
  t << "definable elements: " << elems.size() << "\n";
  o.text = t.str();
  return o;
}

struct NameOptions {
  std::string poset;
  std::string formula;
  std::vector<std::string> names;
  std::optional<std::size_t> check_level;
  std::optional<std::size_t> universe_rank;
  std::string group = "none";
  std::optional<std::string> condition;
};

void add_name_options(CLI::App* cmd, NameOptions& o, bool needs_formula) {
  cmd->add_option("--poset", o.poset, "Poset spec or JSON file")->required();
  auto f = cmd->add_option("--formula", o.formula, "Formula; free variables are names");
  if (needs_formula) f->required();
  cmd->add_option("--name", o.names, "var=check:<hf> or var=<name JSON>");
  cmd->add_option("--check-level", o.check_level,
                  "Add the check names of V_n to the name universe");
  cmd->add_option("--universe-rank", o.universe_rank,
                  "Add every name of rank <= r over the conditions to the universe");
  cmd->add_option("--group", o.group, "Automorphism group: none or values")
      ->capture_default_str();
}

struct ForcingSetup {
  FinitePoset original;
  std::vector<PosetAutomorphism> group;
  std::unique_ptr<ForcingContext> context;
  std::optional<NameFormula> phi;
};

ForcingSetup forcing_setup(const NameOptions& o, const Limits& limits) {
  ForcingSetup s;
  s.original = parse_poset_source(o.poset, limits).require_finite();
  FinitePoset eff = forcing_poset(s.original);
  std::vector<PName> seeds;
  if (!o.formula.empty()) {
    NameFormula phi{parse_formula(o.formula), {}};
    for (const auto& item : o.names) {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw DomainError("name binding '" + item + "' must look like var=<name>");
      auto value = item.substr(eq + 1);
      Json j = value.rfind("check:", 0) == 0 ? Json(value) : Json::parse(value);
      phi.constants[item.substr(0, eq)] = name_from_json(j, eff);
    }
    for (const auto& [var, name] : phi.constants) seeds.push_back(name);
    s.phi = std::move(phi);
  }
  if (o.check_level)
    for (const auto& x : v_level(*o.check_level, limits))
      seeds.push_back(check_name(one_condition(s.original), x));
  if (o.universe_rank) {
    std::vector<std::size_t> conds(eff.size());
    for (std::size_t i = 0; i < conds.size(); ++i) conds[i] = i;
    auto all = all_names(*o.universe_rank, conds, limits);
    seeds.insert(seeds.end(), all.begin(), all.end());
  }
  auto choice = parse_group_choice(o.group);
  if (choice != GroupChoice::None) s.group = build_group(s.original, choice, limits);
  s.context = std::make_unique<ForcingContext>(s.original, seeds, s.group, limits);
  return s;
}

Json value_json(const ForcingContext& c, const RegularOpenSet& v) {
  return condition_set_to_json(c.poset(), v.members());
}

std::string value_text(const ForcingContext& c, const RegularOpenSet& v) {
  if (v == c.algebra().zero()) return "0";
  if (v == c.algebra().one()) return "1";
  return element_label(c.algebra(), v);
}

Outcome forcing_bval(const NameOptions& o, const Limits& limits) {
  auto s = forcing_setup(o, limits);
  const auto& c = *s.context;
  auto v = bool_value(c, *s.phi);
  Outcome out;
  out.report["formula"] = to_string(s.phi->formula);
  out.report["universe_size"] = c.universe().size();
  out.report["formal_top"] = c.has_formal_top();
  out.report["value"] = value_json(c, v);
  out.report["is_zero"] = v == c.algebra().zero();
  out.report["is_one"] = v == c.algebra().one();
  out.text = "||" + to_string(s.phi->formula) + "|| = " + value_text(c, v) + "\n" +
             "name universe: " + std::to_string(c.universe().size()) + " names\n";
  return out;
}

Outcome forcing_forces(const NameOptions& o, const Limits& limits) {
  auto s = forcing_setup(o, limits);
  const auto& c = *s.context;
  Outcome out;
  out.report["formula"] = to_string(s.phi->formula);
  if (o.condition) {
    auto p = c.poset().require(*o.condition);
    bool f = forces(c, p, *s.phi);
    out.report["condition"] = *o.condition;
    out.report["forces"] = f;
    out.text = *o.condition + (f ? " forces " : " does not force ") + to_string(s.phi->formula) +
               "\n";
    return out;
  }
  std::vector<std::string> forcing;
  for (std::size_t p = 0; p < c.poset().size(); ++p)
    if (forces(c, p, *s.phi)) forcing.push_back(c.poset().label(p));
  out.report["forcing_conditions"] = forcing;
  out.text = "conditions forcing " + to_string(s.phi->formula) + ": {" + join(forcing, ", ") +
             "}\n";
  return out;
}

Outcome forcing_symmetry(NameOptions o, const Limits& limits) {
  if (o.group == "none") o.group = "values";
  auto s = forcing_setup(o, limits);
  const auto& c = *s.context;
  std::size_t violations = 0;
  Json checks = Json::array();
  std::ostringstream t;
  for (const auto& g : c.group()) {
    auto r = check_symmetry_lemma(c, *s.phi, g);
    if (!r.holds) {
      ++violations;
      t << "violation at " << c.poset().label(*r.counterexample) << "\n";
    }
    std::vector<std::string> perm;
    for (auto i : g.permutation()) perm.push_back(c.poset().label(i));
    checks.push_back({{"permutation", perm},
                      {"holds", r.holds},
                      {"counterexample",
                       r.counterexample ? Json(c.poset().label(*r.counterexample)) : Json(nullptr)}});
  }
  Outcome out;
  out.report["formula"] = to_string(s.phi->formula);
  out.report["automorphisms"] = c.group().size();
  out.report["violations"] = violations;
  out.report["checks"] = checks;
  t << "symmetry checked for " << c.group().size() << " automorphisms x " << c.poset().size()
    << " conditions: " << violations << " violations\n";
  out.text = t.str();
  return out;
}

Outcome forcing_homog(NameOptions o, const Limits& limits) {
  if (o.group == "none") o.group = "values";
  auto original = parse_poset_source(o.poset, limits).require_finite();
  Outcome out = homogeneity_report(original, parse_group_choice(o.group), limits);
  if (!o.formula.empty()) {
    auto s = forcing_setup(o, limits);
    bool one = homogeneity_zero_one(*s.context, *s.phi);
    out.report["formula"] = to_string(s.phi->formula);
    out.report["value"] = one ? 1 : 0;
    out.text += "||" + to_string(s.phi->formula) + "|| = " + (one ? "1" : "0") + "\n";
  }
  return out;
}

void write_artifacts(const std::string& dir, const Outcome& o) {
  if (dir.empty() || o.artifacts.empty()) return;
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, fs::path>> staged;
  try {
    for (const auto& [name, content] : o.artifacts) {
      fs::path final_path = fs::path(dir) / name;
      fs::path tmp = final_path;
      tmp += ".partial";
      std::ofstream f(tmp, std::ios::binary);
      f << content;
      f.close();
      if (!f) throw DomainError("cannot write '" + tmp.string() + "'");
      staged.emplace_back(tmp, final_path);
    }
  } catch (...) {
    for (const auto& [tmp, final_path] : staged) fs::remove(tmp);
    throw;
  }
  for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forcelab: finite forcing, definability and generic-filter workbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print machine-readable JSON reports");
  app.add_option("--out", g.out, "Directory for JSON/DOT artifacts");
  add_budget_flags(app, g.limits);

  std::function<Outcome()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* cmd = parent->add_subcommand(name, desc);
    cmd->fallthrough();
    return cmd;
  };
  auto group_cmd = [&](const std::string& name, const std::string& desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->require_subcommand(1);
    cmd->fallthrough();
    return cmd;
  };

  // hf
  auto* hf = group_cmd("hf", "Hereditarily finite sets");
  std::string hf_text;
  std::size_t level = 0;
  bool list = false;
  auto* hf_parse_cmd = leaf(hf, "parse", "Canonical form, code, rank of a set");
  hf_parse_cmd->add_option("set", hf_text, "Brace-notation set")->required();
  hf_parse_cmd->callback([&] { action = [&] { return hf_report(hf_parse(hf_text), g.limits); }; });
  auto* hf_rank_cmd = leaf(hf, "rank", "Rank of a set");
  hf_rank_cmd->add_option("set", hf_text, "Brace-notation set")->required();
  hf_rank_cmd->callback([&] {
    action = [&] {
      auto x = hf_parse(hf_text);
      Outcome o;
      o.report["set"] = hf_render(x);
      o.report["rank"] = rank(x);
      o.text = std::to_string(rank(x)) + "\n";
      return o;
    };
  });
  auto* hf_vlevel_cmd = leaf(hf, "vlevel", "The level V_n");
  hf_vlevel_cmd->add_option("n", level, "Level")->required();
  hf_vlevel_cmd->add_flag("--list", list, "List the elements");
  hf_vlevel_cmd->callback([&] { action = [&] { return vlevel_report(level, list, g.limits); }; });
  auto* hf_tc_cmd = leaf(hf, "tc", "Transitive closure");
  hf_tc_cmd->add_option("set", hf_text, "Brace-notation set")->required();
  hf_tc_cmd->callback([&] {
    action = [&] {
      auto x = hf_parse(hf_text);
      auto tc = transitive_closure(x);
      Outcome o;
      o.report["set"] = hf_render(x);
      o.report["closure"] = hf_render(tc);
      o.report["size"] = tc.size();
      o.report["was_transitive"] = is_transitive(x);
      o.text = hf_render(tc) + "\n";
      return o;
    };
  });

  // logic
  auto* logic = group_cmd("logic", "First-order logic over finite structures");
  std::string structure_file, formula_text, base_text;
  std::optional<std::size_t> structure_vlevel, depth;
  std::vector<std::string> assigns;
  bool with_parameters = false;
  std::size_t levels = 0;
  auto structure_opts = [&](CLI::App* cmd) {
    cmd->add_option("--structure", structure_file, "FiniteStructure JSON file");
    cmd->add_option("--vlevel", structure_vlevel, "Use (V_n, in) as the structure");
  };
  auto* eval_cmd = leaf(logic, "eval", "Evaluate a formula under an assignment");
  structure_opts(eval_cmd);
  eval_cmd->add_option("--formula", formula_text, "S-expression formula")->required();
  eval_cmd->add_option("--assign", assigns, "var=<hf set>");
  eval_cmd->callback([&] {
    action = [&] {
      return logic_eval(load_structure(structure_file, structure_vlevel, g.limits),
                        parse_formula(formula_text), parse_assignments(assigns));
    };
  });
  auto* def_cmd = leaf(logic, "def", "Definable subsets (Def) of a structure");
  structure_opts(def_cmd);
  def_cmd->add_option("--formula", formula_text, "Only the set defined by this formula");
  def_cmd->add_option("--depth", depth, "Use formulas of quantifier depth <= d");
  def_cmd->add_flag("--with-parameters", with_parameters, "Allow parameters");
  def_cmd->callback([&] {
    action = [&] {
      std::optional<std::string> f;
      if (!formula_text.empty()) f = formula_text;
      return logic_def(load_structure(structure_file, structure_vlevel, g.limits), f, depth,
                       with_parameters, g.limits);
    };
  });
  auto* lhier_cmd = leaf(logic, "lhier", "Levels L_0..L_n");
  lhier_cmd->add_option("--levels", levels, "Highest level n")->required();
  lhier_cmd->add_flag("--list", list, "List the elements");
  lhier_cmd->callback([&] {
    action = [&] { return levels_report(l_hierarchy(levels, g.limits), "L", list); };
  });
  auto* lxhier_cmd = leaf(logic, "lxhier", "Levels L(X)_0..L(X)_n over a transitive X");
  lxhier_cmd->add_option("--base", base_text, "Transitive set X")->required();
  lxhier_cmd->add_option("--levels", levels, "Highest level n")->required();
  lxhier_cmd->add_flag("--list", list, "List the elements");
  lxhier_cmd->callback([&] {
    action = [&] {
      return levels_report(lx_hierarchy(hf_parse(base_text), levels, g.limits), "L(X)", list);
    };
  });

  // order
  auto* order = group_cmd("order", "Posets and regular-open algebras");
  std::string poset_text, partitions_file;
  std::optional<std::string> dense_labels;
  bool dot = false;
  auto* check_cmd = leaf(order, "check", "Separativity, splitting, density");
  check_cmd->add_option("--poset", poset_text, "Poset spec or JSON file")->required();
  check_cmd->add_option("--dense", dense_labels, "Comma-separated labels to test for density");
  check_cmd->callback([&] {
    action = [&] {
      return poset_check_report(parse_poset_source(poset_text, g.limits).require_finite(),
                                dense_labels);
    };
  });
  auto* quotient_cmd = leaf(order, "quotient", "Separative quotient");
  quotient_cmd->add_option("--poset", poset_text, "Poset spec or JSON file")->required();
  quotient_cmd->callback([&] {
    action = [&] {
      return quotient_report(parse_poset_source(poset_text, g.limits).require_finite());
    };
  });
  auto* roalg_cmd = leaf(order, "roalg", "Regular-open algebra and common refinements");
  roalg_cmd->add_option("--poset", poset_text, "Poset spec or JSON file")->required();
  roalg_cmd->add_option("--partitions", partitions_file,
                        "JSON list of partitions, each a list of cells of labels");
  roalg_cmd->add_flag("--dot", dot, "Print the Hasse diagram in DOT instead of the report");
  roalg_cmd->callback([&] {
    action = [&] {
      std::vector<std::vector<std::vector<std::string>>> parts;
      if (!partitions_file.empty()) {
        auto j = read_json_file(partitions_file);
        try {
          parts = j.get<decltype(parts)>();
        } catch (const nlohmann::json::exception&) {
          throw DomainError("partitions file must be a list of lists of label lists");
        }
      }
      auto o = algebra_report(parse_poset_source(poset_text, g.limits).require_finite(), parts,
                              g.limits);
      if (dot) o.text = o.artifacts.back().second;
      return o;
    };
  });

  // forcing
  auto* forcing = group_cmd("forcing", "Names, Boolean values and the forcing relation");
  NameOptions nopts;
  auto* bval_cmd = leaf(forcing, "bval", "Boolean value of a formula with name constants");
  add_name_options(bval_cmd, nopts, true);
  bval_cmd->callback([&] { action = [&] { return forcing_bval(nopts, g.limits); }; });
  auto* forces_cmd = leaf(forcing, "forces", "Which conditions force a formula");
  add_name_options(forces_cmd, nopts, true);
  forces_cmd->add_option("--condition", nopts.condition, "A single condition label");
  forces_cmd->callback([&] { action = [&] { return forcing_forces(nopts, g.limits); }; });
  auto* sym_cmd = leaf(forcing, "symmetry", "Check p forces phi iff pi(p) forces pi(phi)");
  add_name_options(sym_cmd, nopts, true);
  sym_cmd->callback([&] { action = [&] { return forcing_symmetry(nopts, g.limits); }; });
  auto* homog_cmd = leaf(forcing, "homog", "Weak homogeneity and 0/1 values");
  add_name_options(homog_cmd, nopts, false);
  homog_cmd->callback([&] { action = [&] { return forcing_homog(nopts, g.limits); }; });

  // generic
  auto* generic = group_cmd("generic", "Generic filters");
  std::vector<std::string> dense_specs;
  std::optional<std::size_t> horizon;
  std::optional<std::string> seed;
  std::string model_file, witness_set;
  auto generic_opts = [&](CLI::App* cmd) {
    cmd->add_option("--horizon", horizon, "Number of construction steps allowed");
    cmd->add_option("--seed-condition", seed, "Starting condition");
  };
  auto* rs_cmd = leaf(generic, "rs", "Rasiowa-Sikorski construction");
  rs_cmd->add_option("--poset", poset_text, "cohen:, fin_partial:, fin_inj: or witness:")
      ->required();
  rs_cmd->add_option("--dense", dense_specs, "domains:<list>, ranges:<list>, totality[:<set>]");
  generic_opts(rs_cmd);
  rs_cmd->callback([&] {
    action = [&] {
      return rs_report(parse_poset_source(poset_text, g.limits), dense_specs, horizon, seed);
    };
  });
  auto* mg_cmd = leaf(generic, "mgeneric", "Generic over the dense sets in a finite model");
  mg_cmd->add_option("--model", model_file, "Model JSON file")->required();
  generic_opts(mg_cmd);
  mg_cmd->callback([&] {
    action = [&] {
      return mgeneric_report(model_from_json(read_json_file(model_file), g.limits), seed);
    };
  });
  auto* wit_cmd = leaf(generic, "witness", "Injection of a finite set into w");
  wit_cmd->add_option("--set", witness_set, "Brace-notation set")->required();
  generic_opts(wit_cmd);
  wit_cmd->callback([&] {
    action = [&] { return witness_report(hf_parse(witness_set), horizon); };
  });

  // experiment
  auto* experiment = group_cmd("experiment", "Chained constructions");
  std::string config_file;
  auto* run_cmd = leaf(experiment, "run", "Run an experiment config");
  run_cmd->add_option("config", config_file, "Experiment JSON file")->required();
  run_cmd->callback([&] {
    action = [&] {
      auto config = read_json_file(config_file);
      if (g.out.empty() && config.contains("output") && config.at("output").is_string())
        g.out = config.at("output").get<std::string>();
      return run_experiment(config, g.limits);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Outcome o = action();
    write_artifacts(g.out, o);
    if (g.json)
      std::cout << o.report.dump(2) << "\n";
    else
      std::cout << o.text;
    return 0;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const forcelab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON input: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
