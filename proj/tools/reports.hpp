#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/forcing.hpp"
#include "forcelab/generic.hpp"
#include "forcelab/io.hpp"
#include "forcelab/limits.hpp"
#include "forcelab/sources.hpp"

namespace forcelab::cli {

// What a command produced: a machine-readable report, its human-readable
// rendering and named artifacts for --out.
struct Outcome {
  Json report;
  std::string text;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

Outcome hf_report(const HFSet& x, const Limits& limits);
Outcome vlevel_report(std::size_t n, bool list, const Limits& limits);
Outcome levels_report(const std::vector<std::vector<HFSet>>& levels, const std::string& title,
                      bool list);

Outcome poset_check_report(const FinitePoset& p, const std::optional<std::string>& dense);
Outcome quotient_report(const FinitePoset& p);
// partitions: each a list of cells, each cell a list of labels.
Outcome algebra_report(const FinitePoset& p,
                       const std::vector<std::vector<std::vector<std::string>>>& partitions,
                       const Limits& limits);

enum class GroupChoice { None, Values };
GroupChoice parse_group_choice(const std::string& s);
std::vector<PosetAutomorphism> build_group(const FinitePoset& p, GroupChoice g,
                                           const Limits& limits);
Outcome homogeneity_report(const FinitePoset& p, GroupChoice g, const Limits& limits);

Outcome rs_report(const PosetSource& source, const std::vector<std::string>& dense,
                  std::optional<std::size_t> horizon, const std::optional<std::string>& seed);
Outcome witness_report(const HFSet& s, std::optional<std::size_t> horizon);

struct ModelInput {
  FiniteModel model;
  HFSet poset_code;
  // Display labels for condition codes, when the poset came with labels.
  std::map<HFSet, std::string> labels;
};
// {"poset": <spec or poset JSON>, "subsets": [[labels]], "extra": [hf]} or
// {"model": <hf>, "poset_code": <hf>}.
ModelInput model_from_json(const Json& j, const Limits& limits);
Outcome mgeneric_report(const ModelInput& in, const std::optional<std::string>& seed);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace forcelab::cli
