#include "forcelab/generic.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace forcelab {

bool meets(const GenericFilter<std::size_t>& g, const ConditionSet& d) {
  for (auto q = d.find_first(); q != ConditionSet::npos; q = d.find_next(q))
    if (g.contains(q)) return true;
  return false;
}

ConditionSet filter_members(const GenericFilter<std::size_t>& g, const FinitePoset& p) {
  return p.up(g.strongest());
}

namespace {

DenseSpec<PartialMap> domain_refiner(const LazyPoset& poset, std::uint64_t key) {
  if (!poset.domain().contains(key))
    throw DomainError("key " + std::to_string(key) + " is not in the domain " +
                      poset.domain().to_string() + " of " + poset.name());
  auto owned = std::make_shared<LazyPoset>(poset);
  DenseSpec<PartialMap> spec;
  spec.name = "D_dom(" + std::to_string(key) + ")";
  spec.contains = [key](const PartialMap& p) { return p.defines(key); };
  spec.refine = [owned, key](const PartialMap& p) {
    if (p.defines(key)) return p;
    auto taken = [&](std::uint64_t v) { return owned->injective() && p.takes_value(v); };
    auto v = owned->range().least_from(0, taken);
    if (!v)
      throw DomainError("no value can be added at key " + std::to_string(key) + " to " +
                        to_string(p) + " while keeping it one-to-one");
    return p.with(key, *v);
  };
  return spec;
}

DenseSpec<PartialMap> range_refiner(const LazyPoset& poset, std::uint64_t value) {
  if (!poset.range().contains(value))
    throw DomainError("value " + std::to_string(value) + " is not in the range " +
                      poset.range().to_string() + " of " + poset.name());
  auto owned = std::make_shared<LazyPoset>(poset);
  DenseSpec<PartialMap> spec;
  spec.name = "D_ran(" + std::to_string(value) + ")";
  spec.contains = [value](const PartialMap& p) { return p.takes_value(value); };
  spec.refine = [owned, value](const PartialMap& p) {
    if (p.takes_value(value)) return p;
    auto k = owned->domain().least_from(0, [&](std::uint64_t key) { return p.defines(key); });
    if (!k)
      throw DomainError("value " + std::to_string(value) + " cannot be added to the range of " +
                        to_string(p) + ": no free key");
    return p.with(*k, value);
  };
  return spec;
}

}  // namespace

std::vector<DenseSpec<PartialMap>> standard_refiners(const LazyPoset& poset, RefinerKind kind,
                                                     const RefinerParams& params) {
  std::vector<DenseSpec<PartialMap>> out;
  switch (kind) {
    case RefinerKind::Domains:
      for (auto key : params.values) out.push_back(domain_refiner(poset, key));
      break;
    case RefinerKind::Ranges:
      for (auto v : params.values) out.push_back(range_refiner(poset, v));
      break;
    case RefinerKind::Totality:
      for (std::uint64_t i = 0; i < params.set.size(); ++i)
        out.push_back(domain_refiner(poset, i));
      break;
  }
  return out;
}

PartialMap union_map(const GenericFilter<PartialMap>& g) {
  PartialMap acc;
  for (const auto& p : g.chain()) {
    auto merged = acc.merge(p);
    if (!merged) throw DomainError("chain elements are not compatible");
    acc = *merged;
  }
  return acc;
}

std::vector<std::pair<HFSet, std::uint64_t>> countability_witness(const HFSet& s,
                                                                  std::size_t horizon) {
  if (horizon < s.size())
    throw DomainError("horizon " + std::to_string(horizon) + " is too small: |s| = " +
                      std::to_string(s.size()));
  StandardParams params;
  params.witness_set = s;
  LazyPoset poset = standard_lazy_poset(StandardKind::CountabilityWitness, params);
  RefinerParams rp;
  rp.set = s;
  auto g = rs_generic(poset, standard_refiners(poset, RefinerKind::Totality, rp), PartialMap{},
                      horizon);
  PartialMap f = union_map(g);
  std::vector<std::pair<HFSet, std::uint64_t>> out;
  auto elems = s.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto v = f.at(i);
    if (!v) throw std::logic_error("countability witness is not total");
    out.emplace_back(elems[i], *v);
  }
  return out;
}

HFSet encode_poset(const FinitePoset& p) {
  std::vector<HFSet> pairs;
  for (std::size_t b = 0; b < p.size(); ++b) {
    const auto& d = p.down(b);
    for (auto a = d.find_first(); a != ConditionSet::npos; a = d.find_next(a))
      pairs.push_back(kuratowski_pair(p.encoding(a), p.encoding(b)));
  }
  return HFSet::of(std::move(pairs));
}

namespace {

struct DecodeOutcome {
  std::optional<DecodedPoset> poset;
  std::string why;
};

DecodeOutcome decode(const HFSet& code) {
  if (code.empty()) return {std::nullopt, "the empty set codes no conditions"};
  std::vector<std::pair<HFSet, HFSet>> pairs;
  std::set<HFSet> field;
  for (const auto& e : code.elements()) {
    auto pr = as_kuratowski_pair(e);
    if (!pr) return {std::nullopt, hf_render(e) + " is not an ordered pair"};
    field.insert(pr->first);
    field.insert(pr->second);
    pairs.push_back(*pr);
  }
  std::vector<HFSet> conds(field.begin(), field.end());
  auto index = [&](const HFSet& x) {
    return static_cast<std::size_t>(std::lower_bound(conds.begin(), conds.end(), x) -
                                    conds.begin());
  };
  const std::size_t n = conds.size();
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (const auto& [a, b] : pairs) down[index(b)].set(index(a));
  for (std::size_t i = 0; i < n; ++i)
    if (!down[i].test(i))
      return {std::nullopt, "missing reflexive pair for " + hf_render(conds[i])};
  std::vector<std::string> labels;
  std::vector<PartialMap> maps;
  bool all_maps = true;
  for (const auto& c : conds) {
    labels.push_back(hf_render(c));
    if (all_maps) {
      if (auto m = decode_partial_map(c)) maps.push_back(*m);
      else all_maps = false;
    }
  }
  if (all_maps)
    for (std::size_t i = 0; i < n; ++i) labels[i] = to_string(maps[i]);
  else
    maps.clear();
  try {
    FinitePoset p(std::move(labels), std::move(down), conds, std::move(maps));
    return {DecodedPoset{std::move(p), std::move(conds)}, {}};
  } catch (const DomainError& e) {
    return {std::nullopt, e.what()};
  }
}

}  // namespace

std::optional<DecodedPoset> try_decode_poset(const HFSet& code) { return decode(code).poset; }

DecodedPoset decode_poset(const HFSet& code) {
  auto out = decode(code);
  if (!out.poset) throw DomainError("not a poset code: " + out.why);
  return std::move(*out.poset);
}

FiniteModel::FiniteModel(HFSet m) : m_(std::move(m)) {
  if (!is_transitive(m_)) throw DomainError("a finite model must be a transitive set");
}

FiniteModel FiniteModel::closure_of(const std::vector<HFSet>& elements) {
  return FiniteModel(transitive_closure(HFSet::of(elements)));
}

std::vector<HFSet> FiniteModel::poset_codes() const {
  std::vector<HFSet> out;
  for (const auto& x : m_.elements())
    if (try_decode_poset(x)) out.push_back(x);
  return out;
}

std::vector<HFSet> FiniteModel::subsets_of(const HFSet& field) const {
  std::vector<HFSet> out;
  for (const auto& x : m_.elements())
    if (x.is_subset_of(field)) out.push_back(x);
  return out;
}

std::vector<ModelDenseSet> m_dense_family(const FiniteModel& m, const HFSet& poset_code) {
  if (!m.contains(poset_code)) throw DomainError("the poset code is not an element of M");
  auto decoded = decode_poset(poset_code);
  const auto& conds = decoded.conditions;
  HFSet field = HFSet::from_sorted_unique(conds);
  std::vector<ModelDenseSet> out;
  for (const auto& d : m.subsets_of(field)) {
    ConditionSet members(conds.size());
    for (const auto& x : d.elements())
      members.set(static_cast<std::size_t>(
          std::lower_bound(conds.begin(), conds.end(), x) - conds.begin()));
    if (is_dense(decoded.poset, members)) out.push_back({d, std::move(members)});
  }
  return out;
}

MGenericResult m_generic(const FiniteModel& m, const HFSet& poset_code,
                         std::optional<HFSet> start) {
  auto family = m_dense_family(m, poset_code);
  auto decoded = decode_poset(poset_code);
  const FinitePoset& p = decoded.poset;
  const auto& conds = decoded.conditions;

  std::size_t first;
  if (start) {
    auto it = std::lower_bound(conds.begin(), conds.end(), *start);
    if (it == conds.end() || *it != *start)
      throw DomainError("seed condition " + hf_render(*start) + " is not in the poset");
    first = static_cast<std::size_t>(it - conds.begin());
  } else {
    first = p.maximal_elements().front();
  }

  auto owned = std::make_shared<FinitePoset>(p);
  std::vector<DenseSpec<std::size_t>> specs;
  for (const auto& d : family) {
    DenseSpec<std::size_t> spec;
    spec.name = hf_render(d.code);
    auto members = d.members;
    spec.contains = [members](const std::size_t& q) { return members.test(q); };
    spec.refine = [members, owned](const std::size_t& q) {
      auto below = members & owned->down(q);
      auto r = below.find_first();
      if (r == ConditionSet::npos) throw DomainError("dense set has no member below a condition");
      return static_cast<std::size_t>(r);
    };
    specs.push_back(std::move(spec));
  }
  auto filter = rs_generic(p, std::move(specs), first, family.size());

  MGenericReport report;
  report.members = filter_members(filter, p);
  report.met.reserve(family.size());
  report.all_met = true;
  for (const auto& d : family) {
    bool hit = meets(filter, d.members);
    report.met.push_back(hit);
    report.all_met = report.all_met && hit;
  }
  std::vector<HFSet> g;
  for (auto q = report.members.find_first(); q != ConditionSet::npos;
       q = report.members.find_next(q))
    g.push_back(conds[q]);
  report.g_code = HFSet::of(std::move(g));
  report.g_in_model = m.contains(report.g_code);
  report.splitting = has_splitting(p);
  if (p.has_maps()) report.union_map = p.map(filter.strongest());
  report.dense_sets = std::move(family);
  report.decoded = std::move(decoded);
  return {std::move(filter), std::move(report)};
}

}  // namespace forcelab
