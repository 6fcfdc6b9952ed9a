#include "forcelab/lazy_poset.hpp"

#include <algorithm>
#include <set>

#include "forcelab/error.hpp"

namespace forcelab {

NatSet NatSet::of(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  NatSet s;
  s.values_ = std::move(values);
  return s;
}

NatSet NatSet::below(std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = i;
  return of(std::move(v));
}

bool NatSet::contains(std::uint64_t v) const {
  if (!values_) return true;
  return std::binary_search(values_->begin(), values_->end(), v);
}

const std::vector<std::uint64_t>& NatSet::values() const {
  if (!values_) throw DomainError("ω has no finite value list");
  return *values_;
}

std::optional<std::uint64_t> NatSet::least_from(
    std::uint64_t from, const std::function<bool(std::uint64_t)>& excluded) const {
  if (values_) {
    for (auto v : *values_)
      if (v >= from && !excluded(v)) return v;
    return std::nullopt;
  }
  for (std::uint64_t v = from;; ++v)
    if (!excluded(v)) return v;
}

std::string NatSet::to_string() const {
  if (!values_) return "w";
  std::string out;
  for (std::size_t i = 0; i < values_->size(); ++i)
    out += (i ? "," : "") + std::to_string((*values_)[i]);
  return "{" + out + "}";
}

LazyPoset::LazyPoset(std::string name, NatSet domain, NatSet range, bool injective)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      range_(std::move(range)),
      injective_(injective) {}

bool LazyPoset::is_condition(const PartialMap& p) const {
  for (auto [k, v] : p.entries())
    if (!domain_.contains(k) || !range_.contains(v)) return false;
  return !injective_ || p.is_injective();
}

void LazyPoset::require_condition(const PartialMap& p) const {
  if (!is_condition(p))
    throw DomainError(to_string(p) + " is not a condition of " + name_);
}

bool LazyPoset::compatible(const PartialMap& p, const PartialMap& q) const {
  auto u = p.merge(q);
  return u && (!injective_ || u->is_injective());
}

namespace {

void all_partial_maps(const std::vector<std::uint64_t>& keys,
                      const std::vector<std::uint64_t>& values, bool injective,
                      std::size_t k, std::vector<PartialMap::Entry>& current,
                      std::set<std::uint64_t>& used, std::vector<PartialMap>& out,
                      std::size_t limit) {
  if (k == keys.size()) {
    if (out.size() >= limit) throw BudgetExceeded("max_poset_size", limit);
    out.emplace_back(current);
    return;
  }
  all_partial_maps(keys, values, injective, k + 1, current, used, out, limit);
  for (auto v : values) {
    if (injective && used.count(v)) continue;
    current.emplace_back(keys[k], v);
    used.insert(v);
    all_partial_maps(keys, values, injective, k + 1, current, used, out, limit);
    used.erase(v);
    current.pop_back();
  }
}

std::vector<std::uint64_t> members_below(const NatSet& s, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (s.is_finite()) {
    for (auto v : s.values())
      if (v < bound) out.push_back(v);
  } else {
    for (std::uint64_t v = 0; v < bound; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace

void LazyPoset::Cursor::refill() {
  const LazyPoset& P = *poset_;
  batch_.clear();
  pos_ = 0;
  if (!started_) {
    started_ = true;
    bound_ = 0;
    batch_.push_back(PartialMap{});
    return;
  }
  const bool trivially_finite =
      (P.domain_.is_finite() && P.domain_.values().empty()) ||
      (P.range_.is_finite() && P.range_.values().empty());
  if (trivially_finite) return;
  std::uint64_t max_number = 0;
  if (P.is_finite()) {
    if (!P.domain_.values().empty()) max_number = P.domain_.values().back();
    if (!P.range_.values().empty())
      max_number = std::max(max_number, P.range_.values().back());
  }
  while (batch_.empty()) {
    ++bound_;
    if (P.is_finite() && bound_ - 1 > max_number) return;
    auto keys = members_below(P.domain_, bound_);
    auto values = members_below(P.range_, bound_);
    std::vector<PartialMap> all;
    std::vector<PartialMap::Entry> current;
    std::set<std::uint64_t> used;
    all_partial_maps(keys, values, P.injective_, 0, current, used, all,
                     std::size_t{1} << 24);
    const std::uint64_t fresh = bound_ - 1;
    for (auto& m : all) {
      bool uses_fresh = false;
      for (auto [k, v] : m.entries())
        if (k == fresh || v == fresh) uses_fresh = true;
      if (uses_fresh) batch_.push_back(std::move(m));
    }
    std::sort(batch_.begin(), batch_.end());
  }
}

std::optional<PartialMap> LazyPoset::Cursor::next() {
  if (pos_ >= batch_.size()) {
    refill();
    if (batch_.empty()) return std::nullopt;
  }
  return batch_[pos_++];
}

std::vector<PartialMap> LazyPoset::prefix(std::size_t count) const {
  std::vector<PartialMap> out;
  auto cursor = enumerate();
  while (out.size() < count) {
    auto c = cursor.next();
    if (!c) break;
    out.push_back(std::move(*c));
  }
  return out;
}

std::vector<PartialMap> LazyPoset::one_point_extensions(const PartialMap& p,
                                                        std::size_t search_keys,
                                                        std::size_t search_values) const {
  std::vector<PartialMap> out;
  std::uint64_t key_from = 0;
  for (std::size_t ki = 0; ki < search_keys; ++ki) {
    auto key = domain_.least_from(key_from, [&](std::uint64_t k) { return p.defines(k); });
    if (!key) break;
    key_from = *key + 1;
    std::uint64_t value_from = 0;
    for (std::size_t vi = 0; vi < search_values; ++vi) {
      auto value = range_.least_from(
          value_from, [&](std::uint64_t v) { return injective_ && p.takes_value(v); });
      if (!value) break;
      value_from = *value + 1;
      out.push_back(p.with(*key, *value));
    }
  }
  return out;
}

std::optional<std::pair<PartialMap, PartialMap>> LazyPoset::split(const PartialMap& p) const {
  auto taken = [&](std::uint64_t v) { return injective_ && p.takes_value(v); };
  std::uint64_t key_from = 0;
  for (;;) {
    auto key = domain_.least_from(key_from, [&](std::uint64_t k) { return p.defines(k); });
    if (!key) break;
    key_from = *key + 1;
    auto v1 = range_.least_from(0, taken);
    if (!v1) return std::nullopt;
    auto v2 = range_.least_from(*v1 + 1, taken);
    if (v2) return std::pair{p.with(*key, *v1), p.with(*key, *v2)};
    // One admissible value: for injective posets two fresh keys sharing it
    // still clash.
    if (injective_) {
      auto other = domain_.least_from(key_from, [&](std::uint64_t k) { return p.defines(k); });
      if (other) return std::pair{p.with(*key, *v1), p.with(*other, *v1)};
    }
    if (!domain_.is_finite()) return std::nullopt;
  }
  return std::nullopt;
}

FinitePoset LazyPoset::materialize(const Limits& limits) const {
  if (!is_finite()) throw DomainError(name_ + " is infinite and cannot be materialized");
  std::vector<PartialMap> maps;
  std::vector<PartialMap::Entry> current;
  std::set<std::uint64_t> used;
  all_partial_maps(domain_.values(), range_.values(), injective_, 0, current, used, maps,
                   limits.max_poset_size);
  std::sort(maps.begin(), maps.end());
  const std::size_t n = maps.size();
  std::vector<std::string> labels;
  std::vector<HFSet> encodings;
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(to_string(maps[i]));
    encodings.push_back(encode(maps[i]));
    for (std::size_t j = 0; j < n; ++j)
      if (maps[j].extends(maps[i])) down[i].set(j);
  }
  return FinitePoset(std::move(labels), std::move(down), std::move(encodings),
                     std::move(maps));
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Undecided: return "undecided";
  }
  return "?";
}

Tri has_splitting(const LazyPoset& p, std::size_t prefix_size) {
  if (p.is_finite()) return has_splitting(p.materialize()) ? Tri::True : Tri::False;
  bool undecided = false;
  for (const auto& c : p.prefix(prefix_size)) {
    if (p.split(c)) continue;
    if (p.one_point_extensions(c, 1, 1).empty()) return Tri::False;
    undecided = true;
  }
  return undecided ? Tri::Undecided : Tri::True;
}

LazyPoset standard_lazy_poset(StandardKind kind, const StandardParams& params) {
  switch (kind) {
    case StandardKind::Cohen: {
      if (params.value_count == 0) throw DomainError("cohen: value count must be positive");
      NatSet domain = params.domain_bound ? NatSet::below(*params.domain_bound)
                                          : NatSet::omega();
      return LazyPoset("cohen", domain, NatSet::below(params.value_count), false);
    }
    case StandardKind::FinPartial:
      return LazyPoset("fin_partial", params.domain, params.range, false);
    case StandardKind::FinInj:
      return LazyPoset("fin_inj", params.domain, params.range, true);
    case StandardKind::CountabilityWitness:
      return LazyPoset("countability_witness", NatSet::below(params.witness_set.size()),
                       NatSet::omega(), true);
  }
  throw DomainError("unknown standard poset kind");
}

StandardPoset make_standard_poset(StandardKind kind, const StandardParams& params,
                                  const Limits& limits) {
  LazyPoset lazy = standard_lazy_poset(kind, params);
  if (lazy.is_finite()) return lazy.materialize(limits);
  return lazy;
}

}  // namespace forcelab
