#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "forcelab/hf.hpp"
#include "forcelab/limits.hpp"
#include "forcelab/poset.hpp"

namespace forcelab {

// A set of naturals: finite (sorted) or all of ω.
class NatSet {
 public:
  static NatSet omega() { return NatSet{}; }
  static NatSet of(std::vector<std::uint64_t> values);
  static NatSet below(std::uint64_t n);

  bool is_finite() const { return values_.has_value(); }
  bool contains(std::uint64_t v) const;
  const std::vector<std::uint64_t>& values() const;
  // Least member >= from that is not excluded, if any.
  std::optional<std::uint64_t> least_from(
      std::uint64_t from, const std::function<bool(std::uint64_t)>& excluded) const;
  std::string to_string() const;

  friend bool operator==(const NatSet&, const NatSet&) = default;

 private:
  std::optional<std::vector<std::uint64_t>> values_;
};

// Finite partial functions domain -> range (optionally one-to-one), ordered
// by reverse inclusion: p <= q iff p extends q. Conditions are PartialMaps.
class LazyPoset {
 public:
  using condition_type = PartialMap;

  LazyPoset(std::string name, NatSet domain, NatSet range, bool injective);

  const std::string& name() const { return name_; }
  const NatSet& domain() const { return domain_; }
  const NatSet& range() const { return range_; }
  bool injective() const { return injective_; }
  bool is_finite() const { return domain_.is_finite() && range_.is_finite(); }

  bool is_condition(const PartialMap& p) const;
  // Throws DomainError naming the condition if it is not one.
  void require_condition(const PartialMap& p) const;
  bool leq(const PartialMap& p, const PartialMap& q) const { return p.extends(q); }
  bool compatible(const PartialMap& p, const PartialMap& q) const;

  PartialMap top() const { return {}; }

  // Deterministic, duplicate-free enumeration: conditions using only
  // numbers < b are produced before any condition using b.
  class Cursor {
   public:
    explicit Cursor(const LazyPoset& poset) : poset_(&poset) {}
    std::optional<PartialMap> next();

   private:
    void refill();
    const LazyPoset* poset_;
    std::vector<PartialMap> batch_;
    std::size_t pos_ = 0;
    std::uint64_t bound_ = 0;
    bool started_ = false;
  };
  Cursor enumerate() const { return Cursor(*this); }
  std::vector<PartialMap> prefix(std::size_t count) const;

  // Least one-point extension p ∪ {a ↦ v} under (a, v) order among the
  // first `search_keys` free keys and `search_values` admissible values.
  std::vector<PartialMap> one_point_extensions(const PartialMap& p,
                                               std::size_t search_keys,
                                               std::size_t search_values) const;
  // Two incompatible one-point extensions at the least fresh key admitting
  // two values.
  std::optional<std::pair<PartialMap, PartialMap>> split(const PartialMap& p) const;

  // Finite instances as an explicit poset, conditions in canonical order.
  FinitePoset materialize(const Limits& limits = {}) const;

 private:
  friend class Cursor;
  std::string name_;
  NatSet domain_;
  NatSet range_;
  bool injective_;
};

// Three-valued answer for questions checked on enumerated prefixes.
enum class Tri { False, True, Undecided };
std::string to_string(Tri t);

Tri has_splitting(const LazyPoset& p, std::size_t prefix_size);

enum class StandardKind { Cohen, FinPartial, FinInj, CountabilityWitness };

struct StandardParams {
  // Cohen: values {0..value_count-1}; domain_bound limits the domain to
  // {0..domain_bound-1} (nullopt = ω).
  std::uint64_t value_count = 2;
  std::optional<std::uint64_t> domain_bound;
  // FinPartial / FinInj.
  NatSet domain = NatSet::omega();
  NatSet range = NatSet::omega();
  // CountabilityWitness: partial injections s -> ω, where elements of s are
  // represented by their canonical index.
  HFSet witness_set;
};

using StandardPoset = std::variant<FinitePoset, LazyPoset>;

// Finite instances come back materialized.
StandardPoset make_standard_poset(StandardKind kind, const StandardParams& params,
                                  const Limits& limits = {});
LazyPoset standard_lazy_poset(StandardKind kind, const StandardParams& params);

}  // namespace forcelab
