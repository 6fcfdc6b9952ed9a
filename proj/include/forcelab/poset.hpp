#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "forcelab/hf.hpp"
#include "forcelab/limits.hpp"

namespace forcelab {

// Subset of a finite poset's conditions, indexed by condition position.
using ConditionSet = boost::dynamic_bitset<>;

// A finite partial function from naturals to naturals; the conditions of
// the standard forcing posets.
class PartialMap {
 public:
  using Entry = std::pair<std::uint64_t, std::uint64_t>;

  PartialMap() = default;
  // Throws DomainError if a key is mapped to two values.
  explicit PartialMap(std::vector<Entry> entries);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<std::uint64_t> at(std::uint64_t key) const;
  bool defines(std::uint64_t key) const { return at(key).has_value(); }
  bool takes_value(std::uint64_t value) const;
  bool is_injective() const;
  // Every entry of `other` is an entry of this map.
  bool extends(const PartialMap& other) const;
  // The union, when it is still a function.
  std::optional<PartialMap> merge(const PartialMap& other) const;
  PartialMap with(std::uint64_t key, std::uint64_t value) const;

  // Canonical order: by size, then lexicographically by entries.
  friend std::strong_ordering operator<=>(const PartialMap& a,
                                          const PartialMap& b);
  friend bool operator==(const PartialMap& a, const PartialMap& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

// "{}", "{0:1}", "{0:1,3:2}"
std::string to_string(const PartialMap& p);
PartialMap parse_partial_map(std::string_view text);
// Set of Kuratowski pairs of von Neumann naturals.
HFSet encode(const PartialMap& p);
std::optional<PartialMap> decode_partial_map(const HFSet& x);

class FinitePoset {
 public:
  using condition_type = std::size_t;

  FinitePoset() = default;
  // down_sets[i] = { j : j <= i }. Reflexivity is added; transitivity and
  // antisymmetry are validated and violations name the offending labels.
  // Encodings default to von Neumann indices.
  FinitePoset(std::vector<std::string> labels, std::vector<ConditionSet> down_sets,
              std::vector<HFSet> encodings = {}, std::vector<PartialMap> maps = {});

  // Pairs (a, b) meaning a <= b.
  static FinitePoset from_pairs(
      std::vector<std::string> labels,
      const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;
  // Throws DomainError for an unknown label.
  std::size_t require(std::string_view label) const;

  bool leq(std::size_t p, std::size_t q) const { return down_[q].test(p); }
  const ConditionSet& down(std::size_t p) const { return down_[p]; }
  const ConditionSet& up(std::size_t p) const { return up_[p]; }
  bool compatible(std::size_t p, std::size_t q) const {
    return down_[p].intersects(down_[q]);
  }
  ConditionSet empty_set() const { return ConditionSet(size()); }
  ConditionSet full_set() const { return ConditionSet(size()).set(); }

  const HFSet& encoding(std::size_t p) const { return encodings_.at(p); }
  std::span<const HFSet> encodings() const { return encodings_; }
  bool has_maps() const { return !maps_.empty(); }
  const PartialMap& map(std::size_t p) const { return maps_.at(p); }
  std::optional<std::size_t> index_of(const PartialMap& m) const;

  std::optional<std::size_t> maximum() const;
  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;

  // Same poset with a new top condition labelled `label` appended.
  FinitePoset with_top(const std::string& label, const HFSet& encoding) const;

 private:
  std::vector<std::string> labels_;
  std::vector<ConditionSet> down_;
  std::vector<ConditionSet> up_;
  std::vector<HFSet> encodings_;
  std::vector<PartialMap> maps_;
};

bool is_compatible(const FinitePoset& p, std::size_t a, std::size_t b);
bool is_dense(const FinitePoset& p, const ConditionSet& d);
// nullopt when separative, else the first violating (p, q) with p ≰ q and
// every r <= p compatible with q.
std::optional<std::pair<std::size_t, std::size_t>> separativity_violation(
    const FinitePoset& p);
bool is_separative(const FinitePoset& p);

struct SeparativeQuotient {
  FinitePoset poset;
  // projection[p] = class of p in `poset`.
  std::vector<std::size_t> projection;
};
SeparativeQuotient separative_quotient(const FinitePoset& p);

bool has_splitting(const FinitePoset& p);
bool is_antichain(const FinitePoset& p);

// A verified order automorphism, given as a permutation of positions.
class PosetAutomorphism {
 public:
  // Throws DomainError if `perm` is not an order automorphism of `p`.
  PosetAutomorphism(const FinitePoset& p, std::vector<std::size_t> perm);
  static PosetAutomorphism identity(const FinitePoset& p);

  std::size_t operator()(std::size_t condition) const { return perm_.at(condition); }
  std::span<const std::size_t> permutation() const { return perm_; }
  std::size_t size() const { return perm_.size(); }
  PosetAutomorphism compose(const PosetAutomorphism& inner) const;  // this ∘ inner
  PosetAutomorphism inverse() const;

  friend bool operator==(const PosetAutomorphism&, const PosetAutomorphism&) = default;

 private:
  PosetAutomorphism() = default;
  std::vector<std::size_t> perm_;
};

// Closure of the generators under composition.
std::vector<PosetAutomorphism> generate_group(
    const FinitePoset& p, const std::vector<PosetAutomorphism>& generators,
    const Limits& limits = {});

// For a poset of partial maps: the automorphism induced by permuting the
// values (p ↦ σ∘p). `values` lists the value set; `image[i]` is σ(values[i]).
PosetAutomorphism value_permutation(const FinitePoset& p,
                                    const std::vector<std::uint64_t>& values,
                                    const std::vector<std::uint64_t>& image);
// All automorphisms induced by permutations of the values taken by p's maps.
std::vector<PosetAutomorphism> value_permutation_group(const FinitePoset& p,
                                                       const Limits& limits = {});

// Canonical adjacency code; equal iff isomorphic (exhaustive over
// relabelings, intended for small posets).
std::vector<std::uint8_t> canonical_form(const FinitePoset& p);
// All posets with exactly n elements, one per isomorphism class.
std::vector<FinitePoset> posets_up_to_iso(std::size_t n);

// Standard small posets.
FinitePoset chain_poset(std::size_t n);
FinitePoset antichain_poset(std::size_t n);
// A top with `atoms` pairwise incompatible atoms below it.
FinitePoset top_with_atoms(std::size_t atoms);

std::string to_dot(const FinitePoset& p, const std::string& name = "poset");

}  // namespace forcelab
