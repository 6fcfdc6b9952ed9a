#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forcelab/formula.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/limits.hpp"
#include "forcelab/poset.hpp"
#include "forcelab/roalg.hpp"

namespace forcelab {

// A P-name: a finite set of (name, condition) pairs. Conditions are
// positions in the poset of the context the name is used with.
class PName {
 public:
  using Pair = std::pair<PName, std::size_t>;

  PName();
  // Sorts and deduplicates.
  static PName of(std::vector<Pair> pairs);

  std::span<const Pair> pairs() const;
  std::size_t size() const { return pairs().size(); }
  std::uint32_t rank() const;
  std::size_t hash() const;

  // By rank, then lexicographically by pairs.
  friend std::strong_ordering operator<=>(const PName& a, const PName& b);
  friend bool operator==(const PName& a, const PName& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Node;
  explicit PName(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A formula whose free variables denote names.
struct NameFormula {
  Formula formula;
  std::map<std::string, PName> constants;
};

// Names of rank <= max_rank whose pairs use only `conditions`.
std::vector<PName> all_names(std::size_t max_rank,
                             const std::vector<std::size_t>& conditions,
                             const Limits& limits = {});

// Poset, its regular-open algebra, a finite name universe and an optional
// automorphism group. Quantifiers range over the universe, which is closed
// under subnames and under the group.
//
// A poset without a maximum gets a formal top condition "1" appended so
// that check names are defined; automorphisms fix it.
class ForcingContext {
 public:
  ForcingContext(const FinitePoset& poset, std::vector<PName> seeds,
                 const std::vector<PosetAutomorphism>& group = {},
                 const Limits& limits = {});

  const FinitePoset& poset() const { return poset_; }
  const RegularOpenAlgebra& algebra() const { return *algebra_; }
  std::size_t original_size() const { return original_size_; }
  bool has_formal_top() const { return poset_.size() != original_size_; }
  std::size_t one() const { return one_; }

  std::span<const PName> universe() const { return universe_; }
  std::optional<std::size_t> universe_index(const PName& x) const;
  std::size_t require_in_universe(const PName& x) const;
  std::span<const PosetAutomorphism> group() const { return group_; }
  // Extends an automorphism of the original poset by fixing the formal top.
  PosetAutomorphism lift(const PosetAutomorphism& pi) const;

  // Filter on the original poset (or on the effective one) as a filter on
  // the effective poset, formal top included.
  ConditionSet as_filter(const ConditionSet& g) const;

  RegularOpenSet eq_value(std::size_t x, std::size_t y) const;
  RegularOpenSet in_value(std::size_t x, std::size_t y) const;

 private:
  FinitePoset poset_;
  std::size_t original_size_ = 0;
  std::size_t one_ = 0;
  std::unique_ptr<RegularOpenAlgebra> algebra_;
  std::vector<PName> universe_;
  std::vector<std::vector<std::size_t>> subname_index_;
  std::vector<PosetAutomorphism> group_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, RegularOpenSet> eq_cache_;
  mutable std::unordered_map<std::uint64_t, RegularOpenSet> in_cache_;
};

// The poset a context uses: p itself, or p with a formal top "1".
FinitePoset forcing_poset(const FinitePoset& p);
// Position of the 1-condition the context will use for `p`: its maximum, or
// p.size() for the formal top.
std::size_t one_condition(const FinitePoset& p);
// x̌ = { (y̌, one) : y in x }.
PName check_name(std::size_t one, const HFSet& x);
PName check_name(const ForcingContext& c, const HFSet& x);
bool is_check_name(const ForcingContext& c, const PName& x);

// ||φ|| in the regular-open algebra.
RegularOpenSet bool_value(const ForcingContext& c, const NameFormula& phi);
// e(p) <= ||φ||
bool forces(const ForcingContext& c, std::size_t p, const NameFormula& phi);

std::size_t apply_automorphism(const PosetAutomorphism& pi, std::size_t condition);
PName apply_automorphism(const PosetAutomorphism& pi, const PName& x);
NameFormula apply_automorphism(const PosetAutomorphism& pi, const NameFormula& phi);

struct SymmetryCheck {
  bool holds = true;
  std::optional<std::size_t> counterexample;
};
// For every p: p ⊩ φ iff πp ⊩ πφ. π acts on the context's poset.
SymmetryCheck check_symmetry_lemma(const ForcingContext& c, const NameFormula& phi,
                                   const PosetAutomorphism& pi);

// nullopt when for all p, q some π in the group makes πp compatible with q;
// otherwise the first failing (p, q).
std::optional<std::pair<std::size_t, std::size_t>> weak_homogeneity_violation(
    const FinitePoset& p, std::span<const PosetAutomorphism> group);
// Every failing (p, q), in index order.
std::vector<std::pair<std::size_t, std::size_t>> weak_homogeneity_violations(
    const FinitePoset& p, std::span<const PosetAutomorphism> group);
bool is_weakly_homogeneous(const FinitePoset& p, std::span<const PosetAutomorphism> group);
std::optional<PosetAutomorphism> homogeneity_witness(const FinitePoset& p,
                                                     std::span<const PosetAutomorphism> group,
                                                     std::size_t a, std::size_t b);

// Returns the Boolean value of a check-name sentence as 0 or 1. Requires a
// weakly homogeneous group on the context.
bool homogeneity_zero_one(const ForcingContext& c, const NameFormula& phi);

// i_G(x) = { i_G(y) : (y, q) in x, q in G }.
HFSet eval_name(const PName& x, const ConditionSet& g);

// Γ = { (check(code(p)), p) : p in the original poset }.
PName canonical_generic_name(const ForcingContext& c);

std::string to_string(const ForcingContext& c, const PName& x);

}  // namespace forcelab
