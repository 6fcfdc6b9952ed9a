#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forcelab/limits.hpp"
#include "forcelab/poset.hpp"

namespace forcelab {

// A downward closed, regular subset of a finite poset, stored as a bitset
// over condition positions.
class RegularOpenSet {
 public:
  RegularOpenSet() = default;
  explicit RegularOpenSet(ConditionSet members) : members_(std::move(members)) {}

  const ConditionSet& members() const { return members_; }
  bool contains(std::size_t p) const { return members_.test(p); }
  bool is_zero() const { return members_.none(); }
  std::size_t count() const { return members_.count(); }
  std::vector<std::size_t> indices() const;

  // By cardinality, then by sorted member positions.
  friend std::strong_ordering operator<=>(const RegularOpenSet& a,
                                          const RegularOpenSet& b);
  friend bool operator==(const RegularOpenSet& a, const RegularOpenSet& b) {
    return a.members_ == b.members_;
  }

 private:
  ConditionSet members_;
};

bool is_regular_open(const FinitePoset& p, const ConditionSet& s);
// Smallest regular open superset of the downward closure of s.
RegularOpenSet ro_closure(const FinitePoset& p, const ConditionSet& s);

class RegularOpenAlgebra {
 public:
  // Requires a nonempty separative poset.
  explicit RegularOpenAlgebra(FinitePoset poset, const Limits& limits = {});

  const FinitePoset& poset() const { return poset_; }
  std::span<const RegularOpenSet> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::optional<std::size_t> index_of(const RegularOpenSet& s) const;
  bool is_element(const RegularOpenSet& s) const { return index_of(s).has_value(); }

  RegularOpenSet zero() const;
  RegularOpenSet one() const;
  RegularOpenSet meet(const RegularOpenSet& a, const RegularOpenSet& b) const;
  RegularOpenSet join(const RegularOpenSet& a, const RegularOpenSet& b) const;
  RegularOpenSet complement(const RegularOpenSet& a) const;
  RegularOpenSet meet_all(std::span<const RegularOpenSet> xs) const;
  RegularOpenSet join_all(std::span<const RegularOpenSet> xs) const;
  bool leq(const RegularOpenSet& a, const RegularOpenSet& b) const;

  // e(p) = ro_closure({p}).
  RegularOpenSet embed(std::size_t p) const;
  std::vector<RegularOpenSet> atoms() const;

  // Wraps a condition subset after checking it is regular open.
  RegularOpenSet element(const ConditionSet& s) const;

 private:
  FinitePoset poset_;
  std::vector<RegularOpenSet> elements_;
};

RegularOpenAlgebra ro_algebra(const FinitePoset& p, const Limits& limits = {});
RegularOpenSet dense_embedding(const RegularOpenAlgebra& a, std::size_t p);

// All regular open sets by testing every subset; for cross-checks on small
// posets.
std::vector<RegularOpenSet> regular_open_sets_brute_force(const FinitePoset& p);

using Partition = std::vector<RegularOpenSet>;

// Throws DomainError naming the violated clause.
void validate_partition(const RegularOpenAlgebra& a, const Partition& part);
bool refines(const RegularOpenAlgebra& a, const Partition& finer,
             const Partition& coarser);

// Nonzero meets b_1 ∧ ... ∧ b_k with b_i from the i-th partition.
Partition common_refinement(const RegularOpenAlgebra& a,
                            std::span<const Partition> parts);

struct DistributivityReport {
  bool refined = false;
  std::vector<std::size_t> input_sizes;
  Partition refinement;
};
DistributivityReport distributivity_report(const RegularOpenAlgebra& a,
                                           std::span<const Partition> families);

std::string element_label(const RegularOpenAlgebra& a, const RegularOpenSet& s);
std::string to_dot(const RegularOpenAlgebra& a, const std::string& name = "ro");

}  // namespace forcelab
