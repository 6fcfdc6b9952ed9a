#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forcelab/formula.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/limits.hpp"

namespace forcelab {

// A finite domain of HF sets with the ∈ relation among them. Membership is
// always recomputed from the sets themselves.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  // Sorts canonically and removes duplicates.
  explicit FiniteStructure(std::vector<HFSet> domain);
  // Domain = elements of x.
  static FiniteStructure of_set(const HFSet& x);

  std::span<const HFSet> domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  // domain[i] ∈ domain[j]
  bool member(std::size_t i, std::size_t j) const;
  std::span<const std::size_t> members_of(std::size_t j) const {
    return members_[j];
  }
  std::optional<std::size_t> index_of(const HFSet& x) const;
  // The subset of the domain selected by `mask` as an HF set.
  HFSet reify(const std::vector<bool>& mask) const;

 private:
  std::vector<HFSet> domain_;
  std::vector<std::vector<std::size_t>> members_;
};

using Assignment = std::map<std::string, HFSet>;

bool satisfies(const FiniteStructure& m, const Formula& phi,
               const Assignment& assignment);

// φ must have exactly one free variable.
HFSet defined_set(const FiniteStructure& m, const Formula& phi);

using Permutation = std::vector<std::size_t>;

// All relation-preserving bijections of the domain, lexicographically
// ordered; the identity comes first.
std::vector<Permutation> automorphisms(const FiniteStructure& m,
                                       const Limits& limits = {});

// Orbits of the automorphism group, each sorted, ordered by least member.
std::vector<std::vector<std::size_t>> automorphism_orbits(
    const FiniteStructure& m, const Limits& limits = {});

struct DefOptions {
  // With parameters every subset of a finite structure is definable.
  bool with_parameters = false;
};

// Definable subsets, computed as the automorphism-invariant subsets.
std::vector<HFSet> def_exact(const FiniteStructure& m, const Limits& limits = {},
                             DefOptions options = {});

// Subsets defined by some formula of quantifier depth <= depth, obtained
// from the depth-bounded type partition of the domain.
std::vector<HFSet> def_by_depth(const FiniteStructure& m, std::size_t depth,
                                const Limits& limits = {});

// One formula per depth-bounded type class. Each formula has the single
// free variable "x0" and defines exactly its class.
struct TypeWitness {
  HFSet members;
  Formula formula;
};
std::vector<TypeWitness> depth_type_witnesses(const FiniteStructure& m,
                                              std::size_t depth,
                                              const Limits& limits = {});

std::vector<HFSet> definable_elements(const FiniteStructure& m,
                                      const Limits& limits = {});

// Levels L_0..L_n, each canonically sorted.
std::vector<std::vector<HFSet>> l_hierarchy(std::size_t n,
                                            const Limits& limits = {});
// Levels L(X)_0..L(X)_n for a transitive X.
std::vector<std::vector<HFSet>> lx_hierarchy(const HFSet& x, std::size_t n,
                                             const Limits& limits = {});

}  // namespace forcelab
