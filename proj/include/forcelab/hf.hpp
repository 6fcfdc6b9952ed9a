#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "forcelab/limits.hpp"

namespace forcelab {

using BigNat = boost::multiprecision::cpp_int;

// A hereditarily finite set. Elements are kept sorted by Ackermann code with
// duplicates removed, so value equality is extensional equality. The order
// is computed structurally (highest differing element wins), which agrees
// with comparing codes but never materializes them.
class HFSet {
 public:
  HFSet();

  // Sorts and deduplicates.
  static HFSet of(std::vector<HFSet> elements);
  // Caller guarantees strictly increasing canonical order.
  static HFSet from_sorted_unique(std::vector<HFSet> elements);

  std::span<const HFSet> elements() const;
  std::size_t size() const { return elements().size(); }
  bool empty() const { return elements().empty(); }
  bool contains(const HFSet& x) const;
  bool is_subset_of(const HFSet& other) const;

  std::uint32_t rank() const;
  std::size_t hash() const;

  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);
  friend bool operator==(const HFSet& a, const HFSet& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Node;
  explicit HFSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

HFSet hf_parse(std::string_view text);
// Canonical rendering: no whitespace, elements in code order.
std::string hf_render(const HFSet& x);

// code(x) = sum over y in x of 2^code(y). Throws BudgetExceeded when a code
// would need more than limits.max_code_bits bits.
BigNat ackermann_code(const HFSet& x, const Limits& limits = {});
HFSet hf_from_code(const BigNat& code);

std::uint32_t rank(const HFSet& x);
HFSet transitive_closure(const HFSet& x);
bool is_transitive(const HFSet& x);

// Members of the stage V_n, i.e. all x with rank(x) <= n-1, canonically
// sorted.
std::vector<HFSet> v_level(std::size_t n, const Limits& limits = {});

HFSet hf_union(const HFSet& a, const HFSet& b);
HFSet singleton(const HFSet& x);
// von Neumann natural n = {0, ..., n-1}.
HFSet hf_nat(std::uint64_t n);
std::optional<std::uint64_t> as_nat(const HFSet& x);
// Kuratowski pair {{a},{a,b}}.
HFSet kuratowski_pair(const HFSet& a, const HFSet& b);
std::optional<std::pair<HFSet, HFSet>> as_kuratowski_pair(const HFSet& x);

}  // namespace forcelab

template <>
struct std::hash<forcelab::HFSet> {
  std::size_t operator()(const forcelab::HFSet& x) const noexcept {
    return x.hash();
  }
};
