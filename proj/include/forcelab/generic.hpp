#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/error.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/lazy_poset.hpp"
#include "forcelab/limits.hpp"
#include "forcelab/poset.hpp"

namespace forcelab {

// A dense set presented constructively: a membership test and a refiner
// that maps every condition p to some q <= p inside the set.
template <class C>
struct DenseSpec {
  std::string name;
  std::function<bool(const C&)> contains;
  std::function<C(const C&)> refine;
};

inline std::string describe(const FinitePoset& p, std::size_t c) { return p.label(c); }
inline std::string describe(const LazyPoset&, const PartialMap& c) { return to_string(c); }

// The filter generated by a descending chain: p in G iff the last chain
// element is below p.
template <class C>
class GenericFilter {
 public:
  using Leq = std::function<bool(const C&, const C&)>;

  GenericFilter(std::vector<C> chain, Leq leq) : chain_(std::move(chain)), leq_(std::move(leq)) {
    if (chain_.empty()) throw DomainError("a generic filter needs a nonempty chain");
  }

  const std::vector<C>& chain() const { return chain_; }
  const C& strongest() const { return chain_.back(); }
  bool contains(const C& p) const { return leq_(chain_.back(), p); }
  bool meets(const DenseSpec<C>& d) const {
    for (const auto& c : chain_)
      if (d.contains(c)) return true;
    return false;
  }
  // Witness of directedness: a chain element below both members.
  std::optional<C> common_lower_bound(const C& a, const C& b) const {
    if (contains(a) && contains(b)) return chain_.back();
    return std::nullopt;
  }

 private:
  std::vector<C> chain_;
  Leq leq_;
};

// Some member of the filter lies in d.
bool meets(const GenericFilter<std::size_t>& g, const ConditionSet& d);
// Members of the filter as a subset of p.
ConditionSet filter_members(const GenericFilter<std::size_t>& g, const FinitePoset& p);

// Single-owner cursor for the Rasiowa-Sikorski construction: one refiner
// application per step.
template <class P>
class GenericSession {
 public:
  using C = typename P::condition_type;

  GenericSession(const P& poset, std::vector<DenseSpec<C>> specs, C start, std::size_t horizon)
      : poset_(poset), specs_(std::move(specs)), horizon_(horizon) {
    if (horizon_ < specs_.size())
      throw DomainError("horizon " + std::to_string(horizon_) + " is smaller than the " +
                        std::to_string(specs_.size()) + " dense sets to meet");
    require(start);
    chain_.push_back(std::move(start));
  }

  bool done() const { return chain_.size() > specs_.size(); }
  std::size_t steps_taken() const { return chain_.size() - 1; }
  const std::vector<C>& chain() const { return chain_; }

  void step() {
    if (done()) throw DomainError("generic session already finished");
    const std::size_t k = chain_.size() - 1;
    const auto& spec = specs_[k];
    const C& p = chain_.back();
    C q = spec.refine(p);
    if (!is_condition(q) || !poset_.leq(q, p))
      throw DomainError("refiner " + std::to_string(k) + " ('" + spec.name + "') returned " +
                        describe(poset_, q) + ", which does not extend " + describe(poset_, p));
    if (!spec.contains(q))
      throw DomainError("refiner " + std::to_string(k) + " ('" + spec.name + "') returned " +
                        describe(poset_, q) + ", which is not in its dense set");
    chain_.push_back(std::move(q));
  }

  GenericFilter<C> finish() {
    while (!done()) step();
    const P* poset = &poset_;
    if constexpr (std::is_same_v<P, FinitePoset>) {
      auto owned = std::make_shared<FinitePoset>(poset_);
      return GenericFilter<C>(chain_, [owned](const C& a, const C& b) { return owned->leq(a, b); });
    } else {
      auto owned = std::make_shared<P>(*poset);
      return GenericFilter<C>(chain_, [owned](const C& a, const C& b) { return owned->leq(a, b); });
    }
  }

 private:
  bool is_condition(const C& c) const {
    if constexpr (std::is_same_v<P, FinitePoset>) return c < poset_.size();
    else return poset_.is_condition(c);
  }
  void require(const C& c) const {
    if constexpr (std::is_same_v<P, FinitePoset>) {
      if (c >= poset_.size()) throw DomainError("start condition is not in the poset");
    } else {
      poset_.require_condition(c);
    }
  }

  const P& poset_;
  std::vector<DenseSpec<C>> specs_;
  std::size_t horizon_;
  std::vector<C> chain_;
};

// p0 = start >= p1 >= ... with p_{k+1} = refiner_k(p_k).
template <class P>
GenericFilter<typename P::condition_type> rs_generic(
    const P& poset, std::vector<DenseSpec<typename P::condition_type>> specs,
    typename P::condition_type start, std::size_t horizon) {
  GenericSession<P> session(poset, std::move(specs), std::move(start), horizon);
  return session.finish();
}

enum class RefinerKind { Domains, Ranges, Totality };

struct RefinerParams {
  // Domains: keys to force into the domain; Ranges: values to force into
  // the range.
  std::vector<std::uint64_t> values;
  // Totality: the set whose canonical indices make up the domain.
  HFSet set;
};

// D_a = {p : a in dom p} (least admissible value), D_r = {p : r in ran p}
// (least fresh key), totality(s) = D_i for each index of s.
std::vector<DenseSpec<PartialMap>> standard_refiners(const LazyPoset& poset, RefinerKind kind,
                                                     const RefinerParams& params);

// Union of a chain of partial maps.
PartialMap union_map(const GenericFilter<PartialMap>& g);

// Total injection s -> ω from a Rasiowa-Sikorski run on the partial
// injections s -> ω, as (element, value) in canonical element order.
std::vector<std::pair<HFSet, std::uint64_t>> countability_witness(const HFSet& s,
                                                                  std::size_t horizon);

// A poset is coded as the set of Kuratowski pairs (a, b) with a <= b over
// its conditions, reflexive pairs included.
HFSet encode_poset(const FinitePoset& p);

struct DecodedPoset {
  FinitePoset poset;
  // conditions[i] is the HFSet of poset condition i (canonical order).
  std::vector<HFSet> conditions;
};
std::optional<DecodedPoset> try_decode_poset(const HFSet& code);
// Throws DomainError describing why `code` is not a poset code.
DecodedPoset decode_poset(const HFSet& code);

class FiniteModel {
 public:
  // Throws DomainError if m is not transitive.
  explicit FiniteModel(HFSet m);
  // Transitive closure of the given elements, together with them.
  static FiniteModel closure_of(const std::vector<HFSet>& elements);

  const HFSet& set() const { return m_; }
  bool contains(const HFSet& x) const { return m_.contains(x); }
  std::vector<HFSet> poset_codes() const;
  std::vector<HFSet> subsets_of(const HFSet& field) const;

 private:
  HFSet m_;
};

struct ModelDenseSet {
  HFSet code;
  ConditionSet members;
};
// Every D in M with D ⊆ P and D dense in P, in canonical order.
std::vector<ModelDenseSet> m_dense_family(const FiniteModel& m, const HFSet& poset_code);

struct MGenericReport {
  DecodedPoset decoded;
  std::vector<ModelDenseSet> dense_sets;
  std::vector<bool> met;
  bool all_met = false;
  ConditionSet members;
  HFSet g_code;
  bool g_in_model = false;
  bool splitting = false;
  std::optional<PartialMap> union_map;
};

struct MGenericResult {
  GenericFilter<std::size_t> filter;
  MGenericReport report;
};

// Rasiowa-Sikorski against the dense sets found in M. Each dense set
// refines p to its least member below p. The default start is the least
// maximal condition.
MGenericResult m_generic(const FiniteModel& m, const HFSet& poset_code,
                         std::optional<HFSet> start = std::nullopt);

}  // namespace forcelab
