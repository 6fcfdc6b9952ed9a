#include "forcelab/roalg.hpp"

#include <algorithm>
#include <sstream>

#include "forcelab/error.hpp"

namespace forcelab {

std::vector<std::size_t> RegularOpenSet::indices() const {
  std::vector<std::size_t> out;
  for (auto i = members_.find_first(); i != ConditionSet::npos; i = members_.find_next(i))
    out.push_back(i);
  return out;
}

std::strong_ordering operator<=>(const RegularOpenSet& a, const RegularOpenSet& b) {
  if (a.count() != b.count()) return a.count() <=> b.count();
  return a.indices() <=> b.indices();
}

namespace {

ConditionSet down_closure(const FinitePoset& p, const ConditionSet& s) {
  ConditionSet out(p.size());
  for (auto i = s.find_first(); i != ConditionSet::npos; i = s.find_next(i))
    out |= p.down(i);
  return out;
}

}  // namespace

bool is_regular_open(const FinitePoset& p, const ConditionSet& s) {
  if (down_closure(p, s) != s) return false;
  return ro_closure(p, s).members() == s;
}

RegularOpenSet ro_closure(const FinitePoset& p, const ConditionSet& s) {
  const ConditionSet base = down_closure(p, s);
  // r meets base below it
  ConditionSet touching(p.size());
  for (std::size_t r = 0; r < p.size(); ++r)
    if (p.down(r).intersects(base)) touching.set(r);
  ConditionSet out(p.size());
  for (std::size_t q = 0; q < p.size(); ++q)
    if (p.down(q).is_subset_of(touching)) out.set(q);
  return RegularOpenSet(std::move(out));
}

RegularOpenAlgebra::RegularOpenAlgebra(FinitePoset poset, const Limits& limits)
    : poset_(std::move(poset)) {
  if (poset_.size() == 0) throw DomainError("r.o. algebra of the empty poset");
  if (poset_.size() > limits.max_poset_size)
    throw BudgetExceeded("max_poset_size", limits.max_poset_size);
  if (auto bad = separativity_violation(poset_))
    throw DomainError("poset is not separative at (" + poset_.label(bad->first) + ", " +
                      poset_.label(bad->second) +
                      "); take its separative quotient first");
  // In a finite poset a regular open set is fixed by the minimal conditions
  // it contains, and every set of minimal conditions occurs.
  const auto minimal = poset_.minimal_elements();
  if (minimal.size() >= 63 || (std::size_t{1} << minimal.size()) > limits.max_algebra_size)
    throw BudgetExceeded("max_algebra_size", limits.max_algebra_size,
                         std::to_string(minimal.size()) + " atoms");
  const std::size_t count = std::size_t{1} << minimal.size();
  elements_.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    ConditionSet s(poset_.size());
    for (std::size_t i = 0; i < minimal.size(); ++i)
      if (mask >> i & 1) s.set(minimal[i]);
    elements_.push_back(ro_closure(poset_, s));
  }
  std::sort(elements_.begin(), elements_.end());
}

std::optional<std::size_t> RegularOpenAlgebra::index_of(const RegularOpenSet& s) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), s);
  if (it == elements_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

RegularOpenSet RegularOpenAlgebra::zero() const {
  return RegularOpenSet(poset_.empty_set());
}

RegularOpenSet RegularOpenAlgebra::one() const { return RegularOpenSet(poset_.full_set()); }

RegularOpenSet RegularOpenAlgebra::meet(const RegularOpenSet& a,
                                       const RegularOpenSet& b) const {
  return RegularOpenSet(a.members() & b.members());
}

RegularOpenSet RegularOpenAlgebra::join(const RegularOpenSet& a,
                                       const RegularOpenSet& b) const {
  return ro_closure(poset_, a.members() | b.members());
}

RegularOpenSet RegularOpenAlgebra::complement(const RegularOpenSet& a) const {
  ConditionSet out(poset_.size());
  for (std::size_t p = 0; p < poset_.size(); ++p)
    if (!poset_.down(p).intersects(a.members())) out.set(p);
  return RegularOpenSet(std::move(out));
}

RegularOpenSet RegularOpenAlgebra::meet_all(std::span<const RegularOpenSet> xs) const {
  ConditionSet acc = poset_.full_set();
  for (const auto& x : xs) acc &= x.members();
  return RegularOpenSet(std::move(acc));
}

RegularOpenSet RegularOpenAlgebra::join_all(std::span<const RegularOpenSet> xs) const {
  ConditionSet acc = poset_.empty_set();
  for (const auto& x : xs) acc |= x.members();
  return ro_closure(poset_, acc);
}

bool RegularOpenAlgebra::leq(const RegularOpenSet& a, const RegularOpenSet& b) const {
  return a.members().is_subset_of(b.members());
}

RegularOpenSet RegularOpenAlgebra::embed(std::size_t p) const {
  if (p >= poset_.size())
    throw DomainError("unknown condition index " + std::to_string(p));
  ConditionSet s(poset_.size());
  s.set(p);
  return ro_closure(poset_, s);
}

std::vector<RegularOpenSet> RegularOpenAlgebra::atoms() const {
  std::vector<RegularOpenSet> out;
  for (auto m : poset_.minimal_elements()) out.push_back(embed(m));
  std::sort(out.begin(), out.end());
  return out;
}

RegularOpenSet RegularOpenAlgebra::element(const ConditionSet& s) const {
  if (s.size() != poset_.size() || !is_regular_open(poset_, s))
    throw DomainError("not a regular open set");
  return RegularOpenSet(s);
}

RegularOpenAlgebra ro_algebra(const FinitePoset& p, const Limits& limits) {
  return RegularOpenAlgebra(p, limits);
}

RegularOpenSet dense_embedding(const RegularOpenAlgebra& a, std::size_t p) {
  return a.embed(p);
}

std::vector<RegularOpenSet> regular_open_sets_brute_force(const FinitePoset& p) {
  if (p.size() > 20) throw BudgetExceeded("brute_force_poset_size", 20);
  std::vector<RegularOpenSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << p.size()); ++mask) {
    ConditionSet s(p.size(), mask);
    // Direct reading of the definition.
    bool down_closed = true;
    for (std::size_t a = 0; a < p.size() && down_closed; ++a)
      if (s.test(a))
        for (std::size_t b = 0; b < p.size(); ++b)
          if (p.leq(b, a) && !s.test(b)) {
            down_closed = false;
            break;
          }
    if (!down_closed) continue;
    bool regular = true;
    for (std::size_t a = 0; a < p.size() && regular; ++a) {
      if (s.test(a)) continue;
      bool every_r_meets = true;
      for (std::size_t r = 0; r < p.size() && every_r_meets; ++r) {
        if (!p.leq(r, a)) continue;
        bool found = false;
        for (std::size_t q = 0; q < p.size(); ++q)
          if (s.test(q) && p.leq(q, r)) {
            found = true;
            break;
          }
        every_r_meets = found;
      }
      if (every_r_meets) regular = false;
    }
    if (regular) out.emplace_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_partition(const RegularOpenAlgebra& a, const Partition& part) {
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (part[i].members().size() != a.poset().size() || !a.is_element(part[i]))
      throw DomainError("partition cell " + std::to_string(i) + " is not an algebra element");
    if (part[i].is_zero())
      throw DomainError("partition cell " + std::to_string(i) + " is zero");
  }
  for (std::size_t i = 0; i < part.size(); ++i)
    for (std::size_t j = i + 1; j < part.size(); ++j)
      if (!a.meet(part[i], part[j]).is_zero())
        throw DomainError("partition cells " + std::to_string(i) + " and " +
                          std::to_string(j) + " are not disjoint");
  if (a.join_all(part) != a.one()) throw DomainError("partition does not join to 1");
}

bool refines(const RegularOpenAlgebra& a, const Partition& finer, const Partition& coarser) {
  for (const auto& c : finer) {
    bool below_some = std::any_of(coarser.begin(), coarser.end(),
                                  [&](const RegularOpenSet& d) { return a.leq(c, d); });
    if (!below_some) return false;
  }
  return true;
}

Partition common_refinement(const RegularOpenAlgebra& a, std::span<const Partition> parts) {
  for (const auto& part : parts) validate_partition(a, part);
  Partition current{a.one()};
  for (const auto& part : parts) {
    Partition next;
    for (const auto& c : current)
      for (const auto& b : part) {
        auto m = a.meet(c, b);
        if (!m.is_zero()) next.push_back(std::move(m));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return current;
}

DistributivityReport distributivity_report(const RegularOpenAlgebra& a,
                                           std::span<const Partition> families) {
  DistributivityReport report;
  for (const auto& f : families) report.input_sizes.push_back(f.size());
  report.refinement = common_refinement(a, families);
  validate_partition(a, report.refinement);
  report.refined = std::all_of(families.begin(), families.end(), [&](const Partition& f) {
    return refines(a, report.refinement, f);
  });
  return report;
}

std::string element_label(const RegularOpenAlgebra& a, const RegularOpenSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.indices()) {
    if (!first) out += ",";
    first = false;
    out += a.poset().label(i);
  }
  return out + "}";
}

std::string to_dot(const RegularOpenAlgebra& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  const auto els = a.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    std::string label = element_label(a, els[i]);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  e" << i << " [label=\"" << escaped << "\"];\n";
  }
  // Covers in a finite Boolean algebra: x below x ∨ t for an atom t ≰ x.
  const auto atoms = a.atoms();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (const auto& t : atoms) {
      if (a.leq(t, els[i])) continue;
      auto j = a.index_of(a.join(els[i], t));
      if (j) out << "  e" << i << " -> e" << *j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace forcelab
