#include "forcelab/forcing.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "forcelab/error.hpp"

namespace forcelab {

struct PName::Node {
  std::vector<Pair> pairs;
  std::uint32_t rank = 0;
  std::size_t hash = 0;
};

PName::PName() {
  static const auto empty = std::make_shared<const Node>();
  node_ = empty;
}

PName PName::of(std::vector<Pair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.empty()) return PName{};
  auto node = std::make_shared<Node>();
  std::size_t h = 0x51ed27fULL ^ pairs.size();
  for (const auto& [name, q] : pairs) {
    node->rank = std::max(node->rank, name.rank() + 1);
    h ^= name.hash() * 31 + q + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  node->hash = h;
  node->pairs = std::move(pairs);
  return PName(std::shared_ptr<const Node>(std::move(node)));
}

std::span<const PName::Pair> PName::pairs() const { return node_->pairs; }
std::uint32_t PName::rank() const { return node_->rank; }
std::size_t PName::hash() const { return node_->hash; }

std::strong_ordering operator<=>(const PName& a, const PName& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  auto pa = a.pairs();
  auto pb = b.pairs();
  for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i) {
    if (auto c = pa[i].first <=> pb[i].first; c != 0) return c;
    if (auto c = pa[i].second <=> pb[i].second; c != 0) return c;
  }
  return pa.size() <=> pb.size();
}

std::vector<PName> all_names(std::size_t max_rank, const std::vector<std::size_t>& conditions,
                             const Limits& limits) {
  std::vector<PName> names{PName{}};
  for (std::size_t r = 0; r < max_rank; ++r) {
    std::vector<PName::Pair> pairs;
    for (const auto& n : names)
      for (auto q : conditions) pairs.emplace_back(n, q);
    if (pairs.size() >= 63 || (std::size_t{1} << pairs.size()) > limits.max_names)
      throw BudgetExceeded("max_names", limits.max_names,
                           "names of rank <= " + std::to_string(r + 1));
    std::vector<PName> next;
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
      std::vector<PName::Pair> chosen;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) chosen.push_back(pairs[i]);
      next.push_back(PName::of(std::move(chosen)));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    names = std::move(next);
  }
  return names;
}

FinitePoset forcing_poset(const FinitePoset& p) {
  if (p.maximum()) return p;
  return p.with_top("1", hf_nat(p.size()));
}

std::size_t one_condition(const FinitePoset& p) {
  if (auto top = p.maximum()) return *top;
  return p.size();
}

PName check_name(std::size_t one, const HFSet& x) {
  std::vector<PName::Pair> pairs;
  for (const auto& y : x.elements()) pairs.emplace_back(check_name(one, y), one);
  return PName::of(std::move(pairs));
}

PName check_name(const ForcingContext& c, const HFSet& x) { return check_name(c.one(), x); }

bool is_check_name(const ForcingContext& c, const PName& x) {
  for (const auto& [y, q] : x.pairs())
    if (q != c.one() || !is_check_name(c, y)) return false;
  return true;
}

std::size_t apply_automorphism(const PosetAutomorphism& pi, std::size_t condition) {
  return pi(condition);
}

PName apply_automorphism(const PosetAutomorphism& pi, const PName& x) {
  std::vector<PName::Pair> pairs;
  for (const auto& [y, q] : x.pairs()) pairs.emplace_back(apply_automorphism(pi, y), pi(q));
  return PName::of(std::move(pairs));
}

NameFormula apply_automorphism(const PosetAutomorphism& pi, const NameFormula& phi) {
  NameFormula out{phi.formula, {}};
  for (const auto& [var, name] : phi.constants)
    out.constants.emplace(var, apply_automorphism(pi, name));
  return out;
}

ForcingContext::ForcingContext(const FinitePoset& poset, std::vector<PName> seeds,
                               const std::vector<PosetAutomorphism>& group,
                               const Limits& limits)
    : original_size_(poset.size()) {
  one_ = one_condition(poset);
  poset_ = forcing_poset(poset);
  algebra_ = std::make_unique<RegularOpenAlgebra>(poset_, limits);
  for (const auto& g : group) {
    if (g.size() != original_size_)
      throw DomainError("automorphism does not act on this poset");
    group_.push_back(lift(g));
  }

  std::set<PName> seen;
  std::deque<PName> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    PName x = std::move(work.front());
    work.pop_front();
    if (seen.count(x)) continue;
    for (const auto& [y, q] : x.pairs())
      if (q >= poset_.size())
        throw DomainError("name uses unknown condition index " + std::to_string(q));
    if (seen.size() >= limits.max_names)
      throw BudgetExceeded("max_names", limits.max_names, "name universe closure");
    seen.insert(x);
    for (const auto& [y, q] : x.pairs()) work.push_back(y);
    for (const auto& g : group_) work.push_back(apply_automorphism(g, x));
  }
  universe_.assign(seen.begin(), seen.end());
  subname_index_.resize(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i)
    for (const auto& [y, q] : universe_[i].pairs())
      subname_index_[i].push_back(*universe_index(y));
}

std::optional<std::size_t> ForcingContext::universe_index(const PName& x) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), x);
  if (it == universe_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

std::size_t ForcingContext::require_in_universe(const PName& x) const {
  auto i = universe_index(x);
  if (!i) throw DomainError("name outside the declared universe: " + to_string(*this, x));
  return *i;
}

PosetAutomorphism ForcingContext::lift(const PosetAutomorphism& pi) const {
  if (pi.size() == poset_.size()) return PosetAutomorphism(poset_, {pi.permutation().begin(), pi.permutation().end()});
  std::vector<std::size_t> perm(pi.permutation().begin(), pi.permutation().end());
  perm.push_back(one_);
  return PosetAutomorphism(poset_, std::move(perm));
}

ConditionSet ForcingContext::as_filter(const ConditionSet& g) const {
  ConditionSet out = g;
  out.resize(poset_.size());
  out.set(one_);
  return out;
}

RegularOpenSet ForcingContext::in_value(std::size_t x, std::size_t y) const {
  const std::uint64_t key = static_cast<std::uint64_t>(x) * universe_.size() + y;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = in_cache_.find(key); it != in_cache_.end()) return it->second;
  }
  const auto& a = *algebra_;
  const auto& pairs = universe_[y].pairs();
  ConditionSet acc = poset_.empty_set();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto term = a.meet(a.embed(pairs[k].second), eq_value(x, subname_index_[y][k]));
    acc |= term.members();
  }
  RegularOpenSet value = ro_closure(poset_, acc);
  std::lock_guard lock(cache_mutex_);
  return in_cache_.emplace(key, std::move(value)).first->second;
}

RegularOpenSet ForcingContext::eq_value(std::size_t x, std::size_t y) const {
  const std::uint64_t key = static_cast<std::uint64_t>(x) * universe_.size() + y;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = eq_cache_.find(key); it != eq_cache_.end()) return it->second;
  }
  const auto& a = *algebra_;
  RegularOpenSet acc = a.one();
  auto one_direction = [&](std::size_t from, std::size_t to) {
    const auto& pairs = universe_[from].pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto implication = a.join(a.complement(a.embed(pairs[k].second)),
                                in_value(subname_index_[from][k], to));
      acc = a.meet(acc, implication);
    }
  };
  one_direction(x, y);
  one_direction(y, x);
  std::lock_guard lock(cache_mutex_);
  return eq_cache_.emplace(key, std::move(acc)).first->second;
}

namespace {

class ValueEvaluator {
 public:
  ValueEvaluator(const ForcingContext& c, const NameFormula& phi) : c_(c) {
    for (const auto& var : free_vars(phi.formula)) {
      auto it = phi.constants.find(var);
      if (it == phi.constants.end())
        throw DomainError("free variable '" + var + "' is not bound to a name");
      env_[var] = c.require_in_universe(it->second);
    }
  }

  RegularOpenSet eval(const Formula& f) {
    const auto& a = c_.algebra();
    switch (f.kind()) {
      case FormulaKind::Eq:
        return c_.eq_value(env_.at(f.lhs_var()), env_.at(f.rhs_var()));
      case FormulaKind::In:
        return c_.in_value(env_.at(f.lhs_var()), env_.at(f.rhs_var()));
      case FormulaKind::Not:
        return a.complement(eval(f.child(0)));
      case FormulaKind::And:
        return a.meet(eval(f.child(0)), eval(f.child(1)));
      case FormulaKind::Or:
        return a.join(eval(f.child(0)), eval(f.child(1)));
      case FormulaKind::Imp:
        return a.join(a.complement(eval(f.child(0))), eval(f.child(1)));
      case FormulaKind::Iff: {
        auto l = eval(f.child(0));
        auto r = eval(f.child(1));
        return a.meet(a.join(a.complement(l), r), a.join(a.complement(r), l));
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool exists = f.kind() == FormulaKind::Exists;
        const auto outer = env_;
        std::vector<RegularOpenSet> values;
        for (std::size_t i = 0; i < c_.universe().size(); ++i) {
          env_[f.var()] = i;
          values.push_back(eval(f.child(0)));
        }
        env_ = outer;
        return exists ? a.join_all(values) : a.meet_all(values);
      }
    }
    throw std::logic_error("unreachable formula kind");
  }

 private:
  const ForcingContext& c_;
  std::map<std::string, std::size_t> env_;
};

}  // namespace

RegularOpenSet bool_value(const ForcingContext& c, const NameFormula& phi) {
  ValueEvaluator ev(c, phi);
  return ev.eval(phi.formula);
}

bool forces(const ForcingContext& c, std::size_t p, const NameFormula& phi) {
  if (p >= c.poset().size()) throw DomainError("unknown condition index " + std::to_string(p));
  return c.algebra().leq(c.algebra().embed(p), bool_value(c, phi));
}

SymmetryCheck check_symmetry_lemma(const ForcingContext& c, const NameFormula& phi,
                                   const PosetAutomorphism& pi) {
  const auto& a = c.algebra();
  auto moved = apply_automorphism(pi, phi);
  auto value = bool_value(c, phi);
  auto moved_value = bool_value(c, moved);
  for (std::size_t p = 0; p < c.poset().size(); ++p) {
    bool lhs = a.leq(a.embed(p), value);
    bool rhs = a.leq(a.embed(pi(p)), moved_value);
    if (lhs != rhs) return {false, p};
  }
  return {};
}

std::optional<PosetAutomorphism> homogeneity_witness(const FinitePoset& p,
                                                     std::span<const PosetAutomorphism> group,
                                                     std::size_t a, std::size_t b) {
  for (const auto& g : group)
    if (p.compatible(g(a), b)) return g;
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> weak_homogeneity_violation(
    const FinitePoset& p, std::span<const PosetAutomorphism> group) {
  for (const auto& g : group)
    if (g.size() != p.size()) throw DomainError("automorphism does not act on this poset");
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (!homogeneity_witness(p, group, a, b)) return std::pair{a, b};
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> weak_homogeneity_violations(
    const FinitePoset& p, std::span<const PosetAutomorphism> group) {
  for (const auto& g : group)
    if (g.size() != p.size()) throw DomainError("automorphism does not act on this poset");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b)
      if (!homogeneity_witness(p, group, a, b)) out.emplace_back(a, b);
  return out;
}

bool is_weakly_homogeneous(const FinitePoset& p, std::span<const PosetAutomorphism> group) {
  return !weak_homogeneity_violation(p, group);
}

bool homogeneity_zero_one(const ForcingContext& c, const NameFormula& phi) {
  if (c.group().empty()) throw DomainError("homogeneity needs an automorphism group");
  if (auto bad = weak_homogeneity_violation(c.poset(), c.group()))
    throw DomainError("group is not weakly homogeneous: no automorphism moves " +
                      c.poset().label(bad->first) + " to a condition compatible with " +
                      c.poset().label(bad->second));
  for (const auto& [var, name] : phi.constants)
    if (!is_check_name(c, name))
      throw DomainError("constant '" + var + "' is not a check name");
  auto value = bool_value(c, phi);
  if (value == c.algebra().zero()) return false;
  if (value == c.algebra().one()) return true;
  throw std::logic_error("Boolean value of a check-name sentence is neither 0 nor 1 "
                         "under a weakly homogeneous group");
}

HFSet eval_name(const PName& x, const ConditionSet& g) {
  std::vector<HFSet> out;
  for (const auto& [y, q] : x.pairs())
    if (q < g.size() && g.test(q)) out.push_back(eval_name(y, g));
  return HFSet::of(std::move(out));
}

PName canonical_generic_name(const ForcingContext& c) {
  std::vector<PName::Pair> pairs;
  for (std::size_t p = 0; p < c.original_size(); ++p)
    pairs.emplace_back(check_name(c, c.poset().encoding(p)), p);
  return PName::of(std::move(pairs));
}

std::string to_string(const ForcingContext& c, const PName& x) {
  if (is_check_name(c, x)) {
    ConditionSet top(c.poset().size());
    top.set(c.one());
    return "check:" + hf_render(eval_name(x, top));
  }
  std::string out = "{";
  bool first = true;
  for (const auto& [y, q] : x.pairs()) {
    if (!first) out += ",";
    first = false;
    out += "(" + to_string(c, y) + "," + c.poset().label(q) + ")";
  }
  return out + "}";
}

}  // namespace forcelab
