#include "forcelab/logic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "forcelab/error.hpp"

namespace forcelab {

FiniteStructure::FiniteStructure(std::vector<HFSet> domain) {
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  domain_ = std::move(domain);
  members_.resize(domain_.size());
  for (std::size_t j = 0; j < domain_.size(); ++j) {
    // Both lists are canonically sorted, so a merge finds the members.
    auto els = domain_[j].elements();
    std::size_t i = 0;
    for (const auto& e : els) {
      while (i < domain_.size() && domain_[i] < e) ++i;
      if (i < domain_.size() && domain_[i] == e) members_[j].push_back(i);
    }
  }
}

FiniteStructure FiniteStructure::of_set(const HFSet& x) {
  return FiniteStructure(std::vector<HFSet>(x.elements().begin(), x.elements().end()));
}

bool FiniteStructure::member(std::size_t i, std::size_t j) const {
  const auto& m = members_[j];
  return std::binary_search(m.begin(), m.end(), i);
}

std::optional<std::size_t> FiniteStructure::index_of(const HFSet& x) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

HFSet FiniteStructure::reify(const std::vector<bool>& mask) const {
  std::vector<HFSet> out;
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (mask[i]) out.push_back(domain_[i]);
  return HFSet::from_sorted_unique(std::move(out));
}

namespace {

// Formula compiled to slot-addressed operations. Shared subformulas stay
// shared.
class Evaluator {
 public:
  Evaluator(const FiniteStructure& m, const Formula& phi) : m_(m) {
    root_ = compile(phi);
  }

  int slot(const std::string& var) const {
    auto it = slots_.find(var);
    return it == slots_.end() ? -1 : it->second;
  }
  std::size_t slot_count() const { return slots_.size(); }

  bool eval(std::vector<std::size_t>& env) const { return eval(root_, env); }

 private:
  struct Op {
    FormulaKind kind;
    int a = -1;
    int b = -1;
    int c0 = -1;
    int c1 = -1;
  };

  int slot_for(const std::string& var) {
    auto [it, fresh] = slots_.try_emplace(var, static_cast<int>(slots_.size()));
    return it->second;
  }

  int compile(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    Op op{f.kind()};
    if (f.is_atomic()) {
      op.a = slot_for(f.lhs_var());
      op.b = slot_for(f.rhs_var());
    } else if (f.is_quantifier()) {
      op.a = slot_for(f.var());
      op.c0 = compile(f.child(0));
    } else {
      op.c0 = compile(f.child(0));
      if (f.arity() > 1) op.c1 = compile(f.child(1));
    }
    ops_.push_back(op);
    int id = static_cast<int>(ops_.size()) - 1;
    memo_.emplace(f.identity(), id);
    return id;
  }

  bool eval(int id, std::vector<std::size_t>& env) const {
    const Op& op = ops_[id];
    switch (op.kind) {
      case FormulaKind::Eq:
        return env[op.a] == env[op.b];
      case FormulaKind::In:
        return m_.member(env[op.a], env[op.b]);
      case FormulaKind::Not:
        return !eval(op.c0, env);
      case FormulaKind::And:
        return eval(op.c0, env) && eval(op.c1, env);
      case FormulaKind::Or:
        return eval(op.c0, env) || eval(op.c1, env);
      case FormulaKind::Imp:
        return !eval(op.c0, env) || eval(op.c1, env);
      case FormulaKind::Iff:
        return eval(op.c0, env) == eval(op.c1, env);
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool want = op.kind == FormulaKind::Exists;
        const std::size_t saved = env[op.a];
        bool result = !want;
        for (std::size_t v = 0; v < m_.size(); ++v) {
          env[op.a] = v;
          if (eval(op.c0, env) == want) {
            result = want;
            break;
          }
        }
        env[op.a] = saved;
        return result;
      }
    }
    throw std::logic_error("unreachable formula kind");
  }

  const FiniteStructure& m_;
  std::vector<Op> ops_;
  std::map<std::string, int> slots_;
  std::map<const void*, int> memo_;
  int root_ = -1;
};

std::vector<bool> extension_of(const FiniteStructure& m, const Formula& phi,
                               const std::string& var) {
  Evaluator ev(m, phi);
  std::vector<std::size_t> env(ev.slot_count(), 0);
  std::vector<bool> out(m.size(), false);
  const int s = ev.slot(var);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (s >= 0) env[s] = i;
    out[i] = ev.eval(env);
  }
  return out;
}

std::size_t checked_pow2(std::size_t k, std::size_t limit, const char* budget,
                         const std::string& what) {
  if (k >= 63 || (std::size_t{1} << k) > limit)
    throw BudgetExceeded(budget, limit, what);
  return std::size_t{1} << k;
}

std::vector<HFSet> unions_of_classes(
    const FiniteStructure& m, const std::vector<std::vector<std::size_t>>& classes,
    const Limits& limits) {
  const std::size_t count = checked_pow2(
      classes.size(), limits.max_subsets, "max_subsets",
      std::to_string(classes.size()) + " classes");
  std::vector<HFSet> out;
  out.reserve(count);
  std::vector<bool> mask(m.size());
  for (std::size_t bits = 0; bits < count; ++bits) {
    std::fill(mask.begin(), mask.end(), false);
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (bits >> c & 1)
        for (auto i : classes[c]) mask[i] = true;
    out.push_back(m.reify(mask));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool satisfies(const FiniteStructure& m, const Formula& phi,
               const Assignment& assignment) {
  Evaluator ev(m, phi);
  std::vector<std::size_t> env(ev.slot_count(), 0);
  for (const auto& var : free_vars(phi)) {
    auto it = assignment.find(var);
    if (it == assignment.end())
      throw DomainError("unassigned free variable '" + var + "'");
    auto idx = m.index_of(it->second);
    if (!idx)
      throw DomainError("value of '" + var + "' is not in the domain: " +
                        hf_render(it->second));
    env[ev.slot(var)] = *idx;
  }
  return ev.eval(env);
}

HFSet defined_set(const FiniteStructure& m, const Formula& phi) {
  auto fv = free_vars(phi);
  if (fv.size() != 1)
    throw DomainError("defined_set needs exactly one free variable, got " +
                      std::to_string(fv.size()));
  return m.reify(extension_of(m, phi, *fv.begin()));
}

std::vector<Permutation> automorphisms(const FiniteStructure& m,
                                       const Limits& limits) {
  const std::size_t n = m.size();
  if (n > limits.max_structure_size)
    throw BudgetExceeded("max_structure_size", limits.max_structure_size,
                         "domain of size " + std::to_string(n));
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j)
    for (auto i : m.members_of(j)) rel[i][j] = true;

  // Color refinement: automorphisms preserve the stable coloring.
  std::vector<int> color(n, 0);
  for (std::size_t round = 0; round <= n; ++round) {
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> below, above;
      for (std::size_t k = 0; k < n; ++k) {
        if (rel[k][i]) below.push_back(color[k]);
        if (rel[i][k]) above.push_back(color[k]);
      }
      std::sort(below.begin(), below.end());
      std::sort(above.begin(), above.end());
      keys[i].push_back(color[i]);
      keys[i].push_back(static_cast<int>(below.size()));
      keys[i].insert(keys[i].end(), below.begin(), below.end());
      keys[i].push_back(-1);
      keys[i].insert(keys[i].end(), above.begin(), above.end());
      ids.emplace(keys[i], 0);
    }
    int next_id = 0;
    for (auto& [k, v] : ids) v = next_id++;
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = ids[keys[i]];
    const bool stable =
        std::set<int>(next.begin(), next.end()).size() ==
        std::set<int>(color.begin(), color.end()).size();
    color = std::move(next);
    if (stable && round > 0) break;
  }

  std::vector<Permutation> out;
  Permutation sigma(n, 0);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t i, std::size_t j) {
    if (rel[i][i] != rel[j][j]) return false;
    for (std::size_t k = 0; k < i; ++k) {
      if (rel[i][k] != rel[j][sigma[k]]) return false;
      if (rel[k][i] != rel[sigma[k]][j]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (out.size() >= limits.max_automorphisms)
        throw BudgetExceeded("max_automorphisms", limits.max_automorphisms);
      out.push_back(sigma);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || color[j] != color[i] || !consistent(i, j)) continue;
      sigma[i] = j;
      used[j] = true;
      self(self, i + 1);
      used[j] = false;
    }
  };
  search(search, 0);
  return out;
}

std::vector<std::vector<std::size_t>> automorphism_orbits(const FiniteStructure& m,
                                                          const Limits& limits) {
  const std::size_t n = m.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& sigma : automorphisms(m, limits))
    for (std::size_t i = 0; i < n; ++i) {
      auto a = find(i), b = find(sigma[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::vector<HFSet> def_exact(const FiniteStructure& m, const Limits& limits,
                             DefOptions options) {
  std::vector<std::vector<std::size_t>> classes;
  if (options.with_parameters) {
    for (std::size_t i = 0; i < m.size(); ++i) classes.push_back({i});
  } else {
    classes = automorphism_orbits(m, limits);
  }
  return unions_of_classes(m, classes, limits);
}

namespace {

// Partition of k-tuples (k = level + 1) by their type of quantifier depth
// `depth - level`. Tuple codes are base-n numerals, first coordinate most
// significant.
struct TypeTable {
  std::size_t n = 0;
  std::size_t depth = 0;
  // class_of[level][tuple code]
  std::vector<std::vector<int>> class_of;
  // For each level and class: a representative tuple code and the classes
  // at level+1 realized by its one-point extensions.
  std::vector<std::vector<std::size_t>> representative;
  std::vector<std::vector<std::vector<int>>> extensions;
};

std::vector<std::size_t> decode_tuple(std::size_t code, std::size_t len,
                                      std::size_t n) {
  std::vector<std::size_t> t(len);
  for (std::size_t i = len; i-- > 0;) {
    t[i] = code % n;
    code /= n;
  }
  return t;
}

std::vector<int> atomic_key(const FiniteStructure& m,
                            const std::vector<std::size_t>& t) {
  std::vector<int> key;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) {
      key.push_back(t[a] == t[b]);
      key.push_back(m.member(t[a], t[b]));
    }
  return key;
}

TypeTable build_types(const FiniteStructure& m, std::size_t depth,
                      const Limits& limits) {
  if (depth > limits.max_depth)
    throw BudgetExceeded("max_depth", limits.max_depth,
                         "depth " + std::to_string(depth));
  TypeTable tt;
  tt.n = m.size();
  tt.depth = depth;
  tt.class_of.resize(depth + 1);
  tt.representative.resize(depth + 1);
  tt.extensions.resize(depth + 1);
  const std::size_t n = tt.n;
  std::size_t tuples = 1;
  for (std::size_t i = 0; i <= depth; ++i) {
    if (n != 0 && tuples > limits.max_type_tuples / n)
      throw BudgetExceeded("max_type_tuples", limits.max_type_tuples);
    tuples *= n;
  }
  for (std::size_t level = depth + 1; level-- > 0;) {
    const std::size_t len = level + 1;
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= n;
    std::map<std::vector<int>, int> ids;
    auto& cls = tt.class_of[level];
    cls.assign(count, -1);
    for (std::size_t code = 0; code < count; ++code) {
      auto t = decode_tuple(code, len, n);
      std::vector<int> key = atomic_key(m, t);
      std::vector<int> ext;
      if (level < depth) {
        for (std::size_t b = 0; b < n; ++b)
          ext.push_back(tt.class_of[level + 1][code * n + b]);
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
        key.push_back(-1);
        key.insert(key.end(), ext.begin(), ext.end());
      }
      auto [it, fresh] = ids.try_emplace(key, static_cast<int>(ids.size()));
      if (fresh) {
        tt.representative[level].push_back(code);
        tt.extensions[level].push_back(ext);
      }
      cls[code] = it->second;
    }
  }
  return tt;
}

std::string var_name(std::size_t i) { return "x" + std::to_string(i); }

class WitnessBuilder {
 public:
  WitnessBuilder(const FiniteStructure& m, const TypeTable& tt) : m_(m), tt_(tt) {}

  Formula build(std::size_t level, int cls) {
    auto key = std::pair{level, cls};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::size_t len = level + 1;
    auto t = decode_tuple(tt_.representative[level][cls], len, tt_.n);
    std::vector<Formula> parts;
    for (std::size_t a = 0; a < len; ++a)
      for (std::size_t b = 0; b < len; ++b) {
        if (a < b) {
          Formula e = Formula::eq(var_name(a), var_name(b));
          parts.push_back(t[a] == t[b] ? e : Formula::negation(e));
        }
        Formula in = Formula::in(var_name(a), var_name(b));
        parts.push_back(m_.member(t[a], t[b]) ? in : Formula::negation(in));
      }
    if (level < tt_.depth) {
      const std::string y = var_name(len);
      std::vector<Formula> options;
      for (int e : tt_.extensions[level][cls]) {
        Formula sub = build(level + 1, e);
        parts.push_back(Formula::exists(y, sub));
        options.push_back(sub);
      }
      Formula no = Formula::negation(Formula::eq(var_name(0), var_name(0)));
      parts.push_back(Formula::forall(y, disjoin(options, no)));
    }
    Formula f = conjoin(parts, Formula::eq(var_name(0), var_name(0)));
    memo_.emplace(key, f);
    return f;
  }

 private:
  const FiniteStructure& m_;
  const TypeTable& tt_;
  std::map<std::pair<std::size_t, int>, Formula> memo_;
};

std::vector<std::vector<std::size_t>> top_classes(const TypeTable& tt) {
  std::vector<std::vector<std::size_t>> classes(tt.representative[0].size());
  for (std::size_t i = 0; i < tt.n; ++i) classes[tt.class_of[0][i]].push_back(i);
  return classes;
}

}  // namespace

std::vector<HFSet> def_by_depth(const FiniteStructure& m, std::size_t depth,
                                const Limits& limits) {
  if (m.size() == 0) {
    if (depth > limits.max_depth)
      throw BudgetExceeded("max_depth", limits.max_depth);
    return {HFSet{}};
  }
  TypeTable tt = build_types(m, depth, limits);
  return unions_of_classes(m, top_classes(tt), limits);
}

std::vector<TypeWitness> depth_type_witnesses(const FiniteStructure& m,
                                              std::size_t depth,
                                              const Limits& limits) {
  if (m.size() == 0) return {};
  TypeTable tt = build_types(m, depth, limits);
  WitnessBuilder builder(m, tt);
  std::vector<TypeWitness> out;
  auto classes = top_classes(tt);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<bool> mask(m.size(), false);
    for (auto i : classes[c]) mask[i] = true;
    out.push_back({m.reify(mask), builder.build(0, static_cast<int>(c))});
  }
  return out;
}

std::vector<HFSet> definable_elements(const FiniteStructure& m,
                                      const Limits& limits) {
  std::vector<HFSet> out;
  for (const auto& orbit : automorphism_orbits(m, limits))
    if (orbit.size() == 1) out.push_back(m.domain()[orbit[0]]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<HFSet>> grow_levels(std::vector<HFSet> start,
                                            std::size_t n,
                                            const Limits& limits) {
  std::vector<std::vector<HFSet>> levels;
  levels.push_back(std::move(start));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& current = levels.back();
    FiniteStructure m(current);
    auto definable = def_exact(m, limits);
    std::vector<HFSet> next;
    next.reserve(current.size() + definable.size());
    std::set_union(current.begin(), current.end(), definable.begin(),
                   definable.end(), std::back_inserter(next));
    if (next.size() > limits.max_level_size)
      throw BudgetExceeded("max_level_size", limits.max_level_size,
                           "level " + std::to_string(k + 1));
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace

std::vector<std::vector<HFSet>> l_hierarchy(std::size_t n, const Limits& limits) {
  return grow_levels({}, n, limits);
}

std::vector<std::vector<HFSet>> lx_hierarchy(const HFSet& x, std::size_t n,
                                             const Limits& limits) {
  if (!is_transitive(x))
    throw DomainError("L(X) needs a transitive X, got " + hf_render(x));
  return grow_levels({x.elements().begin(), x.elements().end()}, n, limits);
}

}  // namespace forcelab
