#pragma once

// Independent reference implementations used to check the library. They
// only rely on HFSet construction and membership, never on the routines
// they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "forcelab/formula.hpp"
#include "forcelab/hf.hpp"
#include "forcelab/poset.hpp"

namespace oracle {

using forcelab::HFSet;

// Set whose Ackermann code is `code`, by reading bits.
inline HFSet from_code(std::uint64_t code) {
  std::vector<HFSet> elems;
  for (std::uint64_t bit = 0; bit < 64; ++bit)
    if (code >> bit & 1) elems.push_back(from_code(bit));
  return HFSet::of(std::move(elems));
}

inline std::uint64_t code(const HFSet& x) {
  std::uint64_t c = 0;
  for (const auto& y : x.elements()) {
    auto k = code(y);
    if (k >= 64) throw std::overflow_error("oracle code too large");
    c |= std::uint64_t{1} << k;
  }
  return c;
}

inline std::vector<HFSet> powerset(const std::vector<HFSet>& xs) {
  if (xs.size() > 20) throw std::length_error("oracle powerset too large");
  std::vector<HFSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::vector<HFSet> pick;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (mask >> i & 1) pick.push_back(xs[i]);
    out.push_back(HFSet::of(std::move(pick)));
  }
  return out;
}

// V_{n+1} = V_n ∪ P(V_n), as a set.
inline std::set<HFSet> v_level(std::size_t n) {
  std::set<HFSet> level;
  for (std::size_t k = 0; k < n; ++k) {
    auto ps = powerset(std::vector<HFSet>(level.begin(), level.end()));
    level.insert(ps.begin(), ps.end());
  }
  return level;
}

inline std::size_t rank(const HFSet& x) {
  std::size_t r = 0;
  for (const auto& y : x.elements()) r = std::max(r, oracle::rank(y) + 1);
  return r;
}

// Tarski semantics straight from the definition.
inline bool eval(const std::vector<HFSet>& domain, const forcelab::Formula& f,
                 std::map<std::string, HFSet>& env) {
  using K = forcelab::FormulaKind;
  switch (f.kind()) {
    case K::Eq: return env.at(f.lhs_var()) == env.at(f.rhs_var());
    case K::In: return env.at(f.rhs_var()).contains(env.at(f.lhs_var()));
    case K::Not: return !eval(domain, f.child(0), env);
    case K::And: return eval(domain, f.child(0), env) && eval(domain, f.child(1), env);
    case K::Or: return eval(domain, f.child(0), env) || eval(domain, f.child(1), env);
    case K::Imp: return !eval(domain, f.child(0), env) || eval(domain, f.child(1), env);
    case K::Iff: return eval(domain, f.child(0), env) == eval(domain, f.child(1), env);
    case K::Exists:
    case K::Forall: {
      auto saved = env;
      bool exists = f.kind() == K::Exists;
      bool result = !exists;
      for (const auto& d : domain) {
        env[f.var()] = d;
        bool v = eval(domain, f.child(0), env);
        if (exists && v) { result = true; break; }
        if (!exists && !v) { result = false; break; }
      }
      env = saved;
      return result;
    }
  }
  return false;
}

// Order given as an explicit relation leq[a][b] meaning a <= b.
struct Order {
  std::size_t n = 0;
  std::vector<std::vector<bool>> leq;

  static Order of(const forcelab::FinitePoset& p) {
    Order o;
    o.n = p.size();
    o.leq.assign(o.n, std::vector<bool>(o.n, false));
    for (std::size_t a = 0; a < o.n; ++a)
      for (std::size_t b = 0; b < o.n; ++b) o.leq[a][b] = p.leq(a, b);
    return o;
  }

  bool compatible(std::size_t a, std::size_t b) const {
    for (std::size_t r = 0; r < n; ++r)
      if (leq[r][a] && leq[r][b]) return true;
    return false;
  }

  bool separative() const {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (leq[p][q]) continue;
        bool witness = false;
        for (std::size_t r = 0; r < n; ++r)
          if (leq[r][p] && !compatible(r, q)) witness = true;
        if (!witness) return false;
      }
    return true;
  }

  // Regular open: downward closed, and p ∈ S whenever every r <= p has
  // some q <= r in S.
  bool regular_open(const std::vector<bool>& s) const {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (s[p] && leq[q][p] && !s[q]) return false;
    for (std::size_t p = 0; p < n; ++p) {
      if (s[p]) continue;
      bool all = true;
      for (std::size_t r = 0; r < n && all; ++r) {
        if (!leq[r][p]) continue;
        bool hit = false;
        for (std::size_t q = 0; q < n; ++q)
          if (leq[q][r] && s[q]) hit = true;
        all = hit;
      }
      if (all) return false;
    }
    return true;
  }

  std::vector<std::vector<bool>> regular_open_sets() const {
    std::vector<std::vector<bool>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<bool> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = mask >> i & 1;
      if (regular_open(s)) out.push_back(s);
    }
    return out;
  }

  // Smallest regular open superset of S, by searching all regular open sets.
  std::vector<bool> closure(const std::vector<bool>& s) const {
    std::vector<bool> best;
    std::size_t best_count = n + 1;
    for (const auto& r : regular_open_sets()) {
      bool sup = true;
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] && !r[i]) sup = false;
      std::size_t c = std::count(r.begin(), r.end(), true);
      if (sup && c < best_count) {
        best = r;
        best_count = c;
      }
    }
    return best;
  }
};

inline std::vector<bool> to_bools(const forcelab::ConditionSet& s) {
  std::vector<bool> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s.test(i);
  return out;
}

}  // namespace oracle
