#include "forcelab/poset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "forcelab/error.hpp"

namespace forcelab {

PartialMap::PartialMap(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw DomainError("not a function: key " +
                        std::to_string(entries[i].first) + " has two values");
  entries_ = std::move(entries);
}

std::optional<std::uint64_t> PartialMap::at(std::uint64_t key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{key, 0});
  if (it == entries_.end() || it->first != key) return std::nullopt;
  return it->second;
}

bool PartialMap::takes_value(std::uint64_t value) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.second == value; });
}

bool PartialMap::is_injective() const {
  std::set<std::uint64_t> seen;
  for (const auto& e : entries_)
    if (!seen.insert(e.second).second) return false;
  return true;
}

bool PartialMap::extends(const PartialMap& other) const {
  return std::includes(entries_.begin(), entries_.end(), other.entries_.begin(),
                       other.entries_.end());
}

std::optional<PartialMap> PartialMap::merge(const PartialMap& other) const {
  std::vector<Entry> all;
  std::set_union(entries_.begin(), entries_.end(), other.entries_.begin(),
                 other.entries_.end(), std::back_inserter(all));
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i].first == all[i - 1].first) return std::nullopt;
  PartialMap out;
  out.entries_ = std::move(all);
  return out;
}

PartialMap PartialMap::with(std::uint64_t key, std::uint64_t value) const {
  auto entries = entries_;
  entries.emplace_back(key, value);
  return PartialMap(std::move(entries));
}

std::strong_ordering operator<=>(const PartialMap& a, const PartialMap& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.entries_ <=> b.entries_;
}

std::string to_string(const PartialMap& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : p.entries()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(k) + ':' + std::to_string(v);
  }
  return out + '}';
}

PartialMap parse_partial_map(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("partial map syntax error: " + what, pos);
  };
  auto number = [&]() -> std::uint64_t {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos) fail("expected number");
    return std::stoull(std::string(text.substr(start, pos - start)));
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  expect('{');
  std::vector<PartialMap::Entry> entries;
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      auto k = number();
      expect(':');
      auto v = number();
      entries.emplace_back(k, v);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip();
  if (pos != text.size()) fail("trailing input");
  return PartialMap(std::move(entries));
}

HFSet encode(const PartialMap& p) {
  std::vector<HFSet> pairs;
  for (const auto& [k, v] : p.entries())
    pairs.push_back(kuratowski_pair(hf_nat(k), hf_nat(v)));
  return HFSet::of(std::move(pairs));
}

std::optional<PartialMap> decode_partial_map(const HFSet& x) {
  std::vector<PartialMap::Entry> entries;
  for (const auto& e : x.elements()) {
    auto pair = as_kuratowski_pair(e);
    if (!pair) return std::nullopt;
    auto k = as_nat(pair->first);
    auto v = as_nat(pair->second);
    if (!k || !v) return std::nullopt;
    entries.emplace_back(*k, *v);
  }
  try {
    return PartialMap(std::move(entries));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         std::vector<ConditionSet> down_sets,
                         std::vector<HFSet> encodings, std::vector<PartialMap> maps)
    : labels_(std::move(labels)),
      down_(std::move(down_sets)),
      encodings_(std::move(encodings)),
      maps_(std::move(maps)) {
  const std::size_t n = labels_.size();
  if (down_.size() != n) throw DomainError("poset: relation size mismatch");
  {
    std::set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw DomainError("poset: duplicate label '" + l + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (down_[i].size() != n) throw DomainError("poset: relation size mismatch");
    down_[i].set(i);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !down_[b].test(a)) continue;
      if (down_[a].test(b))
        throw DomainError("poset: antisymmetry fails for (" + labels_[a] + ", " +
                          labels_[b] + ")");
      // a <= b, so everything below a must be below b.
      auto missing = down_[a] - down_[b];
      if (missing.any()) {
        auto c = missing.find_first();
        throw DomainError("poset: transitivity fails: " + labels_[c] + " <= " +
                          labels_[a] + " <= " + labels_[b] + " but not " +
                          labels_[c] + " <= " + labels_[b]);
      }
    }
  up_.assign(n, ConditionSet(n));
  for (std::size_t q = 0; q < n; ++q)
    for (auto p = down_[q].find_first(); p != ConditionSet::npos; p = down_[q].find_next(p))
      up_[p].set(q);
  if (encodings_.empty())
    for (std::size_t i = 0; i < n; ++i) encodings_.push_back(hf_nat(i));
  if (encodings_.size() != n) throw DomainError("poset: encoding count mismatch");
  if (!maps_.empty() && maps_.size() != n)
    throw DomainError("poset: condition map count mismatch");
}

FinitePoset FinitePoset::from_pairs(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::size_t, std::size_t>>& leq_pairs) {
  const std::size_t n = labels.size();
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (auto [a, b] : leq_pairs) {
    if (a >= n || b >= n) throw DomainError("poset: pair index out of range");
    down[b].set(a);
  }
  return FinitePoset(std::move(labels), std::move(down));
}

std::optional<std::size_t> FinitePoset::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t FinitePoset::require(std::string_view label) const {
  auto i = index_of(label);
  if (!i) throw DomainError("unknown condition '" + std::string(label) + "'");
  return *i;
}

std::optional<std::size_t> FinitePoset::index_of(const PartialMap& m) const {
  for (std::size_t i = 0; i < maps_.size(); ++i)
    if (maps_[i] == m) return i;
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::maximum() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (down_[i].count() == size()) return i;
  return std::nullopt;
}

std::vector<std::size_t> FinitePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (down_[i].count() == 1) out.push_back(i);
  return out;
}

std::vector<std::size_t> FinitePoset::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (up_[i].count() == 1) out.push_back(i);
  return out;
}

FinitePoset FinitePoset::with_top(const std::string& label, const HFSet& encoding) const {
  const std::size_t n = size();
  std::vector<std::string> labels = labels_;
  labels.push_back(label);
  std::vector<ConditionSet> down;
  for (const auto& d : down_) {
    auto e = d;
    e.resize(n + 1);
    down.push_back(e);
  }
  down.push_back(ConditionSet(n + 1).set());
  std::vector<HFSet> enc = encodings_;
  enc.push_back(encoding);
  return FinitePoset(std::move(labels), std::move(down), std::move(enc));
}

bool is_compatible(const FinitePoset& p, std::size_t a, std::size_t b) {
  return p.compatible(a, b);
}

bool is_dense(const FinitePoset& p, const ConditionSet& d) {
  for (std::size_t q = 0; q < p.size(); ++q)
    if (!p.down(q).intersects(d)) return false;
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> separativity_violation(
    const FinitePoset& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (p.leq(a, b)) continue;
      bool witness = false;
      const auto& below = p.down(a);
      for (auto r = below.find_first(); r != ConditionSet::npos; r = below.find_next(r))
        if (!p.compatible(r, b)) {
          witness = true;
          break;
        }
      if (!witness) return std::pair{a, b};
    }
  return std::nullopt;
}

bool is_separative(const FinitePoset& p) { return !separativity_violation(p); }

SeparativeQuotient separative_quotient(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<ConditionSet> compat(n, ConditionSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.compatible(a, b)) compat[a].set(b);
  std::vector<std::size_t> projection(n);
  std::vector<std::size_t> reps;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t cls = reps.size();
    for (std::size_t c = 0; c < reps.size(); ++c)
      if (compat[reps[c]] == compat[a]) {
        cls = c;
        break;
      }
    if (cls == reps.size()) {
      reps.push_back(a);
      members.emplace_back();
    }
    members[cls].push_back(a);
    projection[a] = cls;
  }
  const std::size_t k = reps.size();
  std::vector<ConditionSet> down(k, ConditionSet(k));
  // [a] <= [b] iff every r <= a is compatible with b.
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (p.down(reps[x]).is_subset_of(compat[reps[y]])) down[y].set(x);
  std::vector<std::string> labels;
  std::vector<HFSet> encodings;
  std::vector<PartialMap> maps;
  const bool keep_maps = p.has_maps() && k == n;
  for (std::size_t c = 0; c < k; ++c) {
    std::string label;
    for (std::size_t i = 0; i < members[c].size(); ++i)
      label += (i ? "~" : "") + p.label(members[c][i]);
    labels.push_back(label);
    encodings.push_back(p.encoding(reps[c]));
    if (keep_maps) maps.push_back(p.map(reps[c]));
  }
  return {FinitePoset(std::move(labels), std::move(down), std::move(encodings),
                      std::move(maps)),
          std::move(projection)};
}

bool has_splitting(const FinitePoset& p) {
  if (p.size() == 0) return false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    bool found = false;
    const auto& below = p.down(a);
    for (auto r = below.find_first(); r != ConditionSet::npos && !found;
         r = below.find_next(r))
      for (auto q = below.find_next(r); q != ConditionSet::npos; q = below.find_next(q))
        if (!p.compatible(r, q)) {
          found = true;
          break;
        }
    if (!found) return false;
  }
  return true;
}

bool is_antichain(const FinitePoset& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.down(i).count() != 1) return false;
  return true;
}

PosetAutomorphism::PosetAutomorphism(const FinitePoset& p, std::vector<std::size_t> perm)
    : perm_(std::move(perm)) {
  const std::size_t n = p.size();
  if (perm_.size() != n) throw DomainError("automorphism: wrong length");
  std::vector<bool> hit(n, false);
  for (auto v : perm_) {
    if (v >= n || hit[v]) throw DomainError("automorphism: not a permutation");
    hit[v] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq(a, b) != p.leq(perm_[a], perm_[b]))
        throw DomainError("automorphism: order not preserved at (" + p.label(a) +
                          ", " + p.label(b) + ")");
}

PosetAutomorphism PosetAutomorphism::identity(const FinitePoset& p) {
  PosetAutomorphism id;
  id.perm_.resize(p.size());
  std::iota(id.perm_.begin(), id.perm_.end(), 0);
  return id;
}

PosetAutomorphism PosetAutomorphism::compose(const PosetAutomorphism& inner) const {
  PosetAutomorphism out;
  out.perm_.resize(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) out.perm_[i] = perm_[inner.perm_[i]];
  return out;
}

PosetAutomorphism PosetAutomorphism::inverse() const {
  PosetAutomorphism out;
  out.perm_.resize(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) out.perm_[perm_[i]] = i;
  return out;
}

std::vector<PosetAutomorphism> generate_group(
    const FinitePoset& p, const std::vector<PosetAutomorphism>& generators,
    const Limits& limits) {
  std::vector<PosetAutomorphism> group{PosetAutomorphism::identity(p)};
  std::set<std::vector<std::size_t>> seen{{group[0].permutation().begin(),
                                           group[0].permutation().end()}};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const auto& g : generators) {
      auto h = g.compose(group[i]);
      std::vector<std::size_t> key(h.permutation().begin(), h.permutation().end());
      if (seen.insert(key).second) {
        if (group.size() >= limits.max_group_size)
          throw BudgetExceeded("max_group_size", limits.max_group_size);
        group.push_back(h);
      }
    }
  std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.permutation().begin(), a.permutation().end(),
                                        b.permutation().begin(), b.permutation().end());
  });
  return group;
}

PosetAutomorphism value_permutation(const FinitePoset& p,
                                    const std::vector<std::uint64_t>& values,
                                    const std::vector<std::uint64_t>& image) {
  if (!p.has_maps()) throw DomainError("value permutation needs a poset of partial maps");
  if (values.size() != image.size()) throw DomainError("value permutation: size mismatch");
  std::map<std::uint64_t, std::uint64_t> sigma;
  for (std::size_t i = 0; i < values.size(); ++i) sigma[values[i]] = image[i];
  std::vector<std::size_t> perm(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<PartialMap::Entry> moved;
    for (auto [k, v] : p.map(i).entries()) {
      auto it = sigma.find(v);
      moved.emplace_back(k, it == sigma.end() ? v : it->second);
    }
    auto j = p.index_of(PartialMap(std::move(moved)));
    if (!j) throw DomainError("value permutation leaves the poset at " + p.label(i));
    perm[i] = *j;
  }
  return PosetAutomorphism(p, std::move(perm));
}

std::vector<PosetAutomorphism> value_permutation_group(const FinitePoset& p,
                                                       const Limits& limits) {
  if (!p.has_maps()) throw DomainError("value permutation needs a poset of partial maps");
  std::set<std::uint64_t> value_set;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto [k, v] : p.map(i).entries()) value_set.insert(v);
  std::vector<std::uint64_t> values(value_set.begin(), value_set.end());
  std::vector<std::uint64_t> image = values;
  std::vector<PosetAutomorphism> out;
  do {
    if (out.size() >= limits.max_group_size)
      throw BudgetExceeded("max_group_size", limits.max_group_size);
    out.push_back(value_permutation(p, values, image));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<std::uint8_t> canonical_form(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best;
  do {
    // perm[i] = original element placed at position i
    std::vector<std::uint8_t> code(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) code[i * n + j] = p.leq(perm[i], perm[j]);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

std::string letter_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i);
}

}  // namespace

std::vector<FinitePoset> posets_up_to_iso(std::size_t n) {
  // Grow naturally labelled posets: element k gets a down-closed set of
  // earlier elements below it. Every poset arises this way.
  std::vector<std::vector<ConditionSet>> frontier{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<ConditionSet>> next;
    for (const auto& downs : frontier) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        ConditionSet below(k + 1);
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1) below.set(i);
        bool closed = true;
        for (std::size_t i = 0; i < k && closed; ++i)
          if (below.test(i))
            for (std::size_t j = 0; j < k; ++j)
              if (downs[i].test(j) && !below.test(j)) {
                closed = false;
                break;
              }
        if (!closed) continue;
        std::vector<ConditionSet> grown;
        for (const auto& d : downs) {
          auto e = d;
          e.resize(k + 1);
          grown.push_back(e);
        }
        below.set(k);
        grown.push_back(below);
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  std::map<std::vector<std::uint8_t>, FinitePoset> classes;
  for (auto& downs : frontier) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(letter_label(i));
    FinitePoset p(std::move(labels), std::move(downs));
    auto key = canonical_form(p);
    classes.try_emplace(std::move(key), std::move(p));
  }
  std::vector<FinitePoset> out;
  for (auto& [key, p] : classes) out.push_back(std::move(p));
  return out;
}

FinitePoset chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(letter_label(i));
    for (std::size_t j = 0; j <= i; ++j) down[i].set(j);
  }
  return FinitePoset(std::move(labels), std::move(down));
}

FinitePoset antichain_poset(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(letter_label(i + 1));
  return FinitePoset(std::move(labels), std::vector<ConditionSet>(n, ConditionSet(n)));
}

FinitePoset top_with_atoms(std::size_t atoms) {
  const std::size_t n = atoms + 1;
  std::vector<std::string> labels;
  std::vector<ConditionSet> down(n, ConditionSet(n));
  for (std::size_t i = 0; i < n; ++i) labels.push_back(letter_label(i));
  down[0].set();
  return FinitePoset(std::move(labels), std::move(down));
}

std::string to_dot(const FinitePoset& p, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    out << "  n" << i << " [label=\"" << p.label(i) << "\"];\n";
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (a == b || !p.leq(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < p.size(); ++c)
        if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) {
          covered = false;
          break;
        }
      if (covered) out << "  n" << a << " -> n" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace forcelab
