#include <doctest.h>

#include "forcelab/error.hpp"
#include "forcelab/lazy_poset.hpp"
#include "forcelab/poset.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

FinitePoset fin_partial(std::vector<std::uint64_t> dom, std::vector<std::uint64_t> ran) {
  StandardParams params;
  params.domain = NatSet::of(std::move(dom));
  params.range = NatSet::of(std::move(ran));
  return std::get<FinitePoset>(make_standard_poset(StandardKind::FinPartial, params));
}

FinitePoset fin_inj(std::vector<std::uint64_t> dom, std::vector<std::uint64_t> ran) {
  StandardParams params;
  params.domain = NatSet::of(std::move(dom));
  params.range = NatSet::of(std::move(ran));
  return std::get<FinitePoset>(make_standard_poset(StandardKind::FinInj, params));
}

ConditionSet set_of(const FinitePoset& p, std::initializer_list<const char*> labels) {
  auto s = p.empty_set();
  for (auto l : labels) s.set(p.require(l));
  return s;
}

}  // namespace

TEST_CASE("construction adds reflexivity and validates the order") {
  auto p = FinitePoset::from_pairs({"a", "b"}, {{1, 0}});
  CHECK(p.leq(0, 0));
  CHECK(p.leq(1, 0));
  CHECK_FALSE(p.leq(0, 1));
  CHECK_THROWS_WITH_AS(FinitePoset::from_pairs({"a", "b"}, {{0, 1}, {1, 0}}),
                       doctest::Contains("antisymmetry"), DomainError);
  CHECK_THROWS_WITH_AS(FinitePoset::from_pairs({"a", "b", "c"}, {{0, 1}, {1, 2}}),
                       doctest::Contains("transitivity"), DomainError);
  CHECK_THROWS_AS(FinitePoset::from_pairs({"a", "a"}, {}), DomainError);
}

TEST_CASE("standard finite posets: sizes") {
  CHECK(fin_partial({0, 1}, {0, 1}).size() == 9);
  CHECK(fin_inj({0, 1}, {0, 1, 2, 3}).size() == 21);
  CHECK(fin_partial({0}, {0, 1}).size() == 3);
}

TEST_CASE("is_compatible examples") {
  LazyPoset cohen = standard_lazy_poset(StandardKind::Cohen, {});
  auto p01 = parse_partial_map("{0:1}");
  auto p10 = parse_partial_map("{1:0}");
  auto p00 = parse_partial_map("{0:0}");
  CHECK(cohen.compatible(p01, p10));
  CHECK_FALSE(cohen.compatible(p01, p00));
  CHECK(cohen.compatible(p01, p01));
  auto top = top_with_atoms(2);
  CHECK(is_compatible(top, 0, 1));
  CHECK_FALSE(is_compatible(top, 1, 2));
  for (std::size_t i = 0; i < top.size(); ++i) CHECK(is_compatible(top, i, i));
}

TEST_CASE("is_dense examples") {
  auto anti = antichain_poset(2);
  CHECK(is_dense(anti, set_of(anti, {"b", "c"})));
  CHECK_FALSE(is_dense(anti, set_of(anti, {"b"})));
  auto fp = fin_partial({0}, {0, 1});
  CHECK(is_dense(fp, set_of(fp, {"{0:0}", "{0:1}"})));
  CHECK_FALSE(is_dense(fp, set_of(fp, {"{}"})));
}

TEST_CASE("is_separative examples") {
  CHECK(is_separative(antichain_poset(2)));
  auto chain = chain_poset(2);
  auto v = separativity_violation(chain);
  REQUIRE(v);
  CHECK(chain.label(v->first) == "b");
  CHECK(chain.label(v->second) == "a");
  CHECK(is_separative(top_with_atoms(2)));
}

TEST_CASE("separative_quotient examples") {
  auto q = separative_quotient(chain_poset(2));
  CHECK(q.poset.size() == 1);
  CHECK(q.projection == std::vector<std::size_t>{0, 0});
  auto top = top_with_atoms(2);
  auto tq = separative_quotient(top);
  CHECK(tq.poset.size() == 3);
  CHECK(canonical_form(tq.poset) == canonical_form(top));
  auto fp = fin_partial({0}, {0, 1});
  auto fq = separative_quotient(fp);
  CHECK(fq.poset.size() == 3);
  CHECK(canonical_form(fq.poset) == canonical_form(fp));
}

TEST_CASE("has_splitting on finite posets") {
  CHECK_FALSE(has_splitting(chain_poset(1)));
  CHECK_FALSE(has_splitting(chain_poset(2)));
  CHECK_FALSE(has_splitting(fin_partial({0, 1}, {0, 1})));
}

TEST_CASE("posets up to isomorphism: known counts") {
  const std::size_t counts[] = {1, 1, 2, 5, 16, 63, 318};
  for (std::size_t n = 0; n <= 6; ++n) CHECK(posets_up_to_iso(n).size() == counts[n]);
}

TEST_CASE("separative quotient is separative and respects the order (all posets <= 5)") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : posets_up_to_iso(n)) {
      auto q = separative_quotient(p);
      CHECK(is_separative(q.poset));
      CHECK(oracle::Order::of(q.poset).separative());
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (p.leq(a, b)) CHECK(q.poset.leq(q.projection[a], q.projection[b]));
          CHECK(p.compatible(a, b) == q.poset.compatible(q.projection[a], q.projection[b]));
        }
    }
}

TEST_CASE("compatibility is symmetric and implied by the order") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : posets_up_to_iso(n)) {
      auto o = oracle::Order::of(p);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          CHECK(p.compatible(a, b) == p.compatible(b, a));
          CHECK(p.compatible(a, b) == o.compatible(a, b));
          if (p.leq(a, b)) CHECK(p.compatible(a, b));
        }
      CHECK(is_separative(p) == o.separative());
    }
}

TEST_CASE("automorphisms of posets") {
  auto fp = fin_partial({0}, {0, 1});
  auto swap = value_permutation(fp, {0, 1}, {1, 0});
  CHECK(fp.label(swap(fp.require("{0:1}"))) == "{0:0}");
  CHECK(swap(fp.require("{}")) == fp.require("{}"));
  CHECK(swap.compose(swap) == PosetAutomorphism::identity(fp));
  CHECK(swap.inverse() == swap);
  CHECK(value_permutation_group(fin_inj({0, 1}, {0, 1, 2, 3})).size() == 24);
  CHECK(value_permutation_group(fin_partial({0, 1}, {0, 1})).size() == 2);
  auto chain = chain_poset(2);
  CHECK_THROWS_AS(PosetAutomorphism(chain, {1, 0}), DomainError);
  CHECK(generate_group(fp, {swap}).size() == 2);
}

TEST_CASE("partial maps") {
  auto m = parse_partial_map("{1:0,0:1}");
  CHECK(to_string(m) == "{0:1,1:0}");
  CHECK(m.is_injective());
  CHECK(m.extends(parse_partial_map("{1:0}")));
  CHECK_FALSE(parse_partial_map("{0:0}").merge(parse_partial_map("{0:1}")).has_value());
  CHECK_THROWS_AS(parse_partial_map("{0:1,0:0}"), DomainError);
  CHECK_THROWS_AS(parse_partial_map("{0:}"), ParseError);
  CHECK(decode_partial_map(encode(m)) == m);
  CHECK(PartialMap{} < parse_partial_map("{5:5}"));
  CHECK(parse_partial_map("{0:1}") < parse_partial_map("{1:0}"));
}
