#include <doctest.h>

#include <random>

#include "forcelab/error.hpp"
#include "forcelab/roalg.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

ConditionSet set_of(const FinitePoset& p, std::initializer_list<const char*> labels) {
  auto s = p.empty_set();
  for (auto l : labels) s.set(p.require(l));
  return s;
}

RegularOpenSet ro(const FinitePoset& p, std::initializer_list<const char*> labels) {
  return RegularOpenSet(set_of(p, labels));
}

}  // namespace

TEST_CASE("ro_closure examples") {
  auto p = top_with_atoms(2);
  CHECK(ro_closure(p, set_of(p, {"b"})) == ro(p, {"b"}));
  CHECK(ro_closure(p, set_of(p, {"b", "c"})) == ro(p, {"a", "b", "c"}));
  CHECK(ro_closure(p, p.empty_set()).is_zero());
}

TEST_CASE("ro_algebra examples") {
  auto top = ro_algebra(top_with_atoms(2));
  CHECK(top.size() == 4);
  CHECK(top.is_element(ro(top.poset(), {"b"})));
  CHECK(top.is_element(ro(top.poset(), {"c"})));
  CHECK(ro_algebra(antichain_poset(2)).size() == 4);
  CHECK(ro_algebra(chain_poset(1)).size() == 2);
  CHECK_THROWS_WITH_AS(ro_algebra(chain_poset(2)), doctest::Contains("separative"), DomainError);
  Limits tight;
  tight.max_algebra_size = 8;
  CHECK_THROWS_AS(ro_algebra(antichain_poset(4), tight), BudgetExceeded);
  tight = {};
  tight.max_poset_size = 2;
  CHECK_THROWS_AS(ro_algebra(antichain_poset(3), tight), BudgetExceeded);
}

TEST_CASE("dense_embedding examples") {
  auto a = ro_algebra(top_with_atoms(2));
  const auto& p = a.poset();
  CHECK(dense_embedding(a, p.require("b")) == ro(p, {"b"}));
  CHECK(dense_embedding(a, p.require("a")) == a.one());
  auto anti = ro_algebra(antichain_poset(2));
  CHECK(anti.meet(anti.embed(0), anti.embed(1)).is_zero());
  CHECK_THROWS_AS(dense_embedding(a, 7), DomainError);
}

TEST_CASE("common_refinement examples") {
  auto anti = ro_algebra(antichain_poset(2));
  Partition single{anti.embed(0), anti.embed(1)};
  auto r = common_refinement(anti, std::vector<Partition>{single});
  CHECK(std::set<RegularOpenSet>(r.begin(), r.end()) ==
        std::set<RegularOpenSet>(single.begin(), single.end()));

  auto four = ro_algebra(antichain_poset(4));
  const auto& p = four.poset();
  auto b12 = ro(p, {"b", "c"}), b34 = ro(p, {"d", "e"});
  auto b13 = ro(p, {"b", "d"}), b24 = ro(p, {"c", "e"});
  auto refined = common_refinement(four, std::vector<Partition>{{b12, b34}, {b13, b24}});
  auto atoms = four.atoms();
  CHECK(std::set<RegularOpenSet>(refined.begin(), refined.end()) ==
        std::set<RegularOpenSet>(atoms.begin(), atoms.end()));

  auto unit = common_refinement(four, std::vector<Partition>{});
  CHECK(unit == Partition{four.one()});
}

TEST_CASE("partition validation names the violated clause") {
  auto four = ro_algebra(antichain_poset(4));
  const auto& p = four.poset();
  CHECK_THROWS_WITH_AS(validate_partition(four, {ro(p, {"b", "c"}), ro(p, {"c", "d", "e"})}),
                       doctest::Contains("disjoint"), DomainError);
  CHECK_THROWS_WITH_AS(validate_partition(four, {ro(p, {"b", "c"})}), doctest::Contains("1"),
                       DomainError);
  CHECK_THROWS_WITH_AS(validate_partition(four, {four.zero(), four.one()}),
                       doctest::Contains("zero"), DomainError);
  auto top = ro_algebra(top_with_atoms(2));
  CHECK_THROWS_WITH_AS(validate_partition(top, {ro(top.poset(), {"a"})}),
                       doctest::Contains("not an algebra element"), DomainError);
  CHECK_THROWS_AS(common_refinement(four, std::vector<Partition>{{ro(p, {"b"})}}), DomainError);
}

TEST_CASE("distributivity_report") {
  auto four = ro_algebra(antichain_poset(4));
  const auto& p = four.poset();
  Partition a{ro(p, {"b", "c"}), ro(p, {"d", "e"})};
  auto single = distributivity_report(four, std::vector<Partition>{a});
  CHECK(single.refined);
  CHECK(single.refinement.size() == 2);
  Partition b{ro(p, {"b", "d"}), ro(p, {"c", "e"})};
  auto both = distributivity_report(four, std::vector<Partition>{a, b});
  CHECK(both.refined);
  CHECK(both.refinement.size() == 4);
  CHECK(both.input_sizes == std::vector<std::size_t>{2, 2});

  auto eight = ro_algebra(antichain_poset(8));
  std::mt19937 rng(5);
  std::vector<Partition> fam;
  for (int k = 0; k < 10; ++k) {
    std::vector<ConditionSet> cells(3, eight.poset().empty_set());
    for (std::size_t atom = 0; atom < 8; ++atom) cells[rng() % 3].set(atom);
    Partition part;
    for (auto& c : cells)
      if (c.any()) part.push_back(RegularOpenSet(c));
    fam.push_back(part);
  }
  auto ten = distributivity_report(eight, fam);
  CHECK(ten.refined);
  for (const auto& part : fam) CHECK(refines(eight, ten.refinement, part));
  CHECK_NOTHROW(validate_partition(eight, ten.refinement));
}

TEST_CASE("algebra against the brute-force oracle, all separative posets <= 6") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& p : posets_up_to_iso(n)) {
      if (!is_separative(p)) {
        CHECK_THROWS_AS(ro_algebra(p), DomainError);
        continue;
      }
      auto a = ro_algebra(p);
      auto o = oracle::Order::of(p);
      auto expected = o.regular_open_sets();
      REQUIRE(a.size() == expected.size());
      std::set<std::vector<bool>> mine;
      for (const auto& e : a.elements()) mine.insert(oracle::to_bools(e.members()));
      CHECK(mine == std::set<std::vector<bool>>(expected.begin(), expected.end()));
      CHECK(regular_open_sets_brute_force(p).size() == expected.size());
      for (const auto& e : a.elements()) {
        CHECK(a.complement(a.complement(e)) == e);
        CHECK(ro_closure(p, e.members()) == e);
      }
    }
}

TEST_CASE("ro_closure is idempotent, monotone and agrees with the oracle") {
  std::mt19937 rng(9);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : posets_up_to_iso(n)) {
      auto o = oracle::Order::of(p);
      for (int trial = 0; trial < 6; ++trial) {
        ConditionSet s(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (rng() % 2) s.set(i);
          if (rng() % 2) t.set(i);
        }
        auto cs = ro_closure(p, s);
        CHECK(ro_closure(p, cs.members()) == cs);
        CHECK(s.is_subset_of(cs.members()));
        CHECK(oracle::to_bools(cs.members()) == o.closure(oracle::to_bools(s)));
        auto u = s | t;
        CHECK(cs.members().is_subset_of(ro_closure(p, u).members()));
      }
    }
}

TEST_CASE("DOT and labels are deterministic") {
  auto a = ro_algebra(top_with_atoms(2));
  CHECK(to_dot(a) == to_dot(ro_algebra(top_with_atoms(2))));
  CHECK(to_dot(a).find("digraph") != std::string::npos);
  CHECK(element_label(a, a.zero()) == "{}");
}
