#include <doctest.h>

#include <set>

#include "forcelab/error.hpp"
#include "forcelab/generic.hpp"
#include "forcelab/lazy_poset.hpp"

using namespace forcelab;

namespace {

LazyPoset cohen2() { return standard_lazy_poset(StandardKind::Cohen, {}); }

LazyPoset fin_inj_omega() {
  StandardParams p;
  return standard_lazy_poset(StandardKind::FinInj, p);
}

}  // namespace

TEST_CASE("cohen order is reverse inclusion") {
  auto c = cohen2();
  CHECK(c.leq(parse_partial_map("{0:1}"), PartialMap{}));
  CHECK_FALSE(c.leq(PartialMap{}, parse_partial_map("{0:1}")));
  CHECK_FALSE(c.is_condition(parse_partial_map("{0:2}")));
  CHECK_THROWS_AS(c.require_condition(parse_partial_map("{0:2}")), DomainError);
  StandardParams bad;
  bad.value_count = 0;
  CHECK_THROWS_AS(standard_lazy_poset(StandardKind::Cohen, bad), DomainError);
}

TEST_CASE("enumeration is deterministic and duplicate-free") {
  for (auto poset : {cohen2(), fin_inj_omega()}) {
    auto a = poset.prefix(300);
    auto b = poset.prefix(300);
    CHECK(a == b);
    CHECK(std::set<PartialMap>(a.begin(), a.end()).size() == a.size());
    CHECK(a.front() == PartialMap{});
    for (const auto& p : a) CHECK(poset.is_condition(p));
  }
}

TEST_CASE("finite instances enumerate completely") {
  StandardParams p;
  p.domain = NatSet::of({0, 1});
  p.range = NatSet::of({0, 1, 2, 3});
  auto lazy = standard_lazy_poset(StandardKind::FinInj, p);
  CHECK(lazy.prefix(1000).size() == 21);
  CHECK(lazy.materialize().size() == 21);
}

TEST_CASE("order is a partial order on enumerated prefixes") {
  auto c = cohen2();
  auto pre = c.prefix(60);
  for (const auto& a : pre) {
    CHECK(c.leq(a, a));
    for (const auto& b : pre) {
      if (c.leq(a, b) && c.leq(b, a)) CHECK(a == b);
      if (c.leq(a, b)) CHECK(c.compatible(a, b));
      CHECK(c.compatible(a, b) == c.compatible(b, a));
      for (const auto& d : pre)
        if (c.leq(a, b) && c.leq(b, d)) CHECK(c.leq(a, d));
    }
  }
}

TEST_CASE("has_splitting is three-valued on lazy posets") {
  CHECK(has_splitting(cohen2(), 100) == Tri::True);
  StandardParams one;
  one.value_count = 1;
  CHECK(has_splitting(standard_lazy_poset(StandardKind::Cohen, one), 20) == Tri::Undecided);
  StandardParams fin;
  fin.domain = NatSet::of({0});
  fin.range = NatSet::of({0, 1});
  CHECK(has_splitting(standard_lazy_poset(StandardKind::FinPartial, fin), 10) == Tri::False);
  CHECK(to_string(Tri::Undecided) == "undecided");
}

TEST_CASE("shipped refiners honour their contract on a 200-condition prefix") {
  struct Case {
    LazyPoset poset;
    RefinerKind kind;
    RefinerParams params;
  };
  StandardParams wp;
  wp.witness_set = HFSet::of(v_level(3));
  auto witness = standard_lazy_poset(StandardKind::CountabilityWitness, wp);
  RefinerParams dom{{0, 1, 2, 3, 7}, {}};
  RefinerParams ran{{0, 1, 5}, {}};
  RefinerParams tot{{}, HFSet::of(v_level(3))};
  std::vector<Case> cases = {
      {cohen2(), RefinerKind::Domains, dom},
      {fin_inj_omega(), RefinerKind::Domains, dom},
      {fin_inj_omega(), RefinerKind::Ranges, ran},
      {witness, RefinerKind::Totality, tot},
      {witness, RefinerKind::Ranges, ran},
  };
  for (auto& c : cases) {
    auto specs = standard_refiners(c.poset, c.kind, c.params);
    for (const auto& p : c.poset.prefix(200))
      for (const auto& d : specs) {
        if (c.poset.domain().is_finite() && p.size() == c.poset.domain().values().size() &&
            !d.contains(p)) {
          // A total condition has no room left; the refiner must say so.
          CHECK_THROWS_AS(d.refine(p), DomainError);
          continue;
        }
        auto q = d.refine(p);
        CHECK(c.poset.is_condition(q));
        CHECK(c.poset.leq(q, p));
        CHECK(d.contains(q));
      }
  }
}
