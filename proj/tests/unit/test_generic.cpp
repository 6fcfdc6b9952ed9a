#include <doctest.h>

#include <set>

#include "forcelab/error.hpp"
#include "forcelab/generic.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

LazyPoset cohen2() {
  StandardParams params;
  params.value_count = 2;
  return standard_lazy_poset(StandardKind::Cohen, params);
}

LazyPoset fin_inj_omega() { return standard_lazy_poset(StandardKind::FinInj, StandardParams{}); }

FinitePoset fin_partial(std::vector<std::uint64_t> dom, std::vector<std::uint64_t> ran) {
  StandardParams params;
  params.domain = NatSet::of(std::move(dom));
  params.range = NatSet::of(std::move(ran));
  return std::get<FinitePoset>(make_standard_poset(StandardKind::FinPartial, params));
}

std::vector<std::uint64_t> upto(std::uint64_t n) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(i);
  return v;
}

HFSet subset_code(const FinitePoset& p, std::initializer_list<const char*> labels) {
  std::vector<HFSet> out;
  for (const char* l : labels) out.push_back(p.encoding(p.require(l)));
  return HFSet::of(out);
}

}  // namespace

TEST_CASE("domain refiners on cohen") {
  auto c = cohen2();
  auto specs = standard_refiners(c, RefinerKind::Domains, {upto(3), {}});
  REQUIRE(specs.size() == 3);
  CHECK(specs[1].refine(PartialMap{}) == parse_partial_map("{1:0}"));
  CHECK(specs[1].refine(parse_partial_map("{1:1}")) == parse_partial_map("{1:1}"));
  CHECK(specs[0].contains(parse_partial_map("{0:1}")));
  CHECK_FALSE(specs[0].contains(parse_partial_map("{1:1}")));

  auto g = rs_generic(c, standard_refiners(c, RefinerKind::Domains, {upto(5), {}}), PartialMap{}, 5);
  CHECK(union_map(g) == parse_partial_map("{0:0,1:0,2:0,3:0,4:0}"));
}

TEST_CASE("range refiners on injective maps") {
  auto inj = fin_inj_omega();
  auto specs = standard_refiners(inj, RefinerKind::Ranges, {{5}, {}});
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].refine(PartialMap{}) == parse_partial_map("{0:5}"));
  CHECK(specs[0].refine(parse_partial_map("{0:3,1:4}")) == parse_partial_map("{0:3,1:4,2:5}"));
  CHECK(specs[0].refine(parse_partial_map("{7:5}")) == parse_partial_map("{7:5}"));

  auto dom = standard_refiners(inj, RefinerKind::Domains, {{2}, {}});
  CHECK(dom[0].refine(parse_partial_map("{0:0,1:1}")) == parse_partial_map("{0:0,1:1,2:2}"));
}

TEST_CASE("refiner errors") {
  StandardParams small;
  small.domain = NatSet::of({0});
  small.range = NatSet::of({0});
  auto tiny = standard_lazy_poset(StandardKind::FinInj, small);
  CHECK_THROWS_AS(standard_refiners(tiny, RefinerKind::Ranges, {{5}, {}}), DomainError);
  CHECK_THROWS_AS(standard_refiners(tiny, RefinerKind::Domains, {{1}, {}}), DomainError);

  StandardParams two;
  two.domain = NatSet::of({0, 1});
  two.range = NatSet::of({0});
  auto cramped = standard_lazy_poset(StandardKind::FinInj, two);
  auto d1 = standard_refiners(cramped, RefinerKind::Domains, {{1}, {}});
  CHECK_THROWS_WITH_AS(d1[0].refine(parse_partial_map("{0:0}")), doctest::Contains("one-to-one"),
                       DomainError);
  auto r0 = standard_refiners(tiny, RefinerKind::Ranges, {{0}, {}});
  CHECK(r0[0].refine(PartialMap{}) == parse_partial_map("{0:0}"));
}

TEST_CASE("totality of the empty set") {
  auto inj = fin_inj_omega();
  RefinerParams rp;
  rp.set = HFSet{};
  CHECK(standard_refiners(inj, RefinerKind::Totality, rp).empty());
  rp.set = hf_nat(3);
  CHECK(standard_refiners(inj, RefinerKind::Totality, rp).size() == 3);
}

TEST_CASE("empty spec list gives the principal filter") {
  auto c = cohen2();
  auto start = parse_partial_map("{0:1}");
  auto g = rs_generic(c, {}, start, 0);
  CHECK(g.chain().size() == 1);
  CHECK(g.contains(PartialMap{}));
  CHECK(g.contains(start));
  CHECK_FALSE(g.contains(parse_partial_map("{0:1,1:0}")));
  CHECK_FALSE(g.contains(parse_partial_map("{0:0}")));
}

TEST_CASE("rs_generic contract violations name the refiner") {
  auto c = cohen2();
  auto specs = standard_refiners(c, RefinerKind::Domains, {upto(2), {}});
  specs[1].refine = [](const PartialMap&) { return parse_partial_map("{0:1,1:1}"); };
  CHECK_THROWS_WITH_AS(rs_generic(c, specs, PartialMap{}, 2), doctest::Contains("refiner 1"),
                       DomainError);
  specs[1].refine = [](const PartialMap& p) { return p; };
  CHECK_THROWS_WITH_AS(rs_generic(c, specs, PartialMap{}, 2),
                       doctest::Contains("not in its dense set"), DomainError);
  specs[1].refine = [](const PartialMap&) { return parse_partial_map("{0:7,1:0}"); };
  CHECK_THROWS_AS(rs_generic(c, specs, PartialMap{}, 2), DomainError);

  auto ok = standard_refiners(c, RefinerKind::Domains, {upto(2), {}});
  CHECK_THROWS_WITH_AS(rs_generic(c, ok, PartialMap{}, 1), doctest::Contains("horizon"),
                       DomainError);
  CHECK_THROWS_AS(rs_generic(c, ok, parse_partial_map("{0:5}"), 2), DomainError);

  auto p = chain_poset(3);
  std::vector<DenseSpec<std::size_t>> fspecs{
      {"bad", [](const std::size_t&) { return true; }, [](const std::size_t&) { return std::size_t{2}; }}};
  CHECK_THROWS_WITH_AS(rs_generic(p, fspecs, 0, 1), doctest::Contains("refiner 0 ('bad')"),
                       DomainError);
  CHECK_THROWS_AS(rs_generic(p, {}, 9, 0), DomainError);
}

TEST_CASE("session stepping") {
  auto c = cohen2();
  GenericSession<LazyPoset> s(c, standard_refiners(c, RefinerKind::Domains, {upto(3), {}}),
                              PartialMap{}, 3);
  CHECK_FALSE(s.done());
  s.step();
  CHECK(s.steps_taken() == 1);
  CHECK(s.chain().back() == parse_partial_map("{0:0}"));
  auto g = s.finish();
  CHECK(g.chain().size() == 4);
  CHECK_THROWS_AS(s.step(), DomainError);
}

TEST_CASE("meets") {
  auto c = cohen2();
  auto specs = standard_refiners(c, RefinerKind::Domains, {upto(100), {}});
  auto g = rs_generic(c, specs, PartialMap{}, 100);
  for (const auto& d : specs) CHECK(g.meets(d));
  CHECK(g.meets(specs[50]));
  auto beyond = standard_refiners(c, RefinerKind::Domains, {{100}, {}});
  CHECK_FALSE(g.meets(beyond[0]));

  auto anti = antichain_poset(2);
  auto principal = rs_generic(anti, {}, anti.require("b"), 0);
  ConditionSet other(2);
  other.set(anti.require("c"));
  CHECK_FALSE(meets(principal, other));
  CHECK(meets(principal, anti.full_set()));
  CHECK(filter_members(principal, anti).count() == 1);
}

TEST_CASE("generic filters are upward closed and directed") {
  auto c = cohen2();
  auto g = rs_generic(c, standard_refiners(c, RefinerKind::Domains, {upto(4), {}}), PartialMap{}, 4);
  auto members = c.prefix(300);
  std::vector<PartialMap> in;
  for (const auto& m : members)
    if (g.contains(m)) in.push_back(m);
  CHECK(in.size() == 16);
  for (const auto& a : in)
    for (const auto& b : members)
      if (c.leq(a, b)) CHECK(g.contains(b));
  for (const auto& a : in)
    for (const auto& b : in) {
      auto w = g.common_lower_bound(a, b);
      REQUIRE(w);
      CHECK(c.leq(*w, a));
      CHECK(c.leq(*w, b));
    }
  for (std::size_t k = 0; k + 1 < g.chain().size(); ++k) {
    CHECK(c.leq(g.chain()[k + 1], g.chain()[k]));
    CHECK(g.chain()[k + 1].size() == k + 1);
  }
}

TEST_CASE("countability witness") {
  CHECK(countability_witness(HFSet{}, 0).empty());
  for (std::size_t n : {3u, 4u}) {
    auto level = v_level(n);
    HFSet s = HFSet::of(level);
    auto w = countability_witness(s, s.size());
    CHECK(w.size() == level.size());
    std::set<HFSet> keys;
    std::set<std::uint64_t> values;
    for (const auto& [x, v] : w) {
      CHECK(s.contains(x));
      keys.insert(x);
      values.insert(v);
    }
    CHECK(keys.size() == s.size());
    CHECK(values.size() == s.size());
    CHECK(countability_witness(s, s.size()) == w);
    CHECK(countability_witness(s, s.size() + 10) == w);
  }
  CHECK_THROWS_WITH_AS(countability_witness(hf_nat(4), 3), doctest::Contains("horizon"),
                       DomainError);
}

TEST_CASE("poset codes round-trip") {
  for (const auto& p : {antichain_poset(2), chain_poset(3), top_with_atoms(2), fin_partial({0}, {0, 1})}) {
    auto code = encode_poset(p);
    auto d = decode_poset(code);
    CHECK(d.poset.size() == p.size());
    CHECK(encode_poset(d.poset) == code);
    CHECK(std::is_sorted(d.conditions.begin(), d.conditions.end()));
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) {
        auto i = std::lower_bound(d.conditions.begin(), d.conditions.end(), p.encoding(a)) - d.conditions.begin();
        auto j = std::lower_bound(d.conditions.begin(), d.conditions.end(), p.encoding(b)) - d.conditions.begin();
        CHECK(d.poset.leq(i, j) == p.leq(a, b));
      }
  }
  CHECK_FALSE(try_decode_poset(hf_nat(2)).has_value());
  CHECK_THROWS_AS(decode_poset(hf_nat(3)), DomainError);
  auto missing_refl = HFSet::of({kuratowski_pair(HFSet{}, hf_nat(1))});
  CHECK_FALSE(try_decode_poset(missing_refl).has_value());
  CHECK_THROWS_WITH_AS(decode_poset(HFSet{}), doctest::Contains("no conditions"), DomainError);
}

TEST_CASE("finite models") {
  CHECK_THROWS_AS(FiniteModel(HFSet::of({hf_nat(1)})), DomainError);
  auto m = FiniteModel::closure_of({hf_nat(3)});
  CHECK(m.set() == hf_nat(4));
  auto anti = antichain_poset(2);
  auto code = encode_poset(anti);
  auto model = FiniteModel::closure_of({code});
  auto codes = model.poset_codes();
  CHECK(std::find(codes.begin(), codes.end(), code) != codes.end());
}

TEST_CASE("m_dense_family examples") {
  auto anti = antichain_poset(2);
  auto code = encode_poset(anti);
  auto bc = subset_code(anti, {"b", "c"});

  auto m1 = FiniteModel::closure_of({code, bc});
  auto fam = m_dense_family(m1, code);
  REQUIRE(fam.size() == 1);
  CHECK(fam[0].code == bc);
  CHECK(fam[0].members.count() == 2);

  // Subsets of P reachable only through the code itself are not dense.
  auto m2 = FiniteModel::closure_of({code});
  for (const auto& d : m_dense_family(m2, code)) CHECK(d.members.count() == 2);

  std::vector<HFSet> all{code, HFSet{}, subset_code(anti, {"b"}), subset_code(anti, {"c"}), bc};
  auto m3 = FiniteModel::closure_of(all);
  auto fam3 = m_dense_family(m3, code);
  REQUIRE(fam3.size() == 1);
  CHECK(fam3[0].code == bc);

  auto other = encode_poset(chain_poset(4));
  CHECK_THROWS_AS(m_dense_family(m1, other), DomainError);
}

TEST_CASE("m_dense_family matches a brute-force density check") {
  auto p = fin_partial({0}, {0, 1});
  auto code = encode_poset(p);
  std::vector<HFSet> elems{code};
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    std::vector<HFSet> s;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask >> i & 1) s.push_back(p.encoding(i));
    elems.push_back(HFSet::of(s));
  }
  auto m = FiniteModel::closure_of(elems);
  auto fam = m_dense_family(m, code);
  oracle::Order o = oracle::Order::of(p);
  std::size_t expected = 0;
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    bool dense = true;
    for (std::size_t q = 0; q < 3; ++q) {
      bool hit = false;
      for (std::size_t r = 0; r < 3; ++r)
        if ((mask >> r & 1) && o.leq[r][q]) hit = true;
      dense = dense && hit;
    }
    expected += dense;
  }
  CHECK(fam.size() == expected);
  CHECK(expected == 2);
}

TEST_CASE("m_generic examples") {
  auto anti = antichain_poset(2);
  auto code = encode_poset(anti);
  auto m = FiniteModel::closure_of({code, subset_code(anti, {"b", "c"})});
  auto r = m_generic(m, code);
  CHECK(r.report.all_met);
  REQUIRE(r.report.met.size() == 1);
  CHECK(r.report.members.count() == 1);
  CHECK(r.report.decoded.poset.label(r.filter.strongest()) ==
        hf_render(r.report.decoded.conditions[r.filter.strongest()]));
  CHECK(r.report.g_code == HFSet::of({r.report.decoded.conditions[r.filter.strongest()]}));
  // {b} is a singleton of a condition code, and singletons of codes always
  // sit inside reflexive Kuratowski pairs, so this G lies in M.
  CHECK(r.report.g_in_model == m.contains(r.report.g_code));
  CHECK(r.report.g_in_model);
  CHECK_FALSE(r.report.splitting);

  auto one = chain_poset(1);
  auto code1 = encode_poset(one);
  auto m1 = FiniteModel::closure_of({code1});
  auto r1 = m_generic(m1, code1);
  CHECK(r1.report.members.count() == 1);
  CHECK(r1.report.all_met);
  CHECK_FALSE(r1.report.splitting);

  auto fp = fin_partial({0}, {0, 1});
  auto fcode = encode_poset(fp);
  auto fm = FiniteModel::closure_of({fcode, subset_code(fp, {"{0:0}", "{0:1}"})});
  auto fr = m_generic(fm, fcode);
  CHECK(fr.report.all_met);
  REQUIRE(fr.report.union_map);
  CHECK(fr.report.union_map->defines(0));
  CHECK(fr.report.union_map->size() == 1);
  CHECK(m_generic(fm, fcode).report.g_code == fr.report.g_code);

  auto seeded = m_generic(fm, fcode, fp.encoding(fp.require("{0:1}")));
  CHECK(*seeded.report.union_map == parse_partial_map("{0:1}"));
  CHECK_THROWS_AS(m_generic(fm, fcode, hf_nat(9)), DomainError);
}

TEST_CASE("m_generic can produce G outside M") {
  auto fp = fin_partial({0, 1}, {0, 1});
  auto code = encode_poset(fp);
  std::vector<HFSet> subsets{code};
  std::vector<const char*> totals{"{0:0,1:0}", "{0:0,1:1}", "{0:1,1:0}", "{0:1,1:1}"};
  std::vector<HFSet> tot;
  for (auto t : totals) tot.push_back(fp.encoding(fp.require(t)));
  subsets.push_back(HFSet::of(tot));
  auto m = FiniteModel::closure_of(subsets);
  auto r = m_generic(m, code);
  CHECK(r.report.all_met);
  CHECK_FALSE(r.report.g_in_model);
  CHECK(r.report.union_map->size() == 2);
}
