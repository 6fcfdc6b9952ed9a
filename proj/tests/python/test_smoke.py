import pytest

import forcelab


def test_hf_roundtrip():
    assert forcelab.hf_code("{{},{{}}}") == "3"
    assert forcelab.hf_from_code("3") == "{{},{{}}}"
    assert forcelab.hf_rank("{{{}}}") == 2
    assert len(forcelab.v_level(4)) == 16
    with pytest.raises(forcelab.ParseError):
        forcelab.hf_canonical("{")


def test_logic():
    v2 = forcelab.v_level(2)
    assert forcelab.satisfies(v2, "(all y (not (in y x)))", {"x": "{}"})
    assert len(forcelab.def_exact(forcelab.v_level(3))) == 16
    assert [len(level) for level in forcelab.l_hierarchy(4)] == [0, 1, 2, 4, 16]
    with pytest.raises(forcelab.DomainError):
        forcelab.satisfies(v2, "(in x y)", {"x": "{}"})


def test_orders_and_algebras():
    p = forcelab.poset("top:2")
    assert p["elements"] == ["a", "b", "c"]
    assert forcelab.is_separative("top:2")
    assert not forcelab.is_separative("chain:2")
    assert len(forcelab.separative_quotient("chain:3")["elements"]) == 1
    assert forcelab.is_dense("top:2", ["b", "c"])
    assert forcelab.ro_algebra("top:2")["size"] == 4
    with pytest.raises(forcelab.BudgetExceeded):
        forcelab.poset("fin_partial:0..4:0..4")


def test_forcing():
    out = forcelab.bool_value("fin_partial:0:0,1", "(in z r)",
                              {"z": "check:{}", "r": '{"pairs":[["check:{}","{0:1}"]]}'})
    assert out["value"] == ["{0:1}"]
    assert forcelab.homogeneity("fin_inj:0,1:0..3")["weakly_homogeneous"]
    bad = forcelab.homogeneity("fin_partial:0,1:0,1")
    assert not bad["weakly_homogeneous"]


def test_generic():
    rs = forcelab.rs_generic("cohen:2", ["domains:0..4"])
    assert rs["union"] == "{0:0,1:0,2:0,3:0,4:0}"
    assert rs["meets_all"]
    w = forcelab.countability_witness("{{},{{}},{{{}}},{{},{{}}}}")
    assert sorted(n for _, n in w) == [0, 1, 2, 3]
    with pytest.raises(forcelab.DomainError):
        forcelab.countability_witness("{{},{{}}}", 1)
    totals = ["{0:0,1:0}", "{0:0,1:1}", "{0:1,1:0}", "{0:1,1:1}"]
    mg = forcelab.m_generic("fin_partial:0,1:0,1", [totals, totals + ["{}"]])
    assert mg["all_met"] and mg["dense_sets"] == 2
    assert mg["g_in_model"] is False
