"""Python bindings for the forcelab C++ library."""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    DomainError,
    ForcelabError,
    ParseError,
    countability_witness,
    def_by_depth,
    def_exact,
    hf_canonical,
    hf_code,
    hf_from_code,
    hf_rank,
    is_dense,
    is_separative,
    l_hierarchy,
    satisfies,
    transitive_closure,
    v_level,
)


def poset(spec):
    return _json.loads(_core.poset_json(spec))


def separative_quotient(spec):
    return _json.loads(_core.quotient_json(spec))


def ro_algebra(spec):
    return _json.loads(_core.ro_algebra_json(spec))


def bool_value(poset, formula, names, group="none"):
    return _json.loads(_core.bool_value_json(poset, formula, names, group))


def homogeneity(poset):
    return _json.loads(_core.homogeneity_json(poset))


def rs_generic(poset, dense, horizon=None):
    return _json.loads(_core.rs_generic_json(poset, list(dense), horizon))


def m_generic(poset, subsets):
    return _json.loads(_core.m_generic_json(poset, [list(s) for s in subsets]))


__all__ = [
    "BudgetExceeded", "DomainError", "ForcelabError", "ParseError",
    "bool_value", "countability_witness", "def_by_depth", "def_exact",
    "hf_canonical", "hf_code", "hf_from_code", "hf_rank", "homogeneity",
    "is_dense", "is_separative", "l_hierarchy", "m_generic", "poset",
    "ro_algebra", "rs_generic", "satisfies", "separative_quotient",
    "transitive_closure", "v_level",
]
