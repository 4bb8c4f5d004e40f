from fractions import Fraction

import pytest

from nilpo.catalog import (
    CATALOG, _rational_root, build, catalog_names, chain, chain_aut, chain_probe_match, get_entry,
    heisenberg, verify_example, witt,
)
from nilpo.autolocal import is_automorphism
from nilpo.errors import DegenerateInChar2
from nilpo.exactlin import GF, QQ

import oracles


@pytest.mark.parametrize("name,n,field", [
    ("heisenberg", 1, None), ("heisenberg", 2, GF(5)), ("heisenberg", 1, GF(2)), ("heisenberg", 1, GF(3)),
    ("s_z2", None, None), ("witt", 3, None), ("witt", 4, None), ("witt", 7, None),
    ("chain", 4, None), ("chain", 5, GF(3)), ("c6", None, None),
])
def test_verify_example_passes(name, n, field):
    rep = verify_example(name, n, field, seed=0)
    assert rep.passed, rep.format_text()
    assert rep.to_dict()["passed"] is True


def test_catalog_names_and_unknown():
    assert catalog_names() == list(CATALOG)
    with pytest.raises(KeyError, match="heisenberg"):
        get_entry("nope")


def test_builders_are_lie_where_expected():
    for name in ("heisenberg", "s_z2", "witt"):
        assert build(name).is_lie
    assert not build("chain").is_lie
    assert not build("c6").is_lie


@pytest.mark.parametrize("n", range(3, 7))
def test_chain_family_members_are_automorphisms(n):
    a = chain(n)
    for al, be in [(1, 0), (2, 5), (Fraction(-1, 3), 1)]:
        assert oracles.is_automorphism(a, chain_aut(n, al, be).data)


def test_rational_root():
    assert _rational_root(Fraction(16, 81), 4) == Fraction(2, 3)
    assert _rational_root(Fraction(-8), 3) == -2
    assert _rational_root(Fraction(2), 2) is None
    assert _rational_root(Fraction(-4), 2) is None


def test_chain_probe_replay():
    # consistent with a family member alpha = 2
    assert chain_probe_match(4, 2, 0, {2: 4, 3: 16, 4: 256})
    # xi_4 inconsistent with any alpha
    assert not chain_probe_match(4, 2, 0, {2: 4, 3: 16, 4: 255})
    assert chain_probe_match(4, 2, 0, {2: 4, 3: 1, 4: 1}, GF(5))
