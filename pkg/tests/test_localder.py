import random

import pytest
from hypothesis import given, strategies as st

from nilpo.algcore import adapted_basis, lower_central_series
from nilpo.catalog import (
    chain, commutative_c6, heisenberg, heisenberg_center_delta, witt, witt_outer_derivation, z2_algebra_s,
)
from nilpo.deriv import derivation_space, inner_derivation, is_derivation
from nilpo.errors import DegenerateInChar2, NotNilpotentError, PreconditionError
from nilpo.exactlin import GF, QQ, Matrix, unit_vector
from nilpo.localder import (
    DEEP_CASE, GENERATOR_CASE, INCONCLUSIVE, LOCDER_EQUALS_DER, construct_2step_delta,
    construct_pure_local_derivation, construct_restriction_delta, falsify, find_center_targeting_derivation,
    locder_upper_bound, sample_points, structured_probes, witness_at,
)

import oracles
from strategies import FIELDS, algebra_and_maps, catalog_algebras, two_step_algebras

ODD = [f for f in FIELDS if f.p != 2]


def check_witness(a, delta, x, d):
    assert oracles.is_derivation(a, d.data)
    assert oracles.apply(d.data, list(x), a.field.p) == oracles.apply(delta.data, list(x), a.field.p)


@given(two_step_algebras(fields=ODD), st.integers(0, 2 ** 32))
def test_2step_certificate_on_random_algebras(a, seed):
    cert = construct_2step_delta(a, samples=30, seed=seed)
    b = cert.algebra
    assert cert.verify()
    assert not oracles.is_derivation(b, cert.delta.data)
    for w in cert.sampled_witnesses:
        check_witness(b, cert.delta, w.point, w.witness)


def test_2step_rejects_char_2():
    with pytest.raises(DegenerateInChar2):
        construct_2step_delta(heisenberg(1, GF(2)))


def test_2step_rejects_wrong_nilindex():
    with pytest.raises(PreconditionError):
        construct_2step_delta(witt(5))


def test_theorem_witness_cases():
    cert = construct_2step_delta(heisenberg(1))
    assert cert.theorem_witness((1, 0, 3)).construction == GENERATOR_CASE
    assert cert.theorem_witness((0, 0, 3)).construction == DEEP_CASE


def test_heisenberg_center_delta_is_local_not_derivation():
    # [PAPER] Delta(e_0) = e_0 and zero elsewhere is a pure local derivation of h_n
    for n in (1, 2):
        h = heisenberg(n)
        delta = heisenberg_center_delta(h)
        der = derivation_space(h)
        assert not is_derivation(h, delta)
        for x in sample_points(h, 100, 1) + structured_probes(h):
            d = witness_at(h, der, delta, x)
            assert d is not None
            check_witness(h, delta, x, d)


@pytest.mark.parametrize("n", range(4, 9))
def test_restriction_route_and_certificate(n):
    w = witt(n)
    d, route = find_center_targeting_derivation(w)
    assert route == ("inner-nilindex-4" if n == 4 else "two-generated")
    if n >= 5:
        assert d == witt_outer_derivation(n)
    cert = construct_restriction_delta(w, d, samples=50, seed=n, tag=route)
    assert cert.verify()
    for wit in cert.sampled_witnesses:
        check_witness(cert.algebra, cert.delta, wit.point, wit.witness)


def test_restriction_preconditions():
    w = witt(5)
    with pytest.raises(PreconditionError):
        construct_restriction_delta(w, Matrix.identity(QQ, 5))
    with pytest.raises(PreconditionError):
        construct_restriction_delta(w, Matrix.zeros(QQ, 5))
    # ad e1 sends n^2 outside the center
    with pytest.raises(PreconditionError):
        construct_restriction_delta(w, inner_derivation(w, unit_vector(5, 0)))


def test_dispatch_by_nilindex():
    assert construct_pure_local_derivation(heisenberg(2)).kind == "2step"
    assert construct_pure_local_derivation(witt(6)).kind == "restriction"


@given(algebra_and_maps(st.one_of(catalog_algebras(), two_step_algebras())), st.data())
def test_witness_at_agrees_with_feasibility(am, data):
    a, delta = am
    x = [data.draw(st.integers(-2, 2)) for _ in range(a.dim)]
    der = derivation_space(a)
    d = witness_at(a, der, delta, x)
    # [DERIVED] feasibility: delta(x) in span{B(x) : B in basis of Der}, via the oracle rank
    images = [oracles.apply(b.data, x, a.field.p) for b in der.basis]
    feasible = oracles.in_span(images, oracles.apply(delta.data, x, a.field.p), a.field.p)
    assert (d is not None) == feasible
    if d is not None:
        check_witness(a, delta, a.vector(x), d)


def test_falsify_finds_counterexample():
    a = chain(4)
    der = derivation_space(a)
    f = Matrix.from_columns(QQ, [unit_vector(4, 1), (0,) * 4, (0,) * 4, (0,) * 4], 4)
    x = falsify(a, der, f, seed=0)
    assert x is not None
    assert witness_at(a, der, f, x) is None


def test_falsify_is_silent_on_local_derivation():
    h = heisenberg(1)
    assert falsify(h, derivation_space(h), heisenberg_center_delta(h), seed=1, budget=200) is None


def test_locder_upper_bound_verdicts():
    c6 = commutative_c6()
    der = derivation_space(c6)
    probes = [(1, 1, 1, 1, 0, 0), (0, 0, 0, 1, 1, 1)]
    assert locder_upper_bound(c6, der, probes).verdict == LOCDER_EQUALS_DER
    h = heisenberg(1)
    rep = locder_upper_bound(h, derivation_space(h), [])
    assert rep.verdict == INCONCLUSIVE
    assert rep.upper_bound.contains_vector(heisenberg_center_delta(h).flatten())


@given(st.one_of(catalog_algebras(), two_step_algebras()))
def test_upper_bound_contains_der(a):
    der = derivation_space(a)
    rep = locder_upper_bound(a, der, structured_probes(a))
    assert rep.upper_bound.contains(der.as_subspace)


def test_non_nilpotent_rejected():
    from nilpo.algcore import AlgebraTable
    sl2 = AlgebraTable.from_products("sl2", 3, QQ, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    with pytest.raises((NotNilpotentError, PreconditionError)):
        construct_pure_local_derivation(sl2)
