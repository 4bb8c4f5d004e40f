import random

import pytest
from hypothesis import given, strategies as st

from nilpo.autolocal import (
    EXP_OF_DERIVATION_SOLVE, THEOREM_CASES, AutMap, construct_2step_nabla, construct_pure_local_automorphism,
    construct_restriction_nabla, exp_nilpotent, is_automorphism, locaut_witness_at, nilpotency_index,
    scaling_auto, suitable_epsilon,
)
from nilpo.catalog import (
    chain, chain_aut_family, chain_automorphisms_by_search, heisenberg, heisenberg_nabla_witness,
    heisenberg_center_nabla, square_zero_sampler, witt, witt_outer_derivation,
)
from nilpo.deriv import derivation_space, inner_derivation
from nilpo.errors import DegenerateInChar2, ExpError, NoSuitableScalar, PreconditionError
from nilpo.exactlin import GF, QQ, Matrix, unit_vector

import oracles
from strategies import FIELDS, algebra_and_maps, catalog_algebras, two_step_algebras

GOOD = [f for f in FIELDS if f.p not in (2, 3)]


def check_aut_witness(a, nabla, x, phi):
    p = a.field.p
    assert oracles.is_automorphism(a, phi.data)
    assert oracles.apply(phi.data, list(x), p) == oracles.apply(nabla.data, list(x), p)


@given(algebra_and_maps(st.one_of(catalog_algebras(), two_step_algebras())))
def test_is_automorphism_agrees_with_oracle(am):
    a, f = am
    assert bool(is_automorphism(a, f)) == oracles.is_automorphism(a, f.data)


@given(st.one_of(catalog_algebras(), two_step_algebras()))
def test_exp_of_zero_is_identity(a):
    ident = Matrix.identity(a.field, a.dim)
    assert exp_nilpotent(a, Matrix.zeros(a.field, a.dim)).matrix == ident


@pytest.mark.parametrize("n", range(3, 9))
def test_exp_inner_on_witt(n):
    w = witt(n)
    for i in range(n):
        d = inner_derivation(w, unit_vector(n, i))
        phi = exp_nilpotent(w, d)
        assert oracles.is_automorphism(w, phi.matrix.data)
        # exp(-d) inverts exp(d)
        assert exp_nilpotent(w, d.scale(-1)).matrix == phi.inverse


def test_exp_requires_derivation_and_nilpotency():
    h = heisenberg(1)
    with pytest.raises(ExpError):
        exp_nilpotent(h, Matrix.diagonal(QQ, [1, 0, 0]))
    with pytest.raises(ExpError):
        exp_nilpotent(h, Matrix.diagonal(QQ, [1, 1, 2]))


def test_exp_factorial_not_invertible_in_char_2():
    w = witt(5, GF(2))
    d = inner_derivation(w, unit_vector(5, 1))
    assert nilpotency_index(d) == 3
    with pytest.raises(ExpError, match="2! is not invertible"):
        exp_nilpotent(w, d)


def test_exp_defined_when_square_vanishes_in_char_2():
    # [DERIVED] over GF(2), [e1,e3] = 2e4 = 0 so ad_{e1}^2 = 0 on witt(4) and exp = Id + ad
    w = witt(4, GF(2))
    d = inner_derivation(w, unit_vector(4, 0))
    assert nilpotency_index(d) == 2
    assert exp_nilpotent(w, d).matrix == Matrix.identity(GF(2), 4) + d


@given(st.one_of(catalog_algebras(), two_step_algebras()), st.integers(0, 2 ** 32))
def test_exp_of_square_zero_derivations(a, seed):
    d = square_zero_sampler(a, random.Random(seed))
    assert (d @ d).is_zero()
    phi = exp_nilpotent(a, d)
    assert phi.matrix == Matrix.identity(a.field, a.dim) + d
    assert oracles.is_automorphism(a, phi.matrix.data)


@given(two_step_algebras(fields=GOOD), st.integers(1, 6), st.integers(1, 6))
def test_scaling_composes(a, s, t):
    if not a.field.reduce(s) or not a.field.reduce(t):
        return
    ps, pt, pst = scaling_auto(a, s), scaling_auto(a, t), scaling_auto(a, s * t)
    assert ps.compose(pt).matrix == pst.matrix
    assert oracles.is_automorphism(a, pst.matrix.data)


def test_suitable_epsilon():
    assert suitable_epsilon(QQ) == 2
    assert suitable_epsilon(GF(5)) == 2
    with pytest.raises(NoSuitableScalar):
        suitable_epsilon(GF(3))
    with pytest.raises(NoSuitableScalar):
        suitable_epsilon(GF(2))
    with pytest.raises(PreconditionError):
        suitable_epsilon(QQ, -1)


def test_gf3_construction_reports_no_scalar():
    with pytest.raises(NoSuitableScalar):
        construct_2step_nabla(heisenberg(1, GF(3)))


@given(two_step_algebras(fields=GOOD), st.integers(0, 2 ** 32))
def test_2step_nabla_on_random_algebras(a, seed):
    cert = construct_2step_nabla(a, samples=20, seed=seed)
    assert cert.verify()
    assert not cert.unresolved
    assert not oracles.is_automorphism(cert.algebra, cert.nabla.data)
    for w in cert.sampled_witnesses:
        check_aut_witness(cert.algebra, cert.nabla, w.point, w.witness.matrix)


def test_heisenberg_center_nabla():
    # [PAPER] nabla(e_0) = 2 e_0, identity elsewhere
    h = heisenberg(2)
    nabla = heisenberg_center_nabla(h)
    assert not is_automorphism(h, nabla)
    for x in [(1, 0, 0, 0, 5), (0, 0, 0, 0, 1), (0, 2, 1, 0, 3)]:
        phi = heisenberg_nabla_witness(h, nabla, x)
        check_aut_witness(h, nabla, x, phi)
    # exp(N) is unipotent, so it cannot scale the central e_0; only the generator points resolve
    assert locaut_witness_at(h, nabla, (1, 0, 0, 0, 5)) is not None
    assert locaut_witness_at(h, nabla, (0, 0, 0, 0, 1)) is None


@pytest.mark.parametrize("n", range(4, 9))
def test_restriction_nabla_on_witt(n):
    w = witt(n)
    d = witt_outer_derivation(n) if n >= 5 else inner_derivation(w, unit_vector(n, 0))
    cert = construct_restriction_nabla(w, d, samples=30, seed=n)
    assert cert.verify()
    for wit in cert.sampled_witnesses:
        check_aut_witness(cert.algebra, cert.nabla, wit.point, wit.witness.matrix)


def test_theorem_cases_witness_through_cli_coordinates():
    h = heisenberg(1)
    cert = construct_pure_local_automorphism(h)
    nabla = cert.change_of_basis @ cert.nabla @ cert.change_of_basis.inverse()
    x = (1, 0, 1)
    phi = locaut_witness_at(h, nabla, x, family=THEOREM_CASES, cert=cert)
    check_aut_witness(h, nabla, x, phi.matrix)
    # [DERIVED] Id + (e_{-1} -> 3 e_0) at x = e_{-1} + e_0 for eps = 2
    assert phi.matrix == Matrix(QQ, [[1, 0, 0], [0, 1, 0], [3, 0, 1]])
    phi2 = locaut_witness_at(h, nabla, x, family=EXP_OF_DERIVATION_SOLVE)
    check_aut_witness(h, nabla, x, phi2.matrix)


def test_unknown_family():
    h = heisenberg(1)
    with pytest.raises(ValueError):
        locaut_witness_at(h, Matrix.identity(QQ, 3), (1, 0, 0), family="nope")


def test_automap_rejects_non_automorphism():
    with pytest.raises(ValueError):
        AutMap.of(heisenberg(1), Matrix.diagonal(QQ, [1, 1, 1]).scale(2))


@pytest.mark.parametrize("n,p", [(3, 3), (4, 3), (3, 5), (4, 5), (5, 3)])
def test_chain_automorphisms_match_family(n, p):
    # [DERIVED] exhaustive search over images of e_1 against the two-parameter family
    assert chain_automorphisms_by_search(n, p) == chain_aut_family(n, p)
