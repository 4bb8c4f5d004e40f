import pytest
from hypothesis import given, strategies as st

from nilpo.algcore import (
    AlgebraTable, abelian, adapted_basis, bracket, center, check_structure, generator_count,
    left_multiplication, lower_central_series, nilindex, product_subspace,
)
from nilpo.catalog import chain, commutative_c6, heisenberg, witt, z2_algebra_s
from nilpo.errors import DimensionError, NotNilpotentError
from nilpo.exactlin import GF, QQ, Matrix, Subspace

import oracles
from strategies import catalog_algebras, invertible_matrices, two_step_algebras


def sl2():
    # [h,e] = 2e, [h,f] = -2f, [e,f] = h; basis h, e, f
    return AlgebraTable.from_products("sl2", 3, QQ, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


def test_bracket_bilinear_on_heisenberg():
    h = heisenberg(1)
    assert bracket(h, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert bracket(h, (0, 1, 0), (1, 0, 0)) == (0, 0, -1)
    assert bracket(h, (2, 1, 0), (1, 3, 0)) == (0, 0, 5)


def test_structure_flags():
    assert check_structure(heisenberg(2)).lie
    assert check_structure(witt(6)).lie
    c6 = check_structure(commutative_c6())
    assert not c6.anticommutative
    assert not check_structure(chain(4)).anticommutative


def test_jacobi_violation_detected():
    bad = AlgebraTable.from_products("bad", 3, QQ, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    assert not bad.structure.jacobi


def test_index_out_of_range():
    with pytest.raises(DimensionError):
        AlgebraTable("x", 2, QQ, {(0, 2): {0: 1}})


def test_skew_completion_conflict():
    with pytest.raises(ValueError):
        AlgebraTable.from_products("x", 3, QQ, {(0, 1): {2: 1}, (1, 0): {2: 1}})


@pytest.mark.parametrize("n", range(3, 11))
def test_witt_series_and_center(n):
    # [PAPER] layers span{e_{k+1}..e_n} for k >= 2 and Z = span{e_n}
    w = witt(n)
    rep = lower_central_series(w)
    assert rep.layer(1) == Subspace.full(QQ, n)
    for k in range(2, n):
        want = Subspace.span(QQ, n, [w.basis_vector(i) for i in range(k, n)])
        assert rep.layer(k) == want
    assert rep.nilindex == n
    assert center(w) == Subspace.span(QQ, n, [w.basis_vector(n - 1)])


def test_heisenberg_series():
    h = heisenberg(3)
    assert nilindex(h) == 3
    assert generator_count(h) == 6
    assert center(h) == Subspace.span(QQ, 7, [h.basis_vector(6)])


def test_z2_is_two_step():
    s = z2_algebra_s()
    assert s.is_lie
    assert nilindex(s) == 3
    assert generator_count(s) == 7


def test_not_nilpotent():
    a = sl2()
    assert a.is_lie
    assert nilindex(a) is None
    with pytest.raises(NotNilpotentError):
        adapted_basis(a)


def test_abelian():
    a = abelian(3)
    assert nilindex(a) == 2
    assert center(a).dim == 3


@given(two_step_algebras())
def test_random_two_step_is_lie_and_two_step(a):
    assert a.is_lie
    assert nilindex(a) == 3
    sq = lower_central_series(a).layer(2)
    assert center(a).contains(sq)


@given(catalog_algebras())
def test_center_is_exactly_the_annihilator(a):
    z = center(a)
    for v in z.vectors():
        for i in range(a.dim):
            assert not any(bracket(a, v, a.basis_vector(i)))
            assert not any(bracket(a, a.basis_vector(i), v))
    # [DERIVED] dimension from the oracle rank of the conditions [v, e_i] = [e_i, v] = 0
    c = oracles.structure_constants(a)
    n = a.dim
    rows = [[c[t][i][k] for t in range(n)] for i in range(n) for k in range(n)]
    rows += [[c[i][t][k] for t in range(n)] for i in range(n) for k in range(n)]
    assert z.dim == a.dim - oracles.rank(rows, a.dim, a.field.p)


@given(catalog_algebras(), st.data())
def test_change_of_basis_preserves_invariants(a, data):
    q = data.draw(invertible_matrices(a.field, a.dim))
    b = a.transformed(q)
    assert b.structure == a.structure
    assert nilindex(b) == nilindex(a)
    assert center(b).dim == center(a).dim
    back = b.transformed(q.inverse())
    assert back.same_structure(a)


@given(catalog_algebras())
def test_adapted_basis_layers(a):
    if nilindex(a) is None:
        return
    b, info = adapted_basis(a)
    rep = lower_central_series(b)
    for k in range(1, nilindex(a)):
        want = Subspace.span(b.field, b.dim, [b.basis_vector(i) for i in info.positions(k)])
        assert rep.layer(k) == want
    assert info.generator_count == generator_count(a)
    assert a.transformed(info.change_of_basis).same_structure(b)


def test_product_subspace():
    w = witt(5)
    full = Subspace.full(QQ, 5)
    assert product_subspace(w, full, full) == lower_central_series(w).layer(2)
