"""Hypothesis strategies for random algebras."""

from hypothesis import strategies as st

from nilpo.algcore import AlgebraTable
from nilpo.catalog import chain, commutative_c6, heisenberg, witt
from nilpo.exactlin import GF, QQ, Matrix

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]


def scalars(field, lo=-3, hi=3):
    if field.is_rational:
        return st.integers(lo, hi)
    return st.integers(0, field.p - 1)


@st.composite
def two_step_algebras(draw, fields=FIELDS, max_gen=4, max_top=3):
    """Random 2-step Lie algebras: skew brackets of generators landing in a central top.

    Jacobi holds automatically since every bracket is central.  Only algebras
    whose brackets are not all zero are returned.
    """
    field = draw(st.sampled_from(fields))
    m = draw(st.integers(2, max_gen))
    t = draw(st.integers(1, max_top))
    prods = {}
    for i in range(m):
        for j in range(i + 1, m):
            coeffs = [draw(scalars(field)) for _ in range(t)]
            prods[(i, j)] = {m + k: c for k, c in enumerate(coeffs) if field.reduce(c)}
    prods = {k: v for k, v in prods.items() if v}
    if not prods:
        prods[(0, 1)] = {m: 1}
    return AlgebraTable.from_products("rand2", m + t, field, prods)


def catalog_algebras():
    return st.sampled_from([heisenberg(1), heisenberg(2), witt(4), witt(5), witt(6), chain(4), chain(5),
                            commutative_c6(), heisenberg(1, GF(5)), witt(5, GF(7))])


@st.composite
def invertible_matrices(draw, field, n):
    """Upper triangular with nonzero diagonal times lower unitriangular."""
    nonzero = scalars(field, 1, 3).filter(lambda v: field.reduce(v) != 0)
    u = [[draw(nonzero) if i == j else (draw(scalars(field, -2, 2)) if j > i else 0) for j in range(n)]
         for i in range(n)]
    low = [[1 if i == j else (draw(scalars(field, -2, 2)) if j < i else 0) for j in range(n)] for i in range(n)]
    return Matrix(field, u) @ Matrix(field, low)


@st.composite
def algebra_and_maps(draw, algebras, count=1):
    a = draw(algebras)
    maps = [Matrix(a.field, [[draw(scalars(a.field)) for _ in range(a.dim)] for _ in range(a.dim)])
            for _ in range(count)]
    return (a, *maps)
