"""Algebras given by structure constants and their central-series data.

Basis indices are 0-based throughout the Python API; the text and JSON
formats use 1-based ``e1 .. en``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionError,
    FieldMismatchError,
    NotLieError,
    NotNilpotentError,
    PreconditionError,
)
from .exactlin import (
    QQ,
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    is_zero_vector,
    kernel,
    unit_vector,
)


@dataclass(frozen=True)
class StructureReport:
    anticommutative: bool
    jacobi: bool
    commutative: bool

    @property
    def lie(self) -> bool:
        return self.anticommutative and self.jacobi


class AlgebraTable:
    """An ``n``-dimensional algebra ``[e_i, e_j] = sum_k c_ij^k e_k``.

    ``products`` maps ``(i, j)`` to ``{k: c}``; zero coefficients are dropped
    and nothing is completed here (see :meth:`from_products`).  ``lie`` is the
    declared kind; the actual structural flags come from :attr:`structure`.
    """

    def __init__(self, name: str, dim: int, field: FieldSpec,
                 products: Mapping[tuple[int, int], Mapping[int, object]],
                 lie: bool = False, labels: Sequence[str] | None = None):
        if dim < 0:
            raise DimensionError("negative dimension")
        table = {}
        for (i, j), terms in products.items():
            for idx in (i, j):
                if not 0 <= idx < dim:
                    raise DimensionError(f"basis index {idx} outside [0, {dim})")
            clean = {}
            for k, c in dict(terms).items():
                if not 0 <= k < dim:
                    raise DimensionError(f"basis index {k} outside [0, {dim})")
                c = field.coerce(c)
                if c:
                    clean[k] = c
            if clean:
                table[(i, j)] = tuple(sorted(clean.items()))
        self.name = name
        self.dim = dim
        self.field = field
        self.products = dict(sorted(table.items()))
        self.lie = lie
        if labels is not None and len(labels) != dim:
            raise DimensionError("label count differs from dimension")
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))

    @classmethod
    def from_products(cls, name: str, dim: int, field: FieldSpec,
                      entries: Mapping[tuple[int, int], Mapping[int, object]],
                      complete: str = "skew", lie: bool = True,
                      labels: Sequence[str] | None = None) -> "AlgebraTable":
        """Build a table from one-sided products, completing ``[e_j, e_i]``.

        ``complete`` is ``"skew"`` (``[e_j,e_i] = -[e_i,e_j]``), ``"symmetric"``
        or ``"none"``.  An explicit product that contradicts the completion
        raises :class:`ValueError`.
        """
        given = {key: {k: field.coerce(c) for k, c in dict(t).items()} for key, t in entries.items()}
        full = {key: dict(t) for key, t in given.items()}
        if complete not in ("skew", "symmetric", "none"):
            raise ValueError(f"unknown completion {complete!r}")
        if complete != "none":
            sign = -1 if complete == "skew" else 1
            for (i, j), terms in given.items():
                mirrored = {k: field.reduce(sign * c) for k, c in terms.items()}
                mirrored = {k: c for k, c in mirrored.items() if c}
                if i == j:
                    if complete == "skew" and any(v for v in terms.values()):
                        raise ValueError(f"[e{i + 1},e{i + 1}] must vanish under skew completion")
                    continue
                if (j, i) in given:
                    theirs = {k: c for k, c in given[(j, i)].items() if c}
                    if theirs != mirrored:
                        raise ValueError(f"products [e{i + 1},e{j + 1}] and [e{j + 1},e{i + 1}] contradict the completion")
                else:
                    full[(j, i)] = mirrored
        return cls(name, dim, field, full, lie=lie, labels=labels)

    # basic access -----------------------------------------------------------

    def product(self, i: int, j: int) -> tuple:
        """Sparse ``[e_i, e_j]`` as a tuple of ``(k, c)``."""
        return self.products.get((i, j), ())

    def product_vector(self, i: int, j: int) -> Vector:
        v = [0] * self.dim
        for k, c in self.product(i, j):
            v[k] = c
        return tuple(v)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def vector(self, values) -> Vector:
        return self.field.vector(values, self.dim)

    def __eq__(self, other):
        if not isinstance(other, AlgebraTable):
            return NotImplemented
        return (self.name == other.name and self.dim == other.dim and self.field == other.field
                and self.lie == other.lie and self.products == other.products)

    __hash__ = None

    def __repr__(self):
        return f"AlgebraTable({self.name!r}, dim={self.dim}, field={self.field}, {len(self.products)} products)"

    def same_structure(self, other: "AlgebraTable") -> bool:
        """Equal constants, ignoring name and declared kind."""
        return self.dim == other.dim and self.field == other.field and self.products == other.products

    def renamed(self, name: str) -> "AlgebraTable":
        return AlgebraTable(name, self.dim, self.field, self.products, lie=self.lie, labels=self.labels)

    # structure --------------------------------------------------------------

    @cached_property
    def structure(self) -> StructureReport:
        return _compute_structure(self)

    @property
    def is_lie(self) -> bool:
        return self.structure.lie

    @cached_property
    def series(self) -> "SeriesReport":
        return _compute_series(self)

    def transformed(self, change: Matrix, name: str | None = None) -> "AlgebraTable":
        """The same algebra written in the basis given by the columns of ``change``."""
        if change.field != self.field:
            raise FieldMismatchError("change of basis over a different field")
        inv = change.inverse()
        if inv is None:
            raise ValueError("change of basis is singular")
        cols = change.columns()
        prods = {}
        for a in range(self.dim):
            for b in range(self.dim):
                v = _bracket(self, cols[a], cols[b])
                if any(v):
                    w = inv.apply(v)
                    prods[(a, b)] = {k: c for k, c in enumerate(w) if c}
        labels = None
        if change == Matrix.identity(self.field, self.dim):
            labels = self.labels
        else:
            perm = _as_permutation(change)
            if perm is not None:
                labels = [self.labels[perm[a]] for a in range(self.dim)]
        return AlgebraTable(name or self.name, self.dim, self.field, prods, lie=self.lie, labels=labels)


def _as_permutation(m: Matrix):
    perm = {}
    for a, col in enumerate(m.columns()):
        nz = [k for k, v in enumerate(col) if v]
        if len(nz) != 1 or col[nz[0]] != 1:
            return None
        perm[a] = nz[0]
    return perm


# ---------------------------------------------------------------------------
# brackets


def _bracket(a: AlgebraTable, x: Sequence, y: Sequence) -> Vector:
    out = [0] * a.dim
    for (i, j), terms in a.products.items():
        xi = x[i]
        if not xi:
            continue
        yj = y[j]
        if not yj:
            continue
        f = xi * yj
        for k, c in terms:
            out[k] += f * c
    red = a.field.reduce
    return tuple(red(v) for v in out)


def bracket(a: AlgebraTable, x, y) -> Vector:
    """Bilinear extension of the table to arbitrary vectors."""
    return _bracket(a, a.vector(x), a.vector(y))


def left_multiplication(a: AlgebraTable, x) -> Matrix:
    """Matrix of ``y -> [x, y]``."""
    x = a.vector(x)
    return Matrix.from_columns(a.field, [_bracket(a, x, a.basis_vector(i)) for i in range(a.dim)], a.dim)


def _jacobi_holds(a: AlgebraTable) -> bool:
    n = a.dim
    red = a.field.reduce
    for i, j, k in itertools.product(range(n), repeat=3):
        total = [0] * n
        for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
            for m, c in a.product(p, q):
                for t, d in a.product(m, r):
                    total[t] += c * d
        if any(red(v) for v in total):
            return False
    return True


def _compute_structure(a: AlgebraTable) -> StructureReport:
    anti = True
    comm = True
    red = a.field.reduce
    for i in range(a.dim):
        if a.product(i, i):
            anti = False
        for j in range(i + 1, a.dim):
            pij = dict(a.product(i, j))
            pji = dict(a.product(j, i))
            neg = {k: red(-c) for k, c in pji.items()}
            if pij != neg:
                anti = False
            if pij != pji:
                comm = False
    return StructureReport(anticommutative=anti, jacobi=_jacobi_holds(a), commutative=comm)


def check_structure(a: AlgebraTable) -> StructureReport:
    """Exhaustive anticommutativity / commutativity / Jacobi check (cached)."""
    return a.structure


# ---------------------------------------------------------------------------
# subspaces of the algebra


def full_space(a: AlgebraTable) -> Subspace:
    return Subspace.full(a.field, a.dim)


def product_subspace(a: AlgebraTable, u: Subspace, v: Subspace) -> Subspace:
    """Span of ``[u, v]`` (and ``[v, u]`` for non-anticommutative tables)."""
    for s in (u, v):
        if s.ambient_dim != a.dim:
            raise DimensionError("subspace ambient dimension differs from the algebra")
    both = not a.structure.anticommutative
    vecs = []
    for x in u.vectors():
        for y in v.vectors():
            vecs.append(_bracket(a, x, y))
            if both:
                vecs.append(_bracket(a, y, x))
    return Subspace.span(a.field, a.dim, vecs)


def inner_product_nonzero(a: AlgebraTable, x: Sequence, u: Subspace) -> bool:
    """True iff ``[x, u] != 0``."""
    x = a.vector(x)
    return any(any(_bracket(a, x, v)) for v in u.vectors())


def center(a: AlgebraTable) -> Subspace:
    """Two-sided annihilator ``{x : [x, y] = [y, x] = 0 for all y}``."""
    n = a.dim
    rows = []
    # coefficient of x_i in component k of [x, e_j] is c_ij^k; of [e_j, x] is c_ji^k
    for j in range(n):
        left = [[0] * n for _ in range(n)]
        right = [[0] * n for _ in range(n)]
        for i in range(n):
            for k, c in a.product(i, j):
                left[k][i] = c
            for k, c in a.product(j, i):
                right[k][i] = c
        rows.extend(left)
        rows.extend(right)
    if not rows:
        return Subspace.full(a.field, n)
    return kernel(Matrix(a.field, rows, n))


@dataclass(frozen=True)
class SeriesReport:
    """Lower central series ``n^1 >= n^2 >= ...`` ending at its stable term."""

    layers: tuple
    nilindex: int | None
    center: Subspace

    @property
    def nilpotent(self) -> bool:
        return self.nilindex is not None

    def layer(self, k: int) -> Subspace:
        """``n^k`` for ``k >= 1``; past the end it is the stable term."""
        if k < 1:
            raise ValueError("layers are numbered from 1")
        return self.layers[min(k, len(self.layers)) - 1]


def _compute_series(a: AlgebraTable) -> SeriesReport:
    full = full_space(a)
    layers = [full]
    while True:
        nxt = product_subspace(a, full, layers[-1])
        if nxt == layers[-1]:
            break
        layers.append(nxt)
        if nxt.is_zero():
            break
    nilindex = len(layers) if layers[-1].is_zero() else None
    return SeriesReport(tuple(layers), nilindex, center(a))


def lower_central_series(a: AlgebraTable) -> SeriesReport:
    return a.series


def nilindex(a: AlgebraTable) -> int | None:
    return a.series.nilindex


def generator_count(a: AlgebraTable) -> int:
    """``dim n - dim n^2``, the minimal number of generators."""
    return a.dim - (a.series.layer(2).dim if a.dim else 0)


# ---------------------------------------------------------------------------
# adapted basis


@dataclass(frozen=True)
class AdaptedBasis:
    """Filtration-adapted basis: generators first, deepest layer last.

    Column ``a`` of ``change_of_basis`` is the ``a``-th new basis vector in
    old coordinates.  ``layer_starts[k - 1]`` is the first position whose
    span (to the end) is ``n^k``.
    """

    change_of_basis: Matrix
    inverse: Matrix
    generator_count: int
    layer_starts: tuple

    def positions(self, k: int) -> range:
        """Positions spanning ``n^k``."""
        n = self.change_of_basis.rows
        if k - 1 >= len(self.layer_starts):
            return range(n, n)
        return range(self.layer_starts[k - 1], n)

    def to_adapted(self, f: Matrix) -> Matrix:
        """Rewrite a linear map given in old coordinates in adapted coordinates."""
        return self.inverse @ f @ self.change_of_basis

    def from_adapted(self, f: Matrix) -> Matrix:
        return self.change_of_basis @ f @ self.inverse

    def vector_to_adapted(self, v: Sequence) -> Vector:
        return self.inverse.apply(v)

    def vector_from_adapted(self, v: Sequence) -> Vector:
        return self.change_of_basis.apply(v)

    @property
    def is_identity(self) -> bool:
        return self.change_of_basis == Matrix.identity(self.change_of_basis.field, self.change_of_basis.rows)


def adapted_basis(a: AlgebraTable) -> tuple[AlgebraTable, AdaptedBasis]:
    """Rewrite a nilpotent algebra in a central-series-adapted basis.

    Built bottom-up from the RREF basis of the deepest nonzero layer, each
    layer extended by the RREF rows of the next one, so the result is
    canonical.
    """
    rep = a.series
    if not rep.nilpotent:
        raise NotNilpotentError(f"{a.name} is not nilpotent")
    p = rep.nilindex
    blocks = []
    current = Subspace.zero(a.field, a.dim)
    for k in range(p - 1, 0, -1):
        block = []
        for row in rep.layer(k).vectors():
            if not current.contains_vector(row):
                block.append(row)
                current = current + Subspace.span(a.field, a.dim, [row])
        blocks.append(block)
    blocks.reverse()
    order = [v for block in blocks for v in block]
    starts = []
    pos = 0
    for block in blocks:
        starts.append(pos)
        pos += len(block)
    change = Matrix.from_columns(a.field, order, a.dim) if order else Matrix.identity(a.field, 0)
    inv = change.inverse()
    assert inv is not None
    info = AdaptedBasis(change, inv, starts[1] if len(starts) > 1 else a.dim, tuple(starts))
    table = a if info.is_identity else a.transformed(change)
    return table, info


def restrict_map(f: Matrix, positions: Iterable[int]) -> Matrix:
    """Keep the columns at ``positions`` (images of those basis vectors), zero the rest."""
    keep = set(positions)
    for p in keep:
        if not 0 <= p < f.cols:
            raise DimensionError(f"position {p} outside [0, {f.cols})")
    return Matrix._raw(f.field, [tuple(v if j in keep else 0 for j, v in enumerate(r)) for r in f.data], f.cols)


def require_lie(a: AlgebraTable, what: str):
    if not a.is_lie:
        raise NotLieError(f"{what} needs a Lie algebra; {a.name} is not one")


def require_nilindex(a: AlgebraTable, what: str, exact: int | None = None, at_least: int | None = None):
    p = a.series.nilindex
    if p is None:
        raise NotNilpotentError(f"{what}: {a.name} is not nilpotent")
    if exact is not None and p != exact:
        raise PreconditionError(f"{what} needs nilindex {exact}; {a.name} has nilindex {p}")
    if at_least is not None and p < at_least:
        raise PreconditionError(f"{what} needs nilindex >= {at_least}; {a.name} has nilindex {p}")
    return p


def abelian(n: int, field: FieldSpec = QQ, name: str | None = None) -> AlgebraTable:
    return AlgebraTable(name or f"abelian{n}", n, field, {}, lie=True)
