"""Derivations: the Leibniz linear system and named derivation families."""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .algcore import (
    AlgebraTable,
    _bracket,
    adapted_basis,
    require_lie,
    require_nilindex,
)
from .errors import DimensionError, FieldMismatchError, PreconditionError
from .exactlin import Matrix, Subspace, Vector, kernel

log = logging.getLogger(__name__)

LinearMap = Matrix


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check over all ordered basis pairs.

    On failure ``pair`` is the first violating ``(i, j)`` and ``residual``
    the nonzero defect vector.  Truthy iff the identity holds.
    """

    ok: bool
    pair: tuple | None = None
    residual: Vector | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def pair_label(pair) -> str:
    """1-based ``[ei,ej]`` for a 0-based index pair."""
    if pair is None:
        return "-"
    return f"[e{pair[0] + 1},e{pair[1] + 1}]"


def _cached(a: AlgebraTable, key, build):
    store = a.__dict__.setdefault("_nilpo_cache", {})
    if key not in store:
        store[key] = build()
    return store[key]


def check_map(a: AlgebraTable, f: Matrix):
    if not isinstance(f, Matrix):
        raise TypeError("expected a Matrix")
    if f.field != a.field:
        raise FieldMismatchError(f"map over {f.field} on an algebra over {a.field}")
    if f.shape != (a.dim, a.dim):
        raise DimensionError(f"{f.rows}x{f.cols} map on a {a.dim}-dimensional algebra")


def _apply_to_product(a: AlgebraTable, cols: Sequence[Vector], i: int, j: int) -> list:
    out = [0] * a.dim
    for k, c in a.product(i, j):
        for t, v in enumerate(cols[k]):
            if v:
                out[t] += c * v
    return out


def _right(a: AlgebraTable, x: Sequence, j: int, out: list, sign=1):
    """``out += sign * [x, e_j]``."""
    for i, xi in enumerate(x):
        if xi:
            for k, c in a.product(i, j):
                out[k] += sign * xi * c


def _left(a: AlgebraTable, i: int, y: Sequence, out: list, sign=1):
    """``out += sign * [e_i, y]``."""
    for j, yj in enumerate(y):
        if yj:
            for k, c in a.product(i, j):
                out[k] += sign * yj * c


def leibniz_residual(a: AlgebraTable, d: Matrix, i: int, j: int) -> Vector:
    """``d[e_i,e_j] - [d e_i, e_j] - [e_i, d e_j]``."""
    cols = d.columns()
    out = _apply_to_product(a, cols, i, j)
    _right(a, cols[i], j, out, -1)
    _left(a, i, cols[j], out, -1)
    red = a.field.reduce
    return tuple(red(v) for v in out)


def is_derivation(a: AlgebraTable, d: Matrix) -> CheckResult:
    """Leibniz rule on every ordered basis pair."""
    check_map(a, d)
    cols = d.columns()
    red = a.field.reduce
    for i in range(a.dim):
        for j in range(a.dim):
            out = _apply_to_product(a, cols, i, j)
            _right(a, cols[i], j, out, -1)
            _left(a, i, cols[j], out, -1)
            if any(red(v) for v in out):
                return CheckResult(False, (i, j), tuple(red(v) for v in out), "Leibniz rule fails")
    return CheckResult(True)


@dataclass(frozen=True)
class DerivationBasis:
    """A basis of Der(a), also held as a subspace of the ``n^2`` entry space."""

    algebra: AlgebraTable
    basis: tuple
    as_subspace: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: Matrix) -> bool:
        return self.as_subspace.contains_vector(f.flatten())

    def combine(self, coeffs: Sequence) -> Matrix:
        a = self.algebra
        coeffs = a.field.vector(coeffs, self.dim)
        red = a.field.reduce
        flat = [0] * (a.dim * a.dim)
        for c, b in zip(coeffs, self.basis):
            if c:
                for t, v in enumerate(b.flatten()):
                    if v:
                        flat[t] += c * v
        return Matrix.from_flat(a.field, a.dim, [red(v) for v in flat])

    def evaluation_matrix(self, x: Sequence) -> Matrix:
        """Columns ``D_k(x)``; its column space is ``{D(x) : D in Der}``."""
        a = self.algebra
        x = a.vector(x)
        if not self.basis:
            return Matrix.zeros(a.field, a.dim, 0)
        return Matrix.from_columns(a.field, [b.apply(x) for b in self.basis], a.dim)

    def parametrized(self, prefix: str = "t") -> list[list[str]]:
        """Generic element ``sum t_s B_s`` as a matrix of symbolic entries."""
        a = self.algebra
        fmt = a.field.format_plain
        out = []
        for k in range(a.dim):
            row = []
            for i in range(a.dim):
                terms = []
                for s, b in enumerate(self.basis, 1):
                    c = b[k, i]
                    if not c:
                        continue
                    name = f"{prefix}{s}"
                    if c == 1:
                        terms.append(name)
                    elif not a.field.p and c == -1:
                        terms.append(f"-{name}")
                    else:
                        terms.append(f"{fmt(c)}*{name}")
                row.append(" + ".join(terms).replace("+ -", "- ") if terms else "0")
            out.append(row)
        return out

    def format_parametrized(self) -> str:
        cells = self.parametrized()
        if not cells:
            return "[]"
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def leibniz_system(a: AlgebraTable) -> Matrix:
    """Rows of the linear system whose kernel is Der(a) (nonzero rows only).

    Unknown ``k * n + i`` is the entry ``D[k][i]``, i.e. the ``e_k``
    coefficient of ``D(e_i)``.
    """
    n = a.dim
    anti = a.structure.anticommutative
    if anti:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        pairs = list(itertools.product(range(n), repeat=2))
    red = a.field.reduce
    rows = []
    for i, j in pairs:
        eqs = defaultdict(lambda: defaultdict(int))
        for k, c in a.product(i, j):
            for l in range(n):
                eqs[l][l * n + k] += c
        for m in range(n):
            for l, c in a.product(m, j):
                eqs[l][m * n + i] -= c
            for l, c in a.product(i, m):
                eqs[l][m * n + j] -= c
        for l in sorted(eqs):
            row = [0] * (n * n)
            for var, c in eqs[l].items():
                row[var] = red(c)
            if any(row):
                rows.append(row)
    return Matrix._raw(a.field, rows, n * n)


def derivation_space(a: AlgebraTable) -> DerivationBasis:
    """Der(a) as the kernel of the Leibniz system over all basis pairs."""

    def build():
        n = a.dim
        system = leibniz_system(a)
        space = kernel(system) if system.rows else Subspace.full(a.field, n * n)
        basis = tuple(Matrix.from_flat(a.field, n, v) for v in space.vectors())
        for d in basis:
            assert is_derivation(a, d), "kernel element of the Leibniz system is not a derivation"
        return DerivationBasis(a, basis, space)

    return _cached(a, "der", build)


def inner_derivation(a: AlgebraTable, x) -> Matrix:
    """``ad x``: the matrix of ``y -> [x, y]``."""
    require_lie(a, "inner_derivation")
    x = a.vector(x)
    cols = [_bracket(a, x, a.basis_vector(i)) for i in range(a.dim)]
    return Matrix.from_columns(a.field, cols, a.dim)


def inner_derivation_space(a: AlgebraTable) -> Subspace:
    require_lie(a, "inner_derivation_space")
    return Subspace.span(a.field, a.dim * a.dim,
                         [inner_derivation(a, a.basis_vector(i)).flatten() for i in range(a.dim)])


def _image_into(a: AlgebraTable, target: Subspace, sources: Sequence[Vector]) -> list[list]:
    """Linear rows on End entries expressing ``D(v) in target`` for each v."""
    n = a.dim
    ann = target.annihilator().data if target.dim < n else ()
    rows = []
    for v in sources:
        for w in ann:
            row = [0] * (n * n)
            for k, wk in enumerate(w):
                if wk:
                    for i, vi in enumerate(v):
                        if vi:
                            row[k * n + i] = a.field.reduce(row[k * n + i] + wk * vi)
            if any(row):
                rows.append(row)
    return rows


def central_derivation_space(a: AlgebraTable) -> Subspace:
    """Maps with image in Z(a) and ``a^2`` in the kernel, inside End as ``n^2`` vectors."""
    n = a.dim
    rep = a.series
    z = rep.center
    rows = _image_into(a, z, [a.basis_vector(i) for i in range(n)])
    zero = Subspace.zero(a.field, n)
    rows += _image_into(a, zero, rep.layer(2).vectors() if n else [])
    space = kernel(Matrix._raw(a.field, rows, n * n)) if rows else Subspace.full(a.field, n * n)
    for v in space.vectors():
        assert is_derivation(a, Matrix.from_flat(a.field, n, v)), "central map failed the Leibniz check"
    return space


def grading_derivation(a: AlgebraTable, lam) -> Matrix:
    """``lam`` on generators and ``2 lam`` on ``a^2`` for a 2-step algebra.

    Built in the adapted basis and returned in the table's own coordinates.
    """
    require_nilindex(a, "grading_derivation", exact=3)
    lam = a.field.coerce(lam)
    b, info = adapted_basis(a)
    m = info.generator_count
    diag = Matrix.diagonal(a.field, [lam if i < m else a.field.reduce(2 * lam) for i in range(a.dim)])
    d = diag if info.is_identity else info.from_adapted(diag)
    assert is_derivation(a, d)
    return d


def center_targeting_space(a: AlgebraTable, der: DerivationBasis | None = None) -> Subspace:
    """``{D in Der(a) : D(a^2) <= Z(a)}`` as a subspace of End."""
    der = der or derivation_space(a)
    n = a.dim
    rep = a.series
    sq = rep.layer(2).vectors() if n else []
    z = rep.center
    if not der.basis:
        return Subspace.zero(a.field, n * n)
    ann = z.annihilator().data if z.dim < n else ()
    # constraint on coefficients t: sum_s t_s (w . B_s v) = 0
    rows = []
    for v in sq:
        images = [b.apply(v) for b in der.basis]
        for w in ann:
            row = [a.field.reduce(sum(wk * img[k] for k, wk in enumerate(w) if wk)) for img in images]
            if any(row):
                rows.append(row)
    if not rows:
        return der.as_subspace
    coeffs = kernel(Matrix._raw(a.field, rows, der.dim))
    return Subspace.span(a.field, n * n, [der.combine(c).flatten() for c in coeffs.vectors()])


def maps_image_into(a: AlgebraTable, d: Matrix, source: Subspace, target: Subspace) -> bool:
    return all(target.contains_vector(d.apply(v)) for v in source.vectors())


def two_generated_derivation(a: AlgebraTable) -> Matrix | None:
    """Outer-style derivation of a two-generated nilpotent Lie algebra.

    In a basis with ``[e1, e2] = e3``, search ``x`` in ``n^{p-2}`` (RREF
    basis vectors, then pairwise sums) with ``[e1, x] != 0`` (map
    ``e2 -> x, e3 -> [e1, x]``) or ``[e2, x] != 0`` (map ``e1 -> -x,
    e3 -> [e2, x]``).  The result is in the table's own coordinates and lies
    in :func:`center_targeting_space`.
    """
    require_lie(a, "two_generated_derivation")
    p = require_nilindex(a, "two_generated_derivation", at_least=3)
    b, info = adapted_basis(a)
    if info.generator_count != 2:
        raise PreconditionError(f"two_generated_derivation needs 2 generators; {a.name} has {info.generator_count}")
    n = a.dim
    field = a.field
    g1, g2 = b.basis_vector(0), b.basis_vector(1)
    e3 = _bracket(b, g1, g2)
    cols = [g1, g2, e3] + [b.basis_vector(i) for i in range(3, n)]
    q = Matrix.from_columns(field, cols, n)
    c = b.transformed(q)
    layer = c.series.layer(p - 2)
    cands = list(layer.vectors())
    cands += [tuple(field.reduce(u + v) for u, v in zip(x, y)) for x, y in itertools.combinations(layer.vectors(), 2)]
    e1c, e2c = c.basis_vector(0), c.basis_vector(1)
    result = None
    for x in cands:
        y = _bracket(c, e1c, x)
        images = [(0,) * n for _ in range(n)]
        if any(y):
            images[1] = x
            images[2] = y
        else:
            y = _bracket(c, e2c, x)
            if not any(y):
                continue
            images[0] = tuple(field.reduce(-v) for v in x)
            images[2] = y
        delta = Matrix.from_columns(field, images, n)
        if is_derivation(c, delta):
            result = delta
            break
    if result is None:
        log.warning("two_generated_derivation found no candidate on %s; this should not happen", a.name)
        return None
    total = info.change_of_basis @ q
    d = total @ result @ total.inverse()
    assert is_derivation(a, d)
    assert maps_image_into(a, d, a.series.layer(2), a.series.center)
    return d


def commutator(f: Matrix, g: Matrix) -> Matrix:
    return f @ g - g @ f
