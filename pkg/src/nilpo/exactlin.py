"""Exact scalars over Q and GF(p), dense matrices, row reduction and subspaces.

Field elements are stored "raw" inside matrices and vectors: rationals as
``int`` or :class:`fractions.Fraction`, residues as ``int`` in ``[0, p)``.
The owning :class:`FieldSpec` travels with the container and supplies
normalisation and inversion.  :class:`Scalar` is the tagged public wrapper.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, FieldMismatchError, NilpoError

Vector = tuple


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_RESIDUE = re.compile(r"^\s*([+-]?\d+)\s+mod\s+(\d+)\s*$")


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p == 0``, otherwise the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ValueError(f"field modulus must be an integer, got {self.p!r}")
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"GF({self.p}) is not a field: {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip()
        if t in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"(?:F|GF)\(?(\d+)\)?", t)
        if not m:
            raise ValueError(f"unknown field {text!r} (expected Q or F<p>)")
        return cls(int(m.group(1)))

    # raw element handling -------------------------------------------------

    zero = 0
    one = 1

    def reduce(self, v):
        """Normalise a raw value produced by +, -, * on raw values."""
        if self.p:
            return v % self.p
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    def inv(self, v):
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(v, -1, self.p)
        return self.reduce(Fraction(1) / v)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def coerce(self, v):
        """Map an int, Fraction, numeric string or Scalar into this field."""
        if isinstance(v, Scalar):
            if v.field != self:
                raise FieldMismatchError(f"scalar over {v.field} used in {self}")
            return v.value
        if isinstance(v, bool):
            v = int(v)
        if isinstance(v, str):
            return self.parse_value(v)
        if isinstance(v, int):
            return v % self.p if self.p else v
        if isinstance(v, Fraction):
            if self.p:
                den = v.denominator % self.p
                if den == 0:
                    raise FieldMismatchError(f"{v} is not defined in {self}")
                return v.numerator * pow(den, -1, self.p) % self.p
            return self.reduce(v)
        raise TypeError(f"cannot interpret {v!r} as an element of {self}")

    def parse_value(self, text: str):
        m = _RESIDUE.match(text)
        if m:
            if not self.p or int(m.group(2)) != self.p:
                raise FieldMismatchError(f"{text!r} is not an element of {self}")
            return int(m.group(1)) % self.p
        m = _RATIONAL.match(text)
        if not m:
            raise ValueError(f"not a scalar literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return self.coerce(Fraction(num, den))

    def format(self, v) -> str:
        if self.p:
            return f"{v} mod {self.p}"
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def format_plain(self, v) -> str:
        """Like :meth:`format` but residues without the ``mod p`` suffix."""
        return str(v) if self.p else self.format(v)

    def vector(self, values: Iterable, length: int | None = None) -> Vector:
        out = tuple(self.coerce(v) for v in values)
        if length is not None and len(out) != length:
            raise DimensionError(f"expected a vector of length {length}, got {len(out)}")
        return out

    def elements(self):
        """All elements of a finite field, in increasing residue order."""
        if not self.p:
            raise NilpoError("Q is infinite")
        return range(self.p)


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; mixing fields raises."""

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> "Scalar":
        return cls(field, field.parse_value(text))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        return self.field.coerce(other)

    def _wrap(self, v):
        return Scalar(self.field, self.field.reduce(v))

    def __add__(self, other):
        return self._wrap(self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __truediv__(self, other):
        return self._wrap(self.value * self.field.inv(self._other(other)))

    def __rtruediv__(self, other):
        return self._wrap(self._other(other) * self.field.inv(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return Scalar(self.field, self.field.inv(self.value)) ** (-k)
        if self.field.p:
            return Scalar(self.field, pow(self.value, k, self.field.p))
        return self._wrap(self.value**k)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)


# ---------------------------------------------------------------------------
# vectors


def zero_vector(field: FieldSpec, n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def vec_add(field: FieldSpec, a: Sequence, b: Sequence) -> Vector:
    red = field.reduce
    return tuple(red(x + y) for x, y in zip(a, b))


def vec_sub(field: FieldSpec, a: Sequence, b: Sequence) -> Vector:
    red = field.reduce
    return tuple(red(x - y) for x, y in zip(a, b))


def vec_scale(field: FieldSpec, c, a: Sequence) -> Vector:
    red = field.reduce
    return tuple(red(c * x) for x in a)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def random_vector(field: FieldSpec, n: int, rng) -> Vector:
    """Small-coefficient random vector: {-2..2} over Q, uniform over GF(p)."""
    if field.p:
        return tuple(rng.randrange(field.p) for _ in range(n))
    return tuple(rng.randint(-2, 2) for _ in range(n))


def all_vectors(field: FieldSpec, n: int):
    """Every vector of GF(p)^n (lexicographic)."""
    return itertools.product(field.elements(), repeat=n)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over a single field.

    When used as a linear map on an algebra, column ``i`` is the image of the
    ``i``-th basis vector.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(field.coerce(v) for v in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged matrix rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def _raw(cls, field, data, cols):
        m = object.__new__(cls)
        m.field = field
        m.data = tuple(tuple(r) for r in data)
        m.rows = len(m.data)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(field, [(0,) * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls._raw(field, [unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def diagonal(cls, field: FieldSpec, entries: Sequence) -> "Matrix":
        n = len(entries)
        vals = [field.coerce(v) for v in entries]
        return cls._raw(field, [tuple(vals[i] if i == j else 0 for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [field.vector(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls._raw(field, [tuple(c[i] for c in columns) for i in range(rows)], len(columns))

    @classmethod
    def from_flat(cls, field: FieldSpec, n: int, flat: Sequence) -> "Matrix":
        """Inverse of :meth:`flatten` for an ``n x n`` matrix."""
        return cls._raw(field, [tuple(flat[k * n:(k + 1) * n]) for k in range(n)], n)

    def flatten(self) -> Vector:
        """Row-major entry vector; entry (k, i) sits at ``k * cols + i``."""
        return tuple(v for row in self.data for v in row)

    # access ----------------------------------------------------------------

    def __getitem__(self, idx):
        r, c = idx
        return self.data[r][c]

    def row(self, r: int) -> Vector:
        return self.data[r]

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(c) for c in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.data]

    def scalar(self, r: int, c: int) -> Scalar:
        return Scalar(self.field, self.data[r][c])

    # arithmetic ------------------------------------------------------------

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise FieldMismatchError(f"matrix over {other.field} combined with one over {self.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix sum")
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix difference")
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(a - b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(c * a) for a in r] for r in self.data], self.cols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} applied to {self.rows}x{self.cols} matrix")
        red = self.field.reduce
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(red(sum(row[j] * x for j, x in nz)) for row in self.data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise DimensionError("inner dimensions differ in matrix product")
            red = self.field.reduce
            ocols = other.columns()
            out = []
            for row in self.data:
                nz = [(j, x) for j, x in enumerate(row) if x]
                out.append([red(sum(x * col[j] for j, x in nz)) for col in ocols])
            return Matrix._raw(self.field, out, other.cols)
        return self.apply(other)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise DimensionError("only non-negative powers of square matrices")
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [self.column(c) for c in range(self.cols)], self.rows)

    T = property(transpose)

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "Matrix | None":
        """Inverse, or ``None`` if singular."""
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix._raw(self.field, [r + unit_vector(n, i) for i, r in enumerate(self.data)], 2 * n)
        red, rank, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or rank < n:
            return None
        return Matrix._raw(self.field, [r[n:] for r in red.data], n)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.cols:
            raise DimensionError("column count differs in vstack")
        return Matrix._raw(self.field, self.data + other.data, self.cols)

    # comparison / display ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_plain(v) for v in r) for r in self.data)
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: {body})"

    def pretty(self) -> str:
        cells = [[self.field.format_plain(v) for v in r] for r in self.data]
        if not cells:
            return "[]"
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(field: FieldSpec, rows: list[list], cols: int):
    """In-place Gauss-Jordan on ``rows`` (nonzero rows only); returns pivots."""
    red = field.reduce
    inv = field.inv
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            f = inv(piv)
            prow = [red(v * f) if v else 0 for v in prow]
            rows[r] = prow
        nz = [j for j in range(c, cols) if prow[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            for j in nz:
                row[j] = red(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    work = [list(r) for r in m.data if any(r)]
    pivots = _rref_rows(m.field, work, m.cols)
    rank = len(pivots)
    out = work[:rank] + [[0] * m.cols for _ in range(m.rows - rank)]
    return Matrix._raw(m.field, out, m.cols), rank, pivots


def kernel(m: Matrix) -> "Subspace":
    """The null space ``{v : m v = 0}``."""
    red, rank, pivots = rref(m)
    field = m.field
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [0] * m.cols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = field.reduce(-red.data[i][f])
        basis.append(tuple(v))
    for v in basis:
        assert is_zero_vector(m.apply(v)), "kernel vector fails m v = 0"
    return Subspace.span(field, m.cols, basis)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """A solution of ``a x = b`` with free variables set to zero, or ``None``."""
    field = a.field
    b = field.vector(b)
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {a.rows}")
    work = [list(r) + [bi] for r, bi in zip(a.data, b)]
    work = [r for r in work if any(r)]
    pivots = _rref_rows(field, work, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [0] * a.cols
    for i, p in enumerate(pivots):
        x[p] = work[i][a.cols]
    x = tuple(x)
    assert a.apply(x) == b, "solve produced a non-solution"
    return x


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of ``field^ambient_dim`` held as a canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Matrix, pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(field.vector(v, ambient_dim)) for v in vectors]
        rows = [r for r in rows if any(r)]
        pivots = _rref_rows(field, rows, ambient_dim)
        return cls(field, ambient_dim, Matrix._raw(field, rows[: len(pivots)], ambient_dim), pivots)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix._raw(field, [], ambient_dim), [])

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim), list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[Vector]:
        return list(self.basis.data)

    def is_zero(self) -> bool:
        return self.dim == 0

    def _same(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError(f"subspaces of F^{self.ambient_dim} and F^{other.ambient_dim}")
        if other.field != self.field:
            raise FieldMismatchError("subspaces over different fields")

    def reduce_vector(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        red = self.field.reduce
        w = list(v)
        for row, p in zip(self.basis.data, self.pivots):
            f = w[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        w[j] = red(w[j] - f * x)
        return tuple(w)

    def contains_vector(self, v: Sequence) -> bool:
        v = self.field.vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        return is_zero_vector(self.reduce_vector(v))

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the RREF basis, or ``None`` if ``v`` is outside."""
        v = self.field.vector(v)
        if not self.contains_vector(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        self._same(other)
        return all(self.contains_vector(v) for v in other.basis.data)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace.span(self.field, self.ambient_dim, list(self.basis.data) + list(other.basis.data))

    def annihilator(self) -> Matrix:
        """Rows spanning ``{a : a . v = 0 for v in self}``; their kernel is ``self``."""
        if self.dim == 0:
            return Matrix.identity(self.field, self.ambient_dim)
        ann = kernel(self.basis)
        return ann.basis

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same(other)
        constraints = self.annihilator().vstack(other.annihilator())
        if constraints.rows == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return kernel(constraints)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.basis.data == other.basis.data)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.data))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient_dim})"


def subspace_op(a: Subspace, b, op: str):
    """Dispatch one of ``contains_vector``, ``contains_subspace``, ``intersect``,
    ``sum`` or ``equal``.  For ``contains_vector`` ``b`` is a vector."""
    if op == "contains_vector":
        if len(b) != a.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        return a.contains_vector(b)
    a._same(b)
    if op == "contains_subspace":
        return a.contains(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "sum":
        return a + b
    if op == "equal":
        return a == b
    raise ValueError(f"unknown subspace operation {op!r}")
