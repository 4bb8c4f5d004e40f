"""Pure local derivations: constructions, per-point witnesses and probe bounds.

Constructions work in the adapted basis of the input algebra.  Every
certificate stores that adapted table as ``algebra`` together with the
change of basis, and all maps inside it are written in adapted coordinates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algcore import (
    AlgebraTable,
    _bracket,
    adapted_basis,
    inner_product_nonzero,
    product_subspace,
    require_lie,
    require_nilindex,
    restrict_map,
)
from .deriv import (
    pair_label,
    DerivationBasis,
    center_targeting_space,
    derivation_space,
    inner_derivation,
    is_derivation,
    leibniz_residual,
    maps_image_into,
    two_generated_derivation,
)
from .errors import DegenerateInChar2, PreconditionError
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    all_vectors,
    is_zero_vector,
    kernel,
    random_vector,
    solve,
    unit_vector,
)

GENERATOR_CASE = "generator-case"
DEEP_CASE = "deep-case"
LINEAR_SOLVE = "linear-solve"


@dataclass(frozen=True)
class LocalWitness:
    """A derivation ``D_x`` with ``D_x(x) = Delta(x)``."""

    point: Vector
    witness: Matrix
    construction: str
    coefficients: Vector | None = None


# ---------------------------------------------------------------------------
# probes


def structured_probes(a: AlgebraTable, generators: int | None = None) -> list[Vector]:
    """Basis vectors, pairwise sums, the sum of the first ``m`` basis vectors,
    ``e_1 + e_i``, ``e_{n-1} + e_n`` and the sum of all basis vectors."""
    n = a.dim
    if generators is None:
        generators = n - a.series.layer(2).dim
    out = [unit_vector(n, i) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i] = v[j] = 1
        out.append(tuple(v))
    out.append(tuple(1 if i < generators else 0 for i in range(n)))
    out.append((1,) * n)
    return _dedupe(out)


def default_probes(a: AlgebraTable) -> list[Vector]:
    """Basis vectors, pairwise sums, sum of generators, sum of everything."""
    return structured_probes(a)


def _dedupe(vectors: Iterable[Vector]) -> list[Vector]:
    seen = set()
    out = []
    for v in vectors:
        if any(v) and v not in seen:
            seen.add(v)
            out.append(v)
    return out


def sample_points(a: AlgebraTable, count: int, seed) -> list[Vector]:
    rng = random.Random(seed)
    return [random_vector(a.field, a.dim, rng) for _ in range(count)]


def exhaustive_points(a: AlgebraTable) -> Iterable[Vector]:
    return (tuple(v) for v in all_vectors(a.field, a.dim))


# ---------------------------------------------------------------------------
# witnesses by linear solve


def witness_coefficients(der: DerivationBasis, delta: Matrix, x: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum c_k D_k(x) = delta(x)``, or ``None``."""
    a = der.algebra
    x = a.vector(x)
    target = delta.apply(x)
    if not der.basis:
        return () if is_zero_vector(target) else None
    return solve(der.evaluation_matrix(x), target)


def witness_at(a: AlgebraTable, der: DerivationBasis, delta: Matrix, x) -> Matrix | None:
    """A derivation agreeing with ``delta`` at ``x``, or ``None`` if none exists."""
    w = local_witness(a, der, delta, x)
    return None if w is None else w.witness


def local_witness(a: AlgebraTable, der: DerivationBasis, delta: Matrix, x) -> LocalWitness | None:
    x = a.vector(x)
    coeffs = witness_coefficients(der, delta, x)
    if coeffs is None:
        return None
    d = der.combine(coeffs) if der.basis else Matrix.zeros(a.field, a.dim)
    if not is_derivation(a, d) or d.apply(x) != delta.apply(x):
        raise AssertionError("linear-solve witness failed verification")
    return LocalWitness(x, d, LINEAR_SOLVE, coeffs)


def witness_is_valid(a: AlgebraTable, delta: Matrix, w: LocalWitness) -> bool:
    return bool(is_derivation(a, w.witness)) and w.witness.apply(w.point) == delta.apply(w.point)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class PureLocalDerCertificate:
    """A local derivation that is not a derivation, with its evidence.

    ``kind`` is ``"2step"`` (Delta = 0 on generators, 2 Id on the square)
    or ``"restriction"`` (Delta = D restricted to the square).
    """

    kind: str
    algebra: AlgebraTable
    change_of_basis: Matrix
    generator_count: int
    delta: Matrix
    failure_pair: tuple
    residual: Vector
    witness_strategy: str
    source_derivation: Matrix | None = None
    source_tag: str | None = None
    sampled_witnesses: list = dc_field(default_factory=list)

    def theorem_witness(self, x) -> LocalWitness:
        return theorem_witness(self, x)

    def add_samples(self, points: Iterable[Sequence]) -> int:
        """Attach verified theorem-case witnesses at ``points``; returns the count."""
        added = 0
        for x in points:
            self.sampled_witnesses.append(self.theorem_witness(x))
            added += 1
        return added

    def problems(self) -> list[str]:
        a = self.algebra
        out = []
        chk = is_derivation(a, self.delta)
        if chk:
            out.append("delta is a derivation")
        i, j = self.failure_pair
        res = leibniz_residual(a, self.delta, i, j)
        if is_zero_vector(res):
            out.append(f"no Leibniz failure at {pair_label(self.failure_pair)}")
        elif tuple(res) != tuple(self.residual):
            out.append("recorded residual does not match")
        for w in self.sampled_witnesses:
            if not witness_is_valid(a, self.delta, w):
                out.append(f"invalid witness at {w.point}")
                break
        return out

    def verify(self) -> bool:
        return not self.problems()


def _failure(a: AlgebraTable, delta: Matrix):
    chk = is_derivation(a, delta)
    if chk:
        raise PreconditionError("constructed map is a derivation; no pure local derivation here")
    return chk.pair, chk.residual


def _pivot(x: Sequence, m: int):
    for j in range(m):
        if x[j]:
            return j
    return None


def theorem_witness(cert: PureLocalDerCertificate, x) -> LocalWitness:
    """The proof's case split: rank-one central map if some generator
    coefficient is nonzero, otherwise the global derivation."""
    a = cert.algebra
    field = a.field
    x = a.vector(x)
    n, m = a.dim, cert.generator_count
    j = _pivot(x, m)
    target = cert.delta.apply(x)
    if j is not None:
        inv = field.inv(x[j])
        col = tuple(field.reduce(inv * v) for v in target)
        cols = [(0,) * n for _ in range(n)]
        cols[j] = col
        d = Matrix.from_columns(field, cols, n)
        tag = GENERATOR_CASE
    elif cert.kind == "2step":
        d = Matrix.diagonal(field, [1 if i < m else 2 for i in range(n)])
        tag = DEEP_CASE
    else:
        d = cert.source_derivation
        tag = DEEP_CASE
    w = LocalWitness(x, d, tag)
    if not witness_is_valid(a, cert.delta, w):
        raise AssertionError(f"{tag} witness failed verification at {x}")
    return w


TWO_STEP_STRATEGY = (
    "x = sum l_i e_i in the adapted basis. If some generator coefficient l_j != 0 "
    "(smallest such j): D_x(e_j) = (2/l_j) sum_{i>m} l_i e_i, D_x = 0 on the other basis "
    "vectors; it is a central derivation because its image lies in the central n^2 and n^2 lies "
    "in its kernel. "
    "Otherwise x lies in n^2 and D_x = D_1 (1 on generators, 2 on n^2), so D_x(x) = 2x."
)

RESTRICTION_STRATEGY = (
    "x = sum l_i e_i in the adapted basis and y = Delta(x) lies in Z(n). If some generator "
    "coefficient l_j != 0 (smallest such j): D_x(e_j) = y / l_j, D_x = 0 on the other basis "
    "vectors (image central, n^2 in kernel). Otherwise x lies in n^2 and D_x = D, "
    "so D_x(x) = D(x) = Delta(x)."
)


def _attach(cert: PureLocalDerCertificate, samples: int, seed, extra: Iterable[Sequence] = ()):
    cert.add_samples(structured_probes(cert.algebra, cert.generator_count))
    cert.add_samples(extra)
    if samples:
        cert.add_samples(sample_points(cert.algebra, samples, seed))
    return cert


def construct_2step_delta(a: AlgebraTable, samples: int = 0, seed=None) -> PureLocalDerCertificate:
    """Delta = 0 on generators, 2 Id on ``n^2`` for a 2-step nilpotent algebra."""
    require_nilindex(a, "construct_2step_delta", exact=3)
    if a.field.p == 2:
        raise DegenerateInChar2("degenerate in characteristic 2: 2 Id on n^2 is zero")
    b, info = adapted_basis(a)
    m = info.generator_count
    delta = Matrix.diagonal(b.field, [0 if i < m else 2 for i in range(b.dim)])
    pair, residual = _failure(b, delta)
    cert = PureLocalDerCertificate("2step", b, info.change_of_basis, m, delta, pair, residual,
                                   TWO_STEP_STRATEGY)
    return _attach(cert, samples, seed)


def generator_bracket_pairs(a: AlgebraTable, m: int):
    """Pairs ``(r, t)`` of generator positions with ``[e_r, e_t] != 0``."""
    for r, t in itertools.combinations(range(m), 2):
        v = a.product_vector(r, t)
        if any(v):
            yield r, t, v


def restriction_ready(a: AlgebraTable, d: Matrix) -> bool:
    """True iff ``d`` is nonzero on some bracket of two adapted generators."""
    b, info = adapted_basis(a)
    db = info.to_adapted(d) if not info.is_identity else d
    return any(any(db.apply(v)) for _, _, v in generator_bracket_pairs(b, info.generator_count))


def construct_restriction_delta(a: AlgebraTable, d: Matrix, samples: int = 0, seed=None,
                                tag: str | None = None) -> PureLocalDerCertificate:
    """Delta = d restricted to ``n^2`` for a derivation d with ``d(n^2) <= Z``."""
    rep = a.series
    require_nilindex(a, "construct_restriction_delta", at_least=3)
    if not is_derivation(a, d):
        raise PreconditionError("d is not a derivation")
    if d.is_zero():
        raise PreconditionError("d is the trivial derivation")
    if not maps_image_into(a, d, rep.layer(2), rep.center):
        raise PreconditionError("d does not map n^2 into the center")
    b, info = adapted_basis(a)
    m = info.generator_count
    db = d if info.is_identity else info.to_adapted(d)
    if not any(any(db.apply(v)) for _, _, v in generator_bracket_pairs(b, m)):
        raise PreconditionError("d vanishes on every bracket of two generators")
    delta = restrict_map(db, range(m, b.dim))
    pair, residual = _failure(b, delta)
    cert = PureLocalDerCertificate("restriction", b, info.change_of_basis, m, delta, pair, residual,
                                   RESTRICTION_STRATEGY, source_derivation=db, source_tag=tag)
    return _attach(cert, samples, seed)


def find_center_targeting_derivation(a: AlgebraTable):
    """A derivation with ``D(n^2) <= Z`` that is nonzero on a generator bracket.

    Routes, in order: ``ad x`` for nilindex 4; ``ad x`` with ``x`` in
    ``n^{p-3}`` when ``[n^{p-3}, n^2] != 0``; the two-generated construction;
    a search of the center-targeting subspace.  Returns ``(D, route)`` or
    ``None``.
    """
    require_lie(a, "find_center_targeting_derivation")
    p = require_nilindex(a, "find_center_targeting_derivation", at_least=4)
    rep = a.series
    sq = rep.layer(2)

    def ok(d):
        return (d is not None and not d.is_zero() and is_derivation(a, d)
                and maps_image_into(a, d, sq, rep.center) and restriction_ready(a, d))

    if p == 4:
        for i in range(a.dim):
            x = a.basis_vector(i)
            if inner_product_nonzero(a, x, sq):
                d = inner_derivation(a, x)
                if ok(d):
                    return d, "inner-nilindex-4"
    if p >= 5 and not product_subspace(a, rep.layer(p - 3), sq).is_zero():
        for x in rep.layer(p - 3).vectors():
            if inner_product_nonzero(a, x, sq):
                d = inner_derivation(a, x)
                if ok(d):
                    return d, "inner-corollary"
    if a.dim - sq.dim == 2:
        d = two_generated_derivation(a)
        if ok(d):
            return d, "two-generated"
    space = center_targeting_space(a)
    b, info = adapted_basis(a)
    brackets = [info.vector_from_adapted(v) for _, _, v in generator_bracket_pairs(b, info.generator_count)]
    for flat in space.vectors():
        d = Matrix.from_flat(a.field, a.dim, flat)
        if any(any(d.apply(v)) for v in brackets) and ok(d):
            return d, "center-targeting-search"
    return None


def construct_pure_local_derivation(a: AlgebraTable, samples: int = 0, seed=None) -> PureLocalDerCertificate:
    """Pick the applicable construction by nilindex."""
    p = require_nilindex(a, "construct_pure_local_derivation", at_least=3)
    if p == 3:
        return construct_2step_delta(a, samples, seed)
    found = find_center_targeting_derivation(a)
    if found is None:
        raise PreconditionError(f"no derivation with D(n^2) <= Z(n) found on {a.name}")
    d, route = found
    return construct_restriction_delta(a, d, samples, seed, tag=route)


# ---------------------------------------------------------------------------
# falsification and probe refinement


def falsify(a: AlgebraTable, der: DerivationBasis, delta: Matrix, seed, budget: int = 1000,
            probes: Sequence[Sequence] = ()) -> Vector | None:
    """A point where no derivation matches ``delta``, or ``None``.

    Structured probes first (plus any given ones), then ``budget`` seeded
    random points.  A returned point certifies that ``delta`` is not a local
    derivation; ``None`` certifies nothing.
    """
    # pairwise sums already include e_1 + e_i and e_{n-1} + e_n
    order = structured_probes(a) + [a.vector(p) for p in probes]
    for x in _dedupe(order):
        if witness_coefficients(der, delta, x) is None:
            return x
    rng = random.Random(seed)
    for _ in range(budget):
        x = random_vector(a.field, a.dim, rng)
        if witness_coefficients(der, delta, x) is None:
            return x
    return None


LOCDER_EQUALS_DER = "LocDerEqualsDer"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProbeReport:
    probes: tuple
    upper_bound: Subspace
    der_subspace: Subspace
    verdict: str


def probe_constraints(a: AlgebraTable, der: DerivationBasis, x: Sequence) -> list[list]:
    """Rows on End entries expressing ``Delta(x) in {D(x) : D in Der}``."""
    n = a.dim
    image = Subspace.span(a.field, n, der.evaluation_matrix(x).columns()) if der.basis else Subspace.zero(a.field, n)
    if image.dim == n:
        return []
    ann = image.annihilator().data
    red = a.field.reduce
    rows = []
    for w in ann:
        row = [0] * (n * n)
        for k, wk in enumerate(w):
            if wk:
                for i, xi in enumerate(x):
                    if xi:
                        row[k * n + i] = red(wk * xi)
        if any(row):
            rows.append(row)
    return rows


def locder_upper_bound(a: AlgebraTable, der: DerivationBasis, probes: Sequence[Sequence]) -> ProbeReport:
    """Linear upper bound on LocDer from finitely many probes.

    Every basis vector is always probed.  ``Der <= LocDer <= upper_bound``,
    so equality with Der pins LocDer down exactly.
    """
    n = a.dim
    pts = _dedupe([unit_vector(n, i) for i in range(n)] + [a.vector(p) for p in probes])
    rows = []
    for x in pts:
        rows.extend(probe_constraints(a, der, x))
    bound = kernel(Matrix._raw(a.field, rows, n * n)) if rows else Subspace.full(a.field, n * n)
    if not bound.contains(der.as_subspace):
        raise AssertionError("probe bound lost a derivation")
    verdict = LOCDER_EQUALS_DER if bound == der.as_subspace else INCONCLUSIVE
    return ProbeReport(tuple(pts), bound, der.as_subspace, verdict)


def local_derivation_family(a: AlgebraTable, report: ProbeReport) -> list[Matrix]:
    """Basis of the probe upper bound as matrices."""
    return [Matrix.from_flat(a.field, a.dim, v) for v in report.upper_bound.vectors()]

