"""Automorphisms, exponentials of nilpotent derivations and pure local automorphisms.

The constructions mirror :mod:`nilpo.localder`: they run in the adapted basis,
and certificates store the adapted table with every map in adapted
coordinates.  Where the classical argument scales by ``e`` and ``e^2`` we use
a field element ``eps`` with ``eps^2`` not in ``{0, 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algcore import AlgebraTable, _bracket, adapted_basis, require_nilindex
from .deriv import (
    pair_label,
    CheckResult,
    central_derivation_space,
    check_map,
    derivation_space,
    is_derivation,
    maps_image_into,
)
from .errors import ExpError, NoSuitableScalar, PreconditionError
from .exactlin import (
    Matrix,
    Scalar,
    Subspace,
    Vector,
    is_zero_vector,
    kernel,
    solve,
    vec_sub,
)
from .localder import (
    DEEP_CASE,
    GENERATOR_CASE,
    find_center_targeting_derivation,
    generator_bracket_pairs,
    sample_points,
    structured_probes,
)

EXP_SOLVE = "exp-solve"
THEOREM_CASES = "theorem-cases"
EXP_OF_DERIVATION_SOLVE = "exp-of-derivation-solve"
FAMILIES = (THEOREM_CASES, EXP_OF_DERIVATION_SOLVE)


@dataclass(frozen=True)
class AutMap:
    """An automorphism together with its inverse."""

    matrix: Matrix
    inverse: Matrix

    @classmethod
    def of(cls, a: AlgebraTable, m: Matrix) -> "AutMap":
        """Wrap ``m`` after checking it is an automorphism of ``a``."""
        chk = is_automorphism(a, m)
        if not chk:
            raise ValueError(f"not an automorphism: {chk.reason} at {pair_label(chk.pair)}")
        return cls(m, m.inverse())

    def apply(self, v: Sequence) -> Vector:
        return self.matrix.apply(v)

    def compose(self, other: "AutMap") -> "AutMap":
        """``self`` after ``other``."""
        return AutMap(self.matrix @ other.matrix, other.inverse @ self.inverse)


def multiplicativity_residual(a: AlgebraTable, f: Matrix, i: int, j: int) -> Vector:
    """``f[e_i, e_j] - [f e_i, f e_j]``."""
    lhs = f.apply(a.product_vector(i, j))
    rhs = _bracket(a, f.column(i), f.column(j))
    return vec_sub(a.field, lhs, rhs)


def is_automorphism(a: AlgebraTable, f: Matrix) -> CheckResult:
    """Invertible and multiplicative on every ordered basis pair."""
    check_map(a, f)
    if f.inverse() is None:
        return CheckResult(False, reason="singular")
    cols = f.columns()
    field = a.field
    for i in range(a.dim):
        for j in range(a.dim):
            res = vec_sub(field, f.apply(a.product_vector(i, j)), _bracket(a, cols[i], cols[j]))
            if any(res):
                return CheckResult(False, (i, j), res, "not multiplicative")
    return CheckResult(True)


# ---------------------------------------------------------------------------
# exponentials


def nilpotency_index(d: Matrix) -> int | None:
    """Smallest ``q`` with ``d^q = 0``, or ``None``."""
    power = Matrix.identity(d.field, d.rows)
    for q in range(1, d.rows + 1):
        power = power @ d
        if power.is_zero():
            return q
    return 0 if d.rows == 0 else None


def exp_nilpotent(a: AlgebraTable, d: Matrix) -> AutMap:
    """``Id + d + d^2/2! + ... + d^(q-1)/(q-1)!`` for a nilpotent derivation.

    Over GF(p) every factorial up to ``(q-1)!`` must be invertible, i.e.
    ``p > q - 1``.  The result is checked with :func:`is_automorphism`.
    """
    check_map(a, d)
    chk = is_derivation(a, d)
    if not chk:
        raise ExpError(f"not a derivation: Leibniz rule fails at {pair_label(chk.pair)}")
    q = nilpotency_index(d)
    if q is None:
        raise ExpError("map is not nilpotent")
    field = a.field
    p = field.characteristic
    if p and q - 1 >= p:
        raise ExpError(f"{p}! is not invertible in {field} (needed up to {q - 1}! for nilpotency index {q})")
    total = Matrix.identity(field, a.dim)
    term = Matrix.identity(field, a.dim)
    for k in range(1, q):
        term = (term @ d).scale(field.inv(k))
        total = total + term
    chk = is_automorphism(a, total)
    if not chk:
        raise ExpError(f"exp(d) is not an automorphism: fails at {pair_label(chk.pair)}")
    return AutMap(total, total.inverse())


# ---------------------------------------------------------------------------
# scaling


def _scalar(a: AlgebraTable, eps):
    if isinstance(eps, Scalar):
        if eps.field != a.field:
            raise PreconditionError(f"epsilon over {eps.field}, algebra over {a.field}")
        return eps.value
    return a.field.coerce(eps)


def scaling_auto(a: AlgebraTable, eps) -> AutMap:
    """psi_eps: ``eps`` on generators, ``eps^2`` on ``n^2`` (nilindex 3)."""
    require_nilindex(a, "scaling_auto", exact=3)
    e = _scalar(a, eps)
    if not e:
        raise PreconditionError("epsilon must be nonzero")
    b, info = adapted_basis(a)
    m = info.generator_count
    field = a.field
    psi = Matrix.diagonal(field, [e if i < m else field.reduce(e * e) for i in range(a.dim)])
    if not info.is_identity:
        psi = info.from_adapted(psi)
    chk = is_automorphism(a, psi)
    if not chk:
        raise AssertionError(f"scaling map failed the automorphism check at {pair_label(chk.pair)}")
    return AutMap(psi, psi.inverse())


def suitable_epsilon(field, eps=None):
    """``eps`` (validated) or the default: 2 if ``2^2 != 1``, else the first
    field element with ``eps^2`` outside ``{0, 1}``."""
    if eps is not None:
        e = field.coerce(eps.value if isinstance(eps, Scalar) else eps)
        sq = field.reduce(e * e)
        if sq == 0 or sq == 1:
            raise PreconditionError(f"epsilon = {field.format(e)} has eps^2 in {{0, 1}}")
        return e
    candidates = [2] if field.is_rational else range(2, field.p)
    for e in candidates:
        sq = field.reduce(e * e)
        if sq not in (0, 1):
            return field.reduce(e)
    raise NoSuitableScalar(f"no eps in {field} with eps^2 outside {{0, 1}}")


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class LocalAutWitness:
    """An automorphism ``phi_x`` with ``phi_x(x) = nabla(x)``."""

    point: Vector
    witness: AutMap
    construction: str


def aut_witness_is_valid(a: AlgebraTable, nabla: Matrix, w: LocalAutWitness) -> bool:
    return bool(is_automorphism(a, w.witness.matrix)) and w.witness.apply(w.point) == nabla.apply(w.point)


@dataclass
class PureLocalAutCertificate:
    """A local automorphism that is not an automorphism, with its evidence.

    ``kind`` is ``"2step"`` (Id on generators, eps^2 Id on the square) or
    ``"restriction"`` (Id on generators, exp(d) on the square).
    ``unresolved`` lists sampled points where no witness was found.
    """

    kind: str
    algebra: AlgebraTable
    change_of_basis: Matrix
    generator_count: int
    nabla: Matrix
    mult_failure: tuple
    residual: Vector
    witness_strategy: str
    epsilon: object = None
    source_derivation: Matrix | None = None
    source_tag: str | None = None
    sampled_witnesses: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)

    def witness(self, x) -> LocalAutWitness | None:
        return theorem_aut_witness(self, x)

    def add_samples(self, points: Iterable[Sequence]) -> int:
        added = 0
        for x in points:
            x = self.algebra.vector(x)
            w = self.witness(x)
            if w is None:
                self.unresolved.append(x)
            else:
                self.sampled_witnesses.append(w)
                added += 1
        return added

    def problems(self) -> list[str]:
        a = self.algebra
        out = []
        if is_automorphism(a, self.nabla):
            out.append("nabla is an automorphism")
        i, j = self.mult_failure
        res = multiplicativity_residual(a, self.nabla, i, j)
        if is_zero_vector(res):
            out.append(f"no multiplicativity failure at {pair_label(self.mult_failure)}")
        elif tuple(res) != tuple(self.residual):
            out.append("recorded residual does not match")
        for w in self.sampled_witnesses:
            if not aut_witness_is_valid(a, self.nabla, w):
                out.append(f"invalid witness at {w.point}")
                break
        for x in self.unresolved:
            out.append(f"no witness found at {x}")
        return out

    def verify(self) -> bool:
        return not self.problems()


def _mult_failure(a: AlgebraTable, nabla: Matrix):
    chk = is_automorphism(a, nabla)
    if chk:
        raise PreconditionError("constructed map is an automorphism; no pure local automorphism here")
    if chk.pair is None:
        raise PreconditionError("constructed map is singular")
    return chk.pair, chk.residual


def _rank_one(field, n: int, j: int, col: Sequence) -> Matrix:
    cols = [(0,) * n for _ in range(n)]
    cols[j] = tuple(col)
    return Matrix.from_columns(field, cols, n)


def generator_case_witness(a: AlgebraTable, m: int, nabla: Matrix, x: Vector):
    """Id + D_x with D_x(e_j) = (nabla(x) - x)/l_j for a generator pivot ``j``.

    The pivot must have ``l_j != 0`` and no ``e_j`` component in the
    correction, so that D_x squares to zero.
    """
    field = a.field
    y = vec_sub(field, nabla.apply(x), x)
    for j in range(m):
        if x[j] and not y[j]:
            inv = field.inv(x[j])
            dx = _rank_one(field, a.dim, j, [field.reduce(inv * v) for v in y])
            phi = Matrix.identity(field, a.dim) + dx
            if is_automorphism(a, phi):
                return phi
    return None


def theorem_aut_witness(cert: PureLocalAutCertificate, x) -> LocalAutWitness | None:
    """Witness from the proof's case split, falling back to a derivation solve."""
    a = cert.algebra
    x = a.vector(x)
    m = cert.generator_count
    phi = None
    tag = GENERATOR_CASE
    if any(x[:m]):
        phi = generator_case_witness(a, m, cert.nabla, x)
    elif cert.kind == "2step":
        phi = scaling_auto(a, cert.epsilon).matrix
        tag = DEEP_CASE
    else:
        phi = exp_nilpotent(a, cert.source_derivation).matrix
        tag = DEEP_CASE
    if phi is not None:
        w = LocalAutWitness(x, AutMap(phi, phi.inverse()), tag)
        if not aut_witness_is_valid(a, cert.nabla, w):
            raise AssertionError(f"{tag} witness failed verification at {x}")
        return w
    found = exp_solve_witness(a, cert.nabla, x)
    if found is None:
        return None
    return LocalAutWitness(x, found, EXP_SOLVE)


def square_zero_central_space(a: AlgebraTable) -> Subspace:
    """Central derivations that also kill the center; these square to zero."""
    n = a.dim
    space = central_derivation_space(a)
    z = a.series.center
    rows = []
    for zv in z.vectors():
        for k in range(n):
            row = [0] * (n * n)
            for i, c in enumerate(zv):
                if c:
                    row[k * n + i] = c
            if any(row):
                rows.append(row)
    if not rows:
        return space
    return space.intersect(kernel(Matrix._raw(a.field, rows, n * n)))


def _solve_in(a: AlgebraTable, basis: Sequence[Matrix], x: Vector, y: Vector) -> Matrix | None:
    if not basis:
        return None
    ev = Matrix.from_columns(a.field, [b.apply(x) for b in basis], a.dim)
    coeffs = solve(ev, y)
    if coeffs is None:
        return None
    red = a.field.reduce
    total = Matrix.zeros(a.field, a.dim)
    for c, b in zip(coeffs, basis):
        if c:
            total = total + b.scale(red(c))
    return total


def exp_solve_witness(a: AlgebraTable, nabla: Matrix, x) -> AutMap | None:
    """exp(N) for a derivation N with ``exp(N)(x) = nabla(x)``, or ``None``.

    Searches central derivations that kill the center first (they square to
    zero, so exp(N) = Id + N), then all of Der.  Every candidate is checked.
    """
    x = a.vector(x)
    y = vec_sub(a.field, nabla.apply(x), x)
    if is_zero_vector(y):
        ident = Matrix.identity(a.field, a.dim)
        return AutMap(ident, ident)
    n = a.dim
    central = [Matrix.from_flat(a.field, n, v) for v in square_zero_central_space(a).vectors()]
    for basis in (central, list(derivation_space(a).basis)):
        d = _solve_in(a, basis, x, y)
        if d is None:
            continue
        try:
            phi = exp_nilpotent(a, d)
        except ExpError:
            continue
        if phi.apply(x) == nabla.apply(x):
            return phi
    return None


def locaut_witness_at(a: AlgebraTable, nabla: Matrix, x, family: str = EXP_OF_DERIVATION_SOLVE,
                      cert: PureLocalAutCertificate | None = None) -> AutMap | None:
    """An automorphism agreeing with ``nabla`` at ``x``, or ``None``.

    ``theorem-cases`` uses the certificate that produced ``nabla``; ``a``,
    ``nabla`` and ``x`` are in the coordinates of ``a`` and are moved to the
    certificate's adapted basis and back.  Without a certificate, or when
    ``nabla`` is not the certificate's map, it falls back to the derivation
    solve.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown witness family {family!r}")
    x = a.vector(x)
    if family == THEOREM_CASES and cert is not None:
        change = cert.change_of_basis
        inv = change.inverse()
        if a.transformed(change).same_structure(cert.algebra) and inv @ nabla @ change == cert.nabla:
            w = theorem_aut_witness(cert, inv.apply(x))
            if w is None:
                return None
            phi = change @ w.witness.matrix @ inv
            return AutMap(phi, phi.inverse())
    phi = exp_solve_witness(a, nabla, x)
    if phi is not None and phi.apply(x) != nabla.apply(x):
        raise AssertionError("exp-solve witness missed the target")
    return phi


TWO_STEP_AUT_STRATEGY = (
    "x = sum l_i e_i in the adapted basis. If some generator coefficient l_j != 0 "
    "(smallest such j): phi_x = Id + D_x with D_x(e_j) = ((eps^2 - 1)/l_j) sum_{i>m} l_i e_i "
    "and D_x = 0 on the other basis vectors; D_x is central with n^2 in its kernel, so it "
    "squares to zero and Id + D_x = exp(D_x). "
    "Otherwise x lies in n^2 and phi_x = psi_eps (eps on generators, eps^2 on n^2)."
)

RESTRICTION_AUT_STRATEGY = (
    "x = sum l_i e_i in the adapted basis and y = nabla(x) - x. If some generator "
    "coefficient l_j != 0 and y has no e_j component: phi_x = Id + D_x with D_x(e_j) = y / l_j; "
    "if no such pivot exists, phi_x = exp(N) for a derivation N solved from N(x) = y. "
    "Otherwise x lies in n^2 and phi_x = exp(D)."
)


def _attach(cert: PureLocalAutCertificate, samples: int, seed):
    cert.add_samples(structured_probes(cert.algebra, cert.generator_count))
    if samples:
        cert.add_samples(sample_points(cert.algebra, samples, seed))
    return cert


def construct_2step_nabla(a: AlgebraTable, eps=None, samples: int = 0, seed=None) -> PureLocalAutCertificate:
    """nabla = Id on generators, eps^2 Id on ``n^2`` for a 2-step nilpotent algebra."""
    require_nilindex(a, "construct_2step_nabla", exact=3)
    e = suitable_epsilon(a.field, eps)
    b, info = adapted_basis(a)
    m = info.generator_count
    field = a.field
    sq = field.reduce(e * e)
    nabla = Matrix.diagonal(field, [1 if i < m else sq for i in range(b.dim)])
    pair, residual = _mult_failure(b, nabla)
    cert = PureLocalAutCertificate("2step", b, info.change_of_basis, m, nabla, pair, residual,
                                   TWO_STEP_AUT_STRATEGY, epsilon=e)
    return _attach(cert, samples, seed)


def restriction_nabla(b: AlgebraTable, m: int, d: Matrix) -> Matrix:
    """Id on the first ``m`` positions, exp(d) on the rest (Id + d when exp is unavailable
    but d squares to zero there)."""
    n = b.dim
    try:
        e = exp_nilpotent(b, d).matrix
    except ExpError:
        dd = d @ d
        if any(any(dd.column(i)) for i in range(m, n)):
            raise
        e = Matrix.identity(b.field, n) + d
    ident = Matrix.identity(b.field, n)
    cols = [ident.column(i) if i < m else e.column(i) for i in range(n)]
    return Matrix.from_columns(b.field, cols, n)


def construct_restriction_nabla(a: AlgebraTable, d: Matrix, samples: int = 0, seed=None,
                                tag: str | None = None) -> PureLocalAutCertificate:
    """nabla = Id on generators, exp(d) on ``n^2`` for a derivation with ``d(n^2) <= Z``."""
    rep = a.series
    require_nilindex(a, "construct_restriction_nabla", at_least=3)
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
    nabla = restriction_nabla(b, m, db)
    pair, residual = _mult_failure(b, nabla)
    cert = PureLocalAutCertificate("restriction", b, info.change_of_basis, m, nabla, pair, residual,
                                   RESTRICTION_AUT_STRATEGY, source_derivation=db, source_tag=tag)
    return _attach(cert, samples, seed)


def construct_pure_local_automorphism(a: AlgebraTable, eps=None, samples: int = 0,
                                      seed=None) -> PureLocalAutCertificate:
    """Pick the applicable construction by nilindex."""
    p = require_nilindex(a, "construct_pure_local_automorphism", at_least=3)
    if p == 3:
        return construct_2step_nabla(a, eps, samples, seed)
    found = find_center_targeting_derivation(a)
    if found is None:
        raise PreconditionError(f"no derivation with D(n^2) <= Z(n) found on {a.name}")
    d, route = found
    return construct_restriction_nabla(a, d, samples, seed, tag=route)
