"""Independent oracles: sympy over Q, a separate elimination over GF(p).

Nothing here imports the linear algebra of the package under test, so
agreement is a real cross-check.
"""

from fractions import Fraction

import sympy


def rank_q(rows, cols):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r]
                         for r in rows]).rank()


def rank_gf2(rows):
    """Rank over GF(2) using integer bitmasks and XOR."""
    basis = {}
    for r in rows:
        v = 0
        for t, x in enumerate(r):
            if x % 2:
                v |= 1 << t
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def rank_mod_p(rows, p):
    if p == 2:
        return rank_gf2(rows)
    m = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def rank(rows, cols, p):
    return rank_q(rows, cols) if p == 0 else rank_mod_p(rows, p)


def structure_constants(a):
    """Dense ``c[i][j][k]`` read straight off the sparse table."""
    n = a.dim
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), terms in a.products.items():
        for k, v in terms:
            c[i][j][k] = v
    return c


def _red(x, p):
    return Fraction(x) if p == 0 else x % p


def leibniz_rows(a):
    """Rows of the Leibniz system on ``D[k][i]`` (entry index ``k*n+i``)."""
    n, p = a.dim, a.field.p
    c = structure_constants(a)
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [0] * (n * n)
                for t in range(n):
                    row[k * n + t] += c[i][j][t]
                    row[t * n + i] -= c[t][j][k]
                    row[t * n + j] -= c[i][t][k]
                row = [_red(x, p) for x in row]
                if any(row):
                    rows.append(row)
    return rows


def der_dim(a):
    n = a.dim
    return n * n - rank(leibniz_rows(a), n * n, a.field.p)


def is_derivation(a, d):
    """Direct check of ``D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`` on entries ``d[k][i]``."""
    n, p = a.dim, a.field.p
    c = structure_constants(a)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = sum(d[k][t] * c[i][j][t] - d[t][i] * c[t][j][k] - d[t][j] * c[i][t][k] for t in range(n))
                if _red(s, p):
                    return False
    return True


def mult(a, x, y):
    n, p = a.dim, a.field.p
    c = structure_constants(a)
    return [_red(sum(x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n)), p) for k in range(n)]


def apply(m, v, p):
    return [_red(sum(r[t] * v[t] for t in range(len(v))), p) for r in m]


def is_automorphism(a, m):
    """Bijective and ``m[e_i e_j] = m(e_i) m(e_j)``, checked directly."""
    n, p = a.dim, a.field.p
    if rank([list(r) for r in m], n, p) != n:
        return False
    cols = [[m[k][i] for k in range(n)] for i in range(n)]
    c = structure_constants(a)
    for i in range(n):
        for j in range(n):
            if apply(m, c[i][j], p) != mult(a, cols[i], cols[j]):
                return False
    return True


def in_span(vectors, v, p):
    """``v`` lies in the span of ``vectors``."""
    rows = [list(u) for u in vectors]
    if not rows:
        return all(not _red(x, p) for x in v)
    return rank(rows + [list(v)], len(v), p) == rank(rows, len(v), p)
