"""
Showing LocDer = Der with finitely many probes
===============================================

Each probe x adds the linear condition Delta(x) in {D(x) : D in Der}.  When
the intersection already equals Der, every local derivation is a
derivation.
"""

from nilpo import derivation_space, locder_upper_bound
from nilpo.catalog import chain, commutative_c6, heisenberg

c6 = commutative_c6()
rep = locder_upper_bound(c6, derivation_space(c6), [(1, 1, 1, 1, 0, 0), (0, 0, 0, 1, 1, 1)])
print("c6:", rep.verdict)

n = 6
a = chain(n)
probes = [tuple(1 if k in (0, i) else 0 for k in range(n)) for i in range(1, n)]
probes.append(tuple(1 if k >= n - 2 else 0 for k in range(n)))
print(f"chain({n}):", locder_upper_bound(a, derivation_space(a), probes).verdict)

# the Heisenberg algebra has pure local derivations, so the bound stays larger
h = heisenberg(1)
rep = locder_upper_bound(h, derivation_space(h), [])
print("heisenberg(1):", rep.verdict, rep.der_subspace.dim, "<", rep.upper_bound.dim)
