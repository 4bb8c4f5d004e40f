"""
Nilindex at least 4: the Witt-type algebra
===========================================

A derivation d with d(n^2) in the center, restricted to n^2, gives a pure
local derivation.  For n >= 5 the two-generated construction finds
d(e_2) = e_{n-1}, d(e_3) = (n-2) e_n.
"""

from nilpo import construct_restriction_delta, find_center_targeting_derivation, lower_central_series
from nilpo.catalog import witt

for n in range(4, 9):
    w = witt(n)
    rep = lower_central_series(w)
    d, route = find_center_targeting_derivation(w)
    cert = construct_restriction_delta(w, d, samples=50, seed=n, tag=route)
    print(f"witt({n}): nilindex {rep.nilindex}, route {route}, certificate ok {cert.verify()}")

print(find_center_targeting_derivation(witt(6))[0].pretty())
