"""
A local derivation that is not a derivation (2-step case)
==========================================================

On a 2-step nilpotent algebra, Delta = 0 on generators and 2 Id on the
square is local but breaks the Leibniz rule.  The certificate carries the
failing pair and one verified witness derivation per sampled point.
"""

from nilpo import construct_2step_delta
from nilpo.catalog import heisenberg
from nilpo.errors import DegenerateInChar2
from nilpo.exactlin import GF

h = heisenberg(2)
cert = construct_2step_delta(h, samples=100, seed=0)
i, j = cert.failure_pair
print("Leibniz fails at", cert.algebra.labels[i], cert.algebra.labels[j], "residual", cert.residual)
print("witnesses checked:", len(cert.sampled_witnesses), "verified:", cert.verify())

# the two cases of the witness construction
print(cert.theorem_witness((1, 0, 0, 0, 3)).construction)
print(cert.theorem_witness((0, 0, 0, 0, 3)).construction)

# in characteristic 2 the map 2 Id vanishes and the construction degenerates
try:
    construct_2step_delta(heisenberg(1, GF(2)))
except DegenerateInChar2 as exc:
    print("GF(2):", exc)
