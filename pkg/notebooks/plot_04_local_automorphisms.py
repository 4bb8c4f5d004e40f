"""
Local automorphisms that are not automorphisms
===============================================

exp of a nilpotent derivation is an automorphism.  The 2-step construction
uses Id on generators and eps^2 Id on the square; the deeper one uses exp(d)
on the square.
"""

import random

from nilpo import construct_2step_nabla, construct_restriction_nabla, exp_nilpotent, is_automorphism
from nilpo.catalog import heisenberg, square_zero_sampler, witt, witt_outer_derivation
from nilpo.errors import NoSuitableScalar
from nilpo.exactlin import GF

w = witt(6)
d = square_zero_sampler(w, random.Random(1))
print("exp(d) automorphism:", bool(is_automorphism(w, exp_nilpotent(w, d).matrix)))

cert = construct_2step_nabla(heisenberg(1), eps=2, samples=50, seed=2)
print("2-step nabla:\n" + cert.nabla.pretty())
print("verified:", cert.verify())

cert = construct_restriction_nabla(w, witt_outer_derivation(6), samples=50, seed=3)
print("witt(6) nabla verified:", cert.verify())

# over GF(3) every nonzero eps has eps^2 = 1
try:
    construct_2step_nabla(heisenberg(1, GF(3)))
except NoSuitableScalar as exc:
    print("GF(3):", exc)
