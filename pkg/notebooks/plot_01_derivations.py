"""
Derivation algebras from structure constants
=============================================

Der(a) is the kernel of the Leibniz system on the n^2 entries of a map.
"""

from nilpo import derivation_space
from nilpo.catalog import chain, commutative_c6, z2_algebra_s

# the one-generated chain algebra e_i e_i = e_{i+1}: two free parameters
for n in range(3, 9):
    der = derivation_space(chain(n))
    print(f"chain({n}): dim Der = {der.dim}")

# a generic element, printed with symbolic coefficients t1, t2
print(derivation_space(chain(4)).format_parametrized())

# the six-dimensional commutative example and the GF(2) algebra
print("c6:", derivation_space(commutative_c6()).dim)
print("s_z2 over GF(2):", derivation_space(z2_algebra_s()).dim)
