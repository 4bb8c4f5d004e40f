"""Exact derivations, local derivations and local automorphisms of algebras
given by structure constants, over Q and GF(p)."""

from .algcore import AlgebraTable, adapted_basis, bracket, center, check_structure, lower_central_series
from .autolocal import (
    AutMap,
    PureLocalAutCertificate,
    construct_2step_nabla,
    construct_restriction_nabla,
    exp_nilpotent,
    is_automorphism,
    locaut_witness_at,
    scaling_auto,
)
from .catalog import chain, commutative_c6, heisenberg, verify_example, witt, z2_algebra_s
from .deriv import derivation_space, grading_derivation, inner_derivation, is_derivation
from .exactlin import GF, QQ, FieldSpec, Matrix, Scalar, Subspace, kernel, rref, solve
from .localder import (
    PureLocalDerCertificate,
    construct_2step_delta,
    construct_restriction_delta,
    falsify,
    find_center_targeting_derivation,
    locder_upper_bound,
    witness_at,
)

__version__ = "0.1.0"
