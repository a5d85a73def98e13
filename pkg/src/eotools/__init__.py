"""Exact-algebra checks for EO-orientations of complex line bundles.

P_k on stunted projective spaces, free/finite splittings over F_p[C_p],
orientation-order formulas, and truncated arithmetic in the endomorphism
ring of a height-n formal group.
"""

from .fp_algebra import ExtField, FpMatrix, PrimeField, make_ext_field, power_rank_profile, rank
from .morava import (
    EndoElement, EndoRing, TValuation, WittRing, endo_mul, endo_ring, find_order_p_unit,
    t_valuation, tbar_coefficients, verify_tk_lemma,
)
from .nilpotent import (
    GroupRingElement, JordanType, NilOperator, coproduct_chi_check, jordan_type, split_free_finite,
)
from .orientation import eo_bound, known_orders_report, nu_p, theta_sphere_valuation
from .splitting import (
    beta_constants, decompose_stunted, finite_part_support, ko_pattern, tate_transition_surjective,
    thom_shift_linearity, verify_free_generators,
)
from .stunted import PkParams, StuntedBasis, duality_check, pk_cohomology_coefficient, pk_homology_operator

__version__ = "0.1.0"
