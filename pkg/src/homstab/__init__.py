"""Exact homological algebra workbench over Z and Z/n.

Finitely presented modules and morphisms, resolutions and Ext/Tor, an
evaluable functor calculus with stabilizations, satellites, and derived
functors, the circular and fundamental sequences, universal coefficient
theorems for arbitrary complexes, and the Auslander-Reiten formula checks.
All arithmetic is exact; every exactness verdict is decided by integer
linear algebra, never assumed.
"""

from .exactlin import IntMat, RingDesc, SNFResult, ZZ, Zmod, snf, \
    kernel_basis, solve, solve_matrix, invariant_divisors
from .fpmod import (
    FPModule, Morphism, Subquotient, make_module, make_morphism, free_module,
    zero_module, cyclic, canonical_invariants, iso_test, stably_iso_test,
    kernel, cokernel, epi_mono_factor, image, hom_module, tensor_module,
    dual, evaluation_map, transpose, direct_sum, direct_sum_morphism,
)
from .resolve import (
    ProjResolution, InjResolution, proj_resolution, inj_resolution, syzygy,
    cosyzygy, ext, tor, ext_tor_oracle_Z, homology_at, injective_container,
)
from .funcalc import (
    FunctorExpr, HomCov, HomContra, TensorLeft, FP, TC, ExtFixedFirst,
    TorFixedFirst, ShiftSigma, ShiftOmega, SubStab, QuotStab, Derived,
    Satellite, NatTransSample, sub_stabilize, quot_stabilize,
    sub_stabilize_fp, tc_quot_stabilize, defect, derived, satellite, rho,
    lam, beta, alpha, nat_trans_sample, torsion_radical, auslander_four_term,
)
from .fundseq import (
    SequenceNode, SequenceReport, build_report, exactness_check, is_exact_at,
    circular_sequence, right_fund_cov, left_fund_cov, contra_fund,
    splitting_test, short_exact, hereditary_decomposition,
)
from .uct import (
    Complex, make_complex, homology, boundaries, chains_mod_boundaries,
    cohomology, homology_tensor, cohomology_functor, homology_tensor_functor,
    uct_classical, uct_general, uct_special, coh_defect, coh_substab,
    homology_qstab, hom_copresentation, delta_functor_checks,
)
from .archeck import (
    matlis_dual, stable_hom, ar_formula_check, stab_adjunction_check,
    bidual_check,
)
from .instances import InstanceSpec, random_module, random_morphism, \
    random_composable_pair, random_complex
from .suites import SUITES, SuiteReport, run_suite
