"""Suffridge polynomials, their T-symmetric analogues, and numerical checks of
their univalence in the unit disk."""
from .numkit import (ConvergenceError, EvaluationOverflow, Polynomial, batch_roots,
                     derivative, evaluate, find_roots)
from .suffridge import (SuffridgeConstants, SuffridgeSpec, TSymSpec, constants,
                        derivative_factor_a, s4_coeffs, suffridge_coeffs, tsym_coeffs)
from .univalence import (BoundaryCurve, Method, UnivalenceConfig, UnivalenceReport, Verdict,
                         Witness, boundary_curve, fgamma, fgamma_sweep,
                         find_self_intersections, leading_coeff_bound,
                         quasi_extremal_check, univalence_verdict)
from .verifier import (CaseFunctions, InequalityReport, VerifyConfig, case_profile,
                       explicit_t34_check, lemma_imp_check, lemma_new_check,
                       lemma_third_check, run_checks, run_full_verification)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCurve", "CaseFunctions", "ConvergenceError", "EvaluationOverflow",
    "InequalityReport", "Method", "Polynomial", "SuffridgeConstants", "SuffridgeSpec",
    "TSymSpec", "UnivalenceConfig", "UnivalenceReport", "Verdict", "VerifyConfig", "Witness",
    "batch_roots", "boundary_curve", "case_profile", "constants", "derivative",
    "derivative_factor_a", "evaluate", "explicit_t34_check", "fgamma", "fgamma_sweep",
    "find_roots", "find_self_intersections", "leading_coeff_bound", "lemma_imp_check",
    "lemma_new_check", "lemma_third_check", "quasi_extremal_check", "run_checks",
    "run_full_verification", "s4_coeffs", "suffridge_coeffs", "tsym_coeffs",
    "univalence_verdict",
]
