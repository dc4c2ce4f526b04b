"""Executable inequality checks over seeded random matrix families."""

from numrad.inequalities.checks import (
    CHECK_IDS, REGISTRY, AuditStats, CheckOutcome, CheckSettings, check_basic_bounds, check_cartesian_sup,
    check_commutator_lemma, check_cor_2_4, check_equality_conditions, check_lemma_offdiag, check_main_chain,
    check_prop_l1, check_prop_schatten, check_real_imag_bounds, check_remark_iii, check_remark_iv,
    check_remarks, check_thm_2_8, check_triangle_refinement,
)
from numrad.inequalities.families import Family, InstanceSpec, gen_instance, validate
from numrad.inequalities.suite import (
    SuiteConfig, TrialReport, load_config, parse_config, render_json, render_text, run_suite,
)

__all__ = [
    "CHECK_IDS", "REGISTRY", "AuditStats", "CheckOutcome", "CheckSettings", "Family", "InstanceSpec",
    "SuiteConfig", "TrialReport", "check_basic_bounds", "check_cartesian_sup", "check_commutator_lemma",
    "check_cor_2_4", "check_equality_conditions", "check_lemma_offdiag", "check_main_chain", "check_prop_l1",
    "check_prop_schatten", "check_real_imag_bounds", "check_remark_iii", "check_remark_iv", "check_remarks",
    "check_thm_2_8", "check_triangle_refinement", "gen_instance", "load_config", "parse_config",
    "render_json", "render_text", "run_suite", "validate",
]
