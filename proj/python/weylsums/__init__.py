"""Weyl sums, completed sums, mean-value moments, coverings and dimension bounds."""

from ._weylsums import (  # noqa: F401
    __version__,
    asymptotic_constants,
    ball_cover_count,
    box_side_lengths,
    completed_moment,
    completed_sum,
    count_superlevel_boxes,
    covering_sum_exponent,
    critical_t,
    dim_bound_simplified,
    dim_upper_bound,
    domination_check,
    dyadic_schedule,
    eval_phase,
    inner_spectrum,
    mc_moment,
    moment_exponent_fit,
    phase_sequence,
    s_of,
    singular_value_phi,
    stability_check,
    theoretical_box_bound,
    vinogradov_count,
    weyl_sum,
    weyl_sum_weighted,
)
