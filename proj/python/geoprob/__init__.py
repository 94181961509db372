"""Geometric probability laboratory.

Exact probabilities for random convex hulls, positive solutions of random
linear systems, random subspaces and random zero-sum games, together with
LP-backed geometric oracles and a seeded Monte Carlo harness, all computed
by the C++ core.
"""

from geoprob._core import (  # noqa: F401
    __version__,
    apply_sign_flips,
    binom,
    count_regions,
    estimate,
    favorable_flip_count,
    homogeneous_positive_solution,
    in_common_halfspace,
    inhomogeneous_positive_solution,
    least_m_histogram,
    origin_in_hull,
    p_exact,
    positive_io,
    regions,
    regions_by_recurrence,
    row_player_favored,
    sample_cloud,
    scenario_probability,
    solve_game,
    split_counts,
    step_distribution,
    subspace_contains_positive,
    wilson_interval,
    witness_signs,
)

__all__ = [
    "__version__",
    "apply_sign_flips",
    "binom",
    "count_regions",
    "estimate",
    "favorable_flip_count",
    "homogeneous_positive_solution",
    "in_common_halfspace",
    "inhomogeneous_positive_solution",
    "least_m_histogram",
    "origin_in_hull",
    "p_exact",
    "positive_io",
    "regions",
    "regions_by_recurrence",
    "row_player_favored",
    "sample_cloud",
    "scenario_probability",
    "solve_game",
    "split_counts",
    "step_distribution",
    "subspace_contains_positive",
    "wilson_interval",
    "witness_signs",
]
