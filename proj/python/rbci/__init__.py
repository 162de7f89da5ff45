"""Exact randomization-based confidence intervals for two-arm completely
randomized experiments, computed by analytic inversion of the Fisher
randomization test."""

from ._core import (  # noqa: F401
    ConfidenceInterval,
    JumpPoint,
    PValue,
    PValueStepFunction,
    RbciError,
    ReferenceSet,
    SimulationReport,
    TDecomposition,
    __version__,
    classify_jump,
    confidence_interval,
    difference_in_means,
    enumerate_cre,
    exact_sweep_example1,
    example1_assignment,
    example1_table,
    oracle_p,
    p_function,
    p_value,
    pooled_bilinear_variance,
    run_replications,
    sample_cre,
    solve_jumps_dim,
    solve_jumps_t,
    studentized_t,
    t_decomposition,
)
