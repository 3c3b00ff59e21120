"""Quantum measurement chains: reduction families, unitary dilation,
string dynamics, and filtering.

The heavy lifting lives in the compiled extension ``eventum._core``;
this package re-exports its public surface.
"""

from eventum._core import (  # noqa: F401
    ConfigError,
    Dilation,
    DilationReport,
    NondemolitionGrid,
    OutcomeSet,
    PointerShiftDilation,
    ReductionFamily,
    ReflectionReport,
    SampleResult,
    Scenario,
    SequenceDistribution,
    SequenceMass,
    Site,
    StringModel,
    Trajectory,
    ZeroProbabilityBranch,
    __version__,
    apply_reduction,
    build_free_shift,
    build_scenario,
    build_step_unitary,
    canonical_dilation,
    check_algebra_invariance,
    check_isometry,
    check_nondemolition,
    check_shift_reversal,
    commutator_norm,
    conditional_expectation,
    decohere,
    default_invariance_generators,
    dilation_block,
    evolve,
    exp_minus_i,
    extract_conditioned_state,
    filter_step,
    future_pauli_x_generator,
    heisenberg_transform,
    initial_state,
    instrument_map,
    joint_outcome_distribution,
    make_family,
    make_family_hidden,
    make_trajectory,
    nondemolition_grid,
    operation_map,
    pointer_family,
    pointer_observable,
    pointer_shift_dilation,
    posterior_step,
    prior_distribution,
    projection_eigenvalues,
    projection_family,
    reflect_and_reverse,
    reversed_family,
    run_command,
    sample_trajectories,
    scenario_names,
    spectral_norm,
    tensor_product,
    total_variation_distance,
    vacuum_persistence_residual,
    validate_completeness,
    verify_dilation,
)
