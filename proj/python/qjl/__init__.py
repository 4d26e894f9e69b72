"""Block-projection dimensionality reduction on quantum state vectors.

Thin python facade over the C++ core: seeded Haar/circuit samplers, the
block-measurement transform, analytic tail bounds, design-quality
diagnostics and the membership-query protocol simulator.
"""

from _qjl import (  # noqa: F401
    ConfigError,
    apply_circuit,
    block_probability_vector,
    block_project,
    chi_square_tail_bound,
    circuit_to_unitary,
    classical_jl,
    compute_design_params,
    design_projection_tail_bound,
    estimate_tpe_lambda,
    generate_local_random_circuit,
    haar_projection_tail_bound,
    inner_product,
    l1_distance,
    l2_norm,
    moment_bound_f,
    moment_bound_g,
    polarization_inner_product,
    quantum_jl_measure,
    run_experiment,
    run_protocol,
    sample_chi_square_sum,
    sample_gaussians,
    sample_haar_unit_vector,
    sample_haar_unitary,
    unitarity_defect,
)

__all__ = [
    "ConfigError",
    "apply_circuit",
    "block_probability_vector",
    "block_project",
    "chi_square_tail_bound",
    "circuit_to_unitary",
    "classical_jl",
    "compute_design_params",
    "design_projection_tail_bound",
    "estimate_tpe_lambda",
    "generate_local_random_circuit",
    "haar_projection_tail_bound",
    "inner_product",
    "l1_distance",
    "l2_norm",
    "moment_bound_f",
    "moment_bound_g",
    "polarization_inner_product",
    "quantum_jl_measure",
    "run_experiment",
    "run_protocol",
    "sample_chi_square_sum",
    "sample_gaussians",
    "sample_haar_unit_vector",
    "sample_haar_unitary",
    "unitarity_defect",
]
