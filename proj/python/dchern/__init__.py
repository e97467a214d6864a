"""Dissipative Chern lattice: damping spectra, correlation dynamics, circuit synthesis."""

from ._dchern import (
    Params,
    ValidationError,
    ResourceError,
    ComputationError,
    bloch_damping_matrix,
    bloch_damping_eigenvalues,
    real_space_damping_matrix,
    real_space_hamiltonian,
    liouvillian_gap_bloch,
    liouvillian_gap_real,
    skin_localization,
    verify_union,
    liouvillian_eigenvalues,
    deviation_series,
    classify_damping,
    wavefront_times,
    component_values,
    circuit_mapping,
    export_netlist,
    run_command,
)

__all__ = [
    "Params",
    "ValidationError",
    "ResourceError",
    "ComputationError",
    "bloch_damping_matrix",
    "bloch_damping_eigenvalues",
    "real_space_damping_matrix",
    "real_space_hamiltonian",
    "liouvillian_gap_bloch",
    "liouvillian_gap_real",
    "skin_localization",
    "verify_union",
    "liouvillian_eigenvalues",
    "deviation_series",
    "classify_damping",
    "wavefront_times",
    "component_values",
    "circuit_mapping",
    "export_netlist",
    "run_command",
]
