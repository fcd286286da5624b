"""Mean-field limit of bosons on a periodic lattice."""

from ._core import (
    ConfigError,
    SectorBasis,
    SectorError,
    evolve,
    fit_slope,
    hartree,
    initial_state,
    interaction_diagonal,
    kinetic_triplets,
    mean_field_rdm,
    potential,
    reduced_density_matrix,
    run_convergence,
    sector_dimension,
    trace_norm_distance,
)

__all__ = [
    "ConfigError",
    "SectorBasis",
    "SectorError",
    "evolve",
    "fit_slope",
    "hartree",
    "initial_state",
    "interaction_diagonal",
    "kinetic_triplets",
    "mean_field_rdm",
    "potential",
    "reduced_density_matrix",
    "run_convergence",
    "sector_dimension",
    "trace_norm_distance",
]
