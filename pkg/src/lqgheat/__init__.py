"""Heat-kernel experiments on Liouville-weighted torus lattices.

The pipeline: sample a discrete free field on the square torus, exponentiate
it into a normalized random measure, evolve the measure-weighted heat
equation with an implicit midpoint scheme, and extract return probabilities,
heat-ball profiles and the scaling exponent that collapses them.
"""

from .analysis import (
    LATTICE_TIME_PER_HEAT_TIME,
    CollapseReport,
    OnDiagSeries,
    ProfileEntry,
    ProfileSet,
    collapse_cost,
    default_ds_window,
    euclidean_deviation,
    euclidean_reference,
    fit_alpha,
    heat_ball_radius,
    horizontal_cut,
    on_diagonal_series,
    profiles_from_snapshots,
    spectral_dimension,
    vertical_cut,
    write_collapse_csv,
    write_ondiag_csv,
    write_profiles_csv,
)
from .config import RunConfig
from .errors import ConfigError, GridFormatError, LqgError, NumericalError
from .evolve import (
    EvolveConfig,
    Trajectory,
    cn_step,
    dense_heat_oracle,
    evolve,
    stride_schedule,
)
from .field import (
    FieldSample,
    field_variance,
    green_function,
    sample_gff,
    sample_gff_reference,
    torus_eigenvalues,
)
from .gridio import read_grid, write_grid
from .measure import (
    LatticePoint,
    LiouvilleWeights,
    high_points,
    liouville_weights,
    write_high_points_csv,
)
from .operators import (
    GeneratorContext,
    apply_generator,
    apply_laplacian,
    cn_system_apply,
    dense_cn_matrices,
    dense_laplacian,
)

__version__ = "0.1.0"

__all__ = [
    "LATTICE_TIME_PER_HEAT_TIME",
    "CollapseReport",
    "ConfigError",
    "EvolveConfig",
    "FieldSample",
    "GeneratorContext",
    "GridFormatError",
    "LatticePoint",
    "LiouvilleWeights",
    "LqgError",
    "NumericalError",
    "OnDiagSeries",
    "ProfileEntry",
    "ProfileSet",
    "RunConfig",
    "Trajectory",
    "apply_generator",
    "apply_laplacian",
    "cn_step",
    "cn_system_apply",
    "collapse_cost",
    "default_ds_window",
    "dense_cn_matrices",
    "dense_heat_oracle",
    "dense_laplacian",
    "euclidean_deviation",
    "euclidean_reference",
    "evolve",
    "field_variance",
    "fit_alpha",
    "green_function",
    "heat_ball_radius",
    "high_points",
    "horizontal_cut",
    "liouville_weights",
    "on_diagonal_series",
    "profiles_from_snapshots",
    "read_grid",
    "sample_gff",
    "sample_gff_reference",
    "spectral_dimension",
    "stride_schedule",
    "torus_eigenvalues",
    "vertical_cut",
    "write_collapse_csv",
    "write_grid",
    "write_high_points_csv",
    "write_ondiag_csv",
    "write_profiles_csv",
]
