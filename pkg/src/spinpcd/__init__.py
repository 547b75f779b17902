"""Sign-weighted Monte Carlo for spin path-centroid distributions.

Paths are closed spherical polygons of L coherent-state labels; their
complex weights combine the spin-1/2 overlap product raised to 2s with a
Zeeman Boltzmann factor.  The histogram of the path centroid converges to
the spin quasiprobability distribution as L grows, and every Monte Carlo
estimate here is paired with an exact dense-matrix or closed-form
reference.
"""

__version__ = "0.1.0"

from .engine import (
    OBSERVABLE_RADIAL,
    OBSERVABLE_Z,
    ChiEstimate,
    RunConfig,
    RunDiagnostics,
    default_range,
    estimate_chi,
    estimate_chi_grid,
    phase_scatter,
    run_pcd,
)
from .estimators import (
    HistogramResult,
    MomentResult,
    MomentTable,
    SignProblemError,
    WeightedHistogram,
    estimate_cumulant_C,
)
from .exact import (
    hamiltonian_matrix,
    smeared_wigner_radial,
    spin_matrices,
    thermal_sz,
    trotter_chi,
    wigner_radial_moment,
    zero_locations,
)
from .geometry import centroid, loop_overlap_half, sample_uniform, spinor_components
from .model import (
    HalfInteger,
    ModelConfig,
    diagonal_symbol_spin,
    diagonal_symbol_sz2,
    hamiltonian_symbol,
    matrix_element_spin,
    path_weight,
    path_weights,
)

__all__ = [
    "__version__",
    "OBSERVABLE_RADIAL",
    "OBSERVABLE_Z",
    "ChiEstimate",
    "HalfInteger",
    "HistogramResult",
    "ModelConfig",
    "MomentResult",
    "MomentTable",
    "RunConfig",
    "RunDiagnostics",
    "SignProblemError",
    "WeightedHistogram",
    "centroid",
    "default_range",
    "diagonal_symbol_spin",
    "diagonal_symbol_sz2",
    "estimate_chi",
    "estimate_chi_grid",
    "estimate_cumulant_C",
    "hamiltonian_matrix",
    "hamiltonian_symbol",
    "loop_overlap_half",
    "matrix_element_spin",
    "path_weight",
    "path_weights",
    "phase_scatter",
    "run_pcd",
    "sample_uniform",
    "smeared_wigner_radial",
    "spin_matrices",
    "spinor_components",
    "thermal_sz",
    "trotter_chi",
    "wigner_radial_moment",
    "zero_locations",
]
