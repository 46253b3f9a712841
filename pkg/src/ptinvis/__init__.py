"""Exact scattering and invisibility solvers for a two-layer complex slab."""

from .core import (
    DEFAULT_L,
    InvisibilityResiduals,
    ScatteringData,
    Side,
    SlabConfig,
    TransferMatrix,
    aux_quantities,
    classify,
    invisibility_residuals,
    parity,
    pt_transform,
    scattering_data,
    time_reverse,
    transfer_matrix,
    transfer_matrices,
    verify_pt_matrix_rule,
    wavelength_of,
)
from .errors import (
    BranchError,
    DomainError,
    PTInvisError,
    RangeError,
    ResolutionError,
    SingularPrefactorError,
    SingularSystemError,
    SpecError,
    SpectralSingularityError,
)

__version__ = "0.1.0"
