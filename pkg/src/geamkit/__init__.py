"""Generalized equiangular measurements (GEAMs) as conical 2-designs."""
from .errors import (
    DimensionMismatch,
    GeamError,
    ImpureInput,
    NoPositiveS,
    NotADesign,
    PositivityViolation,
    RangeViolation,
    UnsupportedPreset,
)
from .geam import (
    DesignParams,
    FrameSpec,
    Geam,
    GeamConfig,
    build_geam,
    check_conical_design,
    design_params,
    recover_basis,
    search_positive_S,
    validate_geam,
)
from .presets import closed_form_row, preset
from .states import DensityMatrix, SchmidtVector

__version__ = "0.1.0"
