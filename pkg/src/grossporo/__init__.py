"""Exact grossone arithmetic for Menger-sponge porosity, plus fractal water
retention curve models."""

from .errors import (
    DataError,
    DomainError,
    FitError,
    GrossporoError,
    GrossUnsupported,
    LexError,
    NonIntegerExponent,
    ParseError,
    TransformError,
)
from .geometry import (
    FractalObject,
    IterationIndex,
    SpongeQuery,
    carpet_area,
    dimension_estimate_at,
    fractal_dimension,
    menger_geometry,
)
from .grossone import (
    G,
    GrossLinear,
    GrossValue,
    NumClass,
    Ordering,
    gv_add,
    gv_classify,
    gv_cmp,
    gv_mul,
    gv_neg,
    gv_normalize,
    gv_substitute,
    render,
)
from .parser import parse, tokenize
from .porosity import porosity_classical, porosity_grossone, turcotte_order, turcotte_scaling

__version__ = "0.1.0"
