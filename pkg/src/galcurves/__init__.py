"""Curves in Galilean 3-space built from Darboux data, and their Smarandache curves."""

__version__ = "0.1.0"

from .errors import (
    AdmissibilityError,
    DegenerateNormal,
    EvalError,
    GalcurvesError,
    GridError,
    KappaVanishes,
    KindMismatch,
    NumericError,
    ParseError,
    ProfileIOError,
    SpecError,
    ValidationError,
)
from .expr import Expression, evaluate, parse, to_text
from .families import Case, CurveClass, Family, FamilySpec, classify, family_smarandache, resolve_profile
from .formats import CurveTable, ProfileDocument, export_csv, export_json, load_profile, load_table_json, parse_profile
from .frames import (
    DarbouxField,
    FrenetField,
    ParametricSurface,
    SampledCurve,
    compatibility_check,
    darboux_apparatus,
    frenet_apparatus,
    frenet_residuals,
)
from .galilean import GalVec3, IsometryParams, apply_isometry, cross_g, dot_g, norm_g
from .quadrature import Grid, SampledFunction, cumulative_integral, derivative, nested_integral
from .smarandache import SmarandacheKind, smarandache_closed, smarandache_direct
from .synthesis import (
    CurvatureProfile,
    IntegrationConstants,
    darboux_from_profile,
    frenet_from_profile,
    normal_components,
    position_from_profile,
)
