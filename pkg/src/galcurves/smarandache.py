"""TN, TB, TNB Smarandache curves and their Darboux-frame analogues TQ, Tn, TQn."""

from __future__ import annotations

import enum
from typing import Union

import numpy as np

from .errors import KindMismatch
from .frames import DarbouxField, FrenetField, SampledCurve
from .quadrature import cumulative_simpson
from .synthesis import CurvatureProfile, normal_components


class SmarandacheKind(enum.Enum):
    TN = "TN"
    TB = "TB"
    TNB = "TNB"
    TQ = "TQ"
    Tn = "Tn"
    TQn = "TQn"

    @property
    def needs_darboux(self) -> bool:
        return self in (SmarandacheKind.TQ, SmarandacheKind.Tn, SmarandacheKind.TQn)

    @classmethod
    def coerce(cls, kind) -> "SmarandacheKind":
        if isinstance(kind, cls):
            return kind
        try:
            return cls(kind)
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise KindMismatch(f"unknown Smarandache kind {kind!r}; expected one of {names}") from None


FRENET_KINDS = (SmarandacheKind.TN, SmarandacheKind.TB, SmarandacheKind.TNB)
DARBOUX_KINDS = (SmarandacheKind.TQ, SmarandacheKind.Tn, SmarandacheKind.TQn)

_SUMMANDS = {
    SmarandacheKind.TN: ("T", "N"),
    SmarandacheKind.TB: ("T", "B"),
    SmarandacheKind.TNB: ("T", "N", "B"),
    SmarandacheKind.TQ: ("T", "Q"),
    SmarandacheKind.Tn: ("T", "n_vec"),
    SmarandacheKind.TQn: ("T", "Q", "n_vec"),
}


def smarandache_direct(field: Union[FrenetField, DarbouxField], kind) -> SampledCurve:
    """Sum the frame vectors named by ``kind`` at every node."""
    kind = SmarandacheKind.coerce(kind)
    if kind.needs_darboux and not isinstance(field, DarbouxField):
        raise KindMismatch(f"{kind.value} needs a Darboux frame, got {type(field).__name__}")
    if not kind.needs_darboux and not isinstance(field, FrenetField):
        raise KindMismatch(f"{kind.value} needs a Frenet frame, got {type(field).__name__}")
    points = np.zeros((field.grid.n, 3))
    for name in _SUMMANDS[kind]:
        points = points + getattr(field, name)
    return SampledCurve(field.grid, points)


def smarandache_closed(p: CurvatureProfile, kind) -> SampledCurve:
    """Closed form in terms of ``int N1``, ``int N2`` and ``(N1, N2)/k``.

    ``int N1`` and ``int N2`` start at the profile's tangent constants so
    that the result matches the frame sum of the synthesised curve.
    """
    kind = SmarandacheKind.coerce(kind)
    if kind not in FRENET_KINDS:
        raise KindMismatch(f"no closed form for {kind.value}; use smarandache_direct on a Darboux field")
    n1, n2 = (f.values for f in normal_components(p))
    kg, kn, _ = p.samples
    kappa = np.sqrt(kg**2 + kn**2)
    int_n1 = cumulative_simpson(n1, p.grid.h, p.constants.tangent_y)
    int_n2 = cumulative_simpson(n2, p.grid.h, p.constants.tangent_z)
    if kind is SmarandacheKind.TN:
        y, z = n1, n2
    elif kind is SmarandacheKind.TB:
        y, z = -n2, n1
    else:
        y, z = n1 - n2, n1 + n2
    points = np.column_stack([np.ones(p.grid.n), int_n1 + y / kappa, int_n2 + z / kappa])
    return SampledCurve(p.grid, points)
