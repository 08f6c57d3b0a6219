"""Curves synthesised from geodesic curvature, normal curvature and geodesic torsion.

With phase ``theta = int tau_g`` the position vector is built from the
nested integrals::

    y = int int ( kg sin(theta) - kn * int tau_g sin(theta) )
    z = int int ( kg cos(theta) - kn * int tau_g cos(theta) )

evaluated literally, one cumulative integral per level.  The closed-form
Frenet frame uses the rotated curvatures::

    N1 = kg sin(theta) + kn cos(theta)
    N2 = kg cos(theta) - kn sin(theta)

The two agree when the innermost integrals start at ``-cos(theta(a))`` and
``sin(theta(a))``, i.e. when ``int tau_g sin(theta) = -cos(theta)`` and
``int tau_g cos(theta) = sin(theta)`` exactly.  Those are the defaults
used when ``inner_y``/``inner_z`` are left as ``None``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import KappaVanishes
from .expr import Expression, parse
from .frames import KAPPA_MIN, DarbouxField, FrenetField, SampledCurve
from .quadrature import Grid, SampledFunction, cumulative_simpson, five_point_derivative


@dataclass(frozen=True)
class IntegrationConstants:
    """Start values (at the left end of the grid) of every integral.

    ``theta0``
        phase ``int tau_g`` at ``a``.
    ``inner_y``, ``inner_z``
        innermost integrals ``int tau_g sin(theta)``, ``int tau_g cos(theta)``;
        ``None`` selects the values that make the synthesised curve's second
        derivative equal ``(0, N1, N2)``.
    ``tangent_y``, ``tangent_z``
        isotropic components of the tangent ``T(a)``; these are also the start
        values of ``int N1`` and ``int N2``.
    ``position_y``, ``position_z``
        isotropic components of the curve point at ``a``.
    """

    theta0: float = 0.0
    inner_y: Optional[float] = None
    inner_z: Optional[float] = None
    tangent_y: float = 0.0
    tangent_z: float = 0.0
    position_y: float = 0.0
    position_z: float = 0.0


@dataclass(frozen=True)
class CurvatureProfile:
    """Darboux data ``(kappa_g, kappa_n, tau_g)`` as functions of arc length on a grid."""

    kappa_g: Expression
    kappa_n: Expression
    tau_g: Expression
    grid: Grid
    constants: IntegrationConstants = field(default_factory=IntegrationConstants)
    kappa_min: float = KAPPA_MIN

    def __post_init__(self):
        kg, kn, _ = self.samples
        kappa = np.hypot(kg, kn)
        bad = np.flatnonzero(kappa < self.kappa_min)
        if bad.size:
            i = int(bad[0])
            raise KappaVanishes(i, float(kappa[i]))

    @classmethod
    def from_strings(cls, kappa_g: str, kappa_n: str, tau_g: str, grid: Grid, constants=None, **kw):
        return cls(
            parse(kappa_g, "x"),
            parse(kappa_n, "x"),
            parse(tau_g, "x"),
            grid,
            constants or IntegrationConstants(),
            **kw,
        )

    def with_constants(self, **changes) -> "CurvatureProfile":
        return replace(self, constants=replace(self.constants, **changes))

    @cached_property
    def samples(self):
        x = self.grid.nodes
        return tuple(
            np.broadcast_to(np.asarray(e(x), dtype=float), x.shape).copy()
            for e in (self.kappa_g, self.kappa_n, self.tau_g)
        )

    @cached_property
    def theta(self) -> np.ndarray:
        return cumulative_simpson(self.samples[2], self.grid.h, self.constants.theta0)

    @cached_property
    def inner_starts(self):
        c = self.constants
        t0 = self.theta[0]
        iy = -np.cos(t0) if c.inner_y is None else c.inner_y
        iz = np.sin(t0) if c.inner_z is None else c.inner_z
        return float(iy), float(iz)

    @cached_property
    def second_derivative(self):
        """Isotropic components of the curve's second derivative, evaluated in the nested form."""
        kg, kn, tg = self.samples
        th = self.theta
        iy0, iz0 = self.inner_starts
        inner_y = cumulative_simpson(tg * np.sin(th), self.grid.h, iy0)
        inner_z = cumulative_simpson(tg * np.cos(th), self.grid.h, iz0)
        return kg * np.sin(th) - kn * inner_y, kg * np.cos(th) - kn * inner_z

    def resolved_constants(self) -> dict:
        out = asdict(self.constants)
        out["inner_y"], out["inner_z"] = self.inner_starts
        return out


def theta(p: CurvatureProfile) -> SampledFunction:
    """The phase ``int tau_g dx`` starting at ``theta0``."""
    return SampledFunction(p.grid, p.theta)


def normal_components(p: CurvatureProfile):
    """``(N1, N2)``: the curvature pair rotated by the phase."""
    kg, kn, _ = p.samples
    s, c = np.sin(p.theta), np.cos(p.theta)
    return SampledFunction(p.grid, kg * s + kn * c), SampledFunction(p.grid, kg * c - kn * s)


def position_from_profile(p: CurvatureProfile) -> SampledCurve:
    h = p.grid.h
    c = p.constants
    gy, gz = p.second_derivative
    y = cumulative_simpson(cumulative_simpson(gy, h, c.tangent_y), h, c.position_y)
    z = cumulative_simpson(cumulative_simpson(gz, h, c.tangent_z), h, c.position_z)
    return SampledCurve(p.grid, np.column_stack([p.grid.nodes, y, z]))


def _tangent(p: CurvatureProfile) -> np.ndarray:
    h = p.grid.h
    gy, gz = p.second_derivative
    T = np.ones((p.grid.n, 3))
    T[:, 1] = cumulative_simpson(gy, h, p.constants.tangent_y)
    T[:, 2] = cumulative_simpson(gz, h, p.constants.tangent_z)
    return T


def _curvature_and_torsion(p: CurvatureProfile):
    kg, kn, tg = p.samples
    k2 = kg**2 + kn**2
    dkg = five_point_derivative(kg, p.grid.h)
    dkn = five_point_derivative(kn, p.grid.h)
    return np.sqrt(k2), -tg + (dkg * kn - kg * dkn) / k2


def frenet_from_profile(p: CurvatureProfile) -> FrenetField:
    """Frenet frame written directly in terms of the Darboux data.

    ``T`` integrates the nested-form second derivative once, ``N`` and ``B`` are
    ``(0, N1, N2)/k`` and ``(0, -N2, N1)/k``; curvature and torsion follow
    from ``k^2 = kg^2 + kn^2`` and ``tau = -tg + (kg' kn - kg kn')/k^2``.
    """
    n1, n2 = (f.values for f in normal_components(p))
    kappa, tau = _curvature_and_torsion(p)
    zeros = np.zeros(p.grid.n)
    N = np.column_stack([zeros, n1 / kappa, n2 / kappa])
    B = np.column_stack([zeros, -n2 / kappa, n1 / kappa])
    return FrenetField(p.grid, _tangent(p), N, B, kappa, tau)


def darboux_from_profile(p: CurvatureProfile) -> DarbouxField:
    """Darboux frame of the synthesised curve.

    ``Q = (0, sin theta, cos theta)`` and ``n = (0, cos theta, -sin theta)``
    satisfy ``T' = kg Q + kn n``, ``Q' = tg n``, ``n' = -tg Q``.
    """
    kg, kn, tg = p.samples
    s, c = np.sin(p.theta), np.cos(p.theta)
    zeros = np.zeros(p.grid.n)
    Q = np.column_stack([zeros, s, c])
    n_vec = np.column_stack([zeros, c, -s])
    return DarbouxField(p.grid, _tangent(p), Q, n_vec, kg, kn, tg)
