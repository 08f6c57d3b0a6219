"""Frenet and Darboux frames of sampled curves in Galilean 3-space.

All curves handled here are parametrised as ``(x, y(x), z(x))`` over a
uniform grid, so the tangent's first component is exactly 1 and every
other frame vector is isotropic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AdmissibilityError, DegenerateNormal, KappaVanishes
from .expr import Expression, parse
from .galilean import cross_g, dot_g, norm_g
from .quadrature import Grid, frozen_array, five_point_derivative

KAPPA_MIN = 1e-9
UNIT_SPEED_TOL = 1e-9
NORMAL_MIN = 1e-9
# Nodes dropped from each end before taking residual maxima.
BOUNDARY_TRIM = 2


def _check_stack(grid, name, arr):
    if arr.shape[0] != grid.n:
        raise ValueError(f"{name}: expected {grid.n} samples, got {arr.shape[0]}")


@dataclass(frozen=True)
class SampledCurve:
    grid: Grid
    points: np.ndarray

    def __post_init__(self):
        pts = frozen_array(self.points)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
        _check_stack(self.grid, "points", pts)
        object.__setattr__(self, "points", pts)


def check_unit_speed(curve: SampledCurve, tol: float = UNIT_SPEED_TOL):
    """Raise unless the curve's first coordinate reproduces the grid nodes."""
    err = np.abs(curve.points[:, 0] - curve.grid.nodes)
    bad = np.flatnonzero(err > tol)
    if bad.size:
        i = int(bad[0])
        raise AdmissibilityError(
            f"curve is not of the form (x, y(x), z(x)): first coordinate off by {err[i]:.3e} at node {i}"
        )


@dataclass(frozen=True)
class FrenetField:
    grid: Grid
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        for name in ("T", "N", "B", "kappa", "tau"):
            arr = frozen_array(getattr(self, name))
            _check_stack(self.grid, name, arr)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class DarbouxField:
    grid: Grid
    T: np.ndarray
    Q: np.ndarray
    n_vec: np.ndarray
    kappa_g: np.ndarray
    kappa_n: np.ndarray
    tau_g: np.ndarray

    def __post_init__(self):
        for name in ("T", "Q", "n_vec", "kappa_g", "kappa_n", "tau_g"):
            arr = frozen_array(getattr(self, name))
            _check_stack(self.grid, name, arr)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class ParametricSurface:
    """Surface ``phi(u, v)`` given by three expressions in ``(u, v)``."""

    x_uv: Expression
    y_uv: Expression
    z_uv: Expression

    @classmethod
    def from_strings(cls, x: str, y: str, z: str) -> "ParametricSurface":
        return cls(parse(x, ("u", "v")), parse(y, ("u", "v")), parse(z, ("u", "v")))

    def __call__(self, u, v) -> np.ndarray:
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        return np.stack([np.broadcast_to(e(u, v), u.shape) for e in (self.x_uv, self.y_uv, self.z_uv)], axis=-1)

    def partials(self, u, v, step: float = 1e-3):
        """Central 5-point differences ``(phi_u, phi_v)`` at each ``(u, v)``."""

        def d(shift):
            du, dv = shift
            f = lambda k: self(u + k * du, v + k * dv)
            return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * step)

        return d((step, 0.0)), d((0.0, step))


class FrenetResiduals(NamedTuple):
    r_T: float
    r_N: float
    r_B: float


class CompatibilityResiduals(NamedTuple):
    r_kappa: float
    r_tau: float


def _isotropic(yz):
    out = np.zeros((yz.shape[0], 3))
    out[:, 1:] = yz
    return out


def _tangent(dyz):
    out = np.ones((dyz.shape[0], 3))
    out[:, 1:] = dyz
    return out


def _check_kappa(kappa, kappa_min):
    bad = np.flatnonzero(kappa < kappa_min)
    if bad.size:
        i = int(bad[0])
        raise KappaVanishes(i, float(kappa[i]))


def frenet_apparatus(c: SampledCurve, kappa_min: float = KAPPA_MIN) -> FrenetField:
    """Frenet frame, curvature and torsion from numeric derivatives of ``c``.

    ``tau = det(g', g'', g''') / kappa**2``; since ``g''`` and ``g'''`` are
    isotropic the determinant reduces to ``y'' z''' - z'' y'''``.
    """
    check_unit_speed(c)
    h = c.grid.h
    d1 = five_point_derivative(c.points[:, 1:], h)
    d2 = five_point_derivative(d1, h)
    d3 = five_point_derivative(d2, h)
    kappa = np.hypot(d2[:, 0], d2[:, 1])
    _check_kappa(kappa, kappa_min)
    T = _tangent(d1)
    N = _isotropic(d2 / kappa[:, None])
    B = _isotropic(np.column_stack([-d2[:, 1], d2[:, 0]]) / kappa[:, None])
    tau = (d2[:, 0] * d3[:, 1] - d2[:, 1] * d3[:, 0]) / kappa**2
    return FrenetField(c.grid, T, N, B, kappa, tau)


def _trimmed_max(values, trim):
    values = np.asarray(values)
    inner = values[trim : len(values) - trim] if trim else values
    return float(np.max(inner)) if inner.size else 0.0


def frenet_residuals(f: FrenetField, trim: int = BOUNDARY_TRIM) -> FrenetResiduals:
    """Largest Galilean norms of ``T' - kN``, ``N' - tB`` and ``B' + tN``."""
    h = f.grid.h
    dT = five_point_derivative(f.T, h)
    dN = five_point_derivative(f.N, h)
    dB = five_point_derivative(f.B, h)
    k = f.kappa[:, None]
    t = f.tau[:, None]
    return FrenetResiduals(
        _trimmed_max(norm_g(dT - k * f.N), trim),
        _trimmed_max(norm_g(dN - t * f.B), trim),
        _trimmed_max(norm_g(dB + t * f.N), trim),
    )


def darboux_apparatus(
    s: ParametricSurface,
    u_of_x: Expression,
    v_of_x: Expression,
    g: Grid,
    kappa_min: float = KAPPA_MIN,
) -> DarbouxField:
    """Darboux frame of the curve ``x -> phi(u(x), v(x))`` on surface ``s``.

    The normal is ``phi_u x_G phi_v`` normalised, in parameter order, and
    ``Q = T x_G n``.  This orientation keeps ``T' = kg Q + kn n``,
    ``Q' = tg n`` consistent with ``tau = -tg + (kg' kn - kg kn')/k**2``.
    """
    x = g.nodes
    u = np.broadcast_to(u_of_x(x), x.shape)
    v = np.broadcast_to(v_of_x(x), x.shape)
    curve = SampledCurve(g, s(u, v))
    check_unit_speed(curve)

    phi_u, phi_v = s.partials(u, v)
    normal = cross_g(phi_u, phi_v)
    length = norm_g(normal)
    bad = np.flatnonzero(length < NORMAL_MIN)
    if bad.size:
        raise DegenerateNormal(int(bad[0]))
    n_vec = normal / length[:, None]

    h = g.h
    d1 = five_point_derivative(curve.points[:, 1:], h)
    d2 = five_point_derivative(d1, h)
    T = _tangent(d1)
    dT = _isotropic(d2)
    Q = cross_g(T, n_vec)
    dQ = _isotropic(five_point_derivative(Q[:, 1:], h))

    kappa_g = dot_g(dT, Q)
    kappa_n = dot_g(dT, n_vec)
    tau_g = dot_g(dQ, n_vec)
    _check_kappa(np.hypot(kappa_g, kappa_n), kappa_min)
    return DarbouxField(g, T, Q, n_vec, kappa_g, kappa_n, tau_g)


def compatibility_check(d: DarbouxField, f: FrenetField, trim: int = BOUNDARY_TRIM) -> CompatibilityResiduals:
    """Residuals of ``k^2 = kg^2 + kn^2`` and ``tau = -tg + (kg' kn - kg kn')/(kg^2 + kn^2)``."""
    if d.grid != f.grid:
        raise ValueError("Darboux and Frenet fields live on different grids")
    h = d.grid.h
    kg, kn, tg = d.kappa_g, d.kappa_n, d.tau_g
    k2 = kg**2 + kn**2
    dkg = five_point_derivative(kg, h)
    dkn = five_point_derivative(kn, h)
    tau_pred = -tg + (dkg * kn - kg * dkn) / k2
    return CompatibilityResiduals(
        _trimmed_max(np.abs(f.kappa**2 - k2), trim),
        _trimmed_max(np.abs(f.tau - tau_pred), trim),
    )
