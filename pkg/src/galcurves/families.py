"""Smarandache curves of geodesics, asymptotic curves and lines of curvature.

Each family fixes one Darboux scalar to zero; the cases further restrict
the remaining ones:

=================  ==============================  =====================
family / case      Darboux data (kg, kn, tg)        parameters
=================  ==============================  =====================
geodesic           (0, kn, tg)                      theta0
 circular helix    (0, e, c), phase c x + c1        e > 0, c != 0, c1
 generalized helix (0, kn, d kn), phase d int kn    d != 0, kappa_integral0
 Salkowski         (0, m, tg)                       m > 0, theta0
 anti-Salkowski    (0, kn, c), phase c x + c1       c != 0, c1
asymptotic         (kg, 0, tg)                      theta0
 circular helix    (f, 0, c), phase c x + c1        f > 0, c != 0, c1
 generalized helix (kg, 0, k kg), phase k int kg    k != 0, kappa_integral0
 Salkowski         (f, 0, tg)                       f > 0, theta0
 anti-Salkowski    (kg, 0, c), phase c x + c1       c != 0, c1
curvature line     (kg, kn, 0), phase a             a
 circular helix    (a1, a2, 0), phase a             a1, a2, a
=================  ==============================  =====================

With ``kg = 0`` the relation ``tau = -tg + (kg' kn - kg kn')/k^2`` gives ``tau/kappa = -d`` for the
geodesic generalized helix (``-k`` in the asymptotic case), which is how
``d`` and ``k`` are tied to the constant torsion/curvature ratio.  Geodesic
formulas assume ``kn > 0`` and asymptotic ones ``kg > 0`` so that
``N = (0, cos, -sin)`` resp. ``(0, sin, cos)`` of the phase.

Antiderivatives that have a closed form (``int e cos(cx + c1)`` etc.) use
it; the profile returned by :func:`resolve_profile` carries matching start
constants so the general construction reproduces the same curves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import SpecError
from .expr import BinOp, Expression, Num
from .quadrature import Grid, SampledFunction, cumulative_simpson
from .smarandache import FRENET_KINDS, SmarandacheKind
from .frames import SampledCurve
from .synthesis import CurvatureProfile, IntegrationConstants


class Family(enum.Enum):
    GEODESIC = "geodesic"
    ASYMPTOTIC = "asymptotic"
    CURVATURE_LINE = "curvature_line"


class Case(enum.Enum):
    GENERAL = "general"
    CIRCULAR_HELIX = "circular_helix"
    GENERALIZED_HELIX = "generalized_helix"
    SALKOWSKI = "salkowski"
    ANTI_SALKOWSKI = "anti_salkowski"


class CurveClass(enum.Enum):
    STRAIGHT_LINE = "straight_line"
    PLANE_CURVE = "plane_curve"
    CIRCULAR_HELIX = "circular_helix"
    GENERALIZED_HELIX = "generalized_helix"
    SALKOWSKI = "salkowski"
    ANTI_SALKOWSKI = "anti_salkowski"
    GENERAL = "general"


G, A, C = Family.GEODESIC, Family.ASYMPTOTIC, Family.CURVATURE_LINE

# (required params, optional params, required functions)
REQUIREMENTS = {
    (G, Case.GENERAL): ((), ("theta0",), ("kappa_n", "tau_g")),
    (G, Case.CIRCULAR_HELIX): (("e", "c", "c1"), (), ()),
    (G, Case.GENERALIZED_HELIX): (("d",), ("kappa_integral0",), ("kappa_n",)),
    (G, Case.SALKOWSKI): (("m",), ("theta0",), ("tau_g",)),
    (G, Case.ANTI_SALKOWSKI): (("c", "c1"), (), ("kappa_n",)),
    (A, Case.GENERAL): ((), ("theta0",), ("kappa_g", "tau_g")),
    (A, Case.CIRCULAR_HELIX): (("f", "c", "c1"), (), ()),
    (A, Case.GENERALIZED_HELIX): (("k",), ("kappa_integral0",), ("kappa_g",)),
    (A, Case.SALKOWSKI): (("f",), ("theta0",), ("tau_g",)),
    (A, Case.ANTI_SALKOWSKI): (("c", "c1"), (), ("kappa_g",)),
    (C, Case.GENERAL): (("a",), (), ("kappa_g", "kappa_n")),
    (C, Case.CIRCULAR_HELIX): (("a1", "a2", "a"), (), ()),
}
_NONZERO = ("c", "d", "k")
_POSITIVE = ("e", "m", "f")


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    case: Case
    params: Mapping[str, float] = field(default_factory=dict)
    functions: Mapping[str, Expression] = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Family(self.family))
            object.__setattr__(self, "case", Case(self.case))
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        key = (self.family, self.case)
        if key not in REQUIREMENTS:
            raise SpecError(f"no closed forms for {self.family.value} / {self.case.value}")
        required, optional, functions = REQUIREMENTS[key]
        problems = []
        for name in required:
            if name not in self.params:
                problems.append(f"missing parameter {name!r}")
        for name in self.params:
            if name not in required and name not in optional:
                problems.append(f"unexpected parameter {name!r}")
        for name in functions:
            if name not in self.functions:
                problems.append(f"missing function {name!r}")
        for name in self.functions:
            if name not in functions:
                problems.append(f"unexpected function {name!r}")
        for name, value in self.params.items():
            if not np.isfinite(value):
                problems.append(f"parameter {name!r} must be finite")
            elif name in _NONZERO and value == 0:
                problems.append(f"parameter {name!r} must be nonzero")
            elif name in _POSITIVE and value <= 0:
                problems.append(f"parameter {name!r} must be positive")
        if key == (C, Case.CIRCULAR_HELIX) and not problems:
            if self.params["a1"] == 0 and self.params["a2"] == 0:
                problems.append("a1 and a2 cannot both vanish")
        if problems:
            raise SpecError(problems)
        object.__setattr__(self, "params", {k: float(v) for k, v in self.params.items()})
        object.__setattr__(self, "functions", dict(self.functions))

    def param(self, name, default=0.0):
        return self.params.get(name, default)


def _const(value) -> Expression:
    return Expression(Num(float(value)), ("x",), repr(float(value)))


def _scaled(factor, expr: Expression) -> Expression:
    return Expression(BinOp("*", Num(float(factor)), expr.root), ("x",), f"{factor!r}*({expr.text or expr})")


def _sampled(expr: Expression, grid: Grid) -> np.ndarray:
    return np.broadcast_to(np.asarray(expr(grid.nodes), dtype=float), (grid.n,)).copy()


def _require_positive(values, what):
    bad = np.flatnonzero(values <= 0)
    if bad.size:
        raise SpecError(f"{what} must be positive on the grid (fails at node {int(bad[0])})")


def _geodesic_terms(s: FamilySpec, grid: Grid):
    """Phase, ``int kn cos(phase)`` and ``-int kn sin(phase)``."""
    x, h = grid.nodes, grid.h
    case = s.case
    if case is Case.CIRCULAR_HELIX:
        e, c, c1 = s.params["e"], s.params["c"], s.params["c1"]
        th = c * x + c1
        return th, e / c * np.sin(th), e / c * np.cos(th)
    if case is Case.GENERALIZED_HELIX:
        d = s.params["d"]
        kn = _sampled(s.functions["kappa_n"], grid)
        _require_positive(kn, "kappa_n")
        th = d * cumulative_simpson(kn, h, s.param("kappa_integral0"))
        return th, np.sin(th) / d, np.cos(th) / d
    if case is Case.SALKOWSKI:
        m = s.params["m"]
        th = cumulative_simpson(_sampled(s.functions["tau_g"], grid), h, s.param("theta0"))
        return th, m * cumulative_simpson(np.cos(th), h), -m * cumulative_simpson(np.sin(th), h)
    if case is Case.ANTI_SALKOWSKI:
        th = s.params["c"] * x + s.params["c1"]
    else:
        th = cumulative_simpson(_sampled(s.functions["tau_g"], grid), h, s.param("theta0"))
    kn = _sampled(s.functions["kappa_n"], grid)
    _require_positive(kn, "kappa_n")
    return th, cumulative_simpson(kn * np.cos(th), h), -cumulative_simpson(kn * np.sin(th), h)


def _asymptotic_terms(s: FamilySpec, grid: Grid):
    """Phase, ``int kg sin(phase)`` and ``int kg cos(phase)``."""
    x, h = grid.nodes, grid.h
    case = s.case
    if case is Case.CIRCULAR_HELIX:
        f, c, c1 = s.params["f"], s.params["c"], s.params["c1"]
        th = c * x + c1
        return th, -f / c * np.cos(th), f / c * np.sin(th)
    if case is Case.GENERALIZED_HELIX:
        # tg = k kg gives int kg sin(k int kg) = -cos(.)/k, the analogue of
        # the 1/d factor in the geodesic case; at k = 1 this reduces to the
        # coefficient-free form.
        k = s.params["k"]
        kg = _sampled(s.functions["kappa_g"], grid)
        _require_positive(kg, "kappa_g")
        th = k * cumulative_simpson(kg, h, s.param("kappa_integral0"))
        return th, -np.cos(th) / k, np.sin(th) / k
    if case is Case.SALKOWSKI:
        f = s.params["f"]
        th = cumulative_simpson(_sampled(s.functions["tau_g"], grid), h, s.param("theta0"))
        return th, f * cumulative_simpson(np.sin(th), h), f * cumulative_simpson(np.cos(th), h)
    if case is Case.ANTI_SALKOWSKI:
        th = s.params["c"] * x + s.params["c1"]
    else:
        th = cumulative_simpson(_sampled(s.functions["tau_g"], grid), h, s.param("theta0"))
    kg = _sampled(s.functions["kappa_g"], grid)
    _require_positive(kg, "kappa_g")
    return th, cumulative_simpson(kg * np.sin(th), h), cumulative_simpson(kg * np.cos(th), h)


def _curvature_line_terms(s: FamilySpec, grid: Grid):
    """Rotated curvatures ``P, R``, their integrals and ``sqrt(kg^2 + kn^2)``."""
    x, h = grid.nodes, grid.h
    a = s.params["a"]
    sa, ca = np.sin(a), np.cos(a)
    if s.case is Case.CIRCULAR_HELIX:
        a1, a2 = s.params["a1"], s.params["a2"]
        P = a1 * sa + a2 * ca
        R = a1 * ca - a2 * sa
        ones = np.ones(grid.n)
        return P * ones, R * ones, P * x, R * x, np.hypot(a1, a2) * ones
    kg = _sampled(s.functions["kappa_g"], grid)
    kn = _sampled(s.functions["kappa_n"], grid)
    P = kg * sa + kn * ca
    R = kg * ca - kn * sa
    return P, R, cumulative_simpson(P, h), cumulative_simpson(R, h), np.hypot(kg, kn)


def resolve_profile(s: FamilySpec, grid: Grid) -> CurvatureProfile:
    """Concrete Darboux data and start constants for a family case."""
    p, fn = s.params, s.functions
    zero = _const(0.0)
    if s.family is Family.CURVATURE_LINE:
        if s.case is Case.CIRCULAR_HELIX:
            kg, kn = _const(p["a1"]), _const(p["a2"])
        else:
            kg, kn = fn["kappa_g"], fn["kappa_n"]
        P, R, IP, IR, _ = _curvature_line_terms(s, grid)
        consts = IntegrationConstants(theta0=p["a"], tangent_y=float(IP[0]), tangent_z=float(IR[0]))
        return CurvatureProfile(kg, kn, zero, grid, consts)

    if s.family is Family.GEODESIC:
        th, i1, i2 = _geodesic_terms(s, grid)
        kg = zero
        kn = {
            Case.CIRCULAR_HELIX: lambda: _const(p["e"]),
            Case.SALKOWSKI: lambda: _const(p["m"]),
        }.get(s.case, lambda: fn["kappa_n"])()
        tg = {
            Case.CIRCULAR_HELIX: lambda: _const(p["c"]),
            Case.ANTI_SALKOWSKI: lambda: _const(p["c"]),
            Case.GENERALIZED_HELIX: lambda: _scaled(p["d"], fn["kappa_n"]),
        }.get(s.case, lambda: fn["tau_g"])()
    else:
        th, i1, i2 = _asymptotic_terms(s, grid)
        kn = zero
        kg = {
            Case.CIRCULAR_HELIX: lambda: _const(p["f"]),
            Case.SALKOWSKI: lambda: _const(p["f"]),
        }.get(s.case, lambda: fn["kappa_g"])()
        tg = {
            Case.CIRCULAR_HELIX: lambda: _const(p["c"]),
            Case.ANTI_SALKOWSKI: lambda: _const(p["c"]),
            Case.GENERALIZED_HELIX: lambda: _scaled(p["k"], fn["kappa_g"]),
        }.get(s.case, lambda: fn["tau_g"])()
    consts = IntegrationConstants(theta0=float(th[0]), tangent_y=float(i1[0]), tangent_z=float(i2[0]))
    return CurvatureProfile(kg, kn, tg, grid, consts)


def family_smarandache(s: FamilySpec, grid: Grid, kind) -> SampledCurve:
    """TN, TB or TNB curve of a family case from its own closed form."""
    kind = SmarandacheKind.coerce(kind)
    if kind not in FRENET_KINDS:
        raise SpecError(f"family closed forms exist for TN, TB, TNB only, not {kind.value}")
    TN, TB = SmarandacheKind.TN, SmarandacheKind.TB
    if s.family is Family.GEODESIC:
        th, i1, i2 = _geodesic_terms(s, grid)
        sn, cs = np.sin(th), np.cos(th)
        if kind is TN:
            y, z = i1 + cs, i2 - sn
        elif kind is TB:
            y, z = i1 + sn, i2 + cs
        else:
            y, z = i1 + cs + sn, i2 + cs - sn
    elif s.family is Family.ASYMPTOTIC:
        th, i1, i2 = _asymptotic_terms(s, grid)
        sn, cs = np.sin(th), np.cos(th)
        if kind is TN:
            y, z = i1 + sn, i2 + cs
        elif kind is TB:
            y, z = i1 - cs, i2 + sn
        else:
            y, z = i1 + sn - cs, i2 + cs + sn
    else:
        P, R, IP, IR, k = _curvature_line_terms(s, grid)
        if kind is TN:
            y, z = IP + P / k, IR + R / k
        elif kind is TB:
            y, z = IP - R / k, IR + P / k
        else:
            y, z = IP + (P - R) / k, IR + (P + R) / k
    return SampledCurve(grid, np.column_stack([np.ones(grid.n), y, z]))


def _values(f):
    return np.asarray(f.values if isinstance(f, SampledFunction) else f, dtype=float)


def _is_zero(v, tol):
    return float(np.max(np.abs(v))) <= tol


def _is_constant(v, tol):
    return float(np.max(v) - np.min(v)) <= tol * (1.0 + float(np.max(np.abs(v))))


def classify(kappa, tau, tol: float = 1e-6) -> CurveClass:
    """First matching row of the curvature/torsion classification table.

    Rows are tried in order: straight line, plane curve, circular helix,
    generalized helix, Salkowski, anti-Salkowski.  A circular helix needs
    constant positive curvature and constant nonzero torsion; the torsion
    sign depends on orientation conventions, so it is not required to be
    positive.
    """
    k = _values(kappa)
    t = _values(tau)
    if k.shape != t.shape:
        raise ValueError("kappa and tau must share a grid")
    if _is_zero(k, tol):
        return CurveClass.STRAIGHT_LINE
    if _is_zero(t, tol):
        return CurveClass.PLANE_CURVE
    k_const = _is_constant(k, tol)
    t_const = _is_constant(t, tol)
    if k_const and t_const:
        return CurveClass.CIRCULAR_HELIX
    if np.all(k > 0) and _is_constant(t / k, tol):
        return CurveClass.GENERALIZED_HELIX
    if k_const:
        return CurveClass.SALKOWSKI
    if t_const:
        return CurveClass.ANTI_SALKOWSKI
    return CurveClass.GENERAL
