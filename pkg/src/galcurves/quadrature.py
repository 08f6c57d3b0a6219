"""Cumulative integrals and derivatives on uniform grids.

Both operators are fourth order.  The array-level functions
(:func:`cumulative_simpson`, :func:`five_point_derivative`) act along axis 0
so they can process the ``(n, 3)`` sample stacks used by the frame code;
the :class:`SampledFunction` wrappers carry the grid along.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GridError


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n`` nodes on ``[a, b]``; ``n`` must be odd and >= 5."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise GridError(f"grid bounds must be finite, got [{self.a}, {self.b}]")
        if not self.b > self.a:
            raise GridError(f"grid needs b > a, got [{self.a}, {self.b}]")
        if int(self.n) != self.n or self.n < 5 or self.n % 2 == 0:
            raise GridError(f"grid sample count must be odd and >= 5, got {self.n}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n)


def frozen_array(values):
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SampledFunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = frozen_array(self.values)
        if values.shape[:1] != (self.grid.n,):
            raise GridError(f"expected {self.grid.n} samples, got {values.shape[0] if values.ndim else 0}")
        if not np.all(np.isfinite(values)):
            raise GridError("sampled values must be finite")
        object.__setattr__(self, "values", values)


def cumulative_simpson(values, h: float, c0=0.0) -> np.ndarray:
    """Running integral of ``values`` sampled with step ``h``, starting at ``c0``.

    Even nodes use composite Simpson.  Each odd node adds a half-panel
    integrated from the cubic through the four surrounding samples; a
    quadratic half-panel here leaves an odd/even sawtooth of size
    O(h^4) that third derivatives amplify to O(h).
    """
    f = np.asarray(values, dtype=float)
    n = f.shape[0]
    if n < 5 or n % 2 == 0:
        raise GridError(f"cumulative Simpson needs an odd sample count >= 5, got {n}")
    out = np.empty_like(f)
    out[0] = c0
    panels = h / 3.0 * (f[0:-2:2] + 4.0 * f[1:-1:2] + f[2::2])
    out[2::2] = c0 + np.cumsum(panels, axis=0)

    half = np.empty_like(f[1::2])
    half[0] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
    k = np.arange(1, n // 2)
    half[1:] = h / 24.0 * (-f[2 * k - 1] + 13.0 * f[2 * k] + 13.0 * f[2 * k + 1] - f[2 * k + 2])
    out[1::2] = out[0:-2:2] + half
    return out


def five_point_derivative(values, h: float) -> np.ndarray:
    """First derivative: 5-point central stencil, 5-point one-sided at the two end nodes per side."""
    f = np.asarray(values, dtype=float)
    if f.shape[0] < 5:
        raise GridError(f"5-point derivative needs at least 5 samples, got {f.shape[0]}")
    # Written in differences of samples so that constants differentiate to exactly 0.
    d = np.empty_like(f)
    d[2:-2] = (8.0 * (f[3:-1] - f[1:-3]) - (f[4:] - f[:-4])) / (12.0 * h)
    d[0] = (48.0 * (f[1] - f[0]) - 36.0 * (f[2] - f[0]) + 16.0 * (f[3] - f[0]) - 3.0 * (f[4] - f[0])) / (12.0 * h)
    d[1] = (-3.0 * (f[0] - f[1]) + 18.0 * (f[2] - f[1]) - 6.0 * (f[3] - f[1]) + (f[4] - f[1])) / (12.0 * h)
    d[-1] = -(48.0 * (f[-2] - f[-1]) - 36.0 * (f[-3] - f[-1]) + 16.0 * (f[-4] - f[-1]) - 3.0 * (f[-5] - f[-1])) / (12.0 * h)
    d[-2] = -(-3.0 * (f[-1] - f[-2]) + 18.0 * (f[-3] - f[-2]) - 6.0 * (f[-4] - f[-2]) + (f[-5] - f[-2])) / (12.0 * h)
    return d


def cumulative_integral(f: SampledFunction, c0: float = 0.0) -> SampledFunction:
    """Antiderivative of ``f`` equal to ``c0`` at the left end of the grid."""
    return SampledFunction(f.grid, cumulative_simpson(f.values, f.grid.h, c0))


def nested_integral(f: SampledFunction, depth: int, constants: Sequence[float] | None = None) -> SampledFunction:
    """Integrate ``depth`` times; ``constants[k]`` is the start value of pass ``k``.

    The innermost integral uses ``constants[0]`` and the outermost the last
    entry.  Missing constants default to zero.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if constants is None:
        constants = [0.0] * depth
    if len(constants) != depth:
        raise ValueError(f"need {depth} integration constants, got {len(constants)}")
    out = f
    for c in constants:
        out = cumulative_integral(out, c)
    return out


def derivative(f: SampledFunction) -> SampledFunction:
    return SampledFunction(f.grid, five_point_derivative(f.values, f.grid.h))


def sample(expr, grid: Grid) -> SampledFunction:
    """Evaluate a one-variable expression on every node of ``grid``."""
    values = np.broadcast_to(np.asarray(expr(grid.nodes), dtype=float), (grid.n,))
    return SampledFunction(grid, values)
