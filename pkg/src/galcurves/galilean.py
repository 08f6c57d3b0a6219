"""Vector algebra of Galilean 3-space.

Vectors are anything array-like whose last axis has length 3, so every
function here works on a single vector or on a stack of samples of shape
``(n, 3)``.  The first component is the distinguished (non-isotropic) one.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class GalVec3(NamedTuple):
    """A point or vector of Galilean 3-space."""

    x1: float
    x2: float
    x3: float


@dataclass(frozen=True)
class IsometryParams:
    """Parameters of a Galilean isometry; all zeros is the identity."""

    a11: float = 0.0
    a21: float = 0.0
    a22: float = 0.0
    a31: float = 0.0
    a32: float = 0.0
    phi: float = 0.0


def _as_vec(v):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 3:
        raise ValueError(f"expected a trailing axis of length 3, got shape {v.shape}")
    return v


def is_isotropic(v):
    """True where the first component is exactly zero."""
    return _as_vec(v)[..., 0] == 0.0


def dot_g(v, w):
    """Galilean scalar product.

    Uses ``v1*w1`` whenever either first component is nonzero, otherwise
    the Euclidean product of the isotropic parts.  The branch test is an
    exact comparison with 0.0.
    """
    v = _as_vec(v)
    w = _as_vec(w)
    non_isotropic = (v[..., 0] != 0.0) | (w[..., 0] != 0.0)
    out = np.where(
        non_isotropic,
        v[..., 0] * w[..., 0],
        v[..., 1] * w[..., 1] + v[..., 2] * w[..., 2],
    )
    return out[()] if out.ndim == 0 else out


def cross_g(v, w):
    """Galilean cross product; the result is always isotropic."""
    v = _as_vec(v)
    w = _as_vec(w)
    v, w = np.broadcast_arrays(v, w)
    out = np.empty(v.shape)
    out[..., 0] = 0.0
    out[..., 1] = v[..., 2] * w[..., 0] - v[..., 0] * w[..., 2]
    out[..., 2] = v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]
    return out


def norm_g(v):
    """Galilean norm ``sqrt(|v . v|)``."""
    return np.sqrt(np.abs(dot_g(v, v)))


def apply_isometry(p: IsometryParams, v):
    """Map points ``v`` through the isometry ``p``."""
    v = _as_vec(v)
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    c, s = np.cos(p.phi), np.sin(p.phi)
    out = np.empty(v.shape)
    out[..., 0] = p.a11 + x
    out[..., 1] = p.a21 + p.a22 * x + y * c + z * s
    out[..., 2] = p.a31 + p.a32 * x - y * s + z * c
    return out
