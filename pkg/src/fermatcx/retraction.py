"""Deformation retraction of the Fermat surface onto its real skeleton.

Scalar reference implementation.  The surface ``x^d + y^d + z^d = 1`` is
retracted in two stages, both lifted from the degree one plane through the
branched cover ``(x, y, z) -> (x^d, y^d, z^d)``:

1. every coordinate's d-th power is pushed onto the real axis
   (:func:`lift_r1`, built from the planar map :func:`rbar`);
2. the real powers, a point of the plane ``X + Y + Z = 1``, are pushed into
   the triangle ``X, Y, Z >= 0`` region by region (:func:`lift_r2`, built
   from :func:`r2`), while each coordinate stays on its ray.

The batched kernels in :mod:`fermatcx.kernels` follow these functions
operation for operation.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .builder import root_of_unity

__all__ = [
    "OffSurfaceError",
    "OnCurveError",
    "REGIONS",
    "f_k",
    "f_k_inv",
    "lift_g",
    "lift_r1",
    "lift_r2",
    "normalize_projective",
    "r1",
    "r2",
    "rbar",
    "region_of",
    "retract_full",
    "sample_md",
    "sector_of",
    "target_q",
]

PI = math.pi
TWO_PI = 2.0 * math.pi

# signs within this distance of zero count as non-negative
REGION_TOL = 1e-12
SURFACE_TOL = 1e-9
ANGLE_TOL = 1e-9

REGIONS = ("+++", "++-", "+-+", "-++", "+--", "-+-", "--+")


class OffSurfaceError(ValueError):
    pass


class OnCurveError(ValueError):
    pass


def _check_t(t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return t


def rbar(w: complex, t: float) -> complex:
    """Shrink the imaginary part of ``w`` by the factor ``1 - t``."""
    t = _check_t(t)
    w = complex(w)
    return complex(w.real, (1.0 - t) * w.imag)


def r1(P: Sequence[complex], t: float) -> tuple[complex, complex, complex]:
    x, y, z = (complex(v) for v in P)
    if abs(x + y + z - 1) > SURFACE_TOL:
        raise OffSurfaceError(f"x + y + z = {x + y + z!r}, expected 1")
    return (rbar(x, t), rbar(y, t), rbar(z, t))


# -- the plane X + Y + Z = 1 ------------------------------------------------

def region_of(Q: Sequence[float], tol: float = REGION_TOL, plane_tol: float = 1e-8) -> str:
    """Sign pattern of ``Q`` such as ``"++-"``; near-zero entries count as ``+``."""
    Q = [float(v) for v in Q]
    scale = max(1.0, *(abs(v) for v in Q))
    if abs(sum(Q) - 1.0) > plane_tol * scale:
        raise OffSurfaceError(f"{tuple(Q)} is not on the plane X + Y + Z = 1")
    tag = "".join("+" if v >= -tol else "-" for v in Q)
    if tag == "---":
        raise ArithmeticError(f"impossible sign pattern for {tuple(Q)}")
    return tag


def target_q(Q: Sequence[float], region: str | None = None) -> tuple[float, float, float]:
    """Endpoint in the triangle of the straight path starting at ``Q``.

    ``region`` forces the formula of a given sign pattern; by default it is
    read off ``Q``.  On a shared border the formulas of both neighbours agree.
    """
    Q = tuple(float(v) for v in Q)
    reg = region_of(Q) if region is None else region
    if reg not in REGIONS:
        raise ValueError(f"unknown region {reg!r}")
    neg = [j for j, s in enumerate(reg) if s == "-"]
    if not neg:
        return Q
    if len(neg) == 2:
        out = [0.0, 0.0, 0.0]
        out[reg.index("+")] = 1.0
        return tuple(out)
    j = neg[0]
    denom = 1.0 - Q[j]
    out = [v / denom for v in Q]
    out[j] = 0.0
    return tuple(out)


def r2(Q: Sequence[float], t: float, region: str | None = None) -> tuple[float, float, float]:
    t = _check_t(t)
    Q = tuple(float(v) for v in Q)
    reg = region_of(Q) if region is None else region
    if reg == "+++":
        return Q
    T = target_q(Q, reg)
    return tuple((1.0 - t) * q + t * p for q, p in zip(Q, T))


# -- sectors of angle pi/d and the lift of rbar -------------------------------

def sector_of(w: complex, d: int) -> int:
    """Index ``k`` in ``1..2d`` of the sector ``[(k-1)pi/d, k pi/d]`` holding ``w``.

    Points on a ray between two sectors go to the lower index, except the
    positive real axis which belongs to sector 1.
    """
    w = complex(w)
    if w == 0:
        raise ValueError("sector_of: w must be nonzero")
    theta = math.atan2(w.imag, w.real)
    if theta < 0:
        theta += TWO_PI
    q = theta * d / PI
    k = math.ceil(q) if q > 0 else 1
    return min(max(k, 1), 2 * d)


def _check_sector(d: int, k: int) -> None:
    if not 1 <= k <= 2 * d:
        raise ValueError(f"sector index {k} out of range 1..{2 * d}")


def f_k(w: complex, d: int, k: int) -> complex:
    """Map the closed upper (odd ``k``) or lower (even ``k``) half-plane onto sector ``k``."""
    _check_sector(d, k)
    w = complex(w)
    r = abs(w)
    if r == 0:
        return 0j
    phi = math.atan2(w.imag, w.real)
    if k % 2:
        theta = phi if phi >= -PI / 2 else phi + TWO_PI
        if not -ANGLE_TOL <= theta <= PI + ANGLE_TOL:
            raise ValueError(f"f_{k}: {w!r} is not in the upper half-plane")
        ang = theta / d + (k - 1) * PI / d
    else:
        theta = phi if phi >= PI / 2 else phi + TWO_PI
        if not PI - ANGLE_TOL <= theta <= TWO_PI + ANGLE_TOL:
            raise ValueError(f"f_{k}: {w!r} is not in the lower half-plane")
        ang = (theta - PI) / d + (k - 1) * PI / d
    rho = r ** (1.0 / d)
    return complex(rho * math.cos(ang), rho * math.sin(ang))


def f_k_inv(w: complex, d: int, k: int) -> complex:
    """Inverse of :func:`f_k` on sector ``k``.

    In polar form this is ``|w|^d exp(i d (theta - (k-1) pi/d))``, plus a
    half turn for even ``k``; both collapse to ``w**d``, which is evaluated
    by repeated multiplication so that powers landing on an axis do so
    exactly.
    """
    _check_sector(d, k)
    w = complex(w)
    if w == 0:
        return 0j
    lo, hi = (k - 1) * PI / d, k * PI / d
    phi = math.atan2(w.imag, w.real)
    theta = phi + TWO_PI * round(((lo + hi) / 2 - phi) / TWO_PI)
    if not lo - ANGLE_TOL <= theta <= hi + ANGLE_TOL:
        raise ValueError(f"f_{k}^-1: {w!r} is not in sector {k}")
    return w**d


def lift_g(w: complex, t: float, d: int) -> complex:
    """The d-th root of ``rbar(w**d, t)`` lying in the sector of ``w``.

    Computed as ``f_k(rbar(f_k_inv(w), t))`` with ``k = sector_of(w, d)``.
    """
    w = complex(w)
    if w == 0:
        return 0j
    k = sector_of(w, d)
    v = f_k_inv(w, d, k)
    u = rbar(v, t)
    if u == v:
        # rbar fixes v, so the conjugated map fixes w
        return w
    return f_k(u, d, k)


def _powers(P: Sequence[complex], d: int) -> list[complex]:
    return [complex(v) ** d for v in P]


def _check_surface(P, d: int, tol: float) -> list[complex]:
    powers = _powers(P, d)
    scale = max(1.0, sum(abs(p) for p in powers))
    if abs(sum(powers) - 1) > tol * scale:
        raise OffSurfaceError(f"x^d + y^d + z^d = {sum(powers)!r}, expected 1")
    return powers


def lift_r1(P: Sequence[complex], t: float, d: int) -> tuple[complex, complex, complex]:
    t = _check_t(t)
    _check_surface(P, d, SURFACE_TOL)
    return tuple(lift_g(w, t, d) for w in P)


def lift_r2(P: Sequence[complex], t: float, d: int,
            region: str | None = None) -> tuple[complex, complex, complex]:
    """Lift of :func:`r2` to points whose d-th powers are real.

    Each coordinate keeps its direction ``w / |w|`` and only the modulus of
    its power moves, following :func:`r2` applied to the real powers.
    """
    t = _check_t(t)
    P = tuple(complex(v) for v in P)
    powers = _check_surface(P, d, 1e-8)
    scale = max(1.0, sum(abs(p) for p in powers))
    for j, p in enumerate(powers):
        if abs(p.imag) > 1e-8 * scale:
            raise OffSurfaceError(f"coordinate {j}: d-th power {p!r} is not real")
    Q = tuple(p.real for p in powers)
    reg = region_of(Q) if region is None else region
    if reg == "+++" and region is None:
        return P
    S = r2(Q, t, reg)
    out = []
    for w, q, s in zip(P, Q, S):
        if s == q:
            out.append(w)
            continue
        m = abs(w)
        u = w / m if m > 0 else 1.0
        out.append(u * abs(s) ** (1.0 / d))
    return tuple(out)


def retract_full(P: Sequence[complex], t: float, d: int) -> tuple[complex, complex, complex]:
    """Both stages on ``[0, 1]``: ``lift_r1`` on the first half, ``lift_r2`` on the second."""
    t = _check_t(t)
    if t <= 0.5:
        return lift_r1(P, 2.0 * t, d)
    return lift_r2(lift_r1(P, 1.0, d), 2.0 * t - 1.0, d)


# -- sampling and projective representatives ----------------------------------

def _principal_root(c: complex, d: int) -> complex:
    return abs(c) ** (1.0 / d) * cmath.exp(1j * cmath.phase(c) / d)


def sample_point(d: int, rng: np.random.Generator) -> tuple[complex, complex, complex]:
    while True:
        g = rng.standard_normal(4)
        x, y = complex(g[0], g[1]), complex(g[2], g[3])
        c = 1 - x**d - y**d
        j = int(rng.integers(d))
        if abs(c) < 1e-6:
            continue
        z = root_of_unity(j, d) * _principal_root(c, d)
        if abs(x**d + y**d + z**d - 1) > 1e-12:
            continue
        return (x, y, z)


def sample_rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    """Generator for sample ``index``; independent of how samples are batched."""
    return np.random.default_rng([int(seed), int(index), int(stream)])


def sample_md(d: int, n: int, seed: int, start: int = 0) -> list[tuple[complex, complex, complex]]:
    """``n`` deterministic points of the surface, sample ``i`` drawn from its own stream.

    ``x`` and ``y`` have standard normal real and imaginary parts; ``z`` is a
    random d-th root of ``1 - x^d - y^d``.  Draws within ``1e-6`` of the curve,
    or whose equation residual exceeds ``1e-12``, are redrawn.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return [sample_point(d, sample_rng(seed, i)) for i in range(start, start + n)]


def normalize_projective(h: Sequence[complex], d: int) -> tuple[complex, complex, complex]:
    """Representative of ``[x:y:z]`` on the surface, scaled by the principal root."""
    h = tuple(complex(v) for v in h)
    s = sum(v**d for v in h)
    scale = sum(abs(v) ** d for v in h)
    if scale == 0:
        raise ValueError("the zero vector is not a projective point")
    if abs(s) <= 1e-12 * scale:
        raise OnCurveError(f"{h} lies on the curve x^{d} + y^{d} + z^{d} = 0")
    lam = _principal_root(1 / s, d)
    return tuple(lam * v for v in h)
