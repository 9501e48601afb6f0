"""Vectorized numpy versions of the batched retraction kernels.

Used when the compiled ``_kernels`` extension is not available.  Mirrors
:mod:`fermatcx.retraction` step for step on arrays of shape ``(n, 3)``.
"""

import numpy as np

PI = np.pi
TWO_PI = 2.0 * np.pi
REGION_TOL = 1e-12


def lift_g_batch(w, t, d):
    w = np.asarray(w, dtype=np.complex128)
    out = w.copy()
    nz = w != 0
    theta = np.arctan2(w.imag, w.real)
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    q = theta * d / PI
    k = np.where(q > 0, np.ceil(q), 1.0)
    k = np.clip(k, 1, 2 * d)
    v = w**d
    u = v.real + 1j * ((1.0 - t) * v.imag)
    moved = nz & (u != v)
    if not moved.any():
        return out
    u, k = u[moved], k[moved]
    phi = np.arctan2(u.imag, u.real)
    odd = (k % 2) == 1
    th = np.where(odd,
                  np.where(phi >= -PI / 2, phi, phi + TWO_PI),
                  np.where(phi >= PI / 2, phi, phi + TWO_PI))
    ang = np.where(odd, th, th - PI) / d + (k - 1) * PI / d
    rho = np.abs(u) ** (1.0 / d)
    res = rho * np.cos(ang) + 1j * (rho * np.sin(ang))
    res[u == 0] = 0
    out[moved] = res
    return out


def lift_r2_batch(P, t, d):
    P = np.asarray(P, dtype=np.complex128)
    Q = (P**d).real
    neg = Q < -REGION_TOL
    nneg = neg.sum(axis=1)
    target = Q.copy()
    two = nneg == 2
    target[two] = (~neg[two]).astype(float)
    one = nneg == 1
    if one.any():
        Qo, no = Q[one], neg[one]
        denom = 1.0 - Qo[no]
        T = Qo / denom[:, None]
        T[no] = 0.0
        target[one] = T
    S = (1.0 - t) * Q + t * target
    S[nneg == 0] = Q[nneg == 0]
    m = np.abs(P)
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(m > 0, P / np.where(m > 0, m, 1.0), 1.0)
    moved = u * np.abs(S) ** (1.0 / d)
    return np.where(S == Q, P, moved)


def retract_batch(P, t, d):
    P = np.asarray(P, dtype=np.complex128)
    if t <= 0.5:
        return lift_g_batch(P, 2.0 * t, d)
    return lift_r2_batch(lift_g_batch(P, 1.0, d), 2.0 * t - 1.0, d)
