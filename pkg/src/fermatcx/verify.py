"""Monte-Carlo checks that the retraction is a strong deformation retraction.

Every sample draws from its own generator keyed by ``(seed, index, stream)``,
so reports do not depend on how samples are split between workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .builder import CellLabel, NotOnSkeletonError, canonical_projective, locate, realize, root_of_unity
from .retraction import lift_r2, normalize_projective, r2, sample_point, sample_rng

__all__ = [
    "BORDERS",
    "LIPSCHITZ_BOUND",
    "RetractionReport",
    "skeleton_defect",
    "time_grid",
    "verify_projective_invariance",
    "verify_retraction",
]

# generator streams per sample
_SURFACE, _FIXED, _BORDER, _PROJ = 0, 1, 2, 3

# (vanishing coordinate, region on one side, region on the other)
BORDERS = (
    (2, "+++", "++-"), (2, "-++", "-+-"), (2, "+-+", "+--"),
    (0, "+++", "-++"), (0, "++-", "-+-"), (0, "+-+", "--+"),
    (1, "+++", "+-+"), (1, "++-", "+--"), (1, "-++", "--+"),
)

# straddling pairs on the plane may move apart by at most this factor
LIPSCHITZ_BOUND = 10.0
_STRADDLE_EPS = 1e-7


@dataclass
class RetractionReport:
    degree: int
    samples: int
    tolerance: float
    max_surface_residual: float = 0.0
    max_endpoint_defect: float = 0.0
    max_identity_defect: float = 0.0
    max_joint_jump: float = 0.0
    max_fixedpoint_drift: float = 0.0
    max_border_mismatch: float = 0.0
    max_projective_mismatch: float = 0.0
    border_lipschitz: float = 0.0
    locate_failures: int = 0
    zero_direction_samples: int = 0
    evaluation_errors: int = 0
    backend: str = ""

    RESIDUALS = (
        "max_surface_residual",
        "max_endpoint_defect",
        "max_identity_defect",
        "max_joint_jump",
        "max_fixedpoint_drift",
        "max_border_mismatch",
        "max_projective_mismatch",
    )

    @property
    def failures(self) -> list[str]:
        bad = [name for name in self.RESIDUALS if not getattr(self, name) <= self.tolerance]
        if self.locate_failures:
            bad.append("locate_failures")
        if self.evaluation_errors:
            bad.append("evaluation_errors")
        if not self.border_lipschitz <= LIPSCHITZ_BOUND:
            bad.append("border_lipschitz")
        return bad

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def merge(self, other: "RetractionReport") -> "RetractionReport":
        out = RetractionReport(self.degree, self.samples + other.samples, self.tolerance,
                               backend=self.backend)
        for name in self.RESIDUALS + ("border_lipschitz",):
            setattr(out, name, max(getattr(self, name), getattr(other, name)))
        out.locate_failures = self.locate_failures + other.locate_failures
        out.zero_direction_samples = self.zero_direction_samples + other.zero_direction_samples
        out.evaluation_errors = self.evaluation_errors + other.evaluation_errors
        return out

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict
        out["failures"] = self.failures
        return out

    def format(self) -> str:
        lines = [f"degree {self.degree}, {self.samples} samples, tol {self.tolerance:g} "
                 f"[{self.backend}]"]
        for name in self.RESIDUALS:
            lines.append(f"  {name:26s} {getattr(self, name):.3e}")
        lines.append(f"  {'border_lipschitz':26s} {self.border_lipschitz:.3f} (bound {LIPSCHITZ_BOUND:g})")
        lines.append(f"  {'locate_failures':26s} {self.locate_failures}")
        lines.append(f"  {'zero_direction_samples':26s} {self.zero_direction_samples}")
        lines.append(f"  {'evaluation_errors':26s} {self.evaluation_errors}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def time_grid(steps: int) -> np.ndarray:
    """``steps`` equally spaced times in ``[0, 1]`` plus the stage joint ``1/2``."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    return np.unique(np.concatenate([np.linspace(0.0, 1.0, steps), [0.5]]))


def skeleton_defect(Y: np.ndarray, d: int) -> np.ndarray:
    """Per-row distance from satisfying the skeleton equations.

    Largest of ``|Im w^d|``, the negative part of ``Re w^d`` and
    ``|sum w^d - 1|``.
    """
    W = np.asarray(Y, dtype=np.complex128) ** d
    parts = np.concatenate([
        np.abs(W.imag),
        np.maximum(0.0, -W.real),
        np.abs(W.sum(axis=1) - 1.0)[:, None],
    ], axis=1)
    return parts.max(axis=1)


def _random_cell_point(d: int, rng: np.random.Generator):
    roots = tuple(int(v) for v in rng.integers(d, size=3))
    bary = rng.dirichlet((1.0, 1.0, 1.0))
    return realize(CellLabel("X", roots, d), bary)


def _on_ray(q: float, d: int, m: int) -> complex:
    # a d-th root of q, chosen among the d possible rays by m
    if q >= 0:
        return root_of_unity(m, d) * q ** (1.0 / d)
    return root_of_unity(m, d) * complex(math.cos(math.pi / d), math.sin(math.pi / d)) * (-q) ** (1.0 / d)


def _border_point(j: int, side: str, u: float) -> list[float]:
    """Point of the border line ``{Q_j = 0}`` inside the closure of region ``side``."""
    o1, o2 = [i for i in range(3) if i != j]
    Q = [0.0, 0.0, 0.0]
    if side[o1] == "+" and side[o2] == "+":
        Q[o1], Q[o2] = u, 1.0 - u
    elif side[o1] == "-":
        Q[o1] = -3.0 * u
        Q[o2] = 1.0 - Q[o1]
    else:
        Q[o2] = -3.0 * u
        Q[o1] = 1.0 - Q[o2]
    return Q


def _border_checks(d: int, rng: np.random.Generator) -> tuple[float, float]:
    """Formula mismatch on a random border point and straddling ratio next to it."""
    j, a, b = BORDERS[int(rng.integers(len(BORDERS)))]
    u = float(rng.uniform(0.05, 0.95))
    t = float(rng.uniform(0.0, 1.0))
    Q = _border_point(j, a, u)
    mismatch = max(abs(p - q) for p, q in zip(r2(Q, t, a), r2(Q, t, b)))
    roots = rng.integers(d, size=3)
    P = [_on_ray(q, d, int(m)) for q, m in zip(Q, roots)]
    lifted = max(abs(p - q) for p, q in zip(lift_r2(P, t, d, a), lift_r2(P, t, d, b)))
    mismatch = max(mismatch, lifted)

    # move across the border, compensating on the coordinate that stays positive
    o1, o2 = [i for i in range(3) if i != j]
    comp = o2 if Q[o2] > Q[o1] else o1
    plus, minus = list(Q), list(Q)
    plus[j] += _STRADDLE_EPS
    plus[comp] -= _STRADDLE_EPS
    minus[j] -= _STRADDLE_EPS
    minus[comp] += _STRADDLE_EPS
    dist = math.dist(plus, minus)
    ratio = math.dist(r2(plus, t), r2(minus, t)) / dist
    return mismatch, ratio


def _try_batch(report: RetractionReport, P, t, d, backend):
    # a map that raises on valid input fails the check rather than the run
    try:
        return kernels.retract_batch(P, t, d, backend)
    except (ValueError, ArithmeticError):
        report.evaluation_errors += 1
        return None


def _retraction_chunk(args) -> RetractionReport:
    d, start, stop, seed, tol, steps, backend = args
    n = stop - start
    report = RetractionReport(d, n, tol, backend=backend)
    idx = range(start, stop)
    P = np.array([sample_point(d, sample_rng(seed, i, _SURFACE)) for i in idx])
    F = np.array([_random_cell_point(d, sample_rng(seed, i, _FIXED)) for i in idx])
    grid = time_grid(steps)
    for t in grid:
        Y = _try_batch(report, P, t, d, backend)
        Z = _try_batch(report, F, t, d, backend)
        if Y is None or Z is None:
            continue
        surf = np.abs((Y**d).sum(axis=1) - 1.0).max()
        report.max_surface_residual = max(report.max_surface_residual, float(surf))
        report.max_fixedpoint_drift = max(report.max_fixedpoint_drift, float(np.abs(Z - F).max()))
        if t == 0.0:
            report.max_identity_defect = float(np.abs(Y - P).max())
        if t == 0.5:
            after = _try_batch(report, P, math.nextafter(0.5, 1.0), d, backend)
            if after is not None:
                report.max_joint_jump = float(np.abs(after - Y).max())
            report.zero_direction_samples = int((Y == 0).any(axis=1).sum())
        if t == 1.0:
            report.max_endpoint_defect = float(skeleton_defect(Y, d).max())
            for row in Y:
                try:
                    locate(row, d, tol)
                except NotOnSkeletonError:
                    report.locate_failures += 1
    for i in idx:
        mismatch, ratio = _border_checks(d, sample_rng(seed, i, _BORDER))
        report.max_border_mismatch = max(report.max_border_mismatch, mismatch)
        report.border_lipschitz = max(report.border_lipschitz, ratio)
    return report


def _chunks(n: int, workers: int, size: int = 2000):
    size = max(1, min(size, math.ceil(n / max(1, workers))))
    return [(s, min(n, s + size)) for s in range(0, n, size)]


def _run(job, args_list, workers: int):
    if workers > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, args_list))
    else:
        parts = [job(a) for a in args_list]
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out


def verify_retraction(d: int, n: int, seed: int, tol: float = 1e-8, steps: int = 64,
                      workers: int = 1, backend: str | None = None) -> RetractionReport:
    """Check the retraction contracts on ``n`` samples over a ``steps``-point time grid.

    Measured: surface residual along trajectories, skeleton membership of the
    endpoints (and that :func:`locate` accepts them), identity at ``t = 0``,
    continuity where the two stages meet, drift of points already on the
    skeleton, and agreement of neighbouring region formulas on region
    borders.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    backend = backend or kernels.BACKEND
    args = [(d, s, e, seed, tol, steps, backend) for s, e in _chunks(n, workers)]
    return _run(_retraction_chunk, args, workers)


def _roots_of_unity(d: int) -> np.ndarray:
    return np.array([root_of_unity(m, d) for m in range(d)])


def _projective_distance(A: np.ndarray, B: np.ndarray, d: int) -> np.ndarray:
    """Per-row ``min_w |B - w A|`` over d-th roots of unity ``w``."""
    diffs = [np.abs(B - w * A).max(axis=1) for w in _roots_of_unity(d)]
    return np.min(diffs, axis=0)


def _projective_chunk(args) -> RetractionReport:
    d, start, stop, seed, tol, root_order, backend = args
    report = RetractionReport(d, stop - start, tol, backend=backend)
    P, L = [], []
    for i in range(start, stop):
        rng = sample_rng(seed, i, _PROJ)
        while True:
            h = rng.standard_normal(6)
            h = (complex(h[0], h[1]), complex(h[2], h[3]), complex(h[4], h[5]))
            # stay away from the curve, where the retraction is undefined
            if abs(sum(v**d for v in h)) >= 1e-6 * sum(abs(v) ** d for v in h):
                break
        p = normalize_projective(h, d)
        k = int(rng.integers(root_order))
        P.append(p)
        L.append(complex(math.cos(2 * math.pi * k / root_order), math.sin(2 * math.pi * k / root_order)))
    P = np.array(P)
    Q = P * np.array(L)[:, None]
    worst = 0.0
    for t in np.linspace(0.0, 1.0, 9):
        A = kernels.retract_batch(P, t, d, backend)
        B = kernels.retract_batch(Q, t, d, backend)
        worst = max(worst, float(_projective_distance(A, B, d).max()))
    for a, b in zip(A, B):
        try:
            same = canonical_projective(locate(a, d, tol)) == canonical_projective(locate(b, d, tol))
        except NotOnSkeletonError:
            same = False
        if not same:
            report.locate_failures += 1
            worst = math.inf
    report.max_projective_mismatch = worst
    return report


def verify_projective_invariance(d: int, n: int, seed: int, tol: float = 1e-8,
                                 root_order: int | None = None, workers: int = 1,
                                 backend: str | None = None) -> RetractionReport:
    """Retract two representatives of the same projective point and compare.

    The second representative is the first times a random ``root_order``-th
    root of unity (``root_order = d`` by default).  Trajectories must agree up
    to a d-th root of unity, and the endpoints must lie in the same cell of
    the projective complex.  Any ``root_order`` other than ``d`` leaves the
    surface and should fail.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    backend = backend or kernels.BACKEND
    root_order = d if root_order is None else int(root_order)
    args = [(d, s, e, seed, tol, root_order, backend) for s, e in _chunks(n, workers)]
    return _run(_projective_chunk, args, workers)
