"""Smith normal form over the integers and homology of 2-dimensional Delta-complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .delta import DeltaComplex, boundary_matrix, euler_characteristic, exact_matmul

__all__ = [
    "AbelianGroup",
    "SNFResult",
    "betti_and_torsion_summary",
    "homology",
    "invariant_factors",
    "smith_normal_form",
]


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion coefficients must be >= 2, got {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass
class SNFResult:
    S: np.ndarray
    U: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None
    diagonal: tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return sum(1 for v in self.diagonal if v != 0)


def _as_object_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        if A.size == 0:
            A = A.reshape(0, 0)
        else:
            raise ValueError(f"expected a 2-d integer matrix, got shape {A.shape}")
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        if int(v) != v:
            raise ValueError(f"non-integer entry {v!r} at {idx}")
        out[idx] = int(v)
    return out


def _identity(n: int) -> np.ndarray:
    I = np.zeros((n, n), dtype=object)
    I[...] = 0
    for i in range(n):
        I[i, i] = 1
    return I


def _smallest_nonzero(block: np.ndarray):
    rows, cols = np.nonzero(block)
    if len(rows) == 0:
        return None
    mags = np.abs(block[rows, cols])
    k = int(np.argmin(mags))
    return int(rows[k]), int(cols[k])


def smith_normal_form(M, with_transforms: bool = True) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``S`` with non-negative diagonal ``d1 | d2 | ...`` and, when
    ``with_transforms`` is set, unimodular ``U``, ``V`` with ``U @ M @ V == S``.
    The identity is checked exactly before returning.

    Pivots are chosen with the smallest absolute value in the remaining
    block; all arithmetic is on Python integers.
    """
    A = _as_object_matrix(M)
    m, n = A.shape
    U = _identity(m) if with_transforms else None
    V = _identity(n) if with_transforms else None

    def swap_rows(i, j):
        if i != j:
            A[[i, j], :] = A[[j, i], :]
            if U is not None:
                U[[i, j], :] = U[[j, i], :]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            if V is not None:
                V[:, [i, j]] = V[:, [j, i]]

    for t in range(min(m, n)):
        loc = _smallest_nonzero(A[t:, t:])
        if loc is None:
            break
        swap_rows(t, t + loc[0])
        swap_cols(t, t + loc[1])
        while True:
            p = A[t, t]
            # clear column t below the pivot
            col = A[t + 1:, t]
            rows = np.nonzero(col)[0]
            if len(rows):
                q = col[rows] // p
                A[t + 1 + rows, t:] -= np.outer(q, A[t, t:])
                if U is not None:
                    U[t + 1 + rows, :] -= np.outer(q, U[t, :])
            # clear row t right of the pivot
            row = A[t, t + 1:]
            cols = np.nonzero(row)[0]
            if len(cols):
                q = row[cols] // p
                A[t:, t + 1 + cols] -= np.outer(A[t:, t], q)
                if V is not None:
                    V[:, t + 1 + cols] -= np.outer(V[:, t], q)
            col_left = np.nonzero(A[t + 1:, t])[0]
            row_left = np.nonzero(A[t, t + 1:])[0]
            if len(col_left) or len(row_left):
                # a remainder smaller than the pivot survived; move it to (t, t)
                best = None
                for i in col_left:
                    v = abs(A[t + 1 + i, t])
                    if best is None or v < best[0]:
                        best = (v, t + 1 + int(i), t)
                for j in row_left:
                    v = abs(A[t, t + 1 + j])
                    if best is None or v < best[0]:
                        best = (v, t, t + 1 + int(j))
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            if p == 1 or p == -1:
                break
            rest = A[t + 1:, t + 1:]
            bad = np.nonzero(rest % p)
            if len(bad[0]):
                # pivot must divide the remaining block: fold an offending row in
                i = t + 1 + int(bad[0][0])
                A[t, :] += A[i, :]
                if U is not None:
                    U[t, :] += U[i, :]
                continue
            break
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if U is not None:
                U[t, :] = -U[t, :]

    diag = tuple(int(A[i, i]) for i in range(min(m, n)))
    if with_transforms:
        if not np.array_equal(exact_matmul(exact_matmul(U, _as_object_matrix(M)), V), A):
            raise ArithmeticError("Smith normal form check U @ M @ V == S failed")
    return SNFResult(S=A, U=U, V=V, diagonal=diag)


def invariant_factors(M) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form of ``M``."""
    return tuple(v for v in smith_normal_form(M, with_transforms=False).diagonal if v != 0)


def homology(complex: DeltaComplex) -> tuple[AbelianGroup, AbelianGroup, AbelianGroup]:
    """Integral homology ``(H0, H1, H2)``."""
    f1 = invariant_factors(boundary_matrix(complex, 1))
    f2 = invariant_factors(boundary_matrix(complex, 2))
    r1, r2 = len(f1), len(f2)
    return (
        AbelianGroup(complex.n0 - r1, tuple(v for v in f1 if v > 1)),
        AbelianGroup(complex.n1 - r1 - r2, tuple(v for v in f2 if v > 1)),
        AbelianGroup(complex.n2 - r2),
    )


def betti_and_torsion_summary(complex: DeltaComplex) -> dict:
    groups = homology(complex)
    betti = [g.rank for g in groups]
    chi = euler_characteristic(complex)
    alt = betti[0] - betti[1] + betti[2]
    lines = [f"cells: {complex.n0} / {complex.n1} / {complex.n2}"]
    lines += [f"H{i} = {g}" for i, g in enumerate(groups)]
    lines.append(f"euler characteristic: {chi} (b0 - b1 + b2 = {alt})")
    return {
        "cells": list(complex.counts),
        "homology": [g.as_dict() for g in groups],
        "groups": [str(g) for g in groups],
        "betti": betti,
        "torsion": [list(g.torsion) for g in groups],
        "euler_characteristic": chi,
        "euler_consistent": chi == alt,
        "text": "\n".join(lines),
    }
