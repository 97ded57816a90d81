"""Brute-force checks that do not use the structure graph.

Cell covers: level-p cells of K are the digits of the p-th refinement
scaled by n^-p.  A level-p cell c1 of K1 *witnesses* F_a at depth p if some
level-p cell c2 of K2 + a touches it (closed cells, |c1 - c2|_inf <= 1 in
cell units).  Touching pairs are generated level by level: the children of
a non-touching pair never touch, so only touching pairs are refined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .digits import DEFAULT_MAX_CELLS, DigitSet
from .errors import FractalCubeError, GuardExceeded
from .faces import FaceVector


@dataclass(frozen=True)
class Certified:
    p: int

    def __str__(self):
        return f"certified p={self.p}"


@dataclass(frozen=True)
class Unknown:
    p_max: int

    def __str__(self):
        return f"unknown pmax={self.p_max}"


def _start(D1: DigitSet, D2: DigitSet, a) -> tuple[np.ndarray, np.ndarray]:
    a = FaceVector(a)
    if len(a) != D1.k or D1.k != D2.k or D1.n != D2.n:
        raise FractalCubeError("face vector and digit sets must share k and n")
    # level 0: the unit cube of K1 and the unit cube of K2 shifted by a
    return np.zeros((1, D1.k), np.int64), np.array([a], np.int64)


def _children(c1, c2, D1: DigitSet, D2: DigitSet, max_cells: int):
    """Refine touching pairs one level, keeping the touching children."""
    A1, A2 = D1.as_array(), D2.as_array()
    m = len(c1)
    if m * len(A1) * len(A2) > max_cells * 8:
        # block-wise to bound memory
        out1, out2 = [], []
        step = max(1, (max_cells * 8) // (len(A1) * len(A2)))
        for s in range(0, m, step):
            x1, x2 = _children(c1[s:s + step], c2[s:s + step], D1, D2, max_cells)
            out1.append(x1)
            out2.append(x2)
        return np.concatenate(out1), np.concatenate(out2)
    n = D1.n
    ch1 = (c1[:, None, None, :] * n + A1[None, :, None, :])
    ch2 = (c2[:, None, None, :] * n + A2[None, None, :, :])
    ch1, ch2 = np.broadcast_arrays(ch1, ch2)
    ch1 = ch1.reshape(-1, D1.k)
    ch2 = ch2.reshape(-1, D1.k)
    keep = np.abs(ch1 - ch2).max(axis=1) <= 1
    return ch1[keep], ch2[keep]


def adjacent_cell_counts(D1: DigitSet, D2: DigitSet, a, p_max: int,
                         max_cells: int = DEFAULT_MAX_CELLS) -> list[int]:
    """[N_1, ..., N_pmax]: number of level-p cells of K1 touching a level-p cell of K2 + a."""
    c1, c2 = _start(D1, D2, a)
    counts = []
    for _ in range(p_max):
        if len(c1):
            c1, c2 = _children(c1, c2, D1, D2, max_cells)
            if len(c1) > max_cells:
                raise GuardExceeded(
                    f"{len(c1)} touching cell pairs exceed the limit of {max_cells}"
                )
        counts.append(int(len(np.unique(c1, axis=0))) if len(c1) else 0)
    return counts


def adjacent_cell_count(D1: DigitSet, D2: DigitSet, a, p: int,
                        max_cells: int = DEFAULT_MAX_CELLS) -> int:
    if p < 1:
        raise FractalCubeError("depth p must be >= 1")
    return adjacent_cell_counts(D1, D2, a, p, max_cells)[-1]


def certify_empty(D1: DigitSet, D2: DigitSet, a, p_max: int,
                  max_cells: int = DEFAULT_MAX_CELLS):
    """Certified(p) at the first depth with no touching cells, else Unknown.

    Depth-first: one chain of touching pairs down to p_max proves N_p >= 1
    for every p <= p_max, and if none exists the deepest level reached + 1
    is the first empty level.
    """
    if p_max < 1:
        raise FractalCubeError("pmax must be >= 1")
    c1, c2 = _start(D1, D2, a)
    stack = [(c1, c2, 0)]
    deepest = 0
    expanded = 0
    while stack:
        c1, c2, depth = stack.pop()
        if depth == p_max:
            return Unknown(p_max)
        deepest = max(deepest, depth)
        x1, x2 = _children(c1, c2, D1, D2, max_cells)
        expanded += len(x1)
        if expanded > max_cells:
            raise GuardExceeded(f"emptiness search expanded more than {max_cells} cell pairs")
        for i in range(len(x1) - 1, -1, -1):
            stack.append((x1[i:i + 1], x2[i:i + 1], depth + 1))
    return Certified(deepest + 1)


def estimate_dimension(D1: DigitSet, D2: DigitSet, a, p_lo: int, p_hi: int,
                       max_cells: int = DEFAULT_MAX_CELLS) -> float:
    """Least-squares slope of ln N_p against p ln n over p_lo..p_hi."""
    if not 1 <= p_lo < p_hi:
        raise FractalCubeError("need 1 <= plo < phi")
    counts = adjacent_cell_counts(D1, D2, a, p_hi, max_cells)
    ps = np.arange(p_lo, p_hi + 1)
    ns = np.array(counts[p_lo - 1:])
    if (ns == 0).any():
        raise FractalCubeError(f"F_{FaceVector(a)} is empty: N_p = 0 at p = {int(ps[ns == 0][0])}")
    slope, _ = np.polyfit(ps * math.log(D1.n), np.log(ns), 1)
    return float(slope)


def exact_member(D: DigitSet, x) -> bool:
    """Decide x ∈ K exactly for a rational point x.

    x ∈ K iff some digit d gives n·x - d in the unit cube and in K.  All
    states share x's denominator q, so there are at most (q+1)^k of them and
    membership is the existence of a reachable cycle.
    """
    x = tuple(Fraction(c) for c in x)
    if len(x) != D.k:
        raise FractalCubeError(f"point has {len(x)} coordinates, cube has {D.k}")
    if any(c < 0 or c > 1 for c in x):
        return False
    q = math.lcm(*(c.denominator for c in x))
    start = tuple(int(c * q) for c in x)
    n = D.n
    digits = [tuple(d * q for d in dg) for dg in D.digits]

    def succ(s):
        for d in digits:
            t = tuple(n * a - b for a, b in zip(s, d))
            if all(0 <= c <= q for c in t):
                yield t

    # iterative DFS; GREY states are on the current path
    GREY, BLACK = 1, 2
    colour = {start: GREY}
    stack = [(start, succ(start))]
    while stack:
        s, it = stack[-1]
        for t in it:
            c = colour.get(t)
            if c == GREY:
                return True
            if c is None:
                colour[t] = GREY
                stack.append((t, succ(t)))
                break
        else:
            colour[s] = BLACK
            stack.pop()
    return False


def verify_point(D1: DigitSet, D2: DigitSet, a, x) -> bool:
    """x ∈ K1 ∩ (K2 + a)."""
    a = FaceVector(a)
    x = tuple(Fraction(c) for c in x)
    shifted = tuple(c - e for c, e in zip(x, a))
    if any(c < 0 or c > 1 for c in shifted):
        return False
    return exact_member(D1, x) and exact_member(D2, shifted)
