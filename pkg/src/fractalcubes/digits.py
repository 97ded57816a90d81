"""Digit sets of fractal k-cubes and their algebra.

A digit set D ⊂ {0..n-1}^k defines the attractor K of the maps
x -> (x + d)/n.  Every operation here works on the digits only; the
attractor is never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, FractalCubeError, GuardExceeded
from .faces import MAX_DIMENSION, FaceVector, enumerate_face_vectors, positive_part

DEFAULT_MAX_CELLS = 10**7


@dataclass(frozen=True)
class DigitSet:
    """Canonical digit set: digits sorted lexicographically, no duplicates.

    An empty digit tuple is legal here because faces and intersections of
    cubes can be empty; ``make_digit_set`` is the validating constructor for
    actual cubes and rejects it.
    """

    k: int
    n: int
    digits: tuple

    def __post_init__(self):
        if self.n < 2:
            raise FractalCubeError(f"order n={self.n} must be at least 2")
        canon = sorted({tuple(int(c) for c in d) for d in self.digits})
        for d in canon:
            if len(d) != self.k:
                raise DimensionMismatch(f"digit {d} does not have {self.k} coordinates")
            if any(c < 0 or c >= self.n for c in d):
                raise FractalCubeError(
                    f"digit {_fmt(d)} out of range [0,{self.n - 1}] for n={self.n}"
                )
        object.__setattr__(self, "digits", tuple(canon))

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __contains__(self, d):
        return tuple(d) in self._lookup

    @property
    def _lookup(self) -> frozenset:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.digits)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    @property
    def is_empty(self) -> bool:
        return not self.digits

    def as_array(self) -> np.ndarray:
        return np.array(self.digits, dtype=np.int64).reshape(len(self.digits), self.k)

    def fixed_point(self, d) -> tuple[Fraction, ...]:
        """Fixed point d/(n-1) of the map x -> (x + d)/n."""
        return tuple(Fraction(c, self.n - 1) for c in d)

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "digits": [list(d) for d in self.digits]}


def _fmt(d) -> str:
    return "(" + ",".join(str(c) for c in d) + ")"


def make_digit_set(k: int, n: int, digits) -> DigitSet:
    if not isinstance(k, int) or not 1 <= k <= MAX_DIMENSION:
        raise FractalCubeError(f"dimension k={k!r} outside 1..{MAX_DIMENSION}")
    if not isinstance(n, int) or n < 2:
        raise FractalCubeError(f"order n={n!r} must be an integer >= 2")
    digits = [(d,) if isinstance(d, int) else tuple(d) for d in digits]
    if not digits:
        raise FractalCubeError("digit list is empty")
    return DigitSet(k, n, tuple(digits))


def _check_face(D: DigitSet, a) -> FaceVector:
    a = FaceVector(a)
    if len(a) != D.k:
        raise DimensionMismatch(f"face vector {a} has dimension {len(a)}, digit set has {D.k}")
    return a


def face_digits(D: DigitSet, a) -> DigitSet:
    """Digits lying on the face (n-1)P_a; the digit set of K ∩ P_a."""
    a = _check_face(D, a)
    top = D.n - 1
    keep = [
        d for d in D.digits
        if all(e == 0 or (e == 1 and c == top) or (e == -1 and c == 0) for e, c in zip(a, d))
    ]
    return DigitSet(D.k, D.n, tuple(keep))


def normalize_face(Da: DigitSet, a) -> DigitSet:
    """Translate a face digit set to the origin and drop the pinned coordinates."""
    a = _check_face(Da, a)
    shift = [(Da.n - 1) * c for c in positive_part(a)]
    pinned = sorted(a.support)
    for d in Da.digits:
        if any(d[i] != shift[i] for i in pinned):
            raise FractalCubeError(f"digit {_fmt(d)} does not lie on face {a}")
    free = sorted(a.zero_set)
    return DigitSet(len(free), Da.n, tuple(tuple(d[i] for i in free) for d in Da.digits))


def project_digits(D: DigitSet, a) -> DigitSet:
    """Keep the coordinates in the support of a (projection onto its span)."""
    a = _check_face(D, a)
    if a.is_zero():
        raise FractalCubeError("projection along the zero face vector keeps no coordinates")
    kept = sorted(a.support)
    return DigitSet(len(kept), D.n, tuple(tuple(d[i] for i in kept) for d in D.digits))


def section_digits(D: DigitSet, a, d0) -> DigitSet:
    """Digits whose support coordinates equal d0; the section through d0/(n-1)."""
    a = _check_face(D, a)
    if a.is_zero():
        raise FractalCubeError("section along the zero face vector is undefined")
    kept = sorted(a.support)
    d0 = (d0,) if isinstance(d0, int) else tuple(d0)
    if len(d0) != len(kept):
        raise DimensionMismatch(f"section digit {_fmt(d0)} must have {len(kept)} coordinates")
    out = tuple(d for d in D.digits if tuple(d[i] for i in kept) == d0)
    if not out:
        raise FractalCubeError(f"section digit {_fmt(d0)} is not attained by any digit")
    return DigitSet(D.k, D.n, out)


def refine(D: DigitSet, p: int, max_cells: int = DEFAULT_MAX_CELLS) -> DigitSet:
    """p-th refinement: the same attractor written as a cube of order n^p."""
    if not isinstance(p, int) or p < 1:
        raise FractalCubeError(f"refinement depth p={p!r} must be >= 1")
    if len(D) ** p > max_cells:
        raise GuardExceeded(
            f"refinement would produce {len(D)}^{p} = {len(D) ** p} digits (limit {max_cells})"
        )
    if p == 1 or D.is_empty:
        return DigitSet(D.k, D.n ** p, D.digits)
    base = D.as_array()
    cells = base
    for _ in range(p - 1):
        cells = (cells[:, None, :] * D.n + base[None, :, :]).reshape(-1, D.k)
    return DigitSet(D.k, D.n ** p, tuple(map(tuple, cells.tolist())))


def boundary_digits(D: DigitSet) -> dict:
    """Face digit sets for every nonzero face vector (empty entries kept)."""
    return {a: face_digits(D, a) for a in enumerate_face_vectors(D.k) if not a.is_zero()}
