"""Face vectors of the unit k-cube.

A face vector is an element of {-1, 0, 1}^k.  Entry +1 (-1) in position i
pins coordinate i to 1 (to 0); entry 0 leaves it free.  Lists of face
vectors are always emitted in lexicographic order with -1 < 0 < 1, which is
plain tuple order.
"""

from __future__ import annotations

import itertools
import re

from .errors import DimensionMismatch, FractalCubeError

MAX_DIMENSION = 8

_TOKEN = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")


class FaceVector(tuple):
    """Immutable k-tuple with entries in {-1, 0, 1}."""

    __slots__ = ()

    def __new__(cls, entries):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise FractalCubeError("face vector must have at least one entry")
        if any(e not in (-1, 0, 1) for e in entries):
            raise FractalCubeError(f"face vector entries must be -1, 0 or 1: {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def _trusted(cls, entries: tuple) -> "FaceVector":
        # skips validation; callers guarantee entries in {-1, 0, 1}
        return tuple.__new__(cls, entries)

    @classmethod
    def zero(cls, k: int) -> "FaceVector":
        return cls((0,) * k)

    @classmethod
    def parse(cls, token: str) -> "FaceVector":
        """Parse the "(a1,...,ak)" token; a bare "a1,...,ak" is accepted too."""
        text = token.strip()
        if not text.startswith("("):
            text = f"({text})"
        m = _TOKEN.match(text)
        if m is None:
            raise FractalCubeError(f"malformed face vector token {token!r}")
        return cls(int(x) for x in m.group(1).split(","))

    @property
    def k(self) -> int:
        return len(self)

    @property
    def support(self) -> frozenset:
        """Indices i with |alpha_i| = 1 (0-based)."""
        return frozenset(i for i, e in enumerate(self) if e)

    @property
    def zero_set(self) -> frozenset:
        return frozenset(i for i, e in enumerate(self) if not e)

    @property
    def weight(self) -> int:
        return sum(1 for e in self if e)

    def is_zero(self) -> bool:
        return not any(self)

    def __neg__(self) -> "FaceVector":
        return FaceVector(-e for e in self)

    def __add__(self, other):
        # entrywise; only meaningful for complementary vectors
        if len(other) != len(self):
            raise DimensionMismatch("face vectors of different dimension")
        return FaceVector(a + b for a, b in zip(self, other))

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self) + ")"

    def __repr__(self) -> str:
        return f"FaceVector{tuple(self)}"


def _check_k(k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= MAX_DIMENSION:
        raise FractalCubeError(f"dimension k={k!r} outside 1..{MAX_DIMENSION}")


def _same_k(a, b) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def enumerate_face_vectors(k: int) -> list[FaceVector]:
    """All 3^k face vectors in lexicographic order."""
    _check_k(k)
    return [FaceVector._trusted(t) for t in itertools.product((-1, 0, 1), repeat=k)]


def is_subface(a, b) -> bool:
    """True iff a ⊑ b: b agrees with a on every nonzero entry of a."""
    _same_k(a, b)
    return all(x == 0 or x == y for x, y in zip(a, b))


def is_complementary(a, b) -> bool:
    """True iff the supports of a and b are disjoint."""
    _same_k(a, b)
    return not any(x and y for x, y in zip(a, b))


def complementary_set(a) -> list[FaceVector]:
    a = FaceVector(a)
    choices = [(0,) if e else (-1, 0, 1) for e in a]
    return [FaceVector(t) for t in itertools.product(*choices)]


def positive_part(a) -> tuple[int, ...]:
    """Translation sending the parallel face through the origin onto the face of a."""
    return tuple(max(e, 0) for e in FaceVector(a))


def boundary_face_vectors(a) -> list[FaceVector]:
    """All strict superfaces b ⊐ a, i.e. the faces making up the boundary of face a."""
    a = FaceVector(a)
    out = [a + g for g in complementary_set(a) if not g.is_zero()]
    return sorted(out)
