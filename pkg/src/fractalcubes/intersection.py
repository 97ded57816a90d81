"""Intersections F_a = K1 ∩ (K2 + a) of two fractal cubes.

The family {F_a : a in {-1,0,1}^k} satisfies a graph-directed system in
which F_a is the union of (F_b + G_ab)/n over superfaces b ⊒ a, with
G_ab = D1 ∩ (D2 + n·a - b).  This module builds that system, prunes it to
the nonempty sets, and reads off dimension, measure finiteness and
cardinality of every F_a.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .digits import DigitSet
from .errors import DimensionMismatch, FractalCubeError
from .faces import FaceVector, enumerate_face_vectors, is_subface


@dataclass(frozen=True)
class IntersectionProblem:
    D1: DigitSet
    D2: DigitSet

    def __post_init__(self):
        if self.D1.k != self.D2.k or self.D1.n != self.D2.n:
            raise DimensionMismatch(
                f"digit sets disagree: k={self.D1.k}/{self.D2.k}, n={self.D1.n}/{self.D2.n}"
            )

    @property
    def k(self) -> int:
        return self.D1.k

    @property
    def n(self) -> int:
        return self.D1.n


@dataclass(frozen=True)
class DimensionValue:
    nu: int
    n: int

    @property
    def value(self) -> float:
        return math.log(self.nu) / math.log(self.n)


@dataclass(frozen=True)
class CardinalityClass:
    kind: str  # empty | finite | countably_infinite | uncountable
    count: int | None = None

    KINDS = ("empty", "finite", "countably_infinite", "uncountable")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown cardinality class {self.kind!r}")
        if (self.kind == "finite") != (self.count is not None):
            raise ValueError("a count is given exactly for the finite class")
        if self.count is not None and self.count < 1:
            raise ValueError("finite count must be positive")

    def __str__(self):
        return f"finite({self.count})" if self.kind == "finite" else self.kind


EMPTY = CardinalityClass("empty")
COUNTABLY_INFINITE = CardinalityClass("countably_infinite")
UNCOUNTABLE = CardinalityClass("uncountable")


def _check(P: IntersectionProblem, a) -> FaceVector:
    a = FaceVector(a)
    if len(a) != P.k:
        raise DimensionMismatch(f"face vector {a} has dimension {len(a)}, problem has {P.k}")
    return a


def _shifted_intersection(P: IntersectionProblem, shift) -> tuple:
    """D1 ∩ (D2 + shift) as a sorted digit tuple."""
    out = []
    for d in P.D1.digits:
        if tuple(c - s for c, s in zip(d, shift)) in P.D2:
            out.append(d)
    return tuple(out)


def g_set(P: IntersectionProblem, a) -> tuple:
    """Loop digits G_a = D1 ∩ (D2 + (n-1)a)."""
    a = _check(P, a)
    return _shifted_intersection(P, [(P.n - 1) * e for e in a])


def g_edge_set(P: IntersectionProblem, a, b) -> tuple:
    """Edge digits G_ab = D1 ∩ (D2 + n·a - b), defined for a ⊑ b."""
    a, b = _check(P, a), _check(P, b)
    if not is_subface(a, b):
        raise FractalCubeError(f"{a} is not a subface of {b}")
    return _shifted_intersection(P, [P.n * x - y for x, y in zip(a, b)])


@dataclass
class StructureGraph:
    """Pruned structure graph.

    ``loops`` holds G_a for every face vector (possibly empty, also for dead
    vertices); ``edges`` maps (a, b), a ⊏ b, to a nonempty G_ab whose target
    F_b is nonempty.
    """

    problem: IntersectionProblem
    loops: dict
    alive: dict
    edges: dict
    _succ: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        succ = {a: [] for a in self.loops}
        for a, b in self.edges:
            succ[a].append(b)
        self._succ = {a: sorted(bs) for a, bs in succ.items()}

    @property
    def n(self) -> int:
        return self.problem.n

    @property
    def vertices(self) -> list:
        return sorted(a for a, ok in self.alive.items() if ok)

    def loop_edges(self) -> list:
        return [(a, a, self.loops[a]) for a in self.vertices if self.loops[a]]

    def edge_list(self) -> list:
        return [(a, b, self.edges[a, b]) for a, b in sorted(self.edges)]

    def successors(self, a) -> list:
        return self._succ[FaceVector(a)]

    def is_maximal(self, a) -> bool:
        return not self._succ[FaceVector(a)]

    def summary(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "loops": len(self.loop_edges()),
        }

    def require_alive(self, a) -> FaceVector:
        a = _check(self.problem, a)
        if not self.alive[a]:
            raise FractalCubeError(f"F_{a} is empty")
        return a

    @cached_property
    def _reach(self) -> dict:
        # every edge strictly increases the support, so process by decreasing weight
        out = {}
        for a in sorted(self.vertices, key=lambda v: -v.weight):
            r = {a}
            for b in self._succ[a]:
                r |= out[b]
            out[a] = frozenset(r)
        return out


def _coordinate_options(n: int) -> dict:
    """For an offset d1_i - d2_i, the (a_i, b_i) pairs with a_i ⊑ b_i and n·a_i - b_i equal to it."""
    opts = {}
    for ai, bi in [(0, -1), (0, 0), (0, 1), (1, 1), (-1, -1)]:
        opts.setdefault(n * ai - bi, []).append((ai, bi))
    return opts


def all_g_sets(P: IntersectionProblem) -> dict:
    """Every nonempty G_ab (loops as (a, a)) in one pass over digit pairs.

    Only digit pairs whose offset d1 - d2 is in {0, ±1, ±(n-1)} per
    coordinate contribute, so each d1 is matched against at most 5^k
    candidates, typically 3^k.
    """
    n, k = P.n, P.k
    opts = _coordinate_options(n)
    offsets = sorted(opts)
    acc = {}
    for d1 in P.D1.digits:
        per_coord = [[o for o in offsets if 0 <= c - o < n] for c in d1]
        for delta in itertools.product(*per_coord):
            d2 = tuple(c - o for c, o in zip(d1, delta))
            if d2 not in P.D2:
                continue
            for choice in itertools.product(*(opts[o] for o in delta)):
                acc.setdefault(tuple(zip(*choice)), set()).add(d1)
    mk = FaceVector._trusted
    return {(mk(a), mk(b)): tuple(sorted(v)) for (a, b), v in acc.items()}


def build_structure_graph(P: IntersectionProblem) -> StructureGraph:
    faces = enumerate_face_vectors(P.k)
    bulk = all_g_sets(P)
    loops = {a: bulk.get((a, a), ()) for a in faces}
    raw = {(a, b): g for (a, b), g in bulk.items() if a != b}
    targets = {}
    for a, b in raw:
        targets.setdefault(a, []).append(b)
    alive = {}
    # b ⊐ a has larger support, so it is settled before a
    for a in sorted(faces, key=lambda v: -v.weight):
        alive[a] = bool(loops[a]) or any(alive[b] for b in targets.get(a, ()))
    edges = {(a, b): g for (a, b), g in raw.items() if alive[a] and alive[b]}
    return StructureGraph(P, loops, {a: alive[a] for a in faces}, edges)


def reachable(G: StructureGraph, a) -> frozenset:
    """All b with b ≽ a (a directed path from a to b, a itself included)."""
    a = G.require_alive(a)
    return G._reach[a]


def dimension(G: StructureGraph, a) -> DimensionValue:
    a = G.require_alive(a)
    nu = max(len(G.loops[b]) for b in G._reach[a])
    return DimensionValue(nu, G.n)


def maximizers(G: StructureGraph, a) -> list:
    nu = dimension(G, a).nu
    return sorted(b for b in G._reach[a] if len(G.loops[b]) == nu)


def measure_finite(G: StructureGraph, a) -> bool:
    """True iff no two distinct maximizers of #G_b are joined by a path."""
    m = maximizers(G, a)
    return not any(c != b and c in G._reach[b] for b in m for c in m)


def chain_count(G: StructureGraph, a) -> int:
    """Sum over chains a -> ... -> maximal b of the products of #G along the chain."""
    memo = {}
    for v in sorted(G._reach[G.require_alive(a)], key=lambda v: -v.weight):
        if G.is_maximal(v):
            memo[v] = len(G.loops[v])
        else:
            memo[v] = sum(len(G.edges[v, w]) * memo[w] for w in G.successors(v))
    return memo[a]


def classify_cardinality(G: StructureGraph, a) -> CardinalityClass:
    a = _check(G.problem, a)
    if not G.alive[a]:
        return EMPTY
    if dimension(G, a).nu >= 2:
        return UNCOUNTABLE
    if measure_finite(G, a):
        # chains can land on the same point of a shared cell boundary, so the
        # count is taken from the distinct points, not from chain_count
        return CardinalityClass("finite", len(_finite_points(G, a)))
    return COUNTABLY_INFINITE


def paper_criterion(G: StructureGraph, a) -> str | None:
    """Which of the literal sufficient conditions for cardinality holds at a.

    Returns "singleton", "finite", "uncountable", "countable" (checked in that
    order) or None for dead vertices.
    """
    a = _check(G.problem, a)
    if not G.alive[a]:
        return None
    reach = G._reach[a]
    sizes = {b: len(G.loops[b]) for b in reach}
    maximal = [b for b in reach if G.is_maximal(b)]
    finite_shape = all(sizes[b] == 1 for b in maximal) and all(
        sizes[b] == 0 for b in reach if not G.is_maximal(b)
    )
    chain = all(len(G.successors(b)) <= 1 for b in reach) and all(
        len(G.edges[b, c]) == 1 for b in reach for c in G.successors(b)
    )
    if finite_shape and chain:
        return "singleton"
    if finite_shape:
        return "finite"
    if max(sizes.values()) > 1:
        return "uncountable"
    return "countable"


def enumerate_finite_points(G: StructureGraph, a) -> list:
    """Exact points of a finite F_a, sorted, as tuples of Fractions."""
    cls = classify_cardinality(G, a)
    if cls.kind != "finite":
        raise FractalCubeError(f"F_{FaceVector(a)} is {cls}, not finite")
    return _finite_points(G, a)


def _finite_points(G: StructureGraph, a) -> list:
    a = FaceVector(a)
    n = G.n
    memo = {}
    for v in sorted(G._reach[a], key=lambda v: -v.weight):
        if G.is_maximal(v):
            (g,) = G.loops[v]
            memo[v] = {tuple(Fraction(c, n - 1) for c in g)}
        else:
            pts = set()
            for w in G.successors(v):
                for g in G.edges[v, w]:
                    pts.update(tuple((x + c) / n for x, c in zip(p, g)) for p in memo[w])
            memo[v] = pts
    return sorted(memo[a])


@dataclass(frozen=True)
class AlphaRecord:
    alpha: FaceVector
    alive: bool
    dimension: DimensionValue | None
    measure_finite: bool | None
    cardinality: CardinalityClass
    criterion: str | None
    points: list | None
    chain_sum: int | None = None


def analyze_alpha(G: StructureGraph, a) -> AlphaRecord:
    a = _check(G.problem, a)
    if not G.alive[a]:
        return AlphaRecord(a, False, None, None, EMPTY, None, None)
    cls = classify_cardinality(G, a)
    finite = cls.kind == "finite"
    return AlphaRecord(
        a, True, dimension(G, a), measure_finite(G, a), cls, paper_criterion(G, a),
        _finite_points(G, a) if finite else None,
        chain_count(G, a) if finite else None,
    )


@dataclass
class AnalysisReport:
    """Per-face-vector table for a pair problem or a self-intersection."""

    problem: IntersectionProblem
    mode: str  # "pair" or "self"
    graph: StructureGraph
    records: list
    properties: dict | None = None


def analyze(P: IntersectionProblem, alphas=None) -> AnalysisReport:
    G = build_structure_graph(P)
    alphas = enumerate_face_vectors(P.k) if alphas is None else [_check(P, a) for a in alphas]
    return AnalysisReport(P, "pair", G, [analyze_alpha(G, a) for a in alphas])


def _translate(rec: AlphaRecord, shift) -> AlphaRecord:
    pts = rec.points
    if pts is not None:
        pts = sorted(tuple(x - s for x, s in zip(p, shift)) for p in pts)
    return AlphaRecord(
        FaceVector(-e for e in rec.alpha), rec.alive, rec.dimension,
        rec.measure_finite, rec.cardinality, rec.criterion, pts, rec.chain_sum,
    )


def self_intersection_report(D: DigitSet, alphas=None) -> AnalysisReport:
    """Intersections of opposite faces of one cube, for all nonzero a.

    F_{-a} = F_a - a, so only one of each pair ±a is analysed; the other
    record is its translate.
    """
    P = IntersectionProblem(D, D)
    G = build_structure_graph(P)
    n = D.n
    for a in G.loops:
        expected = tuple(sorted(tuple(c - (n - 1) * e for c, e in zip(g, a)) for g in G.loops[a]))
        if G.loops[-a] != expected:
            raise AssertionError(f"loop digits at {-a} are not a translate of those at {a}")
        if G.alive[a] != G.alive[-a]:
            raise AssertionError(f"alive flags at {a} and {-a} disagree")

    nonzero = [a for a in enumerate_face_vectors(D.k) if not a.is_zero()]
    by_alpha = {}
    for a in nonzero:
        if -a in by_alpha:
            by_alpha[a] = _translate(by_alpha[-a], -a)
        else:
            by_alpha[a] = analyze_alpha(G, a)

    live = [r for r in by_alpha.values() if r.alive]
    props = {
        "one_point": all(r.cardinality == CardinalityClass("finite", 1) for r in live),
        "finite": all(r.cardinality.kind == "finite" for r in live),
        "criterion_one_point": all(r.criterion == "singleton" for r in live),
        "criterion_finite": _finite_criterion(G),
    }
    wanted = nonzero if alphas is None else [_check(P, a) for a in alphas]
    records = [by_alpha[a] for a in wanted if not a.is_zero()]
    return AnalysisReport(P, "self", G, records, props)


def _finite_criterion(G: StructureGraph) -> bool:
    """Every maximal nonzero vertex has #G = 1 and every other nonzero one #G = 0."""
    for a in G.vertices:
        if a.is_zero():
            continue
        want = 1 if G.is_maximal(a) else 0
        if len(G.loops[a]) != want:
            return False
    return True
