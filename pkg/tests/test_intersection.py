import math
from fractions import Fraction

import pytest

from fractalcubes import (
    CardinalityClass, FractalCubeError, IntersectionProblem, build_structure_graph,
    classify_cardinality, dimension, enumerate_face_vectors, enumerate_finite_points,
    g_edge_set, g_set, make_digit_set, measure_finite, reachable, self_intersection_report,
)
from fractalcubes.intersection import analyze, chain_count, paper_criterion
from fractalcubes.oracle import verify_point

from conftest import full_cube

F = Fraction


def direct_intersection(D1, D2, shift):
    """Brute force over all digit pairs: {d1 : d1 = d2 + shift}."""
    return sorted({d1 for d1 in D1 for d2 in D2
                   if all(a == b + s for a, b, s in zip(d1, d2, shift))})


def test_g_set_examples(ex1, carpet_self):
    assert g_set(ex1, (-1, -1)) == ((0, 0),)
    assert g_set(ex1, (0, 0)) == ()
    assert g_set(carpet_self, (1, 0)) == ((2, 0), (2, 1), (2, 2))


def test_g_sets_empty_except_corner(ex1):
    for a in enumerate_face_vectors(2):
        if a != (-1, -1):
            assert g_set(ex1, a) == ()


def test_g_edge_set_examples(ex1):
    assert g_edge_set(ex1, (-1, 0), (-1, -1)) == ((0, 2), (0, 4))
    assert len(g_edge_set(ex1, (0, 0), (-1, 0))) == 6
    assert len(g_edge_set(ex1, (0, 0), (0, -1))) == 6
    assert g_edge_set(ex1, (0, 0), (-1, -1)) == ()
    # the (0,-1) sets are the (-1,0) sets with x and y swapped
    swap = lambda s: tuple(sorted((y, x) for x, y in s))
    assert g_edge_set(ex1, (0, -1), (-1, -1)) == swap(g_edge_set(ex1, (-1, 0), (-1, -1)))
    assert g_edge_set(ex1, (0, 0), (0, -1)) == swap(g_edge_set(ex1, (0, 0), (-1, 0)))


def test_g_edge_set_matches_brute_force(ex1, carpet_self):
    for P in (ex1, carpet_self):
        n = P.n
        for a in enumerate_face_vectors(2):
            for b in enumerate_face_vectors(2):
                if all(x == 0 or x == y for x, y in zip(a, b)):
                    shift = [n * x - y for x, y in zip(a, b)]
                    assert list(g_edge_set(P, a, b)) == direct_intersection(P.D1, P.D2, shift)


def test_g_edge_diagonal_is_loop(ex1):
    for a in enumerate_face_vectors(2):
        assert g_edge_set(ex1, a, a) == g_set(ex1, a)


def test_g_edge_set_requires_subface(ex1):
    with pytest.raises(FractalCubeError):
        g_edge_set(ex1, (1, 0), (-1, 0))


def test_graph_example1(ex1):
    G = build_structure_graph(ex1)
    assert G.vertices == [(-1, -1), (-1, 0), (0, -1), (0, 0)]
    assert sorted(len(g) for _, _, g in G.edge_list()) == [2, 2, 6, 6]
    assert [(a, len(g)) for a, _, g in G.loop_edges()] == [((-1, -1), 1)]
    assert G.summary() == {"vertices": 4, "edges": 4, "loops": 1}


@pytest.mark.parametrize("k,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_graph_full_cube(k, n):
    D = full_cube(k, n)
    G = build_structure_graph(IntersectionProblem(D, D))
    assert len(G.vertices) == 3**k
    assert len(G.edges) + len(G.loop_edges()) == 5**k


@pytest.mark.parametrize("n", [3, 4, 5])
def test_graph_far_singletons(n):
    P = IntersectionProblem(make_digit_set(2, n, [(0, 0)]), make_digit_set(2, n, [(n - 1, n - 1)]))
    G = build_structure_graph(P)
    assert G.vertices == [(-1, -1)]
    assert G.edges == {}


def test_graph_edge_invariants(ex1, carpet_self, countable):
    for P in (ex1, carpet_self, countable):
        G = build_structure_graph(P)
        for (a, b), g in G.edges.items():
            assert all(x == 0 or x == y for x, y in zip(a, b)) and a != b
            assert g and set(g) <= set(P.D1.digits)
            assert G.alive[a] and G.alive[b]
        for a, ok in G.alive.items():
            has_edge = any(G.alive[b] for (x, b) in G.edges if x == a)
            assert ok == (bool(G.loops[a]) or has_edge)


def test_reachable(ex1):
    G = build_structure_graph(ex1)
    assert reachable(G, (0, 0)) == {(0, 0), (-1, 0), (0, -1), (-1, -1)}
    assert reachable(G, (-1, 0)) == {(-1, 0), (-1, -1)}
    assert reachable(G, (-1, -1)) == {(-1, -1)}
    with pytest.raises(FractalCubeError):
        reachable(G, (1, 1))


def test_dimension(ex1, carpet_self):
    G = build_structure_graph(ex1)
    d = dimension(G, (0, 0))
    assert (d.nu, d.value) == (1, 0.0)
    d = dimension(build_structure_graph(carpet_self), (1, 0))
    assert d.nu == 3 and d.value == pytest.approx(1.0, abs=1e-15)
    for k, n in [(1, 3), (2, 2), (2, 3)]:
        D = full_cube(k, n)
        d = dimension(build_structure_graph(IntersectionProblem(D, D)), (0,) * k)
        assert d.nu == n**k and d.value == pytest.approx(k, abs=1e-12)
        assert d.value == math.log(d.nu) / math.log(n)


def test_measure_finite(ex1, carpet_self, countable):
    assert measure_finite(build_structure_graph(ex1), (0, 0))
    assert not measure_finite(build_structure_graph(countable), (0,))
    assert measure_finite(build_structure_graph(carpet_self), (1, 0))


def test_countable_graph_by_hand(countable):
    assert g_set(countable, (0,)) == ((2,),)
    assert g_set(countable, (1,)) == ((2,),)
    assert g_edge_set(countable, (0,), (1,)) == ((1,),)
    G = build_structure_graph(countable)
    assert not G.alive[(-1,)]


def test_classify_example1(ex1):
    G = build_structure_graph(ex1)
    assert classify_cardinality(G, (0, 0)) == CardinalityClass("finite", 24)
    assert classify_cardinality(G, (-1, 0)) == CardinalityClass("finite", 2)
    assert classify_cardinality(G, (0, -1)) == CardinalityClass("finite", 2)
    assert classify_cardinality(G, (-1, -1)) == CardinalityClass("finite", 1)
    for a in [(1, 1), (1, 0), (0, 1), (1, -1), (-1, 1)]:
        assert classify_cardinality(G, a).kind == "empty"
    assert chain_count(G, (0, 0)) == 2 * 6 + 2 * 6


def test_classify_other(carpet_self, countable):
    assert classify_cardinality(build_structure_graph(countable), (0,)).kind == "countably_infinite"
    assert classify_cardinality(build_structure_graph(carpet_self), (1, 0)).kind == "uncountable"


def test_cardinality_class_validation():
    with pytest.raises(ValueError):
        CardinalityClass("finite")
    with pytest.raises(ValueError):
        CardinalityClass("finite", 0)
    with pytest.raises(ValueError):
        CardinalityClass("uncountable", 3)
    assert str(CardinalityClass("finite", 24)) == "finite(24)"


def test_enumerate_points_example1(ex1):
    G = build_structure_graph(ex1)
    assert enumerate_finite_points(G, (-1, -1)) == [(F(0), F(0))]
    assert enumerate_finite_points(G, (-1, 0)) == [(F(0), F(1, 3)), (F(0), F(2, 3))]
    pts = enumerate_finite_points(G, (0, 0))
    assert len(pts) == len(set(pts)) == 24
    assert all(36 % c.denominator == 0 for p in pts for c in p)
    assert all(verify_point(ex1.D1, ex1.D2, (0, 0), p) for p in pts)


def test_enumerate_points_requires_finite(countable):
    with pytest.raises(FractalCubeError):
        enumerate_finite_points(build_structure_graph(countable), (0,))


def test_shared_boundary_points_counted_once():
    # four chains reach the same point (1/2,1/2,1); the chain sum says 4
    D1 = make_digit_set(3, 2, [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 1)])
    D2 = make_digit_set(3, 2, [(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)])
    G = build_structure_graph(IntersectionProblem(D1, D2))
    a = (0, 0, 1)
    assert chain_count(G, a) == 4
    assert classify_cardinality(G, a) == CardinalityClass("finite", 1)
    assert enumerate_finite_points(G, a) == [(F(1, 2), F(1, 2), F(1))]
    assert verify_point(D1, D2, a, (F(1, 2), F(1, 2), F(1)))


def test_paper_criterion(ex1, countable, carpet_self):
    G = build_structure_graph(ex1)
    assert paper_criterion(G, (-1, -1)) == "singleton"
    assert paper_criterion(G, (0, 0)) == "finite"
    assert paper_criterion(G, (1, 1)) is None
    assert paper_criterion(build_structure_graph(countable), (0,)) == "countable"
    assert paper_criterion(build_structure_graph(carpet_self), (1, 0)) == "uncountable"


def test_self_report_carpet(carpet):
    rep = self_intersection_report(carpet)
    assert all(not r.alpha.is_zero() for r in rep.records) and len(rep.records) == 8
    by = {r.alpha: r for r in rep.records}
    assert by[(1, 0)].cardinality.kind == "uncountable"
    assert by[(1, 0)].dimension.nu == 3
    assert by[(1, 1)].points == [(F(1), F(1))]
    assert by[(-1, -1)].points == [(F(0), F(0))]
    assert rep.properties["finite"] is False and rep.properties["one_point"] is False


def test_self_report_cantor():
    rep = self_intersection_report(make_digit_set(1, 3, [0, 2]))
    by = {r.alpha: r for r in rep.records}
    assert by[(1,)].cardinality == CardinalityClass("finite", 1)
    assert by[(1,)].points == [(F(1),)]
    assert by[(-1,)].points == [(F(0),)]
    assert rep.properties["one_point"] and rep.properties["finite"]
    assert rep.properties["criterion_one_point"] and rep.properties["criterion_finite"]


def test_self_report_interior_only():
    rep = self_intersection_report(make_digit_set(2, 3, [(1, 1)]))
    assert all(not r.alive for r in rep.records)
    assert rep.properties["one_point"] and rep.properties["finite"]


def test_self_report_matches_pair_analysis(carpet):
    rep = self_intersection_report(carpet)
    pair = {r.alpha: r for r in analyze(IntersectionProblem(carpet, carpet)).records}
    for r in rep.records:
        assert r == pair[r.alpha]


def test_countable_points_on_oracle(countable):
    for m in range(1, 8):
        assert verify_point(countable.D1, countable.D2, (0,), (1 - F(1, 3**m),))
    assert verify_point(countable.D1, countable.D2, (0,), (F(1),))
    assert not verify_point(countable.D1, countable.D2, (0,), (F(1, 2),))
