from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fusion_bounds import batteries, config, graphs, polytope
from fusion_bounds import complex as cx
from fusion_bounds.errors import EmptyPolyhedron, TooLarge, Unbounded
from fusion_bounds.polytope import HPolyhedron, VRepresentation

from oracles import brute_rays, brute_vertices, stable_sets_brute
from strategies import generic_configs

TRIANGLE = batteries.triangle_closure()
TETRA = batteries.tetra_boundary()


def vec(*xs):
    return tuple(F(x) for x in xs)


def rows_of(H):
    return set(H.rows)


class TestBuilders:
    def test_figure_1a_rows(self):
        H = polytope.fusion_polytope(config.figure("1a"))
        assert len(H.rows) == 6
        assert {tuple(int(x) for x in a) for a, _ in H.rows} == {
            (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)}
        assert all(b == 1 for _, b in H.rows)

    def test_single_region(self):
        C = config.SensorConfiguration(1, [(1,)])
        assert polytope.fusion_polytope(C).rows == ((vec(1), F(1)),)
        assert rows_of(polytope.positive_fusion_polytope(C)) == {(vec(-1), F(0)), (vec(1), F(1))}

    def test_triangle_graph_rows(self):
        H = polytope.fusion_polytope(batteries.triangle_graph())
        supports = {tuple(i + 1 for i, x in enumerate(a) if x) for a, _ in H.rows}
        assert supports == {(1,), (2,), (3,), (1, 2), (1, 3), (2, 3)}

    def test_positive_closure(self):
        H = polytope.positive_fusion_polytope(TRIANGLE)
        assert len(H.rows) == 4 and (vec(1, 1, 1), F(1)) in H.rows

    def test_positive_tetra(self):
        H = polytope.positive_fusion_polytope(TETRA)
        tri = {a for a, b in H.rows if b == 1}
        assert tri == {vec(*[0 if i == j else 1 for i in range(4)]) for j in range(4)}
        assert len(H.rows) == 8

    def test_canonical_rows(self):
        H = HPolyhedron.from_rows(2, [([2, 2], 2), ([1, 1], 1), ([F(1, 2), 0], F(1, 3))])
        assert H.rows == ((vec(3, 0), F(2)), (vec(1, 1), F(1)))

    def test_json_round_trip(self):
        H = polytope.positive_fusion_polytope(TETRA)
        assert HPolyhedron.from_dict(H.to_dict()) == H
        V = polytope.enumerate_vertices(H)
        assert VRepresentation.from_dict(V.to_dict()) == V


class TestEnumerate:
    def test_closure_vertices(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TRIANGLE))
        assert V.vertices == (vec(0, 0, 0), vec(0, 0, 1), vec(0, 1, 0), vec(1, 0, 0))
        assert V.rays == () and V.bounded

    def test_tetra_vertices(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TETRA))
        third = F(1, 3)
        want = {vec(0, 0, 0, 0), (third,) * 4} | {vec(*[int(i == j) for i in range(4)]) for j in range(4)}
        assert set(V.vertices) == want

    def test_figure_1a_unbounded(self):
        V = polytope.enumerate_vertices(polytope.fusion_polytope(config.figure("1a")))
        assert vec(1, 1, -1) in V.vertex_set
        assert any(any(x < 0 for x in r) for r in V.rays)

    def test_public_name(self):
        assert polytope.enumerate is polytope.enumerate_vertices

    def test_empty(self):
        H = HPolyhedron.from_rows(1, [([1], -1), ([-1], 0)])
        with pytest.raises(EmptyPolyhedron):
            polytope.enumerate_vertices(H)

    def test_lines(self):
        V = polytope.enumerate_vertices(HPolyhedron.from_rows(2, [([1, 0], 1)]))
        assert V.vertices == (vec(1, 0),) and V.lines == (vec(0, 1),) and V.rays == (vec(-1, 0),)

    def test_guard(self, monkeypatch):
        H = polytope.positive_fusion_polytope(config.gen_cycle(35))
        with pytest.raises(TooLarge):
            polytope.enumerate_vertices(H)
        monkeypatch.setenv("FUSION_GUARD_ROWS", "3")
        with pytest.raises(TooLarge):
            polytope.enumerate_vertices(polytope.positive_fusion_polytope(TRIANGLE))
        assert polytope.enumerate_vertices(polytope.positive_fusion_polytope(TRIANGLE), force=True).vertices

    def test_zero_one_guard(self):
        H = polytope.positive_fusion_polytope(config.figure("8a"))
        assert polytope.count_zero_one_points(H, 10 ** 6) == 77009
        with pytest.raises(TooLarge):
            polytope.enumerate_vertices(H)

    def test_budget(self):
        H = polytope.positive_fusion_polytope(config.figure("8a"))
        with pytest.raises(TooLarge):
            polytope.enumerate_vertices(H, force=True, budget=0.5)

    @given(st.integers(1, 7).flatmap(lambda n: st.lists(
        st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] != e[1]), max_size=10)
        .map(lambda es: (n, es))))
    def test_zero_one_count_is_stable_sets(self, data):
        n, edges = data
        G = graphs.Graph.build(n, edges)
        assert polytope.count_zero_one_points(graphs.qstab(G), 10 ** 6) == len(stable_sets_brute(n, G.edges))
        assert polytope.count_zero_one_points(polytope.fusion_polytope(config.figure("1a")), 10) is None

    def test_deterministic(self):
        H = polytope.fusion_polytope(config.figure("1b"))
        assert polytope.write_ext(polytope.enumerate_vertices(H)) == polytope.write_ext(polytope.enumerate_vertices(H))

    @settings(max_examples=40)
    @given(generic_configs(max_regions=5))
    def test_positive_matches_brute(self, C):
        H = polytope.positive_fusion_polytope(C)
        V = polytope.enumerate_vertices(H)
        assert set(V.vertices) == brute_vertices(H.rows, H.dimension)

    @settings(max_examples=40)
    @given(generic_configs(max_regions=4))
    def test_full_matches_brute(self, C):
        H = polytope.fusion_polytope(C)
        V = polytope.enumerate_vertices(H)
        assert set(V.vertices) == brute_vertices(H.rows, H.dimension)
        assert set(V.rays) == brute_rays(H.rows, H.dimension)

    @settings(max_examples=40)
    @given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=3, max_size=3), st.integers(0, 3)),
                    min_size=3, max_size=7))
    def test_random_rows_match_brute(self, rows):
        rows = [(a, b) for a, b in rows if any(a)] + [([1, 1, 1], 5)] + [(e, 0) for e in ([-1, 0, 0], [0, -1, 0], [0, 0, -1])]
        H = HPolyhedron.from_rows(3, rows)
        V = polytope.enumerate_vertices(H)
        assert set(V.vertices) == brute_vertices(H.rows, 3)
        assert V.rays == ()


class TestDerived:
    def test_dominant_closure(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TRIANGLE))
        assert vec(0, 0, 0) not in polytope.dominant(V).vertices
        assert len(polytope.dominant(V).vertices) == 3

    def test_dominant_tetra(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TETRA))
        assert len(polytope.dominant(V).vertices) == 5

    def test_dominant_even_cycle(self):
        V = polytope.enumerate_vertices(graphs.frac(graphs.cycle(6)))
        assert (F(1, 2),) * 6 not in polytope.dominant(V).vertex_set

    def test_lower_bound_square(self):
        C = batteries.square(2)
        V = polytope.enumerate_vertices(polytope.fusion_polytope(C))
        with pytest.raises(Unbounded):
            polytope.lower_coordinate_bound(V)
        assert polytope.lower_coordinate_bound(V, vertices_only=True) == -1

    def test_lower_bound_positive(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TETRA))
        assert polytope.lower_coordinate_bound(V) == 0

    def test_max_over(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TETRA))
        assert polytope.max_over(V, [1, 1, 1, 1]) == F(4, 3)
        W = polytope.enumerate_vertices(polytope.fusion_polytope(config.figure("1a")))
        with pytest.raises(Unbounded):
            polytope.max_over(W, [-1, 0, 0])


class TestEquality:
    def test_duplicate_rows(self):
        a = HPolyhedron.from_rows(2, [([-1, 0], 0), ([0, -1], 0), ([1, 1], 1)])
        b = HPolyhedron.from_rows(2, [([-1, 0], 0), ([0, -1], 0), ([1, 1], 1), ([2, 2], 2)])
        assert polytope.polyhedra_equal(a, b)

    def test_stab_vs_qstab_c5(self):
        G = graphs.cycle(5)
        assert not polytope.polyhedra_equal(graphs.stab(G), graphs.qstab(G))

    def test_stab_vs_frac_c4(self):
        G = graphs.cycle(4)
        assert polytope.polyhedra_equal(graphs.stab(G), graphs.frac(G))

    def test_unbounded_equal(self):
        H = polytope.fusion_polytope(config.figure("1a"))
        V = polytope.enumerate_vertices(H)
        assert polytope.polyhedra_equal(H, V)
        shifted = HPolyhedron.from_rows(3, list(H.rows[:-1]) + [(H.rows[-1][0], H.rows[-1][1] + 1)])
        assert not polytope.polyhedra_equal(H, shifted)

    def test_hull_contains(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TRIANGLE))
        assert polytope.hull_contains(V, vec(F(1, 3), F(1, 3), F(1, 3)))
        assert not polytope.hull_contains(V, vec(1, 1, 0))


class TestFormats:
    def test_ine_text(self):
        text = polytope.write_ine(polytope.positive_fusion_polytope(TRIANGLE))
        assert text.splitlines()[:3] == ["H-representation", "begin", " 4 4 rational"]
        assert " 1 -1 -1 -1" in text.splitlines()

    def test_ext_text(self):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(TETRA))
        assert " 1 1/3 1/3 1/3 1/3" in polytope.write_ext(V).splitlines()

    @pytest.mark.parametrize("name", ["1a", "1b", "3", "4", "5"])
    def test_round_trips(self, name):
        H = polytope.fusion_polytope(config.figure(name))
        assert polytope.read_ine(polytope.write_ine(H)) == H
        V = polytope.enumerate_vertices(H)
        assert polytope.read_ext(polytope.write_ext(V)) == V

    def test_linearity_ine(self):
        text = "H-representation\nlinearity 1 1\nbegin\n 3 3 rational\n 1 -1 -1\n 0 1 0\n 0 0 1\nend\n"
        H = polytope.read_ine(text)
        V = polytope.enumerate_vertices(H)
        assert V.vertices == (vec(0, 1), vec(1, 0))

    def test_bad_header(self):
        with pytest.raises(ValueError):
            polytope.read_ext("V-representation\nbegin\n 2 3 rational\n 1 0 0\nend\n")


class TestInvariants:
    @settings(max_examples=40)
    @given(generic_configs(max_regions=6))
    def test_vertex_certificates(self, C):
        for H in (polytope.fusion_polytope(C), polytope.positive_fusion_polytope(C)):
            V = polytope.enumerate_vertices(H)
            assert list(V.vertices) == sorted(V.vertices)
            for v in V.vertices:
                assert H.contains(v) and polytope.is_vertex(H, v)
            for r in V.rays:
                assert H.contains_direction(r)

    @settings(max_examples=40)
    @given(generic_configs(max_regions=6), st.data())
    def test_positive_same_maxima(self, C, data):
        Vf = polytope.enumerate_vertices(polytope.fusion_polytope(C))
        Vp = polytope.enumerate_vertices(polytope.positive_fusion_polytope(C))
        for _ in range(3):
            n = data.draw(st.lists(st.integers(0, 5), min_size=C.region_count, max_size=C.region_count))
            assert polytope.max_over(Vf, n) == polytope.max_over(Vp, n)

    @settings(max_examples=40)
    @given(generic_configs(max_regions=6), st.data())
    def test_dominance_keeps_maxima(self, C, data):
        V = polytope.enumerate_vertices(polytope.positive_fusion_polytope(C))
        D = polytope.dominant(V)
        n = data.draw(st.lists(st.integers(0, 5), min_size=C.region_count, max_size=C.region_count))
        assert polytope.max_over(V, n) == polytope.max_over(D, n)

    def test_dd_matches_brute_on_graphs(self):
        for G in batteries.random_graphs(15, 3, 6, salt=5):
            H = graphs.frac(G)
            assert set(polytope.enumerate_vertices(H).vertices) == brute_vertices(H.rows, H.dimension)

    def test_rank(self):
        assert polytope.rank([[1, 2], [2, 4]]) == 1
        assert polytope.rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
        assert polytope.rank([list(r) for r in combinations([1, 1, 0, 0], 3)]) <= 3
