import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_graph
from walkdet.exactlinalg import delete_row_col, identity, kron, mat_add, unit_diagonal
from walkdet.graphs import (
    ADJACENCY,
    SIGNLESS_LAPLACIAN,
    Graph,
    Graph6Error,
    MatrixKind,
    RootedGraph,
    canonical_form,
    complete_graph,
    cycle_graph,
    emit_graph6,
    enumerate_graphs,
    matrix_of,
    parse_graph6,
    parse_rooted,
    paw_graph,
    path_graph,
    read_graph6,
    root_orbit_representatives,
    rooted_product,
    star_graph,
)

K2 = complete_graph(2)


class TestGraph6:
    def test_k2(self):
        # 'A' = 65 -> n = 2; '_' = 95 -> 32 = 0b100000, the single bit x(0,1)
        g = parse_graph6("A_")
        assert g.n == 2 and g.edges() == [(0, 1)]

    def test_known_encodings(self):
        assert emit_graph6(complete_graph(4)) == "C~"
        assert emit_graph6(Graph(1, (0,))) == "@"
        assert emit_graph6(path_graph(3)) == "Bg"  # bits x01 x02 x12 = 1 0 1 -> 101000

    def test_round_trip_corpus(self):
        corpus = ["A_", "A?", "Bw", "C~", "CN", "EOSw", "Gs@ipW"]
        for s in corpus:
            assert emit_graph6(parse_graph6(s)) == s

    @pytest.mark.parametrize("n", [62, 63, 100])
    def test_long_order_field(self, n):
        g = path_graph(n)
        s = emit_graph6(g)
        assert (s[0] == "~") == (n >= 63)
        assert parse_graph6(s) == g

    def test_header(self):
        assert parse_graph6(">>graph6<<A_") == K2

    @pytest.mark.parametrize(
        "bad, offset",
        [("", 0), ("A!", 1), ("A_?", 2), ("C", 1), ("A`", 1), ("~??", 3)],
    )
    def test_errors_carry_offset(self, bad, offset):
        with pytest.raises(Graph6Error) as info:
            parse_graph6(bad)
        assert info.value.offset == offset

    def test_order_zero_rejected(self):
        with pytest.raises(Graph6Error):
            parse_graph6("?")

    def test_stream(self):
        import io

        gs = list(read_graph6(io.StringIO("A_\n\nBw\n")))
        assert [g.n for g in gs] == [2, 3]
        with pytest.raises(Graph6Error, match="line 2"):
            list(read_graph6(io.StringIO("A_\nA!\n")))

    def test_parse_rooted(self):
        h = parse_rooted("CN:2")
        assert h.root == 1 and h.graph.n == 4
        with pytest.raises(ValueError):
            parse_rooted("CN:5")


class TestMatrices:
    def test_k2(self):
        assert matrix_of(K2, ADJACENCY) == ([[0, 1], [1, 0]], 1)
        assert matrix_of(K2, SIGNLESS_LAPLACIAN) == ([[1, 1], [1, 1]], 1)

    def test_aalpha_half_is_q(self):
        m, s = matrix_of(path_graph(3), MatrixKind("Aalpha", Fraction(1, 2)))
        assert s == 2
        assert m == matrix_of(path_graph(3), SIGNLESS_LAPLACIAN)[0]

    def test_aalpha_general(self):
        m, s = matrix_of(path_graph(3), MatrixKind.parse("aalpha=1/3"))
        assert s == 3
        assert m == [[1, 2, 0], [2, 2, 2], [0, 2, 1]]

    def test_kind_parse(self):
        assert MatrixKind.parse("a") == ADJACENCY
        assert MatrixKind.parse("Q") == SIGNLESS_LAPLACIAN
        for bad in ("aalpha=1", "aalpha=-1/2", "aalpha=3/2", "b", "aalpha=x"):
            with pytest.raises(ValueError):
                MatrixKind.parse(bad)

    def test_adjacency_deletion_is_vertex_deletion(self, rng):
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 6))
            v = rng.randrange(g.n)
            assert delete_row_col(g.adjacency(), v) == g.delete_vertex(v).adjacency()

    def test_signless_laplacian_deletion_differs(self):
        star = star_graph(3)
        deleted = delete_row_col(matrix_of(star, SIGNLESS_LAPLACIAN)[0], 0)
        assert deleted == identity(3)
        assert deleted != matrix_of(star.delete_vertex(0), SIGNLESS_LAPLACIAN)[0]


class TestRootedProduct:
    def test_k1_factor(self, rng):
        for _ in range(10):
            g = random_graph(rng, rng.randint(1, 6))
            assert rooted_product(g, RootedGraph(Graph(1, (0,)), 0)) == g

    def test_c4_c3(self):
        p = rooted_product(cycle_graph(4), RootedGraph(cycle_graph(3), 0))
        assert p.n == 12 and p.num_edges == 16
        assert sorted(p.degrees()) == [2] * 8 + [4] * 4
        hubs = [v for v in range(12) if p.degree(v) == 4]
        # hubs form a 4-cycle, each carrying a pendant triangle
        sub = p.relabel(hubs + [v for v in range(12) if v not in hubs])
        assert all(sub.degree(i) - 2 == len([u for u in sub.neighbours(i) if u < 4]) for i in range(4))
        for h in hubs:
            a, b = [u for u in p.neighbours(h) if u not in hubs]
            assert p.has_edge(a, b)

    @pytest.mark.parametrize("kind", [ADJACENCY, SIGNLESS_LAPLACIAN, MatrixKind.parse("aalpha=2/5")])
    def test_kronecker_identity(self, rng, kind):
        for _ in range(40):
            g = random_graph(rng, rng.randint(1, 5))
            h = RootedGraph(random_graph(rng, rng.randint(1, 5)), 0)
            h = RootedGraph(h.graph, rng.randrange(h.graph.n))
            p = rooted_product(g, h)
            assert p.n == g.n * h.graph.n
            assert p.num_edges == g.n * h.graph.num_edges + g.num_edges
            mg, _ = matrix_of(g, kind)
            mh, _ = matrix_of(h.graph, kind)
            expected = mat_add(kron(mh, identity(g.n)), kron(unit_diagonal(h.graph.n, h.root), mg))
            assert matrix_of(p, kind)[0] == expected


def brute_force_classes(m):
    pairs = list(itertools.combinations(range(m), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        key = min(
            tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
            for p in itertools.permutations(range(m))
        )
        seen.add(key)
    return len(seen)


class TestEnumeration:
    @pytest.mark.parametrize("m, total, connected", [(1, 1, 1), (2, 2, 1), (3, 4, 2), (4, 11, 6), (5, 34, 21), (6, 156, 112), (7, 1044, 853)])
    def test_counts(self, m, total, connected):
        assert len(list(enumerate_graphs(m))) == total
        assert len(list(enumerate_graphs(m, connected_only=True))) == connected

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_counts_against_brute_force(self, m):
        assert len(list(enumerate_graphs(m))) == brute_force_classes(m)

    def test_k1_only(self):
        assert list(enumerate_graphs(1)) == [Graph(1, (0,))]

    def test_pairwise_non_isomorphic(self):
        graphs = list(enumerate_graphs(5))
        codes = {canonical_form(g)[0] for g in graphs}
        assert len(codes) == len(graphs)

    def test_deterministic(self):
        assert list(enumerate_graphs(6)) == list(enumerate_graphs(6))

    def test_too_large(self):
        with pytest.raises(ValueError, match="graph6"):
            list(enumerate_graphs(8))

    def test_canonical_form_is_invariant(self, rng):
        for _ in range(30):
            g = random_graph(rng, rng.randint(1, 7))
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g)[0] == canonical_form(g.relabel(perm))[0]

    def test_root_orbits(self):
        assert root_orbit_representatives(path_graph(4)) == [0, 1]
        assert root_orbit_representatives(paw_graph()) == [0, 2, 3]
        assert root_orbit_representatives(cycle_graph(5)) == [0]
