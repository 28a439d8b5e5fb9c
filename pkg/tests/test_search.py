import math
from pathlib import Path

import pytest

from walkdet.graphs import (
    RootedGraph,
    canonical_form,
    cycle_graph,
    enumerate_graphs,
    parse_graph6,
    paw_graph,
    path_graph,
    read_graph6,
)
from walkdet.search import (
    SearchConfig,
    SearchSummary,
    build_dgs_family,
    conjecture_sweep,
    find_f_members,
    search_preservers,
)
from walkdet.walk import PreconditionError, f_membership, preserver_check

DATA = Path(__file__).parent / "data"
PAW1 = RootedGraph(paw_graph(), 0)
P2_1 = RootedGraph(path_graph(2), 0)


def keys(results):
    return [(r.graph6, r.root) for r in results]


@pytest.fixture(scope="module")
def f6():
    return list(find_f_members(6))


class TestSearch:
    def test_order_four_contains_paw(self):
        target = canonical_form(paw_graph(), 0)[0]
        found = keys(search_preservers(SearchConfig(4, 4)))
        assert any(canonical_form(parse_graph6(g6), v)[0] == target for g6, v in found)

    def test_order_two(self):
        found = list(search_preservers(SearchConfig(2, 2)))
        assert {r.root for r in found} == {0, 1}
        assert all(r.report.k == 1 for r in found)

    def test_conjecture_consistent(self):
        for r in search_preservers(SearchConfig(2, 5)):
            assert r.report.conjecture_ok
            assert r.report.k == r.m // 2

    def test_worker_count_does_not_change_output(self):
        one = [r.row() for r in search_preservers(SearchConfig(2, 5, workers=1, include_rejects=True))]
        three = [
            r.row() for r in search_preservers(SearchConfig(2, 5, workers=3, include_rejects=True, batch=7))
        ]
        assert one == three

    def test_orbit_policy_same_rooted_classes(self):
        s_all, s_orb = SearchSummary(), SearchSummary()
        list(search_preservers(SearchConfig(2, 5), s_all))
        list(search_preservers(SearchConfig(2, 5, roots="orbits"), s_orb))
        assert s_all.rooted_classes == s_orb.rooted_classes
        assert sum(s_orb.candidates.values()) < sum(s_all.candidates.values())

    def test_rejects_included(self):
        out = list(search_preservers(SearchConfig(3, 3, include_rejects=True)))
        assert len(out) == 12  # 4 graphs times 3 roots
        assert sum(r.report.is_preserver for r in out) == 2

    def test_sampled_recertification_recorded(self):
        out = list(search_preservers(SearchConfig(2, 3)))
        assert all(r.sample_graph6 and f_membership(parse_graph6(r.sample_graph6)) for r in out)

    def test_summary_tallies(self):
        s = SearchSummary()
        list(search_preservers(SearchConfig(2, 4), s))
        assert s.candidates == {2: 4, 3: 12, 4: 44}
        assert {m: len(c) for m, c in s.rooted_classes.items()} == {2: 1, 3: 1, 4: 3}
        assert not s.conjecture_violations
        assert any("rooted classes" in line for line in s.lines())

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(1, 3)
        with pytest.raises(ValueError):
            SearchConfig(2, 8)
        with pytest.raises(ValueError):
            SearchConfig(2, 3, workers=0)
        with pytest.raises(ValueError):
            SearchConfig(2, 3, roots="some")


class TestStreamIngestion:
    def test_order_eight_corpus(self):
        with open(DATA / "order8_mini.g6") as fh:
            graphs = list(read_graph6(fh))
        assert len(graphs) == 8 and all(g.n == 8 for g in graphs)
        with open(DATA / "order8_mini.g6") as fh:
            found = list(search_preservers(SearchConfig(8, 8, graphs=read_graph6(fh))))
        expected = [
            (g.to_graph6(), v)
            for g in graphs
            for v in range(8)
            if preserver_check(RootedGraph(g, v)).is_preserver
        ]
        assert keys(found) == expected
        # P_8 is the first line; its preserving roots are those coprime to 9
        p8 = [v + 1 for g6, v in keys(found) if g6 == path_graph(8).to_graph6()]
        assert p8 == [l for l in range(1, 9) if math.gcd(l, 9) == 1]
        assert all(r.report.k == 4 for r in found)

    def test_stream_filters_other_orders(self):
        graphs = [path_graph(2), path_graph(3), path_graph(8)]
        found = list(search_preservers(SearchConfig(3, 3, graphs=graphs)))
        assert {r.m for r in found} == {3}


class TestMembers:
    def test_n6_nonempty(self, f6):
        assert f6 and all(f_membership(g) for g in f6)

    def test_n6_exhaustive(self, f6):
        assert f6 == [g for g in enumerate_graphs(6) if f_membership(g)]

    def test_odd_is_empty(self):
        assert list(find_f_members(5)) == []

    def test_n4_scan(self):
        # every 4-vertex graph has an automorphism, so det W_A = 0 and F_4 is empty
        assert list(find_f_members(4)) == []

    def test_stream_dedup(self, f6):
        g = f6[0]
        relabelled = g.relabel(list(reversed(range(6))))
        assert list(find_f_members(6, [g, relabelled])) == [g]


class TestFamily:
    def test_two_paw_steps(self, f6):
        rep = build_dgs_family(f6[0], [PAW1], 2)
        assert rep.ok
        assert [s.graph.n for s in rep.stages] == [6, 24, 96]
        for s in rep.stages:
            assert s.certified and abs(s.det_A) == 1 and abs(s.det_W) == 2 ** (s.graph.n // 2)

    def test_zero_steps(self, f6):
        rep = build_dgs_family(f6[0], [PAW1], 0)
        assert [s.graph.n for s in rep.stages] == [6] and rep.ok

    def test_alternating(self, f6):
        rep = build_dgs_family(f6[0], [P2_1, PAW1], 2)
        assert [s.graph.n for s in rep.stages] == [6, 12, 48] and rep.ok

    def test_preconditions(self, f6):
        with pytest.raises(PreconditionError):
            build_dgs_family(path_graph(4), [PAW1], 1)
        with pytest.raises(PreconditionError):
            build_dgs_family(f6[0], [RootedGraph(path_graph(3), 1)], 1)


class TestSweep:
    def test_c4_both_zero(self):
        rep = conjecture_sweep(PAW1, [cycle_graph(4)])
        assert rep.rows[0].lhs_abs == rep.rows[0].rhs_abs == 0

    def test_paw_on_controllable(self, f6):
        rep = conjecture_sweep(PAW1, f6)
        assert rep.ok and rep.k == 2
        assert all(r.lhs_abs != 0 for r in rep.rows)

    def test_p4_end(self, f6):
        samples = f6 + list(enumerate_graphs(5))
        rep = conjecture_sweep(RootedGraph(path_graph(4), 0), samples)
        assert rep.ok and rep.k == 2

    def test_requires_preserver(self):
        with pytest.raises(PreconditionError):
            conjecture_sweep(RootedGraph(path_graph(3), 1), [path_graph(2)])
