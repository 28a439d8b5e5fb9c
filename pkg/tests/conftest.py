import itertools
import random

import pytest

from walkdet.graphs import Graph

# Acceptance outcomes, filled in by tests/test_acceptance.py and printed at the end.
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def cofactor_det(m):
    """Laplace expansion along the first row. Independent of Bareiss; keep n small."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def has_nontrivial_automorphism(g: Graph) -> bool:
    edges = set(g.edges())
    for perm in itertools.permutations(range(g.n)):
        if all(perm[i] == i for i in range(g.n)):
            continue
        if all(tuple(sorted((perm[u], perm[v]))) in edges for u, v in edges):
            return True
    return False


def random_int_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    )


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
