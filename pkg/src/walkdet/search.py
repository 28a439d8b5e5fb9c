"""Exhaustive F-preserver search, F_n discovery, DGS family chains and conjecture sweeps."""

from __future__ import annotations

import functools
import itertools
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .graphs import (
    MAX_BUILTIN_ORDER,
    Graph,
    RootedGraph,
    canonical_form,
    enumerate_graphs,
    parse_graph6,
    root_orbit_representatives,
    rooted_product,
)
from .walk import (
    CertificationError,
    FamilyStep,
    PreconditionError,
    PreserverReport,
    certify,
    dgs_family_step,
    f_membership,
    f_membership_values,
    preserver_check,
    walk_det_matrix,
)

log = logging.getLogger(__name__)

CSV_COLUMNS = ("graph6", "root", "m", "res", "k", "detA_H", "detA_Hv", "is_preserver", "conjecture_ok")


def default_workers() -> int:
    env = os.environ.get("WALKDET_WORKERS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("WALKDET_WORKERS must be at least 1")
        return n
    return 1


@dataclass
class SearchConfig:
    min_order: int = 2
    max_order: int = 4
    roots: str = "all"  # "all" or "orbits"
    graphs: Optional[Iterable[Graph]] = None  # None means the built-in enumerator
    workers: int = 1
    include_rejects: bool = False
    verify_sample: bool = True
    seed: int = 0
    batch: int = 256

    def __post_init__(self):
        if self.min_order < 2:
            raise ValueError("preserver search starts at order 2")
        if self.max_order < self.min_order:
            raise ValueError("max_order is below min_order")
        if self.roots not in ("all", "orbits"):
            raise ValueError(f"root policy must be 'all' or 'orbits', not {self.roots!r}")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.graphs is None and self.max_order > MAX_BUILTIN_ORDER:
            raise ValueError(
                f"built-in enumeration covers orders up to {MAX_BUILTIN_ORDER}; "
                "pass a graph6 stream for larger orders"
            )


@dataclass
class SearchResult:
    graph6: str
    root: int  # 0-based
    report: PreserverReport
    seconds: float = 0.0
    sample_graph6: Optional[str] = None  # the F member G used to re-certify G o H

    @property
    def m(self) -> int:
        return self.report.m

    def row(self) -> dict:
        r = self.report
        return {
            "graph6": self.graph6,
            "root": self.root + 1,
            "m": r.m,
            "res": "" if r.res is None else r.res,
            "k": "" if r.k is None else r.k,
            "detA_H": r.det_A_H,
            "detA_Hv": r.det_A_Hv,
            "is_preserver": r.is_preserver,
            "conjecture_ok": "" if r.conjecture_ok is None else r.conjecture_ok,
        }


@dataclass
class SearchSummary:
    candidates: dict[int, int] = field(default_factory=dict)
    preservers: dict[int, int] = field(default_factory=dict)
    rooted_classes: dict[int, set] = field(default_factory=dict)
    underlying_classes: dict[int, set] = field(default_factory=dict)
    conjecture_violations: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, res: SearchResult) -> None:
        m = res.m
        self.candidates[m] = self.candidates.get(m, 0) + 1
        if not res.report.is_preserver:
            return
        self.preservers[m] = self.preservers.get(m, 0) + 1
        g = parse_graph6(res.graph6)
        self.rooted_classes.setdefault(m, set()).add(canonical_form(g, res.root)[0])
        self.underlying_classes.setdefault(m, set()).add(canonical_form(g)[0])
        if not res.report.conjecture_ok:
            self.conjecture_violations.append(f"{res.graph6}:{res.root + 1}")

    def lines(self) -> list[str]:
        out = []
        for m in sorted(self.candidates):
            out.append(
                f"order {m}: {self.candidates[m]} candidates, "
                f"{self.preservers.get(m, 0)} preserving (graph, root) pairs, "
                f"{len(self.rooted_classes.get(m, ()))} rooted classes, "
                f"{len(self.underlying_classes.get(m, ()))} underlying graphs"
            )
        total_rooted = sum(len(s) for s in self.rooted_classes.values())
        total_graphs = sum(len(s) for s in self.underlying_classes.values())
        out.append(f"total: {total_rooted} rooted classes, {total_graphs} underlying graphs, {self.seconds:.2f}s")
        if self.conjecture_violations:
            out.append("CONJECTURE COUNTEREXAMPLE CANDIDATES (k != floor(m/2)): " + " ".join(self.conjecture_violations))
        return out


@functools.lru_cache(maxsize=None)
def _f6_members() -> tuple[Graph, ...]:
    return tuple(find_f_members(6))


def _candidates(cfg: SearchConfig) -> Iterator[tuple[str, int]]:
    if cfg.graphs is None:
        source: Iterable[Graph] = itertools.chain.from_iterable(
            enumerate_graphs(m) for m in range(cfg.min_order, cfg.max_order + 1)
        )
    else:
        source = cfg.graphs
    for g in source:
        if not cfg.min_order <= g.n <= cfg.max_order:
            continue
        roots = range(g.n) if cfg.roots == "all" else root_orbit_representatives(g)
        g6 = g.to_graph6()
        for v in roots:
            yield g6, v


def _evaluate(task: tuple[int, str, int, bool, int]) -> SearchResult:
    index, g6, root, verify, seed = task
    t0 = time.perf_counter()
    h = RootedGraph(parse_graph6(g6), root)
    report = preserver_check(h, prune=True)
    sample = None
    if report.is_preserver and verify:
        pool = _f6_members()
        g = random.Random(seed * 1_000_003 + index).choice(pool)
        sample = g.to_graph6()
        try:
            dgs_family_step(g, h, check_preconditions=False)
        except CertificationError as exc:
            raise CertificationError(f"sampled re-certification failed for {h}: {exc}") from exc
    return SearchResult(g6, root, report, time.perf_counter() - t0, sample)


def search_preservers(cfg: SearchConfig, summary: Optional[SearchSummary] = None) -> Iterator[SearchResult]:
    """Run the preserver conditions over every candidate (H, v).

    Results come out in input order whatever the worker count: work is
    dispatched in bounded batches and each batch is collected in order.
    Only preservers are yielded unless ``cfg.include_rejects`` is set.
    """
    t0 = time.perf_counter()
    tasks = (
        (i, g6, v, cfg.verify_sample, cfg.seed) for i, (g6, v) in enumerate(_candidates(cfg))
    )
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        while True:
            batch = list(itertools.islice(tasks, cfg.batch * cfg.workers))
            if not batch:
                break
            if pool is None:
                results: Iterable[SearchResult] = map(_evaluate, batch)
            else:
                results = pool.map(_evaluate, batch, chunksize=max(1, cfg.batch // 4))
            for res in results:
                if summary is not None:
                    summary.add(res)
                if res.report.is_preserver or cfg.include_rejects:
                    yield res
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
        if summary is not None:
            summary.seconds = time.perf_counter() - t0


def find_f_members(n: int, graphs: Optional[Iterable[Graph]] = None) -> Iterator[Graph]:
    """Every isomorphism class of order ``n`` in F_n.

    Odd ``n`` yields nothing (det A is even for odd order). With ``graphs``
    given, order-``n`` graphs from that stream are scanned and duplicates up
    to isomorphism dropped.
    """
    if n % 2:
        log.info("F_%d is empty: det A(G) is even for every graph of odd order", n)
        return
    if graphs is None:
        yield from (g for g in enumerate_graphs(n) if f_membership(g))
        return
    seen = set()
    for g in graphs:
        if g.n != n or not f_membership(g):
            continue
        code = canonical_form(g)[0]
        if code not in seen:
            seen.add(code)
            yield g


@dataclass
class FamilyReport:
    stages: list[FamilyStep]
    ok: bool
    diagnostic: str = ""


def build_dgs_family(seed: Graph, preservers: Sequence[RootedGraph], steps: int) -> FamilyReport:
    """Apply the preservers in turn (cycling through the list) ``steps`` times.

    Each stage is certified in F by recomputing det A and det W_A from
    scratch. A certification failure stops the chain and is reported in
    ``diagnostic`` with ``ok`` false.
    """
    if steps < 0:
        raise PreconditionError("steps must be nonnegative")
    first = certify(seed)
    if not first.certified:
        raise PreconditionError(
            f"seed {seed.to_graph6()} is not in F (det A = {first.det_A}, det W_A = {first.det_W})"
        )
    if steps and not preservers:
        raise PreconditionError("no preservers given")
    for h in preservers:
        if not preserver_check(h).is_preserver:
            raise PreconditionError(f"{h} does not satisfy the preserver conditions")
    stages = [first]
    g = seed
    for i in range(steps):
        h = preservers[i % len(preservers)]
        try:
            step = dgs_family_step(g, h, check_preconditions=False)
        except CertificationError as exc:
            stages.append(certify(rooted_product(g, h)))
            return FamilyReport(stages, False, str(exc))
        stages.append(step)
        g = step.graph
    return FamilyReport(stages, True)


@dataclass
class SweepRow:
    graph6: str
    lhs_abs: int
    rhs_abs: int

    @property
    def match(self) -> bool:
        return self.lhs_abs == self.rhs_abs


@dataclass
class SweepReport:
    preserver: str
    m: int
    k: int
    rows: list[SweepRow]

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)


def conjecture_sweep(h: RootedGraph, sample_gs: Iterable[Graph]) -> SweepReport:
    """Compare |det W_A(G o H)| with |det A(G)|^floor(m/2) |det W_A(G)|^m on each sample."""
    rep = preserver_check(h)
    if not rep.is_preserver:
        raise PreconditionError(f"{h} does not satisfy the preserver conditions")
    m = h.graph.n
    rows = []
    for g in sample_gs:
        d, w = f_membership_values(g)
        lhs = walk_det_matrix(rooted_product(g, h).adjacency())
        rows.append(SweepRow(g.to_graph6(), abs(lhs), abs(d) ** (m // 2) * abs(w) ** m))
    return SweepReport(str(h), m, rep.k, rows)


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p])
