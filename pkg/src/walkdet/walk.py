"""Walk matrices, the walk-determinant formula for rooted products, and F-preservers.

Everything is exact. Eigenvalues never appear: ``det h(M(G))`` is computed as
``Res(charpoly(M(G)), h)``, which equals the product of ``h`` over the
eigenvalues of ``M(G)`` because the characteristic polynomial is monic.
The general formula only holds up to sign, so all comparisons are on
absolute values; observed signs are reported, never asserted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactlinalg import (
    IntMatrix,
    charpoly,
    delete_row_col,
    det_bareiss,
    matvec,
    unit_diagonal,
    mat_add_scaled,
)
from .graphs import ADJACENCY, Graph, MatrixKind, RootedGraph, matrix_of, rooted_product
from .poly import IntPoly, interpolate_exact, interpolate_rational, is_pm_monomial, sylvester_resultant

Rational = Union[int, Fraction]


class PreconditionError(ValueError):
    pass


class CertificationError(RuntimeError):
    """A graph that should be in F by the preserver theorem is not. Never expected."""


def walk_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    """``[e, Me, ..., M^(n-1) e]`` built column by column with matrix-vector products."""
    n = len(m)
    col = [1] * n
    cols = [col]
    for _ in range(n - 1):
        col = matvec(m, col)
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def walk_det_matrix(m: Sequence[Sequence[int]]) -> int:
    return det_bareiss(walk_matrix(m))


def walk_det(g: Graph, kind: MatrixKind = ADJACENCY) -> Rational:
    """det W_M(G); a Fraction for A_alpha with a non-integral result, else an int."""
    m, scale = matrix_of(g, kind)
    d = walk_det_matrix(m)
    if scale == 1:
        return d
    r = Fraction(d, scale ** (g.n * (g.n - 1) // 2))
    return r.numerator if r.denominator == 1 else r


def h_degree_bound(m: int) -> int:
    # column j of W(B(t)) has entries of degree <= j in t
    return m * (m - 1) // 2


def h_poly_from_matrix(mh: Sequence[Sequence[int]], root: int) -> IntPoly:
    """h(t) = det W(mh + t D_root) recovered from integer evaluations at t = 0..m(m-1)/2."""
    m = len(mh)
    d = unit_diagonal(m, root)
    bound = h_degree_bound(m)
    pts = [(t, walk_det_matrix(mat_add_scaled(mh, d, t))) for t in range(bound + 1)]
    return interpolate_exact(pts, bound)


@functools.lru_cache(maxsize=4096)
def h_poly(h: RootedGraph, kind: MatrixKind = ADJACENCY) -> IntPoly:
    """h(t) = det W(M(H) + t D_v) for integer-valued kinds (A and Q).

    For A_alpha use :func:`h_poly_alpha`, which has rational coefficients.
    """
    mh, scale = matrix_of(h.graph, kind)
    if scale != 1:
        raise ValueError("h_poly needs an integer matrix kind; use h_poly_alpha for A_alpha")
    return h_poly_from_matrix(mh, h.root)


def h_poly_alpha(h: RootedGraph, kind: MatrixKind) -> list[Fraction]:
    """Rational coefficients (low degree first) of h for any kind, A_alpha included.

    With ``q`` the kind's scale and ``M' = q M`` the integer matrix,
    ``h(t) = det W(M' + q t D_v) / q^(m(m-1)/2)``.
    """
    mh, q = matrix_of(h.graph, kind)
    m = h.graph.n
    d = unit_diagonal(m, h.root)
    bound = h_degree_bound(m)
    denom = q ** bound
    pts = [
        (t, Fraction(walk_det_matrix(mat_add_scaled(mh, d, q * t)), denom))
        for t in range(bound + 1)
    ]
    return interpolate_rational(pts, bound)


@dataclass
class WalkReport:
    """Both sides of the walk-determinant formula for one pair (G, H^(v)).

    All integer fields refer to the integer matrices returned by
    :func:`matrix_of`; for A_alpha that is the matrix scaled by ``scale``,
    and ``lhs_exact`` gives the unscaled determinant.
    """

    n: int
    m: int
    kind: str
    scale: int
    lhs: int
    res_factor: int
    det_h_of_MG: int
    det_W_of_G: int
    h: IntPoly
    rhs_abs: int
    verdict: bool
    sign: int  # sign of lhs relative to the signed rhs; 0 when both vanish

    @property
    def lhs_exact(self) -> Rational:
        if self.scale == 1:
            return self.lhs
        N = self.n * self.m
        r = Fraction(self.lhs, self.scale ** (N * (N - 1) // 2))
        return r.numerator if r.denominator == 1 else r

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "kind": self.kind,
            "scale": self.scale,
            "lhs": str(self.lhs),
            "res_factor": str(self.res_factor),
            "det_h_of_MG": str(self.det_h_of_MG),
            "det_W_of_G": str(self.det_W_of_G),
            "h": list(map(str, self.h.coeffs)),
            "rhs_abs": str(self.rhs_abs),
            "verdict": self.verdict,
            "sign": self.sign,
        }


def _rooted_parts(h: RootedGraph, kind: MatrixKind) -> tuple[IntMatrix, IntPoly, IntPoly]:
    mh, _ = matrix_of(h.graph, kind)
    return mh, charpoly(mh), charpoly(delete_row_col(mh, h.root))


@functools.lru_cache(maxsize=4096)
def _h_factors(h: RootedGraph, kind: MatrixKind) -> tuple[int, IntPoly]:
    mh, phi, phi_v = _rooted_parts(h, kind)
    return sylvester_resultant(phi, phi_v), h_poly_from_matrix(mh, h.root)


def theorem_main_verify(g: Graph, h: RootedGraph, kind: MatrixKind = ADJACENCY) -> WalkReport:
    """Compute det W_M(G o H) directly and from the three-factor formula."""
    n, m = g.n, h.graph.n
    mg, scale = matrix_of(g, kind)
    prod, _ = matrix_of(rooted_product(g, h), kind)
    lhs = walk_det_matrix(prod)

    res, hp = _h_factors(h, kind)
    det_h = sylvester_resultant(charpoly(mg), hp)
    dwg = walk_det_matrix(mg)
    rhs = res ** (n * (n - 1) // 2) * det_h * dwg**m

    verdict = abs(lhs) == abs(rhs)
    if lhs == 0 or rhs == 0:
        sign = 0
    else:
        sign = 1 if (lhs > 0) == (rhs > 0) else -1
    return WalkReport(
        n=n,
        m=m,
        kind=str(kind),
        scale=scale,
        lhs=lhs,
        res_factor=res,
        det_h_of_MG=det_h,
        det_W_of_G=dwg,
        h=hp,
        rhs_abs=abs(rhs),
        verdict=verdict,
        sign=sign,
    )


@dataclass
class ControllabilityReport:
    g_controllable: bool
    res_nonzero: bool
    h_coprime: bool
    verdict: bool
    direct_nonzero: bool

    @property
    def consistent(self) -> bool:
        return self.verdict == self.direct_nonzero


def controllability_check(g: Graph, h: RootedGraph, kind: MatrixKind = ADJACENCY) -> ControllabilityReport:
    """The three controllability conditions, each decided over the integers.

    Condition (iii), controllability of B(lambda) at every eigenvalue of M(G),
    is equivalent to h having no common root with charpoly(M(G)), i.e. a
    nonzero resultant.
    """
    mg, _ = matrix_of(g, kind)
    res, hp = _h_factors(h, kind)
    c1 = walk_det_matrix(mg) != 0
    c2 = res != 0
    c3 = sylvester_resultant(charpoly(mg), hp) != 0
    prod, _ = matrix_of(rooted_product(g, h), kind)
    direct = walk_det_matrix(prod) != 0
    return ControllabilityReport(c1, c2, c3, c1 and c2 and c3, direct)


def f_membership_values(g: Graph) -> tuple[int, int]:
    """(det A(G), det W_A(G))."""
    a = g.adjacency()
    return det_bareiss(a), walk_det_matrix(a)


def f_membership(g: Graph) -> bool:
    """det A(G) = +-1 and det W_A(G) = +-2^(n/2). Odd orders are never members."""
    if g.n % 2:
        return False
    a = g.adjacency()
    if abs(det_bareiss(a)) != 1:
        return False
    return abs(walk_det_matrix(a)) == 1 << (g.n // 2)


@dataclass
class PreserverReport:
    """The three sufficient conditions for ``H^(v)`` to preserve F.

    Fields left as ``None`` were not evaluated because an earlier, cheaper
    condition already failed (only when the check runs with ``prune=True``).
    """

    m: int
    det_A_H: int
    det_A_Hv: int
    cond_dets: bool
    res: Optional[int] = None
    cond_res: Optional[bool] = None
    h: Optional[IntPoly] = None
    cond_monomial: Optional[int] = None  # the exponent k when h = +-t^k
    is_preserver: bool = False
    conjecture_ok: Optional[bool] = None
    trivial: bool = field(default=False)

    @property
    def k(self) -> Optional[int]:
        return self.cond_monomial

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "det_A_H": self.det_A_H,
            "det_A_Hv": self.det_A_Hv,
            "cond_dets": self.cond_dets,
            "res": self.res,
            "cond_res": self.cond_res,
            "h": None if self.h is None else list(self.h.coeffs),
            "k": self.cond_monomial,
            "is_preserver": self.is_preserver,
            "conjecture_ok": self.conjecture_ok,
        }


def preserver_check(h: RootedGraph, prune: bool = False) -> PreserverReport:
    """Evaluate the F-preserver conditions for ``h`` with the adjacency matrix.

    Conditions are checked cheapest first: the two small determinants, then
    the resultant, then h(t), whose interpolation dominates the cost. With
    ``prune=True`` evaluation stops at the first failure. K_1 passes
    trivially (G o K_1 = G) and is flagged as such.
    """
    m = h.graph.n
    a = h.graph.adjacency()
    av = delete_row_col(a, h.root)
    d, dv = det_bareiss(a), det_bareiss(av)
    cond_dets = (abs(d) == 1 and dv == 0) or (d == 0 and abs(dv) == 1)
    report = PreserverReport(m=m, det_A_H=d, det_A_Hv=dv, cond_dets=cond_dets, trivial=m == 1)
    if prune and not cond_dets:
        return report
    report.res = sylvester_resultant(charpoly(a), charpoly(av))
    report.cond_res = abs(report.res) == 1
    if prune and not report.cond_res:
        return report
    report.h = h_poly(h, ADJACENCY)
    report.cond_monomial = is_pm_monomial(report.h)
    report.is_preserver = cond_dets and report.cond_res and report.cond_monomial is not None
    if report.is_preserver:
        report.conjecture_ok = report.cond_monomial == m // 2
    return report


@dataclass
class FamilyStep:
    graph: Graph
    det_A: int
    det_W: int
    certified: bool


def certify(g: Graph) -> FamilyStep:
    d, w = f_membership_values(g)
    ok = g.n % 2 == 0 and abs(d) == 1 and abs(w) == 1 << (g.n // 2)
    return FamilyStep(g, d, w, ok)


def dgs_family_step(g: Graph, h: RootedGraph, check_preconditions: bool = True) -> FamilyStep:
    """G o H^(v), re-certified in F by direct computation.

    Raises :class:`PreconditionError` if ``g`` is not in F or ``h`` fails the
    preserver conditions, and :class:`CertificationError` if the product
    falls outside F despite both.
    """
    if check_preconditions:
        if not f_membership(g):
            raise PreconditionError(f"seed {g.to_graph6()} is not in F")
        if not preserver_check(h).is_preserver:
            raise PreconditionError(f"{h} does not satisfy the preserver conditions")
    step = certify(rooted_product(g, h))
    if not step.certified:
        raise CertificationError(
            f"{g.to_graph6()} o {h} has det A = {step.det_A}, det W_A = {step.det_W}; "
            f"expected +-1 and +-2^{step.graph.n // 2}"
        )
    return step
