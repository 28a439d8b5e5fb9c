"""Univariate polynomials with integer coefficients.

An :class:`IntPoly` stores coefficients low degree first, so ``coeffs[i]`` is
the coefficient of ``x**i``. Trailing zeros are stripped on construction and
the zero polynomial is ``IntPoly([])`` with degree ``-inf`` reported as
:data:`NEG_INF`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactlinalg import det_bareiss

NEG_INF = float("-inf")

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> IntPoly:
        return cls([0, 1])

    @property
    def degree(self):
        """Degree as an int, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.format("x")

    def __add__(self, other) -> IntPoly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return self.scalar_mul(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def scalar_mul(self, c: int) -> IntPoly:
        return IntPoly([c * a for a in self.coeffs])

    def __call__(self, t: int) -> int:
        return self.eval_at_int(t)

    def eval_at_int(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def format(self, var: str = "x", unicode_powers: bool = False) -> str:
        """Human-readable form, highest degree first, e.g. ``x^4 - 4x^2 - 2x + 1``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "" if i == 1 else (str(i).translate(_SUPERSCRIPTS) if unicode_powers else f"^{i}")
                body = ("" if mag == 1 else str(mag)) + var + power
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def sylvester_matrix(f: IntPoly, g: IntPoly) -> list[list[int]]:
    """The (deg f + deg g) square Sylvester matrix, rows of f first.

    Coefficients run from the leading term leftwards, matching the textbook
    layout. Both polynomials must be nonzero.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("Sylvester matrix needs two nonzero polynomials")
    n, m = f.degree, g.degree
    size = n + m
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        rows.append([0] * i + fc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gc + [0] * (size - m - 1 - i))
    return rows


def sylvester_resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix.

    Degenerate conventions: a constant ``g = b`` gives ``b**deg f`` (and
    symmetrically for constant ``f``); a zero polynomial against a
    nonconstant one gives 0; two zero polynomials raise.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("undefined resultant: both polynomials are zero")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        return 0 if other.degree >= 1 else 1
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    return det_bareiss(sylvester_matrix(f, g))


def _newton_coeffs(points: Sequence[tuple[int, Fraction]]) -> list[Fraction]:
    xs = [int(t) for t, _ in points]
    dd = [Fraction(v) for _, v in points]
    k = len(xs)
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form into the monomial basis
    coeffs = [Fraction(0)]
    for i in range(k - 1, -1, -1):
        shifted = [Fraction(0)] + coeffs
        for j in range(len(coeffs)):
            shifted[j] -= xs[i] * coeffs[j]
        shifted[0] += dd[i]
        coeffs = shifted
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _check_nodes(points, degree_bound: int) -> None:
    ts = [int(t) for t, _ in points]
    if len(set(ts)) != len(ts):
        raise ValueError("duplicate interpolation nodes")
    if len(points) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(points)}")


def interpolate_exact(points: Sequence[tuple[int, int]], degree_bound: int) -> IntPoly:
    """The polynomial of degree <= ``degree_bound`` through ``points``.

    Newton divided differences in exact rational arithmetic. Extra points
    beyond ``degree_bound + 1`` are used as a consistency check. The result
    must have integer coefficients; anything else raises ``ValueError``.
    """
    _check_nodes(points, degree_bound)
    coeffs = _newton_coeffs(points[: degree_bound + 1])
    ints = []
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError(f"interpolant has non-integer coefficient {c}")
        ints.append(c.numerator)
    p = IntPoly(ints)
    for t, v in points[degree_bound + 1 :]:
        if p(int(t)) != int(v):
            raise ValueError(f"point ({t}, {v}) is off the degree-{degree_bound} interpolant")
    return p


def interpolate_rational(points: Sequence[tuple[int, Fraction]], degree_bound: int) -> list[Fraction]:
    """Like :func:`interpolate_exact` but keeps rational coefficients, low degree first."""
    _check_nodes(points, degree_bound)
    return _newton_coeffs(points[: degree_bound + 1])


def is_pm_monomial(p: IntPoly) -> Optional[int]:
    """Return k if ``p`` is ``+x**k`` or ``-x**k``, otherwise None."""
    if p.is_zero() or abs(p.leading) != 1:
        return None
    if any(p.coeffs[:-1]):
        return None
    return p.degree
