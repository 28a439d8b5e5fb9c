"""Exact integer matrix arithmetic.

Matrices are plain ``list[list[int]]`` in row-major order. Python integers are
arbitrary precision, so nothing here ever overflows or rounds. No function in
this module mutates its arguments.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .poly import IntPoly

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int) -> IntMatrix:
    return [[0] * n for _ in range(n)]


def unit_diagonal(n: int, v: int) -> IntMatrix:
    """The n x n matrix with a single 1 on the diagonal at position ``v``."""
    d = zeros(n)
    d[v][v] = 1
    return d


def _check_square(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError(f"matrix is not square: {n} rows, a row of length {len(row)}")
    return n


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Row swaps bring a nonzero pivot into place; if a pivot column is entirely
    zero below the diagonal the determinant is 0. Every division is exact by
    Sylvester's identity. The empty matrix has determinant 1.
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(p * q for p, q in zip(row, x)) for row in a]


def trace(a: Sequence[Sequence[int]]) -> int:
    return sum(a[i][i] for i in range(len(a)))


def charpoly(m: Sequence[Sequence[int]]) -> IntPoly:
    """det(xI - m) by Faddeev-LeVerrier.

    The division by k at step k is exact over the integers; a nonzero
    remainder means the input was not an integer matrix or something upstream
    is broken, so it is asserted rather than rounded.
    """
    from .poly import IntPoly

    n = _check_square(m)
    if n == 0:
        return IntPoly([1])
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = zeros(n)  # M_0
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # M_k = m @ M_{k-1} + c_{n-k+1} I
        mk = matmul(m, mk)
        for i in range(n):
            mk[i][i] += c_prev
        t = trace(matmul(m, mk))
        q, r = divmod(-t, k)
        assert r == 0, f"inexact Faddeev-LeVerrier division at step {k}"
        coeffs[n - k] = q
    return IntPoly(coeffs)


def kron(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    """Kronecker product with row-major block layout.

    ``kron(a, b)[i*q + k][j*q + l] == a[i][j] * b[k][l]`` with ``q = len(b)``.
    """
    p = _check_square(a)
    q = _check_square(b)
    out = zeros(p * q)
    for i in range(p):
        for j in range(p):
            aij = a[i][j]
            if aij == 0:
                continue
            for k in range(q):
                row = out[i * q + k]
                bk = b[k]
                for l in range(q):
                    row[j * q + l] = aij * bk[l]
    return out


def delete_row_col(m: Sequence[Sequence[int]], v: int) -> IntMatrix:
    n = _check_square(m)
    if not 0 <= v < n:
        raise IndexError(f"index {v} out of range for order {n}")
    return [[x for j, x in enumerate(row) if j != v] for i, row in enumerate(m) if i != v]


def mat_add_scaled(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], c: int) -> IntMatrix:
    """Entrywise ``a + c*b``."""
    n = _check_square(a)
    if _check_square(b) != n:
        raise ValueError(f"order mismatch: {n} vs {len(b)}")
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    return mat_add_scaled(a, b, 1)


def scalar_mul(a: Sequence[Sequence[int]], c: int) -> IntMatrix:
    return [[c * x for x in row] for row in a]


def poly_of_matrix(p: IntPoly, m: Sequence[Sequence[int]]) -> IntMatrix:
    """Evaluate ``p`` at the square matrix ``m`` by Horner's rule."""
    n = _check_square(m)
    out = zeros(n)
    for c in reversed(p.coeffs):
        out = matmul(out, m)
        for i in range(n):
            out[i][i] += c
    return out
