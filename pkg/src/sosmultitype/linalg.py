"""Dense linear algebra over the Gaussian rationals (small matrices only)."""
from __future__ import annotations

from typing import Sequence

from .algebra import GaussianRational, ONE, ZERO

Matrix = list  # list[list[GaussianRational]]


def _copy(M: Sequence[Sequence]) -> Matrix:
    return [[GaussianRational.coerce(x) for x in row] for row in M]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = _copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = ONE / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                k = A[i][c]
                A[i] = [x - k * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def kernel(M: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : M x = 0}`` as a list of vectors."""
    if not M:
        return [[ONE if i == j else ZERO for i in range(ncols or 0)] for j in range(ncols or 0)]
    A, pivots = rref(M)
    cols = len(A[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -A[r][f]
        basis.append(x)
    return basis


def inverse(M: Sequence[Sequence]) -> Matrix | None:
    n = len(M)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(_copy(M))]
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in A]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return [[sum((a * b for a, b in zip(row, col)), ZERO) for col in zip(*B)] for row in A]


def hermitian_inner(u: Sequence, v: Sequence, H: Sequence[Sequence] | None = None):
    """``u H v*`` (plain ``u v*`` when ``H`` is None)."""
    if H is None:
        return sum((a * b.conjugate() for a, b in zip(u, v)), ZERO)
    Hv = [sum((h * b.conjugate() for h, b in zip(row, v)), ZERO) for row in H]
    return sum((a * x for a, x in zip(u, Hv)), ZERO)
