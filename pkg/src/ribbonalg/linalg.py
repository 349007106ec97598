"""Dense exact linear algebra over CycNum (lists of rows)."""

from __future__ import annotations

from typing import Sequence

from .errors import NotInvertible
from .scalar import ONE, ZERO, CycNum

Matrix = list[list[CycNum]]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of an r x k and a k x c matrix; ``inner`` gives k when r == 0."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    c = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * c
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(c):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(s: CycNum, a: Matrix) -> Matrix:
    if not s:
        return [[ZERO] * len(r) for r in a]
    return [[s * x if x else ZERO for x in r] for r in a]


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = []
    bc = len(b[0]) if b else 0
    for ra in a:
        for rb in b:
            row = []
            for x in ra:
                if x:
                    row.extend(x * y if y else ZERO for y in rb)
                else:
                    row.extend([ZERO] * bc)
            out.append(row)
    return out


def is_zero(a: Matrix) -> bool:
    return all(not x for r in a for x in r)


def rref(m: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [r[:] for r in m]
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv if x else ZERO for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int) -> list[list[CycNum]]:
    """Basis of {x : m x = 0}; one vector per free column, in column order."""
    red, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(r) != n for r in m):
        raise NotInvertible("non-square matrix")
    aug = [r[:] + e for r, e in zip(m, identity(n))]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise NotInvertible("singular matrix")
    return [r[n:] for r in red]


def det(m: Matrix) -> CycNum:
    n = len(m)
    rows = [r[:] for r in m]
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            out = -out
        out = out * rows[c][c]
        inv = rows[c][c].inv()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[c])]
    return out


def solve(m: Matrix, rhs: Sequence[CycNum], ncols: int) -> list[CycNum] | None:
    """One solution of m x = rhs (free variables set to zero), or None."""
    aug = [r[:] + [b] for r, b in zip(m, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def rank_factor(p: Matrix) -> tuple[Matrix, Matrix]:
    """Split p = c @ r with c the pivot columns of p (first nonzero column first).

    For an idempotent p this gives r @ c = identity.
    """
    n = len(p)
    if n == 0:
        return [], []
    nc = len(p[0])
    red, pivots = rref(p, nc)
    c = [[p[i][j] for j in pivots] for i in range(n)]
    return c, red
