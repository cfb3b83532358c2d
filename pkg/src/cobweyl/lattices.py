"""Integer matrices, Hermite and Smith normal forms, kernels and cokernels.

All arithmetic is over python ints (arbitrary precision).  Conventions:
row-style HNF with positive pivots and entries above each pivot reduced into
[0, pivot); SNF diagonal positive with the divisibility chain d1 | d2 | ...
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMat:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMat":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data:
            cols = len(data[0])
            if any(len(r) != cols for r in data):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return IntMat(len(data), cols, data)

    @staticmethod
    def identity(n: int) -> "IntMat":
        return IntMat(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMat":
        return IntMat(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def tolists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "IntMat":
        if not self.data:
            return IntMat(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntMat(self.cols, self.rows, tuple(zip(*self.data)))

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.data)) if other.data else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.data
        )
        return IntMat(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.data)


def _transpose_lists(m: list[list[int]]) -> list[list[int]]:
    return [list(r) for r in zip(*m)] if m else []


def _row_reduce(a: list[list[int]], rows: int, cols: int, track_inv: bool):
    """In-place row HNF; returns (U, Uinv or None) with H = U @ M."""
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    uinv = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)] if track_inv else None

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        if uinv is not None:
            for row in uinv:
                row[i], row[j] = row[j], row[i]

    def add(i, j, q):  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        if uinv is not None:
            for row in uinv:
                row[j] += q * row[i]

    def neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        if uinv is not None:
            for row in uinv:
                row[i] = -row[i]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        if not any(a[i][c] for i in range(r, rows)):
            continue
        while True:
            nz = [i for i in range(r, rows) if a[i][c]]
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                swap(r, i0)
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    if q:
                        add(i, r, q)
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] < 0:
            neg(r)
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                add(i, r, q)
        r += 1
    return u, uinv


def hnf(M: IntMat) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form: returns (H, U) with H = U @ M, U unimodular.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    are at the bottom.
    """
    a = M.tolists()
    u, _ = _row_reduce(a, M.rows, M.cols, track_inv=False)
    return IntMat.from_rows(a, M.cols), IntMat.from_rows(u, M.rows)


def hnf_with_inverse(M: IntMat) -> tuple[IntMat, IntMat, IntMat]:
    """Row HNF with both transforms: (H, U, U^{-1}), H = U @ M."""
    a = M.tolists()
    u, uinv = _row_reduce(a, M.rows, M.cols, track_inv=True)
    return IntMat.from_rows(a, M.cols), IntMat.from_rows(u, M.rows), IntMat.from_rows(uinv, M.rows)


def hnf_basis(vectors: Iterable[Sequence[int]], cols: int) -> IntMat:
    """HNF basis (nonzero rows only) of the lattice spanned by the vectors."""
    rows = [list(v) for v in vectors]
    if not rows:
        return IntMat.from_rows([], cols)
    H, _ = hnf(IntMat.from_rows(rows, cols))
    return IntMat.from_rows([r for r in H.data if any(r)], cols)


def kernel_basis(M: IntMat) -> IntMat:
    """HNF basis of {v : M @ v = 0}, as rows of length M.cols."""
    H, U = hnf(M.transpose())
    ker = [list(U.data[i]) for i in range(M.cols) if not any(H.data[i])]
    return hnf_basis(ker, M.cols)


@dataclass(frozen=True)
class SmithForm:
    diag: tuple[int, ...]  # positive invariant factors, d1 | d2 | ...
    U: IntMat
    Uinv: IntMat
    V: IntMat

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith(M: IntMat) -> SmithForm:
    """Smith normal form with transforms: U @ M @ V = diag(d1..dr, 0...).

    The input is bireduced by row and column Hermite forms first; that keeps
    transform entries small enough for the classical pivot loop to behave on
    the matrices arising from coinvariant presentations.
    """
    H, U0, U0inv = hnf_with_inverse(M)
    Ht, W = hnf(H.transpose())
    B = Ht.transpose()  # B = U0 @ M @ W^T
    V0 = W.transpose()
    diag, U1, U1inv, V1 = _smith_core(B)
    return SmithForm(diag, U1 @ U0, U0inv @ U1inv, V0 @ V1)


def _smith_core(M: IntMat) -> tuple[tuple[int, ...], IntMat, IntMat, IntMat]:
    rows, cols = M.rows, M.cols
    a = M.tolists()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    uinv = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in uinv:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, q):  # row i += q * row j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for row in uinv:
            row[j] -= q * row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in uinv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, q):  # col i += q * col j
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def col_neg(i):
        for row in a:
            row[i] = -row[i]
        for row in v:
            row[i] = -row[i]

    t = 0
    n = min(rows, cols)
    while t < n:
        pivots = [
            (abs(a[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if a[i][j]
        ]
        if not pivots:
            break
        _, pi, pj = min(pivots)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            # clear column t
            redo = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t]:
                        row_swap(t, i)
                        redo = True
            if redo:
                continue
            # clear row t
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        redo = True
            if redo:
                continue
            # enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    diag = tuple(a[i][i] for i in range(t))
    return diag, IntMat.from_rows(u, rows), IntMat.from_rows(uinv, rows), IntMat.from_rows(v, cols)


def elementary_divisors(M: IntMat) -> tuple[int, ...]:
    return smith(M).diag


def cokernel(M: IntMat) -> tuple[int, list[int]]:
    """Invariants of coker(Z^cols -> Z^rows): (free rank, divisors > 1)."""
    sf = smith(M)
    return M.rows - sf.rank, [d for d in sf.diag if d > 1]


def rank_rational(rows) -> int:
    """Rank over Q of a matrix given as a list of rows of Fractions/ints."""
    from fractions import Fraction

    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def det(M: IntMat) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
