"""Exact integer linear algebra over arbitrary-precision integers.

Provides the Smith normal form with unimodular transform matrices, integer
kernels, and abelian-group invariants of integer relation matrices.  All
arithmetic uses Python ints, so there is no overflow at any matrix size
used here (the matrices are tiny: relation matrices of small group
presentations and 2x3 weight matrices).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            if ai[k]:
                bk = b[k]
                oi = out[i]
                f = ai[k]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def det(a: Matrix) -> int:
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """D = U @ A @ V with U, V unimodular and D diagonal, d1 | d2 | ... >= 0."""

    diag: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(a: Matrix) -> SmithForm:
    """Smith normal form with transforms.

    Row and column operations are accumulated into unimodular U (rows) and
    V (columns) so that U A V is diagonal with each diagonal entry dividing
    the next.  Diagonal entries are normalized nonnegative.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # dst += f * src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in m:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find pivot with minimal nonzero absolute value in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear the pivot row and column; restart if a remainder shrinks the pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            d1, d2 = m[i][i], m[i + 1][i + 1]
            if d2 % (d1 if d1 else 1) != 0 or (d1 == 0 and d2 != 0):
                # fold d2 into position i via gcd, pushing lcm to i+1
                add_col(i + 1, i, 1)
                dirty = True
                while dirty:
                    dirty = False
                    if m[i + 1][i] != 0:
                        q = m[i + 1][i] // m[i][i] if m[i][i] else 0
                        if m[i][i]:
                            add_row(i, i + 1, -q)
                        if m[i + 1][i] != 0:
                            swap_rows(i, i + 1)
                            dirty = True
                    if m[i][i + 1] != 0:
                        q = m[i][i + 1] // m[i][i] if m[i][i] else 0
                        if m[i][i]:
                            add_col(i, i + 1, -q)
                        if m[i][i + 1] != 0:
                            swap_cols(i, i + 1)
                            dirty = True
                if m[i][i] < 0:
                    negate_row(i)
                if m[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True

    diag = tuple(m[i][i] for i in range(limit))
    return SmithForm(
        diag=diag,
        left=tuple(tuple(row) for row in u),
        right=tuple(tuple(row) for row in v),
    )


def integer_kernel(a: Matrix) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0}, as a list of column vectors."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    snf = smith_normal_form(a)
    v = [list(row) for row in snf.right]
    basis = []
    for j in range(cols):
        d = snf.diag[j] if j < len(snf.diag) else 0
        if d == 0:
            basis.append([v[i][j] for i in range(cols)])
    return basis


def primitive(vec: list[int]) -> list[int]:
    """Divide an integer vector by the gcd of its entries (zero vector unchanged)."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g <= 1:
        return list(vec)
    return [x // g for x in vec]


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors of Z^gens / rowspace(relations)."""

    torsion: tuple[int, ...]
    free_rank: int

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if not self.finite:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n


def abelian_invariants(relations: Matrix, generators: int) -> AbelianInvariants:
    """Structure of the abelian group with the given relation rows.

    Rows are relator exponent vectors over `generators` unknowns.  Invariant
    factors equal to 1 are dropped from the torsion list.
    """
    if not relations:
        return AbelianInvariants(torsion=(), free_rank=generators)
    if any(len(row) != generators for row in relations):
        raise ValueError("relation rows must have one entry per generator")
    snf = smith_normal_form(relations)
    nonzero = [d for d in snf.diag if d != 0]
    rank = len(nonzero)
    torsion = tuple(d for d in nonzero if d > 1)
    return AbelianInvariants(torsion=torsion, free_rank=generators - rank)
