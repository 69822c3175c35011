"""Exact linear algebra over the rationals.

Matrices are lists of rows, rows are lists of Fractions.  Everything here is
plain Gaussian elimination; entries never leave Q so no pivoting strategy is
needed beyond "first nonzero".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = list  # list[Fraction]


def _copy(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    m = _copy(rows)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by forward elimination only (cheaper than a full RREF)."""
    m = _copy(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / pr[c]
                row = m[i]
                for j in nz:
                    row[j] -= f * pr[j]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0]) if ncols is None else ncols
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of ``{y : y^T M = 0}``: the linear relations among the rows."""
    if not rows:
        return []
    return nullspace(transpose(rows), len(rows))


def transpose(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse; raises ``ValueError`` if singular."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve_in_span(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i basis_i = v``, or ``None``."""
    if not basis:
        return [] if not any(v) else None
    cols = transpose(basis)
    aug = [list(col) + [Fraction(x)] for col, x in zip(cols, v)]
    red, piv = rref(aug, len(basis) + 1)
    if len(basis) in piv:
        return None
    c = [Fraction(0)] * len(basis)
    for row, p in zip(red, piv):
        c[p] = row[-1]
    return c


@dataclass(frozen=True)
class LinearSubspace:
    """Subspace of Q^n held in reduced row echelon form.

    Two subspaces are equal exactly when their echelon bases are equal, so
    the dataclass equality is subspace equality.
    """

    ambient: int
    basis: tuple  # tuple of tuples of Fraction, RREF
    pivots: tuple

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient: int | None = None) -> "LinearSubspace":
        vectors = [list(v) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension required for an empty span")
            ambient = len(vectors[0])
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        red, piv = rref(vectors, ambient) if vectors else ([], [])
        return cls(ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def whole(cls, n: int) -> "LinearSubspace":
        return cls.span([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list[Fraction]:
        """Canonical remainder of ``v`` modulo the subspace."""
        w = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= f * x
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coefficients of ``v`` in the echelon basis (``v`` must lie inside)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [Fraction(v[p]) for p in self.pivots]

    def join(self, other: "LinearSubspace") -> "LinearSubspace":
        return LinearSubspace.span(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        if not self.basis or not other.basis:
            return LinearSubspace.span([], self.ambient)
        rels = left_nullspace(list(self.basis) + [[-x for x in b] for b in other.basis])
        k = self.dim
        vecs = []
        for rel in rels:
            v = [Fraction(0)] * self.ambient
            for c, b in zip(rel[:k], self.basis):
                if c:
                    for j, x in enumerate(b):
                        v[j] += c * x
            vecs.append(v)
        return LinearSubspace.span(vecs, self.ambient)

    def equations(self) -> list[list[Fraction]]:
        """Basis of the annihilator: linear forms vanishing on the subspace."""
        if not self.basis:
            return [[Fraction(int(i == j)) for j in range(self.ambient)] for i in range(self.ambient)]
        return nullspace(list(self.basis), self.ambient)
