"""Strassen lower bounds, the M<n,2,2> bound table, and gluing of BCLRS algorithms."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .arith import LaurentPoly
from .catalog.model import BorderRankAlgorithm, RankOneCurve
from .tensor import FACTORS, Tensor, TensorSpace, mat_mul_tensor


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundConfig:
    trials: int = 64
    sample_range: int = 9
    seed: int = 7

    def __post_init__(self):
        if self.trials < 1 or self.sample_range < 1:
            raise ValueError("trials and sample_range must be positive")


DEFAULT_BOUNDS = BoundConfig()


@dataclass(frozen=True)
class StrassenWitness:
    bound: int
    commutator_rank: int
    b: int
    roles: tuple  # (contracted, B-role, C-role)
    alpha: tuple
    c_prime: tuple  # columns spanning C'
    x1: tuple
    x2: tuple


@dataclass(frozen=True)
class StrassenReport:
    bound: int
    best: StrassenWitness
    per_role: dict = field(compare=False)

    def lines(self) -> list[str]:
        w = self.best
        out = [f"Strassen lower bound  {self.bound}"]
        out.append(f"  roles (contract, B, C) = {w.roles}: ceil({w.commutator_rank}/2) + {w.b}")
        for roles, val in self.per_role.items():
            out.append(f"  {roles}: {'no full-rank slice' if val is None else val}")
        return out

    def to_dict(self) -> dict:
        w = self.best
        return {
            "bound": self.bound,
            "roles": list(w.roles),
            "commutator_rank": w.commutator_rank,
            "b": w.b,
            "alpha": [str(x) for x in w.alpha],
            "per_role": {"".join(k): v for k, v in self.per_role.items()},
        }


def _slices(T: Tensor, roles: tuple) -> list[list[list[Fraction]]]:
    """``T(e_i)`` for each basis dual vector of the contracted factor, as (B-role × C-role) matrices."""
    pos = [FACTORS.index(f) for f in roles]
    dims = [T.space.dims[p] for p in pos]
    out = [[[Fraction(0)] * dims[2] for _ in range(dims[1])] for _ in range(dims[0])]
    for key, val in T.items():
        out[key[pos[0]]][key[pos[1]]][key[pos[2]]] += val
    return out


def _combo(slices, coeffs):
    rows, cols = len(slices[0]), len(slices[0][0])
    m = [[Fraction(0)] * cols for _ in range(rows)]
    for c, s in zip(coeffs, slices):
        if c:
            for i in range(rows):
                for j in range(cols):
                    if s[i][j]:
                        m[i][j] += c * s[i][j]
    return m


def _role_bound(slices, rng: random.Random, S: int):
    """One sample: returns a witness tuple or None if the slice is not full rank."""
    n = len(slices)
    b, c = len(slices[0]), len(slices[0][0])
    draw = lambda: Fraction(rng.randint(-S, S))  # noqa: E731
    alpha = [draw() for _ in range(n)]
    Ta = _combo(slices, alpha)
    P = [[draw() for _ in range(b)] for _ in range(c)]  # columns span C'
    M0 = linalg.matmul(Ta, P)
    if linalg.rank(M0) < b:
        return None
    inv = linalg.inverse(M0)
    a1 = [draw() for _ in range(n)]
    a2 = [draw() for _ in range(n)]
    X1 = linalg.matmul(linalg.matmul(_combo(slices, a1), P), inv)
    X2 = linalg.matmul(linalg.matmul(_combo(slices, a2), P), inv)
    comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(linalg.matmul(X1, X2), linalg.matmul(X2, X1))]
    k = linalg.rank(comm)
    return k, tuple(alpha), tuple(map(tuple, P)), tuple(map(tuple, X1)), tuple(map(tuple, X2))


def strassen_lower_bound(T: Tensor, cfg: BoundConfig = DEFAULT_BOUNDS) -> StrassenReport:
    """``max ceil(rank[X1, X2] / 2) + b`` over sampled slices, for every factor role.

    For each choice of the contracted factor, the two others are ordered so
    that the B-role has the smaller dimension ``b``.  A full-rank slice
    ``T(alpha)`` restricted to a sampled ``C'`` of dimension ``b`` identifies
    slices with ``End(B)``; the commutator of two further sampled slices
    bounds the border rank from below.  Integer samples lie in
    ``[-S, S]`` and ``S`` doubles after each failed round.  Each role draws
    from its own seeded stream.
    """
    per_role: dict = {}
    best = None
    for contracted in FACTORS:
        rest = [f for f in FACTORS if f != contracted]
        orders = [tuple(rest)]
        da, db = (T.space.dims[FACTORS.index(f)] for f in rest)
        if da > db:
            orders = [tuple(reversed(rest))]
        elif da == db:
            orders.append(tuple(reversed(rest)))
        for order in orders:
            roles = (contracted, *order)
            slices = _slices(T, roles)
            b = len(slices[0])
            # one stream per role, so raising the trial count only adds samples
            rng = random.Random(f"{cfg.seed}/{''.join(roles)}")
            role_best = None
            S = cfg.sample_range
            for trial in range(cfg.trials):
                got = _role_bound(slices, rng, S)
                if got is None:
                    if trial and trial % 8 == 0:
                        S *= 2
                    continue
                k = got[0]
                w = StrassenWitness(math.ceil(k / 2) + b, k, b, roles, *got[1:])
                if role_best is None or w.bound > role_best.bound:
                    role_best = w
            per_role[roles] = None if role_best is None else role_best.bound
            if role_best is not None and (best is None or role_best.bound > best.bound):
                best = role_best
    if best is None:
        raise BoundError("max-rank slice not found")
    return StrassenReport(best.bound, best, per_role)


# ---------------------------------------------------------------------------
# Bound table


@dataclass(frozen=True)
class BoundRow:
    n: int
    lower: int
    upper: int
    known: int | None = None


def upper_bound_table(n_max: int) -> list[BoundRow]:
    """``3n <= border rank of M<n,2,2> <= 3n + ceil(n/7)``.

    For ``n = 1, 2`` the upper bound is attained (4 and 7), so both
    entries of those rows hold the exact value.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    known = {1: 4, 2: 7}
    rows = []
    for n in range(1, n_max + 1):
        lower, upper = 3 * n, 3 * n + math.ceil(n / 7)
        k = known.get(n)
        if k is not None:
            lower = upper = k
        rows.append(BoundRow(n, lower, upper, k))
    return rows


# ---------------------------------------------------------------------------
# Gluing


class GlueError(ValueError):
    def __init__(self, message: str, residual: Tensor | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class Embedding:
    """Placement of a BCLRS(m) algorithm inside M<n,2,2>.

    ``rows[i]`` is the row (U index, 0-based) receiving row ``i``;
    ``swap_v`` exchanges the two V indices, ``swap_w`` the two W indices.
    """

    rows: tuple
    swap_v: bool = False
    swap_w: bool = False

    def describe(self) -> str:
        rows = ",".join(str(r + 1) for r in self.rows)
        flips = [s for s, on in (("V swapped", self.swap_v), ("W swapped", self.swap_w)) if on]
        return f"rows {rows}" + (" (" + ", ".join(flips) + ")" if flips else "")

    def coord_maps(self) -> dict:
        sv = (lambda j: 1 - j) if self.swap_v else (lambda j: j)
        sw = (lambda k: 1 - k) if self.swap_w else (lambda k: k)
        return {
            "A": lambda rc: (self.rows[rc[0]], sv(rc[1])),
            "B": lambda rc: (sv(rc[0]), sw(rc[1])),
            "C": lambda rc: (sw(rc[0]), self.rows[rc[1]]),
        }


def embed_algorithm(alg: BorderRankAlgorithm, emb: Embedding, space: TensorSpace, shift: int = 0) -> list:
    """Curves of ``alg`` mapped into ``space``; weights multiplied by ``t^shift``."""
    maps = emb.coord_maps()
    out = []
    for curve, w in zip(alg.terms, alg.weights):
        vecs = {}
        for f in FACTORS:
            vec = {}
            for n, p in curve.factor(f).items():
                rc = maps[f](alg.space.coords(f)[n])
                idx = space.coord_index(f, rc)
                if idx is None:
                    raise GlueError(f"embedding sends {alg.space.label(f, n)} to a deleted coordinate")
                vec[idx] = p
            vecs[f] = vec
        out.append((RankOneCurve(vecs["A"], vecs["B"], vecs["C"]), w.shift(shift)))
    return out


def _check_bclrs(alg: BorderRankAlgorithm) -> int:
    mm = alg.space.matmul
    if mm is None or mm[1:] != (2, 2) or alg.space.deleted != (("A", (0, 0)),):
        raise GlueError(f"{alg.id or 'input'} is not an algorithm for a BCLRS tensor")
    return mm[0]


def glue_with(left: BorderRankAlgorithm, right: BorderRankAlgorithm, emb_left: Embedding, emb_right: Embedding) -> BorderRankAlgorithm:
    """Sum of the two embedded algorithms in ``M<n,2,2>`` without verification."""
    m, m2 = _check_bclrs(left), _check_bclrs(right)
    n = m + m2 - 1
    space = TensorSpace.for_matmul(n, 2, 2)
    h = max(left.order, right.order)
    pairs = embed_algorithm(left, emb_left, space, h - left.order) + embed_algorithm(right, emb_right, space, h - right.order)
    labels = tuple(f"L{lab}" for lab in left.labels) + tuple(f"R{lab}" for lab in right.labels)
    notes = (
        f"left {left.id or 'algorithm'}: {emb_left.describe()}",
        f"right {right.id or 'algorithm'}: {emb_right.describe()}",
    )
    return BorderRankAlgorithm(
        space, tuple(c for c, _ in pairs), tuple(w for _, w in pairs), h, f"matmul({n},2,2)",
        id=f"glue({left.id},{right.id})", notes=notes, labels=labels,
    )


def standard_embeddings(m: int, m2: int) -> tuple[Embedding, Embedding]:
    """Left copy on rows ``1..m``; right copy, with V and W swapped, on rows ``1, m+1, ..., n``.

    The right copy's missing entry then sits at ``x^1_2``, which the left
    copy supplies, while the right copy supplies the left copy's ``x^1_1``.
    Swapping W as well puts the two copies' W-flags in opposite position, so
    the limit plane is stabilized only by diagonal elements of the
    special linear algebras; without it both copies share one Borel
    direction of W.  Both placements verify.
    """
    n = m + m2 - 1
    return Embedding(tuple(range(m))), Embedding((0, *range(m, n)), swap_v=True, swap_w=True)


@dataclass(frozen=True)
class GlueReport:
    algorithm: BorderRankAlgorithm
    embeddings: tuple
    verified: bool

    def lines(self) -> list[str]:
        return [
            f"glued {self.algorithm.id}: {self.algorithm.r} terms, h = {self.algorithm.order}, target {self.algorithm.target}",
            *(f"  {note}" for note in self.algorithm.notes),
            f"  verified: {self.verified}",
        ]


def glue(left: BorderRankAlgorithm, right: BorderRankAlgorithm) -> GlueReport:
    """Border rank algorithm for ``M<m+m'-1,2,2>`` from algorithms for two BCLRS tensors."""
    from .verify import residual_by_power, verify_border_rank

    m, m2 = _check_bclrs(left), _check_bclrs(right)
    for alg in (left, right):
        rep = verify_border_rank(alg)
        if not rep.passed:
            raise GlueError(f"input {alg.id or 'algorithm'} does not verify (first failure t^{rep.first_failure})", rep.residual)
    e1, e2 = standard_embeddings(m, m2)
    out = glue_with(left, right, e1, e2)
    rep = verify_border_rank(out)
    if not rep.passed:
        raise GlueError("glued algorithm does not verify", rep.residual)
    return GlueReport(out, (e1, e2), True)


def search_embeddings(left: BorderRankAlgorithm, right: BorderRankAlgorithm) -> list[tuple[Embedding, Embedding]]:
    """Every placement (row sets, V/W swaps) of the right copy, left copy on rows ``1..m``, that verifies."""
    from .verify import verify_border_rank

    m, m2 = _check_bclrs(left), _check_bclrs(right)
    n = m + m2 - 1
    e1 = Embedding(tuple(range(m)))
    found = []
    for rows in itertools.permutations(range(n), m2):
        for sv, sw in itertools.product((False, True), repeat=2):
            e2 = Embedding(rows, sv, sw)
            try:
                alg = glue_with(left, right, e1, e2)
            except GlueError:
                continue
            if verify_border_rank(alg).passed:
                found.append((e1, e2))
    return found


__all__ = [
    "BoundConfig",
    "BoundError",
    "BoundRow",
    "DEFAULT_BOUNDS",
    "Embedding",
    "GlueError",
    "GlueReport",
    "StrassenReport",
    "embed_algorithm",
    "glue",
    "glue_with",
    "search_embeddings",
    "standard_embeddings",
    "strassen_lower_bound",
    "upper_bound_table",
]
