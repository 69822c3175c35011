"""Segre geometry: rank-one tests, lines, tangent spaces and limit planes.

Points of ``Seg(PA × PB × PC)`` are :class:`~borderrank.tensor.RankOnePoint`
values.  A :class:`SegreLine` moves one factor in a pencil and fixes the
other two.  Subspaces of ``A⊗B⊗C`` are :class:`~borderrank.linalg.LinearSubspace`
values in canonical echelon form, so equality is a data comparison.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from . import linalg
from .arith import MultiPoly, format_rational
from .catalog.model import BorderRankAlgorithm, CatalogError
from .linalg import LinearSubspace
from .tensor import FACTORS, RankOnePoint, SpaceError, Tensor, TensorSpace, format_vector


class GeometryError(ValueError):
    pass


KIND = {"A": "alpha", "B": "beta", "C": "gamma"}

# Pencil names by factor: (rows move, columns move).  A = U*⊗V, B = V*⊗W, C = W*⊗U.
_PENCIL_NAMES = {"A": ("mu*", "nu"), "B": ("nu*", "omega"), "C": ("omega*", "mu")}


def _dense(vec: Mapping[int, Fraction] | Sequence, dim: int) -> tuple:
    if isinstance(vec, Mapping):
        out = [Fraction(0)] * dim
        for n, x in vec.items():
            out[n] = Fraction(x)
        return tuple(out)
    return tuple(Fraction(x) for x in vec)


def _proportional(u: Sequence, v: Sequence) -> bool:
    return linalg.rank([list(u), list(v)]) == 1


# ---------------------------------------------------------------------------
# Points


def is_rank_one(T: Tensor) -> RankOnePoint | None:
    """Factor ``T = a⊗b⊗c`` if possible, else ``None``.

    Reads the three fibres through a nonzero entry and checks that their
    product reproduces ``T`` exactly, which is equivalent to the vanishing
    of all 2×2 minors of the flattenings.
    """
    if not T:
        raise GeometryError("the zero tensor has rank zero, not one")
    (i0, j0, k0), v0 = next(iter(T.items()))
    sp = T.space
    a = [T[(i, j0, k0)] for i in range(sp.dims[0])]
    b = [T[(i0, j, k0)] / v0 for j in range(sp.dims[1])]
    c = [T[(i0, j0, k)] / v0 for k in range(sp.dims[2])]
    if Tensor.outer(sp, a, b, c) != T:
        return None
    return RankOnePoint(a, b, c).normalized()


def tangent_space(p: RankOnePoint, space: TensorSpace) -> LinearSubspace:
    """Affine tangent space ``A⊗b⊗c + a⊗B⊗c + a⊗b⊗C``; dimension ``a+b+c-2``."""
    a, b, c = p.factors()
    vecs = []
    for pos, f in enumerate(FACTORS):
        for n in range(space.dim(f)):
            e = [Fraction(0)] * space.dim(f)
            e[n] = Fraction(1)
            fac = [a, b, c]
            fac[pos] = e
            vecs.append(Tensor.outer(space, *fac).vector())
    return LinearSubspace.span(vecs, space.ambient_dim)


# ---------------------------------------------------------------------------
# Lines


@dataclass(frozen=True)
class SegreLine:
    """``fixed ⊗ ⟨pencil⟩ ⊗ fixed`` with ``moving`` the factor in the pencil."""

    space: TensorSpace
    moving: str
    fixed: tuple  # the two fixed factor vectors, in factor order, normalized
    pencil: tuple  # echelon basis (two vectors) of the moving factor's pencil

    def __post_init__(self):
        fixed = tuple(tuple(_normalize(v)) for v in self.fixed)
        red, _ = linalg.rref([list(v) for v in self.pencil], self.space.dim(self.moving))
        if len(red) != 2:
            raise GeometryError("a line needs a two-dimensional pencil")
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "pencil", tuple(tuple(r) for r in red))

    @classmethod
    def make(cls, space: TensorSpace, moving: str, fixed: Mapping[str, Sequence], pencil: Sequence[Sequence]) -> "SegreLine":
        others = [f for f in FACTORS if f != moving]
        return cls(space, moving, tuple(_dense(fixed[f], space.dim(f)) for f in others), tuple(pencil))

    @property
    def kind(self) -> str:
        return KIND[self.moving]

    def fixed_factor(self, f: str) -> tuple:
        return self.fixed[[g for g in FACTORS if g != self.moving].index(f)]

    def point(self, s, t) -> RankOnePoint:
        v = [Fraction(s) * x + Fraction(t) * y for x, y in zip(*self.pencil)]
        vecs = {self.moving: v}
        vecs.update({f: self.fixed_factor(f) for f in FACTORS if f != self.moving})
        return RankOnePoint(*(vecs[f] for f in FACTORS))

    def sample(self, n: int = 5) -> list[RankOnePoint]:
        pts = [self.point(1, 0), self.point(0, 1)]
        pts += [self.point(1, k) for k in range(1, n - 1)]
        return pts[:n]

    def contains(self, p: RankOnePoint) -> bool:
        vecs = dict(zip(FACTORS, p.factors()))
        for f in FACTORS:
            if f == self.moving:
                if linalg.rank([list(r) for r in self.pencil] + [list(vecs[f])]) != 2:
                    return False
            elif not _proportional(vecs[f], self.fixed_factor(f)):
                return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SegreLine)
            and self.space == other.space
            and self.moving == other.moving
            and self.fixed == other.fixed
            and self.pencil == other.pencil
        )

    def __hash__(self) -> int:
        return hash((self.moving, self.fixed, self.pencil))

    def span(self) -> LinearSubspace:
        return LinearSubspace.span([self.point(1, 0).tensor(self.space).vector(), self.point(0, 1).tensor(self.space).vector()])

    # matrix structure ---------------------------------------------------

    def _matrix(self, f: str, vec: Sequence) -> list[list[Fraction]]:
        rows, cols = self.space.full_shape(f)
        m = [[Fraction(0)] * cols for _ in range(rows)]
        for n, (r, c) in enumerate(self.space.coords(f)):
            m[r][c] = Fraction(vec[n])
        return m

    def pencil_type(self) -> str | None:
        """``"nu"``, ``"mu*"``, ... when every pencil member is a rank-one matrix."""
        if self.space.matmul is None:
            return None
        m1, m2 = (self._matrix(self.moving, v) for v in self.pencil)
        if linalg.rank(m1) != 1 or linalg.rank(m2) != 1:
            return None
        rows_move, cols_move = _PENCIL_NAMES[self.moving]
        # same row space (one common row vector) means the rows move
        if linalg.rank(m1 + m2) == 1:
            return rows_move
        if linalg.rank(linalg.transpose(m1) + linalg.transpose(m2)) == 1:
            return cols_move
        return None

    def fixed_rank_one(self) -> bool:
        if self.space.matmul is None:
            return False
        return all(linalg.rank(self._matrix(f, self.fixed_factor(f))) == 1 for f in FACTORS if f != self.moving)

    @property
    def tag(self) -> str:
        pt = self.pencil_type()
        return f"({self.kind},{pt})" if pt else self.kind

    @property
    def special(self) -> bool:
        return self.pencil_type() is not None and self.fixed_rank_one()

    def describe(self) -> str:
        parts = []
        for f in FACTORS:
            if f == self.moving:
                parts.append("⟨" + ", ".join(format_vector(self.space, f, v) for v in self.pencil) + "⟩")
            else:
                parts.append("(" + format_vector(self.space, f, self.fixed_factor(f)) + ")")
        label = ("special " if self.special else "") + self.tag
        return f"{label} line " + "⊗".join(parts)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "tag": self.tag,
            "special": self.special,
            "fixed": {f: format_vector(self.space, f, self.fixed_factor(f)) for f in FACTORS if f != self.moving},
            "pencil": [format_vector(self.space, self.moving, v) for v in self.pencil],
        }


def _normalize(v: Sequence) -> list[Fraction]:
    lead = next(x for x in v if x)
    return [Fraction(x) / lead for x in v]


def line_through(p: RankOnePoint, q: RankOnePoint, space: TensorSpace | None = None) -> SegreLine | None:
    """The Segre line through two distinct points, if they differ in exactly one factor."""
    diff = [f for f, u, v in zip(FACTORS, p.factors(), q.factors()) if not _proportional(u, v)]
    if len(diff) != 1:
        return None
    if space is None:
        space = TensorSpace.plain(*(len(v) for v in p.factors()))
    f = diff[0]
    pv, qv = dict(zip(FACTORS, p.factors())), dict(zip(FACTORS, q.factors()))
    return SegreLine.make(space, f, {g: pv[g] for g in FACTORS if g != f}, [pv[f], qv[f]])


def tangent_space_of_line(L: SegreLine, space: TensorSpace | None = None) -> LinearSubspace:
    """Span of the tangent spaces at two points of ``L``.

    A third point is checked to give the same span, which is the statement
    that the choice of points does not matter.
    """
    space = space or L.space
    y, z, w = L.point(1, 0), L.point(0, 1), L.point(1, 1)
    span = tangent_space(y, space).join(tangent_space(z, space))
    if not span.contains_subspace(tangent_space(w, space)):
        raise GeometryError("tangent spaces along the line are not contained in one span")
    return span


# ---------------------------------------------------------------------------
# Limit planes


def _row_of(alg: BorderRankAlgorithm, n: int) -> dict:
    """Weighted curve ``n`` as ``{power: {flat index: coeff}}``."""
    T = alg.weighted_curve_tensor(n)
    row: dict = {}
    for (i, j, k), p in T.items():
        idx = alg.space.flat_index(i, j, k)
        for e, x in p.items():
            row.setdefault(e, {})[idx] = x
    return row


def _shift_to_zero(row: dict) -> dict:
    v = min(row)
    return {e - v: vec for e, vec in row.items()}


def _combine(rows: list[dict], coeffs: Sequence[Fraction]) -> dict:
    out: dict = {}
    for c, row in zip(coeffs, rows):
        if not c:
            continue
        for e, vec in row.items():
            acc = out.setdefault(e, {})
            for idx, x in vec.items():
                acc[idx] = acc.get(idx, 0) + c * x
    return {e: {i: x for i, x in vec.items() if x} for e, vec in out.items() if any(vec.values())}


def limit_plane(alg: BorderRankAlgorithm, max_steps: int = 10_000) -> LinearSubspace:
    """Grassmannian limit of ``⟨w_1 p_1(t), ..., w_r p_r(t)⟩`` as ``t → 0``.

    t-adic reduction: rows are shifted to valuation zero; while their values
    at ``t = 0`` are dependent, a dependent combination replaces one of its
    rows and is divided by its power of ``t``.  Each step lowers the
    valuation of the maximal minors, so the loop ends unless the curves are
    dependent over the function field.
    """
    N = alg.space.ambient_dim
    rows = [_shift_to_zero(_row_of(alg, n)) for n in range(alg.r)]
    for _ in range(max_steps):
        lead = [_dense(row.get(0, {}), N) for row in rows]
        rels = linalg.left_nullspace(lead)
        if not rels:
            return LinearSubspace.span(lead, N)
        rel = rels[0]
        # replace the last row taking part: any row with nonzero coefficient works
        pos = max(i for i, c in enumerate(rel) if c)
        new = _combine(rows, rel)
        if not new:
            raise GeometryError("terms not generically independent")
        rows[pos] = _shift_to_zero(new)
    raise GeometryError("t-adic reduction did not terminate; check the algorithm data")


def limit_point_span(points: Sequence[RankOnePoint], space: TensorSpace) -> LinearSubspace:
    return LinearSubspace.span([p.tensor(space).vector() for p in points], space.ambient_dim)


# ---------------------------------------------------------------------------
# Parametric families


_FAM_LABEL = re.compile(r"[a-zA-Z]\^\{?\d+\}?_\{?\d+\}?")


def _multipoly_from_sympy(expr, params: Sequence[str]) -> MultiPoly:
    if expr == 0:
        return MultiPoly.zero()
    syms = [sympy.Symbol(p) for p in params]
    poly = sympy.Poly(sympy.expand(expr), *syms)
    out = MultiPoly.zero()
    for exps, coeff in poly.terms():
        term = MultiPoly.const(Fraction(int(coeff.p), int(coeff.q)))
        for name, e in zip(params, exps):
            for _ in range(e):
                term = term * MultiPoly.var(name)
        out = out + term
    return out


def parse_family_factor(text: str, space: TensorSpace, factor: str, params: Sequence[str]) -> list[MultiPoly]:
    """Read a linear form such as ``"sigma x^1_2 + tau x^2_1"`` into MultiPoly coordinates."""
    labels = {}

    def sub(m):
        lab = m.group(0).replace("{", "").replace("}", "")
        f, n = space.parse_label(lab)
        if f != factor:
            raise GeometryError(f"label {lab} does not belong to factor {factor}")
        return labels.setdefault(n, f"_L{n}")

    body = _FAM_LABEL.sub(sub, text)
    body = re.sub(r"(?<=[\w)])\s+(?=[\w(])", "*", body.strip())
    local = {p: sympy.Symbol(p) for p in params}
    local.update({name: sympy.Symbol(name) for name in labels.values()})
    expr = sympy.expand(sympy.sympify(body.replace("^", "**"), locals=local))
    out = [MultiPoly.zero() for _ in range(space.dim(factor))]
    for n, name in labels.items():
        out[n] = _multipoly_from_sympy(expr.coeff(sympy.Symbol(name)), params)
    return out


@dataclass(frozen=True)
class ParametricFamily:
    """Rank-one family ``a(params)⊗b(params)⊗c(params)`` with MultiPoly coordinates."""

    space: TensorSpace
    params: tuple
    a: tuple
    b: tuple
    c: tuple
    name: str = ""

    @classmethod
    def from_strings(cls, space: TensorSpace, params: Sequence[str], a: str, b: str, c: str, name: str = "") -> "ParametricFamily":
        vecs = [tuple(parse_family_factor(s, space, f, params)) for s, f in zip((a, b, c), FACTORS)]
        return cls(space, tuple(params), *vecs, name=name)

    @classmethod
    def from_dict(cls, space: TensorSpace, doc: Mapping, name: str = "") -> "ParametricFamily":
        return cls.from_strings(space, doc["params"], doc["a"], doc["b"], doc["c"], name)

    @classmethod
    def from_line(cls, L: SegreLine) -> "ParametricFamily":
        s, t = MultiPoly.var("s"), MultiPoly.var("t")
        vecs = {L.moving: tuple(s * x + t * y for x, y in zip(*L.pencil))}
        for f in FACTORS:
            if f != L.moving:
                vecs[f] = tuple(MultiPoly.const(x) for x in L.fixed_factor(f))
        return cls(L.space, ("s", "t"), vecs["A"], vecs["B"], vecs["C"], L.tag)

    def polynomial_tensor(self) -> dict:
        """``{flat index: MultiPoly}`` for the outer product."""
        out = {}
        for i, pa in enumerate(self.a):
            if not pa:
                continue
            for j, pb in enumerate(self.b):
                if not pb:
                    continue
                pab = pa * pb
                for k, pc in enumerate(self.c):
                    if pc:
                        out[self.space.flat_index(i, j, k)] = pab * pc
        return out

    def at(self, values: Mapping[str, object]) -> RankOnePoint | None:
        vecs = [[p.evaluate(values) if p else Fraction(0) for p in v] for v in (self.a, self.b, self.c)]
        if not all(any(v) for v in vecs):
            return None
        return RankOnePoint(*vecs)

    def sample_points(self, values: Sequence[int] = range(-2, 3)) -> list[tuple[dict, RankOnePoint]]:
        out = []
        for combo in itertools.product(values, repeat=len(self.params)):
            assign = dict(zip(self.params, (Fraction(v) for v in combo)))
            p = self.at(assign)
            if p is not None:
                out.append((assign, p))
        return out


def contains_family(E: LinearSubspace, F: ParametricFamily) -> bool:
    """Exact identity test: every monomial coefficient of ``F``'s outer product lies in ``E``."""
    if E.ambient != F.space.ambient_dim:
        raise SpaceError("family and subspace live in different ambient spaces")
    by_mono: dict = {}
    for idx, p in F.polynomial_tensor().items():
        for mono, x in p.items():
            by_mono.setdefault(mono, {})[idx] = x
    return all(E.contains(_dense(vec, E.ambient)) for vec in by_mono.values())


def export_plot_data(F: ParametricFamily, values: Sequence[int] = range(-2, 3)) -> list[dict]:
    """Sampled points of a family, exact and as floats, for external plotting."""
    out = []
    for assign, p in F.sample_points(values):
        p = p.normalized()
        out.append(
            {
                "params": {k: format_rational(v) for k, v in assign.items()},
                "point": {f: [format_rational(x) for x in v] for f, v in zip(FACTORS, p.factors())},
                "float": {f: [float(x) for x in v] for f, v in zip(FACTORS, p.factors())},
            }
        )
    return out


# ---------------------------------------------------------------------------
# Intersections with a 2×2×2 coordinate sub-Segre


@dataclass(frozen=True)
class Component:
    kind: str  # "line" | "point" | "curve" | "surface" | "block"
    dimension: int
    line: SegreLine | None = None
    point: RankOnePoint | None = None
    detail: str = ""
    space: TensorSpace | None = None

    def describe(self) -> str:
        if self.line is not None:
            return self.line.describe()
        if self.point is not None and self.space is not None:
            return "point " + self.point.pretty(self.space)
        return f"{self.kind} of dimension {self.dimension}: {self.detail}"

    def to_dict(self) -> dict:
        doc = {"kind": self.kind, "dimension": self.dimension}
        if self.line is not None:
            doc["line"] = self.line.to_dict()
        if self.point is not None:
            doc["point"] = {f: [format_rational(x) for x in v] for f, v in zip(FACTORS, self.point.factors())}
        if self.detail:
            doc["detail"] = self.detail
        return doc


def _block_indices(space: TensorSpace, block) -> tuple:
    out = []
    for f, pair in zip(FACTORS, block):
        if len(pair) != 2:
            raise GeometryError("a block needs two coordinates per factor")
        idx = []
        for x in pair:
            if isinstance(x, str):
                g, n = space.parse_label(x)
                if g != f:
                    raise GeometryError(f"{x} is not a coordinate of factor {f}")
            else:
                n = int(x)
                if not 0 <= n < space.dim(f):
                    raise GeometryError(f"coordinate {n} outside factor {f}")
            idx.append(n)
        if idx[0] == idx[1]:
            raise GeometryError("block coordinates must be distinct")
        out.append(tuple(idx))
    return tuple(out)


def intersect_block_segre(E: LinearSubspace, space: TensorSpace, block) -> list[Component]:
    """All points ``(s e1 + t e2)⊗(u f1 + v f2)⊗(p g1 + q g2)`` lying in ``E``.

    The membership conditions are trilinear forms in the three pairs of
    homogeneous coordinates.  Each of the 8 affine charts (every pair set to
    ``(1, x)`` or ``(0, 1)``) is solved exactly with sympy; solutions with
    one free coordinate and constant others are lines, with none are points,
    and anything else is reported as a curve or surface.  Points lying on a
    returned line are dropped.
    """
    if E.ambient != space.ambient_dim:
        raise SpaceError("subspace and space disagree on the ambient dimension")
    idx = _block_indices(space, block)
    cells = list(itertools.product(range(2), repeat=3))
    flat = [space.flat_index(idx[0][i], idx[1][j], idx[2][k]) for i, j, k in cells]
    sub = LinearSubspace.span([[Fraction(int(n == m)) for n in range(space.ambient_dim)] for m in flat], space.ambient_dim)
    inside = E.intersect(sub)
    local = LinearSubspace.span([[row[m] for m in flat] for row in inside.basis], 8)
    eqs = local.equations() if local.dim < 8 else []
    if not eqs:
        return [Component("block", 3, detail="the whole sub-Segre lies in the subspace")]

    comps: list[Component] = []
    points: list[RankOnePoint] = []
    lines: list[SegreLine] = []
    others: list[Component] = []
    for chart in itertools.product((0, 1), repeat=3):
        # chart bit 0: pair = (1, x); bit 1: pair = (0, 1)
        syms, pairs = [], []
        for f, bit in zip(FACTORS, chart):
            if bit == 0:
                x = sympy.Symbol(f"{f.lower()}x")
                syms.append(x)
                pairs.append((sympy.Integer(1), x))
            else:
                pairs.append((sympy.Integer(0), sympy.Integer(1)))
        polys = []
        for row in eqs:
            expr = sum(
                sympy.Rational(row[n].numerator, row[n].denominator) * pairs[0][i] * pairs[1][j] * pairs[2][k]
                for n, (i, j, k) in enumerate(cells)
                if row[n]
            )
            expr = sympy.expand(expr)
            if expr != 0:
                polys.append(expr)
        if any(p.is_number for p in polys):
            continue
        sols = sympy.solve(polys, syms, dict=True) if polys else [{}]
        for sol in sols:
            free = [x for x in syms if x not in sol]
            free_used = set().union(*(sympy.sympify(v).free_symbols for v in sol.values())) if sol else set()
            coords = [[pairs[n][0].subs(sol), pairs[n][1].subs(sol)] for n in range(3)]
            if not free:
                points.append(_point_from_block(space, idx, coords))
            elif len(free) == 1 and not free_used:
                x = free[0]
                moving = FACTORS[[f"{f.lower()}x" for f in FACTORS].index(x.name)]
                fixed = {}
                for n, f in enumerate(FACTORS):
                    if f != moving:
                        fixed[f] = _embed(space, f, idx[n], coords[n])
                pencil = [_embed(space, moving, idx[FACTORS.index(moving)], (1, 0)), _embed(space, moving, idx[FACTORS.index(moving)], (0, 1))]
                L = SegreLine.make(space, moving, fixed, pencil)
                if L not in lines:
                    lines.append(L)
            else:
                dim = len(free)
                kind = "curve" if dim == 1 else "surface" if dim == 2 else "block"
                detail = ", ".join(f"{k} = {v}" for k, v in sol.items()) or "no conditions"
                c = Component(kind, dim, detail=f"chart {chart}: {detail}")
                if c not in others:
                    others.append(c)
    comps.extend(Component("line", 1, line=L) for L in lines)
    seen: list[RankOnePoint] = []
    for p in points:
        if any(L.contains(p) for L in lines) or any(p.same_point(q) for q in seen):
            continue
        seen.append(p)
        comps.append(Component("point", 0, point=p.normalized(), space=space))
    comps.extend(others)
    return comps


def _embed(space: TensorSpace, f: str, pair: tuple, coords) -> list[Fraction]:
    v = [Fraction(0)] * space.dim(f)
    for n, x in zip(pair, coords):
        x = sympy.Rational(x)
        v[n] = Fraction(int(x.p), int(x.q))
    return v


def _point_from_block(space: TensorSpace, idx: tuple, coords) -> RankOnePoint:
    return RankOnePoint(*(_embed(space, f, idx[n], coords[n]) for n, f in enumerate(FACTORS)))


# ---------------------------------------------------------------------------
# Line configurations


@dataclass(frozen=True)
class ConfigLine:
    line: SegreLine
    members: tuple  # point indices on the line
    transversal: bool = False  # found through a lone point meeting other lines


@dataclass(frozen=True)
class ConfigGroup:
    lines: tuple  # indices into the report's lines
    points: tuple
    span_dim: int
    defect: int


@dataclass(frozen=True)
class ConfigurationReport:
    space: TensorSpace
    labels: tuple
    lines: tuple
    intersections: tuple  # (line index, line index, RankOnePoint)
    groups: tuple
    lone: tuple  # point indices on no line

    def tags(self) -> list[str]:
        return [cl.line.tag for cl in self.lines]

    def lines_text(self) -> list[str]:
        out = []
        for n, cl in enumerate(self.lines):
            who = ", ".join(self.labels[i] for i in cl.members) or "-"
            extra = " (through a lone point, meets other lines)" if cl.transversal else ""
            out.append(f"L{n + 1}: {cl.line.describe()}  [{who}]{extra}")
        for i, j, p in self.intersections:
            out.append(f"L{i + 1} ∩ L{j + 1} = {p.pretty(self.space)}")
        for g in self.groups:
            pts = ", ".join(self.labels[i] for i in g.points)
            lns = ", ".join(f"L{i + 1}" for i in g.lines)
            out.append(f"group {{{pts}}} on {lns}: span dim {g.span_dim}, defect {g.defect}")
        if self.lone:
            out.append("on no line: " + ", ".join(self.labels[i] for i in self.lone))
        return out

    def to_dict(self) -> dict:
        return {
            "lines": [
                {**cl.line.to_dict(), "members": [self.labels[i] for i in cl.members], "transversal": cl.transversal}
                for cl in self.lines
            ],
            "intersections": [
                {"lines": [i + 1, j + 1], "point": {f: [format_rational(x) for x in v] for f, v in zip(FACTORS, p.factors())}}
                for i, j, p in self.intersections
            ],
            "groups": [
                {"lines": [i + 1 for i in g.lines], "points": [self.labels[i] for i in g.points], "span_dim": g.span_dim, "defect": g.defect}
                for g in self.groups
            ],
            "lone": [self.labels[i] for i in self.lone],
        }


def line_intersection(L1: SegreLine, L2: SegreLine) -> RankOnePoint | None:
    """Common point of two distinct lines, if any."""
    if L1 == L2:
        return None
    if L1.moving == L2.moving:
        for f in FACTORS:
            if f != L1.moving and not _proportional(L1.fixed_factor(f), L2.fixed_factor(f)):
                return None
        inter = LinearSubspace.span([list(v) for v in L1.pencil]).intersect(LinearSubspace.span([list(v) for v in L2.pencil]))
        if inter.dim != 1:
            return None
        vecs = {L1.moving: inter.basis[0]}
        vecs.update({f: L1.fixed_factor(f) for f in FACTORS if f != L1.moving})
        return RankOnePoint(*(vecs[f] for f in FACTORS)).normalized()
    # different moving factors: the point takes L2's fixed vector in L1's moving factor and vice versa
    vecs = {L1.moving: L2.fixed_factor(L1.moving), L2.moving: L1.fixed_factor(L2.moving)}
    third = next(f for f in FACTORS if f not in vecs)
    if not _proportional(L1.fixed_factor(third), L2.fixed_factor(third)):
        return None
    vecs[third] = L1.fixed_factor(third)
    p = RankOnePoint(*(vecs[f] for f in FACTORS))
    return p.normalized() if L1.contains(p) and L2.contains(p) else None


def _transversals(p: RankOnePoint, lines: Sequence[SegreLine], space: TensorSpace) -> list[SegreLine]:
    """Lines through ``p`` that meet at least two of ``lines``."""
    cands: dict = {}
    pv = dict(zip(FACTORS, p.factors()))
    for n, L in enumerate(lines):
        for K in FACTORS:
            # q on L agreeing with p except in factor K
            q = {}
            ok = True
            for f in FACTORS:
                if f == K:
                    q[f] = L.fixed_factor(f) if f != L.moving else None
                elif f == L.moving:
                    if linalg.rank([list(r) for r in L.pencil] + [list(pv[f])]) != 2:
                        ok = False
                    q[f] = pv[f]
                else:
                    if not _proportional(pv[f], L.fixed_factor(f)):
                        ok = False
                    q[f] = pv[f]
            if not ok or q[K] is None:
                continue
            M = line_through(p, RankOnePoint(*(q[f] for f in FACTORS)), space)
            if M is not None:
                cands.setdefault(M, set()).add(n)
    return [M for M, hit in cands.items() if len(hit) >= 2 and M not in lines]


def line_configuration_report(points: Sequence[RankOnePoint], space: TensorSpace, labels: Sequence[str] | None = None) -> ConfigurationReport:
    """Group points by the Segre lines they share.

    Lines through two or more of the points are found pairwise; a point on
    none of them contributes any line through it meeting two found lines.
    Lines that meet (directly or through shared points) form groups; each
    group's defect is its number of points minus the dimension of their span.
    """
    if len(points) < 2:
        raise GeometryError("need at least two points")
    labels = tuple(labels or (f"p{n + 1}" for n in range(len(points))))
    found: list[SegreLine] = []
    for i, j in itertools.combinations(range(len(points)), 2):
        L = line_through(points[i], points[j], space)
        if L is not None and L not in found:
            found.append(L)
    members = [tuple(n for n, p in enumerate(points) if L.contains(p)) for L in found]
    on_line = {n for m in members for n in m}
    lone = [n for n in range(len(points)) if n not in on_line]
    clines = [ConfigLine(L, m) for L, m in zip(found, members)]
    for n in lone:
        for M in _transversals(points[n], found, space):
            if all(M != cl.line for cl in clines):
                clines.append(ConfigLine(M, tuple(k for k, p in enumerate(points) if M.contains(p)), True))
    inters = []
    for i, j in itertools.combinations(range(len(clines)), 2):
        q = line_intersection(clines[i].line, clines[j].line)
        if q is not None:
            inters.append((i, j, q))
    # connected groups of lines (meeting or sharing points)
    parent = list(range(len(clines)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in inters:
        parent[find(j)] = find(i)
    groups = {}
    for n in range(len(clines)):
        groups.setdefault(find(n), []).append(n)
    out_groups = []
    for _, lns in sorted(groups.items(), key=lambda kv: kv[1][0]):
        pts = sorted({k for n in lns for k in clines[n].members})
        if not pts:
            continue
        span = limit_point_span([points[k] for k in pts], space)
        out_groups.append(ConfigGroup(tuple(lns), tuple(pts), span.dim, len(pts) - span.dim))
    still_lone = tuple(n for n in lone if all(n not in cl.members for cl in clines))
    return ConfigurationReport(space, labels, tuple(clines), tuple(inters), tuple(out_groups), still_lone)


__all__ = [
    "Component",
    "ConfigurationReport",
    "GeometryError",
    "ParametricFamily",
    "SegreLine",
    "contains_family",
    "export_plot_data",
    "intersect_block_segre",
    "is_rank_one",
    "limit_plane",
    "limit_point_span",
    "line_configuration_report",
    "line_intersection",
    "line_through",
    "parse_family_factor",
    "tangent_space",
    "tangent_space_of_line",
]
