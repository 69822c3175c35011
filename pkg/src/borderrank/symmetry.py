"""Lie-algebra actions, stabilizer dimensions, and discrete symmetries of algorithms.

Sign convention: ``X = (X_U, X_V, X_W)`` acts on ``A = U*⊗V`` by
``M -> -X_U^T M + M X_V^T`` on the coefficient matrix ``M`` of
``sum M[i][j] x^i_j`` (rows of ``M`` carry the ``U*`` index, columns the ``V``
index), and likewise on ``B = V*⊗W`` and ``C = W*⊗U``.  This is the
derivative at the identity of :func:`borderrank.tensor.apply_gl`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .arith import LaurentPoly, rational
from .catalog.model import BorderRankAlgorithm, RankOneCurve
from .linalg import LinearSubspace
from .tensor import (
    FACTORS,
    RankOnePoint,
    SpaceError,
    Tensor,
    TensorSpace,
    apply_gl,
    factor_image,
    factor_maps_from_gl,
    permutation_matrix,
    symmetry_relabel,
)

# the two spaces (row index, column index) each factor of a matmul tensor pairs
_SIDES = {"A": ("U", "V"), "B": ("V", "W"), "C": ("W", "U")}
_VECTOR_SPACES = ("U", "V", "W")
KINDS = ("gl", "sl", "t", "tgl", "gu", "0")


# ---------------------------------------------------------------------------
# Lie algebras


def _unit(n: int, i: int, j: int) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def _h(n: int, k: int) -> list[list[Fraction]]:
    m = _unit(n, k, k)
    m[k + 1][k + 1] = Fraction(-1)
    return m


def _summand_basis(kind: str, n: int) -> list:
    if kind == "0":
        return []
    if kind == "gl":
        return [_unit(n, i, j) for i in range(n) for j in range(n)]
    if kind == "tgl":
        return [_unit(n, i, i) for i in range(n)]
    if kind == "t":
        return [_h(n, k) for k in range(n - 1)]
    if kind == "sl":
        return [_unit(n, i, j) for i in range(n) for j in range(n) if i != j] + [_h(n, k) for k in range(n - 1)]
    if kind == "gu":
        # (1, n-1) block diagonal, traceless
        off = [_unit(n, i, j) for i in range(1, n) for j in range(1, n) if i != j]
        return off + [_h(n, k) for k in range(n - 1)]
    raise ValueError(f"unknown algebra kind {kind!r}; expected one of {', '.join(KINDS)}")


@dataclass(frozen=True)
class LieAlgebraSpec:
    """A direct sum ``g_U ⊕ g_V ⊕ g_W`` with one summand kind per vector space.

    Kinds: ``gl``, ``sl``, ``t`` (traceless diagonal), ``tgl`` (all diagonal),
    ``gu`` (block diagonal for the split ``1 + (n-1)``, traceless) and ``0``.
    """

    kinds: tuple
    dims: tuple  # (u, v, w)
    basis: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.kinds) != 3 or len(self.dims) != 3:
            raise ValueError("need one kind and one dimension per vector space")
        gens = []
        for pos, (kind, n) in enumerate(zip(self.kinds, self.dims)):
            for m in _summand_basis(kind, n):
                triple = [None, None, None]
                triple[pos] = m
                gens.append(tuple(t if t is not None else [[Fraction(0)] * d for _ in range(d)] for t, d in zip(triple, self.dims)))
        object.__setattr__(self, "basis", tuple(gens))

    @classmethod
    def parse(cls, text: str, dims: Sequence[int]) -> "LieAlgebraSpec":
        """``"sl:sl:sl"`` or ``"gu:t:sl"``."""
        kinds = tuple(k.strip() for k in text.split(":"))
        if len(kinds) != 3:
            raise ValueError(f"algebra {text!r} must name three summands separated by ':'")
        for k in kinds:
            if k not in KINDS:
                raise ValueError(f"unknown algebra kind {k!r}; expected one of {', '.join(KINDS)}")
        return cls(kinds, tuple(dims))

    @classmethod
    def for_space(cls, text: str, space: TensorSpace) -> "LieAlgebraSpec":
        """Summands for ``U:V:W``, or for ``A:B:C`` on a plain space."""
        return cls.parse(text, space.dims if space.matmul is None else space.matmul)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def describe(self) -> str:
        return " ⊕ ".join(f"{k}({n})" for k, n in zip(self.kinds, self.dims))

    def combine(self, coeffs: Sequence) -> tuple:
        """The element ``sum coeffs[i] * basis[i]`` as three matrices."""
        out = [[[Fraction(0)] * n for _ in range(n)] for n in self.dims]
        for c, gen in zip(coeffs, self.basis):
            if c:
                for m, g in zip(out, gen):
                    for i, row in enumerate(g):
                        for j, x in enumerate(row):
                            if x:
                                m[i][j] += c * x
        return tuple(out)


def is_diagonal(X: Sequence) -> bool:
    return all(not x for m in X for i, row in enumerate(m) for j, x in enumerate(row) if i != j)


# ---------------------------------------------------------------------------
# Infinitesimal action


def _plain_derivations(space: TensorSpace, X: Sequence) -> dict:
    out = {}
    for f, m, n in zip(FACTORS, X, space.dims):
        m = [[rational(x) for x in row] for row in m]
        if len(m) != n or any(len(row) != n for row in m):
            raise SpaceError(f"X_{f} must be {n}x{n}")
        out[f] = {(r, 0): {(r2, 0): m[r2][r] for r2 in range(n) if m[r2][r]} for r in range(n)}
    return out


def factor_derivations(space: TensorSpace, X: Sequence) -> dict:
    """Per-factor derivation ``{(r, c): {(r', c'): coeff}}`` on full coordinates.

    On a space with matrix structure ``X = (X_U, X_V, X_W)``; on a plain
    space ``X = (X_A, X_B, X_C)`` acts on the factors directly.
    """
    if space.matmul is None:
        return _plain_derivations(space, X)
    mats = dict(zip(_VECTOR_SPACES, ([[rational(x) for x in row] for row in m] for m in X)))
    for name, n in zip(_VECTOR_SPACES, space.matmul):
        m = mats[name]
        if len(m) != n or any(len(row) != n for row in m):
            raise SpaceError(f"X_{name} must be {n}x{n}")
    out = {}
    for f in FACTORS:
        rs, cs = _SIDES[f]
        L, Rm = mats[rs], mats[cs]
        R, C = space.full_shape(f)
        d = {}
        for r in range(R):
            for c in range(C):
                img: dict = {}
                for r2 in range(R):
                    x = L[r][r2]  # -X^T[r2][r] acting on the dual index
                    if x:
                        img[(r2, c)] = img.get((r2, c), 0) - x
                for c2 in range(C):
                    x = Rm[c2][c]
                    if x:
                        img[(r, c2)] = img.get((r, c2), 0) + x
                d[(r, c)] = {k: v for k, v in img.items() if v}
        out[f] = d
    return out


def lie_act(X: Sequence, T: Tensor) -> Tensor:
    """``X . T`` for ``X = (X_U, X_V, X_W)``; raises if ``X`` leaves a deleted coordinate."""
    sp = T.space
    der = factor_derivations(sp, X)
    cache: dict = {}

    def img(f, n):
        key = (f, n)
        if key not in cache:
            cache[key] = factor_image(sp, f, der[f], n)
        return cache[key]

    e: dict = {}
    for (i, j, k), val in T.items():
        for i2, x in img("A", i).items():
            e[(i2, j, k)] = e.get((i2, j, k), 0) + val * x
        for j2, x in img("B", j).items():
            e[(i, j2, k)] = e.get((i, j2, k), 0) + val * x
        for k2, x in img("C", k).items():
            e[(i, j, k2)] = e.get((i, j, k2), 0) + val * x
    return Tensor(sp, e)


def _check_algebra(space: TensorSpace, g: LieAlgebraSpec):
    if tuple(space.dims if space.matmul is None else space.matmul) != tuple(g.dims):
        raise SpaceError(f"algebra {g.describe()} does not act on {space.describe()}")


def tensor_stabilizer_dim(T: Tensor, g: LieAlgebraSpec) -> int:
    """``dim {X in g : X . T = 0}``."""
    _check_algebra(T.space, g)
    if g.dim == 0:
        return 0
    cols = [lie_act(X, T).vector() for X in g.basis]
    return g.dim - linalg.rank(cols)


@dataclass(frozen=True)
class StabilizerReport:
    algebra: str
    algebra_dim: int
    plane_dim: int
    stab_dim: int
    orbit_dim: int
    kernel: tuple  # kernel basis as (X_U, X_V, X_W) triples

    @property
    def kernel_diagonal(self) -> bool:
        return all(is_diagonal(X) for X in self.kernel)

    def lines(self) -> list[str]:
        out = [
            f"algebra {self.algebra} (dim {self.algebra_dim}) on a {self.plane_dim}-plane",
            f"stabilizer dim {self.stab_dim}, orbit dim {self.orbit_dim}",
            f"stabilizer spanned by diagonal elements: {self.kernel_diagonal}",
        ]
        for n, X in enumerate(self.kernel, 1):
            diag = "; ".join(
                name + "=diag(" + ", ".join(str(m[i][i]) for i in range(len(m))) + ")" if is_diagonal([m])
                else name + "=[" + "; ".join(" ".join(str(x) for x in row) for row in m) + "]"
                for name, m in zip(_VECTOR_SPACES, X)
            )
            out.append(f"  K{n}: {diag}")
        return out

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "algebraDim": self.algebra_dim,
            "planeDim": self.plane_dim,
            "stabDim": self.stab_dim,
            "orbitDim": self.orbit_dim,
            "kernelDiagonal": self.kernel_diagonal,
            "kernelBasis": [{n: [[str(x) for x in row] for row in m] for n, m in zip(_VECTOR_SPACES, X)} for X in self.kernel],
        }


def plane_stabilizer(E: LinearSubspace, space: TensorSpace, g: LieAlgebraSpec) -> StabilizerReport:
    """Stabilizer of the plane ``E`` in ``g``: kernel of ``X -> (X . e_i mod E)_i``."""
    _check_algebra(space, g)
    if E.ambient != space.ambient_dim:
        raise SpaceError("plane and space disagree on the ambient dimension")
    basis = [Tensor.from_vector(space, v) for v in E.basis]
    cols = []
    for X in g.basis:
        col = []
        for e in basis:
            col.extend(E.reduce(lie_act(X, e).vector()))
        cols.append(col)
    if g.dim == 0:
        kernel = []
    elif not cols[0]:
        kernel = linalg.nullspace([], g.dim)
    else:
        kernel = linalg.nullspace(linalg.transpose(cols), g.dim)
    elems = tuple(g.combine(k) for k in kernel)
    return StabilizerReport(g.describe(), g.dim, E.dim, len(kernel), g.dim - len(kernel), elems)


def plane_stabilizer_dim(E: LinearSubspace, space: TensorSpace, g: LieAlgebraSpec) -> tuple[int, int]:
    rep = plane_stabilizer(E, space, g)
    return rep.stab_dim, rep.orbit_dim


# ---------------------------------------------------------------------------
# Discrete actions on algorithms


@dataclass(frozen=True)
class SymmetryStep:
    """Either a relabeling (``"cyclic"``, ``"transpose-cycle"``) or a GL triple."""

    relabel: str | None = None
    gl: tuple | None = None

    def __post_init__(self):
        if (self.relabel is None) == (self.gl is None):
            raise ValueError("a symmetry step is a relabeling or a GL triple, not both")
        if self.gl is not None:
            object.__setattr__(self, "gl", tuple(tuple(tuple(rational(x) for x in row) for row in m) for m in self.gl))

    def describe(self) -> str:
        if self.relabel:
            return self.relabel
        return "GL(" + ", ".join("I" if m == tuple(tuple(Fraction(int(i == j)) for j in range(len(m))) for i in range(len(m))) else str([[str(x) for x in r] for r in m]) for m in self.gl) + ")"


def permutation_step(space_dims: Sequence[int], which: str, perm: Sequence[int]) -> SymmetryStep:
    """GL step permuting the basis of one of ``U``, ``V``, ``W`` (0-based ``perm``)."""
    mats = [linalg.identity(n) for n in space_dims]
    mats[_VECTOR_SPACES.index(which)] = permutation_matrix(perm)
    return SymmetryStep(gl=tuple(mats))


def parse_symmetry(text: str, space: TensorSpace) -> list[SymmetryStep]:
    """Comma-separated steps applied left to right.

    ``cyclic``, ``transpose-cycle``, ``swap:W`` (reverse a basis) or
    ``perm:U:3-4-1-2`` (1-based images of the basis vectors).
    """
    steps = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in ("cyclic", "transpose-cycle"):
            steps.append(SymmetryStep(relabel=tok))
        elif tok.startswith("swap:") or tok.startswith("perm:"):
            parts = tok.split(":")
            which = parts[1]
            if which not in _VECTOR_SPACES:
                raise ValueError(f"unknown vector space {which!r} in {tok!r}")
            n = space.matmul[_VECTOR_SPACES.index(which)]
            if parts[0] == "swap":
                perm = list(reversed(range(n)))
            else:
                perm = [int(x) - 1 for x in parts[2].split("-")]
                if sorted(perm) != list(range(n)):
                    raise ValueError(f"{tok!r} is not a permutation of 1..{n}")
            steps.append(permutation_step(space.matmul, which, perm))
        else:
            raise ValueError(f"unknown symmetry step {tok!r}")
        space = apply_steps_to_space(space, steps[-1:])
    return steps


def apply_steps_to_space(space: TensorSpace, steps: Sequence[SymmetryStep]) -> TensorSpace:
    for st in steps:
        if st.relabel:
            space = symmetry_relabel(space, st.relabel).new_space
    return space


def _map_curve(curve: RankOneCurve, space: TensorSpace, step: SymmetryStep) -> tuple[RankOneCurve, TensorSpace]:
    vecs = dict(zip(FACTORS, curve.factors()))
    if step.relabel:
        rel = symmetry_relabel(space, step.relabel)
        new = {}
        for f in FACTORS:
            src = rel.source[f]
            out = {}
            for n, p in vecs[src].items():
                idx = rel.new_space.coord_index(f, rel.coord_map[f](space.coords(src)[n]))
                out[idx] = p
            new[f] = out
        return RankOneCurve(new["A"], new["B"], new["C"]), rel.new_space
    fmaps = factor_maps_from_gl(space, *[[list(r) for r in m] for m in step.gl])
    new = {}
    for f in FACTORS:
        out: dict = {}
        for n, p in vecs[f].items():
            for n2, x in factor_image(space, f, fmaps[f], n).items():
                out[n2] = out.get(n2, LaurentPoly.zero()) + p * x
        new[f] = {k: v for k, v in out.items() if v}
    return RankOneCurve(new["A"], new["B"], new["C"]), space


def transform_algorithm(alg: BorderRankAlgorithm, steps: Sequence[SymmetryStep]) -> BorderRankAlgorithm:
    """Image of every curve; weights and labels are kept, the target tensor is transformed too."""
    from .tensor import apply_symmetry

    space = alg.space
    terms = list(alg.terms)
    target = alg.target_value()
    for st in steps:
        new_space = space
        mapped = []
        for c in terms:
            c2, new_space = _map_curve(c, space, st)
            mapped.append(c2)
        terms = mapped
        if target is not None:
            target = apply_symmetry(target, st.relabel) if st.relabel else apply_gl(target, *[[list(r) for r in m] for m in st.gl])
        space = new_space
    return BorderRankAlgorithm(
        space, tuple(terms), alg.weights, alg.order, None, target_tensor=target,
        id=alg.id, notes=alg.notes, labels=alg.labels, title=alg.title,
    )


def apply_gl_to_algorithm(alg: BorderRankAlgorithm, gU, gV, gW) -> BorderRankAlgorithm:
    return transform_algorithm(alg, [SymmetryStep(gl=(gU, gV, gW))])


def _truncate(T: Tensor, h: int) -> Tensor:
    return T.map_entries(lambda p: p.truncate(h))


def _proportional_tensors(S: Tensor, T: Tensor) -> bool:
    """``S = c T`` for a nonzero rational constant ``c``; entries are Laurent polynomials."""
    if [k for k, _ in S.items()] != [k for k, _ in T.items()] or not T:
        return False
    ratio = None
    for key, s in S.items():
        t = T[key]
        if s.exponents() != t.exponents():
            return False
        for k, x in t.items():
            q = s.coefficient(k) / x
            if ratio is None:
                ratio = q
            elif q != ratio:
                return False
    return True


LEVELS = ("curve", "scaled", "limit")


@dataclass(frozen=True)
class GroupMatch:
    source: tuple  # term labels
    image: tuple  # term labels of the matching group, or () when unmatched
    level: str  # "exact", "scaled", "mod-higher-order", "limit", "line" or "none"


@dataclass(frozen=True)
class LineMatch:
    source: int  # index into the configuration lines
    image: int | None
    tag: str
    members: tuple  # labels of terms whose limit points lie on the source line
    image_members: tuple


@dataclass(frozen=True)
class SymmetryReport:
    steps: tuple
    labels: tuple
    permutation: tuple  # image position per term, None if unmatched
    term_levels: tuple  # per term: "curve", "scaled", "limit" or "none"
    groups: tuple  # GroupMatch per group
    line_map: tuple = ()  # LineMatch per configuration line

    @property
    def level(self) -> str:
        """Finest level at which the whole algorithm is carried onto itself.

        ``curve``/``scaled``/``limit`` when every term maps onto a term;
        ``line`` when only the configuration lines of the limit points are
        permuted; ``none`` otherwise.
        """
        if "none" not in self.term_levels:
            return max(self.term_levels, key=LEVELS.index)
        if self.line_map and all(m.image is not None for m in self.line_map):
            return "line"
        return "none"

    def cycles(self) -> list[tuple]:
        seen, out = set(), []
        for i in range(len(self.permutation)):
            if i in seen or self.permutation[i] is None:
                continue
            cyc, j = [], i
            while j is not None and j not in seen:
                seen.add(j)
                cyc.append(self.labels[j])
                j = self.permutation[j]
            out.append(tuple(cyc))
        return out

    def fixed_terms(self) -> list[str]:
        return [self.labels[i] for i, j in enumerate(self.permutation) if j == i]

    def group_swaps(self) -> list[tuple]:
        return [(g.source, g.image) for g in self.groups if g.image and set(g.source) != set(g.image)]

    def fixed_groups(self) -> list[tuple]:
        return [g.source for g in self.groups if g.image and set(g.source) == set(g.image)]

    def lines(self) -> list[str]:
        out = [f"symmetry {' ∘ '.join(s.describe() for s in reversed(self.steps)) or 'identity'}"]
        out.append("term permutation: " + " ".join("(" + " ".join(c) + ")" for c in self.cycles()))
        unmatched = [lab for lab, lev in zip(self.labels, self.term_levels) if lev == "none"]
        if unmatched:
            out.append("terms whose limit point is not a limit point: " + ", ".join(unmatched))
        out.append(f"finest match: {self.level}")
        for m in self.line_map:
            tgt = f"L{m.image + 1} [{', '.join(m.image_members)}]" if m.image is not None else "no line"
            out.append(f"  L{m.source + 1} {m.tag} [{', '.join(m.members)}] -> {tgt}")
        for g in self.groups:
            tgt = "{" + ", ".join(g.image) + "}" if g.image else "no match"
            out.append(f"  {{{', '.join(g.source)}}} -> {tgt}  [{g.level}]")
        return out

    def to_dict(self) -> dict:
        return {
            "steps": [s.describe() for s in self.steps],
            "permutation": {self.labels[i]: (self.labels[j] if j is not None else None) for i, j in enumerate(self.permutation)},
            "termLevels": dict(zip(self.labels, self.term_levels)),
            "level": self.level,
            "lines": [
                {"line": m.source + 1, "tag": m.tag, "members": list(m.members),
                 "image": None if m.image is None else m.image + 1, "imageMembers": list(m.image_members)}
                for m in self.line_map
            ],
            "groups": [{"source": list(g.source), "image": list(g.image), "level": g.level} for g in self.groups],
        }


def _limit_point(curve: RankOneCurve, space: TensorSpace) -> RankOnePoint:
    vecs = []
    for f, vec in zip(FACTORS, curve.factors()):
        v = min(p.valuation() for p in vec.values())
        vecs.append(curve.jet(f, v, space.dim(f)))
    return RankOnePoint(*vecs).normalized()


def map_point(p: RankOnePoint, space: TensorSpace, steps: Sequence[SymmetryStep]) -> RankOnePoint:
    """Image of a rank-one point; the space must be carried to itself."""
    vecs = [{n: LaurentPoly.const(x) for n, x in enumerate(v) if x} for v in p.factors()]
    curve = RankOneCurve(*vecs)
    sp = space
    for st in steps:
        curve, sp = _map_curve(curve, sp, st)
    return _limit_point(curve, sp)


def _line_matches(alg, steps, points) -> tuple:
    from .geometry import line_configuration_report, line_through

    sp = alg.space
    rep = line_configuration_report(points, sp, alg.labels)
    lines = [cl.line for cl in rep.lines]
    out = []
    for n, cl in enumerate(rep.lines):
        p, q = (map_point(x, sp, steps) for x in cl.line.sample(2))
        image = line_through(p, q, sp)
        hit = next((j for j, L in enumerate(lines) if L == image), None)
        out.append(LineMatch(
            n, hit, cl.line.tag,
            tuple(alg.labels[i] for i in cl.members),
            tuple(alg.labels[i] for i in rep.lines[hit].members) if hit is not None else (),
        ))
    return tuple(out)


def check_discrete_symmetry(
    alg: BorderRankAlgorithm,
    steps: Sequence[SymmetryStep],
    groups: Sequence[Sequence] | None = None,
) -> SymmetryReport:
    """Match the image of each term, configuration line and group against the algorithm.

    Terms are compared as weighted curves (``curve``), up to a constant
    (``scaled``), or by limit point (``limit``).  Lines are those of the
    limit-point configuration.  ``groups`` lists labels or 1-based term
    numbers; a group maps onto the group containing the images of its terms,
    or failing that, the members of the image lines of its lines.  Matched
    group sums are then compared exactly, up to a constant, or modulo powers
    above ``h``.
    """
    img = transform_algorithm(alg, steps)
    if img.space != alg.space:
        raise SpaceError(f"symmetry maps {alg.space.describe()} to {img.space.describe()}")
    sp = alg.space
    orig = [alg.weighted_curve_tensor(n) for n in range(alg.r)]
    mapped = [img.weighted_curve_tensor(n) for n in range(alg.r)]
    lp = [_limit_point(c, sp) for c in alg.terms]
    lp_img = [_limit_point(c, sp) for c in img.terms]

    perm, levels = [], []
    for i in range(alg.r):
        hit = next((j for j in range(alg.r) if mapped[i] == orig[j]), None)
        if hit is not None:
            perm.append(hit)
            levels.append("curve")
            continue
        hit = next((j for j in range(alg.r) if _proportional_tensors(mapped[i], orig[j])), None)
        if hit is not None:
            perm.append(hit)
            levels.append("scaled")
            continue
        cands = [j for j in range(alg.r) if lp_img[i] == lp[j]]
        perm.append(cands[0] if len(cands) == 1 else None)
        levels.append("limit" if len(cands) == 1 else "none")

    line_map = _line_matches(alg, steps, lp)

    gm = []
    if groups:
        idx_groups = [tuple(alg.term_position(x) for x in grp) for grp in groups]
        pos = {lab: n for n, lab in enumerate(alg.labels)}
        for grp in idx_groups:
            src = tuple(alg.labels[i] for i in grp)
            targets = {perm[i] for i in grp}
            match = next((g2 for g2 in idx_groups if None not in targets and set(g2) == targets), None)
            if match is None:
                # fall back to configuration lines inside the group
                inside = [m for m in line_map if m.members and {pos[x] for x in m.members} <= set(grp)]
                if inside and all(m.image is not None for m in inside):
                    covered = {pos[x] for m in inside for x in m.image_members}
                    g2 = next((g for g in idx_groups if covered <= set(g)), None)
                    if g2 is not None:
                        gm.append(GroupMatch(src, tuple(alg.labels[j] for j in g2), "line"))
                        continue
                gm.append(GroupMatch(src, (), "none"))
                continue
            s_img = sum((mapped[i] for i in grp[1:]), mapped[grp[0]])
            s_org = sum((orig[j] for j in match[1:]), orig[match[0]])
            if s_img == s_org:
                lev = "exact"
            elif _proportional_tensors(s_img, s_org):
                lev = "scaled"
            elif _truncate(s_img, alg.order) == _truncate(s_org, alg.order):
                lev = "mod-higher-order"
            else:
                lev = "limit"
            gm.append(GroupMatch(src, tuple(alg.labels[j] for j in match), lev))
    return SymmetryReport(tuple(steps), alg.labels, tuple(perm), tuple(levels), tuple(gm), line_map)


__all__ = [
    "KINDS",
    "LieAlgebraSpec",
    "LineMatch",
    "StabilizerReport",
    "SymmetryReport",
    "SymmetryStep",
    "apply_gl_to_algorithm",
    "check_discrete_symmetry",
    "factor_derivations",
    "is_diagonal",
    "lie_act",
    "map_point",
    "parse_symmetry",
    "permutation_step",
    "plane_stabilizer",
    "plane_stabilizer_dim",
    "tensor_stabilizer_dim",
    "transform_algorithm",
]
