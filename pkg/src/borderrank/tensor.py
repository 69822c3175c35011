"""Tensor spaces, sparse tensors and the matrix multiplication tensors.

Index convention
----------------
For a matrix-multiplication space with dimensions ``(u, v, w)``::

    A = U*⊗V   basis x^i_j = u^i⊗v_j   (u×v matrix, row i, column j)
    B = V*⊗W   basis y^j_k = v^j⊗w_k   (v×w matrix)
    C = W*⊗U   basis z^k_i = w^k⊗u_i   (w×u matrix)

so ``M<u,v,w> = sum x^i_j ⊗ y^j_k ⊗ z^k_i``.  Labels are 1-based strings such
as ``"x^1_2"``; internally every factor coordinate is a 0-based matrix
position ``(row, col)`` and factor indices enumerate the non-deleted
positions in row-major order.

Group action
------------
``(gU, gV, gW)`` acts on ``U`` by ``gU`` and on ``U*`` by ``gU^{-T}`` (same
for V, W).  On matrices: ``X -> gU^{-T} X gV^T`` on A, ``Y -> gV^{-T} Y gW^T``
on B, ``Z -> gW^{-T} Z gU^T`` on C.  It is a left action:
``apply_gl(apply_gl(T, g), h) == apply_gl(T, h·g)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .arith import LaurentPoly, MultiPoly, format_rational, rational
from . import linalg

FACTORS = ("A", "B", "C")
_LETTER = {"A": "x", "B": "y", "C": "z"}
_FACTOR_OF = {"x": "A", "y": "B", "z": "C"}
_LABEL_RE = re.compile(r"^([xyz])\^(\d+)_(\d+)$")


class SpaceError(ValueError):
    pass


@dataclass(frozen=True)
class TensorSpace:
    """``C^a ⊗ C^b ⊗ C^c``, optionally with matrix multiplication structure.

    ``deleted`` lists coordinates removed from the ambient space as
    ``(factor, (row, col))`` pairs, e.g. ``(("A", (0, 0)),)`` for the
    x^1_1 slot of the BCLRS spaces.
    """

    dims: tuple
    matmul: tuple | None = None
    deleted: tuple = ()

    def __post_init__(self):
        if self.matmul is not None:
            u, v, w = self.matmul
            if min(u, v, w) < 1:
                raise SpaceError("matrix dimensions must be positive")
            full = {"A": (u, v), "B": (v, w), "C": (w, u)}
            for f, (r, c) in self.deleted:
                R, Cc = full[f]
                if not (0 <= r < R and 0 <= c < Cc):
                    raise SpaceError(f"deleted coordinate {(f, (r, c))} outside space")
            expected = tuple(
                full[f][0] * full[f][1] - sum(1 for g, _ in self.deleted if g == f) for f in FACTORS
            )
            if tuple(self.dims) != expected:
                raise SpaceError(f"dims {self.dims} inconsistent with matmul {self.matmul}")
        elif self.deleted:
            raise SpaceError("deleted coordinates need matrix structure")
        if min(self.dims) < 1:
            raise SpaceError("dimensions must be positive")

    @classmethod
    def plain(cls, a: int, b: int, c: int) -> "TensorSpace":
        return cls((a, b, c))

    @classmethod
    def for_matmul(cls, u: int, v: int, w: int, deleted: Iterable = ()) -> "TensorSpace":
        deleted = tuple(sorted((f, tuple(rc)) for f, rc in deleted))
        counts = {f: sum(1 for g, _ in deleted if g == f) for f in FACTORS}
        dims = (u * v - counts["A"], v * w - counts["B"], w * u - counts["C"])
        return cls(dims, (u, v, w), deleted)

    # -- coordinates --------------------------------------------------------
    def full_shape(self, factor: str) -> tuple:
        u, v, w = self.matmul
        return {"A": (u, v), "B": (v, w), "C": (w, u)}[factor]

    @cached_property
    def _coords(self) -> dict:
        if self.matmul is None:
            return {f: [(n, 0) for n in range(d)] for f, d in zip(FACTORS, self.dims)}
        gone = set(self.deleted)
        out = {}
        for f in FACTORS:
            R, C = self.full_shape(f)
            out[f] = [(r, c) for r in range(R) for c in range(C) if (f, (r, c)) not in gone]
        return out

    @cached_property
    def _index(self) -> dict:
        return {f: {rc: n for n, rc in enumerate(cs)} for f, cs in self._coords.items()}

    def coords(self, factor: str) -> list:
        return self._coords[factor]

    def dim(self, factor: str) -> int:
        return self.dims[FACTORS.index(factor)]

    @property
    def ambient_dim(self) -> int:
        a, b, c = self.dims
        return a * b * c

    def coord_index(self, factor: str, rc: tuple) -> int | None:
        return self._index[factor].get(tuple(rc))

    def label(self, factor: str, n: int) -> str:
        r, c = self._coords[factor][n]
        if self.matmul is None:
            return f"{factor.lower()}{n + 1}"
        return f"{_LETTER[factor]}^{r + 1}_{c + 1}"

    def labels(self, factor: str) -> list[str]:
        return [self.label(factor, n) for n in range(self.dim(factor))]

    def parse_label(self, label: str) -> tuple[str, int]:
        """``"x^1_2" -> ("A", index)``; raises ``SpaceError`` if unknown."""
        if self.matmul is None:
            m = re.match(r"^([abc])(\d+)$", label)
            if not m:
                raise SpaceError(f"unknown basis label {label!r}")
            f = m.group(1).upper()
            n = int(m.group(2)) - 1
            if not 0 <= n < self.dim(f):
                raise SpaceError(f"unknown basis label {label!r}")
            return f, n
        m = _LABEL_RE.match(label.strip())
        if not m:
            raise SpaceError(f"unknown basis label {label!r}")
        f = _FACTOR_OF[m.group(1)]
        rc = (int(m.group(2)) - 1, int(m.group(3)) - 1)
        n = self.coord_index(f, rc)
        if n is None:
            raise SpaceError(f"unknown basis label {label!r} for space {self.describe()}")
        return f, n

    def flat_index(self, i: int, j: int, k: int) -> int:
        _, b, c = self.dims
        return (i * b + j) * c + k

    def unflat_index(self, n: int) -> tuple:
        _, b, c = self.dims
        i, rest = divmod(n, b * c)
        j, k = divmod(rest, c)
        return i, j, k

    def describe(self) -> str:
        if self.matmul is None:
            return "C^{}⊗C^{}⊗C^{}".format(*self.dims)
        s = "M<{},{},{}>".format(*self.matmul)
        if self.deleted:
            s += " minus " + ",".join(f"{_LETTER[f]}^{r + 1}_{c + 1}" for f, (r, c) in self.deleted)
        return s

    def to_json(self) -> dict:
        d = {"dims": list(self.dims)}
        if self.matmul is not None:
            d["matmul"] = list(self.matmul)
            d["deleted"] = [f"{_LETTER[f]}^{r + 1}_{c + 1}" for f, (r, c) in self.deleted]
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "TensorSpace":
        if "matmul" in d and d["matmul"] is not None:
            deleted = []
            for lab in d.get("deleted", []):
                m = _LABEL_RE.match(lab)
                if not m:
                    raise SpaceError(f"unknown basis label {lab!r}")
                deleted.append((_FACTOR_OF[m.group(1)], (int(m.group(2)) - 1, int(m.group(3)) - 1)))
            sp = cls.for_matmul(*d["matmul"], deleted=deleted)
            if "dims" in d and list(d["dims"]) != list(sp.dims):
                raise SpaceError(f"dims {d['dims']} inconsistent with matmul {d['matmul']}")
            return sp
        return cls(tuple(d["dims"]))


def _is_zero(x) -> bool:
    return not x


class Tensor:
    """Sparse element of ``A⊗B⊗C``; entries keyed by 0-based ``(i, j, k)``.

    Scalars may be Fractions, LaurentPolys or MultiPolys.  Zero entries are
    never stored and keys iterate in lexicographic order.
    """

    __slots__ = ("space", "_e")

    def __init__(self, space: TensorSpace, entries: Mapping | None = None):
        self.space = space
        e = {}
        a, b, c = space.dims
        for key, val in (entries or {}).items():
            i, j, k = key
            if not (0 <= i < a and 0 <= j < b and 0 <= k < c):
                raise SpaceError(f"index {key} outside {space.dims}")
            if isinstance(val, int) and not isinstance(val, bool):
                val = Fraction(val)
            if val:
                e[(i, j, k)] = val
        self._e = dict(sorted(e.items()))

    @classmethod
    def zero(cls, space: TensorSpace) -> "Tensor":
        return cls(space)

    @classmethod
    def outer(cls, space: TensorSpace, a: Sequence, b: Sequence, c: Sequence) -> "Tensor":
        """``a⊗b⊗c`` from dense coordinate vectors."""
        e = {}
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, z in enumerate(c):
                    if z:
                        e[(i, j, k)] = xy * z
        return cls(space, e)

    @classmethod
    def from_vector(cls, space: TensorSpace, vec: Sequence) -> "Tensor":
        return cls(space, {space.unflat_index(n): x for n, x in enumerate(vec) if x})

    def vector(self) -> list[Fraction]:
        v = [Fraction(0)] * self.space.ambient_dim
        for (i, j, k), x in self._e.items():
            v[self.space.flat_index(i, j, k)] = x
        return v

    def items(self):
        return self._e.items()

    def __getitem__(self, key) -> object:
        return self._e.get(tuple(key), Fraction(0))

    @property
    def nnz(self) -> int:
        return len(self._e)

    def is_zero(self) -> bool:
        return not self._e

    def __bool__(self) -> bool:
        return bool(self._e)

    def _check(self, other: "Tensor"):
        if self.space != other.space:
            raise SpaceError(f"space mismatch: {self.space.describe()} vs {other.space.describe()}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        e = dict(self._e)
        for key, v in other._e.items():
            e[key] = e[key] + v if key in e else v
        return Tensor(self.space, e)

    def __neg__(self) -> "Tensor":
        return Tensor(self.space, {k: -v for k, v in self._e.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, s) -> "Tensor":
        return Tensor(self.space, {k: v * s for k, v in self._e.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.space == other.space and self._e == other._e

    def __hash__(self):
        return hash((self.space, tuple(self._e.items())))

    def map_entries(self, fn: Callable) -> "Tensor":
        return Tensor(self.space, {k: fn(v) for k, v in self._e.items()})

    def __repr__(self) -> str:
        return f"Tensor({self.space.describe()}, nnz={self.nnz})"

    def pretty(self) -> str:
        """Human-readable sum of basis triples (Fraction entries)."""
        if not self._e:
            return "0"
        sp = self.space
        parts = []
        for (i, j, k), v in self._e.items():
            coeff = format_rational(v) if isinstance(v, Fraction) else f"({v})"
            parts.append(f"{coeff} {sp.label('A', i)}⊗{sp.label('B', j)}⊗{sp.label('C', k)}")
        return " + ".join(parts)

    def to_json(self) -> list:
        out = []
        for key, v in self._e.items():
            if isinstance(v, LaurentPoly):
                val = v.to_pairs()
            else:
                val = format_rational(v)
            out.append({"idx": list(key), "val": val})
        return out

    @classmethod
    def from_json(cls, space: TensorSpace, data: Sequence) -> "Tensor":
        e = {}
        for item in data:
            val = item["val"]
            if isinstance(val, list):
                val = LaurentPoly.from_pairs(val)
            else:
                val = rational(val)
            e[tuple(item["idx"])] = val
        return cls(space, e)


@dataclass(frozen=True)
class RankOnePoint:
    """``a⊗b⊗c`` with rational, nonzero factor vectors."""

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        for name in ("a", "b", "c"):
            vec = tuple(Fraction(x) for x in getattr(self, name))
            if not any(vec):
                raise ValueError(f"factor {name} of a rank-one point is zero")
            object.__setattr__(self, name, vec)

    def factors(self) -> tuple:
        return self.a, self.b, self.c

    def tensor(self, space: TensorSpace) -> Tensor:
        return Tensor.outer(space, self.a, self.b, self.c)

    def normalized(self) -> "RankOnePoint":
        """Scale each factor so its first nonzero coordinate is 1."""
        return RankOnePoint(*(_normalize(v) for v in self.factors()))

    def same_point(self, other: "RankOnePoint") -> bool:
        """Projective equality (ignores scaling)."""
        return self.normalized() == other.normalized()

    def pretty(self, space: TensorSpace) -> str:
        return "⊗".join(
            "(" + format_vector(space, f, v) + ")" for f, v in zip(FACTORS, self.factors())
        )


def _normalize(v: Sequence[Fraction]) -> tuple:
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def format_vector(space: TensorSpace, factor: str, vec: Sequence) -> str:
    terms = []
    for n, x in enumerate(vec):
        if not x:
            continue
        lab = space.label(factor, n)
        if isinstance(x, Fraction):
            coeff = "" if x == 1 else "-" if x == -1 else format_rational(x) + " "
        else:
            coeff = f"({x}) "
        terms.append(f"{coeff}{lab}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ---------------------------------------------------------------------------
# Constructors


def mat_mul_tensor(u: int, v: int, w: int) -> Tensor:
    """``M<u,v,w> = sum_{i,j,k} x^i_j ⊗ y^j_k ⊗ z^k_i``."""
    if min(u, v, w) < 1:
        raise ValueError("u, v, w must be positive")
    sp = TensorSpace.for_matmul(u, v, w)
    e = {}
    for i in range(u):
        for j in range(v):
            for k in range(w):
                e[(sp.coord_index("A", (i, j)), sp.coord_index("B", (j, k)), sp.coord_index("C", (k, i)))] = Fraction(1)
    return Tensor(sp, e)


def zeroed_matmul_tensor(u: int, v: int, w: int) -> Tensor:
    """``M<u,v,w>`` with the x^1_1 entry of the first matrix set to zero.

    The x^1_1 coordinate is removed from the ambient A-space.
    """
    if u * v < 2:
        raise ValueError("need at least two A-coordinates")
    sp = TensorSpace.for_matmul(u, v, w, deleted=[("A", (0, 0))])
    e = {}
    for i in range(u):
        for j in range(v):
            if (i, j) == (0, 0):
                continue
            for k in range(w):
                e[(sp.coord_index("A", (i, j)), sp.coord_index("B", (j, k)), sp.coord_index("C", (k, i)))] = Fraction(1)
    return Tensor(sp, e)


def bclrs_tensor(m: int) -> Tensor:
    """``T_{BCLRS,m} = M<m,2,2> - x^1_1⊗(y^1_1⊗z^1_1 + y^1_2⊗z^2_1)`` in ``C^{2m-1}⊗C^4⊗C^{2m}``."""
    if m < 2:
        raise ValueError("bclrs_tensor needs m >= 2")
    return zeroed_matmul_tensor(m, 2, 2)


_TARGET_RE = re.compile(r"^\s*(matmul|bclrs|zeroed)\s*\(\s*([\d\s,]+)\)\s*$")


def target_tensor(target_id: str) -> Tensor:
    """Resolve ``"matmul(u,v,w)"``, ``"bclrs(m)"`` or ``"zeroed(u,v,w)"``."""
    m = _TARGET_RE.match(target_id)
    if not m:
        raise ValueError(f"unknown target {target_id!r}")
    args = [int(x) for x in m.group(2).split(",") if x.strip()]
    kind = m.group(1)
    if kind == "matmul" and len(args) == 3:
        return mat_mul_tensor(*args)
    if kind == "bclrs" and len(args) == 1:
        return bclrs_tensor(args[0])
    if kind == "zeroed" and len(args) == 3:
        return zeroed_matmul_tensor(*args)
    raise ValueError(f"bad arguments in target {target_id!r}")


# ---------------------------------------------------------------------------
# Flattenings


def flatten(T: Tensor, factor: str, dual: Sequence) -> list[list]:
    """Contract ``T`` against ``dual`` in ``factor``.

    Returns the matrix of the remaining two factors in order (B×C, A×C or
    A×B).  ``dual`` may hold Fractions or polynomial symbols.
    """
    pos = FACTORS.index(factor)
    if len(dual) != T.space.dims[pos]:
        raise SpaceError(f"dual vector has length {len(dual)}, factor {factor} has dim {T.space.dims[pos]}")
    rest = [d for n, d in enumerate(T.space.dims) if n != pos]
    zero = Fraction(0)
    mat = [[zero] * rest[1] for _ in range(rest[0])]
    for key, val in T.items():
        coef = dual[key[pos]]
        if not coef:
            continue
        r, c = [key[n] for n in range(3) if n != pos]
        mat[r][c] = mat[r][c] + coef * val
    return mat


def flattening_matrix(T: Tensor, factor: str) -> list[list[Fraction]]:
    """The map ``factor* -> (other two)``: rows indexed by ``factor``."""
    pos = FACTORS.index(factor)
    dims = T.space.dims
    rest = [d for n, d in enumerate(dims) if n != pos]
    rows = [[Fraction(0)] * (rest[0] * rest[1]) for _ in range(dims[pos])]
    for key, val in T.items():
        r, c = [key[n] for n in range(3) if n != pos]
        rows[key[pos]][r * rest[1] + c] = val
    return rows


def multilinear_ranks(T: Tensor) -> tuple[int, int, int]:
    return tuple(linalg.rank(flattening_matrix(T, f)) for f in FACTORS)


# ---------------------------------------------------------------------------
# Group actions


def _kron_action(left: Sequence[Sequence], right: Sequence[Sequence], shape: tuple) -> dict:
    """Matrix of ``E_{rc} -> sum left[r',r] right[c',c] E_{r'c'}`` on full coords."""
    R, C = shape
    out = {}
    for r in range(R):
        for c in range(C):
            img = {}
            for r2 in range(R):
                lv = left[r2][r]
                if not lv:
                    continue
                for c2 in range(C):
                    rv = right[c2][c]
                    if rv:
                        img[(r2, c2)] = lv * rv
            out[(r, c)] = img
    return out


def _inverse_transpose(g):
    return linalg.transpose(linalg.inverse(g))


def factor_maps_from_gl(space: TensorSpace, gU, gV, gW) -> dict:
    """Per-factor linear maps (on full matrix coordinates) induced by a GL triple."""
    u, v, w = space.matmul
    for g, n, name in ((gU, u, "gU"), (gV, v, "gV"), (gW, w, "gW")):
        if len(g) != n or any(len(row) != n for row in g):
            raise SpaceError(f"{name} must be {n}x{n}")
    try:
        iU, iV, iW = (_inverse_transpose(g) for g in (gU, gV, gW))
    except ValueError:
        raise ValueError("singular matrix in GL action") from None
    return {
        "A": _kron_action(iU, gV, (u, v)),
        "B": _kron_action(iV, gW, (v, w)),
        "C": _kron_action(iW, gU, (w, u)),
    }


def factor_image(space: TensorSpace, factor: str, fmap: dict, n: int) -> dict:
    """Image of basis vector ``n`` of ``factor`` as ``{index: coeff}``.

    Raises ``SpaceError`` if the image leaves the ambient (deleted) subspace.
    """
    rc = space.coords(factor)[n]
    out = {}
    for rc2, x in fmap[rc].items():
        idx = space.coord_index(factor, rc2)
        if idx is None:
            raise SpaceError(f"action does not preserve the deleted coordinate {factor}{rc2}")
        out[idx] = x
    return out


def apply_factor_maps(T: Tensor, fmaps: Mapping[str, dict]) -> Tensor:
    """Apply ``fA⊗fB⊗fC`` (maps on full matrix coordinates) to ``T``."""
    sp = T.space
    cache = {f: {} for f in FACTORS}

    def img(f, n):
        if n not in cache[f]:
            cache[f][n] = factor_image(sp, f, fmaps[f], n) if f in fmaps else {n: Fraction(1)}
        return cache[f][n]

    e: dict = {}
    for (i, j, k), val in T.items():
        for i2, xa in img("A", i).items():
            for j2, xb in img("B", j).items():
                xab = xa * xb
                for k2, xc in img("C", k).items():
                    key = (i2, j2, k2)
                    e[key] = e.get(key, 0) + val * xab * xc
    return Tensor(sp, e)


def map_vector(space: TensorSpace, factor: str, fmap: dict, vec: Sequence) -> list:
    out = [0] * space.dim(factor)
    for n, x in enumerate(vec):
        if not x:
            continue
        for n2, y in factor_image(space, factor, fmap, n).items():
            out[n2] = out[n2] + x * y
    return [Fraction(z) if isinstance(z, int) else z for z in out]


def apply_gl(T: Tensor, gU, gV, gW) -> Tensor:
    """Induced action of ``(gU, gV, gW)`` on a structured tensor."""
    if T.space.matmul is None:
        raise SpaceError("apply_gl needs matrix multiplication structure")
    gU, gV, gW = ([[rational(x) for x in row] for row in g] for g in (gU, gV, gW))
    return apply_factor_maps(T, factor_maps_from_gl(T.space, gU, gV, gW))


def permutation_matrix(perm: Sequence[int]) -> list[list[Fraction]]:
    """Matrix sending basis vector ``e_i`` to ``e_{perm[i]}`` (0-based)."""
    n = len(perm)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, p in enumerate(perm):
        m[p][i] = Fraction(1)
    return m


# ---------------------------------------------------------------------------
# Discrete symmetries


@dataclass(frozen=True)
class FactorRelabel:
    """New factor ``f`` takes old factor ``source[f]`` with coordinates mapped
    by ``coord_map[f]`` (a function on ``(row, col)``)."""

    new_space: TensorSpace
    source: dict
    coord_map: dict = field(hash=False, compare=False)

    def vector(self, old_space: TensorSpace, new_factor: str, old_vec: Sequence) -> list:
        src = self.source[new_factor]
        out = [0] * self.new_space.dim(new_factor)
        for n, x in enumerate(old_vec):
            if not x:
                continue
            rc = old_space.coords(src)[n]
            idx = self.new_space.coord_index(new_factor, self.coord_map[new_factor](rc))
            out[idx] = x
        return out


def symmetry_relabel(space: TensorSpace, sym: str) -> FactorRelabel:
    """Relabeling for ``"cyclic"`` (``M<u,v,w> -> M<v,w,u>``, A→C', B→A', C→B')
    or ``"transpose-cycle"`` (``Tr(MNL) = Tr(M^T L^T N^T)``, ``M<u,v,w> -> M<v,u,w>``)."""
    if space.matmul is None:
        raise SpaceError("symmetry needs matrix multiplication structure")
    u, v, w = space.matmul
    ident = lambda rc: rc  # noqa: E731
    swap = lambda rc: (rc[1], rc[0])  # noqa: E731
    if sym == "cyclic":
        source = {"A": "B", "B": "C", "C": "A"}
        cmap = {"A": ident, "B": ident, "C": ident}
        new_mm = (v, w, u)
    elif sym == "transpose-cycle":
        source = {"A": "A", "B": "C", "C": "B"}
        cmap = {"A": swap, "B": swap, "C": swap}
        new_mm = (v, u, w)
    else:
        raise ValueError(f"unknown symmetry {sym!r}")
    inv_source = {old: new for new, old in source.items()}
    deleted = [(inv_source[f], cmap[inv_source[f]](rc)) for f, rc in space.deleted]
    new_space = TensorSpace.for_matmul(*new_mm, deleted=deleted)
    return FactorRelabel(new_space, source, cmap)


def apply_symmetry(T: Tensor, sym: str) -> Tensor:
    rel = symmetry_relabel(T.space, sym)
    old = T.space
    pos = {f: FACTORS.index(rel.source[f]) for f in FACTORS}
    e = {}
    for key, val in T.items():
        new_key = []
        for f in FACTORS:
            src = rel.source[f]
            rc = old.coords(src)[key[pos[f]]]
            new_key.append(rel.new_space.coord_index(f, rel.coord_map[f](rc)))
        e[tuple(new_key)] = val
    return Tensor(rel.new_space, e)


def symbolic_dual(space: TensorSpace, factor: str) -> list[MultiPoly]:
    """Dual vector whose coordinates are the basis labels as symbols."""
    return [MultiPoly.var(lab) for lab in space.labels(factor)]
