"""Exact verification of border rank identities and jet extraction.

An algorithm passes when ``sum_i w_i(t) p_i(t) = t^h T + O(t^{h+1})`` holds
coefficient by coefficient and the curves are independent over the field of
rational functions in ``t``.

The jet data of a term ``p(t) = a(t)⊗b(t)⊗c(t)`` uses Taylor coefficients,
``a = a_0 + a_1 t + a_2 t^2 + ...``.  The ``t^2`` coefficient of ``p`` splits
as the second fundamental form part ``a1⊗b1⊗c0 + a0⊗b1⊗c1 + a1⊗b0⊗c1`` plus
the ordinary tangent part ``a2⊗b0⊗c0 + a0⊗b2⊗c0 + a0⊗b0⊗c2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .arith import format_rational
from .catalog.model import BorderRankAlgorithm, CatalogError, expand_sum, generic_term_rank, term_expansion
from .tensor import FACTORS, RankOnePoint, SpaceError, Tensor, format_vector


class VerificationError(ValueError):
    pass


@dataclass(frozen=True)
class VerificationReport:
    status: str  # "pass" | "fail"
    order: int
    r: int
    generic_rank: int
    first_failure: int | None = None
    residual: Tensor | None = None
    coefficients: dict = field(default_factory=dict, compare=False)
    entry: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def residual_entries(self) -> int:
        return 0 if self.residual is None else self.residual.nnz

    def lines(self) -> list[str]:
        out = [
            f"status         {self.status}",
            f"order h        {self.order}",
            f"terms r        {self.r}",
            f"generic rank   {self.generic_rank}",
        ]
        if self.first_failure is not None:
            out.append(f"first failure  t^{self.first_failure}")
        if self.residual is not None and self.residual.nnz:
            out.append(f"residual ({self.residual.nnz} entries):")
            out.extend("  " + line for line in self.residual.pretty().splitlines())
        return out

    def to_dict(self) -> dict:
        doc = {
            "entry": self.entry,
            "status": self.status,
            "order": self.order,
            "r": self.r,
            "generic_rank": self.generic_rank,
            "first_failure": self.first_failure,
        }
        doc["residual"] = None if self.residual is None else self.residual.to_json()
        return doc


def _check_target(alg: BorderRankAlgorithm, target: Tensor | None) -> Tensor:
    if target is None:
        target = alg.target_value()
        if target is None:
            raise VerificationError("algorithm has no target; pass one explicitly")
    if target.space != alg.space:
        raise SpaceError(f"target lives in {target.space.describe()}, algorithm in {alg.space.describe()}")
    return target


def verify_border_rank(alg: BorderRankAlgorithm, target: Tensor | None = None, seed: int = 0) -> VerificationReport:
    """Check ``sum w_i p_i = t^h T + O(t^{h+1})`` exactly.

    The expansion is computed from the lowest power present through ``h``.
    Coefficients above ``h`` are returned in ``coefficients`` but not judged.
    On failure ``residual`` is the offending coefficient (minus ``T`` when
    the failure is at ``h`` itself).
    """
    target = _check_target(alg, target)
    coeffs = expand_sum(alg)
    h = alg.order
    first, residual = None, None
    lowest = min([*coeffs, h])
    for k in range(lowest, h + 1):
        got = coeffs.get(k, Tensor.zero(alg.space))
        diff = got - target if k == h else got
        if diff:
            first, residual = k, diff
            break
    grank = generic_term_rank(alg, seed=seed)
    ok = first is None and grank == alg.r
    return VerificationReport("pass" if ok else "fail", h, alg.r, grank, first, residual, coeffs, alg.id)


def residual_by_power(alg: BorderRankAlgorithm, target: Tensor | None = None) -> dict[int, Tensor]:
    """Every nonzero ``coefficient_k - [k = h] T`` for ``k <= h``."""
    target = _check_target(alg, target)
    coeffs = expand_sum(alg)
    out = {}
    for k in range(min([*coeffs, alg.order]), alg.order + 1):
        diff = coeffs.get(k, Tensor.zero(alg.space))
        if k == alg.order:
            diff = diff - target
        if diff:
            out[k] = diff
    return out


# ---------------------------------------------------------------------------
# Limit points


def _lowest_vector(vec: dict, dim: int) -> tuple[int, list[Fraction]]:
    v = min(p.valuation() for p in vec.values())
    out = [Fraction(0)] * dim
    for n, p in vec.items():
        out[n] = p.coefficient(v)
    return v, out


def _term_valuation(alg: BorderRankAlgorithm, n: int) -> int:
    return alg.weights[n].valuation() + alg.terms[n].valuation()


def limit_points(alg: BorderRankAlgorithm) -> list[RankOnePoint]:
    """Projective limit ``[p_j(0)]`` of every curve, normalized.

    The point is the product of the lowest-order parts of the three factors.
    Terms that vanish at ``t = 0`` after weighting still have a projective
    limit; :func:`zero_limit_terms` lists them.
    """
    out = []
    for n, curve in enumerate(alg.terms):
        if _term_valuation(alg, n) < 0:
            raise VerificationError(f"term {alg.labels[n]} has negative valuation; normalize the entry first")
        vecs = [_lowest_vector(curve.factor(f), alg.space.dim(f))[1] for f in FACTORS]
        out.append(RankOnePoint(*vecs).normalized())
    return out


def zero_limit_terms(alg: BorderRankAlgorithm) -> list[str]:
    return [alg.labels[n] for n in range(alg.r) if _term_valuation(alg, n) > 0]


# ---------------------------------------------------------------------------
# Jets


@dataclass(frozen=True)
class TermJet:
    label: str
    weight: object
    jets: dict  # factor -> list of dense vectors, index k = coefficient of t^k
    limit: Tensor
    tangent: Tensor  # first-order part of p(t)
    second_form: Tensor  # a1⊗b1⊗c0 + a0⊗b1⊗c1 + a1⊗b0⊗c1
    second_tangent: Tensor  # a2⊗b0⊗c0 + a0⊗b2⊗c0 + a0⊗b0⊗c2

    def derivative(self, k: int) -> tuple:
        return tuple(self.jets[f][k] if k < len(self.jets[f]) else None for f in FACTORS)


@dataclass(frozen=True)
class JetTable:
    space: object
    rows: tuple
    max_order: int
    sums: dict  # column name -> weighted Tensor sum
    flags: tuple = ()

    def row(self, label: str) -> TermJet:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def chart(self, k: int = 1) -> list[str]:
        """Aligned ``(a_k, b_k, c_k)`` chart; blanks are zero vectors."""
        cells = []
        for r in self.rows:
            vecs = r.derivative(k)
            cells.append([r.label] + [
                "" if v is None or not any(v) else format_vector(self.space, f, v)
                for f, v in zip(FACTORS, vecs)
            ])
        widths = [max(len(c[i]) for c in cells) for i in range(4)]
        return ["  ".join(c[i].ljust(widths[i]) for i in range(4)).rstrip() for c in cells]

    def tensor_column(self, name: str) -> list[str]:
        out = []
        for r in self.rows:
            T = getattr(r, name)
            out.append(f"{r.label:5s} " + (_inline(T) if T else ""))
        return out

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "rows": [
                {
                    "label": r.label,
                    "jets": {f: [[format_rational(x) for x in v] for v in r.jets[f]] for f in FACTORS},
                    "tangent": r.tangent.to_json(),
                    "second_form": r.second_form.to_json(),
                    "second_tangent": r.second_tangent.to_json(),
                }
                for r in self.rows
            ],
            "sums": {k: v.to_json() for k, v in self.sums.items()},
            "flags": list(self.flags),
        }


def _inline(T: Tensor) -> str:
    return " + ".join(T.pretty().splitlines()).replace("+ -", "- ")


def _outer(space, a, b, c) -> Tensor:
    if not (any(a) and any(b) and any(c)):
        return Tensor.zero(space)
    return Tensor.outer(space, a, b, c)


def jet_tables(alg: BorderRankAlgorithm, max_order: int = 2) -> JetTable:
    """Per-term Taylor coefficients and the first/second order split.

    ``sums`` holds ``limit``, ``tangent``, ``second_form`` and
    ``second_tangent`` summed over terms, each scaled by the constant
    coefficient of its weight, plus ``shifted``: every contribution to the
    ``t^h`` coefficient coming from weights of positive valuation.  For
    algorithms with constant weights, ``second_form + second_tangent`` is the
    ``t^2`` coefficient of the sum.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    sp = alg.space
    depth = max(max_order, 2)
    rows = []
    sums = {k: Tensor.zero(sp) for k in ("limit", "tangent", "second_form", "second_tangent", "shifted")}
    flags = []
    for n, (curve, w) in enumerate(zip(alg.terms, alg.weights)):
        jets = {f: [curve.jet(f, k, sp.dim(f)) for k in range(depth + 1)] for f in FACTORS}
        (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = (jets[f][:3] for f in FACTORS)
        limit = _outer(sp, a0, b0, c0)
        tangent = _outer(sp, a1, b0, c0) + _outer(sp, a0, b1, c0) + _outer(sp, a0, b0, c1)
        iiform = _outer(sp, a1, b1, c0) + _outer(sp, a0, b1, c1) + _outer(sp, a1, b0, c1)
        tan2 = _outer(sp, a2, b0, c0) + _outer(sp, a0, b2, c0) + _outer(sp, a0, b0, c2)
        if tangent and not iiform and any(map(any, (a1, b1, c1))):
            flags.append(f"{alg.labels[n]}: first-order tangent with vanishing second fundamental form")
        w0 = w.coefficient(0)
        if w0:
            for key, T in (("limit", limit), ("tangent", tangent), ("second_form", iiform), ("second_tangent", tan2)):
                sums[key] = sums[key] + T.scale(w0)
        if w.valuation() > 0:
            sums["shifted"] = sums["shifted"] + term_expansion(alg, n).get(alg.order, Tensor.zero(sp))
        trimmed = {f: jets[f][: max_order + 1] for f in FACTORS}
        rows.append(TermJet(alg.labels[n], w, trimmed, limit, tangent, iiform, tan2))
    return JetTable(sp, tuple(rows), max_order, sums, tuple(flags))


# ---------------------------------------------------------------------------
# Order profile


@dataclass(frozen=True)
class OrderProfile:
    space: object
    factor_orders: dict  # factor -> {index: order}
    triple_orders: dict  # (i, j, k) -> order in some single weighted term, for target coordinates
    expansion_orders: dict = field(default_factory=dict)  # (i, j, k) -> order in the summed expansion

    def matrix(self, factor: str, missing: str = "X") -> list[list[str]]:
        """Orders laid out in the factor's matrix shape (deleted slots = ``missing``)."""
        rows, cols = self.space.full_shape(factor)
        out = [[missing] * cols for _ in range(rows)]
        for n, rc in enumerate(self.space.coords(factor)):
            k = self.factor_orders[factor].get(n)
            out[rc[0]][rc[1]] = "-" if k is None else str(k)
        return out

    def lines(self) -> list[str]:
        out = []
        for f in FACTORS:
            if self.space.matmul is None:
                out.append(f"{f}: " + " ".join(str(self.factor_orders[f].get(n, "-")) for n in range(self.space.dim(f))))
                continue
            out.append(f"{f}:")
            out.extend("  " + " ".join(row) for row in self.matrix(f))
        return out


def order_profile(alg: BorderRankAlgorithm, target: Tensor | None = None) -> OrderProfile:
    """Power of ``t`` at which each basis vector and each target coordinate first appears.

    A basis vector of factor ``f`` first appears in term ``j`` at the weight
    valuation plus its own valuation in ``f`` plus the valuations of the
    other two factors; a target coordinate first appears at the lowest power
    where some individual weighted term has it with nonzero coefficient.
    ``expansion_orders`` records the same for the summed expansion, where
    cancellation between terms is taken into account.
    """
    if target is None:
        target = alg.target_value()
    sp = alg.space
    forders = {f: {} for f in FACTORS}
    for n, curve in enumerate(alg.terms):
        vecs = curve.factors()
        vals = [min(p.valuation() for p in v.values()) for v in vecs]
        base = alg.weights[n].valuation()
        for pos, f in enumerate(FACTORS):
            others = sum(vals) - vals[pos]
            for idx, p in vecs[pos].items():
                k = base + others + p.valuation()
                if idx not in forders[f] or k < forders[f][idx]:
                    forders[f][idx] = k
    triples, summed = {}, {}
    if target is not None:
        for k, T in sorted(expand_sum(alg).items(), reverse=True):
            for key, _ in T.items():
                summed[key] = k
        summed = {key: summed[key] for key, _ in target.items() if key in summed}
        wanted = {key for key, _ in target.items()}
        for n in range(alg.r):
            for k, T in term_expansion(alg, n).items():
                for key, _ in T.items():
                    if key in wanted and (key not in triples or k < triples[key]):
                        triples[key] = k
    return OrderProfile(sp, forders, triples, summed)


# ---------------------------------------------------------------------------
# First-order certificates


@dataclass(frozen=True)
class CertificateGroup:
    terms: tuple  # labels
    line: object | None  # SegreLine shared by the group, or None for a single point
    contribution: Tensor
    member: bool


@dataclass(frozen=True)
class FirstOrderCertificate:
    kind: str  # "rank" | "first-order"
    groups: tuple
    idle: tuple  # labels whose first-order contribution vanishes
    total_ok: bool

    @property
    def valid(self) -> bool:
        return self.total_ok and all(g.member for g in self.groups)

    def lines(self) -> list[str]:
        out = [f"certificate    {self.kind}", f"valid          {self.valid}"]
        for g in self.groups:
            where = g.line.describe() if g.line is not None else "tangent space at the point"
            out.append(f"  {'+'.join(g.terms)}: in {where}: {g.member}")
        if self.idle:
            out.append("  no first-order contribution: " + ", ".join(self.idle))
        return out

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "valid": self.valid,
            "groups": [
                {"terms": list(g.terms), "line": None if g.line is None else g.line.to_dict(), "member": g.member}
                for g in self.groups
            ],
            "idle": list(self.idle),
        }


def first_order_certificate(alg: BorderRankAlgorithm, target: Tensor | None = None) -> FirstOrderCertificate:
    """Split the target into tangent contributions grouped along Segre lines.

    Each term with a nonzero contribution to the ``t^1`` coefficient is
    grouped with the others whose limit points share a Segre line with it;
    every group sum must lie in the tangent space of its line (or of its
    point, for singletons).  For ``h = 0`` the certificate is membership of
    the target in the span of the limit points.
    """
    from . import geometry  # local: geometry builds on this module's outputs

    target = _check_target(alg, target)
    rep = verify_border_rank(alg, target)
    if not rep.passed:
        raise VerificationError(f"algorithm does not verify (first failure at t^{rep.first_failure})")
    sp = alg.space
    points = limit_points(alg)
    if alg.order == 0:
        span = linalg.LinearSubspace.span([p.tensor(sp).vector() for p in points], sp.ambient_dim)
        return FirstOrderCertificate("rank", (), (), span.contains(target.vector()))
    if alg.order != 1:
        raise VerificationError(f"not a first order algorithm (h = {alg.order})")
    contrib = {n: term_expansion(alg, n).get(1, Tensor.zero(sp)) for n in range(alg.r)}
    active = [n for n in range(alg.r) if contrib[n]]
    idle = tuple(alg.labels[n] for n in range(alg.r) if not contrib[n])
    parent = {n: n for n in active}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    lines = {}
    for i in active:
        for j in active:
            if i < j:
                line = geometry.line_through(points[i], points[j], sp)
                if line is not None:
                    parent[find(j)] = find(i)
                    lines.setdefault(find(i), line)
    comps: dict = {}
    for n in active:
        comps.setdefault(find(n), []).append(n)
    groups = []
    total = Tensor.zero(sp)
    for root, members in sorted(comps.items(), key=lambda kv: kv[1][0]):
        s = Tensor.zero(sp)
        for n in members:
            s = s + contrib[n]
        total = total + s
        if len(members) == 1:
            line = None
            space_ = geometry.tangent_space(points[members[0]], sp)
        else:
            line = geometry.line_through(points[members[0]], points[members[1]], sp)
            if not all(line.contains(points[n]) for n in members):
                line = None
                space_ = linalg.LinearSubspace.span(
                    [v for n in members for v in geometry.tangent_space(points[n], sp).basis], sp.ambient_dim
                )
            else:
                space_ = geometry.tangent_space_of_line(line, sp)
        groups.append(CertificateGroup(tuple(alg.labels[n] for n in members), line, s, space_.contains(s.vector())))
    return FirstOrderCertificate("first-order", tuple(groups), idle, total == target)


__all__ = [
    "CatalogError",
    "FirstOrderCertificate",
    "JetTable",
    "OrderProfile",
    "TermJet",
    "VerificationError",
    "VerificationReport",
    "first_order_certificate",
    "jet_tables",
    "limit_points",
    "order_profile",
    "residual_by_power",
    "verify_border_rank",
    "zero_limit_terms",
]


# ---------------------------------------------------------------------------
# Single-coefficient probe


@dataclass(frozen=True)
class ProbeHit:
    """Changing one coefficient of one term leaves ``remaining`` residual entries."""

    remaining: int
    term: str
    factor: str  # "a" | "b" | "c"
    coord: str
    exp: int
    old: Fraction
    new: Fraction

    def line(self) -> str:
        return f"{self.remaining:4d}  {self.term}.{self.factor}[{self.coord}] t^{self.exp}: {format_rational(self.old)} -> {format_rational(self.new)}"


def _residual_entries(alg: BorderRankAlgorithm, target: Tensor) -> dict:
    out = {}
    for k, T in expand_sum(alg).items():
        if k <= alg.order:
            for key, v in T.items():
                out[(k, *key)] = v
    for key, v in target.items():
        out[(alg.order, *key)] = out.get((alg.order, *key), 0) - v
    return {k: v for k, v in out.items() if v}


def probe_single_edits(alg: BorderRankAlgorithm, target: Tensor | None = None, max_exp: int | None = None, limit: int = 25) -> tuple[int, list[ProbeHit]]:
    """Rank every single-coefficient change by how far it shrinks the residual.

    Returns the number of nonzero residual entries (all powers up to ``h``)
    and the best ``limit`` edits that lower it.  Each candidate slot
    ``(term, coordinate, power)`` contributes a fixed tensor to the
    expansion, so the useful new values are those cancelling some residual
    entry.  Nothing is applied; the hits are suggestions for an errata
    overlay.
    """
    from .catalog.model import RankOneCurve, _accumulate
    from .arith import LaurentPoly

    target = _check_target(alg, target)
    R = _residual_entries(alg, target)
    base = len(R)
    max_exp = alg.order + 1 if max_exp is None else max_exp
    hits = []
    for n, curve in enumerate(alg.terms):
        for f in FACTORS:
            for idx in range(alg.space.dim(f)):
                for e in range(max_exp + 1):
                    vecs = {g: curve.factor(g) for g in FACTORS}
                    vecs[f] = {idx: LaurentPoly.monomial(e)}
                    acc: dict = {}
                    _accumulate(acc, RankOneCurve(vecs["A"], vecs["B"], vecs["C"]), alg.weights[n])
                    v = {(k, *key): x for k, ent in acc.items() if k <= alg.order for key, x in ent.items() if x}
                    if not v:
                        continue
                    keys = set(R) | set(v)
                    for d in {-R[x] / v[x] for x in v if x in R}:
                        left = sum(1 for x in keys if R.get(x, 0) + d * v.get(x, 0))
                        if left < base:
                            old = curve.factor(f).get(idx, LaurentPoly.zero()).coefficient(e)
                            hits.append(ProbeHit(left, alg.labels[n], "abc"[FACTORS.index(f)], alg.space.label(f, idx), e, old, old + d))
    hits.sort(key=lambda h: (h.remaining, alg.term_position(h.term), h.factor, h.coord, h.exp))
    return base, hits[:limit]
