"""Border rank algorithms: data model, file format, expansion and errata."""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from ..arith import LaurentPoly, format_rational, rational
from .. import linalg
from ..tensor import FACTORS, SpaceError, Tensor, TensorSpace, target_tensor
from .expr import ExprError, parse_factor, parse_scalar


class CatalogError(ValueError):
    """Malformed algorithm or errata document; message carries the location."""


def _vec_to_dense_at(vec: Mapping[int, LaurentPoly], dim: int, t0: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * dim
    for n, p in vec.items():
        out[n] = p.evaluate(t0)
    return out


@dataclass(frozen=True)
class RankOneCurve:
    """``a(t)⊗b(t)⊗c(t)``; each factor is a sparse ``{index: LaurentPoly}``."""

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        for name in ("a", "b", "c"):
            vec = getattr(self, name)
            if isinstance(vec, Mapping):
                vec = tuple(sorted((int(k), p) for k, p in vec.items() if p))
                object.__setattr__(self, name, vec)
            if not vec:
                raise CatalogError(f"factor {name} of a rank-one curve is identically zero")

    def factor(self, f: str) -> dict:
        return dict({"A": self.a, "B": self.b, "C": self.c}[f])

    def factors(self) -> tuple[dict, dict, dict]:
        return dict(self.a), dict(self.b), dict(self.c)

    def valuation(self) -> int:
        return sum(min(p.valuation() for _, p in vec) for vec in (self.a, self.b, self.c))

    def jet(self, f: str, k: int, dim: int) -> list[Fraction]:
        """Coefficient of ``t^k`` in factor ``f`` as a dense vector."""
        out = [Fraction(0)] * dim
        for n, p in self.factor(f).items():
            out[n] = p.coefficient(k)
        return out

    def by_power(self, f: str) -> dict:
        """``{k: {index: coeff}}`` for factor ``f``."""
        out: dict = {}
        for n, p in self.factor(f).items():
            for k, x in p.items():
                out.setdefault(k, {})[n] = x
        return out

    def evaluate(self, space: TensorSpace, t0: Fraction) -> tuple[list, list, list]:
        return tuple(_vec_to_dense_at(v, space.dim(f), t0) for f, v in zip(FACTORS, self.factors()))

    def tensor(self, space: TensorSpace) -> Tensor:
        """The curve as a tensor with LaurentPoly entries."""
        a, b, c = self.factors()
        e = {}
        for i, pa in a.items():
            for j, pb in b.items():
                pab = pa * pb
                for k, pc in c.items():
                    e[(i, j, k)] = pab * pc
        return Tensor(space, e)

    def scaled(self, f: str, s) -> "RankOneCurve":
        vecs = {g: self.factor(g) for g in FACTORS}
        vecs[f] = {n: p * s for n, p in vecs[f].items()}
        return RankOneCurve(vecs["A"], vecs["B"], vecs["C"])


@dataclass(frozen=True)
class BorderRankAlgorithm:
    """``sum_i weight_i(t) p_i(t) = t^order T + O(t^{order+1})``."""

    space: TensorSpace
    terms: tuple
    weights: tuple
    order: int
    target: str | None = None
    target_tensor: Tensor | None = field(default=None, compare=False)
    id: str = ""
    notes: tuple = field(default=(), compare=False)
    labels: tuple = field(default=(), compare=False)
    title: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.terms) != len(self.weights):
            raise CatalogError("weights and terms differ in length")
        if not self.terms:
            raise CatalogError("an algorithm needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "notes", tuple(self.notes))
        labels = tuple(self.labels) or tuple(f"p{n + 1}" for n in range(len(self.terms)))
        if len(labels) != len(self.terms):
            raise CatalogError("one label per term required")
        object.__setattr__(self, "labels", labels)

    def term_position(self, label) -> int:
        """0-based position of a term given its label ("p8") or published number (8)."""
        key = f"p{label}" if isinstance(label, int) else str(label)
        try:
            return self.labels.index(key)
        except ValueError:
            raise CatalogError(f"no term labelled {key} (have {', '.join(self.labels)})") from None

    @property
    def r(self) -> int:
        return len(self.terms)

    def target_value(self) -> Tensor | None:
        if self.target_tensor is not None:
            return self.target_tensor
        if self.target is None:
            return None
        T = target_tensor(self.target)
        if T.space != self.space:
            raise CatalogError(f"target {self.target} lives in {T.space.describe()}, algorithm in {self.space.describe()}")
        return T

    def with_terms(self, terms, weights=None, **kw) -> "BorderRankAlgorithm":
        return replace(self, terms=tuple(terms), weights=tuple(self.weights if weights is None else weights), **kw)

    def weighted_curve_tensor(self, n: int) -> Tensor:
        w = self.weights[n]
        return self.terms[n].tensor(self.space).map_entries(lambda p: p * w)


# ---------------------------------------------------------------------------
# Expansion


def expand_sum(alg: BorderRankAlgorithm) -> dict[int, Tensor]:
    """Laurent expansion of ``sum_i w_i(t) p_i(t)`` as ``{k: coefficient tensor}``.

    Only powers with a nonzero coefficient appear.
    """
    acc: dict[int, dict] = {}
    for curve, w in zip(alg.terms, alg.weights):
        _accumulate(acc, curve, w)
    return {k: Tensor(alg.space, e) for k, e in sorted(acc.items()) if any(e.values())}


def _accumulate(acc: dict, curve: RankOneCurve, weight: LaurentPoly) -> None:
    pa, pb, pc = (curve.by_power(f) for f in FACTORS)
    for kw, xw in weight.items():
        for ka, va in pa.items():
            for kb, vb in pb.items():
                for kc, vc in pc.items():
                    k = kw + ka + kb + kc
                    e = acc.setdefault(k, {})
                    for i, xa in va.items():
                        s1 = xw * xa
                        for j, xb in vb.items():
                            s2 = s1 * xb
                            for l, xc in vc.items():
                                key = (i, j, l)
                                e[key] = e.get(key, 0) + s2 * xc


def term_expansion(alg: BorderRankAlgorithm, n: int) -> dict[int, Tensor]:
    acc: dict[int, dict] = {}
    _accumulate(acc, alg.terms[n], alg.weights[n])
    return {k: Tensor(alg.space, e) for k, e in sorted(acc.items()) if any(e.values())}


def curve_rows_at(alg: BorderRankAlgorithm, t0: Fraction) -> list[list[Fraction]]:
    rows = []
    for curve, w in zip(alg.terms, alg.weights):
        a, b, c = curve.evaluate(alg.space, t0)
        rows.append([x * w.evaluate(t0) for x in Tensor.outer(alg.space, a, b, c).vector()])
    return rows


def _degree_span(alg: BorderRankAlgorithm) -> int:
    total = 0
    for curve, w in zip(alg.terms, alg.weights):
        span = w.degree() - w.valuation()
        for vec in (curve.a, curve.b, curve.c):
            span += max(p.degree() for _, p in vec) - min(p.valuation() for _, p in vec)
        total += span
    return total


def generic_term_rank(alg: BorderRankAlgorithm, seed: int = 0, retries: int = 4) -> int:
    """Rank of the curves over the field of rational functions in ``t``.

    Random nonzero rational samples are tried first: any sample reaching
    ``r`` certifies full rank.  Otherwise the maximum over ``D + 1``
    distinct nonzero points is taken, where ``D`` bounds the degree of every
    minor after clearing powers of ``t``; that maximum is the exact generic
    rank.
    """
    rng = random.Random(seed)
    best = 0
    for _ in range(retries):
        t0 = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3))
        best = max(best, linalg.rank(curve_rows_at(alg, t0)))
        if best == alg.r:
            return best
    D = _degree_span(alg)
    for n in range(1, D + 2):
        best = max(best, linalg.rank(curve_rows_at(alg, Fraction(n))))
        if best == alg.r:
            break
    return best


# ---------------------------------------------------------------------------
# File format


def _vector_to_json(space: TensorSpace, factor: str, vec: Mapping[int, LaurentPoly]) -> dict:
    return {space.label(factor, n): p.to_pairs() for n, p in sorted(vec.items())}


def _weight_from_json(raw, where: str) -> LaurentPoly:
    if raw is None:
        return LaurentPoly.const(1)
    try:
        if isinstance(raw, str):
            return parse_scalar(raw)
        return LaurentPoly.from_pairs(raw)
    except (ValueError, TypeError, ExprError) as exc:
        raise CatalogError(f"{where}: {exc}") from None


def _factor_from_json(space: TensorSpace, factor: str, raw, where: str, unread: list) -> dict:
    if isinstance(raw, str):
        try:
            parsed = parse_factor(raw, space, factor)
        except ExprError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        unread.extend(f"{where}: {tok}" for tok in parsed.unread)
        return parsed.vector
    if not isinstance(raw, Mapping):
        raise CatalogError(f"{where}: factor must be an expression string or a label map")
    out: dict = {}
    for lab, pairs in raw.items():
        try:
            f, n = space.parse_label(lab)
        except SpaceError as exc:
            raise CatalogError(f"{where}.{lab}: {exc}") from None
        if f != factor:
            raise CatalogError(f"{where}.{lab}: label belongs to factor {f}, not {factor}")
        try:
            p = LaurentPoly.from_pairs(pairs)
        except (ValueError, TypeError) as exc:
            raise CatalogError(f"{where}.{lab}: {exc}") from None
        if p:
            out[n] = out.get(n, LaurentPoly.zero()) + p
    return out


_LABEL_TOKEN = re.compile(r"[a-zA-Z]\^\{?\d+\}?_\{?\d+\}?")


def _relabel_text(text: str, relabel: Mapping[str, str]) -> str:
    """Rename basis labels in one simultaneous pass (so swaps work)."""
    return _LABEL_TOKEN.sub(lambda m: relabel.get(m.group(0).replace("{", "").replace("}", ""), m.group(0)), text)


def algorithm_from_dict(doc: Mapping, normalize: bool = True) -> BorderRankAlgorithm:
    """Parse the structured document (see README for the schema).

    With ``normalize`` any negative common weight valuation is shifted into
    the order so that all weights are polynomial and ``order >= 0``.
    """
    try:
        space = TensorSpace.from_json(doc["space"])
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"space: missing or malformed ({exc})") from None
    except SpaceError as exc:
        raise CatalogError(f"space: {exc}") from None
    order = doc.get("order", 0)
    if not isinstance(order, int):
        raise CatalogError("order: must be an integer")
    relabel = dict(doc.get("relabel", {}))
    terms, weights, unread = [], [], []
    notes = list(doc.get("notes", []))
    for n, term in enumerate(doc.get("terms", [])):
        where = f"terms[{n}]"
        vecs = {}
        for f, key in zip(FACTORS, "abc"):
            if key not in term:
                raise CatalogError(f"{where}.{key}: missing")
            raw = term[key]
            if isinstance(raw, str) and relabel:
                raw = _relabel_text(raw, relabel)
            found: list = []
            vecs[f] = _factor_from_json(space, f, raw, f"{where}.{key}", found)
            unread.extend((n, msg) for msg in found)
        try:
            terms.append(RankOneCurve(vecs["A"], vecs["B"], vecs["C"]))
        except CatalogError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        weights.append(_weight_from_json(term.get("weight"), f"{where}.weight"))
    labels = [t.get("label", f"p{n + 1}") for n, t in enumerate(doc.get("terms", []))]
    omit = set(doc.get("omit_terms", []))
    if omit:
        bad = omit - set(range(1, len(terms) + 1))
        if bad:
            raise CatalogError(f"omit_terms: no such term {sorted(bad)}")
        keep = [n for n in range(len(terms)) if n + 1 not in omit]
        notes.append("terms left out of the combination: " + ", ".join(labels[n - 1] for n in sorted(omit)))
        terms = [terms[n] for n in keep]
        weights = [weights[n] for n in keep]
        labels = [labels[n] for n in keep]
        unread = [(n, msg) for n, msg in unread if n + 1 not in omit]
    if not terms:
        raise CatalogError("terms: empty")
    for w_n, w in enumerate(weights):
        if not w:
            raise CatalogError(f"terms[{w_n}].weight: zero weight")
    if relabel:
        notes.append("label readings: " + ", ".join(f"{a} read as {b}" for a, b in relabel.items()))
    if unread:
        notes.append("unreadable tokens dropped: " + "; ".join(msg for _, msg in unread))
    if normalize:
        shift = -min(w.valuation() for w in weights)
        if shift > 0:
            weights = [w.shift(shift) for w in weights]
            order += shift
            notes.append(f"normalized: weights multiplied by t^{shift}, order raised to {order}")
    target = doc.get("target")
    explicit = None
    if isinstance(target, Mapping):
        try:
            explicit = Tensor.from_json(space, target["tensor"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"target: {exc}") from None
        target = None
    alg = BorderRankAlgorithm(
        space, tuple(terms), tuple(weights), order, target, explicit, doc.get("id", ""), tuple(notes),
        tuple(labels), doc.get("title", ""),
    )
    if target is not None:
        try:
            alg.target_value()
        except ValueError as exc:
            raise CatalogError(f"target: {exc}") from None
    return alg


def algorithm_to_dict(alg: BorderRankAlgorithm) -> dict:
    doc = {"id": alg.id, "space": alg.space.to_json(), "order": alg.order}
    if alg.target_tensor is not None:
        doc["target"] = {"tensor": alg.target_tensor.to_json()}
    else:
        doc["target"] = alg.target
    if alg.title:
        doc["title"] = alg.title
    doc["terms"] = [
        {
            "label": label,
            "weight": w.to_pairs(),
            "a": _vector_to_json(alg.space, "A", curve.factor("A")),
            "b": _vector_to_json(alg.space, "B", curve.factor("B")),
            "c": _vector_to_json(alg.space, "C", curve.factor("C")),
        }
        for curve, w, label in zip(alg.terms, alg.weights, alg.labels)
    ]
    if alg.notes:
        doc["notes"] = list(alg.notes)
    return doc


def load_algorithm(text: str, normalize: bool = True) -> BorderRankAlgorithm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"line {exc.lineno}: {exc.msg}") from None
    return algorithm_from_dict(doc, normalize=normalize)


def save_algorithm(alg: BorderRankAlgorithm) -> str:
    return json.dumps(algorithm_to_dict(alg), indent=1, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Errata overlays


@dataclass(frozen=True)
class ErrataEdit:
    term: int  # 1-based, as in the published term numbering
    factor: str  # "a" | "b" | "c"
    coord: str
    exp: int
    new: Fraction
    old: Fraction | None = None
    why: str = ""

    def to_json(self) -> dict:
        d = {"term": self.term, "factor": self.factor, "coord": self.coord, "exp": self.exp, "new": format_rational(self.new)}
        if self.old is not None:
            d["old"] = format_rational(self.old)
        if self.why:
            d["why"] = self.why
        return d


@dataclass(frozen=True)
class ErrataOverlay:
    entry: str
    edits: tuple = ()
    name: str = ""

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ErrataOverlay":
        edits = []
        for n, e in enumerate(doc.get("edits", [])):
            try:
                edits.append(
                    ErrataEdit(
                        int(e["term"]),
                        str(e["factor"]),
                        str(e["coord"]),
                        int(e["exp"]),
                        rational(e["new"]),
                        rational(e["old"]) if "old" in e else None,
                        e.get("why", ""),
                    )
                )
            except (KeyError, ValueError, TypeError) as exc:
                raise CatalogError(f"edits[{n}]: {exc}") from None
        return cls(doc.get("entry", ""), tuple(edits), doc.get("name", ""))

    @classmethod
    def loads(cls, text: str) -> "ErrataOverlay":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CatalogError(f"line {exc.lineno}: {exc.msg}") from None

    def to_dict(self) -> dict:
        d = {"entry": self.entry, "edits": [e.to_json() for e in self.edits]}
        if self.name:
            d["name"] = self.name
        return d

    def inverse(self) -> "ErrataOverlay":
        inv = []
        for e in reversed(self.edits):
            if e.old is None:
                raise CatalogError("inverse needs recorded old values")
            inv.append(replace(e, new=e.old, old=e.new, why=f"undo: {e.why}"))
        return ErrataOverlay(self.entry, tuple(inv), self.name + " (inverse)")

    def compose(self, other: "ErrataOverlay") -> "ErrataOverlay":
        return ErrataOverlay(self.entry or other.entry, self.edits + other.edits, f"{self.name}+{other.name}")


@dataclass(frozen=True)
class ErrataReport:
    applied: tuple

    def lines(self) -> list[str]:
        return [
            f"p{e.term}.{e.factor}[{e.coord}] t^{e.exp}: {format_rational(old)} -> {format_rational(e.new)}"
            + (f"  ({e.why})" if e.why else "")
            for e, old in self.applied
        ]


def apply_errata(alg: BorderRankAlgorithm, overlay: ErrataOverlay) -> tuple[BorderRankAlgorithm, ErrataReport]:
    """Apply edits left to right; returns a new algorithm and the edit log.

    Curves are validated once all edits are in, so an overlay may move a
    monomial from one coordinate to another in two steps.
    """
    vecs = [{g: curve.factor(g) for g in FACTORS} for curve in alg.terms]
    touched = set()
    applied = []
    for n, e in enumerate(overlay.edits):
        where = f"edits[{n}]"
        try:
            pos = alg.term_position(e.term)
        except CatalogError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        if e.factor not in ("a", "b", "c"):
            raise CatalogError(f"{where}: factor must be a, b or c")
        f = FACTORS["abc".index(e.factor)]
        try:
            lf, idx = alg.space.parse_label(e.coord)
        except SpaceError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        if lf != f:
            raise CatalogError(f"{where}: coordinate {e.coord} is not in factor {e.factor}")
        p = vecs[pos][f].get(idx, LaurentPoly.zero())
        old = p.coefficient(e.exp)
        if e.old is not None and e.old != old:
            raise CatalogError(f"{where}: expected old value {format_rational(e.old)}, found {format_rational(old)}")
        if e.new != old:
            p = p + LaurentPoly.monomial(e.exp, e.new - old)
        if p:
            vecs[pos][f][idx] = p
        else:
            vecs[pos][f].pop(idx, None)
        touched.add(pos)
        applied.append((e, old))
    terms = list(alg.terms)
    for pos in sorted(touched):
        try:
            terms[pos] = RankOneCurve(vecs[pos]["A"], vecs[pos]["B"], vecs[pos]["C"])
        except CatalogError as exc:
            raise CatalogError(f"term {alg.labels[pos]} after errata: {exc}") from None
    if not applied:
        return alg, ErrataReport(())
    note = f"errata applied: {overlay.name or overlay.entry} ({len(applied)} edits)"
    return alg.with_terms(terms, notes=alg.notes + (note,)), ErrataReport(tuple(applied))
