"""Built-in border rank algorithms and their errata overlays.

Entries are stored as the printed formulas (see :mod:`.expr`) in
``data/<id>.json``.  Curated corrections live separately in
``errata/<id>.json`` so that the raw transcription stays auditable.
Set ``BORDERRANK_CATALOG`` to a directory with the same ``data/`` and
``errata/`` layout to override the shipped files.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .expr import ExprError, parse_factor, parse_scalar
from .model import (
    BorderRankAlgorithm,
    CatalogError,
    ErrataEdit,
    ErrataOverlay,
    ErrataReport,
    RankOneCurve,
    algorithm_from_dict,
    algorithm_to_dict,
    apply_errata,
    curve_rows_at,
    expand_sum,
    generic_term_rank,
    load_algorithm,
    save_algorithm,
    term_expansion,
)

ENV_VAR = "BORDERRANK_CATALOG"


def _root() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files(__package__)))


def entry_ids() -> list[str]:
    return sorted(p.stem for p in (_root() / "data").glob("*.json"))


def _read(kind: str, entry: str) -> str | None:
    path = _root() / kind / f"{entry}.json"
    return path.read_text() if path.exists() else None


def curated_errata(entry: str) -> ErrataOverlay:
    """Shipped overlay for ``entry`` (empty when the raw data needs none)."""
    text = _read("errata", entry)
    if text is None:
        return ErrataOverlay(entry, (), "none")
    return ErrataOverlay.loads(text)


def load_entry(entry: str, errata: str | ErrataOverlay | None = "curated") -> BorderRankAlgorithm:
    """Load a catalog entry.

    ``errata`` is ``"curated"`` (default), ``None``/``"raw"`` for the verbatim
    transcription, or an explicit overlay applied on top of the raw data.
    """
    text = _read("data", entry)
    if text is None:
        raise CatalogError(f"unknown catalog entry {entry!r}; known: {', '.join(entry_ids())}")
    alg = load_algorithm(text)
    if errata in (None, "raw"):
        return alg
    overlay = curated_errata(entry) if errata == "curated" else errata
    if not isinstance(overlay, ErrataOverlay):
        raise CatalogError(f"errata must be 'curated', 'raw' or an overlay, got {errata!r}")
    alg, _ = apply_errata(alg, overlay)
    return alg


def entry_families(entry: str) -> dict:
    """Named parametric rank-one families recorded with an entry, as raw dicts.

    Each value has ``params`` and factor strings ``a``, ``b``, ``c``; see
    :class:`borderrank.geometry.ParametricFamily`.
    """
    text = _read("data", entry)
    if text is None:
        raise CatalogError(f"unknown catalog entry {entry!r}")
    return dict(json.loads(text).get("families", {}))


def load_entry_with_report(entry: str, errata="curated") -> tuple[BorderRankAlgorithm, ErrataReport]:
    raw = load_entry(entry, errata=None)
    if errata in (None, "raw"):
        return raw, ErrataReport(())
    overlay = curated_errata(entry) if errata == "curated" else errata
    return apply_errata(raw, overlay)


__all__ = [
    "BorderRankAlgorithm",
    "CatalogError",
    "ENV_VAR",
    "ErrataEdit",
    "ErrataOverlay",
    "ErrataReport",
    "ExprError",
    "RankOneCurve",
    "algorithm_from_dict",
    "algorithm_to_dict",
    "apply_errata",
    "curated_errata",
    "curve_rows_at",
    "entry_families",
    "entry_ids",
    "expand_sum",
    "generic_term_rank",
    "load_algorithm",
    "load_entry",
    "load_entry_with_report",
    "parse_factor",
    "parse_scalar",
    "save_algorithm",
    "term_expansion",
]
