"""Command line front end: ``borderrank <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
or data errors.  ``--json`` switches every command to a structured document
with sorted keys, so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .catalog import (
    CatalogError,
    ErrataOverlay,
    entry_families,
    entry_ids,
    load_algorithm,
    load_entry_with_report,
    save_algorithm,
)
from .catalog.model import BorderRankAlgorithm, apply_errata
from .tensor import SpaceError, Tensor, TensorSpace, bclrs_tensor, mat_mul_tensor, zeroed_matmul_tensor

DEFAULT_SEED = 7


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _emit(args, doc: dict, text: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print("\n".join(text))


def _load(args) -> tuple[BorderRankAlgorithm, list[str]]:
    """Algorithm named by ``--entry`` or ``--file`` with the requested errata."""
    if getattr(args, "file", None):
        alg = load_algorithm(Path(args.file).read_text())
        applied = []
        if args.errata:
            alg, rep = apply_errata(alg, ErrataOverlay.loads(Path(args.errata).read_text()))
            applied = rep.lines()
        return alg, applied
    if not getattr(args, "entry", None):
        raise UsageError("give --entry ID or --file PATH")
    if args.errata:
        overlay = ErrataOverlay.loads(Path(args.errata).read_text())
        alg, rep = load_entry_with_report(args.entry, overlay)
    else:
        alg, rep = load_entry_with_report(args.entry, "raw" if args.raw else "curated")
    return alg, rep.lines()


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--entry", help="catalog entry id")
    src.add_argument("--file", help="algorithm file (JSON)")
    p.add_argument("--errata", metavar="FILE", help="errata overlay applied to the raw data instead of the curated one")
    p.add_argument("--raw", action="store_true", help="use the data exactly as transcribed")


def parse_tensor(text: str) -> Tensor:
    """``bclrs:3``, ``matmul:3,2,2``, ``zeroed:3,2,2`` or ``entry:ID`` (the entry's target)."""
    kind, _, rest = text.partition(":")
    try:
        nums = [int(x) for x in rest.split(",")] if kind != "entry" else []
    except ValueError:
        raise UsageError(f"bad tensor spec {text!r}") from None
    if kind == "bclrs" and len(nums) == 1:
        return bclrs_tensor(nums[0])
    if kind == "matmul" and len(nums) == 3:
        return mat_mul_tensor(*nums)
    if kind == "zeroed" and len(nums) == 3:
        return zeroed_matmul_tensor(*nums)
    if kind == "entry" and rest:
        alg, _ = load_entry_with_report(rest)
        return alg.target_value()
    raise UsageError(f"bad tensor spec {text!r}; expected bclrs:M, matmul:U,V,W, zeroed:U,V,W or entry:ID")


def _plane(spec: str):
    """Limit plane named by ``ID``, ``glue:LEFT,RIGHT`` or an algorithm file."""
    from .complexity import glue
    from .geometry import limit_plane

    if spec.startswith("glue:"):
        left, _, right = spec[5:].partition(",")
        alg = glue(load_entry_with_report(left)[0], load_entry_with_report(right)[0]).algorithm
    elif spec in entry_ids():
        alg = load_entry_with_report(spec)[0]
    elif Path(spec).exists():
        alg = load_algorithm(Path(spec).read_text())
    else:
        raise UsageError(f"--plane {spec!r} is not an entry id, glue:LEFT,RIGHT or a file")
    return alg, limit_plane(alg)


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args) -> int:
    from .verify import verify_border_rank

    rows, doc = [], []
    for eid in entry_ids():
        raw, _ = load_entry_with_report(eid, "raw")
        cur, rep = load_entry_with_report(eid)
        vr, vc = verify_border_rank(raw), verify_border_rank(cur)
        doc.append({
            "id": eid, "target": cur.target, "r": cur.r, "order": cur.order, "errata": len(rep.applied),
            "raw": {"status": vr.status, "residual": vr.residual_entries()},
            "curated": {"status": vc.status, "residual": vc.residual_entries()},
        })
        rows.append((eid, cur.target or "-", str(cur.r), str(cur.order), str(len(rep.applied)),
                     f"{vr.status} ({vr.residual_entries()})", f"{vc.status} ({vc.residual_entries()})"))
    head = ("id", "target", "r", "h", "errata", "raw", "curated")
    widths = [max(len(x) for x in col) for col in zip(head, *rows)]
    text = ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in (head, *rows)]
    _emit(args, {"entries": doc}, text)
    return 0


def cmd_verify(args) -> int:
    from .verify import probe_single_edits, verify_border_rank

    alg, applied = _load(args)
    rep = verify_border_rank(alg, seed=args.seed)
    doc = rep.to_dict()
    doc["errata"] = applied
    doc["notes"] = list(alg.notes)
    text = [f"{alg.id or args.file}: {alg.target}"] + [f"errata: {x}" for x in applied] + rep.lines()
    if not rep.passed:
        text.extend(f"note: {n}" for n in alg.notes)
    if not rep.passed and args.probe:
        base, hits = probe_single_edits(alg, limit=args.probe)
        doc["probe"] = {"residual": base, "hits": [h.line().strip() for h in hits]}
        text.append(f"single-coefficient probe (residual {base} entries):")
        text.extend("  " + h.line() for h in hits)
    _emit(args, doc, text)
    return 0 if rep.passed else 1


def cmd_analyze(args) -> int:
    from .geometry import limit_plane, line_configuration_report
    from .verify import (
        VerificationError,
        first_order_certificate,
        jet_tables,
        limit_points,
        order_profile,
        verify_border_rank,
    )

    alg, applied = _load(args)
    sp = alg.space
    rep = verify_border_rank(alg, seed=args.seed)
    pts = limit_points(alg)
    jets = jet_tables(alg)
    prof = order_profile(alg)
    E = limit_plane(alg)
    conf = line_configuration_report(pts, sp, alg.labels)
    text = [f"{alg.id or args.file}: {alg.target}, r = {alg.r}, h = {alg.order}, verification {rep.status}"]
    text += ["", "limit points:"] + [f"  {lab:5s} {p.pretty(sp)}" for lab, p in zip(alg.labels, pts)]
    text += ["", "first-order jets:"] + ["  " + x for x in jets.chart(1)]
    text += ["", "second-order jets:"] + ["  " + x for x in jets.chart(2)]
    text += ["", "order profile:"] + ["  " + x for x in prof.lines()]
    text += ["", f"limit plane dimension {E.dim}", "", "line configuration:"] + ["  " + x for x in conf.lines_text()]
    doc = {
        "entry": alg.id, "errata": applied, "verification": rep.to_dict(),
        "limit_points": {lab: {f: [str(x) for x in v] for f, v in zip("ABC", p.factors())} for lab, p in zip(alg.labels, pts)},
        "jets": jets.to_dict(),
        "order_profile": {f: prof.matrix(f) for f in "ABC"} if sp.matmul else {},
        "limit_plane_dim": E.dim,
        "configuration": conf.to_dict(),
    }
    if rep.passed and alg.order in (0, 1):
        try:
            cert = first_order_certificate(alg)
            text += ["", "first-order certificate:"] + ["  " + x for x in cert.lines()]
            doc["certificate"] = cert.to_dict()
        except VerificationError as exc:
            text += ["", f"first-order certificate: {exc}"]
    _emit(args, doc, text)
    return 0 if rep.passed else 1


def cmd_glue(args) -> int:
    from .complexity import GlueError, glue

    left, _ = load_entry_with_report(args.left)
    right, _ = load_entry_with_report(args.right)
    try:
        rep = glue(left, right)
    except GlueError as exc:
        text = [f"glue failed: {exc}"]
        if exc.residual is not None:
            text += [f"residual ({exc.residual.nnz} entries):"] + ["  " + x for x in exc.residual.pretty().splitlines()]
        _emit(args, {"error": str(exc), "residual": None if exc.residual is None else exc.residual.to_json()}, text)
        return 1
    if args.out:
        Path(args.out).write_text(save_algorithm(rep.algorithm) + "\n")
    doc = {
        "id": rep.algorithm.id, "target": rep.algorithm.target, "r": rep.algorithm.r,
        "order": rep.algorithm.order, "verified": rep.verified, "embeddings": list(rep.algorithm.notes),
        "out": args.out,
    }
    text = rep.lines() + ([f"written to {args.out}"] if args.out else [])
    _emit(args, doc, text)
    return 0


def cmd_bounds(args) -> int:
    from .complexity import BoundConfig, strassen_lower_bound, upper_bound_table

    doc, text = {}, []
    if args.tensor:
        T = parse_tensor(args.tensor)
        rep = strassen_lower_bound(T, BoundConfig(args.trials, args.range, args.seed))
        doc["strassen"] = {"tensor": args.tensor, **rep.to_dict()}
        text += [f"{args.tensor}  ({T.space.describe()})"] + rep.lines()
    if args.table:
        rows = upper_bound_table(args.table)
        doc["table"] = [{"n": r.n, "lower": r.lower, "upper": r.upper, "exact": r.known} for r in rows]
        text += ["", "n    lower  upper  (M<n,2,2>)"]
        text += [f"{r.n:<4d} {r.lower:<6d} {r.upper:<6d}" + (" exact" if r.known else "") for r in rows]
    if not doc:
        raise UsageError("give --tensor and/or --table")
    _emit(args, doc, text)
    return 0


def cmd_stabilizer(args) -> int:
    from .symmetry import LieAlgebraSpec, plane_stabilizer

    alg, E = _plane(args.plane)
    g = LieAlgebraSpec.for_space(args.algebra, alg.space)
    rep = plane_stabilizer(E, alg.space, g)
    _emit(args, {"plane": args.plane, **rep.to_dict()}, [f"plane of {alg.id or args.plane} in {alg.space.describe()}"] + rep.lines())
    return 0


def cmd_symmetry(args) -> int:
    from .symmetry import check_discrete_symmetry, parse_symmetry

    alg, _ = _load(args)
    steps = parse_symmetry(args.sym, alg.space)
    groups = [g.split(",") for g in args.groups.split(";")] if args.groups else None
    rep = check_discrete_symmetry(alg, steps, groups)
    _emit(args, rep.to_dict(), rep.lines())
    return 0


def cmd_intersect(args) -> int:
    from .geometry import intersect_block_segre, limit_plane

    alg, _ = _load(args)
    block = [tuple(x.split(",")) for x in args.block]
    if len(block) != 3:
        raise UsageError("--block needs three comma-separated coordinate pairs (A, B, C)")
    comps = intersect_block_segre(limit_plane(alg), alg.space, block)
    text = [f"limit plane of {alg.id} ∩ block {' '.join(args.block)}: {len(comps)} component(s)"]
    text += ["  " + c.describe() for c in comps]
    _emit(args, {"block": args.block, "components": [c.to_dict() for c in comps]}, text)
    return 0


def cmd_export(args) -> int:
    from .geometry import ParametricFamily, export_plot_data

    alg, _ = _load(args)
    fams = entry_families(args.entry) if args.entry else {}
    if args.family not in fams:
        raise UsageError(f"no family {args.family!r}; available: {', '.join(sorted(fams)) or 'none'}")
    F = ParametricFamily.from_dict(alg.space, fams[args.family], args.family)
    lo, _, hi = args.values.partition("..")
    data = export_plot_data(F, range(int(lo), int(hi) + 1))
    doc = {"family": args.family, "params": list(F.params), "points": data}
    # plot data is always JSON
    print(json.dumps(doc, sort_keys=True, indent=None if not args.json else 2, ensure_ascii=False))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borderrank", description="Exact tools for border rank algorithms.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", help="list entries with raw and curated verification status")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", help="verify a border rank algorithm exactly")
    _add_source(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--probe", type=int, default=0, metavar="N", help="on failure, list the N best single-coefficient edits")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="limit points, jets, order profile, limit plane, line configuration")
    _add_source(s)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("glue", help="combine two BCLRS algorithms into one for M<n,2,2>")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--out", help="write the glued algorithm here")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("bounds", help="Strassen lower bound and the M<n,2,2> bound table")
    s.add_argument("--tensor", help="bclrs:M, matmul:U,V,W, zeroed:U,V,W or entry:ID")
    s.add_argument("--trials", type=int, default=64)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--range", type=int, default=9, help="integer samples lie in [-RANGE, RANGE]")
    s.add_argument("--table", type=int, metavar="NMAX", help="print the bound table up to NMAX")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("stabilizer", help="Lie algebra stabilizer and orbit dimension of a limit plane")
    s.add_argument("--plane", required=True, help="entry id, glue:LEFT,RIGHT or algorithm file")
    s.add_argument("--algebra", default="sl:sl:sl", help="kinds for U:V:W from gl, sl, t, tgl, gu, 0")
    s.set_defaults(func=cmd_stabilizer)

    s = sub.add_parser("symmetry", help="check a discrete symmetry against an algorithm")
    _add_source(s)
    s.add_argument("--sym", required=True, help="e.g. 'transpose-cycle,swap:W' or 'perm:U:3-4-1-2'")
    s.add_argument("--groups", help="term groups, e.g. 'p1,p2;p3,p4;p5'")
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("intersect", help="intersect a limit plane with a 2x2x2 coordinate sub-Segre")
    _add_source(s)
    s.add_argument("--block", nargs=3, required=True, metavar=("A", "B", "C"), help="e.g. x^1_2,x^2_1 y^2_1,y^2_2 z^1_2,z^2_2")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("export-plot-data", help="sample a recorded parametric family")
    _add_source(s)
    s.add_argument("--family", required=True)
    s.add_argument("--values", default="-2..2", help="integer parameter range LO..HI")
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, SpaceError, ValueError, OSError, KeyError) as exc:
        print(f"borderrank {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
