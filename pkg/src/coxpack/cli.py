"""Command-line front end: classify, roots, weights, pack, tangency, enum."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import census as census_mod
from .balls import cap_of, lorentz_frame, project_packing, validate_cluster
from .forms import (
    FormError,
    SingularFormError,
    classify_type,
    fundamental_weights,
    level,
    signature,
)
from .graphs import GraphError, load_graph, to_compact
from .groups import OrbitCapError
from .orbits import (
    VectorClass,
    classify_norm,
    projectivize,
    roots_up_to_depth,
    weights_up_to_length,
)
from .render import RenderSpec, svg_packing
from .tangency import (
    InconsistencyError,
    LevelError,
    geometric_oracle,
    is_strict_level2,
    tangency_graph,
)

EXIT_PARSE = 2
EXIT_INCONSISTENT = 3
EXIT_SVG_RANK = 4
EXIT_ORBIT_CAP = 5
EXIT_LEVEL = 6
EXIT_ENUM_INVARIANT = 7


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_graph(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    return load_graph(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _max_records(args) -> int | None:
    if args.max_records is not None:
        return args.max_records
    env = os.environ.get("COXPACK_MAX_MEM")
    if env:
        try:
            mem = int(env)
        except ValueError:
            raise _CliError(EXIT_PARSE, f"COXPACK_MAX_MEM must be an integer byte count, got {env!r}")
        return max(1, mem // 256)
    return None


# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    tol = args.tol
    b = g.gram
    sig = signature(b, tol)
    tclass = classify_type(g, tol)
    lv = level(g, tol)
    info: dict = {
        "graph": to_compact(g),
        "rank": g.rank,
        "type": tclass.value,
        "signature": {
            "n_plus": sig.n_plus,
            "n_zero": sig.n_zero,
            "n_minus": sig.n_minus,
            "min_eigenvalue": sig.min_eigenvalue,
        },
        "level": lv,
    }
    if lv == 2:
        info["strict"] = is_strict_level2(g, tol)
    try:
        _, norms = fundamental_weights(b)
    except SingularFormError:
        info["weights"] = None
    else:
        from .tangency import classify_weight_norm

        weights = []
        for s, norm in enumerate(norms):
            if lv == 2 and norm > 1.0 + 1e-9:
                raise InconsistencyError(
                    f"level-2 graph has fundamental weight norm {norm} > 1"
                )
            weights.append(
                {
                    "color": s,
                    "norm": float(norm),
                    "class": classify_norm(norm, norm).value,
                    "role": classify_weight_norm(norm).value,
                }
            )
        info["weights"] = weights

    if args.format == "json":
        _emit(json.dumps(info, indent=1) + "\n", args.out)
    else:
        lines = [
            f"graph: {info['graph']}",
            f"rank: {g.rank}",
            f"type: {tclass.value}",
            f"signature: n_plus={sig.n_plus} n_zero={sig.n_zero} n_minus={sig.n_minus} "
            f"min_eigenvalue={sig.min_eigenvalue:.6f}",
            f"level: {lv}",
        ]
        if "strict" in info:
            lines.append(f"strict: {'true' if info['strict'] else 'false'}")
        if info["weights"] is None:
            lines.append("weights: undefined (singular form)")
        else:
            for w in info["weights"]:
                lines.append(
                    f"weight[{w['color']}]: norm={w['norm']:.9f} "
                    f"class={w['class']} role={w['role']}"
                )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _projective_list(vec) -> list | None:
    p = projectivize(vec)
    if p.at_infinity:
        return None
    return [float(x) for x in p.coords]


def cmd_roots(args) -> int:
    if args.depth < 1:
        raise _CliError(EXIT_PARSE, f"--depth must be >= 1, got {args.depth}")
    g = _read_graph(args.graph)
    records = roots_up_to_depth(g, args.depth, max_records=_max_records(args))
    b = g.gram
    residual_by_depth: dict[int, float] = {}
    rows = []
    for r in records:
        proj = _projective_list(r.vector)
        if proj is not None:
            p = np.array(proj)
            res = abs(float(p @ b @ p))
            residual_by_depth[r.depth] = max(residual_by_depth.get(r.depth, 0.0), res)
        rows.append(
            {
                "coords": [float(x) for x in r.vector],
                "depth": r.depth,
                "height": r.height,
                "projective": proj,
            }
        )
    doc = {
        "graph": to_compact(g),
        "max_depth": args.depth,
        "count": len(rows),
        "quadratic_residual_by_depth": {str(k): v for k, v in sorted(residual_by_depth.items())},
        "records": rows,
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def cmd_weights(args) -> int:
    if args.length < 0:
        raise _CliError(EXIT_PARSE, f"--length must be >= 0, got {args.length}")
    g = _read_graph(args.graph)
    records = weights_up_to_length(g, args.length, max_records=_max_records(args))
    b = g.gram
    residual_by_length: dict[int, float] = {}
    rows = []
    for r in records:
        proj = _projective_list(r.vector)
        if proj is not None:
            p = np.array(proj)
            res = abs(float(p @ b @ p))
            residual_by_length[r.word_length] = max(
                residual_by_length.get(r.word_length, 0.0), res
            )
        rows.append(
            {
                "coords": [float(x) for x in r.vector],
                "word_length": r.word_length,
                "height": float(r.vector.sum()),
                "norm": r.norm,
                "class": r.klass.value,
                "color": r.color,
                "projective": proj,
            }
        )
    doc = {
        "graph": to_compact(g),
        "max_length": args.length,
        "count": len(rows),
        "quadratic_residual_by_length": {
            str(k): v for k, v in sorted(residual_by_length.items())
        },
        "records": rows,
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def cmd_pack(args) -> int:
    g = _read_graph(args.graph)
    if args.format == "svg" and g.rank != 4:
        raise _CliError(EXIT_SVG_RANK, f"svg output requires rank 4 (disks), got rank {g.rank}")
    b = g.gram
    frame = lorentz_frame(b, args.tol)
    records = weights_up_to_length(g, args.length, max_records=_max_records(args))
    spacelike = [w for w in records if w.klass is VectorClass.SPACE_LIKE]
    report = validate_cluster(spacelike, b)
    raw_caps = [cap_of(w.vector, frame, b) for w in spacelike]
    balls, caps, rot = project_packing(raw_caps)

    m = np.array(frame.basis_change)
    if rot.size:
        ext = np.eye(g.rank)
        ext[: g.rank - 1, : g.rank - 1] = rot
        m = m @ ext.T

    summary = (
        f"is_packing={'true' if report.is_packing else 'false'} "
        f"min_separation={report.min_separation:.9f} balls={len(balls)} "
        f"orbit_length={args.length}"
    )

    if args.format == "svg":
        spec = RenderSpec(
            orbit_length=args.length,
            min_radius=args.min_radius,
            canvas_width=args.canvas,
            canvas_height=args.canvas,
        )
        triples = [(ball, w.color, w.word_length) for ball, w in zip(balls, spacelike)]
        _emit(svg_packing(triples, spec, summary), args.out)
        return 0

    rows = []
    for ball, cap, w in zip(balls, caps, spacelike):
        row = {
            "color": w.color,
            "word_length": w.word_length,
            "cap_center": [float(x) for x in cap.center],
            "cap_radius": cap.angular_radius,
            "curvature": ball.curvature,
            "curvature_center": [float(x) for x in ball.curvature_center],
        }
        if ball.is_halfspace:
            row["halfspace_offset"] = ball.halfspace_offset
        rows.append(row)
    doc = {
        "graph": to_compact(g),
        "frame": [[float(x) for x in row] for row in m],
        "orbit_length": args.length,
        "validation": {
            "is_packing": report.is_packing,
            "min_separation": None
            if math.isinf(report.min_separation)
            else report.min_separation,
            "n_violating_pairs": len(report.violating_pairs),
            "n_deep_pairs": len(report.deep_pairs),
        },
        "balls": rows,
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def cmd_tangency(args) -> int:
    g = _read_graph(args.graph)
    tg = tangency_graph(g, args.length, args.tol, max_records=_max_records(args))
    records = [
        # oracle runs on the same vertex set the complex produced
        r
        for r in _vertex_records(tg)
    ]
    oracle = geometric_oracle(records, g.gram)
    oracle_ids = {
        (min(tg.vertices[a].id, tg.vertices[b].id), max(tg.vertices[a].id, tg.vertices[b].id))
        for a, b in oracle
    }
    agrees = oracle_ids == tg.edge_set()

    if args.format == "edges":
        lines = [f"{e.u} {e.v} {e.tag}" for e in tg.edges]
        lines.append(f"# oracle_agrees={'true' if agrees else 'false'}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    doc = {
        "graph": to_compact(g),
        "truncation_length": tg.truncation_length,
        "vertices": [
            {
                "id": v.id,
                "color": v.color,
                "klass": v.vclass.value,
                "word_length": v.word_length,
            }
            for v in tg.vertices
        ],
        "edges": [{"u": e.u, "v": e.v, "tag": e.tag} for e in tg.edges],
        "oracle_agrees": agrees,
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def _vertex_records(tg):
    from .orbits import WeightRecord

    out = []
    for v in tg.vertices:
        out.append(
            WeightRecord(v.vector, v.word_length, v.norm, VectorClass.SPACE_LIKE, v.color)
        )
    return out


def cmd_enum(args) -> int:
    out_path = args.out or "census.csv"
    entries = census_mod.enumerate_level2(
        max_rank=args.max_rank, zero_tol=args.tol, jobs=args.jobs
    )
    problems = []
    keys = [e.key for e in entries]
    if len(set(keys)) != len(keys):
        problems.append("duplicate canonical keys")
    for e in entries:
        if not 5 <= e.rank <= args.max_rank:
            problems.append(f"rank {e.rank} outside 5..{args.max_rank}")
            break
    for e in entries:
        if any(lab.m not in (3, 4, 5, 6) for _, _, lab in e.graph.edges):
            problems.append("label outside {3,4,5,6}")
            break
    if problems:
        for p in problems:
            print(f"invariant failure: {p}", file=sys.stderr)
        return EXIT_ENUM_INVARIANT

    selected = [e for e in entries if e.strict] if args.strict_only else entries
    census_mod.write_census_csv(selected, out_path)
    if args.json:
        census_mod.write_census_json(selected, args.json)
    report = census_mod.census_report(selected)
    hist = ",".join(f"{r}:{c}" for r, c in report.rank_histogram().items())
    print(f"total={report.total} strict={report.strict_total} ranks={hist} out={out_path}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-3, help="eigenvalue zero tolerance")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers (enum only)")
    common.add_argument(
        "--max-records", type=int, default=None, help="cap orbit record counts"
    )
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="coxpack",
        description="Geometric Coxeter systems: classification, orbits, ball packings, census.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="type, signature, level, weights")
    p.add_argument("graph", help="graph file (JSON or compact form)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("roots", parents=[common], help="positive roots up to a depth")
    p.add_argument("graph")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("weights", parents=[common], help="weight orbit up to a word length")
    p.add_argument("graph")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("pack", parents=[common], help="ball packing data or SVG")
    p.add_argument("graph")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--format", choices=["json", "svg"], default="json")
    p.add_argument("--min-radius", type=float, default=0.75, help="drop smaller disks (px)")
    p.add_argument("--canvas", type=int, default=800, help="canvas size in px")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("tangency", parents=[common], help="tangency graph of a level-2 system")
    p.add_argument("graph")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--format", choices=["json", "edges"], default="json")
    p.set_defaults(func=cmd_tangency)

    p = sub.add_parser("enum", parents=[common], help="census of level-2 graphs")
    p.add_argument("--max-rank", type=int, default=11)
    p.add_argument("--json", default=None, help="also write a JSON mirror")
    p.add_argument("--strict-only", action="store_true")
    p.set_defaults(func=cmd_enum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GraphError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OrbitCapError as exc:
        print(f"orbit cap: {exc}", file=sys.stderr)
        return EXIT_ORBIT_CAP
    except LevelError as exc:
        print(f"level error: {exc}", file=sys.stderr)
        return EXIT_LEVEL
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except FormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
