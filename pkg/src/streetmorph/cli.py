"""Command-line interface.

Subcommands:

* ``simplify``  -- run the full pipeline on a GeoJSON network
* ``evaluate``  -- grid comparison of two networks (d, xi, correlations)
* ``strokes``   -- dump the continuity-stroke assignment of each edge
* ``artifacts`` -- dump the face table with artifact flags and types

Exit codes: 0 success (warnings included), 2 input error, 3 geographic
(unprojected) input, 4 comparison/CRS mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .artifacts import DetectionParams
from .classify import classify_ces, group_artifacts
from .continuity import ContinuityParams, detect_strokes, stroke_of_edge
from .evaluate import CrsMismatchError, compare_networks, write_series_csv
from .io import load_network, read_crs, read_polygons, write_network
from .model import GeographicInputError, InvalidInputError
from .pipeline import SimplifyParams, simplify, _detect
from .skeleton import SkeletonParams
from .topology import ConsolidationParams, fix_topology

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CRS = 3
EXIT_MISMATCH = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--input", required=True, help="input GeoJSON network")
    parser.add_argument("-o", "--output", help="output path (default: stdout)")


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--consolidation-tolerance",
        type=float,
        default=2.0,
        help="node consolidation distance in meters (default 2.0)",
    )
    parser.add_argument(
        "--angle-threshold",
        type=float,
        default=120.0,
        help="minimum continuity angle in degrees (default 120)",
    )
    parser.add_argument(
        "--segmentation-density",
        type=float,
        default=1.0,
        help="skeleton sampling distance in meters (default 1.0)",
    )
    parser.add_argument("--loops", type=int, default=2, help="simplification passes (default 2)")
    parser.add_argument(
        "--artifact-threshold",
        type=float,
        default=None,
        help="fixed face index threshold (default: derived from the data)",
    )
    parser.add_argument(
        "--neighbor-margin",
        type=float,
        default=0.3,
        help="relative margin for flagging neighbors of artifacts (default 0.3)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streetmorph",
        description="Street network simplification and evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simplify", help="simplify a network")
    _add_common(p)
    _add_params(p)
    p.add_argument("--exclusion-mask", help="GeoJSON polygons whose faces are never simplified")
    p.add_argument("--report", help="write the JSON run report here")

    p = sub.add_parser("evaluate", help="compare two networks on a hex grid")
    p.add_argument("reference", help="reference network GeoJSON")
    p.add_argument("candidate", help="candidate network GeoJSON")
    p.add_argument("-o", "--output", help="summary JSON path (default: stdout)")
    p.add_argument("--cells", help="per-cell CSV path")
    p.add_argument("--grid-edge", type=float, default=200.0, help="hex edge length in m (default 200)")
    p.add_argument(
        "--stats",
        default="",
        help="extra statistics, comma-separated: pearson,spearman",
    )
    p.add_argument("--angle-threshold", type=float, default=120.0)

    p = sub.add_parser("strokes", help="dump stroke assignments")
    _add_common(p)
    p.add_argument("--angle-threshold", type=float, default=120.0)

    p = sub.add_parser("artifacts", help="dump the face artifact table")
    _add_common(p)
    _add_params(p)
    p.add_argument("--exclusion-mask", help="GeoJSON polygons whose faces are never flagged")
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_simplify(args) -> int:
    network = load_network(args.input)
    mask = read_polygons(args.exclusion_mask) if args.exclusion_mask else None
    params = SimplifyParams(
        consolidation=ConsolidationParams(tolerance=args.consolidation_tolerance),
        continuity=ContinuityParams(angle_threshold=args.angle_threshold),
        detection=DetectionParams(
            threshold=args.artifact_threshold,
            neighbor_similarity=args.neighbor_margin,
            exclusion_mask=mask,
        ),
        skeleton=SkeletonParams(segmentation_density=args.segmentation_density),
        loops=args.loops,
    )
    simplified, report = simplify(network, params)
    crs = read_crs(args.input)
    if args.output:
        write_network(args.output, simplified, crs)
    else:
        from .io import network_to_feature_collection

        json.dump(network_to_feature_collection(simplified, crs), sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    ref_crs = read_crs(args.reference)
    cand_crs = read_crs(args.candidate)
    if ref_crs and cand_crs and ref_crs != cand_crs:
        raise CrsMismatchError(f"reference CRS {ref_crs!r} != candidate CRS {cand_crs!r}")
    reference = load_network(args.reference)
    candidate = load_network(args.candidate)
    stats = tuple(s.strip() for s in args.stats.split(",") if s.strip())
    result = compare_networks(
        reference,
        candidate,
        grid_edge=args.grid_edge,
        stats=stats,
        continuity=ContinuityParams(angle_threshold=args.angle_threshold),
    )
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.output)
    if args.cells:
        write_series_csv(
            args.cells,
            {"reference": result.reference_series, "candidate": result.candidate_series},
        )
    return EXIT_OK


def cmd_strokes(args) -> int:
    network = load_network(args.input)
    strokes = detect_strokes(network, ContinuityParams(angle_threshold=args.angle_threshold))
    lookup = stroke_of_edge(strokes)
    lengths = {s.id: s.length for s in strokes}
    rows = ["edge_id,stroke_id,stroke_length"]
    for eid in sorted(network.edges):
        sid = lookup[eid]
        rows.append(f"{eid},{sid},{lengths[sid]!r}")
    _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def cmd_artifacts(args) -> int:
    network = load_network(args.input)
    mask = read_polygons(args.exclusion_mask) if args.exclusion_mask else None
    network = fix_topology(network, ConsolidationParams(tolerance=args.consolidation_tolerance))
    params = SimplifyParams(
        detection=DetectionParams(
            threshold=args.artifact_threshold,
            neighbor_similarity=args.neighbor_margin,
            exclusion_mask=mask,
        ),
        continuity=ContinuityParams(angle_threshold=args.angle_threshold),
    )
    result, faces, warnings = _detect(network, params, params.detection.threshold)
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    out = sys.stdout if not args.output else open(args.output, "w", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(["face_id", "index", "is_artifact", "group_kind", "ces_type"])
        if result is not None:
            strokes = detect_strokes(network, params.continuity)
            lookup = stroke_of_edge(strokes)
            kind_of = {}
            for group in group_artifacts(result):
                for face in group.faces:
                    kind_of[face.id] = group.kind
            by_id = {f.id: f for f in faces}
            for fid in sorted(by_id):
                flagged = fid in result.flagged
                ces = (
                    classify_ces(by_id[fid], network, strokes, lookup).type_string
                    if flagged
                    else ""
                )
                writer.writerow(
                    [fid, repr(result.index[fid]), flagged, kind_of.get(fid, ""), ces]
                )
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simplify": cmd_simplify,
        "evaluate": cmd_evaluate,
        "strokes": cmd_strokes,
        "artifacts": cmd_artifacts,
    }
    try:
        return handlers[args.command](args)
    except InvalidInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except GeographicInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CRS
    except CrsMismatchError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
