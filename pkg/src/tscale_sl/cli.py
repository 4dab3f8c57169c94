"""Command line interface: ``tscale-sl {solve,verify,grid}``.

Problem files are JSON::

    {
      "timescale": [{"type": "interval", "from": 0, "to": 1},
                    {"type": "point", "at": 1.5}],
      "potential": [{"kind": "poly", "coeffs": [0, 0, 1]},
                    {"kind": "const", "value": 2.0}],
      "ha": 0.0,
      "hb": 0.0
    }

with one potential piece per segment record, in the same order. Exit codes:
0 when every verdict is consistent, 1 on usage, input or numerical errors,
2 when a hypothesis held but its conclusion failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import ambarzumyan as amb
from .sl_solver import (
    CrossCheckError,
    PieceKind,
    PotentialPiece,
    PotentialSpec,
    ProblemError,
    SLProblem,
    cross_check_limit,
    spectrum,
)
from .timescale import Segment, build_timescale, realize

logger = logging.getLogger("tscale_sl")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSIFIED = 2

_PIECE_KINDS = {
    "const": PieceKind.CONSTANT,
    "constant": PieceKind.CONSTANT,
    "poly": PieceKind.POLYNOMIAL,
    "polynomial": PieceKind.POLYNOMIAL,
    "samples": PieceKind.SAMPLES,
}
_PIECE_NAMES = {
    PieceKind.CONSTANT: "const",
    PieceKind.POLYNOMIAL: "poly",
    PieceKind.SAMPLES: "samples",
}


class ProblemFileError(ValueError):
    pass


def _number(record: dict, key: str, where: str) -> float:
    try:
        value = record[key]
    except KeyError:
        raise ProblemFileError(f"{where}: missing field {key!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFileError(f"{where}: field {key!r} must be a number")
    return float(value)


def _segment(record, k: int) -> Segment:
    where = f"timescale[{k}]"
    if not isinstance(record, dict):
        raise ProblemFileError(f"{where}: expected an object")
    kind = record.get("type")
    if kind == "point":
        return Segment.point(_number(record, "at", where))
    if kind == "interval":
        return Segment.interval(_number(record, "from", where), _number(record, "to", where))
    raise ProblemFileError(f"{where}: unknown segment type {kind!r}")


def _piece(record, k: int) -> PotentialPiece:
    where = f"potential[{k}]"
    if not isinstance(record, dict):
        raise ProblemFileError(f"{where}: expected an object")
    try:
        kind = _PIECE_KINDS[record.get("kind")]
    except (KeyError, TypeError):
        raise ProblemFileError(f"{where}: unknown piece kind {record.get('kind')!r}") from None
    if kind is PieceKind.CONSTANT:
        return PotentialPiece.constant(_number(record, "value", where))
    if kind is PieceKind.POLYNOMIAL:
        coeffs = record.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise ProblemFileError(f"{where}: 'coeffs' must be a nonempty list")
        return PotentialPiece.polynomial(coeffs)
    points = record.get("points")
    if not isinstance(points, list) or not points:
        raise ProblemFileError(f"{where}: 'points' must be a nonempty list of [t, value]")
    if any(not isinstance(p, list) or len(p) != 2 for p in points):
        raise ProblemFileError(f"{where}: each sample must be a [t, value] pair")
    return PotentialPiece.samples([tuple(p) for p in points])


def problem_from_dict(data: dict) -> SLProblem:
    """Decode and validate a problem record."""
    if not isinstance(data, dict):
        raise ProblemFileError("problem file must hold a JSON object")
    records = data.get("timescale")
    pieces = data.get("potential")
    if not isinstance(records, list) or not records:
        raise ProblemFileError("'timescale' must be a nonempty list of segments")
    if not isinstance(pieces, list):
        raise ProblemFileError("'potential' must be a list of pieces")
    segments = [_segment(r, k) for k, r in enumerate(records)]
    parsed = [_piece(p, k) for k, p in enumerate(pieces)]
    if len(parsed) != len(segments):
        raise ProblemFileError(
            f"potential piece count mismatch: {len(parsed)} pieces for "
            f"{len(segments)} segments"
        )
    order = sorted(range(len(segments)), key=lambda k: (segments[k].start, segments[k].end))
    ts = build_timescale(segments)
    if len(ts.segments) != len(segments):
        raise ProblemFileError(
            "segments overlap or touch; merge them into one record so the "
            "potential pieces line up"
        )
    q = PotentialSpec(tuple(parsed[k] for k in order))
    return SLProblem(ts, q, _number(data, "ha", "problem"), _number(data, "hb", "problem"))


def problem_to_dict(problem: SLProblem) -> dict:
    segs = []
    for seg in problem.ts.segments:
        if seg.is_point:
            segs.append({"type": "point", "at": seg.start})
        else:
            segs.append({"type": "interval", "from": seg.start, "to": seg.end})
    pieces = []
    for piece in problem.q.pieces:
        name = _PIECE_NAMES[piece.kind]
        if piece.kind is PieceKind.CONSTANT:
            pieces.append({"kind": name, "value": piece.payload})
        elif piece.kind is PieceKind.POLYNOMIAL:
            pieces.append({"kind": name, "coeffs": list(piece.payload)})
        else:
            pieces.append({"kind": name, "points": [list(p) for p in piece.payload]})
    return {"timescale": segs, "potential": pieces, "ha": problem.h_a, "hb": problem.h_b}


def parse_problem(path) -> SLProblem:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: malformed JSON: {exc}") from None
    return problem_from_dict(data)


def emit_problem(problem: SLProblem, path) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(problem), indent=2), encoding="utf-8")


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _step(args, problem: SLProblem) -> float:
    return args.step if args.step is not None else problem.default_step()


def cmd_solve(args) -> int:
    problem = parse_problem(args.problem)
    h = _step(args, problem)
    grid = realize(problem.ts, h)
    num = args.num_eigs if args.num_eigs is not None else min(grid.N - 1, 8)
    spec, pairs = spectrum(problem, h, args.tol, num)
    first = amb.theorem1_report(problem, spec.grid, pairs[0])
    zero_counts = [p.zero_count for p in pairs]
    report = {
        "eigenvalues": [float(x) for x in spec.eigenvalues],
        "zero_counts": zero_counts,
        "oscillation_consistent": zero_counts == list(range(len(pairs))),
        "lambda1": first.lambda1,
        "threshold": first.threshold,
        "verdicts": {"theorem1": first.verdict.value, "falsified": first.falsified},
        "proof_residual": first.proof_residual,
        "grid": {
            "N": grid.N,
            "h": h,
            "a": grid.a,
            "b": grid.b,
            "rho_b": grid.rho_b,
        },
        "solver": {
            "tol": args.tol,
            "operator_bound": spec.bound,
            "residuals": [p.residual for p in pairs],
            "shooting_offsets": [p.shooting_offset for p in pairs],
            "cross_check_limits": [
                cross_check_limit(p.lam, args.tol, spec.bound) for p in pairs
            ],
        },
    }
    _write_json(report, args.out)
    if args.eigenfunctions:
        with open(args.eigenfunctions, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t"] + [f"y{k + 1}" for k in range(len(pairs))])
            for i, t in enumerate(spec.grid.points):
                writer.writerow([f"{t:.17g}"] + [f"{p.samples[i]:.17g}" for p in pairs])
    return EXIT_FALSIFIED if first.falsified else EXIT_OK


def cmd_verify(args) -> int:
    problem = parse_problem(args.problem)
    h = _step(args, problem)
    checks = (
        ["theorem1", "corollary1", "corollary2", "remark"] if args.check == "all" else [args.check]
    )
    out: dict = {}
    status = EXIT_OK
    for check in checks:
        needs_neumann = check != "theorem1"
        if needs_neumann and not problem.is_neumann:
            if args.check == "all":
                out[check] = "skipped: needs Neumann conditions"
                continue
            raise ProblemError(f"--check {check} needs Neumann conditions (ha = hb = 0)")
        try:
            if check == "theorem1":
                report = amb.verify_theorem1(problem, h, args.tol)
                out[check] = report.as_dict()
                if report.falsified:
                    status = EXIT_FALSIFIED
            elif check == "corollary1":
                out[check] = amb.verify_corollary1(problem, h, args.tol).value
            elif check == "corollary2":
                out[check] = amb.verify_corollary2(problem, h, args.tol).value
            else:
                out[check] = amb.verify_remark(problem, args.tol).value
        except amb.FalsificationError as exc:
            logger.error("%s: %s", check, exc)
            out[check] = f"falsified: {exc}"
            status = EXIT_FALSIFIED
    _write_json(out, args.out)
    return status


def cmd_grid(args) -> int:
    problem = parse_problem(args.problem)
    grid = realize(problem.ts, _step(args, problem))
    mu = np.append(grid.graininess, 0.0)
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(["t", "mu", "origin"])
        for t, m, orig in zip(grid.points, mu, grid.original):
            writer.writerow([f"{t:.17g}", f"{m:.17g}", "original" if orig else "sampled"])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tscale-sl",
        description="Spectra of Sturm-Liouville dynamic equations on time scales.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--problem", required=True, help="problem JSON file")
        p.add_argument("--step", type=float, default=None, help="dense-segment step h")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("solve", help="compute eigenvalues and eigenfunctions")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--num-eigs", type=int, default=None)
    p.add_argument("--eigenfunctions", default=None, help="CSV file for eigenfunction samples")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check the identification theorems")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument(
        "--check",
        choices=["theorem1", "corollary1", "corollary2", "remark", "all"],
        default="all",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grid", help="dump the realized grid as CSV")
    common(p)
    p.set_defaults(func=cmd_grid)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "num_eigs", None) is not None and args.num_eigs < 1:
        parser.error("--num-eigs must be at least 1")
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (OSError, ValueError, CrossCheckError, RuntimeError) as exc:
        # ProblemError, TimeScaleError and ProblemFileError are ValueErrors
        print(f"tscale-sl: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
