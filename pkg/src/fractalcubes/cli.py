"""Command-line interface: ``fractalcubes <subcommand> ...``.

Exit codes: 0 success, 1 input or validation error, 2 size guard exceeded,
3 the structure graph and the brute-force oracle disagree (``--verify``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import oracle
from .digits import DEFAULT_MAX_CELLS, boundary_digits, face_digits, project_digits, refine, section_digits
from .errors import FractalCubeError, GuardExceeded
from .faces import FaceVector
from .intersection import IntersectionProblem, analyze, build_structure_graph, self_intersection_report
from .reports import (
    DEFAULT_MAX_IMAGE, dump_digit_set, emit_report, export_dot, parse_problem, render_raster,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _threads() -> int | None:
    raw = os.environ.get("FRACTAL_CUBE_THREADS")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise FractalCubeError(f"FRACTAL_CUBE_THREADS must be an integer >= 1, got {raw!r}")
    return value


def _point(token: str) -> tuple:
    body = token.strip().removeprefix("(").removesuffix(")")
    try:
        return tuple(Fraction(c.strip()) for c in body.split(","))
    except (ValueError, ZeroDivisionError):
        raise FractalCubeError(f"malformed point {token!r}") from None


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise FractalCubeError(f"cannot read {path}: {e.strerror}") from None
    return parse_problem(data)


def _pair(problem, mode) -> IntersectionProblem:
    return IntersectionProblem(problem, problem) if mode == "self" else problem


def _single(problem, mode, which: int):
    if mode == "self":
        return problem
    return problem.D1 if which == 1 else problem.D2


def _alphas(token: str, k: int):
    if token == "all":
        return None
    a = FaceVector.parse(token)
    if len(a) != k:
        raise FractalCubeError(f"--alpha {token} has dimension {len(a)}, problem has k={k}")
    return [a]


def _write(path: str | None, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _verify(P: IntersectionProblem, report, p_max: int, max_cells: int) -> list[str]:
    """Cross-check every record against the oracle; returns disagreement lines."""

    def check(rec):
        issues = []
        res = oracle.certify_empty(P.D1, P.D2, rec.alpha, p_max, max_cells)
        if rec.alive and isinstance(res, oracle.Certified):
            issues.append(f"{rec.alpha}: graph alive, oracle {res}")
        for pt in rec.points or ():
            if not oracle.verify_point(P.D1, P.D2, rec.alpha, pt):
                issues.append(f"{rec.alpha}: point {pt} rejected by oracle")
        return issues

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(check, report.records))
    return [line for r in results for line in r]


def cmd_analyze(args) -> int:
    problem, mode = _load(args.input)
    alphas = _alphas(args.alpha, problem.k)
    if mode == "self":
        report = self_intersection_report(problem, alphas)
    else:
        report = analyze(problem, alphas)
    if args.verify:
        diff = _verify(report.problem, report, args.pmax, args.max_cells)
        if diff:
            sys.stderr.write("graph/oracle disagreement:\n" + "\n".join(diff) + "\n")
            return 3
    _write(args.report, emit_report(report, args.format))
    if args.text:
        _write(args.text, emit_report(report, "text"))
    if args.dot:
        _write(args.dot, export_dot(report.graph))
    if args.ppm:
        _write(args.ppm, render_raster(problem, args.depth, None, args.max_image, args.max_cells))
    return 0


def cmd_graph(args) -> int:
    problem, mode = _load(args.input)
    _write(args.dot, export_dot(build_structure_graph(_pair(problem, mode))))
    return 0


def cmd_render(args) -> int:
    problem, mode = _load(args.input)
    mode_arg = args.mode
    src = problem
    if mode == "pair" and mode_arg == "single":
        src = problem.D1 if args.which == 1 else problem.D2
    _write(args.out, render_raster(src, args.depth, mode_arg, args.max_image, args.max_cells))
    return 0


def cmd_refine(args) -> int:
    problem, mode = _load(args.input)
    D = _single(problem, mode, args.which)
    _write(args.out, dump_digit_set(refine(D, args.p, args.max_cells)))
    return 0


def cmd_section(args) -> int:
    problem, mode = _load(args.input)
    D = _single(problem, mode, args.which)
    d0 = tuple(int(c) for c in args.digit.strip("()").split(","))
    _write(args.out, dump_digit_set(section_digits(D, FaceVector.parse(args.alpha), d0)))
    return 0


def cmd_project(args) -> int:
    problem, mode = _load(args.input)
    D = _single(problem, mode, args.which)
    _write(args.out, dump_digit_set(project_digits(D, FaceVector.parse(args.alpha))))
    return 0


def cmd_faces(args) -> int:
    problem, mode = _load(args.input)
    D = _single(problem, mode, args.which)
    if args.alpha == "all":
        faces = boundary_digits(D)
    else:
        a = FaceVector.parse(args.alpha)
        faces = {a: face_digits(D, a)}
    obj = {str(a): [list(d) for d in Da.digits] for a, Da in sorted(faces.items())}
    _write(args.out, json.dumps({"k": D.k, "n": D.n, "faces": obj}, indent=2) + "\n")
    return 0


def cmd_oracle(args) -> int:
    problem, mode = _load(args.input)
    if args.check == "member":
        D = _single(problem, mode, args.which)
        _write(args.out, f"{str(oracle.exact_member(D, _point(args.point))).lower()}\n")
        return 0
    P = _pair(problem, mode)
    a = FaceVector.parse(args.alpha)
    if len(a) != P.k:
        raise FractalCubeError(f"--alpha {args.alpha} has dimension {len(a)}, problem has k={P.k}")
    if args.check == "empty":
        res = oracle.certify_empty(P.D1, P.D2, a, args.pmax, args.max_cells)
        _write(args.out, f"{res}\n")
    elif args.check == "boxdim":
        counts = oracle.adjacent_cell_counts(P.D1, P.D2, a, args.phi, args.max_cells)
        lines = ["p N_p"] + [f"{p} {c}" for p, c in enumerate(counts, 1)]
        slope = oracle.estimate_dimension(P.D1, P.D2, a, args.plo, args.phi, args.max_cells)
        lines.append(f"slope={slope:.6f}")
        _write(args.out, "\n".join(lines) + "\n")
    else:
        ok = oracle.verify_point(P.D1, P.D2, a, _point(args.point))
        _write(args.out, f"{str(ok).lower()}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", required=True, help="problem file (JSON or text)")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    common.add_argument("--max-image", type=int, default=DEFAULT_MAX_IMAGE)
    which = _Parser(add_help=False)
    which.add_argument("--which", type=int, choices=(1, 2), default=1,
                       help="digit set of a pair file to use")
    out = _Parser(add_help=False)
    out.add_argument("--out", default=None)

    parser = _Parser(prog="fractalcubes", description="Analyse fractal cubes given by digit sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="per-face intersection report")
    p.add_argument("--report", default=None, help="report path (default stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--text", default=None, help="also write the text table here")
    p.add_argument("--dot", default=None, help="also write the structure graph")
    p.add_argument("--ppm", default=None, help="also write a raster (k = 2)")
    p.add_argument("--depth", type=int, default=1, help="raster depth")
    p.add_argument("--alpha", default="all")
    p.add_argument("--verify", action="store_true", help="cross-check with the oracle")
    p.add_argument("--pmax", type=int, default=6, help="oracle depth for --verify")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", parents=[common], help="structure graph as DOT")
    p.add_argument("--dot", default=None)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("render", parents=[common, which, out], help="PPM raster (k = 2)")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--mode", choices=("single", "overlay"), default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("refine", parents=[common, which, out], help="p-th refinement")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("section", parents=[common, which, out], help="section digit set")
    p.add_argument("--alpha", required=True)
    p.add_argument("--digit", required=True, help="projected digit, e.g. (1)")
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("project", parents=[common, which, out], help="projection digit set")
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("faces", parents=[common, which, out], help="face digit sets")
    p.add_argument("--alpha", default="all")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("oracle", help="brute-force checks")
    osub = p.add_subparsers(dest="check", required=True, parser_class=_Parser)
    q = osub.add_parser("empty", parents=[common, out])
    q.add_argument("--alpha", required=True)
    q.add_argument("--pmax", type=int, default=6)
    q = osub.add_parser("boxdim", parents=[common, out])
    q.add_argument("--alpha", required=True)
    q.add_argument("--plo", type=int, default=4)
    q.add_argument("--phi", type=int, default=8)
    q = osub.add_parser("member", parents=[common, which, out])
    q.add_argument("--point", required=True, help='rational point, e.g. "(1/4)"')
    q = osub.add_parser("verify", parents=[common, out])
    q.add_argument("--alpha", required=True)
    q.add_argument("--point", required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except GuardExceeded as e:
        sys.stderr.write(f"guard exceeded: {e}\n")
        return 2
    except FractalCubeError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
