"""Problem files, JSON/text reports, DOT export and PPM rasters."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .digits import DEFAULT_MAX_CELLS, DigitSet, make_digit_set, refine
from .errors import FractalCubeError, GuardExceeded, ParseError
from .faces import FaceVector
from .intersection import AnalysisReport, IntersectionProblem, StructureGraph

DEFAULT_MAX_IMAGE = 4096


# -- parsing -----------------------------------------------------------------

def _digit_set_from_obj(obj, where: str) -> DigitSet:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object with keys k, n, digits")
    missing = [key for key in ("k", "n", "digits") if key not in obj]
    if missing:
        raise ParseError(f"{where}: missing field(s) {', '.join(missing)}")
    k, n, digits = obj["k"], obj["n"], obj["digits"]
    for name, val in (("k", k), ("n", n)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise ParseError(f"{where}.{name}: expected an integer, got {val!r}")
    if not isinstance(digits, list):
        raise ParseError(f"{where}.digits: expected a list")
    for i, d in enumerate(digits):
        if not isinstance(d, list) or len(d) != k or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in d
        ):
            raise ParseError(f"{where}.digits[{i}]: expected a list of {k} integers, got {d!r}")
        if any(c < 0 or c >= n for c in d):
            raise ParseError(
                f"{where}.digits[{i}]: digit ({','.join(map(str, d))}) out of range [0,{n - 1}]"
            )
    try:
        return make_digit_set(k, n, digits)
    except FractalCubeError as e:
        raise ParseError(f"{where}: {e}") from None


def _parse_text_block(lines, label: str) -> DigitSet:
    """``lines`` is a list of (line number, text) with comments removed."""
    if not lines:
        raise ParseError(f"{label}: missing header line 'k n'")
    lineno, header = lines[0]
    parts = header.split()
    try:
        k, n = (int(x) for x in parts)
    except ValueError:
        raise ParseError(f"line {lineno}: expected header 'k n', got {header!r}") from None
    digits = []
    for lineno, text in lines[1:]:
        try:
            d = [int(x) for x in text.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer digit {text!r}") from None
        if len(d) != k:
            raise ParseError(f"line {lineno}: expected {k} coordinates, got {len(d)}")
        if any(c < 0 or c >= n for c in d):
            raise ParseError(
                f"line {lineno}: digit ({','.join(map(str, d))}) out of range [0,{n - 1}]"
            )
        digits.append(d)
    try:
        return make_digit_set(k, n, digits)
    except FractalCubeError as e:
        raise ParseError(f"{label}: {e}") from None


def parse_digit_set_text(text: str) -> list[DigitSet]:
    """One or two digit sets in the plain-text format; blocks are split by '---'."""
    blocks, current = [], []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "---":
            blocks.append(current)
            current = []
            continue
        current.append((i, line))
    blocks.append(current)
    return [_parse_text_block(b, f"block {j + 1}") for j, b in enumerate(blocks)]


def parse_problem(data: bytes | str):
    """Parse a problem file.

    Returns ``(problem, mode)`` where mode is "self" (problem is a DigitSet)
    or "pair" (problem is an IntersectionProblem).
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e}") from None
    if data.lstrip().startswith("{"):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
        if "d1" in obj or "d2" in obj:
            if "d1" not in obj or "d2" not in obj:
                raise ParseError("pair problem needs both d1 and d2")
            sets = [_digit_set_from_obj(obj["d1"], "d1"), _digit_set_from_obj(obj["d2"], "d2")]
        else:
            sets = [_digit_set_from_obj(obj, "$")]
    else:
        sets = parse_digit_set_text(data)
    if len(sets) == 1:
        return sets[0], "self"
    if len(sets) != 2:
        raise ParseError(f"expected one or two digit sets, found {len(sets)}")
    D1, D2 = sets
    if (D1.k, D1.n) != (D2.k, D2.n):
        raise ParseError(f"d1 has k={D1.k}, n={D1.n} but d2 has k={D2.k}, n={D2.n}")
    return IntersectionProblem(D1, D2), "pair"


def dump_digit_set(D: DigitSet) -> bytes:
    """Canonical JSON for a digit set: one digit per line, lexicographic order."""
    rows = ",\n".join("    [" + ", ".join(map(str, d)) + "]" for d in D.digits)
    body = f'{{\n  "k": {D.k},\n  "n": {D.n},\n  "digits": [\n{rows}\n  ]\n}}\n'
    if not D.digits:
        body = f'{{\n  "k": {D.k},\n  "n": {D.n},\n  "digits": []\n}}\n'
    return body.encode()


def dump_problem(problem) -> bytes:
    if isinstance(problem, DigitSet):
        return dump_digit_set(problem)
    obj = {"d1": problem.D1.to_dict(), "d2": problem.D2.to_dict()}
    return (_dumps(obj) + "\n").encode()


# -- DOT ---------------------------------------------------------------------

def export_dot(G: StructureGraph) -> str:
    lines = ["digraph structure_graph {"]
    for a in G.vertices:
        lines.append(f'  "F_{a}";')
    for a, b, g in G.edge_list():
        lines.append(f'  "F_{a}" -> "F_{b}" [label="#G={len(g)}"];')
    for a, _, g in G.loop_edges():
        lines.append(f'  "F_{a}" -> "F_{a}" [label="#G={len(g)}", style=dashed, color=red];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- rasters -----------------------------------------------------------------

WHITE, BLACK = (255, 255, 255), (0, 0, 0)
RED, BLUE, PURPLE = (255, 0, 0), (0, 0, 255), (128, 0, 128)


def render_raster(source, p: int, mode: str | None = None,
                  max_image: int = DEFAULT_MAX_IMAGE,
                  max_cells: int = DEFAULT_MAX_CELLS) -> bytes:
    """ASCII PPM of the depth-p cells; y grows upwards (row 0 is the top).

    ``source`` is a DigitSet (mode "single") or an IntersectionProblem
    (mode "overlay": red = only D1, blue = only D2, purple = both).
    """
    if mode is None:
        mode = "single" if isinstance(source, DigitSet) else "overlay"
    sets = [source] if isinstance(source, DigitSet) else [source.D1, source.D2]
    if mode == "single" and len(sets) != 1 or mode == "overlay" and len(sets) != 2:
        raise FractalCubeError(f"mode {mode!r} does not match the input")
    if sets[0].k != 2:
        raise FractalCubeError(f"rasters need k = 2, got k = {sets[0].k}")
    if not isinstance(p, int) or p < 1:
        raise FractalCubeError(f"depth p={p!r} must be >= 1")
    size = sets[0].n ** p
    if size > max_image:
        raise GuardExceeded(f"image side {size} exceeds the limit of {max_image}")
    cells = [set(refine(D, p, max_cells).digits) if p > 1 else set(D.digits) for D in sets]

    def colour(x, y):
        inside = [(x, y) in c for c in cells]
        if mode == "single":
            return BLACK if inside[0] else WHITE
        return {(True, True): PURPLE, (True, False): RED,
                (False, True): BLUE}.get(tuple(inside), WHITE)

    out = [f"P3\n{size} {size}\n255\n"]
    for r in range(size):
        y = size - 1 - r
        out.append(" ".join("%d %d %d" % colour(x, y) for x in range(size)) + "\n")
    return "".join(out).encode("ascii")


# -- reports -----------------------------------------------------------------

def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def report_dict(analysis: AnalysisReport) -> dict:
    P = analysis.problem
    if analysis.mode == "self":
        echo = {"mode": "self", "d": P.D1.to_dict()}
    else:
        echo = {"mode": "pair", "d1": P.D1.to_dict(), "d2": P.D2.to_dict()}
    rows = []
    for r in analysis.records:
        rows.append({
            "alpha": str(r.alpha),
            "alive": r.alive,
            "nu": r.dimension.nu if r.alive else 0,
            "dimension": r.dimension.value if r.alive else None,
            "measure_finite": r.measure_finite,
            "cardinality": {"class": r.cardinality.kind, "count": r.cardinality.count},
            "criterion": r.criterion,
            "chain_sum": r.chain_sum,
            "points": None if r.points is None else [[_frac(c) for c in pt] for pt in r.points],
        })
    out = {"problem": echo, "graph": analysis.graph.summary(), "alphas": rows}
    if analysis.properties is not None:
        out["properties"] = analysis.properties
    return out


def _row_text(r) -> str:
    if not r.alive:
        return f"{r.alpha} empty"
    dim = f"{r.dimension.value:.6g}"
    meas = "finite" if r.measure_finite else "infinite"
    return f"{r.alpha} alive ν={r.dimension.nu} dim={dim} {meas} card={r.cardinality}"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def report_text(analysis: AnalysisReport) -> str:
    s = analysis.graph.summary()
    lines = [
        f"mode={analysis.mode} k={analysis.problem.k} n={analysis.problem.n} "
        f"vertices={s['vertices']} edges={s['edges']} loops={s['loops']}"
    ]
    lines += [_row_text(r) for r in analysis.records]
    if analysis.properties is not None:
        pr = analysis.properties
        lines.append(f"one-point: {_yes(pr['one_point'])}, finite-intersection: {_yes(pr['finite'])}")
        lines.append(
            f"graph criterion one-point: {_yes(pr['criterion_one_point'])}, "
            f"finite-intersection: {_yes(pr['criterion_finite'])}"
        )
    return "\n".join(lines) + "\n"


_INNER_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def _dumps(obj) -> str:
    """Indented JSON with innermost lists (digits, points) kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return _INNER_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)


def emit_report(analysis: AnalysisReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (_dumps(report_dict(analysis)) + "\n").encode()
    if fmt == "text":
        return report_text(analysis).encode("utf-8")
    raise FractalCubeError(f"unknown report format {fmt!r}")
