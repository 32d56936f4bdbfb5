"""Command-line front end: ``clusterscatter {walk,fan,scatter,theta,verify}``.

A job is a JSON document read from ``--in PATH`` or stdin, e.g.::

    {"matrix": [[0, -1], [1, 0]], "walk": [1, 2, 1], "depth": 8, "truncation": 8}

``matrix`` may also be a catalog name such as ``"G2"`` or ``"A1^(1)"``.
Command-line flags override document fields.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import catalog
from .errors import InvariantViolation, NotSkewSymmetrizable, SingularMatrix, UnsupportedRank
from .fan import build_g_fan, rank2_gaps
from .matrix import ExchangeMatrix
from .pattern import Walk, evaluate_walk
from .scattering import complete_rank2
from .separation import cluster
from .suites import SUITES, SuiteReport
from .theta import NonGenericEndpoint, theta

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    b0: ExchangeMatrix
    walk: list[int] = field(default_factory=list)
    depth: int = 12
    truncation: int = 8
    extra: dict[str, Any] = field(default_factory=dict)


# -- input -------------------------------------------------------------------------


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_document(text: str) -> dict:
    if not text.strip():
        return {}
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise UsageError("parse error at line 1, column 1: the document must be a JSON object")
    return doc


def parse_matrix(value: Any) -> ExchangeMatrix:
    if isinstance(value, str):
        try:
            return catalog.named(value)
        except KeyError:
            raise UsageError(f"unknown matrix name {value!r}; known: {', '.join(catalog.names())}") from None
    if not (isinstance(value, list) and value and all(isinstance(r, list) for r in value)):
        raise UsageError("matrix must be a list of integer rows or a catalog name")
    n = len(value)
    for i, row in enumerate(value, 1):
        if len(row) != n:
            raise UsageError(f"matrix row {i} has {len(row)} entries, expected {n}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise UsageError(f"matrix row {i} has a non-integer entry")
    try:
        return ExchangeMatrix.from_rows(value)
    except NotSkewSymmetrizable as exc:
        raise UsageError(str(exc)) from None


def parse_walk(value: Any, n: int) -> list[int]:
    if isinstance(value, str):
        try:
            value = [int(x) for x in value.replace(",", " ").split()]
        except ValueError:
            raise UsageError(f"walk {value!r} is not a list of integers") from None
    if not isinstance(value, list) or not all(isinstance(k, int) and not isinstance(k, bool) for k in value):
        raise UsageError("walk must be a list of directions")
    for k in value:
        if not 1 <= k <= n:
            raise UsageError(f"walk direction {k} out of range 1..{n}")
    return list(value)


def parse_vector(value: Any, n: int, what: str, rational: bool = False) -> tuple:
    if isinstance(value, str):
        value = value.replace(",", " ").split()
    if not isinstance(value, list) or len(value) != n:
        raise UsageError(f"{what} must have {n} entries")
    try:
        return tuple(Fraction(str(x)) if rational else int(x) for x in value)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} has a malformed entry") from None


def load_job(args: argparse.Namespace) -> JobSpec:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    elif args.matrix is None and not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    doc = parse_document(text)
    if args.matrix is not None:
        raw = args.matrix.strip()
        doc["matrix"] = _loads(raw) if raw.startswith("[") else raw
    if "matrix" not in doc:
        raise UsageError("no matrix given: pass --matrix or a document with a 'matrix' field")
    b0 = parse_matrix(doc["matrix"])
    walk = parse_walk(args.walk if getattr(args, "walk", None) is not None else doc.get("walk", []), b0.n)
    depth = args.depth if args.depth is not None else doc.get("depth", 12)
    truncation = args.truncation if args.truncation is not None else doc.get("truncation", 8)
    if not isinstance(depth, int) or depth < 0:
        raise UsageError("depth must be a nonnegative integer")
    if not isinstance(truncation, int) or truncation < 1:
        raise UsageError("truncation must be a positive integer")
    return JobSpec(b0, walk, depth, truncation, doc)


# -- output helpers -------------------------------------------------------------------


def _matrix_text(m) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m) + "]"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ---------------------------------------------------------------------------


def cmd_walk(job: JobSpec, fmt: str) -> tuple[str, int]:
    w = Walk(job.walk)
    if w.was_reduced(job.walk):
        print(f"warning: walk {job.walk} reduces to {list(w.directions)}", file=sys.stderr)
    p = evaluate_walk(job.b0, w)
    xs = cluster(p)
    data = {
        "matrix": [list(r) for r in job.b0.b],
        "walk": list(w.directions),
        "B": [list(r) for r in p.b],
        "C": [list(r) for r in p.c],
        "G": [list(r) for r in p.g],
        "F": [str(f) for f in p.f],
        "x": [str(x) for x in xs],
        "tropical_signs": list(p.eps),
    }
    if fmt == "json":
        return _json(data), EXIT_OK
    lines = [
        f"walk: {data['walk']}",
        f"B = {_matrix_text(p.b)}",
        f"C = {_matrix_text(p.c)}",
        f"G = {_matrix_text(p.g)}",
    ]
    lines += [f"F_{i} = {f}" for i, f in enumerate(data["F"], 1)]
    lines += [f"x_{i} = {x}" for i, x in enumerate(data["x"], 1)]
    lines.append("tropical signs: " + " ".join(f"{e:+d}" for e in p.eps))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_fan(job: JobSpec, fmt: str) -> tuple[str, int]:
    fan = build_g_fan(job.b0, job.depth)
    if fmt == "svg":
        from .render import render_fan

        if job.b0.n != 2:
            print(f"{len(fan.cones)} cones, {'complete' if fan.complete else 'incomplete'}", file=sys.stderr)
            raise UsageError("fan rendering needs a rank-2 matrix; use --format text for the report")
        return render_fan(fan), EXIT_OK
    cones = fan.matrices()
    data = {
        "cones": len(cones),
        "complete": fan.complete,
        "depth": job.depth,
        "rays": sorted(list(r) for r in fan.rays),
        "G": [[list(r) for r in g] for g in cones],
    }
    gaps = rank2_gaps(fan) if job.b0.n == 2 else []
    data["gaps"] = [[list(a), list(b)] for a, b in gaps]
    if fmt == "json":
        return _json(data), EXIT_OK
    lines = [f"{len(cones)} cones, {'complete' if fan.complete else 'incomplete'} at depth {job.depth}"]
    lines += [f"uncovered sector from ray {a} counterclockwise to ray {b}" for a, b in gaps]
    lines += [f"G = {_matrix_text(g)}" for g in cones]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_scatter(job: JobSpec, fmt: str) -> tuple[str, int]:
    if job.b0.n != 2:
        raise UsageError("scatter needs a rank-2 matrix")
    try:
        d = complete_rank2(job.b0, job.truncation)
    except SingularMatrix as exc:
        raise UsageError(str(exc)) from None
    from .render import render_scatter, wall_label

    if fmt == "svg":
        return render_scatter(d), EXIT_OK
    walls = []
    for w in d.walls:
        walls.append({
            "support": [list(g) for g in w.support],
            "normal": list(w.function.direction),
            "incoming": w.incoming,
            "function": wall_label(w.function, job.truncation),
        })
    if fmt == "json":
        return _json({"truncation": job.truncation, "walls": walls}), EXIT_OK
    lines = [f"{len(walls)} walls modulo degree {job.truncation + 1}"]
    for w in walls:
        kind = "incoming" if w["incoming"] else "outgoing"
        lines.append(f"{kind} {w['support']}: {w['function']}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_theta(job: JobSpec, fmt: str) -> tuple[str, int]:
    if job.b0.n != 2:
        raise UsageError("theta needs a rank-2 matrix")
    if "m0" not in job.extra:
        raise UsageError("theta needs an 'm0' field or --m0")
    m0 = parse_vector(job.extra["m0"], 2, "m0")
    q = parse_vector(job.extra.get("point", ["1", "3/7"]), 2, "point", rational=True)
    d = complete_rank2(job.b0, job.truncation)
    try:
        res = theta(d, m0, q, job.truncation)
    except NonGenericEndpoint as exc:
        raise UsageError(f"endpoint is not generic: {exc}") from None
    series = res.series.to_laurent(job.b0.b)
    data = {
        "m0": list(m0),
        "point": [str(x) for x in res.endpoint],
        "truncation": job.truncation,
        "lines": len(res.lines),
        "theta": str(series),
        "coefficients": [[list(n), c] for n, c in res.series.sorted_terms()],
    }
    if fmt == "json":
        return _json(data), EXIT_OK
    lines = [
        f"theta for m0 = {data['m0']} at Q = ({', '.join(data['point'])}), degree <= {job.truncation}",
        f"broken lines: {len(res.lines)}",
        f"theta = {series}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def run_suites(names: Sequence[str], seed: int, budget: int | None) -> list[SuiteReport]:
    reports = []
    for name in names:
        fn = SUITES[name]
        kwargs: dict[str, int] = {}
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kwargs["seed"] = seed
        if budget is not None and "count" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kwargs["count"] = budget
        reports.append(fn(**kwargs))
    return reports


def cmd_verify(suite: str, seed: int, budget: int | None, fmt: str) -> tuple[str, int]:
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; known: all, {', '.join(SUITES)}")
    names = list(SUITES) if suite == "all" else [suite]
    reports = run_suites(names, seed, budget)
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    if fmt == "json":
        return _json({"seed": seed, "ok": code == EXIT_OK, "suites": [r.to_json() for r in reports]}), code
    return "\n".join(str(r) for r in reports) + "\n", code


# -- entry point ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterscatter", description="Cluster patterns, G-fans and scattering diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
        p.add_argument("--in", dest="input", metavar="PATH", help="JSON job document (default: stdin)")
        p.add_argument("--matrix", help="exchange matrix as JSON rows or a catalog name")
        p.add_argument("--depth", type=int, help="mutation depth for fan exploration (default 12)")
        p.add_argument("--truncation", type=int, help="y-hat degree truncation (default 8)")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("walk", help="C-, G- and F-data and cluster variables at the end of a walk")
    common(p, ("text", "json"))
    p.add_argument("--walk", help="directions, e.g. '1,2,1'")
    p = sub.add_parser("fan", help="G-fan report, or an SVG picture in rank 2")
    common(p, ("text", "json", "svg"))
    p = sub.add_parser("scatter", help="consistent rank-2 scattering diagram")
    common(p, ("text", "json", "svg"))
    p = sub.add_parser("theta", help="theta function from broken lines in rank 2")
    common(p, ("text", "json"))
    p.add_argument("--m0", help="initial exponent, e.g. '1,-1'")
    p.add_argument("--point", help="endpoint Q, e.g. '1,3/7'")
    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, help="number of random cases for corpus suites")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            start = time.perf_counter()
            text, code = cmd_verify(args.suite, args.seed, args.budget, args.format)
            print(f"verify {args.suite}: {time.perf_counter() - start:.1f} s", file=sys.stderr)
        else:
            job = load_job(args)
            if args.command == "theta":
                if args.m0 is not None:
                    job.extra["m0"] = args.m0
                if args.point is not None:
                    job.extra["point"] = args.point
            handler = {"walk": cmd_walk, "fan": cmd_fan, "scatter": cmd_scatter, "theta": cmd_theta}[args.command]
            text, code = handler(job, args.format)
        _emit(text, args.out)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedRank, SingularMatrix) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
