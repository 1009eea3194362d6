"""Command-line front end.

Exit codes: 0 success (or consensus found), 1 malformed input, 2 a
non-strict sign was encountered, 3 no stability consensus.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import io
from .catalog import example_names, get_example
from .cgmat import SignCoherenceError, cg_path, duality_check
from .polynomials import char_poly, format_poly
from .seeds import mutate_matrix
from .stability import (
    detect_sign_stability,
    detect_weak_sign_stability,
    entropy,
    spectral_duality_check,
    stretch_factor,
)
from .surfaces import b_from_triangulation, flip
from .tropical import apply_loop, format_sign, x_transport

EXIT_OK, EXIT_INPUT, EXIT_NONSTRICT, EXIT_NO_CONSENSUS = 0, 1, 2, 3


def _emit(args, payload, table_lines: Sequence[str] | None = None, default: str = "json") -> None:
    fmt = getattr(args, "format", None) or default
    if fmt == "table" and table_lines is not None:
        print("\n".join(table_lines))
    else:
        print(io.dumps(payload))


def _matrix_lines(M) -> list[str]:
    cells = [[io.rational_to_json(v) for v in row] for row in M]
    w = max((len(c) for row in cells for c in row), default=1)
    return ["  ".join(c.rjust(w) for c in row) for row in cells]


def _path(args):
    return io.path_from_json(io.load_source(args.path))


def _point(text: str):
    return io.point_from_json(io.load_source(text) if text.strip()[:1] == "[" else text)


def cmd_mutate(args) -> int:
    seed = io.seed_from_json(io.load_source(args.seed))
    out = mutate_matrix(seed, args.k - 1)
    _emit(args, io.seed_to_json(out), _matrix_lines(out.B))
    return EXIT_OK


def cmd_orbit(args) -> int:
    p = _path(args)
    x = _point(args.point)
    for n, (y, eps) in enumerate(apply_loop(p, x, args.iterations, side=args.side), 1):
        print(json.dumps({"iter": n, "point": io.point_to_json(y), "sign": format_sign(eps)}))
    return EXIT_OK


def cmd_signs(args) -> int:
    p = _path(args)
    y, eps = x_transport(p, _point(args.point))
    _emit(args, {"sign": format_sign(eps), "endpoint": io.point_to_json(y)}, [format_sign(eps)],
          default="table")
    return EXIT_OK


def _report(args):
    p = _path(args)
    samples = [_point(s) for s in args.sample] if args.sample else None
    return p, detect_sign_stability(p, samples, n_max=args.n_max, window=args.window)


def _exit_for(report) -> int:
    if report.consensus is not None:
        return EXIT_OK
    return EXIT_NONSTRICT if report.non_strict else EXIT_NO_CONSENSUS


def cmd_stability(args) -> int:
    if args.weak:
        p = _path(args)
        samples = [_point(s) for s in args.sample] if args.sample else None
        w = detect_weak_sign_stability(p, samples, n_max=args.n_max)
        payload = {"patterns": [format_sign(q) for q in w.patterns],
                   "consensus": None if w.consensus is None else format_sign(w.consensus),
                   "n0": w.n0, "reason": w.reason}
        _emit(args, payload, [f"weak stable sign: {payload['consensus']}", w.reason])
        return EXIT_OK if w.consensus is not None else EXIT_NO_CONSENSUS
    _, report = _report(args)
    lines = [s.describe() for s in report.samples]
    if report.consensus is not None:
        lines.append(f"consensus: {format_sign(report.consensus)}")
        lines += _matrix_lines(report.stable_matrix)
        if report.perron is not None:
            lines.append(f"stretch factor: {io.real_to_text(report.perron.value)}")
        lines.append(f"cone certificate: {report.cone_certificate}")
    else:
        lines.append("consensus: none")
    _emit(args, io.report_to_json(report), lines)
    return _exit_for(report)


def _scalar(args, fn, key) -> int:
    if args.example:
        args.path = args.example
    if not args.path:
        raise ValueError("give --path or --example")
    _, report = _report(args)
    code = _exit_for(report)
    if code != EXIT_OK:
        print(f"no stable sign: {'; '.join(s.describe() for s in report.samples)}", file=sys.stderr)
        return code
    value = io.real_to_text(fn(report))
    _emit(args, {key: value}, [value], default="table")
    return EXIT_OK


def cmd_stretch(args) -> int:
    return _scalar(args, stretch_factor, "stretch_factor")


def cmd_entropy(args) -> int:
    return _scalar(args, entropy, "entropy")


def cmd_cgmat(args) -> int:
    p = _path(args)
    try:
        states = cg_path(p)
    except SignCoherenceError as exc:
        print(f"sign-coherence violated: {exc}", file=sys.stderr)
        return EXIT_INPUT
    last = states[-1]
    payload = {"C": io.matrix_to_json(last.C), "G": io.matrix_to_json(last.G),
               "tropical_signs": format_sign(last.signs)}
    _emit(args, payload, ["C:"] + _matrix_lines(last.C) + ["G:"] + _matrix_lines(last.G)
          + [f"tropical signs: {format_sign(last.signs)}"])
    return EXIT_OK


def cmd_duality(args) -> int:
    p = _path(args)
    states = cg_path(p)
    payload = {"tropical_duality": all(duality_check(s) for s in states)}
    lines = [f"G C^T = I along the path: {payload['tropical_duality']}"]
    if args.sign:
        from .tropical import check_presentation_matrix, parse_sign, presentation_matrix

        eps = parse_sign(args.sign)
        E = presentation_matrix(p, eps, side="full")
        Ec = check_presentation_matrix(p, eps)
        payload["char_poly"] = format_poly(char_poly(E))
        payload["spectral_duality"] = spectral_duality_check(E, Ec)
        lines.append(f"characteristic polynomial: {payload['char_poly']}")
        lines.append(f"spectral duality: {payload['spectral_duality']}")
    _emit(args, payload, lines)
    return EXIT_OK if all(v is not False for v in payload.values()) else EXIT_NO_CONSENSUS


def cmd_surface(args) -> int:
    T = io.triangulation_from_json(io.load_source(args.triangulation))
    if args.surface_cmd == "build-b":
        seed = b_from_triangulation(T)
        _emit(args, io.seed_to_json(seed), _matrix_lines(seed.B))
    else:
        T2 = flip(T, args.edge)
        _emit(args, io.triangulation_to_json(T2), [str(t) for t in T2.triangles])
    return EXIT_OK


def cmd_examples(args) -> int:
    if not args.name:
        _emit(args, {"examples": example_names()}, example_names())
        return EXIT_OK
    ex = get_example(args.name)
    payload = {
        "name": ex.name,
        "seed": io.seed_to_json(ex.seed),
        "path": None if ex.path is None else {"steps": [io.step_to_json(s) for s in ex.path.steps]},
        "other_paths": {k: [io.step_to_json(s) for s in v.steps] for k, v in ex.extra_paths.items()},
        "expected_stable_sign": None if ex.expected_sign is None else format_sign(ex.expected_sign),
        "note": ex.note,
    }
    lines = [f"{ex.name}: {ex.note}".rstrip(": "), "B ="] + _matrix_lines(ex.seed.B)
    if ex.path is not None:
        lines.append("path: " + " ".join(
            f"mut {s['mut']}" if "mut" in s else f"swap ({s['swap'][0]} {s['swap'][1]})"
            for s in payload["path"]["steps"]))
    if ex.expected_sign is not None:
        lines.append(f"expected stable sign: {payload['expected_stable_sign']}")
    _emit(args, payload, lines, default="table")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        default=argparse.SUPPRESS, help="shorthand for --format json")

    ap = argparse.ArgumentParser(prog="signstable",
                                 description="Tropical dynamics and sign stability of cluster mutation loops.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def stability_opts(p):
        p.add_argument("--sample", action="append", help="extra start point, e.g. '1,-1/2'")
        p.add_argument("--n-max", type=int, default=1000)
        p.add_argument("--window", type=int, default=3)

    p = add("mutate", cmd_mutate, "mutate a seed")
    p.add_argument("--seed", required=True, help="seed JSON, file, or builtin name")
    p.add_argument("-k", type=int, required=True, help="1-based mutation index")

    p = add("orbit", cmd_orbit, "iterate a loop on a point (JSON lines)")
    p.add_argument("--path", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--side", choices=("x", "a"), default="x")

    p = add("signs", cmd_signs, "sign of a path at a point")
    p.add_argument("--path", required=True)
    p.add_argument("--point", required=True)

    p = add("stability", cmd_stability, "detect sign stability")
    p.add_argument("--path", required=True)
    p.add_argument("--weak", action="store_true", help="weak sign stability instead")
    stability_opts(p)

    for name, fn in (("stretch", cmd_stretch), ("entropy", cmd_entropy)):
        p = add(name, fn, f"print the {name} of a sign-stable loop")
        p.add_argument("--path")
        p.add_argument("--example")
        stability_opts(p)

    p = add("cgmat", cmd_cgmat, "C- and G-matrices along a path")
    p.add_argument("--path", required=True)

    p = add("duality", cmd_duality, "tropical and spectral duality checks")
    p.add_argument("--path", required=True)
    p.add_argument("--sign", help="strict sign for the spectral check, e.g. '(+,-,-,+)'")

    p = add("surface", cmd_surface, "triangulation utilities")
    ssub = p.add_subparsers(dest="surface_cmd", required=True)
    b = ssub.add_parser("build-b", parents=[common])
    b.add_argument("--triangulation", required=True)
    f = ssub.add_parser("flip", parents=[common])
    f.add_argument("--triangulation", required=True)
    f.add_argument("--edge", type=int, required=True)

    p = add("examples", cmd_examples, "list or show built-in examples")
    p.add_argument("name", nargs="?")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (ValueError, KeyError, TypeError, IndexError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
