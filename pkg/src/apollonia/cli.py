"""Command-line entry point: ``apollonia <subcommand> ...``.

Exit codes: 0 success, 2 invalid input (message names the failed
precondition), 1 internal error or a failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Sequence

from .errors import ApolloniaError
from .exact import parse_scalar
from .lattice import parse_quadruple, parse_weight


def _word(w: Sequence[int]) -> str:
    return "".join(str(i) for i in w)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False) + "\n"


def _csv(config: dict, header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _echo_config(config: dict) -> None:
    # stdout carries only the result object; the resolved config goes to stderr
    sys.stderr.write(f"# config: {json.dumps(config, sort_keys=True)}\n")


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _str(x) -> str | float | int:
    return x if isinstance(x, (int, float)) else str(x)


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ApolloniaError:
        return float(text)


# -- subcommands ---------------------------------------------------------------


def cmd_packing(args) -> int:
    from .packing import orbit_bfs

    base = parse_quadruple(args.base)
    max_curv = None if args.max_curv is None else _scalar(args.max_curv)
    rows = ([_word(r.word), r.depth] + [_str(c) for c in r.quadruple]
            for r in orbit_bfs(base, depth=args.depth, max_curv=max_curv))
    _emit(_csv(_config(args), ["word", "depth", "c1", "c2", "c3", "c4"], rows), args.out)
    return 0


def cmd_census(args) -> int:
    from .packing import curvature_census

    cen = curvature_census(parse_quadruple(args.base), _scalar(args.max_curv), args.convention)
    rows = ([_str(c), n] for c, n in cen.histogram())
    _emit(_csv(_config(args), ["curvature", "count"], rows), args.out)
    return 0


def cmd_deltafit(args) -> int:
    from .packing import curvature_census, fit_delta

    base = parse_quadruple(args.base)
    cen = curvature_census(base, args.xmax, args.convention)
    slope, table = fit_delta(cen, args.xmin, args.xmax, args.points)
    out = {"exponent": slope, "samples": [{"X": x, "N": n} for x, n in table],
           "config": _config(args)}
    _emit(json.dumps(out, indent=1) + "\n", args.out)
    return 0


def cmd_zeta(args) -> int:
    from .series import z_partial

    est = z_partial(parse_quadruple(args.base), parse_weight(args.s), args.height_bound,
                    args.max_iters)
    _echo_config(_config(args))
    _emit(_json({"value": est.value, "tail": est.tail}), None)
    return 0


def cmd_lfun(args) -> int:
    from .series import l_partial

    est = l_partial(parse_quadruple(args.base), args.u, args.max_curv)
    _echo_config(_config(args))
    _emit(_json({"value": est.value, "tail": est.tail}), None)
    return 0


def cmd_theta(args) -> int:
    from .modular import theta_eval

    try:
        z = complex(args.z.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex number {args.z!r}") from None
    est = theta_eval(args.variant, z, args.t, args.terms)
    v = complex(est.value)
    _echo_config(_config(args))
    _emit(_json({"value": {"re": v.real, "im": v.imag}, "tail": est.tail}), None)
    return 0


def cmd_delta5_coeff(args) -> int:
    from .modular import delta5_coeff

    _echo_config(_config(args))
    _emit(f"{delta5_coeff(args.n, args.l, args.m)}\n", None)
    return 0


def cmd_delta5_verify(args) -> int:
    from .modular import verify_theorem_delta

    report = verify_theorem_delta(args.box_b, args.box_nm, args.quotient_degree, args.l_max)
    report["config"] = _config(args)
    if args.report:
        _emit(json.dumps(report, indent=1) + "\n", args.report)
    summary = {k: report[k]["passed"] for k in ("alternation", "identity", "quotient")}
    summary["passed"] = report["passed"]
    _emit(_json(summary), None)
    return 0 if report["passed"] else 1


def cmd_cone_classify(args) -> int:
    from .cone import classify

    r = classify(parse_weight(args.s), args.max_iters)
    _echo_config(_config(args))
    _emit(_json({"label": r.label.value, "word": _word(r.word), "iterations": r.iterations}), None)
    return 0


def cmd_render(args) -> int:
    from .cone import apex_orbit
    from .scene import export_scene, parse_projection

    parse_projection(args.projection)  # fail before the (possibly slow) scene build
    text = export_scene(apex_orbit(args.depth), args.format, args.projection,
                        config=_config(args), grid=args.grid)
    _emit(text, args.out)
    return 0


def cmd_verify_all(args) -> int:
    from .acceptance import CRITERIA, run_all

    keys = args.only.split(",") if args.only else None
    if keys and any(k not in CRITERIA for k in keys):
        raise argparse.ArgumentTypeError(f"unknown criterion in {args.only!r}; known: {list(CRITERIA)}")
    results = run_all(keys)
    for r in results:
        print(r.line())
    failed = [r.key for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return 1 if failed else 0


# -- parser --------------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="apollonia", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, helptext: str, parent=sub) -> argparse.ArgumentParser:
        p = parent.add_parser(name, help=helptext)
        p.set_defaults(func=func)
        return p

    p = add("packing", cmd_packing, "enumerate the orbit of a base quadruple (CSV)")
    p.add_argument("--base", required=True, help='quadruple, e.g. "-1,2,2,3"')
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--depth", type=_nonneg)
    g.add_argument("--max-curv")
    p.add_argument("--out")

    p = add("census", cmd_census, "curvature histogram below X (CSV)")
    p.add_argument("--base", required=True)
    p.add_argument("--max-curv", required=True)
    p.add_argument("--convention", choices=("geometric", "quadruples"), default="geometric")
    p.add_argument("--out")

    p = add("deltafit", cmd_deltafit, "fit the growth exponent of N(X) (JSON)")
    p.add_argument("--base", required=True)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--convention", choices=("geometric", "quadruples"), default="geometric")
    p.add_argument("--out")

    p = add("zeta", cmd_zeta, "partial orbit sum Z(s) with tail estimate (JSON)")
    p.add_argument("--base", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--height-bound", type=float, required=True)
    p.add_argument("--max-iters", type=_nonneg, default=64)

    p = add("lfun", cmd_lfun, "partial sum of c^-u over curvatures below X (JSON)")
    p.add_argument("--base", required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--max-curv", type=float, required=True)

    p = add("theta", cmd_theta, "evaluate theta_00, theta_01 or theta_11 (JSON)")
    p.add_argument("--variant", choices=("00", "01", "11"), required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--terms", type=int, default=50)

    d5 = add("delta5", None, "Fourier coefficients of Delta_5 and the orbit-sum identity")
    d5sub = d5.add_subparsers(dest="action", required=True)
    p = add("coeff", cmd_delta5_coeff, "a single Fourier coefficient", d5sub)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = add("verify", cmd_delta5_verify, "exact check of the identity in a box", d5sub)
    p.add_argument("--box-b", type=int, default=50)
    p.add_argument("--box-nm", type=int, default=15)
    p.add_argument("--quotient-degree", type=int, default=12)
    p.add_argument("--l-max", type=int, default=60)
    p.add_argument("--report")

    cone = add("cone", None, "Apollonian cone membership")
    conesub = cone.add_subparsers(dest="action", required=True)
    p = add("classify", cmd_cone_classify, "classify a weight vector (JSON)", conesub)
    p.add_argument("--s", required=True)
    p.add_argument("--max-iters", type=_nonneg, default=64)

    p = add("render", cmd_render, "export the apex/circle scene (SVG or JSON)")
    p.add_argument("--depth", type=_nonneg, required=True)
    p.add_argument("--format", choices=("svg", "json"), default="svg")
    p.add_argument("--projection", default="1,1,1")
    p.add_argument("--grid", type=_nonneg, default=5, help="classification grid per axis (JSON)")
    p.add_argument("--out")

    p = add("verify-all", cmd_verify_all, "run the acceptance checks")
    p.add_argument("--only", help="comma-separated criterion keys, e.g. 1,3,9a")
    return ap


# flags whose values may legitimately start with "-" (e.g. --base "-1,2,2,3")
_VALUE_FLAGS = {"--base", "--s", "--z", "--projection", "--max-curv", "--t", "--u"}


def _glue_values(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse: usage errors exit 2, --help exits 0
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ApolloniaError, argparse.ArgumentTypeError) as e:
        sys.stderr.write(f"apollonia {args.command}: error: {e}\n")
        return 2
    except Exception as e:  # noqa: BLE001 - report, do not trace, at the CLI boundary
        sys.stderr.write(f"apollonia {args.command}: internal error: {type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
