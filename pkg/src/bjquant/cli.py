"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import symbolic
from .ccr import commutator, to_json_obj as op_json
from .parser import ParseError, parse_observable
from .phase_space import poisson_bracket, to_json_obj as obs_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _parse(expr: str, n: int):
    try:
        return parse_observable(expr, n)
    except ParseError as exc:
        raise _UsageError(f"parse error: {exc}\n{exc.caret()}") from None


def _hbar(text: str | None):
    if text is None:
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"--hbar must be a number, got {text!r}") from None
    if value <= 0:
        raise _UsageError("--hbar must be positive")
    return value


def _render_op(op, hbar, fmt: str) -> str:
    if fmt == "json":
        obj = op_json(op)
        obj["text"] = op.pretty()
        if hbar is not None:
            obj["at_hbar"] = symbolic.format_at_hbar(op, hbar)
        return json.dumps(obj, indent=2)
    return symbolic.format_at_hbar(op, hbar) if hbar is not None else op.pretty()


def cmd_quantize(args) -> int:
    H = _parse(args.expr, args.n)
    op = symbolic.quantize(H, args.rule)
    print(_render_op(op, _hbar(args.hbar), args.format))
    return EXIT_OK


def cmd_poisson(args) -> int:
    A, B = _parse(args.a, args.n), _parse(args.b, args.n)
    br = poisson_bracket(A, B)
    if args.format == "json":
        obj = obs_json(br)
        obj["text"] = br.pretty()
        print(json.dumps(obj, indent=2))
    else:
        print(br.pretty())
    return EXIT_OK


def cmd_commutator(args) -> int:
    A, B = _parse(args.a, args.n), _parse(args.b, args.n)
    op = commutator(symbolic.quantize(A, args.rule), symbolic.quantize(B, args.rule))
    print(_render_op(op, _hbar(args.hbar), args.format))
    return EXIT_OK


def cmd_gvh(args) -> int:
    report = symbolic.gvh_demo()
    hbar = _hbar(args.hbar)
    print(report.to_json(hbar) if args.format == "json" else report.to_text(hbar))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    if args.max_degree < 1:
        raise _UsageError("--max-degree must be at least 1")
    results = run_suite(args.max_degree, n_random=args.random, seed=args.seed)
    if args.format == "json":
        print(json.dumps([r.__dict__ for r in results], indent=2))
    else:
        width = max(len(r.name) for r in results)
        print(f"{'identity':<{width}}  {'degrees':<8} {'cases':>5}  status")
        for r in results:
            print(f"{r.name:<{width}}  {r.degrees:<8} {r.checked:>5}  {'PASS' if r.passed else 'FAIL'}")
        for r in results:
            if not r.passed:
                print(f"witness [{r.name}]: {r.witness}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _grid_from_args(args):
    from .numeric import Grid

    try:
        if args.length is None:
            return Grid.balanced(args.n, args.hbar)
        return Grid(args.n, args.length, args.hbar)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def cmd_numeric_apply(args) -> int:
    from .numeric import CohenKernel, GridMismatchError, quantize_apply, quantize_apply_fast
    from .numeric.io import is_generator, load_symbol, load_wavefunction, wavefunction_to_json

    grid = _grid_from_args(args)
    # a file fixes the grid; generators follow it
    if not is_generator(args.symbol):
        H = load_symbol(args.symbol)
        grid = H.grid
        psi = load_wavefunction(args.psi, grid)
    else:
        psi = load_wavefunction(args.psi, grid)
        H = load_symbol(args.symbol, psi.grid)
    kernel = CohenKernel(args.kernel)
    try:
        out = quantize_apply_fast(H, psi, kernel)
    except GridMismatchError as exc:
        raise _UsageError(str(exc)) from None
    summary = {
        "n": psi.grid.N,
        "length": psi.grid.L,
        "hbar": psi.grid.hbar,
        "kernel": kernel.value,
        "input_norm": psi.norm(),
        "output_norm": out.norm(),
    }
    if args.check == "naive":
        ref = quantize_apply(H, psi, kernel).values
        scale = max(np.abs(ref).max(), np.abs(psi.values).max())
        summary["max_deviation_vs_naive"] = float(np.abs(out.values - ref).max() / scale)
    payload = json.dumps(wavefunction_to_json(out))
    if args.out:
        Path(args.out).write_text(payload)
    else:
        print(payload)
    if args.format == "json":
        print(json.dumps(summary, indent=2), file=sys.stderr if not args.out else sys.stdout)
    else:
        stream = sys.stderr if not args.out else sys.stdout
        for key, val in summary.items():
            print(f"{key}: {val}", file=stream)
    return EXIT_OK


def cmd_numeric_check(args) -> int:
    from .numeric.checks import run_numeric_suite

    if args.n < 16 or args.n & (args.n - 1):
        raise _UsageError("--n must be a power of two >= 16")
    results = run_numeric_suite(args.n, args.hbar, args.length)
    if args.format == "json":
        print(json.dumps([r.__dict__ for r in results], indent=2))
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.name:<{width}}  {r.value:.3e} {r.relation} {r.tolerance:.0e}  {status}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bjquant", description="Born-Jordan and Weyl quantization, exact and on a grid.")
    sub = ap.add_subparsers(dest="command", required=True)

    def symbolic_opts(p, rule=True, hbar=True):
        p.add_argument("--n", type=int, default=1, help="degrees of freedom (default 1)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if rule:
            p.add_argument("--rule", choices=("bj", "weyl"), default="bj")
        if hbar:
            p.add_argument("--hbar", default=None, help="substitute a rational value for h")

    p = sub.add_parser("quantize", help="quantize a polynomial observable")
    p.add_argument("expr")
    symbolic_opts(p)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("poisson", help="Poisson bracket {A, B}")
    p.add_argument("a")
    p.add_argument("b")
    symbolic_opts(p, rule=False, hbar=False)
    p.set_defaults(func=cmd_poisson)

    p = sub.add_parser("commutator", help="[Op(A), Op(B)]")
    p.add_argument("a")
    p.add_argument("b")
    symbolic_opts(p)
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("gvh", help="Groenewold-van Hove contradiction for q^2 p^2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--hbar", default=None)
    p.set_defaults(func=cmd_gvh)

    p = sub.add_parser("verify", help="run the exact identity suite")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--random", type=int, default=25, help="randomized cases per family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    def grid_opts(p, n_default):
        p.add_argument("--n", type=int, default=n_default, help="grid points (power of two)")
        p.add_argument("--length", type=float, default=None, help="period L (default sqrt(2 pi h N))")
        p.add_argument("--hbar", type=float, default=1.0)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("numeric-apply", help="apply a quantized sampled symbol to a wavefunction")
    p.add_argument("--symbol", required=True, help="PhaseSamples JSON file or generator spec")
    p.add_argument("--psi", required=True, help="Wavefunction JSON file or generator spec")
    p.add_argument("--kernel", choices=("bj", "weyl"), default="bj")
    p.add_argument("--out", default=None, help="output Wavefunction JSON (default stdout)")
    p.add_argument("--check", choices=("naive",), default=None, help="cross-validate against the O(N^3) quadrature")
    grid_opts(p, 128)
    p.set_defaults(func=cmd_numeric_apply)

    p = sub.add_parser("numeric-check", help="run the numerical check suite")
    grid_opts(p, 256)
    p.set_defaults(func=cmd_numeric_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    from .numeric.io import SchemaError

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"bjquant: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"bjquant: invalid input: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"bjquant: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
