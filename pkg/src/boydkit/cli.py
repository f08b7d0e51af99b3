"""``boydkit`` command line: every operation as a reproducible CSV/JSON experiment.

Exit status is 0 on success, 1 on unusable input and 2 when a checked
invariant fails.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from boydkit import _quad, acceptance
from boydkit.boyd import Bounded, boundedness_probe, estimate_indices
from boydkit.formats import (
    InputError,
    fmt,
    function_to_json,
    load_json,
    parse_function,
    parse_kind,
    parse_space,
    read_spec,
    to_csv,
    to_json,
)
from boydkit.hardy import Lower, Upper, apply
from boydkit.interp import Divergent, HypothesisFailed, holmstedt_sweep, theorem7_verify
from boydkit.piecewise import NonVanishing, NotRepresentable, PiecewiseFn, rearrange
from boydkit.spaces import HolmstedtSpace, InvalidSpec, Lorentz, SumSpace, norm

COMMANDS = ("rearrange", "norm", "hardy", "boyd", "kfunc", "theorem7", "verify")


class InvariantFailure(RuntimeError):
    pass


def label(obj) -> str:
    """Compact spelling of a space or kind, used as a key column."""
    if isinstance(obj, Lorentz):
        return f"lorentz:{fmt(obj.p)},{fmt(obj.q)}"
    if isinstance(obj, Upper):
        return f"upper:{fmt(obj.p)},{fmt(obj.r)}"
    if isinstance(obj, Lower):
        return f"lower:{fmt(obj.q)},{fmt(obj.r)}"
    if isinstance(obj, SumSpace):
        return f"sum({label(obj.x)};{label(obj.y)};{obj.cut_grid})"
    if isinstance(obj, HolmstedtSpace):
        return f"holmstedt({label(obj.x)};{label(obj.y)})"
    return str(obj)


class Table:
    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = [list(r) for r in rows]

    def render(self, form: str) -> str:
        if form == "csv":
            return to_csv(self.header, self.rows)
        # blank CSV cells become null in JSON
        return to_json([{k: (None if v == "" else v) for k, v in zip(self.header, r)} for r in self.rows])


class FunctionOut:
    def __init__(self, f: PiecewiseFn):
        self.f = f

    def render(self, form: str) -> str:
        if form == "json":
            return to_json(function_to_json(self.f))
        rows = [(p.lo, p.hi, p.coef, p.exp, p.shift) for p in self.f.pieces]
        return to_csv(("lo", "hi", "coef", "exp", "shift"), rows)


# -- argument plumbing -----------------------------------------------------------


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 8:
        raise argparse.ArgumentTypeError("--grid must be at least 8")
    return n


def _tol(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < x <= 1e-3:
        raise argparse.ArgumentTypeError("--tol must lie in (0, 1e-3]")
    return x


def _t(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError("--t values must be positive and finite")
    return x


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="boydkit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="function JSON file")
    ap.add_argument("--space", action="append", default=[], help="lorentz:p,q, inline JSON or a JSON file (repeatable)")
    ap.add_argument("--kind", help="upper:p,r, lower:q,r, inline JSON or a JSON file")
    ap.add_argument("--t", action="append", type=_t, default=[], help="evaluation point (repeatable)")
    ap.add_argument("--grid", type=_positive_int, default=64,
                    help="cut grid size; also the number of default evaluation points (>= 8)")
    ap.add_argument("--tol", type=_tol, default=1e-9, help="relative quadrature target")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", type=int, action="append", default=[], help="verify: criterion number (repeatable)")
    ap.add_argument("--out", help="output path (default stdout)")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    return ap


def _function(args) -> PiecewiseFn:
    if not args.input:
        raise InputError(f"{args.command} needs --input")
    return parse_function(load_json(args.input), args.input)


def _spaces(args, count=None):
    spaces = [read_spec(s, parse_space, "--space") for s in args.space]
    if count is not None and len(spaces) != count:
        raise InputError(f"{args.command} needs exactly {count} --space argument(s), got {len(spaces)}")
    if not spaces:
        raise InputError(f"{args.command} needs --space")
    return spaces


def _ts(args):
    if args.t:
        return sorted(set(args.t))
    return [float(x) for x in np.geomspace(1e-3, 1e3, args.grid)]


# -- commands --------------------------------------------------------------------


def cmd_rearrange(args):
    return FunctionOut(rearrange(_function(args)))


def cmd_norm(args):
    f = _function(args)
    rows = sorted((label(X), norm(X, f)) for X in _spaces(args))
    return Table(("space", "norm"), rows)


def cmd_hardy(args):
    if not args.kind:
        raise InputError("hardy needs --kind")
    kind = read_spec(args.kind, parse_kind, "--kind")
    h = apply(kind, _function(args))
    if isinstance(h, PiecewiseFn):
        return FunctionOut(h)
    ts = _ts(args)
    values = np.asarray(h(np.asarray(ts)), dtype=float)
    return Table(("t", "value"), [(t, float(v)) for t, v in zip(ts, values)])


def cmd_boyd(args):
    kind = read_spec(args.kind, parse_kind, "--kind") if args.kind else None
    blocks = []
    for X in _spaces(args):
        rep = estimate_indices(X)
        extra = []
        if kind is not None:
            if not isinstance(X, Lorentz):
                raise InputError("boyd --kind probes need Lorentz spaces")
            v = boundedness_probe(kind, X).verdict
            if isinstance(v, Bounded):
                extra = [label(kind), "bounded", v.C, ""]
            else:
                extra = [label(kind), "diverging", math.inf, v.function_id]
        blank = [""] * len(extra)
        name = label(X)
        rows = [[name, "sample", a, h, "", "", ""] + blank for a, h in rep.samples]
        rows.append([name, "summary", "", "", rep.lower_index, rep.upper_index, rep.fit_residual] + extra)
        blocks.append((name, rows))
    header = ["space", "row", "a", "dilation_norm", "lower_index", "upper_index", "fit_residual"]
    if kind is not None:
        header += ["kind", "verdict", "constant", "witness"]
    return Table(header, [r for _, rows in sorted(blocks, key=lambda b: b[0]) for r in rows])


def _exponents(X, where):
    if not isinstance(X, Lorentz):
        raise InputError(f"{where}: kfunc needs Lorentz spaces")
    return X.p, X.q


def cmd_kfunc(args):
    f = _function(args)
    X, Y = _spaces(args, 2)
    p, r = _exponents(X, "--space")
    q, s = _exponents(Y, "--space")
    if not p < q:
        raise InputError(f"kfunc needs the first space exponent below the second, got {fmt(p)} and {fmt(q)}")
    sweep = holmstedt_sweep(f, p, r, q, s, _ts(args), args.grid)
    rows = [(k.t, k.brute_inf, k.operator_sum, k.ratio, k.arg_cut) for k in sweep.reports]
    return Table(("t", "brute_inf", "operator_sum", "ratio", "arg_cut"), rows)


def cmd_theorem7(args):
    f = _function(args)
    X, Y = _spaces(args, 2)
    rep = theorem7_verify(X, Y, f, args.grid)
    table = Table(
        ("x", "y", "c1", "c2", "c3", "norm_sum", "norm_h", "bound", "chain_ok"),
        [(label(X), label(Y), rep.c1, rep.c2, rep.c3, rep.norm_sum, rep.norm_h, rep.bound, rep.chain_ok)],
    )
    if not rep.chain_ok:
        raise InvariantFailure(
            f"interp: norm chain fails (sum {fmt(rep.norm_sum)}, H {fmt(rep.norm_h)}, bound {fmt(rep.bound)})", table
        )
    return table


def cmd_verify(args):
    numbers = sorted(set(args.only)) or None
    results = acceptance.run_all(numbers, seed=args.seed, echo=lambda line: print(line, file=sys.stderr))
    table = Table(("criterion", "title", "passed", "detail"), [(r.number, r.title, r.passed, r.detail) for r in results])
    failed = [r.number for r in results if not r.passed]
    if failed:
        raise InvariantFailure(f"acceptance: criteria {failed} failed", table)
    return table


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def _emit(out, args):
    text = out.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    previous = _quad.get_rtol()
    _quad.set_rtol(args.tol)
    try:
        return _run(args)
    finally:
        _quad.set_rtol(previous)


def _run(args) -> int:
    try:
        out = HANDLERS[args.command](args)
    except InvariantFailure as e:
        message, table = e.args
        _emit(table, args)
        print(f"boydkit: invariant failure: {message}", file=sys.stderr)
        return 2
    except HypothesisFailed as e:
        print(f"boydkit: invariant failure: interp: hypothesis fails on {e.element}: {e}", file=sys.stderr)
        return 2
    except (InputError, InvalidSpec, Divergent, NonVanishing, NotRepresentable, ValueError) as e:
        print(f"boydkit: error: {e}", file=sys.stderr)
        return 1
    _emit(out, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
