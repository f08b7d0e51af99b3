"""JSON and compact-string input formats, and CSV/JSON output helpers."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from boydkit.hardy import Lower, Upper
from boydkit.piecewise import PiecewiseFn, PowerPiece
from boydkit.spaces import HolmstedtSpace, Lorentz, SumSpace


class InputError(ValueError):
    """Malformed input; the message names the source and the JSON path."""


def _num(value, where):
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number or \"inf\", got {value!r}")
    return float(value)


def load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


# -- functions -----------------------------------------------------------------


def parse_function(obj, source: str = "<input>") -> PiecewiseFn:
    """``{"pieces": [{"lo", "hi", "coef", "exp"?, "shift"?}, ...]}``."""
    if not isinstance(obj, dict) or "pieces" not in obj:
        raise InputError(f"{source}: $: expected an object with a \"pieces\" array")
    raw = obj["pieces"]
    if not isinstance(raw, list):
        raise InputError(f"{source}: $.pieces: expected an array")
    pieces = []
    for i, item in enumerate(raw):
        where = f"{source}: $.pieces[{i}]"
        if not isinstance(item, dict):
            raise InputError(f"{where}: expected an object")
        missing = [k for k in ("lo", "hi", "coef") if k not in item]
        if missing:
            raise InputError(f"{where}: missing field(s) {', '.join(missing)}")
        unknown = set(item) - {"lo", "hi", "coef", "exp", "shift"}
        if unknown:
            raise InputError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
        vals = {k: _num(item[k], f"{where}.{k}") for k in item}
        if vals["coef"] < 0:
            raise InputError(f"{where}.coef: coefficient must be nonnegative, got {vals['coef']}")
        try:
            pieces.append(PowerPiece(vals["lo"], vals["hi"], vals["coef"], vals.get("exp", 0.0), vals.get("shift", 0.0)))
        except ValueError as e:
            raise InputError(f"{where}: {e}") from None
    order = sorted(range(len(pieces)), key=lambda i: pieces[i].lo)
    for a, b in zip(order, order[1:]):
        if pieces[b].lo < pieces[a].hi:
            raise InputError(f"{source}: $.pieces[{b}] overlaps $.pieces[{a}]")
    return PiecewiseFn(pieces)


def function_to_json(f: PiecewiseFn) -> dict:
    def enc(x):
        return "inf" if math.isinf(x) else x

    out = []
    for p in f.pieces:
        item = {"lo": p.lo, "hi": enc(p.hi), "coef": p.coef, "exp": p.exp}
        if p.shift != 0:
            item["shift"] = p.shift
        out.append(item)
    return {"pieces": out}


# -- spaces and kinds ----------------------------------------------------------


def _pair(text, where):
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != 2:
        raise InputError(f"{where}: expected two comma-separated exponents, got {text!r}")
    out = []
    for x in parts:
        try:
            out.append(_num(x if x.lower() in ("inf", "+inf", "infinity") else float(x), where))
        except ValueError:
            raise InputError(f"{where}: not a number: {x!r}") from None
    return out


def parse_space(obj, source: str = "<space>"):
    """A space from JSON or the compact ``lorentz:p,q`` spelling."""
    if isinstance(obj, str):
        name, _, rest = obj.partition(":")
        if name.strip().lower() != "lorentz" or not rest:
            raise InputError(f"{source}: compact spaces are spelled lorentz:p,q, got {obj!r}")
        p, q = _pair(rest, source)
        return _build(Lorentz, source, p, q)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"{source}: $: expected one of lorentz, sum, holmstedt")
    (key, body), = obj.items()
    where = f"{source}: $.{key}"
    if not isinstance(body, dict):
        raise InputError(f"{where}: expected an object")
    if key == "lorentz":
        return _build(Lorentz, where, _num(body.get("p"), f"{where}.p"), _num(body.get("q"), f"{where}.q"))
    if key in ("sum", "holmstedt"):
        x = parse_space(body.get("x"), f"{source}: $.{key}.x")
        y = parse_space(body.get("y"), f"{source}: $.{key}.y")
        if key == "holmstedt":
            return _build(HolmstedtSpace, where, x, y)
        grid = body.get("cutGrid", 64)
        if not isinstance(grid, int) or isinstance(grid, bool):
            raise InputError(f"{where}.cutGrid: expected an integer")
        return _build(SumSpace, where, x, y, grid)
    raise InputError(f"{where}: unknown space kind {key!r}")


def _build(cls, where, *args):
    try:
        return cls(*args)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from None


def parse_kind(obj, source: str = "<kind>"):
    """A Hardy kind from JSON or the compact ``upper:p,r`` / ``lower:q,r`` spelling."""
    if isinstance(obj, str):
        name, _, rest = obj.partition(":")
        name = name.strip().lower()
        if name not in ("upper", "lower") or not rest:
            raise InputError(f"{source}: compact kinds are spelled upper:p,r or lower:q,r, got {obj!r}")
        a, r = _pair(rest, source)
        return _build(Upper if name == "upper" else Lower, source, a, r)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(f"{source}: $: expected one of upper, lower")
    (key, body), = obj.items()
    where = f"{source}: $.{key}"
    if key not in ("upper", "lower") or not isinstance(body, dict):
        raise InputError(f"{where}: expected {{\"upper\": {{p, r}}}} or {{\"lower\": {{q, r}}}}")
    first = "p" if key == "upper" else "q"
    a = _num(body.get(first), f"{where}.{first}")
    r = _num(body.get("r"), f"{where}.r")
    return _build(Upper if key == "upper" else Lower, where, a, r)


def read_spec(text: str, parser, label: str):
    """Compact spelling, inline JSON, or a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return parser(json.loads(stripped), label)
        except json.JSONDecodeError as e:
            raise InputError(f"{label}: invalid JSON: {e.msg}") from None
    if ":" in stripped and not Path(stripped).exists():
        return parser(stripped, label)
    return parser(load_json(stripped), stripped)


# -- output --------------------------------------------------------------------


def fmt(x) -> str:
    """Round-trip text for numbers; ``inf`` and ``nan`` spelled out."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float)):
        return repr(float(x)) if not isinstance(x, int) else str(x)
    return str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
