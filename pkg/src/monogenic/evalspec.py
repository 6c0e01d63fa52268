"""Tabulate library functions at user-supplied points.

A function spec file holds one function per line::

    kind key=value key=value ...

Values are Python literals (ints, floats, complex numbers, tuples).  Blank
lines and ``#`` comments are skipped.  A points file holds one point per
line, coordinates separated by whitespace or commas.
"""
from __future__ import annotations

import ast
import json
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import monomodel as m2
from . import nilgroup as nil
from . import oscillator as osc
from .clifford import Multivector
from .cpoly import mono_exp, v_monomial


class SpecParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class FunctionSpec:
    kind: str
    params: dict
    line: int


# kind -> (required params, optional params with defaults)
KINDS = {
    "V": (("k",), {}),
    "E": (("u",), {}),
    "m2_kernel": (("N",), {"y": None}),
    "B": (("z",), {"N": m2.DEFAULT_TRUNCATION}),
    "m2_coherent": (("z",), {"t": 0.0, "N": m2.DEFAULT_TRUNCATION}),
    "g_wavelet": (("tp", "a"), {}),
    "reduced_wavelet": (("a",), {}),
    "hermite": (("m",), {}),
    "gen_kernel": (("y",), {}),
    "sb_kernel": (("v",), {}),
}

_TOKEN = re.compile(r"(\w+)=(\([^)]*\)|\[[^\]]*\]|\S+)|\S+")


def _vec(v) -> tuple:
    return tuple(v) if isinstance(v, (tuple, list)) else (v,)


def parse_spec(text: str) -> list[FunctionSpec]:
    specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        kind_match = re.match(r"\s*(\S+)", line)
        kind = kind_match.group(1)
        if kind not in KINDS:
            raise SpecParseError(f"unknown function kind {kind!r}", lineno, kind_match.start(1) + 1)
        required, optional = KINDS[kind]
        params = dict(optional)
        params["n"] = None
        for tok in _TOKEN.finditer(line, kind_match.end()):
            col = tok.start() + 1
            if tok.group(1) is None:
                raise SpecParseError(f"expected key=value, got {tok.group(0)!r}", lineno, col)
            key, value = tok.group(1), tok.group(2)
            if key not in params and key not in required:
                raise SpecParseError(f"unknown parameter {key!r} for {kind}", lineno, col)
            try:
                params[key] = ast.literal_eval(value)
            except (ValueError, SyntaxError):
                raise SpecParseError(f"bad value {value!r} for {key}", lineno, tok.start(2) + 1)
        missing = [k for k in required if k not in params]
        if missing:
            raise SpecParseError(f"missing parameter(s) {', '.join(missing)}", lineno, len(line) + 1)
        specs.append(FunctionSpec(kind, params, lineno))
    return specs


def parse_points(text: str) -> list[np.ndarray]:
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [complex(tok) for tok in re.split(r"[\s,]+", line) if tok]
        except ValueError:
            raise SpecParseError(f"bad coordinate in {line!r}", lineno, 1)
        arr = np.array(vals)
        points.append(arr.real if not np.any(arr.imag) else arr)
    return points


def _builder(spec: FunctionSpec) -> tuple[Callable[[np.ndarray], object], int | None]:
    """Callable from a point to a value, and the expected point dimension."""
    p = spec.params
    kind = spec.kind
    if kind == "V":
        k = tuple(int(i) for i in _vec(p["k"]))
        poly = v_monomial(k)
        return lambda x: poly(x), len(k) + 1
    if kind == "E":
        u = np.array(_vec(p["u"]), dtype=float)
        return lambda x: mono_exp(u, x), len(u) + 1
    if kind == "m2_kernel":
        N = int(p["N"])
        y = None if p["y"] is None else np.array(_vec(p["y"]), dtype=float)
        dim = None if y is None else len(y)
        return lambda x: m2.m2_repro_kernel(x, x if y is None else y, N), dim
    if kind == "B":
        z = np.array(_vec(p["z"]), dtype=complex)
        return lambda x: m2.b_kernel(z, x, int(p["N"])), len(z) + 1
    if kind == "m2_coherent":
        z = np.array(_vec(p["z"]), dtype=complex)
        ev, _ = m2.m2_coherent(osc.HElement(float(p["t"]), z), int(p["N"]))
        n = len(z)
        return lambda x: Multivector.from_array(n, ev(np.asarray(x, float)[None, :])[0]), n + 1
    if kind == "g_wavelet":
        tp, a = np.array(_vec(p["tp"]), float), np.array(_vec(p["a"]), float)
        return nil.wavelet_image(tp, a), 2 * len(tp) + 1
    if kind == "reduced_wavelet":
        a = np.array(_vec(p["a"]), float)
        return lambda z: nil.reduced_wavelet(a, z), len(a)
    if kind == "hermite":
        m = tuple(int(i) for i in _vec(p["m"]))
        return lambda x: complex(osc.hermite_eval(m, np.asarray(x, float)[None, :])[0]), len(m)
    if kind == "gen_kernel":
        y = np.array(_vec(p["y"]), float)
        return lambda x: complex(osc.generating_kernel(x, y)), len(y)
    if kind == "sb_kernel":
        v = np.array(_vec(p["v"]), complex)
        return lambda u: complex(osc.sb_kernel(u, v)), len(v)
    raise SpecParseError(f"unknown function kind {kind!r}", spec.line, 1)


def _blades(value) -> list[list[float]]:
    if isinstance(value, Multivector):
        arr = value.to_array()
    else:
        arr = np.array([value], dtype=complex)
    return [[float(c.real), float(c.imag)] for c in arr]


def evaluate(specs: list[FunctionSpec], points: list[np.ndarray]) -> list[dict]:
    """Blade-coefficient lists, one per point, for every function spec.

    Coefficients are ``[re, im]`` pairs in bitmask blade order.
    """
    out = []
    for spec in specs:
        fn, dim = _builder(spec)
        n = spec.params.get("n")
        if n is not None and dim is not None and spec.kind in ("V", "E", "B", "m2_coherent") \
                and dim != int(n) + 1:
            raise SpecParseError(f"n={n} does not match the parameters", spec.line, 1)
        values = []
        for i, x in enumerate(points):
            if dim is not None and len(x) != dim:
                raise SpecParseError(f"point {i + 1} has {len(x)} coordinates, {spec.kind} "
                                     f"needs {dim}", spec.line, 1)
            values.append(_blades(fn(x)))
        params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in spec.params.items()
                  if v is not None}
        params = {k: ([[c.real, c.imag] if isinstance(c, complex) else c for c in v]
                      if isinstance(v, list) else ([v.real, v.imag] if isinstance(v, complex) else v))
                  for k, v in params.items()}
        out.append({"line": spec.line, "kind": spec.kind, "params": params, "values": values})
    return out


def eval_function(spec_text: str, points_text: str) -> str:
    results = evaluate(parse_spec(spec_text), parse_points(points_text))
    return json.dumps({"functions": results}, indent=2) + "\n"
