"""
JSON scenario files.

A scenario describes one walk::

    {"shift": {"p": 0.5, "q_re": 0.866, "q_im": 0.0},
     "coin": {"kind": "step",
              "limit_minus": {"a": 0.9, "b_re": 0.436, "b_im": 0.0},
              "limit_plus":  {"a": 0.0, "b_re": 1.0, "b_im": 0.0},
              "breakpoints": [{"x": 0}]}}

``q_im`` defaults to 0 and a site's ``b`` defaults to sqrt(1 - a²) when both
of its components are omitted (e^{i phi} sqrt(1 - a²) for tanh limits).  ``step`` coins take at most one breakpoint
(its ``x`` is the cut, default 0); ``multistep`` breakpoints carry the coin
value from ``x`` onwards and the last one must equal ``limit_plus``;
``width`` and ``phi`` belong to ``tanh`` coins only.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Union

import jsonschema
import numpy as np

from .errors import NormalizationError, SchemaError
from .model import MULTISTEP, STEP, TANH, CoinProfile, CoinSite, WalkSpec, make_shift

__all__ = ["SCHEMA", "spec_from_dict", "spec_to_dict", "load_scenario", "dumps_scenario"]

_num = {"type": "number"}
_site_props = {"a": _num, "b_re": _num, "b_im": _num}
_site = {
    "type": "object",
    "properties": _site_props,
    "required": ["a"],
    "additionalProperties": False,
}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "shift": {
            "type": "object",
            "properties": {"p": _num, "q_re": _num, "q_im": _num},
            "required": ["p", "q_re"],
            "additionalProperties": False,
        },
        "coin": {
            "type": "object",
            "properties": {
                "kind": {"enum": [STEP, MULTISTEP, TANH]},
                "limit_minus": _site,
                "limit_plus": _site,
                "breakpoints": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"x": {"type": "integer"}, **_site_props},
                        "required": ["x"],
                        "additionalProperties": False,
                    },
                },
                "width": {"type": "number", "exclusiveMinimum": 0},
                "phi": _num,
            },
            "required": ["kind", "limit_minus", "limit_plus"],
            "additionalProperties": False,
        },
    },
    "required": ["shift", "coin"],
    "additionalProperties": False,
}

_validator = jsonschema.Draft202012Validator(SCHEMA)


def _site_from(d: dict, where: str, phase: float = 0.0) -> CoinSite:
    a = float(d["a"])
    if "b_re" in d or "b_im" in d:
        b = complex(d.get("b_re", 0.0), d.get("b_im", 0.0))
    else:
        b = np.exp(1j * phase) * math.sqrt(max(0.0, 1.0 - a * a))
    try:
        return CoinSite(a, b)
    except NormalizationError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def spec_from_dict(doc: dict) -> WalkSpec:
    """Build a :class:`WalkSpec` from a parsed scenario document.

    Raises
    ------
    SchemaError
        On unknown keys, wrong types, or inconsistent coin data.
    """
    errors = sorted(_validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {e.message}")

    sh = doc["shift"]
    try:
        shift = make_shift(sh["p"], complex(sh["q_re"], sh.get("q_im", 0.0)))
    except NormalizationError as exc:
        raise SchemaError(f"shift: {exc}") from None

    c = doc["coin"]
    kind = c["kind"]
    phase = c.get("phi", 0.0) if kind == TANH else 0.0
    minus = _site_from(c["limit_minus"], "coin/limit_minus", phase)
    plus = _site_from(c["limit_plus"], "coin/limit_plus", phase)
    bps = c.get("breakpoints", [])

    if kind != TANH:
        for key in ("width", "phi"):
            if key in c:
                raise SchemaError(f"coin/{key}: only valid for tanh coins")
    try:
        if kind == STEP:
            if len(bps) > 1:
                raise SchemaError("coin/breakpoints: step coins take at most one breakpoint")
            cut = bps[0]["x"] if bps else 0
            if bps and "a" in bps[0] and not _site_from(bps[0], "coin/breakpoints/0").isclose(plus, 1e-9):
                raise SchemaError("coin/breakpoints/0: value must equal limit_plus")
            coin = CoinProfile.step(minus, plus, cut)
        elif kind == MULTISTEP:
            if not bps:
                raise SchemaError("coin/breakpoints: multistep coins need breakpoints")
            sites = []
            for i, bp in enumerate(bps):
                if "a" not in bp:
                    raise SchemaError(f"coin/breakpoints/{i}: 'a' is a required property")
                sites.append((bp["x"], _site_from(bp, f"coin/breakpoints/{i}")))
            coin = CoinProfile(MULTISTEP, minus, plus, tuple(sites))
        else:
            if bps:
                raise SchemaError("coin/breakpoints: not valid for tanh coins")
            if "width" not in c:
                raise SchemaError("coin/width: required for tanh coins")
            coin = CoinProfile(TANH, minus, plus, width=c["width"], phi=c.get("phi", 0.0))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"coin: {exc}") from None
    return WalkSpec(shift, coin)


def _site_dict(s: CoinSite, x: int | None = None) -> dict:
    d = {} if x is None else {"x": int(x)}
    d.update(a=s.a, b_re=s.b.real, b_im=s.b.imag)
    return d


def spec_to_dict(spec: WalkSpec) -> dict:
    """Inverse of :func:`spec_from_dict` (up to floating-point round trip)."""
    coin = spec.coin
    c: dict[str, Any] = {
        "kind": coin.kind,
        "limit_minus": _site_dict(coin.limit_minus),
        "limit_plus": _site_dict(coin.limit_plus),
    }
    if coin.kind == STEP:
        c["breakpoints"] = [{"x": coin.breakpoints[0][0]}]
    elif coin.kind == MULTISTEP:
        c["breakpoints"] = [_site_dict(s, x) for x, s in coin.breakpoints]
    else:
        c["width"] = coin.width
        c["phi"] = coin.phi
    q = spec.shift.q
    return {"shift": {"p": spec.shift.p, "q_re": q.real, "q_im": q.imag}, "coin": c}


def load_scenario(source: Union[str, Path, dict]) -> WalkSpec:
    """Load a scenario from a path, a JSON string, or an already parsed dict."""
    if isinstance(source, dict):
        return spec_from_dict(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        text = Path(source).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return spec_from_dict(doc)


def _plain(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    raise TypeError(type(o))


def dumps_scenario(spec: WalkSpec) -> str:
    return json.dumps(spec_to_dict(spec), sort_keys=True, default=_plain)
