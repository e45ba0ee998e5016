"""Stable JSON reports: every scalar, integers included, becomes a canonical string."""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction

from . import __version__
from . import cartan as C
from . import scalar as S
from .cartan import BaseElement


def weight_dict(lam) -> dict:
    if isinstance(lam, C.PolyWeight):
        return {"h": S.to_text(lam.value)}
    if isinstance(lam, C.GroupWeight):
        if len(lam.values) == 1:
            return {"K": S.to_text(lam.values[0])}
        return {f"K[{i}]": S.to_text(v) for i, v in enumerate(lam.values)}
    return {"point": str(lam.m)}


def weight_text(lam) -> str:
    return ", ".join(f"{k}={v}" for k, v in weight_dict(lam).items())


def encode(obj):
    """JSON-ready form with exact scalars as strings; key order is left to the dumper."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (Fraction, S.RatFunc)):
        return S.to_text(obj)
    if isinstance(obj, (C.PolyWeight, C.GroupWeight, C.ZPointWeight)):
        return weight_dict(obj)
    if isinstance(obj, (C.Free, C.FixedAt, C.TorsionOrbit)):
        return {"verdict": type(obj).__name__, **{f.name: str(getattr(obj, f.name)) for f in dataclasses.fields(obj)}}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((encode(x) for x in obj), key=str)
    return str(obj)


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(_key(x) for x in k)
    return S.to_text(k) if isinstance(k, (Fraction, S.RatFunc)) else str(k)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(command: dict, spec_text: str) -> str:
    blob = json.dumps({"command": command, "spec": spec_text}, sort_keys=True).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def make_report(command: dict, spec_text: str, payload, status: str | None) -> dict:
    return {
        "command": command,
        "input_digest": digest(command, spec_text),
        "payload": encode(payload),
        "status": status,
        "version": __version__,
    }


def table(data, prefix: str = "") -> list[tuple[str, str]]:
    """Flatten nested report data into (path, value) rows."""
    rows: list[tuple[str, str]] = []
    if isinstance(data, dict):
        if not data:
            rows.append((prefix, "{}"))
        for k in sorted(data):
            rows += table(data[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(data, list):
        if all(not isinstance(x, (dict, list)) for x in data):
            rows.append((prefix, "[" + ", ".join("null" if x is None else str(x) for x in data) + "]"))
        elif data and all(isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in data):
            rows.append((prefix, "[" + "; ".join(" ".join(str(y) for y in x) for x in data) + "]"))
        else:
            for i, x in enumerate(data):
                rows += table(x, f"{prefix}[{i}]")
    else:
        rows.append((prefix, "null" if data is None else str(data)))
    return rows


def render_table(data) -> str:
    rows = table(data)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def element_text(x) -> str:
    if isinstance(x, BaseElement):
        return str(x)
    return S.to_text(x) if isinstance(x, (Fraction, S.RatFunc)) else str(x)
