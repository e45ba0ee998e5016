"""Declarative algebra description files in TOML.

A spec file is TOML with the sections ``[field]``, ``[cartan]`` and exactly
one of ``[gwa]``, ``[rtm]``, ``[presentation]`` or ``[tensor]``::

    [field]
    name = "QQ(q)"

    [cartan]
    family = "group"        # poly | group | funz | finite
    rank = 1

    [gwa]
    alpha = ["q^2"]
    z0 = "(K - K^-1)/(q - q^-1)"
    z1 = "1"

``[gwa] preset = "dispin"`` selects a preset instead. For the polynomial family,
``theta = "h - 1"`` gives the image of h, or the down-up parameters ``f``,
``r``, ``gamma``, ``s`` may be given. The group family takes ``alpha`` (one
value per generator, theta(g) = alpha(g)^-1 g) and the function family takes
``shift``. A ``finite`` Cartan lists ``basis``, ``unit`` and a product
``table`` such as ``"e11*e12" = "e12"``; its ``[gwa] theta`` is a table of
basis images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from dataclasses import field as _field
from fractions import Fraction

import tomli
import tomli_w

from . import cartan as C
from . import gwa as G
from . import rewrite as R
from . import rtm as M
from . import scalar as S
from .cartan import BaseElement
from .errors import ParseError, ValidationError
from .expr import parse_element, parse_scalar

SECTIONS = ("field", "cartan", "gwa", "rtm", "presentation", "tensor")
KINDS = ("gwa", "rtm", "presentation", "tensor")
FIELDS = {"QQ": S.QQ, "Q": S.QQ, "QQ(q)": S.QQ_Q, "Q(q)": S.QQ_Q}


@dataclass
class AlgebraSpec:
    """Validated contents of a spec file, kept in the textual form it was written in."""

    kind: str  # "gwa", "finite-gwa", "rtm", "presentation" or "tensor"
    field: str = S.QQ
    preset: str | None = None
    cartan: dict = _field(default_factory=dict)
    params: dict = _field(default_factory=dict)
    parts: list = _field(default_factory=list)


@dataclass
class FiniteGwa:
    """A GWA over a finite-dimensional H, only used through its presentation."""

    H: R.FiniteAlgebra
    theta: dict
    z0: dict
    z1: dict

    def presentation(self) -> R.Presentation:
        return R.gwa_presentation(self.H, self.theta, self.z0, self.z1)


@dataclass
class RtmSpec:
    monoid: object
    c: tuple


# ---------------------------------------------------------------- locating errors


def _locate(text: str, section: str | None, key: str, offset: int | None) -> str:
    """'line L, column C' of ``key`` inside ``section``, shifted by ``offset`` into its string value."""
    lines = text.splitlines()
    current = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped.startswith("["):
            current = stripped.strip("[] ")
            continue
        if (section is None or current == section) and re.match(rf"\s*\"?{re.escape(key)}\"?\s*=", line):
            col = line.index("=") + 1
            quote = line.find('"', col)
            if quote >= 0 and offset is not None:
                col = quote + 1 + offset
            return f"line {i + 1}, column {col + 1}"
    return "unknown location"


def _with_location(err: Exception, text: str | None, section: str, key: str) -> ValidationError:
    if text is None:
        return err
    offset = getattr(err, "position", None)
    where = _locate(text, section, key, offset)
    cls = ParseError if isinstance(err, ParseError) else ValidationError
    out = cls(f"[{section}] {key} ({where}): {err}")
    out.location = where
    return out


# ---------------------------------------------------------------- parsing


def parse_spec(text: str) -> AlgebraSpec:
    """Parse and validate a spec file; errors carry a line and column."""
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as err:
        raise ParseError(f"malformed spec file: {err}") from None
    spec = spec_from_dict(data)
    build(spec, text)
    return spec


def spec_from_dict(data: dict) -> AlgebraSpec:
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ValidationError(f"unknown section [{unknown[0]}]; expected one of {', '.join(SECTIONS)}")
    kinds = [k for k in KINDS if k in data]
    if len(kinds) != 1:
        raise ValidationError("a spec needs exactly one of [gwa], [rtm], [presentation] or [tensor]")
    kind = kinds[0]
    fname = data.get("field", {}).get("name", "QQ")
    if fname not in FIELDS:
        raise ValidationError(f"[field] name must be QQ or QQ(q), not '{fname}'")
    cartan = dict(data.get("cartan", {}))
    params = dict(data[kind])
    preset = params.pop("preset", None)
    if kind == "gwa" and cartan.get("family") == "finite":
        kind = "finite-gwa"
    parts = []
    if kind == "tensor":
        names = params.pop("parts", None)
        if not names or not all(isinstance(p, str) for p in names):
            raise ValidationError("[tensor] parts must be a nonempty list of preset names")
        parts = [AlgebraSpec("gwa", preset=p) for p in names]
    return AlgebraSpec(kind, FIELDS[fname], preset, cartan, params, parts)


def preset_spec(text: str) -> AlgebraSpec:
    spec = AlgebraSpec("gwa", preset=text.strip())
    build(spec)
    return spec


def to_dict(spec: AlgebraSpec) -> dict:
    out: dict = {}
    if spec.field != S.QQ:
        out["field"] = {"name": spec.field}
    if spec.cartan:
        out["cartan"] = dict(spec.cartan)
    section = "gwa" if spec.kind == "finite-gwa" else spec.kind
    body = dict(spec.params)
    if spec.preset is not None:
        body["preset"] = spec.preset
    if spec.kind == "tensor":
        body["parts"] = [p.preset for p in spec.parts]
    out[section] = body
    return out


def serialize(spec: AlgebraSpec) -> str:
    return tomli_w.dumps(to_dict(spec))


# ---------------------------------------------------------------- building


def build(spec: AlgebraSpec, text: str | None = None):
    """The object described by ``spec``: a Gwa, FiniteGwa, RtmSpec, Presentation or list of Gwa."""
    if spec.kind == "gwa":
        return _build_gwa(spec, text)
    if spec.kind == "finite-gwa":
        return _build_finite(spec, text)
    if spec.kind == "rtm":
        return _build_rtm(spec.params)
    if spec.kind == "presentation":
        return _build_presentation(spec, text)
    if spec.kind == "tensor":
        return [build(p) for p in spec.parts]
    raise ValidationError(f"unknown spec kind '{spec.kind}'")


def _expr(spec, text, key: str, family, default: str | None = None) -> BaseElement:
    raw = spec.params.get(key, default)
    if raw is None:
        raise ValidationError(f"[gwa] needs '{key}'")
    try:
        return parse_element(str(raw), family)
    except ValidationError as err:
        raise _with_location(err, text, "gwa", key) from None


def _build_gwa(spec: AlgebraSpec, text: str | None) -> G.Gwa:
    if spec.preset is not None:
        if spec.params or spec.cartan:
            raise ValidationError("a preset takes no further [gwa] or [cartan] fields")
        try:
            return G.preset(spec.preset)
        except ValidationError as err:
            raise _with_location(err, text, "gwa", "preset") from None
    fam_name = spec.cartan.get("family", "poly")
    p = spec.params
    if fam_name == "poly":
        if "f" in p or "r" in p or "gamma" in p or "s" in p:
            extra = set(p) - {"f", "r", "gamma", "s"}
            if extra:
                raise ValidationError(f"down-up parameters cannot be mixed with {sorted(extra)}")
            args = [str(p.get(k, d)) for k, d in (("r", "1"), ("gamma", "1"), ("s", "1"), ("f", "h"))]
            return G.down_up(*args)
        fam = C.PolyFamily(spec.field)
        image = _expr(spec, text, "theta", fam)
        if image.degree() != 1:
            raise _with_location(ValidationError("theta(h) must have degree 1"), text, "gwa", "theta")
        theta = C.PolyAffine(image.coefficient(1), image.coefficient(0))
    elif fam_name == "group":
        rank = int(spec.cartan.get("rank", 1))
        torsion = tuple(int(n) for n in spec.cartan.get("torsion", ()))
        fam = C.GroupFamily(rank, torsion, spec.field)
        alpha = p.get("alpha")
        if not isinstance(alpha, list) or len(alpha) != fam.ngens:
            raise ValidationError(f"[gwa] alpha must list {fam.ngens} values")
        try:
            values = [parse_scalar(str(a), spec.field) for a in alpha]
        except ValidationError as err:
            raise _with_location(err, text, "gwa", "alpha") from None
        theta = C.CharTwist(tuple(S.inv(S.coerce(v, spec.field)) for v in values))
    elif fam_name == "funz":
        fam = C.FunZFamily(spec.field)
        theta = C.ZShift(int(p.get("shift", 1)))
    else:
        raise ValidationError(f"[cartan] family must be poly, group, funz or finite, not '{fam_name}'")
    z0 = _expr(spec, text, "z0", fam)
    z1 = _expr(spec, text, "z1", fam, "1")
    return G.Gwa(fam, theta, z0, z1, name="custom", allow_finite_order=True)


def _linear(text_value: str, basis: list, field_name: str) -> dict:
    poly = R.parse_poly(str(text_value), basis, field_name)
    out = {}
    for word, c in poly.items():
        if len(word) != 1:
            raise ValidationError(f"'{text_value}' is not a linear combination of basis elements")
        out[basis[word[0]]] = c
    return out


def _build_finite(spec: AlgebraSpec, text: str | None) -> FiniteGwa:
    cart = spec.cartan
    basis = cart.get("basis")
    if not isinstance(basis, list) or not basis:
        raise ValidationError("[cartan] basis must be a nonempty list of names")
    basis = [str(b) for b in basis]
    unit = str(cart.get("unit", basis[0]))
    table = {}
    for key, value in dict(cart.get("table", {})).items():
        a, sep, b = key.partition("*")
        if not sep or a.strip() not in basis or b.strip() not in basis:
            raise ValidationError(f"[cartan] table key '{key}' must be '<basis>*<basis>'")
        try:
            table[(a.strip(), b.strip())] = _linear(value, basis, spec.field)
        except ValidationError as err:
            raise _with_location(err, text, "cartan", key) from None
    H = R.FiniteAlgebra(basis, unit, table, spec.field)
    theta_raw = spec.params.get("theta", {})
    if not isinstance(theta_raw, dict):
        raise ValidationError("[gwa] theta must be a table of basis images")
    theta = {b: _linear(theta_raw.get(b, b), basis, spec.field) for b in basis}
    z0 = _linear(spec.params.get("z0", "0"), basis, spec.field)
    z1 = _linear(spec.params.get("z1", unit), basis, spec.field)
    out = FiniteGwa(H, theta, z0, z1)
    out.presentation()
    return out


def _build_presentation(spec: AlgebraSpec, text: str | None) -> R.Presentation:
    p = spec.params
    if "rules" not in p:
        raise ValidationError("[presentation] needs 'rules'")
    gens = p.get("generators")
    if isinstance(gens, str):
        gens = gens.split()
    try:
        return R.parse_presentation(str(p["rules"]), gens, spec.field, p.get("weights"))
    except ValidationError as err:
        raise _with_location(err, text, "presentation", "rules") from None


def _fractions(values, what: str) -> tuple:
    if isinstance(values, (str, int)):
        values = [values]
    try:
        return tuple(Fraction(str(v)) for v in values)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"{what} must be rationals such as 2 or 3/2") from None


def _build_rtm(p: dict) -> RtmSpec:
    kind = p.get("kind", "semidirect")
    c = p.get("c", [])
    if kind == "sampled":
        if "window" in p:
            return RtmSpec(M.Sampled.integer_window(int(p["window"])), ())
        try:
            elems = [int(x) for x in p["elements"]]
            prod = {(int(a), int(b)): int(v) for a, b, v in p["product"]}
            inv = {int(a): int(b) for a, b in p["inverse"]}
            act = {(int(a), int(b)): int(v) for a, b, v in p["action"]}
            pos = {int(x) for x in p["positive"]}
        except (KeyError, TypeError, ValueError):
            raise ValidationError(
                "[rtm] sampled tables need window, or elements, product, inverse, positive and action lists"
            ) from None
        return RtmSpec(M.Sampled(elems, int(p.get("unit", 0)), prod, inv, pos, act), ())
    if kind == "free":
        return RtmSpec(M.FreeMonoid(int(p.get("k", 1))), ())
    cone = M.AbelianCone(_fractions(p.get("eta", "1"), "eta")[0], tuple(int(x) for x in p.get("primes", [])))
    if kind == "cone":
        return RtmSpec(cone, ())
    if kind != "semidirect":
        raise ValidationError(f"[rtm] kind must be cone, free, semidirect or sampled, not '{kind}'")
    zeta = _fractions(p.get("zeta", []), "zeta")
    cs = _fractions(c, "c") if c else (Fraction(0),) * len(zeta)
    if len(cs) != len(zeta):
        raise ValidationError("[rtm] c needs one value per zeta")
    return RtmSpec(M.Semidirect(zeta, cone), cs)
