"""Noncommutative rewriting and the Diamond Lemma.

A :class:`Presentation` is a list of generators together with reduction
rules ``lhs -> rhs`` where ``lhs`` is a word and ``rhs`` a linear combination
of words. Words are tuples of generator indices. The semigroup order compares

1. the weighted degree (every generator has weight 0 or 1),
2. the subword of weight-one letters, lexicographically,
3. the length,
4. the whole word, lexicographically,

with letters ranked by their position in the generator list. With every
weight equal to 1 this is the usual length-lexicographic order. Every rule
must strictly decrease under this order, which makes reduction terminate.

The text format has one rule per line, ``u.d -> 1 + d.u``; ``1`` is the
empty word and ``#`` starts a comment.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import scalar as S
from .errors import NotAnAutomorphism, NotDecreasing, ParseError, StepLimit, UnitMissing, ValidationError

Word = tuple
FreePoly = dict  # Word -> scalar


def poly_add(a: FreePoly, b: FreePoly, scale=1) -> FreePoly:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + c * scale
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def poly_mul(a: FreePoly, b: FreePoly) -> FreePoly:
    out: FreePoly = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


class Presentation:
    def __init__(
        self,
        generators: Sequence[str],
        rules: Iterable[tuple[Word, FreePoly]],
        *,
        weights: Sequence[int] | None = None,
        field: str = S.QQ,
    ):
        self.generators = list(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError("duplicate generator names")
        self.weights = list(weights) if weights is not None else [1] * len(self.generators)
        if len(self.weights) != len(self.generators) or any(w not in (0, 1) for w in self.weights):
            raise ValidationError("weights must be 0 or 1, one per generator")
        self.field = field
        self.rules: list[tuple[Word, FreePoly]] = []
        self.by_lhs: dict[Word, FreePoly] = {}
        self.inclusions: list[tuple[Word, Word]] = []
        for lhs, rhs in rules:
            self.add_rule(tuple(lhs), {tuple(w): c for w, c in rhs.items() if c})
        self._find_inclusions()

    def key(self, w: Word):
        heavy = tuple(x for x in w if self.weights[x])
        return (len(heavy), heavy, len(w), w)

    def add_rule(self, lhs: Word, rhs: FreePoly) -> None:
        if not lhs:
            raise ValidationError("rule with empty left-hand side")
        if any(not 0 <= x < len(self.generators) for x in lhs):
            raise ValidationError(f"unknown generator in {lhs}")
        k = self.key(lhs)
        for w in rhs:
            if not self.key(w) < k:
                raise NotDecreasing(f"{self.word_text(w)} is not smaller than {self.word_text(lhs)}")
        if lhs in self.by_lhs:
            self.inclusions.append((lhs, lhs))
        self.rules.append((lhs, rhs))
        self.by_lhs[lhs] = rhs

    def _find_inclusions(self) -> None:
        lhss = list(self.by_lhs)
        for outer in lhss:
            for inner in lhss:
                if inner != outer and len(inner) <= len(outer):
                    n = len(inner)
                    if any(outer[i : i + n] == inner for i in range(len(outer) - n + 1)):
                        self.inclusions.append((outer, inner))

    # text helpers
    def word_text(self, w: Word) -> str:
        return ".".join(self.generators[x] for x in w) if w else "1"

    def poly_text(self, p: FreePoly) -> str:
        if not p:
            return "0"
        parts = []
        for w in sorted(p, key=self.key, reverse=True):
            c = p[w]
            neg = isinstance(c, Fraction) and c < 0 or (isinstance(c, S.RatFunc) and c.is_constant() and c.constant_value() < 0)
            a = -c if neg else c
            if not w:
                body = S.to_text(a)
                if isinstance(a, S.RatFunc) and not a.is_constant():
                    body = f"({body})"
            elif a == 1:
                body = self.word_text(w)
            else:
                t = S.to_text(a)
                body = f"({t})*{self.word_text(w)}" if (" " in t or "/" in t) else f"{t}*{self.word_text(w)}"
            if parts:
                parts.append(("- " if neg else "+ ") + body)
            else:
                parts.append(("-" if neg else "") + body)
        return " ".join(parts)

    def to_text(self, header: bool = True) -> str:
        lines = []
        if header:
            lines.append("generators: " + " ".join(self.generators))
            if any(w != 1 for w in self.weights):
                lines.append("weights: " + " ".join(map(str, self.weights)))
        lines += [f"{self.word_text(l)} -> {self.poly_text(r)}" for l, r in self.rules]
        return "\n".join(lines) + "\n"

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    # reduction
    def applicable(self, w: Word) -> list[tuple[Word, int]]:
        found = []
        lengths = {len(l) for l in self.by_lhs}
        for n in lengths:
            for i in range(len(w) - n + 1):
                if w[i : i + n] in self.by_lhs:
                    found.append((w[i : i + n], i))
        return found

    def choose(self, w: Word) -> tuple[Word, int] | None:
        """Strategy: the largest applicable lhs, at its leftmost occurrence."""
        found = self.applicable(w)
        if not found:
            return None
        best = max(self.key(l) for l, _ in found)
        return min(((l, i) for l, i in found if self.key(l) == best), key=lambda t: t[1])

    def rewrite_at(self, w: Word, lhs: Word, pos: int) -> FreePoly:
        """One reduction step applied to a single word."""
        if w[pos : pos + len(lhs)] != lhs:
            raise ValidationError("rule does not apply at this position")
        a, c = w[:pos], w[pos + len(lhs) :]
        return {a + x + c: v for x, v in self.by_lhs[lhs].items()}

    def normal_form(self, p: FreePoly | Word, max_steps: int = 200000) -> FreePoly:
        if isinstance(p, tuple):
            p = {p: S.one(self.field)}
        p = {w: c for w, c in p.items() if c}
        done: FreePoly = {}
        steps = 0
        pending = dict(p)
        while pending:
            w = max(pending, key=self.key)
            c = pending.pop(w)
            choice = self.choose(w)
            if choice is None:
                v = done.get(w, 0) + c
                if v:
                    done[w] = v
                else:
                    done.pop(w, None)
                continue
            steps += 1
            if steps > max_steps:
                raise StepLimit(f"no normal form within {max_steps} steps")
            for x, v in self.rewrite_at(w, *choice).items():
                nv = pending.get(x, 0) + c * v
                if nv:
                    pending[x] = nv
                else:
                    pending.pop(x, None)
        return done

    def is_irreducible(self, w: Word) -> bool:
        return not self.applicable(w)


def misordering_index(pres: Presentation, p: FreePoly) -> list:
    """Multiset of order keys, sorted descending; strictly decreases along reductions."""
    return sorted((pres.key(w) for w in p), reverse=True)


# ---------------------------------------------------------------- confluence


@dataclass
class Confluent:
    ambiguities_checked: int


@dataclass
class NotConfluent:
    ambiguity: str
    left: str
    right: str
    difference: str


@dataclass
class InclusionAmbiguity:
    outer: str
    inner: str


ConfluenceVerdict = Union[Confluent, NotConfluent, InclusionAmbiguity]


def overlap_ambiguities(pres: Presentation) -> list[tuple[Word, Word, Word, Word]]:
    """All (lhs1, lhs2, word, C) with lhs1 = A B, lhs2 = B C, B nonempty."""
    out = []
    for l1, _ in pres.rules:
        for l2, _ in pres.rules:
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k :] == l2[:k]:
                    out.append((l1, l2, l1 + l2[k:], l2[k:]))
    return out


def check_confluence(pres: Presentation, max_steps: int = 200000) -> ConfluenceVerdict:
    if pres.inclusions:
        outer, inner = pres.inclusions[0]
        return InclusionAmbiguity(pres.word_text(outer), pres.word_text(inner))
    amb = overlap_ambiguities(pres)
    for l1, l2, w, tail in amb:
        head = w[: len(w) - len(l2)]
        one = S.one(pres.field)
        left = pres.normal_form(poly_mul(pres.by_lhs[l1], {tail: one}), max_steps)
        right = pres.normal_form(poly_mul({head: one}, pres.by_lhs[l2]), max_steps)
        if left != right:
            diff = poly_add(left, right, -1)
            return NotConfluent(pres.word_text(w), pres.poly_text(left), pres.poly_text(right), pres.poly_text(diff))
    return Confluent(len(amb))


# ---------------------------------------------------------------- text format

def parse_word(text: str, generators: Sequence[str]) -> Word:
    text = text.strip()
    if text == "1" and "1" not in generators:
        return ()
    index = {g: i for i, g in enumerate(generators)}
    out = []
    pos = 0
    for part in text.split("."):
        name = part.strip()
        if name not in index:
            raise ParseError(f"unknown generator '{name}'", pos, text)
        out.append(index[name])
        pos += len(part) + 1
    return tuple(out)


def parse_poly(text: str, generators: Sequence[str], field: str = S.QQ) -> FreePoly:
    """Parse ``c*w + ... - w`` where each w is a dotted word or ``1``."""
    from .expr import parse_scalar

    out: FreePoly = {}
    s = text.strip()
    if s == "0":
        return out
    # split at top-level + and - signs
    terms, depth, cur, start = [], 0, "", 0
    for i, ch in enumerate(s):
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("*", "/", "^")):
            terms.append((cur, start))
            cur, start = ch, i
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    terms.append((cur, start))
    for term, pos in terms:
        t = term.strip()
        sign = 1
        while t[:1] in "+-" and t:
            if t[0] == "-":
                sign = -sign
            t = t[1:].strip()
        if not t:
            raise ParseError("empty term", pos, text)
        names = set(generators)
        coeff_text, word_text = None, t
        if "*" in t:
            idx = t.rfind("*")
            coeff_text, word_text = t[:idx], t[idx + 1 :].strip()
        if word_text != "1" and not all(part.strip() in names for part in word_text.split(".")):
            coeff_text = t
            word_text = "1"
        c = parse_scalar(coeff_text, field) if coeff_text else S.one(field)
        w = parse_word(word_text, generators)
        v = out.get(w, 0) + sign * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def parse_presentation(text: str, generators: Sequence[str] | None = None, field: str = S.QQ, weights=None) -> Presentation:
    """Parse the line format. Generators default to names in order of appearance,
    unless a ``generators: a b c`` header line fixes the order."""
    lines = []
    gens = list(generators) if generators else None
    wts = list(weights) if weights else None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generators:"):
            gens = line.split(":", 1)[1].split()
            continue
        if line.startswith("weights:"):
            wts = [int(x) for x in line.split(":", 1)[1].split()]
            continue
        lines.append(line)
    if gens is None:
        gens = []
        for line in lines:
            for name in re.findall(r"[A-Za-z_][\w\[\]]*", line.split("->")[0]):
                if name not in gens:
                    gens.append(name)
    rules = []
    for line in lines:
        if "->" not in line:
            raise ParseError("expected '<word> -> <polynomial>'", 0, line)
        lhs, rhs = line.split("->", 1)
        rules.append((parse_word(lhs, gens), parse_poly(rhs, gens, field)))
    return Presentation(gens, rules, weights=wts, field=field)


# ---------------------------------------------------------------- GWAs over finite-dimensional H


@dataclass
class FiniteAlgebra:
    """Finite-dimensional algebra given by a basis and structure constants.

    ``table[(a, b)]`` is a dict basis-name -> coefficient for the product a*b.
    Elements are dicts basis-name -> coefficient.
    """

    basis: list[str]
    unit: str
    table: dict
    field: str = S.QQ

    def __post_init__(self):
        if self.unit not in self.basis:
            raise UnitMissing(f"basis {self.basis} does not contain the unit '{self.unit}'")

    def product(self, a: str, b: str) -> dict:
        if a == self.unit:
            return {b: S.one(self.field)}
        if b == self.unit:
            return {a: S.one(self.field)}
        return self.table.get((a, b), {})

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.product(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}


def _lin(theta: Mapping, x: Mapping) -> dict:
    out: dict = {}
    for a, ca in x.items():
        for b, v in theta[a].items():
            out[b] = out.get(b, 0) + ca * v
    return {k: v for k, v in out.items() if v}


def check_automorphism(H: FiniteAlgebra, theta: Mapping) -> None:
    from .linalg import rank

    if set(theta) != set(H.basis):
        raise NotAnAutomorphism("theta must be given on every basis element")
    one = S.one(H.field)
    if _lin(theta, {H.unit: one}) != {H.unit: one}:
        raise NotAnAutomorphism("theta does not fix the unit")
    for a in H.basis:
        for b in H.basis:
            left = _lin(theta, H.product(a, b))
            right = H.mul(theta[a], theta[b])
            if left != right:
                raise NotAnAutomorphism(f"theta({a}*{b}) != theta({a})*theta({b})")
    rows = [[theta[a].get(b, 0) for b in H.basis] for a in H.basis]
    if rank(rows, len(H.basis)) < len(H.basis):
        raise NotAnAutomorphism("theta is not invertible")


def gwa_presentation(H: FiniteAlgebra, theta: Mapping, z0: Mapping, z1: Mapping) -> Presentation:
    """Reduction system for W(H, theta, z0, z1) with generators d < basis < u.

    The unit of H is an ordinary generator, so the PBW normal forms are the
    words d^m b u^n with exactly one basis letter b.
    """
    check_automorphism(H, theta)
    gens = ["d"] + list(H.basis) + ["u"]
    if len(set(gens)) != len(gens):
        raise ValidationError("basis names must differ from 'd' and 'u'")
    idx = {g: i for i, g in enumerate(gens)}
    D, U = idx["d"], idx["u"]

    def as_poly(x: Mapping, left: Word = (), right: Word = ()) -> FreePoly:
        out: FreePoly = {}
        for b, c in x.items():
            w = left + (idx[b],) + right
            out[w] = out.get(w, 0) + c
        return {w: c for w, c in out.items() if c}

    rules: list[tuple[Word, FreePoly]] = []
    for a in H.basis:
        for b in H.basis:
            rules.append(((idx[a], idx[b]), as_poly(H.product(a, b))))
    for a in H.basis:
        rules.append(((U, idx[a]), as_poly(theta[a], right=(U,))))
    for a in H.basis:
        rules.append(((idx[a], D), as_poly(theta[a], left=(D,))))
    rhs = poly_add(as_poly(z0), as_poly(z1, left=(D,), right=(U,)))
    rules.append(((U, D), rhs))
    weights = [1] + [0] * len(H.basis) + [1]
    return Presentation(gens, rules, weights=weights, field=H.field)


def group_algebra_table(family) -> FiniteAlgebra:
    """FiniteAlgebra for a group algebra of a finite abelian group (no free part)."""

    if family.rank:
        raise ValidationError("only finite groups give finite-dimensional algebras")
    elems = list(itertools.product(*[range(n) for n in family.torsion]))
    name = {g: "g" + "_".join(map(str, g)) for g in elems}
    table = {}
    one = S.one(family.field)
    for a in elems:
        for b in elems:
            table[(name[a], name[b])] = {name[family.normalize_key(tuple(x + y for x, y in zip(a, b)))]: one}
    unit = name[family.unit_key()]
    return FiniteAlgebra([name[g] for g in elems], unit, table, family.field)


def presentation_of_gwa(A) -> tuple[Presentation, dict]:
    """Presentation of a GWA whose Cartan subalgebra is a finite group algebra.

    Returns the presentation and the map basis-name -> group element key.
    """
    from . import cartan as C

    fam = A.family
    H = group_algebra_table(fam)
    keys = {}
    for g in itertools.product(*[range(n) for n in fam.torsion]):
        keys["g" + "_".join(map(str, g))] = g

    def to_dict(x) -> dict:
        inv = {v: k for k, v in keys.items()}
        return {inv[g]: c for g, c in x.terms.items()}

    theta = {}
    for n, g in keys.items():
        theta[n] = to_dict(C.apply(A.theta, C.BaseElement.monomial(fam, g)))
    return gwa_presentation(H, theta, to_dict(A.z0), to_dict(A.z1)), keys


def gwa_element_to_poly(x, pres: Presentation, keys: dict) -> FreePoly:
    inv = {g: n for n, g in keys.items()}
    idx = {g: i for i, g in enumerate(pres.generators)}
    out: FreePoly = {}
    for (m, n), h in x.terms.items():
        for g, c in h.terms.items():
            w = (idx["d"],) * m + (idx[inv[g]],) + (idx["u"],) * n
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def poly_to_gwa_element(p: FreePoly, A, pres: Presentation, keys: dict):
    """Read a normal form d^m [g] u^n back into PBW coordinates."""
    from .cartan import BaseElement
    from .gwa import GwaElement

    fam = A.family
    D, U = pres.generators.index("d"), pres.generators.index("u")
    terms: dict = {}
    for w, c in p.items():
        m = 0
        while m < len(w) and w[m] == D:
            m += 1
        n = 0
        while n < len(w) - m and w[len(w) - 1 - n] == U:
            n += 1
        mid = w[m : len(w) - n]
        if len(mid) > 1:
            raise ValidationError(f"{pres.word_text(w)} is not in PBW normal form")
        g = keys[pres.generators[mid[0]]] if mid else fam.unit_key()
        h = BaseElement.monomial(fam, g, c)
        terms[(m, n)] = terms[(m, n)] + h if (m, n) in terms else h
    return GwaElement(A, terms)
