"""Command line interface: ``rta <subcommand> <target> [flags]``.

``target`` is a spec file path or a preset such as ``uq-sl2`` or
``down-up(2,1,1,h)``. Reports go to stdout, as JSON with ``--json`` and as a
two-column table otherwise.

Exit codes: 0 success, 1 computation error, 2 invalid input,
3 uncertified result under ``--require-certified``.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import cartan as C
from . import cat_o as O
from . import errors as E
from . import gwa as G
from . import polyexp as P
from . import report as Rep
from . import rewrite as R
from . import rtm as M
from . import scalar as S
from . import specfile as F
from .expr import parse_element, parse_scalar

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_INVALID = 2
EXIT_UNCERTIFIED = 3

ERROR_CODES = {
    cls.code: cls.__name__
    for cls in (
        E.RtaError,
        E.ValidationError,
        E.DivisionByZero,
        E.MixedField,
        E.ZeroInput,
        E.PoleAtPoint,
        E.ParseError,
        E.NotAnAutomorphism,
        E.NotHopfFamily,
        E.UnitMissing,
        E.NotFree,
        E.NotDecreasing,
        E.StepLimit,
        E.NotStable,
        E.NotAdmissible,
    )
}


# ---------------------------------------------------------------- targets and weights


def load_target(target: str) -> F.AlgebraSpec:
    if os.path.isfile(target):
        with open(target, encoding="utf-8") as fh:
            return F.parse_spec(fh.read())
    return F.preset_spec(target)


def parse_weight(text: str, family: C.Family) -> C.Weight:
    """``h=1``, ``K=q^3``, ``K[0]=q, K[1]=-1`` or ``point=0``."""
    values = {}
    for item in G.split_args(text):
        name, sep, value = item.partition("=")
        if not sep:
            raise E.ValidationError(f"weight entry '{item}' must look like name=value")
        values[name.strip()] = value.strip()
    if isinstance(family, C.PolyFamily):
        names = ["h"]
    elif isinstance(family, C.GroupFamily):
        names = [family.generator_name(i) for i in range(family.ngens)]
    else:
        names = ["point"]
    if set(values) != set(names):
        raise E.ValidationError(f"weight must give exactly {', '.join(names)}; got {', '.join(values) or 'nothing'}")
    if isinstance(family, C.FunZFamily):
        try:
            lam = C.ZPointWeight(int(values["point"]))
        except ValueError:
            raise E.ValidationError("point must be an integer") from None
    else:
        parsed = [S.coerce(parse_scalar(values[n], family.field), family.field) for n in names]
        lam = C.PolyWeight(parsed[0]) if isinstance(family, C.PolyFamily) else C.GroupWeight(tuple(parsed))
    C.validate_weight(lam, family)
    return lam


def _require_gwa(obj) -> G.Gwa:
    if not isinstance(obj, G.Gwa):
        raise E.ValidationError("this subcommand needs a GWA target")
    return obj


# ---------------------------------------------------------------- element parsers


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split at top-level + and -, keeping signs that belong to exponents or factors."""
    out, depth, cur, sign = [], 0, [], 1
    prev = ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in "+-" and depth == 0 and prev not in ("", "^", "*", "/", "("):
            out.append((sign, "".join(cur).strip()))
            cur, sign = [], 1 if ch == "+" else -1
            prev = ch
            continue
        if ch in "+-" and depth == 0 and prev == "" and not cur:
            sign = -sign if ch == "-" else sign
            continue
        cur.append(ch)
        if not ch.isspace():
            prev = ch
    out.append((sign, "".join(cur).strip()))
    if any(not t for _, t in out):
        raise E.ParseError(f"empty term in '{text}'")
    return out


def split_factors(term: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in term:
        depth += ch in "(["
        depth -= ch in ")]"
        if ch == "*" and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


_UD = re.compile(r"^(u|d)(?:\^(\d+))?$")


def parse_gwa_element(text: str, A: G.Gwa) -> G.GwaElement:
    """Sums of products of ``u``, ``d``, ``u^n``, ``d^n`` and Cartan expressions."""
    total = G.GwaElement(A)
    for sign, term in split_terms(text):
        acc = A.one()
        for factor in split_factors(term):
            m = _UD.match(factor)
            if m:
                n = int(m.group(2) or 1)
                acc = acc * (A.u(n) if m.group(1) == "u" else A.d(n))
            else:
                acc = acc * A.h(parse_element(factor, A.family))
        total = total + (acc if sign > 0 else -acc)
    return total


_X = re.compile(r"^x([pm])(\d+)(?:\^(\d+))?$")
_T = re.compile(r"^t\^\(?\s*(-?\s*\d+(?:/\d+)?)\s*\)?$")
_DELTA = re.compile(r"^delta\[([^\]]*)\]$")


def parse_rtm_element(text: str, A: M.RtmAlgebra) -> M.RtmElement:
    """Sums of products of ``xp1``, ``xm1^2``, ``t^(1/2)``, ``t^(-1)``, ``delta[e,n1,...]`` and rationals."""
    total = M.RtmElement(A)
    for sign, term in split_terms(text):
        acc = A.one()
        for factor in split_factors(term):
            if m := _X.match(factor):
                j = int(m.group(2)) - 1
                if not 0 <= j < A.k:
                    raise E.ValidationError(f"no generator {factor}: the algebra has k = {A.k}")
                g = A.x_plus(j) if m.group(1) == "p" else A.x_minus(j)
                for _ in range(int(m.group(3) or 1)):
                    acc = acc * g
            elif m := _T.match(factor):
                acc = acc * A.t(Fraction(m.group(1).replace(" ", "")))
            elif m := _DELTA.match(factor):
                parts = [p.strip() for p in m.group(1).split(",")]
                if len(parts) != A.k + 1:
                    raise E.ValidationError(f"delta needs e and {A.k} integers")
                acc = acc * A.delta((Fraction(parts[0]), tuple(int(x) for x in parts[1:])))
            else:
                acc = acc * parse_scalar(factor, S.QQ)
        total = total + (acc if sign > 0 else -acc)
    return total


# ---------------------------------------------------------------- subcommands


def _verma_job(args):
    spec_text, weight, bound, window = args
    A = _require_gwa(F.build(F.parse_spec(spec_text)))
    lam = parse_weight(weight, A.family)
    rep = O.verma_report(A, lam, bound, window)
    degrees = rep.maximal_degrees
    payload = {
        "verma": rep,
        "simple_dimension": degrees[0] if degrees else None,
        "finiteness": O.finiteness_certificate(A, lam, window) if isinstance(rep.freeness, C.Free) else None,
    }
    return Rep.encode(payload), "Certified" if rep.series_certified else "WindowOnly"


def _block_job(args):
    spec_text, weight, bound, window = args
    A = _require_gwa(F.build(F.parse_spec(spec_text)))
    rep = O.block_report(A, parse_weight(weight, A.family), bound, window)
    return Rep.encode(rep), rep.certification


def _batch(job, spec, weights, ns):
    text = F.serialize(spec)
    jobs = [(text, w, ns.bound, ns.window) for w in weights]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(job, jobs))
    else:
        results = [job(j) for j in jobs]
    statuses = [s for _, s in results]
    status = "Certified" if all(s == "Certified" for s in statuses) else "WindowOnly"
    if len(results) == 1:
        return results[0][0], status
    return {"batch": [{"weight": w, "report": r} for w, (r, _) in zip(weights, results)]}, status


def cmd_check_pbw(spec, obj, ns):
    if isinstance(obj, F.FiniteGwa):
        pres = obj.presentation()
    elif isinstance(obj, R.Presentation):
        pres = obj
    elif isinstance(obj, G.Gwa) and isinstance(obj.family, C.GroupFamily) and obj.family.rank == 0:
        pres, _ = R.presentation_of_gwa(obj)
    else:
        raise E.ValidationError("check-pbw needs a presentation, a finite Cartan or a finite group algebra")
    verdict = R.check_confluence(pres)
    payload = {"verdict": type(verdict).__name__, **Rep.encode(verdict), "presentation": pres.to_text()}
    return payload, type(verdict).__name__


def cmd_nf(spec, obj, ns):
    if isinstance(obj, (F.FiniteGwa, R.Presentation)):
        pres = obj.presentation() if isinstance(obj, F.FiniteGwa) else obj
        nf = pres.normal_form(R.parse_poly(ns.expr, pres.generators, pres.field))
        return {"input": ns.expr, "normal_form": pres.poly_text(nf)}, None
    A = _require_gwa(obj)
    x = parse_gwa_element(ns.expr, A)
    terms = {f"{m},{n}": str(h) for (m, n), h in sorted(x.terms.items())}
    return {"input": ns.expr, "normal_form": str(x), "pbw_terms": terms}, None


def cmd_zelems(spec, obj, ns):
    A = _require_gwa(obj)
    z = G.z_elements(A, ns.bound)
    return {"z_prime": [str(x) for x in z.prime], "z_tilde": {str(k): str(v) for k, v in sorted(z.tilde.items())}}, None


def cmd_shapovalov(spec, obj, ns):
    A = _require_gwa(obj)
    gram = G.shapovalov_gram(A, ns.bound)
    z = G.z_elements(A, ns.bound)
    products, acc = [], C.BaseElement.scalar(A.family, 1)
    for n in range(ns.bound + 1):
        if n:
            acc = acc * z.tilde[n]
        products.append(acc)
    diag = [gram[n][n] for n in range(ns.bound + 1)]
    off = all(not gram[i][j] for i in range(len(gram)) for j in range(len(gram)) if i != j)
    payload = {
        "gram": [[str(x) for x in row] for row in gram],
        "diagonal": [str(x) for x in diag],
        "z_tilde_products": [str(x) for x in products],
        "diagonal_equals_products": all(a == b for a, b in zip(diag, products)),
        "off_diagonal_zero": off,
    }
    return payload, None


def cmd_verma(spec, obj, ns):
    _require_gwa(obj)
    return _batch(_verma_job, spec, ns.weight, ns)


def cmd_block(spec, obj, ns):
    _require_gwa(obj)
    return _batch(_block_job, spec, ns.weight, ns)


def cmd_casimir(spec, obj, ns):
    A = _require_gwa(obj)
    res = G.casimir(A)
    payload = {"zeta": None, "omega": None, "witness": res.witness}
    if res.found:
        payload.update(
            zeta=str(res.zeta),
            omega=str(res.omega),
            id_minus_theta_of_zeta_is_z0=res.zeta - A.theta_pow(res.zeta, 1) == A.z0,
            commutator_with_u=str(G.commutator(res.omega, A.u())),
            commutator_with_d=str(G.commutator(res.omega, A.d())),
        )
    return payload, None


def parse_term(text: str, field: str) -> P.PolyExpTerm:
    """``c0,c1,...@base`` for (c0 + c1 n + ...) base^n."""
    coeffs, sep, base = text.partition("@")
    if not sep:
        raise E.ParseError(f"term '{text}' must look like c0,c1,...@base")
    cs = tuple(S.coerce(parse_scalar(c, field), field) for c in coeffs.split(","))
    return P.PolyExpTerm(cs, S.coerce(parse_scalar(base, field), field))


def cmd_polyexp(ns):
    field = S.QQ_Q if any("q" in t for t in ns.terms) else S.QQ
    terms = [parse_term(t, field) for t in ns.terms]
    sol = P.polyexp_solve(P.PolyExpProblem(terms, ns.window))
    return Rep.encode(sol), sol.status


def _rtm_from(ns) -> F.RtmSpec:
    params: dict = {}
    if ns.target:
        spec = load_target(ns.target)
        if spec.kind != "rtm":
            raise E.ValidationError("rtm subcommands need an [rtm] spec file")
        params.update(spec.params)
    for name in ("kind", "eta", "k", "size"):
        value = getattr(ns, name)
        if value is not None:
            params["window" if name == "size" else name] = value
    for name in ("primes", "zeta", "c"):
        value = getattr(ns, name)
        if value is not None:
            params[name] = [x for x in value.split(",") if x.strip()]
    if "window" in params:
        params.setdefault("kind", "sampled")
    return F._build_rtm(params), params


def _rtm_algebra(ns) -> M.RtmAlgebra:
    r, _ = _rtm_from(ns)
    return M.RtmAlgebra(r.monoid, r.c)


def cmd_rtm_check(ns):
    r, _ = _rtm_from(ns)
    verdict = M.check_cocycles(r.monoid, ns.ball)
    return {"verdict": type(verdict).__name__, **Rep.encode(verdict)}, type(verdict).__name__


def cmd_rtm_classify(ns):
    r, _ = _rtm_from(ns)
    return M.classify(r.monoid), None


def cmd_rtm_nf(ns):
    A = _rtm_algebra(ns)
    x = parse_rtm_element(ns.expr, A)
    return {"input": ns.expr, "normal_form": str(x)}, None


def _point(text: str, k: int):
    e, _, rest = text.partition(";")
    ns = [int(x) for x in rest.split(",") if x.strip()] if rest else [0] * k
    if len(ns) != k:
        raise E.ValidationError(f"point needs e and {k} integers, as 'e;n1,...'")
    return (Fraction(e.strip()), tuple(ns))


def cmd_rtm_verma(ns):
    A = _rtm_algebra(ns)
    rep = M.maximal_vector_check(A, _point(ns.point, A.k), ns.depth)
    sample = [Fraction(x) for x in ns.sample.split(",")]
    witnesses = [
        {"j": w.j, "expected_central": w.expected_central, "central": w.central, "ok": w.ok,
         "commutators": {k: str(v) for k, v in w.commutators.items()}}
        for w in M.center_witness(A, sample)
    ]
    payload = {"maximal_vectors": rep, "center_witnesses": witnesses}
    if ns.qminus is not None:
        cas = M.casimir_commute(A, [Fraction(x) for x in ns.qminus.split(",")], sample)
        payload["casimir"] = {
            "omega": str(cas.omega),
            "stable": cas.stable,
            "central_on_sample": cas.central_on_sample,
            "commutators": {k: str(v) for k, v in cas.commutators.items()},
        }
    return payload, None


def cmd_tensor_block(ns):
    specs = []
    for t in ns.targets:
        spec = load_target(t)
        specs += spec.parts if spec.kind == "tensor" else [spec]
    weights = ns.weight or []
    if len(weights) == 1:
        weights = weights * len(specs)
    if len(weights) != len(specs):
        raise E.ValidationError("give one --weight per tensor factor, or a single one for all")
    reports = []
    for spec, w in zip(specs, weights):
        A = _require_gwa(F.build(spec))
        reports.append(O.block_report(A, parse_weight(w, A.family), ns.bound, ns.window))
    tb = O.tensor_block(reports)
    return {"factors": reports, "tensor": tb}, tb.certification


def cmd_classical_limit(ns):
    name, _, rest = ns.target.partition("(")
    if name.strip() != "wq":
        raise E.ValidationError("classical-limit takes a wq(l,m,n,s,gamma,f) target")
    args = G.split_args(rest[:-1]) if rest else []
    if rest and not rest.endswith(")"):
        raise E.ParseError(f"unbalanced parentheses in '{ns.target}'")
    if len(args) > 6:
        raise E.ValidationError("wq takes at most 6 arguments")
    reports = [O.classical_limit(*args, x=parse_scalar(x, S.QQ), k_max=ns.bound) for x in ns.x]
    status = "Agree" if all(r.agree for r in reports) else "Disagree"
    return (reports[0] if len(reports) == 1 else {"batch": reports}), status


ALGEBRA_COMMANDS = {
    "check-pbw": cmd_check_pbw,
    "nf": cmd_nf,
    "zelems": cmd_zelems,
    "shapovalov": cmd_shapovalov,
    "verma": cmd_verma,
    "block": cmd_block,
    "casimir": cmd_casimir,
}

OTHER_COMMANDS = {
    "polyexp": cmd_polyexp,
    "rtm-check": cmd_rtm_check,
    "rtm-classify": cmd_rtm_classify,
    "rtm-nf": cmd_rtm_nf,
    "rtm-verma": cmd_rtm_verma,
    "tensor-block": cmd_tensor_block,
    "classical-limit": cmd_classical_limit,
}

CERTIFYING = {"verma", "block", "polyexp", "tensor-block", "classical-limit"}
PASSING = {"Certified", "Agree"}


# ---------------------------------------------------------------- argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--require-certified", action="store_true", help="exit 3 unless the result is certified")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for weight batches")

    parser = argparse.ArgumentParser(prog="rta", description="Exact computations with regular triangular algebras.")
    parser.add_argument("--version", action="version", version=f"rta {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def algebra(name, help_text, bound=None):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("target", help="spec file or preset")
        if bound is not None:
            p.add_argument("--bound", type=int, default=bound)
        return p

    algebra("check-pbw", "confluence of the reduction system")
    algebra("nf", "PBW normal form of an expression").add_argument("--expr", required=True)
    algebra("zelems", "the elements z'_k and z~_k", 5)
    algebra("shapovalov", "Gram matrix of the Shapovalov form on d^0..d^N", 4)
    for name, text in (("verma", "Verma module structure"), ("block", "block of a weight")):
        p = algebra(name, text, 20)
        p.add_argument("--weight", action="append", required=True, help="e.g. h=1 or K=q^3; repeatable")
        p.add_argument("--window", type=int, default=O.DEFAULT_WINDOW)
    algebra("casimir", "quadratic Casimir element")

    p = sub.add_parser("polyexp", parents=[common], help="integer zeros of sum p_j(n) a_j^n")
    p.add_argument("terms", nargs="+", help="c0,c1,...@base")
    p.add_argument("--window", type=int, default=64)

    def rtm(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("target", nargs="?", help="spec file with an [rtm] section")
        p.add_argument("--kind", choices=["cone", "free", "semidirect", "sampled"])
        p.add_argument("--eta")
        p.add_argument("--primes", help="comma separated inverted primes")
        p.add_argument("--zeta", help="comma separated positive rationals")
        p.add_argument("--c", help="comma separated scalars, one per zeta")
        p.add_argument("--k", type=int, help="rank of the free monoid")
        p.add_argument("--size", type=int, help="sampled integer window [-size, size]")
        return p

    rtm("rtm-check", "cocycle conditions on a ball").add_argument("--ball", type=int, default=3)
    rtm("rtm-classify", "based / discretely graded")
    rtm("rtm-nf", "normal form in the algebra").add_argument("--expr", required=True)
    p = rtm("rtm-verma", "maximal vectors, centre and Casimir checks")
    p.add_argument("--point", default="0", help="group point 'e;n1,...'")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--sample", default="1", help="comma separated e values for t-generators")
    p.add_argument("--qminus", help="comma separated finite truncation for the Casimir")

    p = sub.add_parser("tensor-block", parents=[common], help="block of a tensor product")
    p.add_argument("targets", nargs="+")
    p.add_argument("--weight", action="append")
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--window", type=int, default=O.DEFAULT_WINDOW)

    p = sub.add_parser("classical-limit", parents=[common], help="q -> 1 comparison for wq")
    p.add_argument("target", nargs="?", default="wq")
    p.add_argument("--x", action="append", help="classical highest weight; repeatable")
    p.add_argument("--bound", type=int, default=6, help="largest k")
    return parser


_NOT_ECHOED = {"json", "jobs", "require_certified", "subcommand"}


def command_echo(ns) -> dict:
    options = {k: v for k, v in sorted(vars(ns).items()) if k not in _NOT_ECHOED and v is not None}
    return {"subcommand": ns.subcommand, "options": options}


def run(argv: list[str]) -> tuple[dict, int]:
    """Parse ``argv`` and compute; returns (report, exit code)."""
    ns = build_parser().parse_args(argv)
    if ns.subcommand == "classical-limit" and not ns.x:
        ns.x = ["1"]
    echo = command_echo(ns)
    if ns.subcommand in ALGEBRA_COMMANDS:
        spec = load_target(ns.target)
        spec_text = F.serialize(spec)
        payload, status = ALGEBRA_COMMANDS[ns.subcommand](spec, F.build(spec), ns)
    else:
        spec_text = ""
        payload, status = OTHER_COMMANDS[ns.subcommand](ns)
    report = Rep.make_report(echo, spec_text, payload, status)
    code = EXIT_OK
    if ns.require_certified and ns.subcommand in CERTIFYING and status not in PASSING:
        code = EXIT_UNCERTIFIED
    return report, code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    as_json = "--json" in argv
    try:
        report, code = run(argv)
    except E.RtaError as err:
        code = EXIT_INVALID if isinstance(err, E.ValidationError) else EXIT_COMPUTATION
        if as_json:
            sys.stdout.write(Rep.dumps({"error": {"code": err.code, "message": str(err)}, "version": __version__}))
        print(f"error[{err.code}]: {err}", file=sys.stderr)
        return code
    except (ValueError, ZeroDivisionError) as err:
        if as_json:
            sys.stdout.write(Rep.dumps({"error": {"code": E.ValidationError.code, "message": str(err)}, "version": __version__}))
        print(f"error[{E.ValidationError.code}]: {err}", file=sys.stderr)
        return EXIT_INVALID
    if as_json:
        sys.stdout.write(Rep.dumps(report))
    else:
        sys.stdout.write(Rep.render_table({"payload": report["payload"], "status": report["status"]}))
    if code == EXIT_UNCERTIFIED:
        print(f"error: result is {report['status']}, not certified", file=sys.stderr)
    return code
