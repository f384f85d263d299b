"""Command implementations and the HTTP service wrapping them.

``run(group, action, params)`` is the single entry point; the FastAPI app and
the CLI both go through it, so a report is the same whichever way it was
requested.
"""
from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import algebra_engine as eng
from . import criteria as crit
from .combinatorics import (
    count_standard_tableaux,
    enumerate_multipartitions,
    format_multipartition,
    norm_kind,
    parse_multipartition,
)
from .exact_arith import Assignment, SpecializationPoint, rad_eq
from .schemas import COMMANDS, Params, Report
from .schur import PATHS, schur_closed, schur_recursive, schur_strict_shape, wan_wang_c


class UsageError(ValueError):
    """Bad or missing flags; the CLI maps it to exit code 2."""


# ---------------------------------------------------------------- flag parsing

def parse_range(text: str | None, name: str) -> list[int]:
    if text is None:
        raise UsageError(f"--{name} is required")
    mt = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", str(text))
    if not mt:
        raise UsageError(f"--{name}: expected an integer or a range a..b, got {text!r}")
    lo = int(mt.group(1))
    hi = int(mt.group(2)) if mt.group(2) is not None else lo
    if hi < lo:
        raise UsageError(f"--{name}: empty range {text!r}")
    return list(range(lo, hi + 1))


def parse_spec(text: str | None) -> dict[str, str]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"--spec: expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        k = k.strip()
        if k != "q" and not re.fullmatch(r"Q\d+", k):
            raise UsageError(f"--spec: unknown variable {k!r}")
        out[k] = v.strip()
    return out


_ZETA = re.compile(r"(xi\*)?zeta(\d+)(?:\^(-?\d+))?")


def spec_point(spec: dict[str, str]) -> SpecializationPoint:
    """Rationals, ``zetaN^k`` or ``xi*zetaN^k`` (one common N)."""
    values, order = {}, None
    for k, v in spec.items():
        mt = _ZETA.fullmatch(v)
        if mt:
            N = int(mt.group(2))
            if order not in (None, N):
                raise UsageError("--spec: all roots of unity must use the same order N")
            order = N
            values[k] = Assignment("xizeta" if mt.group(1) else "zeta", int(mt.group(3) or 1))
        else:
            values[k] = _rational(v)
    try:
        return SpecializationPoint.make(order, **values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rational(v: str) -> Fraction:
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--spec: cannot read {v!r} as a rational") from None


def _symbolic_Q(v: str) -> tuple[Fraction, int]:
    """``c``, ``q^k`` or ``c*q^k``."""
    mt = re.fullmatch(r"(?:([-0-9/]+)\*?)?(?:q(?:\^(-?\d+))?)?", v.replace(" ", ""))
    if not mt or not v:
        raise UsageError(f"--spec: cannot read {v!r} as c*q^k")
    c = _rational(mt.group(1)) if mt.group(1) else Fraction(1)
    k = int(mt.group(2)) if mt.group(2) else (1 if "q" in v else 0)
    return c, k


def _require(p: Params, *names):
    for nm in names:
        if getattr(p, nm) is None:
            raise UsageError(f"--{nm} is required")


def _kind(p: Params) -> str:
    _require(p, "kind")
    try:
        return norm_kind(p.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _algebra(p: Params, n: int, allow_large=False) -> eng.Algebra:
    _require(p, "m")
    spec = parse_spec(p.spec)
    kind = _kind(p)
    m = p.m
    names = [f"Q{i}" for i in range(1, m + 1)]
    extra = set(spec) - {"q", *names}
    if extra:
        raise UsageError(f"--spec: unexpected variables {sorted(extra)}")
    try:
        if "q" in spec:
            Q = [_rational(spec[x]) for x in names] if all(x in spec for x in names) else None
            if Q is None:
                raise UsageError("--spec: a rational q needs rational values for Q1..Qm")
            return eng.make_algebra(n, kind, m, _rational(spec["q"]), Q, allow_large)
        Q = [_symbolic_Q(spec.get(x, "1")) for x in names]
        return eng.make_algebra(n, kind, m, None, Q, allow_large)
    except eng.EngineError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _multipartitions(p: Params):
    if p.lam:
        try:
            return [parse_multipartition(p.lam)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    kind = _kind(p)
    _require(p, "m")
    return [lam for n in parse_range(p.n, "n") for lam in enumerate_multipartitions(kind, p.m, n)]


# ---------------------------------------------------------------- schur

_ROUTES = {"recursive": schur_recursive, "closed": schur_closed, "strict_shape": schur_strict_shape}


def _value_at(value, spec: dict[str, str]):
    if not spec or value.radicands:
        return None
    vals = {k: _rational(v) for k, v in spec.items()}
    try:
        return str(value.rational.evaluate(vals))
    except KeyError as exc:
        raise UsageError(f"--spec: missing value for {exc.args[0]}") from None
    except ZeroDivisionError:
        return "pole"


def schur_compute(p: Params) -> Report:
    path = p.path or "closed"
    if path not in _ROUTES and path != "wan_wang":
        raise UsageError(f"--path must be one of {', '.join(PATHS)} (hook_shape needs a component; use the library)")
    spec = parse_spec(p.spec)
    recs = []
    for lam in _multipartitions(p):
        try:
            if path == "wan_wang":
                rec = wan_wang_c(lam.comp(0))
            else:
                rec = _ROUTES[path](lam)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        recs.append({"lambda": format_multipartition(lam), "path": rec.path, "value": str(rec.value),
                     "value_at_spec": _value_at(rec.value, spec)})
    return Report(command="schur compute", ok=True, records=recs, summary={"count": len(recs), "path": path})


def _verify_one(lam) -> dict:
    rec = schur_recursive(lam).value
    clo = schur_closed(lam).value
    row = {"lambda": format_multipartition(lam), "recursive_equals_closed": rad_eq(rec, clo)}
    if lam.kind == "s" and not any(lam.comp(c) for c in lam.labels if c != 0):
        row["strict_shape_equals_closed"] = rad_eq(schur_strict_shape(lam).value, clo)
    row["ok"] = all(v for k, v in row.items() if k != "lambda")
    return row


def schur_verify(p: Params) -> Report:
    lams = _multipartitions(p)
    if p.jobs > 1:
        with ProcessPoolExecutor(p.jobs) as ex:
            rows = list(ex.map(_verify_one, lams, chunksize=8))
    else:
        rows = [_verify_one(lam) for lam in lams]
    bad = [r for r in rows if not r["ok"]]
    return Report(command="schur verify", ok=not bad, records=rows, counterexamples=bad,
                  summary={"records": len(rows), "mismatches": len(bad)})


# ---------------------------------------------------------------- criteria

def criteria_check(p: Params) -> Report:
    if p.family:
        _require(p, "e", "weight")
        try:
            w = crit.parse_weight(p.weight)
            rows = [crit.evaluate_instance(crit.QuiverInstance(p.family, e, n, w))
                    for e in parse_range(p.e, "e") for n in parse_range(p.n, "n")]
        except crit.NotCovered as exc:
            raise UsageError(f"instance not covered: {exc}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        bad = [r.as_dict() for r in rows if not r.agree]
        return Report(command="criteria check", ok=not bad, records=[r.as_dict() for r in rows],
                      counterexamples=bad, summary={"instances": len(rows), "disagreements": len(bad)})
    kind = _kind(p)
    _require(p, "m", "spec")
    pt = spec_point(parse_spec(p.spec))
    recs = []
    for n in parse_range(p.n, "n"):
        try:
            ev = crit.evaluate_at(crit.build_P(kind, n, p.m), pt)
            row = {"n": n, "P_nonzero": ev.nonzero, "P_vanishing": ev.vanishing}
            if kind == "s":
                g = crit.evaluate_at(crit.build_Gamma(n, p.m), pt)
                row.update(Gamma_nonzero=g.nonzero, Gamma_vanishing=g.vanishing)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        row["fastpath_agrees"] = ev.fastpath_agrees
        recs.append(row)
    bad = [r for r in recs if not r["fastpath_agrees"]]
    return Report(command="criteria check", ok=not bad, records=recs, counterexamples=bad,
                  summary={"kind": kind, "m": p.m, "spec": p.spec})


def criteria_scan(p: Params) -> Report:
    _require(p, "family", "e")
    if p.family not in crit.FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(crit.FAMILIES)}")
    try:
        weights = [crit.parse_weight(p.weight)] if p.weight else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ns = parse_range(p.n or "1..6", "n")
    rep = crit.equivalence_scan(p.family, parse_range(p.e, "e"), ns, weights=weights, jobs=p.jobs)
    bad = [r.as_dict() for r in rep.disagreements] + [
        dict(r.as_dict(), fastpath_failure=True) for r in rep.fastpath_failures]
    summary = rep.summary()
    summary["flagged_cases"] = [f.as_dict() for f in rep.flagged]
    summary["skipped_cases"] = rep.skipped
    return Report(command="criteria scan", ok=not bad, records=[r.as_dict() for r in rep.rows],
                  counterexamples=bad, summary=summary)


# ---------------------------------------------------------------- algebra

def algebra_gram(p: Params) -> Report:
    reports, notes = [], []
    matrix = None
    ok = True
    for n in parse_range(p.n, "n"):
        alg = _algebra(p, n)
        try:
            G = alg.gram(p.form)
        except eng.FormUnavailable as exc:
            ok = False
            notes.append(f"n={n}: {exc}")
            continue
        nondeg = alg.is_nondegenerate(G)
        ok = ok and nondeg
        reports.append({"n": n, "context": alg.ctx.describe(), "form": p.form, "dimension": len(G),
                        "basis": [alg.format_term(b, 1) for b in alg.basis()], "nondegenerate": nondeg})
        matrix = [[str(x) for x in row] for row in G]
    return Report(command="algebra gram", ok=ok, records=reports, matrix=matrix, notes=notes,
                  counterexamples=[r for r in reports if not r["nondegenerate"]])


def algebra_semisimple(p: Params) -> Report:
    kind = _kind(p)
    _require(p, "m")
    if p.spec:
        recs = []
        for n in parse_range(p.n, "n"):
            alg = _algebra(p, n, allow_large=True)
            if alg.ctx.symbolic:
                raise UsageError("semisimplicity needs a rational --spec (q=...,Q1=...)")
            vals = {"q": alg.ctx.q, **{f"Q{i + 1}": x for i, x in enumerate(alg.ctx.Q)}}
            p_zero = [f.label for f in crit.build_P(kind, n, p.m).factors if f.poly.evaluate(vals) == 0]
            recs.append({"n": n, "context": alg.ctx.describe(), "semisimple": alg.is_semisimple(),
                         "P_vanishing": p_zero})
        return Report(command="algebra semisimple", ok=True, records=recs)
    recs, bad, summary = [], [], {}
    for n in parse_range(p.n, "n"):
        try:
            rep = eng.semisimplicity_agreement(kind, n, p.m, seed=p.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        recs += [dict(r, n=n) for r in rep["rows"]]
        bad += [dict(r, n=n) for r in rep["rows"] if not r["ok"]]
        summary[f"n={n}"] = {"points": rep["points"], "engineered_P_zero": rep["engineered_P_zero"],
                             "pi_singular_with_Gamma_nonzero": len(rep["pi_singular_with_Gamma_nonzero"])}
    return Report(command="algebra semisimple", ok=not bad, records=recs, counterexamples=bad, summary=summary)


def algebra_gimel(p: Params) -> Report:
    recs, bad, notes = [], [], []
    for n in parse_range(p.n, "n"):
        rep = eng.gimel_compare(n)
        for r in rep["rows"]:
            row = dict(r, n=n)
            recs.append(row)
            if not r["ok"]:
                bad.append(row)
        if rep["odd_nonvanishing"]:
            bad.append({"n": n, "odd_nonvanishing": rep["odd_nonvanishing"]})
        notes.append(f"n={n}: compared under {rep['normalization']}")
    return Report(command="algebra gimel", ok=not bad, records=recs, counterexamples=bad, notes=notes)


def algebra_forms(p: Params) -> Report:
    recs, bad = [], []
    for n in parse_range(p.n, "n"):
        alg = _algebra(p, n)
        row = {"n": n, "context": alg.ctx.describe(), "dimension": alg.closure_dimension(),
               "expected_dimension": alg.ctx.dim, "relation_failures": alg.check_relations()}
        try:
            sym = alg.check_form_symmetry(p.form)
            row.update(symmetry=sym, nondegenerate=alg.is_nondegenerate(alg.gram(p.form)))
            row["ok"] = (sym["ok"] and row["nondegenerate"] and not row["relation_failures"]
                         and row["dimension"] == row["expected_dimension"])
        except eng.FormUnavailable as exc:
            row.update(error=str(exc), ok=False)
        recs.append(row)
        if not row["ok"]:
            bad.append(row)
    return Report(command="algebra forms", ok=not bad, records=recs, counterexamples=bad)


# ---------------------------------------------------------------- combinatorics

def combinatorics_enum(p: Params) -> Report:
    kind = _kind(p)
    _require(p, "m")
    recs = []
    for n in parse_range(p.n, "n"):
        try:
            lams = enumerate_multipartitions(kind, p.m, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        recs += [{"n": n, "lambda": format_multipartition(lam), "standard_tableaux": count_standard_tableaux(lam)}
                 for lam in lams]
    return Report(command="combinatorics enum", ok=True, records=recs, summary={"count": len(recs)})


HANDLERS = {
    ("schur", "compute"): schur_compute,
    ("schur", "verify"): schur_verify,
    ("criteria", "check"): criteria_check,
    ("criteria", "scan"): criteria_scan,
    ("algebra", "gram"): algebra_gram,
    ("algebra", "semisimple"): algebra_semisimple,
    ("algebra", "gimel"): algebra_gimel,
    ("algebra", "forms"): algebra_forms,
    ("combinatorics", "enum"): combinatorics_enum,
}


def run(group: str, action: str, params: Params) -> Report:
    try:
        handler = HANDLERS[(group, action)]
    except KeyError:
        raise UsageError(f"unknown command {group} {action}") from None
    if params.jobs < 1:
        raise UsageError("--jobs must be positive")
    rep = handler(params)
    rep.params = params.model_dump(by_alias=True, exclude_none=True)
    return rep


# ---------------------------------------------------------------- HTTP

app = FastAPI(title="hcschur", version="0.1.0")


@app.get("/commands")
def list_commands():
    return {g: list(a) for g, a in COMMANDS.items()}


@app.post("/{group}/{action}", response_model=Report)
def run_endpoint(group: str, action: str, params: Params):
    if (group, action) not in HANDLERS:
        raise HTTPException(status_code=404, detail=f"unknown command {group} {action}")
    try:
        return run(group, action, params)
    except UsageError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
