"""Semisimplicity criteria: the P and Gamma polynomials, their evaluation at
roots of unity, and the integer predicates for the four quiver families.

Families and their parameter dictionaries (q^2 is a primitive root of the
given order, q = zeta_{2N} with N that order):

======  ==============  ==========================  =====================
family  order of q^2    Q_s                          weight of a parameter
======  ==============  ==========================  =====================
A1      e + 1           xi * q^(2 i_s)               L_i
C1      2e              q^(2 i_s - 1)                L_i
A2      2e + 1          q^(2 i_s)                    2^[i=0] L_i  (+ L_0 for kind s)
D2      2(e + 1)        q^(2 i_s)                    2^([i=0]+[i=e]) L_i
======  ==============  ==========================  =====================
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .combinatorics import norm_kind
from .exact_arith import (
    FactoredScalar,
    LaurentPoly,
    SpecializationPoint,
    specialize,
    vanishes_by_congruence,
)

FAMILIES = ("A1", "C1", "A2", "D2")
_E_MIN = {"A1": 2, "C1": 2, "A2": 1, "D2": 1}

_q = LaurentPoly.gen("q")


def _Q(i: int) -> LaurentPoly:
    return LaurentPoly.gen(f"Q{i}")


@dataclass(frozen=True)
class CriterionFactor:
    label: str
    poly: LaurentPoly

    @property
    def value(self) -> FactoredScalar:
        return FactoredScalar.from_poly(self.poly)


@dataclass(frozen=True)
class CriterionPolynomial:
    name: str
    kind: str
    n: int
    m: int
    factors: tuple[CriterionFactor, ...]

    def product(self) -> FactoredScalar:
        out = FactoredScalar(1)
        for f in self.factors:
            out = out * f.value
        return out


def _fac(label: str, p: LaurentPoly) -> CriterionFactor:
    return CriterionFactor(label, p)


def build_P(kind, n: int, m: int) -> CriterionPolynomial:
    """The displayed product, factor by factor (empty ranges give no factor)."""
    kind = norm_kind(kind)
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    fs: list[CriterionFactor] = []
    for t in range(1, n + 1):
        fs.append(_fac(f"q^{2*t}-1", _q ** (2 * t) - 1))
        if kind != "0":
            fs.append(_fac(f"q^{2*t}+1", _q ** (2 * t) + 1))
    for i in range(1, m + 1):
        Qi = _Q(i)
        for t in range(3 - n, n):
            fs.append(_fac(f"Q{i}^2-q^{-2*t}", Qi ** 2 - _q ** (-2 * t)))
        for t in range(1 - n, n + 1):
            fs.append(_fac(f"Q{i}^2-q^{-4*t}", Qi ** 2 - _q ** (-4 * t)))
    for i in range(1, m + 1):
        for ip in range(i + 1, m + 1):
            for t in range(1 - n, n):
                fs.append(_fac(f"Q{i}-Q{ip}*q^{-2*t}", _Q(i) - _Q(ip) * _q ** (-2 * t)))
                fs.append(_fac(f"Q{i}*Q{ip}-q^{-2*(t+1)}", _Q(i) * _Q(ip) - _q ** (-2 * (t + 1))))
    return CriterionPolynomial("P", kind, n, m, tuple(fs))


def build_Gamma(n: int, m: int) -> CriterionPolynomial:
    """prod over i = 0..m and k = 1-n..n of (q^(2k) Q_i + 1), with Q_0 = 1."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    fs = []
    for i in range(0, m + 1):
        Qi = LaurentPoly.const(1) if i == 0 else _Q(i)
        for k in range(1 - n, n + 1):
            name = f"q^{2*k}*Q{i}+1" if i else f"q^{2*k}+1"
            fs.append(_fac(name, _q ** (2 * k) * Qi + 1))
    return CriterionPolynomial("Gamma", "s", n, m, tuple(fs))


@dataclass
class Evaluation:
    nonzero: bool
    vanishing: list[str]
    fastpath_agrees: bool


def evaluate_at(cp: CriterionPolynomial, pt: SpecializationPoint) -> Evaluation:
    """Specialize every factor; cross-check the exponent-congruence shortcut."""
    vanishing = []
    fast_ok = True
    for f in cp.factors:
        if not f.poly.terms:
            vanishing.append(f.label)
            continue
        v = specialize(f.value, pt).vanishes
        fast = vanishes_by_congruence(f.poly, pt)
        if fast is not None and fast != v:
            fast_ok = False
        if v:
            vanishing.append(f.label)
    return Evaluation(not vanishing, vanishing, fast_ok)


def is_nonzero_at(cp: CriterionPolynomial, pt: SpecializationPoint) -> bool:
    return evaluate_at(cp, pt).nonzero


# ----------------------------------------------------------------------------
# quiver instances


class NotCovered(ValueError):
    """The weight lies outside the hypothesis of the family's criterion."""


def parse_weight(text: str) -> tuple[tuple[int, int], ...]:
    """``L1+L4``, ``2L0+L3``, ``2*L0`` or a node list ``1,4``."""
    text = text.strip().replace(" ", "")
    counts: dict[int, int] = {}
    if not text:
        return ()
    if "L" not in text and "Λ" not in text:
        for tok in text.split(","):
            counts[int(tok)] = counts.get(int(tok), 0) + 1
    else:
        for tok in text.split("+"):
            mt = re.fullmatch(r"(\d*)\*?[LΛ]_?(\d+)", tok)
            if not mt:
                raise ValueError(f"cannot parse weight term {tok!r}")
            k = int(mt.group(1) or 1)
            i = int(mt.group(2))
            counts[i] = counts.get(i, 0) + k
    return tuple(sorted((i, c) for i, c in counts.items() if c))


def format_weight(weight) -> str:
    if not weight:
        return "0"
    return "+".join(f"{c}L{i}" if c > 1 else f"L{i}" for i, c in weight)


@dataclass(frozen=True)
class QuiverInstance:
    family: str
    e: int
    n: int
    weight: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.e < _E_MIN[self.family]:
            raise ValueError(f"{self.family} needs e >= {_E_MIN[self.family]}")
        if self.n < 1:
            raise ValueError("n must be positive")
        w = tuple(sorted((int(i), int(c)) for i, c in self.weight if c))
        for i, c in w:
            if not 0 <= i <= self.e or c < 0:
                raise ValueError(f"node {i} outside 0..{self.e}")
        object.__setattr__(self, "weight", w)

    def mult(self, i: int) -> int:
        return dict(self.weight).get(i, 0)

    def kind_and_nodes(self) -> tuple[str, list[int]]:
        """The kind and the node indices i_1 <= ... <= i_m of the parameters."""
        e, fam = self.e, self.family
        nodes: list[int] = []
        if fam in ("A1", "C1"):
            for i, c in self.weight:
                nodes += [i] * c
            return "0", nodes
        if fam == "A2":
            c0 = self.mult(0)
            kind = "s" if c0 % 2 else "0"
            nodes += [0] * (c0 // 2)
            for i, c in self.weight:
                if i:
                    nodes += [i] * c
            return kind, nodes
        c0, ce = self.mult(0), self.mult(e)
        if c0 % 2 or ce % 2:
            raise NotCovered("D2 criterion needs even multiplicities at nodes 0 and e")
        nodes += [0] * (c0 // 2)
        for i, c in self.weight:
            if i not in (0, e):
                nodes += [i] * c
        nodes += [e] * (ce // 2)
        return "0", sorted(nodes)


def root_order(family: str, e: int) -> int:
    """Multiplicative order of q^2."""
    return {"A1": e + 1, "C1": 2 * e, "A2": 2 * e + 1, "D2": 2 * (e + 1)}[family]


def weight_to_specialization(inst: QuiverInstance) -> tuple[SpecializationPoint, str, int]:
    """Point (q = zeta_{2N}), kind and level for the family's dictionary."""
    kind, nodes = inst.kind_and_nodes()
    N2 = 2 * root_order(inst.family, inst.e)
    values = {"q": ("zeta", 1)}
    for s, i in enumerate(nodes, 1):
        if inst.family == "A1":
            values[f"Q{s}"] = ("xizeta", 2 * i)
        elif inst.family == "C1":
            values[f"Q{s}"] = ("zeta", 2 * i - 1)
        else:
            values[f"Q{s}"] = ("zeta", 2 * i)
    return SpecializationPoint.make(N2, **values), kind, len(nodes)


def _pairs_ok(nodes, n) -> bool:
    return all(abs(a - b) >= n for a, b in itertools.combinations(nodes, 2))


def predicate_A1(inst: QuiverInstance) -> bool:
    _, nodes = inst.kind_and_nodes()
    e, n = inst.e, inst.n
    return e >= n and all(n <= abs(a - b) <= e + 1 - n for a, b in itertools.combinations(nodes, 2))


def predicate_C1(inst: QuiverInstance) -> bool:
    _, nodes = inst.kind_and_nodes()
    e, n = inst.e, inst.n
    lo, hi = Fraction(n - 1, 2), e - Fraction(n - 1, 2)
    return all(lo <= i <= hi for i in nodes) and _pairs_ok(nodes, n)


def predicate_A2(inst: QuiverInstance) -> bool:
    _, nodes = inst.kind_and_nodes()
    e, n = inst.e, inst.n
    hi = e - Fraction(n - 2, 2)
    return all(n <= i <= hi for i in nodes) and _pairs_ok(nodes, n)


def predicate_D2(inst: QuiverInstance) -> bool:
    _, nodes = inst.kind_and_nodes()
    e, n = inst.e, inst.n
    return all(n <= i <= e - n for i in nodes) and _pairs_ok(nodes, n)


PREDICATES = {"A1": predicate_A1, "C1": predicate_C1, "A2": predicate_A2, "D2": predicate_D2}


# ----------------------------------------------------------------------------
# scans


@dataclass
class ScanRow:
    family: str
    e: int
    n: int
    weight: str
    kind: str
    m: int
    nodes: list[int]
    predicate: bool
    p_nonzero: bool
    vanishing: list[str]
    fastpath_agrees: bool
    gamma_nonzero: bool | None = None

    @property
    def agree(self) -> bool:
        return self.predicate == self.p_nonzero

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["agree"] = self.agree
        return d


@dataclass
class FlaggedCase:
    description: str
    family: str
    e: int
    weight: str
    n: int
    stated_verdict: bool
    predicate: bool
    p_nonzero: bool
    vanishing: list[str]

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    flagged: list[FlaggedCase] = field(default_factory=list)

    @property
    def disagreements(self) -> list[ScanRow]:
        return [r for r in self.rows if not r.agree]

    @property
    def fastpath_failures(self) -> list[ScanRow]:
        return [r for r in self.rows if not r.fastpath_agrees]

    def summary(self) -> dict:
        return {
            "instances": len(self.rows),
            "agreements": sum(r.agree for r in self.rows),
            "disagreements": len(self.disagreements),
            "skipped": len(self.skipped),
            "fastpath_failures": len(self.fastpath_failures),
            "flagged": len(self.flagged),
        }


def evaluate_instance(inst: QuiverInstance) -> ScanRow:
    pt, kind, m = weight_to_specialization(inst)
    ev = evaluate_at(build_P(kind, inst.n, m), pt)
    gamma = None
    if kind == "s":
        gamma = evaluate_at(build_Gamma(inst.n, m), pt).nonzero
    _, nodes = inst.kind_and_nodes()
    return ScanRow(inst.family, inst.e, inst.n, format_weight(inst.weight), kind, m, nodes,
                   PREDICATES[inst.family](inst), ev.nonzero, ev.vanishing, ev.fastpath_agrees, gamma)


def small_weights(e: int, max_support: int = 2, max_mult: int = 2) -> list[tuple[tuple[int, int], ...]]:
    """Weights supported on at most ``max_support`` nodes, multiplicities <= max_mult."""
    out = []
    for k in range(1, max_support + 1):
        for support in itertools.combinations(range(e + 1), k):
            for mults in itertools.product(range(1, max_mult + 1), repeat=k):
                out.append(tuple(zip(support, mults)))
    return out


# The worked example for A2 with e = 5 and weight L1 + L4 states
# semisimplicity exactly for n <= 2.
A2_EXAMPLE = {"family": "A2", "e": 5, "weight": ((1, 1), (4, 1)), "max_n": 2}


def equivalence_scan(family: str, e_range: Iterable[int], n_range: Iterable[int],
                     weights=None, jobs: int = 1) -> ScanReport:
    """Compare the family predicate with P at the dictionary point.

    Instances whose level is 0 are set aside in ``skipped`` (see
    ``level_zero_scan``), as are D2 weights whose multiplicity at node 0 or e is odd.
    """
    report = ScanReport()
    insts = []
    for e in e_range:
        ws = weights if weights is not None else small_weights(e)
        for w in ws:
            for n in n_range:
                try:
                    inst = QuiverInstance(family, e, n, w)
                    kind, nodes = inst.kind_and_nodes()
                except NotCovered as exc:
                    report.skipped.append({"family": family, "e": e, "n": n, "weight": format_weight(w), "reason": str(exc)})
                    continue
                except ValueError as exc:
                    report.skipped.append({"family": family, "e": e, "n": n, "weight": format_weight(tuple(w)), "reason": str(exc)})
                    continue
                if not nodes:
                    report.skipped.append({"family": family, "e": e, "n": n, "weight": format_weight(inst.weight),
                                           "reason": "level 0; see level_zero_scan"})
                    continue
                insts.append(inst)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            report.rows = list(ex.map(evaluate_instance, insts, chunksize=32))
    else:
        report.rows = [evaluate_instance(i) for i in insts]
    ns = list(n_range)
    if family == A2_EXAMPLE["family"] and A2_EXAMPLE["e"] in list(e_range):
        report.flagged = flagged_example(ns)
    return report


def flagged_example(n_values: Iterable[int]) -> list[FlaggedCase]:
    ex = A2_EXAMPLE
    out = []
    for n in n_values:
        inst = QuiverInstance(ex["family"], ex["e"], n, ex["weight"])
        row = evaluate_instance(inst)
        out.append(FlaggedCase(
            "A2 worked example: weight L1+L4, e=5, stated semisimple iff n <= 2",
            ex["family"], ex["e"], row.weight, n, n <= ex["max_n"], row.predicate, row.p_nonzero, row.vanishing))
    return out


def level_zero_scan(e_range: Iterable[int], n_range: Iterable[int]) -> list[ScanRow]:
    """Kind s with no cyclotomic parameters (weight L0) for A2 and D2.

    Both predicates are vacuous here (true for every n), while P has the
    factors q^(2t) -+ 1 which vanish once n reaches the order of -1 or 1.
    """
    rows = []
    for fam in ("A2", "D2"):
        for e in e_range:
            for n in n_range:
                pt = SpecializationPoint.make(2 * root_order(fam, e), q=("zeta", 1))
                ev = evaluate_at(build_P("s", n, 0), pt)
                gamma = evaluate_at(build_Gamma(n, 0), pt).nonzero
                rows.append(ScanRow(fam, e, n, "L0", "s", 0, [], True, ev.nonzero, ev.vanishing,
                                    ev.fastpath_agrees, gamma))
    return rows
