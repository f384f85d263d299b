"""Residues, the q-function, the b-pair and deformed quantum integers."""
from __future__ import annotations

from dataclasses import dataclass, field

from .combinatorics import BoxCoord, Label, StandardTableau, labels_for, norm_kind
from .exact_arith import (
    ONE,
    FactoredScalar,
    LaurentPoly,
    RadicalScalar,
    as_fs,
    fs_add,
)

q = FactoredScalar.gen("q")
_qp = LaurentPoly.gen("q")
Q2P1 = FactoredScalar.from_poly(_qp ** 2 + 1)  # q^2 + 1
EPS = FactoredScalar.from_poly(_qp - _qp ** -1)  # q - 1/q


@dataclass(frozen=True)
class ParamContext:
    """Level, kind and the cyclotomic parameters attached to each label.

    Strict labels carry the fixed constants (1 for the strict component,
    -1 / +1 for the two strict components of kind ss); ordinary labels
    default to the generic variables Q1..Qm.
    """

    m: int
    kind: str = "0"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", norm_kind(self.kind))
        p = {}
        for lab in labels_for(self.kind, self.m):
            if lab == 0 or lab == "0+":
                p[lab] = ONE
            elif lab == "0-":
                p[lab] = FactoredScalar(-1)
            else:
                p[lab] = as_fs(self.params.get(lab, FactoredScalar.gen(f"Q{lab}")))
        object.__setattr__(self, "params", p)

    def Q(self, label: Label) -> FactoredScalar:
        return self.params[label]

    @property
    def eps(self) -> FactoredScalar:
        return EPS


def q_of(iota) -> FactoredScalar:
    """2(q*iota + 1/(q*iota)) / (q + 1/q) = 2(q^2 iota^2 + 1) / ((q^2 + 1) iota)."""
    iota = as_fs(iota)
    num = fs_add(q ** 2 * iota ** 2, ONE)
    return 2 * num / (Q2P1 * iota)


def q_diff(i1, i2) -> FactoredScalar:
    """q_of(i1) - q_of(i2) in the factored form 2(i1-i2)(q^2 i1 i2 - 1)/((q^2+1) i1 i2)."""
    i1, i2 = as_fs(i1), as_fs(i2)
    d = fs_add(i1, -i2)
    if d.is_zero():
        return d
    return 2 * d * fs_add(q ** 2 * i1 * i2, FactoredScalar(-1)) / (Q2P1 * i1 * i2)


@dataclass(frozen=True)
class QuadraticSurd:
    """a + b * sqrt(D)."""

    a: FactoredScalar
    b: FactoredScalar
    D: FactoredScalar

    def conj(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.D)

    def __mul__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        if not self.D == other.D:
            raise ValueError("surds with different radicands")
        a = fs_add(self.a * other.a, self.b * other.b * self.D)
        b = fs_add(self.a * other.b, other.a * self.b)
        return QuadraticSurd(a, b, self.D)

    def __sub__(self, other: "QuadraticSurd") -> RadicalScalar | FactoredScalar:
        """Difference; only defined when the rational parts cancel or the radical does."""
        if not self.D == other.D:
            raise ValueError("surds with different radicands")
        a = fs_add(self.a, -other.a)
        b = fs_add(self.b, -other.b)
        if a.is_zero():
            return RadicalScalar(b, [self.D])
        if b.is_zero():
            return a
        raise ValueError("difference is not a pure radical")

    def rational(self) -> FactoredScalar | None:
        return self.a if self.b.is_zero() else None


def q_radicand(iota) -> FactoredScalar:
    """q_of(iota)^2/4 - 1 = (iota^2 - 1)(q^4 iota^2 - 1) / ((q^2+1)^2 iota^2)."""
    iota = as_fs(iota)
    m1 = FactoredScalar(-1)
    return fs_add(iota ** 2, m1) * fs_add(q ** 4 * iota ** 2, m1) / (Q2P1 ** 2 * iota ** 2)


def b_pm(iota, sign: int) -> QuadraticSurd:
    """q_of(iota)/2 +- sqrt(q_of(iota)^2/4 - 1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    half = q_of(iota) / 2
    return QuadraticSurd(half, FactoredScalar(sign), q_radicand(iota))


def b_gap(iota) -> RadicalScalar:
    """b_-(iota) - b_+(iota) = -2 sqrt(q_of(iota)^2/4 - 1)."""
    return b_pm(iota, -1) - b_pm(iota, 1)


def quantum_int(t: int, Ql) -> FactoredScalar:
    """(Q q^{2t} - Q^{-1} q^{-2t}) / (q^2 - q^{-2})."""
    Ql = as_fs(Ql)
    den = EPS * Q2P1 / q  # q^2 - q^-2
    return fs_add(Ql * q ** (2 * t), -(Ql.inverse() * q ** (-2 * t))) / den


def residue(box: BoxCoord, ctx: ParamContext) -> FactoredScalar:
    i, j, lab = box
    return ctx.Q(lab) * q ** (2 * (j - i))


def residue_seq(t: StandardTableau, ctx: ParamContext) -> list[FactoredScalar]:
    return [residue(b, ctx) for b in t.boxes_in_order()]


def content_radical(box: BoxCoord, ctx: ParamContext) -> RadicalScalar:
    """-2 eps sqrt([b-a+1]_c [b-a]_c) for the box (a, b, c)."""
    a, b, lab = box
    Ql = ctx.Q(lab)
    return RadicalScalar(-2 * EPS, [quantum_int(b - a + 1, Ql), quantum_int(b - a, Ql)])
