"""Exact scalar arithmetic.

Sparse Laurent polynomials over the rationals in the variables
``q, Q1, ..., Qk, xi``, factored rational functions, formal square roots and
specialization to rational points or cyclotomic fields.

Monomials are packed into a single Python int: one biased 32-bit field per
variable, ``q`` in the most significant field and ``xi`` in the least.  With
that layout monomial multiplication is integer addition and integer
comparison is the lexicographic order on ``(q, Q1, ..., Qk, xi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

MAX_LEVEL = 14
NVARS = MAX_LEVEL + 2
_W = 32
_BIAS = 1 << (_W - 1)
_MASK = (1 << _W) - 1
ONE_MONO = sum(_BIAS << (_W * p) for p in range(NVARS))

XI = "xi"


def var_names(m: int = MAX_LEVEL) -> list[str]:
    return ["q"] + [f"Q{i}" for i in range(1, m + 1)] + [XI]


def _slot(name: str) -> int:
    """Bit-field index of a variable (q is the most significant)."""
    if name == "q":
        return NVARS - 1
    if name == XI:
        return 0
    if name.startswith("Q"):
        i = int(name[1:])
        if not 1 <= i <= MAX_LEVEL:
            raise ValueError(f"level index out of range: {name}")
        return NVARS - 1 - i
    raise ValueError(f"unknown variable {name!r}")


_SLOT_NAME = {_slot(v): v for v in var_names()}


def mono(exps: Mapping[str, int] | None = None) -> int:
    m = ONE_MONO
    for v, e in (exps or {}).items():
        if e:
            m += e << (_W * _slot(v))
    return m


def mono_exps(m: int) -> dict[str, int]:
    out = {}
    for p in range(NVARS - 1, -1, -1):
        e = ((m >> (_W * p)) & _MASK) - _BIAS
        if e:
            out[_SLOT_NAME[p]] = e
    return out


def mono_mul(a: int, b: int) -> int:
    return a + b - ONE_MONO


def mono_inv(a: int) -> int:
    return 2 * ONE_MONO - a


def mono_pow(a: int, k: int) -> int:
    return k * a - (k - 1) * ONE_MONO


def mono_str(m: int) -> str:
    parts = []
    for v, e in mono_exps(m).items():
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def _mono_min(monos: Iterable[int]) -> int:
    """Componentwise minimum of exponent vectors."""
    monos = list(monos)
    out = ONE_MONO
    for p in range(NVARS):
        sh = _W * p
        lo = min(((m >> sh) & _MASK) for m in monos) - _BIAS
        out += lo << sh
    return out


class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash", "_key")

    def __init__(self, terms: Mapping[int, Fraction] | None = None, _clean=False):
        if _clean:
            self.terms = terms
        else:
            self.terms = {}
            for m, c in (terms or {}).items():
                if c:
                    self.terms[m] = Fraction(c)
        self._hash = None
        self._key = None

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({ONE_MONO: Fraction(c)})

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "LaurentPoly":
        return cls({mono({name: exp}): Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coef=1) -> "LaurentPoly":
        return cls({mono(exps): Fraction(coef)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return LaurentPoly(t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            if not c:
                return LaurentPoly()
            return LaurentPoly({m: c * v for m, v in self.terms.items()}, _clean=True)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, Fraction] = {}
        one = ONE_MONO
        for mb, cb in b.items():
            off = mb - one
            for ma, ca in a.items():
                k = ma + off
                t[k] = t.get(k, 0) + ca * cb
        return LaurentPoly({m: c for m, c in t.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (m, c), = self.terms.items()
            return LaurentPoly({mono_pow(m, k): Fraction(1) / c ** (-k)}, _clean=True)
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, m: int, c=1) -> "LaurentPoly":
        """Multiply by the monomial ``c * m``."""
        c = Fraction(c)
        off = m - ONE_MONO
        return LaurentPoly({k + off: c * v for k, v in self.terms.items()}, _clean=True)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), reverse=True))
        return self._key

    def leading(self) -> tuple[int, Fraction]:
        m = max(self.terms)
        return m, self.terms[m]

    def degree_in(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of one variable."""
        sh = _W * _slot(name)
        es = [((m >> sh) & _MASK) - _BIAS for m in self.terms]
        return min(es), max(es)

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in mono_exps(m).items():
                v *= Fraction(values[name]) ** e
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in sorted(self.terms.items(), reverse=True):
            ms = mono_str(m)
            if ms == "1":
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            elif c == -1:
                out.append("-" + ms)
            else:
                out.append(f"{c}*{ms}")
        s = " + ".join(out)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def canonicalize_factor(p: LaurentPoly) -> tuple[Fraction, int, LaurentPoly]:
    """Split ``p`` as ``unit * monomial * canonical``.

    The monomial is the componentwise minimum of the exponents, so the
    canonical part is a genuine polynomial with no monomial divisor; it is
    then scaled so its lex-leading coefficient is 1.
    """
    if p.is_zero():
        raise ValueError("zero factor")
    m = _mono_min(p.terms)
    shifted = p.shift(mono_inv(m))
    lead_c = shifted.terms[max(shifted.terms)]
    canon = shifted * (1 / lead_c) if lead_c != 1 else shifted
    return lead_c, m, canon


_ONE_POLY = LaurentPoly.const(1)


class FactoredScalar:
    """``unit * monomial * prod(factor ** exp)`` with canonical factors.

    ``==`` decides equality of the represented rational functions.
    """

    __slots__ = ("unit", "mono", "factors")

    def __init__(self, unit=1, mono_: int = ONE_MONO, factors: Mapping[LaurentPoly, int] | None = None):
        self.unit = Fraction(unit)
        self.mono = mono_ if self.unit else ONE_MONO
        fac = {}
        if self.unit:
            for f, e in (factors or {}).items():
                if e:
                    fac[f] = fac.get(f, 0) + e
        self.factors = tuple(sorted(((f, e) for f, e in fac.items() if e), key=lambda fe: fe[0].sort_key()))

    # constructors
    @classmethod
    def const(cls, c) -> "FactoredScalar":
        return cls(c)

    @classmethod
    def gen(cls, name: str, exp: int = 1, coef=1) -> "FactoredScalar":
        return cls(coef, mono({name: exp}))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "FactoredScalar":
        if p.is_zero():
            return ZERO
        u, m, canon = canonicalize_factor(p)
        if canon == _ONE_POLY:
            return cls(u, m)
        return cls(u, m, {canon: 1})

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_monomial(self) -> bool:
        return not self.factors

    def _merge(self, other: "FactoredScalar", sign: int) -> "FactoredScalar":
        fac = dict(self.factors)
        for f, e in other.factors:
            fac[f] = fac.get(f, 0) + sign * e
        if sign > 0:
            return FactoredScalar(self.unit * other.unit, mono_mul(self.mono, other.mono), fac)
        return FactoredScalar(self.unit / other.unit, mono_mul(self.mono, mono_inv(other.mono)), fac)

    def __mul__(self, other):
        other = as_fs(other)
        if self.is_zero() or other.is_zero():
            return ZERO
        return self._merge(other, 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_fs(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return ZERO
        return self._merge(other, -1)

    def __rtruediv__(self, other):
        return as_fs(other) / self

    def inverse(self) -> "FactoredScalar":
        return ONE / self

    def __pow__(self, k: int):
        if self.is_zero():
            if k <= 0:
                raise ZeroDivisionError("division by zero")
            return ZERO
        return FactoredScalar(self.unit ** k, mono_pow(self.mono, k), {f: e * k for f, e in self.factors})

    def __neg__(self):
        return FactoredScalar(-self.unit, self.mono, dict(self.factors))

    def __add__(self, other):
        return fs_add(self, as_fs(other))

    __radd__ = __add__

    def __sub__(self, other):
        return fs_add(self, -as_fs(other))

    def __rsub__(self, other):
        return fs_add(as_fs(other), -self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FactoredScalar(other)
        if not isinstance(other, FactoredScalar):
            return NotImplemented
        return fs_eq(self, other)

    __hash__ = None

    def num_den(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Expanded numerator and denominator."""
        num = LaurentPoly({self.mono: self.unit}) if self.unit else LaurentPoly()
        den = _ONE_POLY
        pos = sorted((fe for fe in self.factors if fe[1] > 0), key=lambda fe: len(fe[0].terms))
        for f, e in pos:
            num = num * (f ** e)
        for f, e in self.factors:
            if e < 0:
                den = den * (f ** (-e))
        return num, den

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        v = self.unit
        for name, e in mono_exps(self.mono).items():
            v *= Fraction(values[name]) ** e
        for f, e in self.factors:
            fv = f.evaluate(values)
            if fv == 0:
                if e < 0:
                    raise ZeroDivisionError("pole")
                return Fraction(0)
            v *= fv ** e
        return v

    def structurally_equal(self, other: "FactoredScalar") -> bool:
        return self.unit == other.unit and self.mono == other.mono and self.factors == other.factors

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = [str(self.unit)]
        ms = mono_str(self.mono)
        if ms != "1":
            parts.append(ms)
        for f, e in self.factors:
            parts.append(f"({f})^{e}")
        return " * ".join(parts)

    __repr__ = __str__


ZERO = FactoredScalar(0)
ONE = FactoredScalar(1)


def as_fs(x) -> FactoredScalar:
    if isinstance(x, FactoredScalar):
        return x
    if isinstance(x, LaurentPoly):
        return FactoredScalar.from_poly(x)
    return FactoredScalar(Fraction(x))


def fs_mul(a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
    return a * b


def fs_div(a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
    return a / b


def fs_eq(a: FactoredScalar, b: FactoredScalar) -> bool:
    """Equality of rational functions by cross-multiplication.

    Common canonical factors are cancelled first; whatever is left is
    expanded and compared term by term.
    """
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    r = a._merge(b, -1)
    if not r.factors:
        return r.unit == 1 and r.mono == ONE_MONO
    num, den = r.num_den()
    return num == den


def fs_add(a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
    """Sum, returned with the expanded numerator as a single factor."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    den: dict[LaurentPoly, int] = {}
    for x in (a, b):
        for f, e in x.factors:
            if e < 0:
                den[f] = max(den.get(f, 0), -e)
    d = FactoredScalar(1, ONE_MONO, den)
    na, _ = (a * d).num_den()
    nb, _ = (b * d).num_den()
    return FactoredScalar.from_poly(na + nb) / d


def fs_sub(a: FactoredScalar, b: FactoredScalar) -> FactoredScalar:
    return fs_add(a, -b)


def binomial(c1, e1: Mapping[str, int], c2, e2: Mapping[str, int]) -> FactoredScalar:
    """The factored form of ``c1*m1 + c2*m2`` for two monomials."""
    return FactoredScalar.from_poly(LaurentPoly.monomial(e1, c1) + LaurentPoly.monomial(e2, c2))


# ----------------------------------------------------------------------------
# formal square roots


def _square_split(k: int) -> tuple[int, int]:
    """k = a^2 * b with b squarefree (k > 0); trial division."""
    a, b = 1, 1
    p = 2
    while p * p <= k:
        while k % (p * p) == 0:
            k //= p * p
            a *= p
        if k % p == 0:
            k //= p
            b *= p
        p += 1 if p == 2 else 2
    return a, b * k


class RadicalScalar:
    """``rational * sqrt(r1) * sqrt(r2) * ...``.

    On construction the product of the radicands is split into a square part,
    moved into ``rational``, and squarefree atoms: a signed squarefree
    integer, single variables with odd exponent and canonical factors with
    odd exponent.  The square root of a square is always taken as the
    canonical representative itself, which fixes one global sign convention.
    """

    __slots__ = ("rational", "radicands")

    def __init__(self, rational, radicands: Iterable[FactoredScalar] = ()):
        rational = as_fs(rational)
        total = ONE
        for r in radicands:
            total = total * as_fs(r)
        if rational.is_zero() or total.is_zero():
            self.rational, self.radicands = ZERO, ()
            return
        atoms: list[FactoredScalar] = []
        # unit
        u = total.unit
        sign = -1 if u < 0 else 1
        num, den = abs(u.numerator), u.denominator
        a, b = _square_split(num * den)
        pulled_unit = Fraction(a, den)
        if sign * b != 1:
            atoms.append(FactoredScalar(sign * b))
        # monomial
        pulled_mono = ONE_MONO
        for v, e in mono_exps(total.mono).items():
            pulled_mono = mono_mul(pulled_mono, mono({v: e // 2}))
            if e % 2:
                atoms.append(FactoredScalar.gen(v))
        pulled_fac = {}
        for f, e in total.factors:
            pulled_fac[f] = e // 2
            if e % 2:
                atoms.append(FactoredScalar(1, ONE_MONO, {f: 1}))
        self.rational = rational * FactoredScalar(pulled_unit, pulled_mono, pulled_fac)
        self.radicands = tuple(sorted(atoms, key=str))

    @classmethod
    def of(cls, x) -> "RadicalScalar":
        if isinstance(x, RadicalScalar):
            return x
        return cls(as_fs(x))

    def is_zero(self) -> bool:
        return self.rational.is_zero()

    def radicand(self) -> FactoredScalar:
        out = ONE
        for r in self.radicands:
            out = out * r
        return out

    def square(self) -> FactoredScalar:
        return self.rational ** 2 * self.radicand()

    def __mul__(self, other):
        other = RadicalScalar.of(other)
        return RadicalScalar(self.rational * other.rational, self.radicands + other.radicands)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RadicalScalar.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        # 1/sqrt(F) = sqrt(F)/F
        return RadicalScalar(self.rational / (other.rational * other.radicand()), self.radicands + other.radicands)

    def __neg__(self):
        out = RadicalScalar(ONE)
        out.rational, out.radicands = -self.rational, self.radicands
        return out

    def __pow__(self, k: int):
        out = RadicalScalar(ONE)
        base = self if k >= 0 else RadicalScalar(ONE) / self
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self):
        if not self.radicands:
            return str(self.rational)
        return f"{self.rational} * sqrt(" + " * ".join(f"[{r}]" for r in self.radicands) + ")"

    __repr__ = __str__


def rad_mul(a: RadicalScalar, b: RadicalScalar) -> RadicalScalar:
    return RadicalScalar.of(a) * RadicalScalar.of(b)


def rad_eq(a: RadicalScalar, b: RadicalScalar) -> bool:
    """Equal rational parts and equal squarefree radicand products."""
    a, b = RadicalScalar.of(a), RadicalScalar.of(b)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return fs_eq(a.rational, b.rational) and fs_eq(a.radicand(), b.radicand())


def rad_eq_squared(a: RadicalScalar, b: RadicalScalar) -> bool:
    """Sign-convention-free comparison: equal squares."""
    return fs_eq(RadicalScalar.of(a).square(), RadicalScalar.of(b).square())


# ----------------------------------------------------------------------------
# cyclotomic fields and specialization


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first, by recursive division."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact division")
        c //= lb
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact division")
    return out


class CyclotomicField:
    """Q(zeta_N) as Q[x]/(Phi_N); elements are coefficient tuples."""

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        self.phi = cyclotomic_poly(n)
        self.deg = len(self.phi) - 1
        # x^k mod Phi_N for k = 0..N-1
        table = []
        cur = [0] * self.deg
        cur[0] = 1
        for _ in range(n):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi[:-1])]
        self.table = table
        cls._cache[n] = self
        return self

    def zero(self):
        return (Fraction(0),) * self.deg

    def power(self, k: int, c=1):
        c = Fraction(c)
        return tuple(c * x for x in self.table[k % self.n])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mul(self, a, b):
        acc = [Fraction(0)] * self.deg
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    row = self.table[(i + j) % self.n]
                    xy = x * y
                    for t, r in enumerate(row):
                        if r:
                            acc[t] += xy * r
        return tuple(acc)

    @staticmethod
    def is_zero(a) -> bool:
        return not any(a)


@dataclass(frozen=True)
class Assignment:
    kind: str  # "rat" | "zeta" | "xizeta"
    value: object

    def __post_init__(self):
        if self.kind not in ("rat", "zeta", "xizeta"):
            raise ValueError(f"bad assignment kind {self.kind!r}")
        if self.kind == "rat" and Fraction(self.value) == 0:
            raise ValueError("parameters must be nonzero")


class SpecializationError(ValueError):
    pass


@dataclass(frozen=True)
class SpecializationPoint:
    """Values for q, Q1..Qm: rationals, zeta_N^a or xi*zeta_N^a."""

    order: int | None
    assign: tuple[tuple[str, Assignment], ...]
    _map: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def make(cls, order: int | None = None, **values) -> "SpecializationPoint":
        """``make(6, q=("zeta", 1), Q1=("xizeta", 2))`` or ``make(q=Fraction(2))``."""
        items = []
        for name, v in values.items():
            if name == XI:
                raise SpecializationError("xi is transcendental and cannot be assigned")
            _slot(name)
            if isinstance(v, Assignment):
                a = v
            elif isinstance(v, tuple):
                a = Assignment(*v)
            else:
                a = Assignment("rat", Fraction(v))
            items.append((name, a))
        pt = cls(order, tuple(sorted(items, key=lambda kv: -_slot(kv[0]))))
        pt._map.update(items)
        pt._validate()
        return pt

    def _validate(self):
        uses_zeta = any(a.kind != "rat" for _, a in self.assign)
        if uses_zeta and not self.order:
            raise SpecializationError("root-of-unity assignment needs an order N")
        if self.order is not None and self.order < 1:
            raise SpecializationError("order must be positive")
        if "q" in self._map:
            q = self._map["q"]
            if q.kind == "xizeta":
                raise SpecializationError("q cannot involve xi")
            if q.kind == "rat":
                v = Fraction(q.value)
                if v in (1, -1):
                    raise SpecializationError("q must differ from +1 and -1")
            else:
                K = self.field()
                a = int(q.value)
                for target in (K.power(0), K.power(0, -1)):
                    if K.power(a) == target:
                        raise SpecializationError("q must differ from +1 and -1")
                if K.power(2 * a) == K.power(0, -1):
                    raise SpecializationError("q + 1/q must be invertible")

    def field(self) -> CyclotomicField:
        return CyclotomicField(self.order or 1)

    def get(self, name: str) -> Assignment:
        try:
            return self._map[name]
        except KeyError:
            raise SpecializationError(f"variable {name} is not assigned") from None

    def monomial_image(self, m: int) -> tuple[Fraction, int, int]:
        """(rational coefficient, zeta exponent, xi exponent) of a monomial."""
        c, z, x = Fraction(1), 0, 0
        for name, e in mono_exps(m).items():
            if name == XI:
                x += e
                continue
            a = self.get(name)
            if a.kind == "rat":
                c *= Fraction(a.value) ** e
            else:
                z += int(a.value) * e
                if a.kind == "xizeta":
                    x += e
        return c, z, x


class CycloLaurent:
    """Element of Q(zeta_N)[xi, 1/xi]: xi-exponent -> field element."""

    __slots__ = ("K", "terms")

    def __init__(self, K: CyclotomicField, terms: dict[int, tuple] | None = None):
        self.K = K
        self.terms = {x: v for x, v in (terms or {}).items() if any(v)}

    @classmethod
    def one(cls, K):
        return cls(K, {0: K.power(0)})

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "CycloLaurent") -> "CycloLaurent":
        K = self.K
        out: dict[int, tuple] = {}
        for xa, va in self.terms.items():
            for xb, vb in other.terms.items():
                p = K.mul(va, vb)
                k = xa + xb
                out[k] = K.add(out[k], p) if k in out else p
        return CycloLaurent(K, out)

    def __eq__(self, other):
        return isinstance(other, CycloLaurent) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for x in sorted(self.terms, reverse=True):
            coeffs = " + ".join(f"{c}*z^{i}" for i, c in enumerate(self.terms[x]) if c)
            parts.append(f"({coeffs})" + (f"*xi^{x}" if x else ""))
        return " + ".join(parts)


def specialize_poly(p: LaurentPoly, pt: SpecializationPoint) -> CycloLaurent:
    K = pt.field()
    acc: dict[int, list] = {}
    for m, c in p.terms.items():
        r, z, x = pt.monomial_image(m)
        row = K.table[z % K.n]
        cur = acc.setdefault(x, [Fraction(0)] * K.deg)
        rc = r * c
        for t, v in enumerate(row):
            if v:
                cur[t] += rc * v
    return CycloLaurent(K, {x: tuple(v) for x, v in acc.items()})


def vanishes_by_congruence(p: LaurentPoly, pt: SpecializationPoint) -> bool | None:
    """Exponent-congruence zero test for polynomials whose xi-groups have at
    most two terms; ``None`` when the fast path does not apply."""
    N = pt.order or 1
    groups: dict[int, list] = {}
    for m, c in p.terms.items():
        r, z, x = pt.monomial_image(m)
        groups.setdefault(x, []).append((r * c, z % N))
    for terms in groups.values():
        if len(terms) == 1:
            return False
        if len(terms) > 2:
            return None
        (c1, z1), (c2, z2) = terms
        d = (z1 - z2) % N
        # c1 z^z1 + c2 z^z2 = 0  <=>  z^d = -c2/c1 with z^d rational
        if d == 0:
            ok = c1 + c2 == 0
        elif 2 * d == N:
            ok = c1 == c2
        else:
            ok = False
        if not ok:
            return False
    return True


@dataclass
class SpecializedValue:
    num: CycloLaurent
    den: CycloLaurent
    vanishes: bool
    vanishing_factors: list[str]

    def __eq__(self, other):
        if not isinstance(other, SpecializedValue):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)


def specialize(v: FactoredScalar, pt: SpecializationPoint) -> SpecializedValue:
    """Evaluate a factored scalar at a point, factor by factor."""
    K = pt.field()
    if v.is_zero():
        return SpecializedValue(CycloLaurent(K), CycloLaurent.one(K), True, ["0"])
    num = specialize_poly(LaurentPoly({v.mono: v.unit}, _clean=True), pt)
    den = CycloLaurent.one(K)
    vanishing = []
    for f, e in v.factors:
        fv = specialize_poly(f, pt)
        if fv.is_zero():
            if e < 0:
                raise SpecializationError(f"pole at specialization: factor {f}")
            vanishing.append(str(f))
        for _ in range(abs(e)):
            if e > 0:
                num = num * fv
            else:
                den = den * fv
    return SpecializedValue(num, den, bool(vanishing), vanishing)


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g
