"""Schur elements of cyclotomic Hecke-Clifford superalgebras.

Several independent routes are provided:

* ``schur_recursive``: product over a tableau of q-function differences.
* ``schur_closed``: product of the Y and X factors (plus box radicals for
  kind 0).
* ``schur_hook_shape`` / ``schur_strict_shape``: cancellation-free products
  for a single hook component, resp. only the strict component nonempty.
* ``wan_wang_c``: the shifted-hook formula for strict partitions.

Each returns a ``SchurRecord`` tagged with the route that produced it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    BoxCoord,
    MultiPartition,
    StandardTableau,
    add_rem_boxes,
    canonical_col_tableau,
    conjugate,
    diag_set,
    hook,
    is_strict,
    n_of,
    shifted_boxes,
    shifted_hook,
)
from .exact_arith import ONE, FactoredScalar, RadicalScalar, fs_add
from .scalars import EPS, Q2P1, ParamContext, b_gap, content_radical, q, q_diff, residue

PATHS = ("recursive", "closed", "hook_shape", "strict_shape", "wan_wang")


@dataclass(frozen=True)
class SchurRecord:
    lam: MultiPartition
    value: RadicalScalar
    path: str
    context: ParamContext


def _ctx(lam: MultiPartition, ctx: ParamContext | None) -> ParamContext:
    if ctx is None:
        return ParamContext(lam.m, lam.kind)
    if ctx.kind != lam.kind or ctx.m != lam.m:
        raise ValueError("context does not match the multipartition")
    return ctx


def _check_kind(lam: MultiPartition):
    if lam.kind not in ("0", "s"):
        raise ValueError("Schur elements are implemented for kinds 0 and s only")


def _minus1(x: FactoredScalar) -> FactoredScalar:
    """x - 1."""
    return fs_add(x, FactoredScalar(-1))


def _plus1(x: FactoredScalar) -> FactoredScalar:
    return fs_add(x, ONE)


def _diff(x: FactoredScalar, y: FactoredScalar) -> FactoredScalar:
    return fs_add(x, -y)


# ----------------------------------------------------------------------------
# recursive route


class _DiffCache:
    """q_of(res a) - q_of(res b), keyed by (label, content) pairs."""

    def __init__(self, ctx: ParamContext):
        self.ctx = ctx
        self.cache: dict = {}

    def __call__(self, a: BoxCoord, b: BoxCoord) -> FactoredScalar:
        key = (a.comp, a.col - a.row, b.comp, b.col - b.row)
        v = self.cache.get(key)
        if v is None:
            v = q_diff(residue(a, self.ctx), residue(b, self.ctx))
            self.cache[key] = v
        return v


_diff_caches: dict = {}


def _diff_cache(ctx: ParamContext) -> _DiffCache:
    key = (ctx.kind, ctx.m, tuple((k, str(v)) for k, v in ctx.params.items()))
    c = _diff_caches.get(key)
    if c is None:
        c = _diff_caches[key] = _DiffCache(ctx)
    return c


def q_lambda(lam: MultiPartition, t: StandardTableau | None = None, ctx: ParamContext | None = None) -> FactoredScalar:
    """Product over the steps of t of Rem-differences over Add-differences."""
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    if t is None:
        t = canonical_col_tableau(lam)
    if t.shape != lam:
        raise ValueError("tableau has a different shape")
    dq = _diff_cache(ctx)
    diag = set(diag_set(lam)) if lam.kind == "s" else set()
    num_parts: list[FactoredScalar] = []
    den_parts: list[FactoredScalar] = []
    order = t.boxes_in_order()
    mu = MultiPartition(lam.kind, lam.m, tuple(() for _ in lam.comps))
    for alpha in order:
        add, rem = add_rem_boxes(mu)
        for beta in rem:
            if beta not in diag:
                num_parts.append(dq(alpha, beta))
        for beta in add:
            if beta != alpha:
                d = dq(alpha, beta)
                if d.is_zero():
                    raise ZeroDivisionError(f"vanishing denominator at box {beta}")
                den_parts.append(d)
        mu = mu.add_box(alpha)
    out = ONE
    for x in num_parts:
        out = out * x
    for x in den_parts:
        out = out / x
    return out


def _two_pow(k: int) -> FactoredScalar:
    return FactoredScalar(2) ** k


def _ceil_half(k: int) -> int:
    return -(-k // 2)


def schur_recursive(lam: MultiPartition, ctx: ParamContext | None = None, t: StandardTableau | None = None) -> SchurRecord:
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    inv = ONE / q_lambda(lam, t, ctx)
    if lam.kind == "0":
        val = RadicalScalar(inv)
        for b in lam.boxes():
            val = val * b_gap(residue(b, ctx))
    else:
        val = RadicalScalar(inv / _two_pow(_ceil_half(len(diag_set(lam)))))
    return SchurRecord(lam, val, "recursive", ctx)


# ----------------------------------------------------------------------------
# closed route


def Y_factor(lam: MultiPartition, c, ctx: ParamContext | None = None) -> FactoredScalar:
    """The Y factor of component c (c = 0 is the strict component)."""
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    mu = lam.comp(c)
    if not mu:
        return ONE
    if lam.is_strict_comp(c):
        return _two_pow(len(mu)) * _strict_core(mu)
    Q = ctx.Q(c)
    Q2 = Q ** 2
    ell = len(mu)
    out = ONE / q ** (2 * n_of(mu))
    for i in range(1, ell + 1):
        for ip in range(i + 1, ell + 1):
            out = out * _minus1(Q2 * q ** (2 * (mu[i - 1] - i + mu[ip - 1] - ip + 2)))
            out = out / _minus1(Q2 * q ** (2 * (2 - i - ip)))
    q2m1 = _minus1(q ** 2)
    for a in range(1, ell + 1):
        for b in range(1, mu[a - 1] + 1):
            out = out * _minus1(Q2 * q ** (2 * (b - a - ell + 1))) / _minus1(Q2 * q ** (4 * (b - a)))
            out = out * _minus1(q ** (2 * hook(mu, a, b))) / q2m1
    return out


def _comp_boxes(lam: MultiPartition, c) -> list[tuple[int, int]]:
    return [(b.row, b.col) for b in lam.boxes() if b.comp == c]


def X_factor(lam: MultiPartition, c1, c2, ctx: ParamContext | None = None) -> FactoredScalar:
    """The X factor of the ordered pair of components c1 < c2."""
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    labels = lam.labels
    if labels.index(c1) >= labels.index(c2):
        raise ValueError("X factor needs c1 < c2")
    if lam.is_strict_comp(c2):
        raise ValueError("second label of an X factor must be an ordinary component")
    Q1, Q2 = ctx.Q(c1), ctx.Q(c2)
    mu2 = lam.comp(c2)
    l2 = mu2[0] if mu2 else 0
    conj2 = conjugate(mu2)
    two_over = FactoredScalar(2) / Q2P1
    out = ONE
    for a, b in _comp_boxes(lam, c1):
        d = b - a
        for k in range(1, l2 + 1):
            s = k - conj2[k - 1]
            out = out * _diff(Q1 * q ** (2 * d), Q2 * q ** (2 * (s - 1)))
            out = out / _diff(Q1 * q ** (2 * d), Q2 * q ** (2 * s))
            out = out * _minus1(Q1 * Q2 * q ** (2 * (d + s)))
            out = out / _minus1(Q1 * Q2 * q ** (2 * (d + s + 1)))
        out = out * two_over * _minus1(Q1 / Q2 * q ** (2 * (d - l2))) * _minus1(Q1 * Q2 * q ** (2 * (d + l2 + 1)))
        out = out / (Q1 * q ** (2 * (d - l2)))
    for a, b in _comp_boxes(lam, c2):
        d = b - a
        out = out * two_over * _minus1(Q2 / Q1 * q ** (2 * d)) * _minus1(Q1 * Q2 * q ** (2 * (d + 1)))
        out = out / (Q2 * q ** (2 * d))
    return out


def closed_q_inverse(lam: MultiPartition, ctx: ParamContext | None = None) -> FactoredScalar:
    """Product of all Y and X factors."""
    ctx = _ctx(lam, ctx)
    labels = lam.labels
    out = ONE
    for c in labels:
        out = out * Y_factor(lam, c, ctx)
    for i, c1 in enumerate(labels):
        for c2 in labels[i + 1:]:
            out = out * X_factor(lam, c1, c2, ctx)
    return out


def schur_closed(lam: MultiPartition, ctx: ParamContext | None = None) -> SchurRecord:
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    yx = closed_q_inverse(lam, ctx)
    if lam.kind == "0":
        val = RadicalScalar(yx)
        for b in lam.boxes():
            val = val * content_radical(b, ctx)
    else:
        val = RadicalScalar(yx / _two_pow(_ceil_half(len(diag_set(lam)))))
    return SchurRecord(lam, val, "closed", ctx)


# ----------------------------------------------------------------------------
# cancellation-free special shapes


def hook_shape(u: int, n: int) -> tuple[int, ...]:
    if not 1 <= u <= n:
        raise ValueError("need 1 <= u <= n")
    return (u,) + (1,) * (n - u)


def schur_hook_shape(lam: MultiPartition, c: int, u: int, ctx: ParamContext | None = None,
                     literal_display: bool = False) -> SchurRecord:
    """Single hook component (u, 1^(n-u)) at label c >= 1, all others empty.

    For kind s the published display carries ``Q_c^2 q^{2k} + 1`` in the
    denominator, whereas cancelling the reduced Y factor against the reduced
    X factor leaves ``Q_c q^{2k} + 1``.  The cancelled form is used unless
    ``literal_display`` is set.
    """
    _check_kind(lam)
    ctx = _ctx(lam, ctx)
    n = lam.n
    if c not in lam.labels or lam.is_strict_comp(c):
        raise ValueError("c must be an ordinary component label")
    for lab in lam.labels:
        want = hook_shape(u, n) if lab == c else ()
        if lam.comp(lab) != want:
            raise ValueError("shape is not a single hook component")
    Qc = ctx.Q(c)
    two_over = FactoredScalar(2) / Q2P1
    out = ONE
    for k in range(u - n, u):
        for cp in range(1, lam.m + 1):
            if cp == c:
                continue
            Qp = ctx.Q(cp)
            out = out * two_over * _minus1(Qc / Qp * q ** (2 * k)) * _minus1(Qc * Qp * q ** (2 * (k + 1)))
            out = out / (Qc * q ** (2 * k))
    q2m1 = _minus1(q ** 2)
    out = out * _minus1(q ** (2 * n)) / q2m1
    for k in range(1, u):
        out = out * _minus1(q ** (2 * k)) / q2m1
    for k in range(1, n - u + 1):
        out = out * _minus1(q ** (2 * k)) / q2m1
    nl = n_of(hook_shape(u, n))
    tail = ONE
    for k in range(u - n + 1, u + 1):
        if k != 2 * u - n:
            tail = tail * _minus1(Qc ** 2 * q ** (2 * k))
    if lam.kind == "0":
        q2mq2 = EPS * Q2P1 / q
        den = q ** (2 * nl) * q2mq2 ** n * Qc * q ** (2 * u - n)
        for k in range(u - n + 1, u):
            den = den * Qc * q ** (2 * k)
        rad = RadicalScalar((-2 * EPS) ** n / den,
                            [_minus1(Qc ** 2 * q ** (4 * (u - n))), _minus1(Qc ** 2 * q ** (4 * u))])
        val = rad * (out * tail)
    else:
        den = q ** (2 * nl)
        for k in range(u - n + 1, u):
            base = Qc ** 2 if literal_display else Qc
            den = den * _plus1(base * q ** (2 * k))
        out = out * _minus1(Qc * q ** (2 * u)) / den * tail
        for k in range(u - n, u):
            out = out * 2 * _minus1(Qc * q ** (2 * k)) / (Q2P1 * Qc * q ** (2 * k))
        val = RadicalScalar(out)
    return SchurRecord(lam, val, "hook_shape", ctx)


def _strict_core(mu: tuple[int, ...]) -> FactoredScalar:
    """The Y factor of a strict component without its power of two."""
    ell = len(mu)
    ext = mu + (0,)
    num = ONE
    for i in range(ell + 1):
        for ip in range(i + 1, ell + 1):
            num = num * _minus1(q ** (2 * (ext[i] + ext[ip])))
    for i, j in shifted_boxes(mu):
        if j >= ell + 1:
            num = num * _minus1(q ** (2 * shifted_hook(mu, i, j)))
    den = q ** (2 * n_of(mu)) * _minus1(q ** 2) ** sum(mu)
    for i, j in shifted_boxes(mu):
        den = den * _plus1(q ** (2 * (j - i)))
    return num / den


def schur_strict_shape(lam: MultiPartition, ctx: ParamContext | None = None) -> SchurRecord:
    """Kind s with every ordinary component empty."""
    if lam.kind != "s":
        raise ValueError("strict-shape formula needs kind s")
    ctx = _ctx(lam, ctx)
    if any(lam.comp(c) for c in lam.labels if c != 0):
        raise ValueError("ordinary components must be empty")
    mu = lam.comp(0)
    out = _two_pow(len(mu) // 2) * _strict_core(mu)
    for c in range(1, lam.m + 1):
        Qc = ctx.Q(c)
        for a, b in shifted_boxes(mu):
            d = b - a
            out = out * 2 * _minus1(q ** (2 * d) / Qc) * _minus1(Qc * q ** (2 * (d + 1))) / (Q2P1 * q ** (2 * d))
    return SchurRecord(lam, RadicalScalar(out), "strict_shape", ctx)


def wan_wang_c(mu) -> SchurRecord:
    """Shifted-hook Schur element of a strict partition (level 0)."""
    mu = tuple(mu)
    if not is_strict(mu):
        raise ValueError(f"{mu} is not strict")
    n = sum(mu)
    num = _two_pow(n + len(mu) // 2)
    den = q ** (2 * n_of(mu)) * _minus1(q ** 2) ** n
    for i, j in shifted_boxes(mu):
        num = num * _minus1(q ** (2 * shifted_hook(mu, i, j)))
        den = den * _plus1(q ** (2 * (j - i)))
    lam = MultiPartition("s", 0, (mu,))
    return SchurRecord(lam, RadicalScalar(num / den), "wan_wang", ParamContext(0, "s"))
