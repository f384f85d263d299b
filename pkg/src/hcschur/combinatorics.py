"""Partitions, multipartitions, standard tableaux and hook lengths.

Partitions are plain tuples of positive integers.  Strict components of a
multipartition are drawn in shifted position: row ``i`` occupies columns
``i .. i + mu_i - 1``, so its first box sits on the diagonal.  Every box
coordinate handed out by this module uses that convention.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence, Union

Label = Union[int, str]
KINDS = ("0", "s", "ss")
_KIND_ALIASES = {"0": "0", "zero": "0", "s": "s", "ss": "ss"}


def norm_kind(kind) -> str:
    try:
        return _KIND_ALIASES[str(kind)]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of 0, s, ss") from None


# ----------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of n, reverse-lexicographic (largest first)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def strict_partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All strict partitions of n, reverse-lexicographic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in strict_partitions(n - first, first - 1):
            out.append((first,) + rest)
    return tuple(out)


def odd_partitions(n: int) -> list[tuple[int, ...]]:
    return [p for p in partitions(n) if all(x % 2 for x in p)]


def is_partition(p: Sequence[int]) -> bool:
    return all(x > 0 for x in p) and all(a >= b for a, b in zip(p, p[1:]))


def is_strict(p: Sequence[int]) -> bool:
    return all(x > 0 for x in p) and all(a > b for a, b in zip(p, p[1:]))


def conjugate(p: Sequence[int]) -> tuple[int, ...]:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= j) for j in range(1, p[0] + 1))


def n_of(p: Sequence[int]) -> int:
    return sum(i * x for i, x in enumerate(p))


def _part(p, i):
    return p[i - 1] if 1 <= i <= len(p) else 0


def hook(lam: Sequence[int], i: int, j: int) -> int:
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"box ({i},{j}) outside diagram {tuple(lam)}")
    return gen_hook(lam, lam, i, j)


def gen_hook(lam: Sequence[int], mu: Sequence[int], i: int, j: int) -> int:
    """lam_i - i + mu'_j - j + 1."""
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"box ({i},{j}) outside diagram {tuple(lam)}")
    return _part(lam, i) - i + _part(conjugate(mu), j) - j + 1


def frobenius(lam: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(alpha | beta) with alpha_i = lam_i - i, beta_i = lam'_i - i."""
    lc = conjugate(lam)
    r = sum(1 for i, x in enumerate(lam, 1) if x >= i)
    return tuple(lam[i] - i - 1 for i in range(r)), tuple(lc[i] - i - 1 for i in range(r))


def from_frobenius(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    r = len(alpha)
    if len(beta) != r:
        raise ValueError("Frobenius lists must have equal length")
    rows = [alpha[i] + i + 1 for i in range(r)]
    cols = [beta[j] + j + 1 for j in range(r)]
    tail = []
    i = r + 1
    while True:
        k = sum(1 for c in cols if c >= i)
        if not k:
            break
        tail.append(k)
        i += 1
    return tuple(rows) + tuple(tail)


def double_partition(mu: Sequence[int]) -> tuple[int, ...]:
    """The partition with Frobenius symbol (mu_1..mu_l | mu_1-1..mu_l-1)."""
    if not is_strict(mu):
        raise ValueError(f"{tuple(mu)} is not strict")
    return from_frobenius(tuple(mu), tuple(x - 1 for x in mu))


def shifted_hook(mu: Sequence[int], i: int, j: int) -> int:
    """Hook of the shifted box (i, j), i <= j <= i + mu_i - 1.

    Equal to the ordinary hook of the double partition at (i, j + 1).
    """
    if not (1 <= i <= len(mu) and i <= j <= i + mu[i - 1] - 1):
        raise ValueError(f"box ({i},{j}) outside shifted diagram {tuple(mu)}")
    return hook(double_partition(mu), i, j + 1)


def shifted_boxes(mu: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, j) for i, x in enumerate(mu, 1) for j in range(i, i + x)]


# ----------------------------------------------------------------------------
# multipartitions


class BoxCoord(NamedTuple):
    row: int
    col: int
    comp: Label


def labels_for(kind: str, m: int) -> tuple[Label, ...]:
    kind = norm_kind(kind)
    if kind == "0":
        return tuple(range(1, m + 1))
    if kind == "s":
        return tuple(range(0, m + 1))
    return ("0-", "0+") + tuple(range(1, m + 1))


def is_strict_label(kind: str, label: Label) -> bool:
    return (kind == "s" and label == 0) or label in ("0-", "0+")


@dataclass(frozen=True)
class MultiPartition:
    kind: str
    m: int
    comps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", norm_kind(self.kind))
        object.__setattr__(self, "comps", tuple(tuple(c) for c in self.comps))
        labels = labels_for(self.kind, self.m)
        if len(self.comps) != len(labels):
            raise ValueError(f"kind {self.kind} level {self.m} needs {len(labels)} components, got {len(self.comps)}")
        for lab, c in zip(labels, self.comps):
            ok = is_strict(c) if is_strict_label(self.kind, lab) else is_partition(c)
            if not ok:
                raise ValueError(f"component {lab} = {c} has the wrong shape")

    @property
    def labels(self) -> tuple[Label, ...]:
        return labels_for(self.kind, self.m)

    @property
    def n(self) -> int:
        return sum(sum(c) for c in self.comps)

    def comp(self, label: Label) -> tuple[int, ...]:
        return self.comps[self.labels.index(label)]

    def is_strict_comp(self, label: Label) -> bool:
        return is_strict_label(self.kind, label)

    def row_cols(self, label: Label, i: int) -> range:
        c = self.comp(label)
        if self.is_strict_comp(label):
            return range(i, i + c[i - 1])
        return range(1, c[i - 1] + 1)

    def boxes(self) -> list[BoxCoord]:
        out = []
        for lab, c in zip(self.labels, self.comps):
            for i in range(1, len(c) + 1):
                for j in self.row_cols(lab, i):
                    out.append(BoxCoord(i, j, lab))
        return out

    def __contains__(self, box) -> bool:
        i, j, lab = box
        if lab not in self.labels:
            return False
        c = self.comp(lab)
        return 1 <= i <= len(c) and j in self.row_cols(lab, i)

    def with_comp(self, label: Label, new: tuple[int, ...]) -> "MultiPartition":
        comps = list(self.comps)
        comps[self.labels.index(label)] = tuple(x for x in new if x)
        return MultiPartition(self.kind, self.m, tuple(comps))

    def add_box(self, box: BoxCoord) -> "MultiPartition":
        c = list(self.comp(box.comp))
        if box.row == len(c) + 1:
            c.append(1)
        else:
            c[box.row - 1] += 1
        return self.with_comp(box.comp, tuple(c))

    def remove_box(self, box: BoxCoord) -> "MultiPartition":
        c = list(self.comp(box.comp))
        c[box.row - 1] -= 1
        return self.with_comp(box.comp, tuple(c))

    def __str__(self):
        return format_multipartition(self)


def format_multipartition(lam: MultiPartition) -> str:
    body = "|".join("(" + ",".join(map(str, c)) + ")" for c in lam.comps)
    return f"{lam.kind},{lam.m}: {body}"


_MP_RE = re.compile(r"^\s*(0|s|ss|zero)\s*,\s*(\d+)\s*:\s*(.*?)\s*$")


def parse_multipartition(text: str) -> MultiPartition:
    """Inverse of ``format_multipartition``; e.g. ``s,1: (2,1)|(1,1)``."""
    mt = _MP_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse multipartition {text!r}")
    kind, m, body = norm_kind(mt.group(1)), int(mt.group(2)), mt.group(3)
    comps = []
    for chunk in body.split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"bad component {chunk!r}")
        inner = chunk[1:-1].strip()
        comps.append(tuple(int(x) for x in inner.split(",")) if inner else ())
    return MultiPartition(kind, m, tuple(comps))


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Size vectors, first entry varying slowest and largest first."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for rest in _compositions(n - a, k - 1):
            yield (a,) + rest


def enumerate_multipartitions(kind, m: int, n: int) -> list[MultiPartition]:
    """All of the level-m multipartitions of n of the given kind."""
    kind = norm_kind(kind)
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    labels = labels_for(kind, m)
    out = []
    for sizes in _compositions(n, len(labels)):
        pools = [
            strict_partitions(s) if is_strict_label(kind, lab) else partitions(s)
            for lab, s in zip(labels, sizes)
        ]
        for combo in _product(pools):
            out.append(MultiPartition(kind, m, combo))
    return out


def _product(pools):
    if not pools:
        yield ()
        return
    for first in pools[0]:
        for rest in _product(pools[1:]):
            yield (first,) + rest


def add_rem_boxes(lam: MultiPartition) -> tuple[list[BoxCoord], list[BoxCoord]]:
    """Addable and removable boxes, in component then row order."""
    add, rem = [], []
    for lab, c in zip(lam.labels, lam.comps):
        ell = len(c)
        if lam.is_strict_comp(lab):
            for i in range(1, ell + 1):
                nxt = _part(c, i + 1)
                if i == 1 or c[i - 2] > c[i - 1] + 1:
                    add.append(BoxCoord(i, i + c[i - 1], lab))
                if i == ell or c[i - 1] - 1 > nxt:
                    rem.append(BoxCoord(i, i + c[i - 1] - 1, lab))
            if ell == 0 or c[-1] > 1:
                add.append(BoxCoord(ell + 1, ell + 1, lab))
        else:
            for i in range(1, ell + 2):
                if i == 1 or c[i - 2] > _part(c, i):
                    add.append(BoxCoord(i, _part(c, i) + 1, lab))
            for i in range(1, ell + 1):
                if i == ell or c[i - 1] > c[i]:
                    rem.append(BoxCoord(i, c[i - 1], lab))
    return add, rem


def diag_set(lam: MultiPartition) -> list[BoxCoord]:
    """Diagonal boxes (a, a) of the strict components."""
    out = []
    for lab, c in zip(lam.labels, lam.comps):
        if lam.is_strict_comp(lab):
            out.extend(BoxCoord(a, a, lab) for a in range(1, len(c) + 1))
    return out


# ----------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True)
class StandardTableau:
    """A filling of ``shape`` by 1..n; ``entries[b]`` for boxes in ``boxes`` order."""

    shape: MultiPartition
    filling: tuple[tuple[BoxCoord, int], ...]

    @property
    def n(self) -> int:
        return len(self.filling)

    def entry(self, box: BoxCoord) -> int:
        for b, k in self.filling:
            if b == box:
                return k
        raise KeyError(box)

    def box_of(self, k: int) -> BoxCoord:
        return self.boxes_in_order()[k - 1]

    def boxes_in_order(self) -> list[BoxCoord]:
        """t^{-1}(1), ..., t^{-1}(n)."""
        out = [None] * self.n
        for b, k in self.filling:
            out[k - 1] = b
        return out

    def restrict(self, k: int) -> MultiPartition:
        """The shape of the subtableau holding 1..k."""
        comps = {lab: [] for lab in self.shape.labels}
        for b, e in self.filling:
            if e <= k:
                rows = comps[b.comp]
                while len(rows) < b.row:
                    rows.append(0)
                rows[b.row - 1] += 1
        return MultiPartition(self.shape.kind, self.shape.m, tuple(tuple(comps[lab]) for lab in self.shape.labels))

    def rows(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Entries row by row for each component."""
        d = dict(self.filling)
        out = []
        for lab, c in zip(self.shape.labels, self.shape.comps):
            out.append(tuple(tuple(d[BoxCoord(i, j, lab)] for j in self.shape.row_cols(lab, i)) for i in range(1, len(c) + 1)))
        return tuple(out)

    def is_standard(self) -> bool:
        d = dict(self.filling)
        if sorted(d.values()) != list(range(1, self.n + 1)):
            return False
        for (i, j, lab), k in d.items():
            right = d.get(BoxCoord(i, j + 1, lab))
            below = d.get(BoxCoord(i + 1, j, lab))
            if (right is not None and right < k) or (below is not None and below < k):
                return False
        return True

    def __str__(self):
        return "|".join("(" + " / ".join(" ".join(map(str, r)) for r in comp) + ")" for comp in self.rows())


def _sorted_filling(shape: MultiPartition, filling) -> tuple:
    labels = shape.labels
    return tuple(sorted(filling, key=lambda bk: (labels.index(bk[0].comp), bk[0].row, bk[0].col)))


def tableau_from_rows(shape: MultiPartition, rows) -> StandardTableau:
    filling = []
    for lab, comp in zip(shape.labels, rows):
        for i, r in enumerate(comp, 1):
            for j, k in zip(shape.row_cols(lab, i), r):
                filling.append((BoxCoord(i, j, lab), k))
    t = StandardTableau(shape, _sorted_filling(shape, filling))
    if len(filling) != shape.n or not t.is_standard():
        raise ValueError("not a standard tableau of this shape")
    return t


@lru_cache(maxsize=4096)
def _tableau_chains(shape: MultiPartition) -> tuple[tuple[BoxCoord, ...], ...]:
    if shape.n == 0:
        return ((),)
    out = []
    _, rem = add_rem_boxes(shape)
    for b in rem:
        for chain in _tableau_chains(shape.remove_box(b)):
            out.append(chain + (b,))
    return tuple(out)


def standard_tableaux(lam: MultiPartition) -> Iterator[StandardTableau]:
    for chain in _tableau_chains(lam):
        yield StandardTableau(lam, _sorted_filling(lam, [(b, k) for k, b in enumerate(chain, 1)]))


def count_standard_tableaux(lam: MultiPartition) -> int:
    """Branching-rule count, independent of the chain enumeration."""
    return _count(lam)


@lru_cache(maxsize=None)
def _count(lam: MultiPartition) -> int:
    if lam.n == 0:
        return 1
    return sum(_count(lam.remove_box(b)) for b in add_rem_boxes(lam)[1])


def canonical_row_tableau(lam: MultiPartition) -> StandardTableau:
    """1..n inserted along rows, first component first."""
    filling, k = [], 0
    for b in lam.boxes():
        k += 1
        filling.append((b, k))
    return StandardTableau(lam, _sorted_filling(lam, filling))


def canonical_col_tableau(lam: MultiPartition) -> StandardTableau:
    """1..n inserted down columns, last component first."""
    filling, k = [], 0
    for lab in reversed(lam.labels):
        boxes = [b for b in lam.boxes() if b.comp == lab]
        for b in sorted(boxes, key=lambda b: (b.col, b.row)):
            k += 1
            filling.append((b, k))
    return StandardTableau(lam, _sorted_filling(lam, filling))


def diag_entries(t: StandardTableau) -> set[int]:
    return {t.entry(b) for b in diag_set(t.shape)}
