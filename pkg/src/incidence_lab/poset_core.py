"""Finite preordered sets.

Elements are opaque hashable labels with a fixed total indexing chosen at
construction; every deterministic ordering downstream (basis enumeration,
solution-space canonical forms, witness selection) derives from it.  The
relation is stored as one bitmask per element: bit j of ``rows[i]`` means
element i <= element j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAPreorder, TooLarge, UnknownLabel


@dataclass(frozen=True)
class Preorder:
    """An immutable finite preorder (reflexive + transitive relation)."""

    elements: tuple
    rows: tuple

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise NotAPreorder("duplicate labels", tuple(self.elements))

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, label) -> int:
        try:
            return self._index_map()[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def _index_map(self):
        m = getattr(self, "_imap", None)
        if m is None:
            m = {x: i for i, x in enumerate(self.elements)}
            object.__setattr__(self, "_imap", m)
        return m

    def le_idx(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def le(self, x, y) -> bool:
        return self.le_idx(self.index(x), self.index(y))

    def __repr__(self):
        pairs = [
            (self.elements[i], self.elements[j])
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self.le_idx(i, j)
        ]
        return f"Preorder({list(self.elements)!r}, {pairs!r})"


@dataclass(frozen=True)
class ComponentPartition:
    """Blocks of the comparability graph; disjoint, covering, deterministic."""

    blocks: tuple

    def block_of(self, label):
        for b in self.blocks:
            if label in b:
                return b
        raise UnknownLabel(label)


def _close(rows: list[int]) -> tuple:
    """Reflexive-transitive closure by Warshall on bitmask rows."""
    n = len(rows)
    for i in range(n):
        rows[i] |= 1 << i
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return tuple(rows)


def _validate(elements, rows) -> None:
    n = len(elements)
    for i in range(n):
        if not rows[i] >> i & 1:
            raise NotAPreorder("missing reflexive pair", (elements[i],))
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            if ri >> j & 1 and rows[j] & ~ri:
                k = next(
                    k for k in range(n) if rows[j] >> k & 1 and not ri >> k & 1
                )
                raise NotAPreorder(
                    "transitivity failure",
                    (elements[i], elements[j], elements[k]),
                )


def build_preorder(elements, pairs, auto_close: bool = False) -> Preorder:
    """Build a preorder from labels and related pairs.

    With ``auto_close`` the reflexive-transitive closure of ``pairs`` is
    taken; otherwise the pairs must already form a preorder (reflexive pairs
    included) and the first witness of failure is reported.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise NotAPreorder("duplicate labels", elements)
    idx = {x: i for i, x in enumerate(elements)}
    rows = [0] * len(elements)
    for x, y in pairs:
        if x not in idx:
            raise UnknownLabel(x)
        if y not in idx:
            raise UnknownLabel(y)
        rows[idx[x]] |= 1 << idx[y]
    if auto_close:
        return Preorder(elements, _close(rows))
    _validate(elements, rows)
    return Preorder(elements, tuple(rows))


def interval(P: Preorder, x, y) -> list:
    """All z with x <= z <= y, in element-index order; empty if x !<= y."""
    i, j = P.index(x), P.index(y)
    if not P.le_idx(i, j):
        return []
    return [
        P.elements[k] for k in range(P.n) if P.le_idx(i, k) and P.le_idx(k, j)
    ]


def connected_components(P: Preorder) -> ComponentPartition:
    """Partition into comparability-connected blocks (zig-zag closure)."""
    parent = list(range(P.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(P.n):
        for j in range(i + 1, P.n):
            if P.le_idx(i, j) or P.le_idx(j, i):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list] = {}
    for i in range(P.n):
        groups.setdefault(find(i), []).append(i)
    blocks = tuple(
        tuple(P.elements[i] for i in groups[r]) for r in sorted(groups)
    )
    return ComponentPartition(blocks)


@lru_cache(maxsize=256)
def basis_pairs_idx(P: Preorder) -> tuple:
    """Index pairs (i, j) with i <= j, lexicographic; the matrix-unit basis."""
    return tuple(
        (i, j) for i in range(P.n) for j in range(P.n) if P.le_idx(i, j)
    )


def enumerate_basis(P: Preorder) -> list:
    """Label pairs (x, y) with x <= y in deterministic lexicographic order."""
    return [(P.elements[i], P.elements[j]) for i, j in basis_pairs_idx(P)]


def is_partial_order(P: Preorder) -> bool:
    """True iff the preorder is antisymmetric (no nontrivial cycles)."""
    return all(
        not (P.le_idx(i, j) and P.le_idx(j, i))
        for i in range(P.n)
        for j in range(i + 1, P.n)
    )


@lru_cache(maxsize=256)
def component_index(P: Preorder) -> tuple:
    """component_index(P)[i] = index of the block containing element i."""
    comp = connected_components(P)
    out = [0] * P.n
    for bnum, block in enumerate(comp.blocks):
        for lbl in block:
            out[P.index(lbl)] = bnum
    return tuple(out)


def subpreorder(P: Preorder, labels) -> Preorder:
    """The induced preorder on a subset of elements, original labels kept."""
    labels = tuple(labels)
    idxs = [P.index(x) for x in labels]
    rows = []
    for a, i in enumerate(idxs):
        r = 0
        for b, j in enumerate(idxs):
            if P.le_idx(i, j):
                r |= 1 << b
        rows.append(r)
    return Preorder(labels, tuple(rows))


MAX_ENUMERATION_SIZE = 4


def enumerate_preorders(n: int) -> list[Preorder]:
    """All labeled preorders on elements "1".."n", each exactly once.

    Exhaustive filter over the 2^(n^2-n) reflexive relations, keeping the
    transitive ones, in ascending bitmask order.
    """
    if n < 1:
        raise TooLarge("need n >= 1")
    if n > MAX_ENUMERATION_SIZE:
        raise TooLarge(
            f"enumeration supported for n <= {MAX_ENUMERATION_SIZE}, got {n}"
        )
    elements = tuple(str(i) for i in range(1, n + 1))
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for mask in range(1 << len(offdiag)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(offdiag):
            if mask >> b & 1:
                rows[i] |= 1 << j
        if _is_transitive(rows, n):
            out.append(Preorder(elements, tuple(rows)))
    return out


def _is_transitive(rows, n: int) -> bool:
    for i in range(n):
        ri = rows[i]
        r = ri
        j = 0
        while ri:
            if ri & 1 and rows[j] & ~r:
                return False
            ri >>= 1
            j += 1
    return True
