"""The incidence algebra I(X, R) of a finite preorder.

Elements are sparse maps from comparable index pairs to nonzero scalars;
the defining support constraint (f(x,y) = 0 unless x <= y) is enforced at
construction and preserved by every operation.  All operations are pure and
elements are treated as immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import poset_core
from .errors import (
    NotComparable,
    NotInvertible,
    PreorderMismatch,
    RingMismatch,
)
from .exactla import SolutionSpace, make_reducer, nullspace, span_space
from .poset_core import Preorder, basis_pairs_idx, connected_components


@dataclass
class IncElement:
    """A finitely supported function on comparable pairs of ``preorder``.

    ``entries`` maps index pairs (i, j) with i <= j to nonzero scalars of
    ``ring``; zero entries are never stored.
    """

    preorder: Preorder
    ring: object
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        ring = self.ring
        P = self.preorder
        clean = {}
        for (i, j), v in self.entries.items():
            if not P.le_idx(i, j):
                raise NotComparable(P.elements[i], P.elements[j])
            if not ring.is_zero(v):
                clean[(i, j)] = v
        self.entries = clean

    def value_at(self, x, y):
        """f(x, y) by label; zero for pairs outside the support."""
        i, j = self.preorder.index(x), self.preorder.index(y)
        return self.entries.get((i, j), self.ring.zero())

    def items_by_label(self):
        P = self.preorder
        return [
            ((P.elements[i], P.elements[j]), v)
            for (i, j), v in sorted(self.entries.items())
        ]

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, IncElement)
            and self.preorder == other.preorder
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __repr__(self):
        terms = ", ".join(
            f"e[{x},{y}]*{self.ring.format(v)}" for (x, y), v in self.items_by_label()
        )
        return f"IncElement({terms or '0'})"


def _check_same(f: IncElement, g: IncElement):
    if f.preorder != g.preorder:
        raise PreorderMismatch("elements live on different preorders")
    if f.ring != g.ring:
        raise RingMismatch(f"ring mismatch: {f.ring} vs {g.ring}")


def element(P: Preorder, ring, label_entries) -> IncElement:
    """Build an element from ``{(x_label, y_label): scalar}``."""
    entries = {}
    for (x, y), v in label_entries.items():
        i, j = P.index(x), P.index(y)
        if not P.le_idx(i, j):
            raise NotComparable(x, y)
        entries[(i, j)] = ring.add(entries.get((i, j), ring.zero()), v)
    return IncElement(P, ring, entries)


def delta(P: Preorder, ring) -> IncElement:
    """The unity element (1 on every diagonal pair)."""
    one = ring.one()
    return IncElement(P, ring, {(i, i): one for i in range(P.n)})


def matrix_unit(P: Preorder, ring, x, y) -> IncElement:
    i, j = P.index(x), P.index(y)
    if not P.le_idx(i, j):
        raise NotComparable(x, y)
    return IncElement(P, ring, {(i, j): ring.one()})


def zeta(P: Preorder, ring) -> IncElement:
    """zeta(x, y) = 1 for every comparable pair."""
    one = ring.one()
    return IncElement(P, ring, {p: one for p in basis_pairs_idx(P)})


def add(f: IncElement, g: IncElement) -> IncElement:
    _check_same(f, g)
    ring = f.ring
    out = dict(f.entries)
    for k, v in g.entries.items():
        w = ring.add(out.get(k, ring.zero()), v)
        if ring.is_zero(w):
            out.pop(k, None)
        else:
            out[k] = w
    return IncElement(f.preorder, ring, out)


def sub(f: IncElement, g: IncElement) -> IncElement:
    return add(f, scale(g, g.ring.neg(g.ring.one())))


def scale(f: IncElement, c) -> IncElement:
    ring = f.ring
    if ring.is_zero(c):
        return IncElement(f.preorder, ring, {})
    return IncElement(
        f.preorder, ring, {k: ring.mul(c, v) for k, v in f.entries.items()}
    )


def convolve(f: IncElement, g: IncElement) -> IncElement:
    """(fg)(x,y) = sum over x <= z <= y of f(x,z) g(z,y)."""
    _check_same(f, g)
    ring = f.ring
    by_first: dict[int, list] = {}
    for (z, y), b in g.entries.items():
        by_first.setdefault(z, []).append((y, b))
    acc: dict = {}
    for (x, z), a in f.entries.items():
        for y, b in by_first.get(z, ()):
            k = (x, y)
            w = ring.add(acc.get(k, ring.zero()), ring.mul(a, b))
            if ring.is_zero(w):
                acc.pop(k, None)
            else:
                acc[k] = w
    return IncElement(f.preorder, ring, acc)


def lie_bracket(f: IncElement, g: IncElement) -> IncElement:
    """[f, g] = fg - gf."""
    return sub(convolve(f, g), convolve(g, f))


def second_commutator(f: IncElement, g: IncElement, h: IncElement) -> IncElement:
    """[[f, g], h]."""
    return lie_bracket(lie_bracket(f, g), h)


def diagonal(f: IncElement) -> IncElement:
    """Keep only the values at (x, x)."""
    return IncElement(
        f.preorder, f.ring, {k: v for k, v in f.entries.items() if k[0] == k[1]}
    )


def restrict(f: IncElement, x, y) -> IncElement:
    """f restricted to the interval [x, y]: keep entries (u,v) with
    x <= u and v <= y.  Empty whenever x !<= y (no pair can qualify)."""
    P = f.preorder
    i, j = P.index(x), P.index(y)
    return IncElement(
        P,
        f.ring,
        {
            (u, v): val
            for (u, v), val in f.entries.items()
            if P.le_idx(i, u) and P.le_idx(v, j)
        },
    )


def invert(f: IncElement) -> IncElement:
    """Convolution inverse, when every diagonal value is a unit.

    Works blockwise: mutually comparable elements (cycle classes) form full
    matrix blocks which are inverted densely; across classes the usual
    interval recursion applies.  Preorders with a singular cycle block are
    rejected even when all diagonal values are units.
    """
    P, ring = f.preorder, f.ring
    for i in range(P.n):
        if ring.is_zero(f.entries.get((i, i), ring.zero())):
            raise NotInvertible(P.elements[i], f"f({P.elements[i]},{P.elements[i]}) = 0")

    classes = _cycle_classes(P)
    cls_of = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            cls_of[i] = ci
    nc = len(classes)

    def cls_le(a: int, b: int) -> bool:
        return P.le_idx(classes[a][0], classes[b][0])

    def block(a: int, b: int, src) -> list:
        zero = ring.zero()
        return [
            [src.get((i, j), zero) for j in classes[b]] for i in classes[a]
        ]

    inv_diag = []
    for ci, cls in enumerate(classes):
        m = _mat_inv(block(ci, ci, f.entries), ring)
        if m is None:
            raise NotInvertible(
                P.elements[cls[0]],
                f"singular cycle block containing {P.elements[cls[0]]!r}",
            )
        inv_diag.append(m)

    g: dict = {}

    def put(a: int, b: int, mat) -> None:
        for ii, i in enumerate(classes[a]):
            for jj, j in enumerate(classes[b]):
                v = mat[ii][jj]
                if not ring.is_zero(v):
                    g[(i, j)] = v

    for b in range(nc):
        put(b, b, inv_diag[b])
        between = [a for a in range(nc) if a != b and cls_le(a, b)]
        for a in reversed(between):
            acc = [[ring.zero()] * len(classes[b]) for _ in classes[a]]
            for c in between:
                if c != a and cls_le(a, c) and cls_le(c, b):
                    acc = _mat_add(
                        acc,
                        _mat_mul(block(a, c, f.entries), _gblock(g, classes, a, c, b, ring), ring),
                        ring,
                    )
            acc = _mat_add(acc, _mat_mul(block(a, b, f.entries), inv_diag[b], ring), ring)
            res = _mat_mul(inv_diag[a], acc, ring)
            res = [[ring.neg(v) for v in row] for row in res]
            put(a, b, res)
    return IncElement(P, ring, g)


def _gblock(g, classes, a, c, b, ring):
    zero = ring.zero()
    return [[g.get((i, j), zero) for j in classes[b]] for i in classes[c]]


def mobius(P: Preorder, ring) -> IncElement:
    """The convolution inverse of zeta.  Exists exactly when every cycle
    class is a singleton (i.e. on partial orders)."""
    return invert(zeta(P, ring))


@lru_cache(maxsize=64)
def _cycle_classes(P: Preorder) -> tuple:
    """Classes of mutual comparability, each sorted, ordered by least index."""
    seen = set()
    classes = []
    for i in range(P.n):
        if i in seen:
            continue
        cls = tuple(
            j for j in range(P.n) if P.le_idx(i, j) and P.le_idx(j, i)
        )
        seen.update(cls)
        classes.append(cls)
    return tuple(classes)


def _mat_mul(a, b, ring):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[ring.zero()] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            v = a[i][k]
            if ring.is_zero(v):
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] = ring.add(oi[j], ring.mul(v, bk[j]))
    return out


def _mat_add(a, b, ring):
    return [
        [ring.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)
    ]


def _mat_inv(m, ring):
    """Gauss-Jordan inverse of a small dense matrix; None if singular."""
    n = len(m)
    a = [list(row) + [ring.one() if i == j else ring.zero() for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(
            (r for r in range(col, n) if not ring.is_zero(a[r][col])), None
        )
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = ring.div(ring.one(), a[col][col])
        a[col] = [ring.mul(inv, v) for v in a[col]]
        for r in range(n):
            if r != col and not ring.is_zero(a[r][col]):
                c = a[r][col]
                a[r] = [
                    ring.sub(x, ring.mul(c, y)) for x, y in zip(a[r], a[col])
                ]
    return [row[n:] for row in a]


def center_basis(P: Preorder, ring) -> list[IncElement]:
    """The component idempotents: one sum of diagonal units per connected
    component.  Their span is the centre of I(X, R)."""
    one = ring.one()
    out = []
    for block in connected_components(P).blocks:
        idxs = sorted(P.index(x) for x in block)
        out.append(IncElement(P, ring, {(i, i): one for i in idxs}))
    return out


# ---------------------------------------------------------------------------
# Unit structure constants

@lru_cache(maxsize=32)
def unit_tables(P: Preorder):
    """Products and double brackets of matrix units, by basis position.

    Returns ``(pairs, pos, mul, dbr)`` where ``mul[a][b]`` is the position
    of e_a e_b (or None) and ``dbr[(a, b, c)]`` maps positions to the
    integer coefficients of [[e_a, e_b], e_c]; only nonzero tables are
    stored.  Everything is ring-independent.
    """
    pairs = basis_pairs_idx(P)
    m = len(pairs)
    pos = {p: k for k, p in enumerate(pairs)}
    mul = [[None] * m for _ in range(m)]
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if j == k:
                mul[a][b] = pos[(i, l)]

    def bracket(a: int, b: int) -> dict:
        out: dict[int, int] = {}
        g = mul[a][b]
        if g is not None:
            out[g] = out.get(g, 0) + 1
        g = mul[b][a]
        if g is not None:
            out[g] = out.get(g, 0) - 1
        return {k: v for k, v in out.items() if v}

    br = [[bracket(a, b) for b in range(m)] for a in range(m)]
    dbr: dict = {}
    for a in range(m):
        bra = br[a]
        for b in range(m):
            inner = bra[b]
            if not inner:
                continue
            for c in range(m):
                acc: dict[int, int] = {}
                for u, cu in inner.items():
                    for g, cg in br[u][c].items():
                        w = acc.get(g, 0) + cu * cg
                        if w:
                            acc[g] = w
                        elif g in acc:
                            del acc[g]
                if acc:
                    dbr[(a, b, c)] = acc
    return pairs, pos, mul, dbr


def element_to_coords(f: IncElement) -> dict:
    """Coordinates of an element w.r.t. the basis-position indexing."""
    _, pos, _, _ = unit_tables(f.preorder)
    return {pos[p]: v for p, v in f.entries.items()}


def element_from_coords(P: Preorder, ring, coords: dict) -> IncElement:
    pairs = basis_pairs_idx(P)
    return IncElement(P, ring, {pairs[k]: v for k, v in coords.items()})


@lru_cache(maxsize=32)
def second_commutator_span(P: Preorder, ring) -> SolutionSpace:
    """Canonical basis of span{[[e_a, e_b], e_c]} as element coordinates."""
    pairs, _, _, dbr = unit_tables(P)
    m = len(pairs)
    vectors = []
    for (a, b, c), val in sorted(dbr.items()):
        if a < b:  # [[e_b, e_a], e_c] is the negative; same span
            vectors.append({g: ring.from_int(k) for g, k in val.items()})
    labels = tuple(
        (P.elements[i], P.elements[j]) for i, j in pairs
    )
    return span_space(vectors, labels, ring)


@dataclass
class SpadeResult:
    """The double-commutator annihilator and whether it equals the centre."""

    space: SolutionSpace
    equals_center: bool


def spade_annihilator(P: Preorder, ring) -> SpadeResult:
    """Solve {a : [[a, x], y] = 0 for all x, y} over the matrix-unit basis
    and compare with the span of the component idempotents."""
    pairs, _, _, dbr = unit_tables(P)
    m = len(pairs)
    red = make_reducer(ring)
    seen: set = set()
    for b in range(m):
        for c in range(m):
            rows: dict[int, dict[int, int]] = {}
            for g in range(m):
                val = dbr.get((g, b, c))
                if not val:
                    continue
                for out_pos, k in val.items():
                    rows.setdefault(out_pos, {})[g] = k
            for out_pos in sorted(rows):
                row = rows[out_pos]
                key = tuple(sorted(row.items()))
                if key in seen:
                    continue
                seen.add(key)
                red.add_row({g: ring.from_int(k) for g, k in row.items()})
    labels = tuple((P.elements[i], P.elements[j]) for i, j in pairs)
    space = nullspace(red, m, labels, ring)
    centre = span_space(
        [element_to_coords(z) for z in center_basis(P, ring)], labels, ring
    )
    equals = space.dimension == centre.dimension and all(
        centre.contains(v) for v in space.vectors
    )
    return SpadeResult(space=space, equals_center=equals)
