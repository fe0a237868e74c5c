"""Exact incremental Gaussian elimination and canonical solution spaces.

Rows are sparse ``{column: value}`` dicts.  Over the rationals, rows are
kept as integer vectors (scaled by the lcm of denominators, gcd-stripped
after every elimination) so the hot path never touches ``Fraction``
arithmetic; over F_p everything stays a small residue.  The finalized
reduced row echelon form is unique for a given row space, which is what
makes every solution-space basis bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .scalars import PrimeField, Rationals


class _QQReducer:
    """Incremental RREF over Q with fraction-free integer rows."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}
        self._final = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _intify(self, row) -> dict[int, int]:
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out = {}
        for c, v in row.items():
            iv = int(v * den)
            if iv:
                out[c] = iv
        return _strip(out)

    def add_row(self, row) -> bool:
        """Reduce ``row`` against the current pivots; returns True if the
        rank grew (row was independent)."""
        self._final = None
        row = self._intify(row)
        pivots = self.pivots
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                pivots[c] = row
                return True
            a, b = row[c], p[c]
            g = gcd(a, b)
            am, bm = a // g, b // g
            new = {k: bm * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - am * v
                if w:
                    new[k] = w
                elif k in new:
                    del new[k]
            row = _strip(new)
        return False

    def rref_rows(self):
        """Finalized RREF as ``[(pivot_col, {col: Fraction})]``, pivot = 1."""
        if self._final is None:
            pivots = {c: dict(r) for c, r in self.pivots.items()}
            for c in sorted(pivots, reverse=True):
                p = pivots[c]
                for c2, r in pivots.items():
                    if c2 == c or c not in r:
                        continue
                    a, b = r[c], p[c]
                    g = gcd(a, b)
                    am, bm = a // g, b // g
                    new = {k: bm * v for k, v in r.items()}
                    for k, v in p.items():
                        w = new.get(k, 0) - am * v
                        if w:
                            new[k] = w
                        elif k in new:
                            del new[k]
                    new = _strip(new)
                    if new[c2] < 0:
                        new = {k: -v for k, v in new.items()}
                    pivots[c2] = new
            self._final = [
                (c, {k: Fraction(v, pivots[c][c]) for k, v in pivots[c].items()})
                for c in sorted(pivots)
            ]
        return self._final


class _FpReducer:
    """Incremental RREF over F_p; pivot rows are stored pivot-normalized."""

    def __init__(self, p: int):
        self.p = p
        self.pivots: dict[int, dict[int, int]] = {}
        self._final = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_row(self, row) -> bool:
        self._final = None
        p = self.p
        row = {c: v % p for c, v in row.items() if v % p}
        pivots = self.pivots
        while row:
            c = min(row)
            pr = pivots.get(c)
            if pr is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                return True
            a = row[c]
            new = {}
            for k in row.keys() | pr.keys():
                w = (row.get(k, 0) - a * pr.get(k, 0)) % p
                if w:
                    new[k] = w
            row = new
        return False

    def rref_rows(self):
        if self._final is None:
            p = self.p
            pivots = {c: dict(r) for c, r in self.pivots.items()}
            for c in sorted(pivots, reverse=True):
                pr = pivots[c]
                for c2, r in pivots.items():
                    if c2 == c or c not in r:
                        continue
                    a = r[c]
                    new = {}
                    for k in r.keys() | pr.keys():
                        w = (r.get(k, 0) - a * pr.get(k, 0)) % p
                        if w:
                            new[k] = w
                    pivots[c2] = new
            self._final = [(c, pivots[c]) for c in sorted(pivots)]
        return self._final


def make_reducer(ring):
    if isinstance(ring, Rationals):
        return _QQReducer()
    if isinstance(ring, PrimeField):
        return _FpReducer(ring.p)
    raise TypeError(f"unsupported ring: {ring!r}")


def _strip(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def reduce_vector(vec: dict, rref, ring) -> dict:
    """Canonical residual of ``vec`` modulo the row space given by ``rref``
    (as returned by ``rref_rows``).  Empty residual means membership."""
    residual = {c: v for c, v in vec.items() if not ring.is_zero(v)}
    for c, row in rref:
        if c not in residual:
            continue
        coef = residual[c]
        for k, v in row.items():
            w = ring.sub(residual.get(k, ring.zero()), ring.mul(coef, v))
            if ring.is_zero(w):
                residual.pop(k, None)
            else:
                residual[k] = w
    return residual


@dataclass
class SolutionSpace:
    """Canonical basis of a linear subspace of R^keys.

    ``vectors`` are the unique RREF rows of the subspace (pivot entries 1,
    zeros above and below pivots), sorted by pivot column; two independent
    computations of the same subspace produce identical bases.
    """

    keys: tuple
    ring: object
    vectors: list = field(default_factory=list)
    pivot_cols: tuple = ()

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def membership(self, vec: dict):
        """(is_member, canonical residual) for a coordinate vector."""
        residual = reduce_vector(vec, list(zip(self.pivot_cols, self.vectors)), self.ring)
        return (not residual, residual)

    def contains(self, vec: dict) -> bool:
        return self.membership(vec)[0]


def span_space(vectors, keys, ring) -> SolutionSpace:
    """Canonical basis of the span of the given coordinate vectors."""
    red = make_reducer(ring)
    for v in vectors:
        red.add_row(v)
    rows = red.rref_rows()
    return SolutionSpace(
        keys=tuple(keys),
        ring=ring,
        vectors=[r for _, r in rows],
        pivot_cols=tuple(c for c, _ in rows),
    )


def nullspace(reducer, ncols: int, keys, ring) -> SolutionSpace:
    """Canonical basis of the nullspace of the rows fed to ``reducer``."""
    rows = reducer.rref_rows()
    piv = {c for c, _ in rows}
    vecs = []
    one = ring.one()
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: one}
        for c, row in rows:
            if f in row:
                v[c] = ring.neg(row[f])
        vecs.append(v)
    return span_space(vecs, keys, ring)


def spaces_equal(a: SolutionSpace, b: SolutionSpace) -> bool:
    """Equality as subspaces: equal dimension plus mutual membership."""
    if a.dimension != b.dimension:
        return False
    return all(b.contains(v) for v in a.vectors) and all(
        a.contains(v) for v in b.vectors
    )


AUG = 1 << 60  # augmented (right-hand-side) column; must sort after all real columns


def affine_solve(rows_with_rhs, ring):
    """Particular solution of ``A x = b``.

    ``rows_with_rhs`` yields ``(coeff_row, rhs)`` pairs.  Returns a sparse
    solution dict (free variables pinned to zero, so the output is
    deterministic), or ``None`` when the system is infeasible.
    """
    red = make_reducer(ring)
    for coeffs, rhs in rows_with_rhs:
        row = dict(coeffs)
        if not ring.is_zero(rhs):
            row[AUG] = ring.neg(rhs)
        red.add_row(row)
    rows = red.rref_rows()
    sol = {}
    for c, row in rows:
        if c == AUG:
            return None
        aug = row.get(AUG)
        if aug is not None:
            sol[c] = ring.neg(aug)
    return sol
