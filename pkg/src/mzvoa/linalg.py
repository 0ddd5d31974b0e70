"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``key -> Fraction`` with no stored zeros.  Keys can be
any hashable, mutually comparable objects (ints, tuples of ints, Fock
monomials); pivots are always chosen as the smallest key so every result is
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[Hashable, Fraction]


def clean(vec: Mapping) -> Vector:
    return {k: Fraction(c) for k, c in vec.items() if c != 0}


def axpy(y: Vector, a: Fraction, x: Mapping) -> None:
    """In place ``y += a*x``."""
    if a == 0:
        return
    for k, c in x.items():
        v = y.get(k, 0) + a * c
        if v:
            y[k] = v
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally built, fully reduced row echelon basis of a span.

    ``rows`` maps pivot key -> row whose pivot coefficient is 1; no other row
    has a nonzero entry in that column.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: Dict[Hashable, Vector] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> Vector:
        r = clean(vec)
        for k in [k for k in r if k in self.rows]:
            c = r.get(k)
            if c:
                axpy(r, -c, self.rows[k])
        return r

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Add ``vec`` to the span; return False if it was already there."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def basis(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)


def rank(vectors: Iterable[Mapping]) -> int:
    return len(Echelon(vectors))


def solve(columns: Sequence[Mapping], target: Mapping) -> Optional[List[Fraction]]:
    """Find x with ``sum_j x[j] * columns[j] == target``, or None.

    Free variables are set to zero.
    """
    # Eliminate on augmented columns; tag j tracks the combination of inputs.
    ech: Dict[Hashable, Tuple[Vector, Vector]] = {}
    for j, col in enumerate(columns):
        vec = clean(col)
        comb: Vector = {j: Fraction(1)}
        vec, comb = _reduce_tracked(ech, vec, comb)
        if vec:
            p = min(vec)
            inv = 1 / vec[p]
            vec = {k: c * inv for k, c in vec.items()}
            comb = {k: c * inv for k, c in comb.items()}
            ech[p] = (vec, comb)
    rem, comb = _reduce_tracked(ech, clean(target), {})
    if rem:
        return None
    x = [Fraction(0)] * len(columns)
    for j, c in comb.items():
        x[j] = -c
    return x


def _reduce_tracked(ech, vec: Vector, comb: Vector):
    vec = dict(vec)
    comb = dict(comb)
    changed = True
    while changed:
        changed = False
        for k in sorted(k for k in vec if k in ech):
            c = vec.get(k)
            if c:
                row, rc = ech[k]
                axpy(vec, -c, row)
                axpy(comb, -c, rc)
                changed = True
    return vec, comb


def nullspace(columns: Sequence[Mapping]) -> List[List[Fraction]]:
    """Basis of ``{x : sum_j x[j] * columns[j] == 0}``."""
    ech: Dict[Hashable, Tuple[Vector, Vector]] = {}
    relations = Echelon()
    for j, col in enumerate(columns):
        vec, comb = _reduce_tracked(ech, clean(col), {j: Fraction(1)})
        if vec:
            p = min(vec)
            inv = 1 / vec[p]
            ech[p] = ({k: c * inv for k, c in vec.items()}, {k: c * inv for k, c in comb.items()})
        else:
            relations.add(comb)
    n = len(columns)
    return [[row.get(j, Fraction(0)) for j in range(n)] for row in relations.basis()]


def inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(matrix)
    cols = [{i: Fraction(matrix[i][j]) for i in range(n) if matrix[i][j] != 0} for j in range(n)]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        x = solve(cols, {i: Fraction(1)})
        if x is None:
            raise ValueError("matrix is singular")
        for j in range(n):
            out[j][i] = x[j]
    return out
