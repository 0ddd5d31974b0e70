"""Mathieu-Zhao analysis on finite-dimensional commutative algebras over Q.

Elements are tuples of Fractions (coordinates in the algebra's basis).

Eventual membership.  For ``a`` in an algebra of dimension ``n`` the minimal
polynomial ``mu`` of ``a`` has degree ``e <= n``, so every sequence
``s_t = pi(b a^t c)`` (``pi`` the linear projection onto ``A/U``) obeys the
linear recurrence with characteristic polynomial ``mu``.  Write
``mu = X^k q`` with ``q(0) != 0``: the ``X^k`` part only influences indices
``t < k <= n`` and the ``q`` part is invertible, so an eventually-zero
sequence is zero for all ``t >= n``.  Conversely ``e <= n`` consecutive zeros
propagate forever.  Checking ``t in [n, 2n+1]`` therefore decides
"``s_t = 0`` for all large ``t``" exactly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .verdict import Verdict, inconclusive, proved, refuted

Vec = Tuple[Fraction, ...]

GRID_VALUES = (-1, 0, 1, 2)


class AlgebraError(ValueError):
    """Structure constants violate commutativity, associativity or the unit law."""

    def __init__(self, message, pair: Optional[Tuple[int, int]] = None, unit: bool = False):
        super().__init__(message)
        self.pair = pair
        self.unit = unit


def _vec(xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def _dict(v: Sequence) -> Dict[int, Fraction]:
    return {i: c for i, c in enumerate(v) if c}


def _from_dict(d: Dict[int, Fraction], n: int) -> Vec:
    return tuple(d.get(i, Fraction(0)) for i in range(n))


class FinDimAlgebra:
    """Commutative associative unital algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``e_i * e_j``.  Commutativity,
    associativity and the unit law are checked on all basis elements.
    """

    def __init__(self, table, unit, labels: Optional[Sequence[str]] = None, validate: bool = True):
        self.dim = n = len(table)
        self.table = [[_vec(table[i][j]) for j in range(n)] for i in range(n)]
        self.unit = _vec(unit)
        self.labels = list(labels) if labels else [f"e{i + 1}" for i in range(n)]
        if len(self.labels) != n or len(self.unit) != n:
            raise AlgebraError("dimension mismatch between table, unit and labels")
        if validate:
            self.validate()

    @classmethod
    def from_triples(cls, dim: int, triples, unit, labels=None) -> "FinDimAlgebra":
        """Build from 0-based ``(i, j, k, c)`` with ``e_i e_j += c e_k``."""
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in triples:
            table[i][j][k] += Fraction(c)
        return cls(table, unit, labels)

    def validate(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                if self.table[i][j] != self.table[j][i]:
                    a, b = self.labels[i], self.labels[j]
                    raise AlgebraError(f"not commutative: {a}*{b} differs from {b}*{a}", pair=(i, j))
        for i in range(n):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e:
                raise AlgebraError(f"unit law fails on {self.labels[i]}", unit=True)
        for i, j, k in itertools.product(range(n), repeat=3):
            ei, ej, ek = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                raise AlgebraError(
                    f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})", pair=(i, j))

    # ---------------------------------------------------------------- basics

    def zero(self) -> Vec:
        return (Fraction(0),) * self.dim

    def one(self) -> Vec:
        return self.unit

    def basis_vector(self, i: int) -> Vec:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def basis(self) -> List[Vec]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def element(self, coords) -> Vec:
        v = _vec(coords)
        if len(v) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return v

    def add(self, a: Vec, b: Vec) -> Vec:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: Vec, b: Vec) -> Vec:
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, c, a: Vec) -> Vec:
        c = Fraction(c)
        return tuple(c * x for x in a)

    def mul(self, a: Vec, b: Vec) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def power(self, a: Vec, t: int) -> Vec:
        out = self.one()
        for _ in range(t):
            out = self.mul(out, a)
        return out

    def powers(self, a: Vec, upto: int) -> List[Vec]:
        """``[a^0, a^1, ..., a^upto]``."""
        out = [self.one()]
        for _ in range(upto):
            out.append(self.mul(out[-1], a))
        return out

    def mult_matrix(self, a: Vec) -> List[List[Fraction]]:
        """Matrix of ``x -> a x`` (column j is ``a e_j``)."""
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def trace_of_mult(self, a: Vec) -> Fraction:
        m = self.mult_matrix(a)
        return sum(m[i][i] for i in range(self.dim))

    def is_idempotent(self, a: Vec) -> bool:
        return self.mul(a, a) == a

    def grid(self, values=GRID_VALUES) -> Iterator[Vec]:
        """Every element whose coordinates lie in ``values``."""
        for coords in itertools.product(values, repeat=self.dim):
            yield self.element(coords)

    def format(self, a: Vec) -> str:
        out = ""
        for c, lab in zip(a, self.labels):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = lab if mag == 1 else (str(mag) if lab == "1" else f"{mag}*{lab}")
            out = f"{sign}{body}" if not out else f"{out} {sign} {body}"
        return (out[1:] if out.startswith("+") else out) or "0"

    # ------------------------------------------------------- constructors

    @classmethod
    def truncated_poly(cls, k: int, var: str = "x") -> "FinDimAlgebra":
        """``Q[var]/(var^k)`` with basis ``1, var, ..., var^(k-1)``."""
        table = [[[int(i + j == m) for m in range(k)] for j in range(k)] for i in range(k)]
        labels = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, k)]
        return cls(table, [int(i == 0) for i in range(k)], labels)

    @classmethod
    def split(cls, copies: int = 2) -> "FinDimAlgebra":
        """``Q x ... x Q`` with orthogonal idempotent basis."""
        table = [[[int(i == j == m) for m in range(copies)] for j in range(copies)] for i in range(copies)]
        return cls(table, [1] * copies, [f"p{i + 1}" for i in range(copies)])

    @classmethod
    def tensor(cls, A: "FinDimAlgebra", B: "FinDimAlgebra") -> "FinDimAlgebra":
        n, m = A.dim, B.dim
        idx = lambda i, j: i * m + j
        table = [[[Fraction(0)] * (n * m) for _ in range(n * m)] for _ in range(n * m)]
        for i1, j1, i2, j2 in itertools.product(range(n), range(m), range(n), range(m)):
            a, b = A.table[i1][i2], B.table[j1][j2]
            for k, ca in enumerate(a):
                if not ca:
                    continue
                for l, cb in enumerate(b):
                    if cb:
                        table[idx(i1, j1)][idx(i2, j2)][idx(k, l)] += ca * cb
        unit = [A.unit[i] * B.unit[j] for i in range(n) for j in range(m)]
        labels = [_tensor_label(a, b) for a in A.labels for b in B.labels]
        return cls(table, unit, labels)


def _tensor_label(a: str, b: str) -> str:
    if a == "1":
        return b
    if b == "1":
        return a
    return f"{a}{b}"


class Subspace:
    """A subspace of a :class:`FinDimAlgebra`, stored in reduced echelon form."""

    def __init__(self, ambient: FinDimAlgebra, vectors: Iterable[Sequence] = ()):
        self.ambient = ambient
        self._ech = linalg.Echelon(_dict(ambient.element(v)) for v in vectors)

    @classmethod
    def whole(cls, A: FinDimAlgebra) -> "Subspace":
        return cls(A, A.basis())

    @property
    def dim(self) -> int:
        return len(self._ech)

    def basis(self) -> List[Vec]:
        return [_from_dict(r, self.ambient.dim) for r in self._ech.basis()]

    def __contains__(self, v: Sequence) -> bool:
        return self._ech.contains(_dict(v))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient is other.ambient and self.dim == other.dim
                and all(b in other for b in self.basis()))

    def __le__(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis=[{'; '.join(self.ambient.format(b) for b in self.basis())}])"

    def is_whole(self) -> bool:
        return self.dim == self.ambient.dim

    def is_ideal(self) -> bool:
        A = self.ambient
        return all(A.mul(u, e) in self for u in self.basis() for e in A.basis())

    def pivots(self) -> List[int]:
        return self._ech.pivots()

    def reduce(self, v: Sequence) -> Vec:
        return _from_dict(self._ech.reduce(_dict(v)), self.ambient.dim)


class AlgebraHom:
    """Unital algebra homomorphism, given by the images of the source basis."""

    def __init__(self, source: FinDimAlgebra, target: FinDimAlgebra, images: Sequence[Sequence], validate=True):
        self.source = source
        self.target = target
        self.images = [target.element(v) for v in images]
        if len(self.images) != source.dim:
            raise AlgebraError("need one image per source basis vector")
        if validate:
            if self(source.one()) != target.one():
                raise AlgebraError("homomorphism must send 1 to 1")
            for i, j in itertools.product(range(source.dim), repeat=2):
                ei, ej = source.basis_vector(i), source.basis_vector(j)
                if self(source.mul(ei, ej)) != target.mul(self(ei), self(ej)):
                    raise AlgebraError(f"not multiplicative on ({source.labels[i]}, {source.labels[j]})")

    def __call__(self, v: Sequence) -> Vec:
        out = self.target.zero()
        for c, img in zip(v, self.images):
            if c:
                out = self.target.add(out, self.target.scale(c, img))
        return out

    @classmethod
    def identity(cls, A: FinDimAlgebra) -> "AlgebraHom":
        return cls(A, A, A.basis())


def quotient(A: FinDimAlgebra, ideal: Subspace) -> Tuple[FinDimAlgebra, AlgebraHom]:
    """``A / ideal`` on the non-pivot basis vectors, with the projection."""
    if not ideal.is_ideal():
        raise AlgebraError("can only take quotients by ideals")
    keep = [i for i in range(A.dim) if i not in set(ideal.pivots())]
    pos = {i: r for r, i in enumerate(keep)}

    def project(v):
        red = ideal.reduce(v)
        return tuple(red[i] for i in keep)

    table = [[project(A.mul(A.basis_vector(i), A.basis_vector(j))) for j in keep] for i in keep]
    Q = FinDimAlgebra(table, project(A.one()), [A.labels[i] for i in keep])
    proj = AlgebraHom(A, Q, [project(e) for e in A.basis()])
    assert all(pos[i] == r for r, i in enumerate(keep))
    return Q, proj


# ----------------------------------------------------------------- radicals


def nilradical(A: FinDimAlgebra) -> Subspace:
    """Nilpotent elements, as the kernel of the trace form ``tr(L_{ab})``.

    Valid in characteristic zero.  Every returned basis vector is checked to
    satisfy ``v^dim == 0``.
    """
    n = A.dim
    cols = []
    for j in range(n):
        ej = A.basis_vector(j)
        cols.append({i: A.trace_of_mult(A.mul(A.basis_vector(i), ej)) for i in range(n)})
    kernel = linalg.nullspace([{i: c for i, c in col.items() if c} for col in cols])
    N = Subspace(A, kernel)
    for v in N.basis():
        if any(A.power(v, n)):
            raise ArithmeticError(f"trace-form kernel element {A.format(v)} is not nilpotent")
    return N


def _window(A: FinDimAlgebra) -> range:
    return range(A.dim, 2 * A.dim + 2)


def radical_member(a: Sequence, U: Subspace) -> bool:
    """True iff ``a^t`` lies in ``U`` for every large ``t``.

    Decided exactly on ``t in [n, 2n+1]`` (see the module docstring).
    """
    A = U.ambient
    a = A.element(a)
    pw = A.powers(a, 2 * A.dim + 1)
    return all(pw[t] in U for t in _window(A))


def strong_radical_member(a: Sequence, U: Subspace) -> bool:
    """True iff ``b a^t c`` lies in ``U`` for all large ``t``, for every pair ``b, c``.

    Bilinearity reduces "every pair" to pairs of basis vectors.
    """
    A = U.ambient
    a = A.element(a)
    pw = A.powers(a, 2 * A.dim + 1)
    basis = A.basis()
    for t in _window(A):
        for b in basis:
            left = A.mul(b, pw[t])
            for c in basis:
                if A.mul(left, c) not in U:
                    return False
    return True


def is_local(A: FinDimAlgebra) -> bool:
    return A.dim - nilradical(A).dim == 1


def mz_verdict(U: Subspace) -> Verdict:
    """MZ decision on a local ambient algebra.

    A local algebra's only idempotents are 0 and 1 and finite dimension makes
    every radical algebraic, so ``1 not in U`` already forces the MZ property;
    with ``1 in U`` the property holds exactly when ``U`` is everything.
    """
    A = U.ambient
    N = nilradical(A)
    bounds = {"dim": A.dim}
    if A.dim - N.dim != 1:
        return inconclusive("non-local ambient", bounds=bounds)
    if A.one() not in U:
        return proved("structural: U has no nonzero idempotent in a local algebra",
                      bounds=bounds, certificate={"radical": N})
    if U.is_whole():
        return proved("structural: U is the whole algebra", bounds=bounds, certificate={"radical": N})
    outside = next(e for e in A.basis() if e not in U)
    # 1 is in r(U) but b*1^t*1 = b never lands in U, so 1 is not in sr(U)
    return refuted({"element": A.one(), "b": outside, "c": A.one()},
                   reason="structural: 1 in r(U) but not in sr(U)", bounds=bounds)


def hom_preimage(f: AlgebraHom, U: Subspace) -> Subspace:
    """``f^{-1}(U)`` as a subspace of the source."""
    n = f.source.dim
    cols = [_dict(img) for img in f.images] + [_dict(u) for u in U.basis()]
    kernel = linalg.nullspace(cols)
    return Subspace(f.source, [row[:n] for row in kernel])
