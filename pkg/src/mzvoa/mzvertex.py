"""Radicals of subspaces ``M = C_2(M(1)) + lift(W)`` and the image bridge.

Every query is routed through the C_2 transfer: ``a`` lies in the
(strong) radical of ``M`` exactly when its class ``c2_reduce(a)`` lies in the
(strong) radical of ``W = M / C_2`` inside the polynomial ring.  ``W`` is
either a finite span of polynomials or an ideal.

Strings are right-nested: ``[n1, ..., nt]`` applied to ``a`` means
``a_{n1}(a_{n2}(... a_{nt} a))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .c2 import c2_reduce, poly_to_fock
from .fock import FockElement, Heisenberg
from .poly import PolyElement, image_variables, monomials_upto, x_variables
from .verdict import BoundOverflow, Verdict, inconclusive, proved, refuted

SPAN = "c2-span"
IDEAL = "c2-ideal"
IMAGE = "image"
KINDS = (SPAN, IDEAL, IMAGE)

# largest linear system (unknowns) assembled before reporting overflow
MAX_UNKNOWNS = 60000
SPOT_CHECK_LENGTH = 4


@dataclass
class SubspaceSpec:
    """``M / C_2`` as a span or ideal in ``Q[x1..xd]``, or the image subspace.

    For the image kind ``n`` counts flavor pairs and ``generators`` is empty.
    """

    kind: str
    nvars: int
    generators: List[PolyElement] = field(default_factory=list)
    degree_bound: int = 4
    power_window: int = 6

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {', '.join(KINDS)}")
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if self.degree_bound < 0 or self.power_window < 1:
            raise ValueError("degree_bound must be >= 0 and power_window >= 1")
        if self.kind == IDEAL and not self.generators:
            raise ValueError("an ideal spec needs at least one generator")
        if self.kind == IMAGE and self.generators:
            raise ValueError("the image spec takes no generators")
        for g in self.generators:
            if g.variables != self.variables:
                raise ValueError(f"generator over {g.variables}, expected {self.variables}")
            if not g:
                raise ValueError("generators must be nonzero")

    @property
    def variables(self) -> Tuple[str, ...]:
        return image_variables(self.nvars) if self.kind == IMAGE else x_variables(self.nvars)

    def heisenberg(self) -> Heisenberg:
        if self.kind == IMAGE:
            return Heisenberg.image_configuration(self.nvars)
        return Heisenberg.orthonormal(self.nvars)

    def bounds(self) -> dict:
        return {"degree_bound": self.degree_bound, "power_window": self.power_window}

    def contains_poly(self, p: PolyElement, bound: Optional[int] = None) -> bool:
        """Exact for spans; for ideals, membership with cofactors of degree <= bound."""
        if self.kind == SPAN:
            return linalg.Echelon(g.terms for g in self.generators).contains(p.terms)
        if self.kind == IDEAL:
            return ideal_member(p, self.generators, self.degree_bound if bound is None else bound) is not None
        return image_member(p, self.nvars, self.degree_bound if bound is None else bound).proved

    def contains(self, H: Heisenberg, w: FockElement, bound: Optional[int] = None) -> bool:
        """``w in M``: the C_2 part is the kernel of ``c2_reduce``."""
        return self.contains_poly(c2_reduce(H, w), bound)


# ------------------------------------------------------------ polynomial side


def _check_size(unknowns: int, what: str):
    if unknowns > MAX_UNKNOWNS:
        raise BoundOverflow(f"{what}: {unknowns} unknowns exceeds {MAX_UNKNOWNS}")


def ideal_member(p: PolyElement, gens: Sequence[PolyElement], bound: int) -> Optional[List[PolyElement]]:
    """Cofactors ``q_j`` with ``p = sum g_j q_j`` and ``deg q_j <= bound``, or None."""
    if not p:
        return [PolyElement(p.variables) for _ in gens]
    if bound < 0:
        return None
    mons = monomials_upto(len(p.variables), bound)
    _check_size(len(mons) * len(gens), "ideal membership")
    cols, keys = [], []
    for j, g in enumerate(gens):
        for e in mons:
            cols.append((g * PolyElement(p.variables, {e: 1})).terms)
            keys.append((j, e))
    x = linalg.solve(cols, p.terms)
    if x is None:
        return None
    out = [dict() for _ in gens]
    for (j, e), c in zip(keys, x):
        if c:
            out[j][e] = c
    return [PolyElement(p.variables, t) for t in out]


def _common_zero_candidates(gens: Sequence[PolyElement]):
    """Rational points to try as common zeros of ``gens``.

    Affine-linear systems are solved exactly; otherwise a small integer box
    and, for one variable, rational roots by the rational-root test.
    """
    nv = len(gens[0].variables)
    if all(g.degree() <= 1 for g in gens):
        cols = [linalg.clean({j: g.terms.get(tuple(int(i == k) for i in range(nv)), 0) for j, g in enumerate(gens)})
                for k in range(nv)]
        target = linalg.clean({j: -g.constant_term() for j, g in enumerate(gens)})
        base = linalg.solve(cols, target)
        if base is not None:
            kernel = linalg.nullspace(cols)
            for coeffs in itertools.product(range(-2, 3), repeat=len(kernel)):
                pt = list(base)
                for c, kv in zip(coeffs, kernel):
                    pt = [a + c * b for a, b in zip(pt, kv)]
                yield tuple(pt)
        return
    if nv == 1:
        for g in gens:
            yield from ((r,) for r in _rational_roots(g))
    if nv <= 3:
        yield from itertools.product(range(-3, 4), repeat=nv)


def _rational_roots(g: PolyElement) -> List[Fraction]:
    from math import gcd

    coeffs = {e[0]: c for e, c in g.terms.items()}
    low = min(coeffs)
    scale = 1
    for c in coeffs.values():
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = {e - low: int(c * scale) for e, c in coeffs.items()}
    roots = [Fraction(0)] if low > 0 else []
    a0, an = ints[0], ints[max(ints)]
    divs = lambda k: [d for d in range(1, abs(k) + 1) if k % d == 0]
    for num in divs(a0):
        for den in divs(an):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if g((r,)) == 0 and r not in roots:
                    roots.append(r)
    return roots


def _evaluation_certificate(p: PolyElement, gens: Sequence[PolyElement]):
    for pt in _common_zero_candidates(gens):
        if all(g(pt) == 0 for g in gens) and p(pt) != 0:
            return tuple(Fraction(c) for c in pt)
    return None


def poly_radical_member(p: PolyElement, spec: SubspaceSpec) -> Verdict:
    """Is ``p`` in ``r(W)``, i.e. ``p^m in W`` for all large ``m``?"""
    if spec.kind == IMAGE:
        raise ValueError("radical queries need a c2-span or c2-ideal spec")
    if p.variables != spec.variables:
        raise ValueError(f"element over {p.variables}, spec over {spec.variables}")
    bounds = spec.bounds()
    if not p:
        return proved("structural: zero", bounds=bounds)
    if spec.kind == SPAN:
        return _span_radical(p, spec, bounds)

    gens = spec.generators
    for m in range(1, spec.power_window + 1):
        pm = p ** m
        if ideal_member(pm, gens, spec.degree_bound) is not None:
            return proved(f"structural: p^{m} lies in the ideal, hence so do all higher powers",
                          witness=m, bounds=bounds)
    pt = _evaluation_certificate(p, gens)
    if pt is not None:
        return refuted(1, reason="evaluation: p is nonzero at a common zero of the generators, so no power is in the ideal",
                       bounds=bounds, certificate={"point": pt, "value": p(pt)})
    if len(gens) == 1:
        g = gens[0]
        e = max(1, g.degree())
        pe = p ** e
        # g | p^e iff every irreducible factor of g divides p; quotient degree is forced
        bound = pe.degree() - g.degree()
        if ideal_member(pe, gens, bound) is not None:
            return proved(f"structural: g divides p^{e}", witness=e, bounds=bounds)
        return refuted(e, reason=f"structural: g does not divide p^{e} = p^deg(g), so p is outside the radical of (g)",
                       bounds=bounds)
    return inconclusive(f"no power up to {spec.power_window} lies in the ideal at cofactor degree {spec.degree_bound}",
                        bounds=bounds)


def _span_radical(p: PolyElement, spec: SubspaceSpec, bounds) -> Verdict:
    one = PolyElement.const(p.variables, 1)
    if p.is_constant():
        if spec.contains_poly(one):
            return proved("structural: nonzero constant with 1 in W", bounds=bounds)
        return refuted(1, reason="structural: powers of a nonzero constant are multiples of 1, and 1 is not in W",
                       bounds=bounds)
    top = max(g.degree() for g in spec.generators) if spec.generators else -1
    m = top // p.degree() + 1
    return refuted(m, reason=f"structural: deg p^t = t*deg p exceeds max degree {top} of W for t >= {m}",
                   bounds=bounds)


# ---------------------------------------------------------------- vertex side


def string_product(H: Heisenberg, a: FockElement, string: Sequence[int], max_weight: Optional[int] = None) -> FockElement:
    """``a_{n1}(a_{n2}(... a_{nt} a))`` with every ``n`` in ``{0, -1}``."""
    if any(n not in (0, -1) for n in string):
        raise ValueError("string entries must be 0 or -1")
    out = a
    for n in reversed(string):
        out = H.mode_action(a, n, out, max_weight=max_weight)
    return out


def _require_c2_spec(spec: SubspaceSpec, H: Heisenberg):
    if spec.kind == IMAGE:
        raise ValueError("radical queries need a c2-span or c2-ideal spec")
    if H.d != spec.nvars:
        raise ValueError(f"spec has {spec.nvars} variables but the Fock space has {H.d} flavors")


def string_check(H: Heisenberg, a: FockElement, spec: SubspaceSpec, min_length: int = 1,
                 max_length: int = SPOT_CHECK_LENGTH) -> Optional[Tuple[int, ...]]:
    """First string of length in ``[min_length, max_length]`` whose product leaves ``M``."""
    for t in range(min_length, max_length + 1):
        for s in itertools.product((-1, 0), repeat=t):
            w = string_product(H, a, s)
            if not spec.contains(H, w, bound=max(spec.degree_bound, c2_reduce(H, w).degree())):
                return s
    return None


def vertex_radical_member(H: Heisenberg, a: FockElement, spec: SubspaceSpec) -> Verdict:
    """Radical membership for ``a`` in ``M(1)``, by transfer to ``M/C_2``.

    A Proved verdict is cross-checked on the vertex side: every string from
    the proved power onward (length <= 4) must land in ``M``.
    """
    _require_c2_spec(spec, H)
    p = c2_reduce(H, a)
    v = poly_radical_member(p, spec)
    if not v.proved:
        return v
    start = max(1, (v.witness or 1) - 1)
    bad = string_check(H, a, spec, start, SPOT_CHECK_LENGTH)
    cert = dict(v.certificate, spot_check=f"strings of length {start}..{SPOT_CHECK_LENGTH}")
    if bad is not None:
        return inconclusive(f"vertex-side string {list(bad)} left M at the degree bound",
                            bounds=v.bounds, certificate=cert)
    return Verdict(v.status, v.witness, v.reason, v.bounds, cert)


def strong_radical_member(H: Heisenberg, a: FockElement, spec: SubspaceSpec, probe_weight: int) -> Verdict:
    """Strong radical membership via the polynomial side.

    Ideals absorb multiplication, so there ``sr = r``.  For a finite span ``W``
    every nonzero class is refuted by ``b = x1^D`` with ``D`` above the
    degrees of ``W``: ``b p^t`` is nonzero of degree ``>= D``.  Witnesses are
    triples ``(b, string, s)``; ``b`` must have weight ``<= probe_weight``.
    """
    _require_c2_spec(spec, H)
    p = c2_reduce(H, a)
    bounds = dict(spec.bounds(), probe_weight=probe_weight)
    if not p:
        return proved("structural: a lies in C_2, which is closed under b_0 and b_{-1}", bounds=bounds)
    if spec.kind == IDEAL:
        v = poly_radical_member(p, spec)
        if v.proved:
            return proved("structural: ideals absorb multiplication, so sr = r; " + v.reason,
                          witness=v.witness, bounds=bounds)
        if v.refuted:
            string = (-1,) * (v.witness - 1)
            return refuted((FockElement.vacuum(), string, -1), reason=v.reason, bounds=bounds,
                           certificate=v.certificate)
        return inconclusive(v.reason, bounds=bounds)
    top = max(g.degree() for g in spec.generators) if spec.generators else -1
    D = max(top + 1, 0)
    b = poly_to_fock(H, PolyElement.var(spec.variables, 0) ** D)
    witness = (b, (-1,), -1)
    if D > probe_weight:
        return inconclusive(f"refuting multiplier x1^{D} exceeds probe weight {probe_weight}", bounds=bounds)
    w = H.mode_action(b, -1, string_product(H, a, (-1,)))
    if spec.contains(H, w):
        raise ArithmeticError("degree argument contradicted by direct computation")
    return refuted(witness, reason=f"structural: b*p^t has degree >= {D} > {top}, outside W for every t",
                   bounds=bounds)


# ------------------------------------------------------------------ image side


def f_map(H: Heisenberg, i: int, a: FockElement) -> FockElement:
    """``f_i(a) = beta^i(1) a - alpha^i(-1) a``."""
    if H.image_n is None:
        raise ValueError("f_map needs the 2n-flavor image configuration")
    return H.generator_mode_action(H.beta(i), 1, a) - H.generator_mode_action(H.alpha(i), -1, a)


def image_operator(variables, n: int, i: int, q: PolyElement) -> PolyElement:
    """``(d/dx_i - z_i) q``; ``i`` is 1-based."""
    return q.diff(n + i - 1) - PolyElement.var(variables, i - 1) * q


def image_member(p: PolyElement, n: int, degree_bound: int) -> Verdict:
    """Is ``p`` in ``sum_i (d/dx_i - z_i) Q[z, x]``?

    Solvability with ``deg q_i <= degree_bound`` is decided exactly.  The
    only refutation is the z-degree argument for ``n = 1``: ``(d/dx - z)``
    raises the z-degree of every nonzero ``q`` by one, so a nonzero ``p``
    free of ``z`` is never hit.  For ``n >= 2`` the top z-parts of different
    summands can cancel, so no refutation is attempted.
    """
    variables = image_variables(n)
    if p.variables != variables:
        raise ValueError(f"element over {p.variables}, expected {variables}")
    bounds = {"degree_bound": degree_bound, "n": n}
    zero = PolyElement(variables)
    if not p:
        return proved("exhaustive: zero element", witness=[zero] * n, bounds=bounds)
    mons = monomials_upto(2 * n, degree_bound) if degree_bound >= 0 else []
    _check_size(len(mons) * n, "image membership")
    cols, keys = [], []
    for i in range(1, n + 1):
        for e in mons:
            cols.append(image_operator(variables, n, i, PolyElement(variables, {e: 1})).terms)
            keys.append((i, e))
    x = linalg.solve(cols, p.terms) if cols else None
    if x is not None:
        qs = [dict() for _ in range(n)]
        for (i, e), c in zip(keys, x):
            if c:
                qs[i - 1][e] = c
        witness = [PolyElement(variables, t) for t in qs]
        assert sum((image_operator(variables, n, i + 1, q) for i, q in enumerate(witness)), zero) == p
        return proved("exhaustive: explicit preimage found", witness=witness, bounds=bounds)
    if n == 1 and p.degree_in([0]) == 0:
        return refuted("z-degree", reason="structural: p has z-degree 0 but every nonzero image has z-degree >= 1",
                       bounds=bounds)
    return inconclusive(f"no preimage with degree <= {degree_bound}", bounds=bounds)
