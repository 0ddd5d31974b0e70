"""Deciding radical membership in the three settings.

    python demos/radicals.py
"""

from mzvoa import (FinDimAlgebra, Heisenberg, LaurentElement, PolyElement, Subspace, SubspaceSpec,
                   format_element, image_member, laurent_radical_member, mz_verdict, parse_fock,
                   vertex_radical_member)
from mzvoa.poly import image_variables


def show(w):
    if isinstance(w, list):
        return "[" + ", ".join(format_element(q) for q in w) + "]"
    if isinstance(w, dict):
        return "{" + ", ".join(f"{k}: {A.format(v)}" for k, v in w.items()) + "}"
    return str(w)


def report(label, verdict):
    extra = f" witness={show(verdict.witness)}" if verdict.witness is not None else ""
    print(f"{label:42} {verdict.status}{extra}  [{verdict.reason}]")


# Vertex side: M = C_2(M(1)) + lift of the ideal (x1 - 1).
H = Heisenberg.orthonormal(1)
x = PolyElement.var(("x1",), 0)
spec = SubspaceSpec("c2-ideal", 1, [x - 1])
for text in ["a1(-1) vac - vac", "a1(-1) a1(-1) vac - vac", "vac", "a1(-3) a1(-1) vac"]:
    report(f"r(M) contains {text}?", vertex_radical_member(H, parse_fock(text, H), spec))

# Image of the f-maps in Q[z1, x1].
V = image_variables(1)
z1, x1 = PolyElement.var(V, 0), PolyElement.var(V, 1)
report("1 - z1 x1 in image?", image_member(1 - z1 * x1, 1, 2))
report("1 in image?", image_member(PolyElement.const(V, 1), 1, 4))

# Laurent polynomials with zero constant term.
report("t^5 in radical?", laurent_radical_member(LaurentElement.monomial(5), 8, 8))
report("t + 1/t in radical?", laurent_radical_member(LaurentElement({1: 1, -1: 1}), 8, 8))

# Finite-dimensional local algebra Q[x]/(x^3).
A = FinDimAlgebra.truncated_poly(3)
one, X, X2 = A.basis()
report("span{x} Mathieu-Zhao in Q[x]/(x^3)?", mz_verdict(Subspace(A, [X])))
report("span{1, x} Mathieu-Zhao in Q[x]/(x^3)?", mz_verdict(Subspace(A, [one, X])))
