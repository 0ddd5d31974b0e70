"""A short walk through M(1): modes, the conformal vector and the C_2 quotient.

    python demos/heisenberg_tour.py
"""

from mzvoa import Heisenberg, c2_reduce, format_element, parse_fock, poisson_bracket

H = Heisenberg.orthonormal(1)
show = lambda v: format_element(v, H)

a = parse_fock("a1(-1) vac", H)
print("a            =", show(a))
print("a_1 a        =", show(H.mode_action(a, 1, a)))
print("a_{-1} a     =", show(H.mode_action(a, -1, a)))

omega = H.conformal_vector()
print("omega        =", show(omega), " central charge", H.central_charge)
w = parse_fock("a1(-2) a1(-1) vac", H)
print("L(0) w       =", show(H.virasoro_mode(0, w)), " (weight 3)")
print("L(-1) w      =", show(H.virasoro_mode(-1, w)))
print("D(w)         =", show(H.d_operator(w)))

# In M(1)/C_2 every mode <= -2 dies; what is left is a polynomial ring.
u = parse_fock("a1(-1) a1(-1) vac + 3 a1(-2) vac", H)
print("class of u   =", format_element(c2_reduce(H, u)))
print("{u, a}       =", format_element(poisson_bracket(H, u, a)))

# The two engines agree.
print("engines agree:", H.mode_action(u, 0, w) == sum(
    (c * H.normal_order_oracle(m, 0, w) for m, c in u.terms.items()), H.zero()))
