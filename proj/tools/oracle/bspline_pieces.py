#!/usr/bin/env python3
"""Independent construction of the cardinal B-spline pieces.

Builds psi^{m} on [0, m+1] by symbolic convolution with the unit box,
psi^m(x) = integral of psi^{m-1} over [x-1, x], using sympy rationals.
Prints the per-interval polynomials, total mass, symmetry check, and a
few point values that the C++ tests freeze as literals.
"""
import sympy as sp

x = sp.Symbol("x")


def build(m):
    # piece j covers [j, j+1); degree m polynomials in x
    pieces = [sp.Integer(1)]
    for order in range(1, m + 1):
        prev = pieces
        nxt = []
        for j in range(order + 1):
            acc = sp.Integer(0)
            # contribution of prev piece j-1 over [x-1, j] and piece j over [j, x]
            if 0 <= j - 1 < len(prev):
                t = sp.Symbol("t")
                acc += sp.integrate(prev[j - 1].subs(x, t), (t, x - 1, j))
            if j < len(prev):
                t = sp.Symbol("t")
                acc += sp.integrate(prev[j].subs(x, t), (t, j, x))
            nxt.append(sp.expand(acc))
        pieces = nxt
    return pieces


for m in range(0, 5):
    pieces = build(m)
    mass = sum(sp.integrate(p, (x, j, j + 1)) for j, p in enumerate(pieces))
    sym_ok = all(
        sp.expand(p - pieces[m - j].subs(x, m + 1 - x)) == 0
        for j, p in enumerate(pieces)
    )
    print(f"m={m} pieces={pieces} mass={mass} symmetric={sym_ok}")

p2 = build(2)
p3 = build(3)
print("psi2(1/2) =", p2[0].subs(x, sp.Rational(1, 2)))
print("psi2(3/2) =", p2[1].subs(x, sp.Rational(3, 2)))
print("psi2(1)   =", p2[1].subs(x, 1))  # half-open: piece [1,2) owns x=1
print("psi3(2)   =", p3[2].subs(x, 2))
print("psi3(3/2) =", p3[1].subs(x, sp.Rational(3, 2)))
# derivative values used by the evaluator tests (right-limit convention)
print("psi2'(1/2)=", sp.diff(p2[0], x).subs(x, sp.Rational(1, 2)))
print("psi2'(1)  =", sp.diff(p2[1], x).subs(x, 1))
print("psi3''(3/2)=", sp.diff(p3[1], x, 2).subs(x, sp.Rational(3, 2)))
