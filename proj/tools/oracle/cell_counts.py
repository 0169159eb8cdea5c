#!/usr/bin/env python3
"""Exact dyadic cell counts for the catalog domains, via Fraction arithmetic.

Counts, for a few (k, m) pairs,
  active:   nu with support box 2^-k nu + 2^-k (m+1) [0,1]^d meeting D
  interior: nu with closed cell 2^-k [nu, nu+1] inside D
using independent geometric reasoning per domain (farthest/nearest corner for
the ball, explicit height profile for the staircase). These counts are frozen
into the geometry tests.
"""
from fractions import Fraction as Fr
from itertools import product


def box_meets_ball(lo, hi, c, r2):
    # nearest point of the closed box to the center, strictly inside the ball
    s = Fr(0)
    for a, b, cj in zip(lo, hi, c):
        t = min(max(cj, a), b)
        s += (t - cj) ** 2
    return s < r2


def box_inside_ball(lo, hi, c, r2):
    # farthest corner strictly inside
    s = Fr(0)
    for a, b, cj in zip(lo, hi, c):
        s += max(abs(a - cj), abs(b - cj)) ** 2
    return s < r2


def staircase_height(t):
    # sup height of D = int(U_j [2^-j, 2^-j+1] x [0, 2^-j]) at abscissa t,
    # left-continuous: h(t) = 2^-j for t in (2^-j, 2^-j+1], h(t)=0 for t<=0, t>=2... h(2)=0
    if t <= 0 or t >= 2:
        return Fr(0)
    h = Fr(2)
    while not (h / 2 < t <= h):
        h /= 2
    return h / 2


def box_inside_stair(lo, hi):
    return lo[0] > 0 and hi[0] < 2 and lo[1] > 0 and hi[1] < staircase_height(lo[0])


def box_meets_stair(lo, hi):
    if hi[1] <= 0 or lo[0] >= 2 or hi[0] <= 0:
        return False
    hmax = Fr(1) if hi[0] >= 2 else staircase_height(hi[0])
    if hi[0] > 1 and lo[0] < 2:
        hmax = Fr(1)
    return lo[1] < hmax


def box_inside_lshape(lo, hi):
    # L = (0,1)^2 minus closed quadrant [1/2,1]x[1/2,1]
    if not all(a > 0 and b < 1 for a, b in zip(lo, hi)):
        return False
    return not (hi[0] >= Fr(1, 2) and hi[1] >= Fr(1, 2))


def box_meets_lshape(lo, hi):
    il = [max(a, Fr(0)) for a in lo]
    ih = [min(b, Fr(1)) for b in hi]
    if not all(a < b for a, b in zip(il, ih)):
        return False
    return il[0] < Fr(1, 2) or il[1] < Fr(1, 2)


def count(d, k, m, meets, inside, span):
    act = intr = 0
    h = Fr(1, 2**k)
    rng = range(span[0], span[1])
    for nu in product(rng, repeat=d):
        lo = [h * v for v in nu]
        his = [h * (v + m + 1) for v in nu]
        hic = [h * (v + 1) for v in nu]
        if meets(lo, his):
            act += 1
        if inside(lo, hic):
            intr += 1
    return act, intr


c = [Fr(1, 2), Fr(1, 2)]
r2 = Fr(1, 4)
for k in (2, 3, 4):
    for m in (1, 2):
        a, i = count(2, k, m,
                     lambda lo, hi: box_meets_ball(lo, hi, c, r2),
                     lambda lo, hi: box_inside_ball(lo, hi, c, r2),
                     (-8, 2 ** k + 8))
        print(f"ball(0.5,0.5;0.5) k={k} m={m}: active={a} interior={i}")

for k in (2, 3, 4):
    a, i = count(2, k, 2, box_meets_lshape, box_inside_lshape, (-8, 2 ** k + 8))
    print(f"lshape k={k} m=2: active={a} interior={i}")

for k in (2, 3, 4):
    a, i = count(2, k, 2, box_meets_stair, box_inside_stair, (-8, 2 ** (k + 1) + 8))
    print(f"staircase k={k} m=2: active={a} interior={i}")

# unit cube closed forms for reference
for d in (1, 2):
    for k in (2, 3):
        for m in (1, 2):
            print(f"cube d={d} k={k} m={m}: active={(2**k+m)**d} interior={(2**k-2)**d}")
