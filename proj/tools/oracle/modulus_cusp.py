#!/usr/bin/env python3
"""Brute-force averaged moduli of smoothness on (0,1), used to freeze
rate expectations before the C++ side exists.

1. Omega'^1(x, t) with p = 1 against the closed form t/2 - t^2/3.
2. Omega'^l for cusp functions (x - c)_+^beta at p = 2: fitted exponent
   alpha-hat should approach beta + 1/p.
Dense midpoint grids; no shared code with the library.
"""
import math

import numpy as np


def omega_avg(f, l, t, p, nxi=2001, nx=20001):
    xis = np.linspace(-t, t, nxi)
    total = 0.0
    binom = [(-1) ** (l - i) * math.comb(l, i) for i in range(l + 1)]
    for xi in xis:
        lo, hi = max(0.0, -l * xi), min(1.0, 1.0 - l * xi)
        if hi <= lo:
            continue
        x = np.linspace(lo, hi, nx)
        x = (x[1:] + x[:-1]) / 2
        dx = (hi - lo) / (nx - 1)
        acc = np.zeros_like(x)
        for i, b in enumerate(binom):
            acc += b * f(x + i * xi)
        total += np.sum(np.abs(acc) ** p) * dx
    return (total / nxi) ** (1.0 / p)


print("-- linear f, l=1, p=1: closed form t/2 - t^2/3 --")
for t in (0.1, 0.25, 0.5):
    got = omega_avg(lambda x: x, 1, t, 1)
    exact = t / 2 - t * t / 3
    print(f"t={t}: omega'={got:.8f} closed={exact:.8f} relerr={abs(got-exact)/exact:.2e}")

print("-- cusp (x-1/2)_+^beta, p=2 --")
for beta in (0.6, 0.75, 0.9, 1.75):
    alpha = beta + 0.5
    l = int(np.floor(alpha)) + 1  # l(alpha) since alpha not integer here
    ts = 2.0 ** -np.arange(3, 9)
    vals = [omega_avg(lambda x, b=beta: np.maximum(x - 0.5, 0.0) ** b, l, t, 2,
                      nxi=801, nx=8001) for t in ts]
    slope = np.polyfit(np.log2(ts), np.log2(vals), 1)[0]
    print(f"beta={beta}: l={l} fitted alpha-hat={slope:.4f} (theory {alpha})")

print("-- smooth sin(pi x), l=2: saturation near t^2 --")
ts = 2.0 ** -np.arange(3, 8)
vals = [omega_avg(lambda x: np.sin(np.pi * x), 2, t, 2, nxi=801, nx=8001) for t in ts]
print("slope:", np.polyfit(np.log2(ts), np.log2(vals), 1)[0])
