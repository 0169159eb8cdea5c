#!/usr/bin/env python3
"""Calibrates the segment-chain length constant before freezing the
acceptance assertion J <= 4 d^2 (2^k ||xi||_inf + 1).

Pure-python reimplementation of the cell walk (entry rule on faces by
direction sign, exit at the earliest face crossing, transitions split
into unit steps). Records max J / (d^2 (2^k ||xi||_inf + 1)).
"""
import math
import random


def entry_cell(y, xi):
    nu = []
    for yj, sj in zip(y, xi):
        f = math.floor(yj)
        if yj == f and sj < 0:
            f -= 1
        nu.append(f)
    return nu


def walk(k, x0, xi):
    scale = 2.0 ** k
    y0 = [scale * c for c in x0]
    nu = entry_cell(y0, xi)
    cells = [tuple(nu)]
    steps = 0
    guard = 0
    while True:
        guard += 1
        assert guard < 10 ** 6
        ts = []
        for j, sj in enumerate(xi):
            if sj > 0:
                ts.append(((nu[j] + 1) / scale - x0[j]) / sj)
            elif sj < 0:
                ts.append((nu[j] / scale - x0[j]) / sj)
            else:
                ts.append(math.inf)
        tstar = min(ts)
        if tstar > 1.0:
            return cells, steps
        axes = [j for j, t in enumerate(ts) if t == tstar]
        for j in axes:
            nu[j] += 1 if xi[j] > 0 else -1
            steps += 1
            cells.append(tuple(nu))


rng = random.Random(20260814)
worst = {1: 0.0, 2: 0.0, 3: 0.0}
for trial in range(200000):
    d = rng.randint(1, 3)
    k = rng.randint(0, 5)
    x0 = [rng.uniform(-2, 2) for _ in range(d)]
    xi = [rng.uniform(-2, 2) for _ in range(d)]
    if rng.random() < 0.1:
        xi[rng.randrange(d)] = 0.0
    cells, steps = walk(k, x0, xi)
    ninf = max(abs(c) for c in xi)
    bound = d * d * (2.0 ** k * ninf + 1)
    worst[d] = max(worst[d], steps / bound)

for d, w in worst.items():
    print(f"d={d}: max J / (d^2 (2^k|xi|+1)) = {w:.4f}")

cells, steps = walk(0, [0.5], [2.0])
print("d=1 k=0 x0=0.5 xi=2 ->", cells, "J =", steps)
