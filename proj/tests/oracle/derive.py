"""Independent brute-force oracle for the frozen values in the C++ tests.

Enumerates every chain with itertools and evaluates with Python floats or
exact fractions. Run: python3 tests/oracle/derive.py
"""
import itertools
import math
from fractions import Fraction


def e_from_f(b):
    return [sum(b[j:]) for j in range(len(b))]


def norm_e(x, p=2):
    pts = list(x) + [0]
    n = len(pts)
    best, arg = 0, (1, 2)
    for r in range(2, n + 1):
        for chain in itertools.combinations(range(n), r):
            s = sum(abs(pts[b] - pts[a]) ** p for a, b in zip(chain, chain[1:]))
            if s > best:
                best, arg = s, tuple(i + 1 for i in chain)
    return best, arg


def show(label, x, p=2):
    s, chain = norm_e(x, p)
    print(f"{label}: power_sum={s} norm={float(s) ** (1 / p)!r} chain={chain}")


show("F(1,-1,0)", e_from_f([1, -1, 0]))
show("E(1,-1)", [1, -1])
show("F(1)", e_from_f([1]))
show("E(0.5,-2,3,1) p=3", [0.5, -2, 3, 1], 3)
show("F(2,-1,0.5,0.25,-3) p=1.5", e_from_f([2, -1, 0.5, 0.25, -3]), 1.5)
show("E(3,1,4,1,5,9,2,6)", [3, 1, 4, 1, 5, 9, 2, 6])
print("convert F(1,-1,0) ->", e_from_f([1, -1, 0]))

# Bidual body (1,-1) in e-coordinates, tail 1/2, materialized at M = 3.
body = [Fraction(1), Fraction(-1)]
t = Fraction(1, 2)
show("bidual body(1,-1) tail 0.5", [body[0] + t, body[1] + t, t])

# Block system {(f1+f2)/2, f3}, b = (1,-1): d = (0.5, 0.5, -1).
show("blocks d=(0.5,0.5,-1)", e_from_f([Fraction(1, 2), Fraction(1, 2), -1]))
show("blocks b=(1,-1)", e_from_f([1, -1]))

# Walsh n = 1: spectral norm sqrt(2), regular norm 2.
print("walsh1 ratio", 2 / math.sqrt(2))

# tilde for A_1 with a = (1/sqrt2, 1/sqrt2): S X has rows (a1+a2, 0)... per row l1 norms.
a = 1 / math.sqrt(2)
rows = [[a, a], [a, -a]]  # S diag(a)
l1 = [sum(abs(v) for v in r) for r in rows]
print("tilde A_1 component l1 norms", l1, "outer", math.sqrt(sum(v * v for v in l1)))

# lift A_1 on (f_1, f_1): components (2 f_1, 0).
print("lift A_1 (f1,f1): norm", 2.0, "input norm", math.sqrt(2))

# Vector-valued: rotation by 90 degrees of x = ((1,0),(0,1)) in e-coordinates.
def norm_vec(xs):
    pts = [tuple(v) for v in xs] + [(0.0,) * len(xs[0])]
    n = len(pts)
    best = 0.0
    for r in range(2, n + 1):
        for chain in itertools.combinations(range(n), r):
            s = sum(sum((pts[b][k] - pts[a][k]) ** 2 for k in range(len(pts[0])))
                    for a, b in zip(chain, chain[1:]))
            best = max(best, s)
    return math.sqrt(best)


print("J(E) ((1,0),(0,1),(2,2))", norm_vec([(1, 0), (0, 1), (2, 2)]))
print("J(E) axis ((1,0),(-1,0),(3,0))", norm_vec([(1, 0), (-1, 0), (3, 0)]), norm_e([1, -1, 3])[0] ** 0.5)
