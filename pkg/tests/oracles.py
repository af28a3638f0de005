"""Floating point reference implementations, kept independent of the exact code.

Groups are rebuilt from complex generator matrices, orbits from rounded
projective coordinates, and spoke lengths from the valuation normalization
on invariant forms.  Tolerances are loose because all quantities involved
are algebraic numbers of small height.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

TOL = 1e-9


def approx(x) -> complex:
    """Complex value of an exact CycNum under zeta_N -> exp(2 pi i / N)."""
    n = x.conductor
    return sum(float(c) * cmath.exp(2j * math.pi * k / n) for k, c in enumerate(x.coeffs))


def approx_matrix(m) -> tuple:
    return tuple(approx(v) for v in (m.a, m.b, m.c, m.d))


def mul(p, q):
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _key(m, digits: int = 7):
    return tuple((round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0) for z in m)


def _root(n: int) -> complex:
    return cmath.exp(2j * math.pi / n)


def float_omega(n: int):
    z = _root(n)
    return (z, 0, 0, 1 / z)


S2 = math.sqrt(2)
FLOAT_E = (0, 1, -1, 0)
FLOAT_F = (0, 1j, 1j, 0)
FLOAT_ALPHA = tuple(v / 2 for v in (1 - 1j, 1 - 1j, -1 - 1j, 1 + 1j))


def _float_beta():
    z = _root(5)
    c = z + z ** 4
    s = 1 / (z ** 2 - z ** 3)
    return (s * c, s, s, -s * c)


def float_generators(family: str, n: int):
    if family == "A":
        return [float_omega(n)]
    if family == "D":
        return [float_omega(2 * n - 4), FLOAT_F]
    if n == 6:
        return [float_omega(4), FLOAT_F, FLOAT_ALPHA]
    if n == 7:
        return [float_omega(4), FLOAT_F, FLOAT_ALPHA, float_omega(8)]
    return [float_omega(10), FLOAT_E, _float_beta()]


def float_closure(gens, bound: int = 400) -> list:
    ident = (1, 0, 0, 1)
    seen = {_key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                k = _key(h)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
                    if len(seen) > bound:
                        raise RuntimeError("closure exceeded bound")
        frontier = nxt
    return list(seen.values())


def det(m) -> complex:
    return m[0] * m[3] - m[1] * m[2]


# orbits and the valuation normalization --------------------------------------

def _proj_key(x: complex, y: complex):
    if abs(x) < TOL:
        return ("inf",)
    z = y / x
    return (round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0)


def float_orbit(group, x: complex, y: complex) -> list[tuple[complex, complex]]:
    pts = {}
    for h in group:
        a, b, c, d = h
        u, v = x * a + y * c, x * b + y * d
        k = _proj_key(u, v)
        if k not in pts:
            pts[k] = (u, v)
    return list(pts.values())


def projective_image(group) -> list:
    """One element per class modulo -I."""
    seen, out = set(), []
    for g in group:
        k = _key(g, 6)
        if k in seen:
            continue
        seen.add(k)
        seen.add(_key(tuple(-v for v in g), 6))
        out.append(g)
    return out


def _same_point(p, q) -> bool:
    return abs(p[0] * q[1] - p[1] * q[0]) < 1e-7 * max(1.0, abs(p[0]) + abs(p[1])) * max(1.0, abs(q[0]) + abs(q[1]))


def b_by_normalization(group, x: complex, y: complex) -> Fraction:
    """Spoke end value on the invariant form prod_h l_{p.h}.

    The form has one linear factor per element of the projective image;
    the normalized valuation at the color of p gives +1 to each factor
    vanishing at p and -1 to every other factor, divided by the degree.
    """
    image = projective_image(group)
    vanishing = 0
    for a, b, c, d in image:
        q = (x * a + y * c, x * b + y * d)
        if _same_point((x, y), q):
            vanishing += 1
    deg = len(image)
    return Fraction(vanishing - (deg - vanishing), deg)


# tiling search used to decode the completion diagrams ------------------------------

def tilings(candidates, accept, max_size: int = 4) -> list:
    """All subsets of candidate records accepted by the predicate."""
    found = []
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(candidates, k):
            if accept(combo):
                found.append(combo)
    return found
