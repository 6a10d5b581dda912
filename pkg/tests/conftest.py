"""Shared test helpers: semantic model construction from concrete point
sets, formula evaluation, and random canonical point-set generation."""

import random
from fractions import Fraction

import pytest

from gonsat import geometry as ge


def honest_assignment(points, vm):
    """Extend the orientations of a concrete point set to every variable of
    the map, using the geometric meaning of each section."""
    P = [None] + list(points)

    def sig(a, b, c):
        return ge.orient3(P[a], P[b], P[c]) > 0

    val = {}
    for (a, b, c) in vm.triples:
        val[vm.o(a, b, c)] = sig(a, b, c)
    if vm.has_containment:
        for (a, b, c, i), x in vm._I.items():
            val[x] = ge.point_in_triangle(P[i], P[a], P[b], P[c])
    H = {}
    if vm.has_hole:
        for (a, b, c) in vm.triples:
            H[(a, b, c)] = not any(
                ge.point_in_triangle(P[i], P[a], P[b], P[c])
                for i in range(a + 1, c) if i != b)
            val[vm.H(a, b, c)] = H[(a, b, c)]
    u4 = {}
    v4 = {}
    if vm.has_hole_aux:
        for (a, c, d) in vm.triples:
            u4[(a, c, d)] = any(not sig(a, b, c) and not sig(b, c, d)
                                for b in range(a + 1, c))
            v4[(a, c, d)] = any(sig(a, b, c) and sig(b, c, d)
                                for b in range(a + 1, c))
            val[vm.u4(a, c, d)] = u4[(a, c, d)]
            val[vm.v4(a, c, d)] = v4[(a, c, d)]
        for (a, d, e) in vm.triples:
            if vm.has_hole:
                val[vm.u5(a, d, e)] = any(
                    u4[(a, c, d)] and not sig(c, d, e) and H[(a, c, e)]
                    for c in range(a + 2, d))
            else:
                val[vm.u5(a, d, e)] = any(
                    u4[(a, c, d)] and not sig(c, d, e)
                    for c in range(a + 2, d))
    if vm.has_gon_aux:
        u5g = {}
        for (a, d, e) in vm.triples:
            u5g[(a, d, e)] = any(u4[(a, c, d)] and not sig(c, d, e)
                                 for c in range(a + 2, d))
            val[vm.u5g(a, d, e)] = u5g[(a, d, e)]
        for (a, e, f) in vm.triples:
            val[vm.u6g(a, e, f)] = any(u5g[(a, d, e)] and not sig(d, e, f)
                                       for d in range(a + 3, e))
        for (a, d, e) in vm.triples:
            val[vm.v5g(a, d, e)] = any(v4[(a, c, d)] and sig(c, d, e)
                                       for c in range(a + 2, d))
    return val


def eval_formula(f, val):
    """First falsified clause of f under val, or None."""
    for cl in f.clauses:
        if not any(val[abs(l)] == (l > 0) for l in cl):
            return cl
    return None


def random_canonical(n, rng, span=200):
    """Random general-position set, x-sorted, with the first point placed
    so that it composes positively with every later pair."""
    while True:
        xs = rng.sample(range(span), n - 1)
        pts = sorted((x, rng.randrange(span)) for x in xs)
        pts = [(Fraction(x), Fraction(y)) for x, y in pts]
        first = (pts[0][0] - 1, Fraction(40 * span * span))
        allp = [first] + pts
        try:
            ge.check_general_position(allp)
        except Exception:
            continue
        if all(ge.orient3(allp[0], allp[a], allp[b]) > 0
               for a in range(1, n) for b in range(a + 1, n)):
            return allp


def reflected_points(points):
    """Mirror points 2..n about a vertical axis and relabel in reverse
    order; a fresh far-above first point keeps the leading row positive."""
    rest = [(-x, y) for (x, y) in points[1:]]
    rest.sort()
    m = 1 + max(abs(y) for _, y in rest)
    span = max(x for x, _ in rest) - min(x for x, _ in rest) + 1
    first = (rest[0][0] - 1, Fraction(4000 * (span + m) * (span + m)))
    allp = [first] + rest
    ge.check_general_position(allp)
    return allp


@pytest.fixture
def rng():
    return random.Random(987654321)
