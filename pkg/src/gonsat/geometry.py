"""Exact planar geometry: orientations, gon/hole detection, hull layers, normalization.

Points are (x, y) pairs of ints (or Fractions after normalization). All
predicates use exact arithmetic; there is no floating-point fast path.
"""

from fractions import Fraction
from itertools import combinations
from math import isqrt

from .errors import CollinearInput, GonsatError, IoFailure, PreconditionViolated

try:
    from importlib.resources import files as _res_files
except ImportError:  # pragma: no cover
    _res_files = None


def orient3(pa, pb, pc):
    """Sign of det[[1,1,1],[xa,xb,xc],[ya,yb,yc]]: +1 if pa,pb,pc turn
    counterclockwise (pc above line(pa,pb) for x-sorted inputs), -1 otherwise."""
    d = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    raise CollinearInput(f"collinear points {pa}, {pb}, {pc}")


def point_in_triangle(p, a, b, c):
    """True iff p lies strictly inside triangle abc."""
    s1 = orient3(a, b, p)
    s2 = orient3(b, c, p)
    s3 = orient3(c, a, p)
    return s1 == s2 == s3


def classify_subset(points, idx):
    """Classify the subset points[i] for i in idx.

    is_gon: the subset is in convex position (no member strictly inside a
    triangle of three other members). is_hole: is_gon and no other point of
    the set lies strictly inside the subset's convex hull.
    """
    idx = list(idx)
    if len(set(idx)) != len(idx) or len(idx) < 3:
        raise PreconditionViolated("need at least 3 distinct indices")
    sub = [points[i] for i in idx]
    is_gon = True
    for m in range(len(sub)):
        others = sub[:m] + sub[m + 1:]
        if any(point_in_triangle(sub[m], *t) for t in combinations(others, 3)):
            is_gon = False
            break
    if not is_gon:
        return {"is_gon": False, "is_hole": False}
    # a point is inside the hull iff it is inside some triangle of members
    chosen = set(idx)
    is_hole = True
    for z in range(len(points)):
        if z in chosen:
            continue
        if any(point_in_triangle(points[z], *t) for t in combinations(sub, 3)):
            is_hole = False
            break
    return {"is_gon": is_gon, "is_hole": is_hole}


def _triangle_masks(points):
    """Bitmask of points strictly inside each triple's triangle."""
    n = len(points)
    masks = {}
    for t in combinations(range(n), 3):
        a, b, c = (points[i] for i in t)
        m = 0
        for z in range(n):
            if z in t:
                continue
            if point_in_triangle(points[z], a, b, c):
                m |= 1 << z
        masks[t] = m
    return masks


def enumerate_holes(points, k, listing=False):
    """Count k-holes exactly (exhaustive over subsets, pruned).

    A subset is a k-hole iff every triangle spanned by three of its members
    contains no point of the set; this single rule covers both convexity
    (no member inside) and emptiness (no outsider inside).
    """
    n = len(points)
    if not 3 <= k <= n:
        raise PreconditionViolated(f"need 3 <= k <= n, got k={k}, n={n}")
    masks = _triangle_masks(points)
    found = []
    count = 0
    chosen = []

    def extend(start):
        nonlocal count
        if len(chosen) == k:
            count += 1
            if listing:
                found.append(tuple(chosen))
            return
        # not enough candidates left to finish
        for v in range(start, n - (k - len(chosen)) + 1):
            ok = True
            for i, j in combinations(chosen, 2):
                if masks[(i, j, v)]:
                    ok = False
                    break
            if ok:
                chosen.append(v)
                extend(v + 1)
                chosen.pop()

    extend(0)
    return (count, found) if listing else count


def enumerate_gons(points, k, listing=False):
    """Count k-gons (subsets in convex position) exactly."""
    n = len(points)
    if not 3 <= k <= n:
        raise PreconditionViolated(f"need 3 <= k <= n, got k={k}, n={n}")
    masks = _triangle_masks(points)
    found = []
    count = 0
    chosen = []

    def extend(start, cur_mask, forbidden):
        nonlocal count
        if len(chosen) == k:
            count += 1
            if listing:
                found.append(tuple(chosen))
            return
        for v in range(start, n - (k - len(chosen)) + 1):
            bit = 1 << v
            if forbidden & bit:
                continue
            new_forbid = forbidden
            ok = True
            for i, j in combinations(chosen, 2):
                m = masks[(i, j, v)]
                if m & (cur_mask | bit):
                    ok = False
                    break
                new_forbid |= m
            if ok:
                chosen.append(v)
                extend(v + 1, cur_mask | bit, new_forbid)
                chosen.pop()

    extend(0, 0, 0)
    return (count, found) if listing else count


def convex_hull(points, idx=None):
    """Indices of the convex hull of points[i] for i in idx, counterclockwise."""
    if idx is None:
        idx = range(len(points))
    idx = sorted(idx, key=lambda i: points[i])
    if len(idx) <= 2:
        return list(idx)

    def half(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and orient3(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = half(idx)
    upper = half(reversed(idx))
    return lower[:-1] + upper[:-1]


def hull_layers(points):
    """Sizes of nested convex hulls, outermost first; sizes sum to n."""
    remaining = list(range(len(points)))
    sizes = []
    while remaining:
        if len(remaining) <= 2:
            sizes.append(len(remaining))
            break
        hull = convex_hull(points, remaining)
        sizes.append(len(hull))
        remaining = [i for i in remaining if i not in set(hull)]
    return sizes


def _find_positive_direction(vecs):
    """Integer direction d with d·v > 0 for every v in vecs.

    Exists whenever the vectors fit in an open half-plane. First tries the
    endpoint sum, then rational approximations of the exact angle bisector
    of the two extreme rays, verified exactly each round.
    """
    def as_ints(v):
        fx, fy = Fraction(v[0]), Fraction(v[1])
        m = fx.denominator * fy.denominator
        return (int(fx * m), int(fy * m))

    # per-vector positive scaling changes no sign, so integer rays suffice
    first, last = as_ints(vecs[0]), as_ints(vecs[-1])

    def good(d):
        return all(d[0] * vx + d[1] * vy > 0 for vx, vy in vecs)

    d = (first[0] + last[0], first[1] + last[1])
    if good(d):
        return d
    nf = first[0] * first[0] + first[1] * first[1]
    nl = last[0] * last[0] + last[1] * last[1]
    for k in range(1, 256):
        # af/2^k and al/2^k approximate |first| and |last| from below
        af = isqrt(nf << (2 * k))
        al = isqrt(nl << (2 * k))
        d = (al * first[0] + af * last[0], al * first[1] + af * last[1])
        if good(d):
            return d
    raise GonsatError("no separating direction found")  # pragma: no cover


def normalize(points):
    """Map a radially sorted point set to one with strictly increasing x.

    Input: p_1 extremal, p_2..p_n sorted around p_1 by angle (either
    rotational direction). Output: exact-rational points with x_1 < x_2 < ...
    and every triple orientation identical to the input's. The chain is
    translation, an exact positive-determinant linear map, a shear, a small
    exact perturbation of p_1, and a projective map, each orientation-
    preserving, verified against the input signs before returning.
    """
    n = len(points)
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if n <= 1:
        return pts
    p1 = pts[0]
    us = [(p[0] - p1[0], p[1] - p1[1]) for p in pts[1:]]
    if any(u == (0, 0) for u in us):
        raise PreconditionViolated("duplicate point")

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    # radial order and extremality: consecutive turns share one sign, and
    # every ray stays on that same side of the first ray (no wrap-around)
    s = 1
    if n >= 3:
        c0 = cross(us[0], us[1])
        if c0 == 0:
            raise CollinearInput("collinear with first point")
        s = 1 if c0 > 0 else -1
        for i in range(1, len(us) - 1):
            c = cross(us[i], us[i + 1])
            if c == 0:
                raise CollinearInput("collinear with first point")
            if (c > 0) != (s > 0):
                raise PreconditionViolated("points not radially sorted around p_1")
        for i in range(2, len(us)):
            c = cross(us[0], us[i])
            if c == 0:
                raise CollinearInput("collinear with first point")
            if (c > 0) != (s > 0):
                raise PreconditionViolated("p_1 is not extremal")

    orig_signs = {}
    for t in combinations(range(n), 3):
        orig_signs[t] = orient3(pts[t[0]], pts[t[1]], pts[t[2]])

    d = _find_positive_direction(us)
    dx, dy = d
    # rows (d; d_perp): determinant |d|^2 > 0, so orientations survive
    mapped = [(dx * ux + dy * uy, -dy * ux + dx * uy) for ux, uy in us]
    # shear y += c*x keeps orientations and lifts everything above the x-axis
    c = 1 + max(Fraction(0), max(Fraction(-y, x) for x, y in mapped))
    mapped = [(Fraction(x), y + c * x) for x, y in mapped]

    for k in range(1, 512):
        eps = Fraction(1, 2 ** k)
        if s > 0:
            # slopes increase with label; x~ = y/x, p_1 goes just below the fan
            full = [(eps, -eps)] + mapped
            cand = [(y / x, 1 / x) for x, y in full]
        else:
            # ratios x/y increase with label; p_1 goes onto the fan's upper end
            full = [(Fraction(0), eps)] + mapped
            cand = [(x / y, Fraction(-1) / y) for x, y in full]
        ok = all(cand[i][0] < cand[i + 1][0] for i in range(n - 1))
        if ok:
            for t, sign in orig_signs.items():
                if orient3(cand[t[0]], cand[t[1]], cand[t[2]]) != sign:
                    ok = False
                    break
        if ok:
            return cand
    raise GonsatError("normalization failed to converge")  # pragma: no cover


def load_point_set(path):
    """Read one point per line ("x y", '#' comments allowed)."""
    pts = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise IoFailure(f"{path}:{lineno}: expected two integers")
                pts.append((int(parts[0]), int(parts[1])))
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    except ValueError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    return pts


def check_general_position(points):
    """Raise CollinearInput if any triple is collinear."""
    for t in combinations(range(len(points)), 3):
        orient3(points[t[0]], points[t[1]], points[t[2]])


_overmars_cache = None


def overmars_points():
    """The bundled 29-point set with no 6-hole, sorted by x, verified
    to be in general position."""
    global _overmars_cache
    if _overmars_cache is None:
        data = _res_files("gonsat").joinpath("data/overmars29.txt")
        pts = []
        for line in data.read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                x, y = line.split()
                pts.append((int(x), int(y)))
        check_general_position(pts)
        _overmars_cache = pts
    return list(_overmars_cache)
