"""Coordinate-free orientation assignments: axioms, enumeration, hole/gon tests.

An assignment gives every triple a<b<c a boolean orientation (true = positive
= counterclockwise). Validity means every 4-tuple's sign sequence
(σ_abc, σ_abd, σ_acd, σ_bcd) is one of the eight "two-block" patterns, which
is exactly what the two realizability clause pairs demand.
"""

from itertools import combinations

from .errors import BoundExceeded, InvalidAssignment, PreconditionViolated
from .geometry import orient3

_builtin_enumerate = enumerate

_rank_cache = {}


def _ranks(n):
    if n not in _rank_cache:
        triples = list(combinations(range(1, n + 1), 3))
        _rank_cache[n] = (triples, {t: i for i, t in _builtin_enumerate(triples)})
    return _rank_cache[n]


class OrientationAssignment:
    """Total assignment of boolean orientations to all triples on 1..n."""

    __slots__ = ("n", "_vals")

    def __init__(self, n, values):
        triples, rank = _ranks(n)
        self.n = n
        if callable(values):
            self._vals = [bool(values(*t)) for t in triples]
        elif isinstance(values, dict):
            if len(values) != len(triples):
                raise PreconditionViolated("assignment must cover all triples")
            self._vals = [bool(values[t]) for t in triples]
        else:
            vals = list(values)
            if len(vals) != len(triples):
                raise PreconditionViolated("assignment must cover all triples")
            self._vals = [bool(v) for v in vals]

    def value(self, a, b, c):
        return self._vals[_ranks(self.n)[1][(a, b, c)]]

    def triples(self):
        return iter(_ranks(self.n)[0])

    def vector(self):
        return tuple(self._vals)

    def as_dict(self):
        return dict(zip(_ranks(self.n)[0], self._vals))

    def __eq__(self, other):
        return (isinstance(other, OrientationAssignment)
                and self.n == other.n and self._vals == other._vals)

    def __hash__(self):
        return hash((self.n, tuple(self._vals)))

    def __repr__(self):
        return f"OrientationAssignment(n={self.n}, {''.join('+-'[not v] for v in self._vals)})"


def first_violation(a):
    """First 4-tuple (lex) violating the realizability clauses, or None."""
    v = a.value
    for t in combinations(range(1, a.n + 1), 4):
        w, x, y, z = t
        s1, s2, s3, s4 = v(w, x, y), v(w, x, z), v(w, y, z), v(x, y, z)
        if s1 == s3 and s2 != s1:
            return t
        if s1 == s4 and s3 != s1:
            return t
    return None


def check_axioms(a):
    return first_violation(a) is None


def enumerate(n, constraint=None, bound=8):
    """Yield every valid assignment on n elements exactly once, in
    lexicographic order of the triple-value vector (false < true).

    The optional constraint filters complete assignments. Backtracking
    prunes each 4-tuple as soon as its triples are all decided.
    """
    if n > bound:
        raise BoundExceeded(f"n={n} above enumeration bound {bound}")
    triples, rank = _ranks(n)
    m = len(triples)
    if m == 0:
        a = OrientationAssignment(n, [])
        if constraint is None or constraint(a):
            yield a
        return
    vals = [False] * m

    # conditions to check when triples[i] is decided: each is a tuple of
    # three ranks (r1, r2, r3) meaning "vals[r1]==vals[r3] -> vals[r2]==vals[r1]"
    checks = [[] for _ in range(m)]
    for t in combinations(range(1, n + 1), 4):
        w, x, y, z = t
        r_wxy, r_wxz = rank[(w, x, y)], rank[(w, x, z)]
        r_wyz, r_xyz = rank[(w, y, z)], rank[(x, y, z)]
        checks[r_wyz].append((r_wxy, r_wxz, r_wyz))
        checks[r_xyz].append((r_wxy, r_wyz, r_xyz))

    def ok(i):
        for r1, r2, r3 in checks[i]:
            if vals[r1] == vals[r3] and vals[r2] != vals[r1]:
                return False
        return True

    i = 0
    state = [0] * m  # 0 = try false next, 1 = try true next, 2 = exhausted
    while i >= 0:
        if i == m:
            a = OrientationAssignment(n, list(vals))
            if constraint is None or constraint(a):
                yield a
            i -= 1
            continue
        if state[i] == 2:
            state[i] = 0
            i -= 1
            continue
        vals[i] = bool(state[i])
        state[i] += 1
        if ok(i):
            i += 1


def induced(points):
    """Assignment induced by a point set via exact orientation signs."""
    return OrientationAssignment(
        len(points), lambda a, b, c: orient3(points[a - 1], points[b - 1], points[c - 1]) > 0)


def _inside(v, i, a, b, c):
    """Containment of element i in triangle (a,b,c), from orientations alone.
    Only elements with a < i < c (i != b) can be inside."""
    if not (a < i < c) or i == b:
        return False
    s = v(a, b, c)
    if i < b:
        return v(a, i, b) != s and v(a, i, c) == s
    return v(b, i, c) != s and v(a, i, c) == s


def _triangle_masks(a):
    v = a.value
    n = a.n
    masks = {}
    for t in combinations(range(1, n + 1), 3):
        m = 0
        for i in range(t[0] + 1, t[2]):
            if _inside(v, i, *t):
                m |= 1 << i
        masks[t] = m
    return masks


def _require_valid(a):
    t = first_violation(a)
    if t is not None:
        raise InvalidAssignment(f"realizability axioms fail at 4-tuple {t}")


def _exists_subset(a, k, gon_only):
    n = a.n
    if k > n:
        return False
    masks = _triangle_masks(a)
    chosen = []

    def extend(start, cur_mask, forbidden):
        if len(chosen) == k:
            return True
        for x in range(start, n - (k - len(chosen)) + 2):
            bit = 1 << x
            if gon_only and (forbidden & bit):
                continue
            new_forbid = forbidden
            ok = True
            for i, j in combinations(chosen, 2):
                m = masks[(i, j, x)]
                if gon_only:
                    if m & (cur_mask | bit):
                        ok = False
                        break
                    new_forbid |= m
                elif m:
                    ok = False
                    break
            if ok:
                chosen.append(x)
                if extend(x + 1, cur_mask | bit, new_forbid):
                    return True
                chosen.pop()
        return False

    return extend(1, 0, 0)


def contains_khole(a, k):
    """True iff some k-subset is a hole: every triangle on its members is
    empty of all n elements (this subsumes convex position)."""
    _require_valid(a)
    return _exists_subset(a, k, gon_only=False)


def contains_kgon(a, k):
    """True iff some k-subset is in convex position: no member lies inside
    a triangle of three other members."""
    _require_valid(a)
    return _exists_subset(a, k, gon_only=True)


def reflect(a):
    """Mirror the assignment: triples within 2..n map to their reversed
    window (a,b,c) -> (n-c+2, n-b+2, n-a+2); triples with element 1 must be
    positive and stay positive."""
    n = a.n
    v = a.value
    out = {}
    for t in a.triples():
        x, y, z = t
        if x == 1:
            if not v(x, y, z):
                raise PreconditionViolated(f"o_{t} must be positive to reflect")
            out[t] = True
        else:
            out[(n - z + 2, n - y + 2, n - x + 2)] = v(x, y, z)
    return OrientationAssignment(n, out)


def to_text(a):
    lines = [str(a.n)]
    for t, val in zip(a.triples(), a.vector()):
        lines.append(f"{t[0]} {t[1]} {t[2]} {'+' if val else '-'}")
    return "\n".join(lines) + "\n"


def from_text(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n = int(lines[0])
    vals = {}
    for ln in lines[1:]:
        a, b, c, sign = ln.split()
        vals[(int(a), int(b), int(c))] = sign == "+"
    return OrientationAssignment(n, vals)
