"""CNF encodings of k-gon and k-hole avoidance for x-sorted point sequences.

Variants trade trust for size:
  T   trusted baseline: bidirectional containment definitions with redundant
      orientation literals, realizability clauses over all index 4-tuples,
      and one blocking clause per candidate subset.
  O1  domain-restricted rewrite of T: everything except the first-point units
      lives on indices 2..n, blocking is expressed per 6-subset over caps,
      cups, and emptiness variables.
  O2  compact staged encoding: existential cap/cup chain variables replace
      the per-subset blocking families.
  O3  O2 with one-directional definitions, long emptiness clauses only, a
      single realizability family, and chain/orientation exclusion binaries.
  O4  O3 plus a lexicographic symmetry-breaking predicate on the outermost
      orientation triples.

Variables are numbered contiguously: orientation triples first, then
containment, emptiness, and auxiliary chain blocks, each in lexicographic
key order.
"""

import io
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import IoFailure, PreconditionViolated, UnsupportedVariant

VARIANTS = ("T", "O1", "O2", "O3", "O4")


@dataclass(frozen=True)
class EncodingConfig:
    """Problem selection: point count, encoding variant, and targets.

    hole=k blocks empty convex k-subsets, gon=k blocks convex k-subsets;
    at least one must be set. The optimized variants support the
    combinations they were built for: O1 only 6-holes, O2..O4  6-holes,
    6-gons, or 6-holes together with 7-gons.
    """

    n: int
    variant: str
    hole: int | None = None
    gon: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise UnsupportedVariant(f"unknown variant {self.variant!r}")
        if self.n < 3:
            raise PreconditionViolated("need n >= 3")
        if self.hole is None and self.gon is None:
            raise PreconditionViolated("need a hole or gon target")
        for k in (self.hole, self.gon):
            if k is not None and k < 3:
                raise PreconditionViolated(f"target size {k} below 3")
        if self.variant == "T":
            return
        pair = (self.hole, self.gon)
        if self.variant == "O1":
            if pair != (6, None):
                raise UnsupportedVariant("O1 supports only the 6-hole target")
        elif pair not in ((6, None), (None, 6), (6, 7)):
            raise UnsupportedVariant(
                f"{self.variant} supports 6-holes, 6-gons, or 6-holes with "
                f"7-gons, not hole={self.hole} gon={self.gon}")


class VarMap:
    """Contiguous variable numbering for one encoding configuration.

    Section order: orientation o_abc (all triples, lexicographic), then
    optionally containment I_(a,b,c,i) (point i strictly between a and c,
    i != b), emptiness H_abc, cap/cup chain variables u4, u5, v4, and the
    longer-chain variables u5g, u6g, v5g, each section in key order.
    """

    def __init__(self, n, containment=False, hole=False, hole_aux=False,
                 gon_aux=False):
        self.n = n
        self.has_containment = containment
        self.has_hole = hole
        self.has_hole_aux = hole_aux
        self.has_gon_aux = gon_aux
        triples = list(combinations(range(1, n + 1), 3))
        self.triples = triples
        nt = len(triples)
        self._o = {t: r + 1 for r, t in enumerate(triples)}
        base = nt
        self._sections = [("o", 1, nt)]
        self._I = {}
        if containment:
            for (a, b, c) in triples:
                for i in range(a + 1, c):
                    if i != b:
                        base += 1
                        self._I[(a, b, c, i)] = base
            self._sections.append(("I", nt + 1, base))
        self._H = {}
        if hole:
            lo = base
            for t in triples:
                base += 1
                self._H[t] = base
            self._sections.append(("H", lo + 1, base))
        names = []
        if hole_aux:
            names += ["u4", "u5", "v4"]
        if gon_aux:
            names += ["u5g", "u6g", "v5g"]
        for name in names:
            lo = base
            setattr(self, "_" + name, {t: lo + r + 1 for r, t in enumerate(triples)})
            base += nt
            self._sections.append((name, lo + 1, base))
        self.num_vars = base

    def o(self, a, b, c):
        return self._o[(a, b, c)]

    def I(self, a, b, c, i):
        return self._I[(a, b, c, i)]

    def H(self, a, b, c):
        return self._H[(a, b, c)]

    def u4(self, a, c, d):
        return self._u4[(a, c, d)]

    def u5(self, a, d, e):
        return self._u5[(a, d, e)]

    def v4(self, a, c, d):
        return self._v4[(a, c, d)]

    def u5g(self, a, d, e):
        return self._u5g[(a, d, e)]

    def u6g(self, a, e, f):
        return self._u6g[(a, e, f)]

    def v5g(self, a, d, e):
        return self._v5g[(a, d, e)]

    def orientation_count(self):
        return len(self.triples)

    def name(self, var):
        """Section name and key tuple for a variable id."""
        for sec, lo, hi in self._sections:
            if lo <= var <= hi:
                if sec == "I":
                    for k, v in self._I.items():
                        if v == var:
                            return sec, k
                return sec, self.triples[(var - lo) % len(self.triples)]
        raise PreconditionViolated(f"variable {var} out of range")

    @classmethod
    def from_config(cls, cfg):
        if cfg.variant == "T":
            return cls(cfg.n, containment=True, hole=cfg.hole is not None)
        if cfg.variant == "O1":
            return cls(cfg.n, containment=True, hole=True)
        # O2..O4
        if cfg.hole is None:  # gon-only
            return cls(cfg.n, hole_aux=True)
        return cls(cfg.n, containment=True, hole=True, hole_aux=True,
                   gon_aux=cfg.gon is not None)


class CnfFormula:
    """Clause list with a fixed variable count and optional variable map.

    Clauses are stored as tuples of nonzero integer literals sorted by
    variable id, in a deterministic emission order.
    """

    def __init__(self, num_vars, varmap=None):
        self.num_vars = num_vars
        self.varmap = varmap
        self.clauses = []

    def add(self, *lits):
        self.clauses.append(tuple(sorted(lits, key=abs)))

    def add_clause(self, lits):
        self.clauses.append(tuple(sorted(lits, key=abs)))

    def extend_raw(self, clauses):
        """Append clauses already in canonical literal order."""
        self.clauses.extend(clauses)

    @property
    def num_clauses(self):
        return len(self.clauses)

    def stats(self):
        return self.num_vars, len(self.clauses)


def emit_dimacs(formula, out=None):
    """Serialize to DIMACS CNF. With out=None returns the text; a string or
    path argument writes the file; a file-like object is written to."""
    if out is None:
        buf = io.StringIO()
        _write_dimacs(formula, buf)
        return buf.getvalue()
    if hasattr(out, "write"):
        _write_dimacs(formula, out)
        return None
    try:
        with open(out, "w") as fh:
            _write_dimacs(formula, fh)
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc}") from exc
    return None


def _write_dimacs(formula, fh):
    fh.write(f"p cnf {formula.num_vars} {len(formula.clauses)}\n")
    batch = []
    for cl in formula.clauses:
        batch.append(" ".join(map(str, cl)) + " 0\n")
        if len(batch) >= 65536:
            fh.write("".join(batch))
            batch.clear()
    fh.write("".join(batch))


# ---------------------------------------------------------------------------
# clause families


def _units(f, vm):
    # first point composes positively with every later pair
    n = vm.n
    for a in range(2, n):
        for b in range(a + 1, n + 1):
            f.add(vm.o(1, a, b))


def _containment_defs(f, vm, legacy, forward_only, domain_from):
    """Definitions tying containment variables to orientation signs.

    legacy=True adds the redundant third orientation literal on both sides
    (8 clauses per variable); otherwise 4 forward + 2 backward, or forward
    only. domain_from=1 (trusted) also covers triples on the first point,
    where i below b forces the variable false outright.
    """
    o = vm.o
    for (a, b, c) in vm.triples:
        if a < domain_from:
            continue
        for i in range(a + 1, c):
            if i == b:
                continue
            I = vm.I(a, b, c, i)
            s = o(a, b, c)
            if a == 1 and i < b:
                f.add(-I)
                continue
            if i < b:
                p, q = o(a, i, b), o(a, i, c)
                r = o(i, b, c) if legacy else None
                f.add(-I, -s, -p)
                f.add(-I, -s, q)
                if legacy:
                    f.add(-I, -s, r)
                f.add(-I, s, p)
                f.add(-I, s, -q)
                if legacy:
                    f.add(-I, s, -r)
                if not forward_only:
                    if legacy:
                        f.add(-s, p, -q, -r, I)
                        f.add(s, -p, q, r, I)
                    else:
                        f.add(-s, p, -q, I)
                        f.add(s, -p, q, I)
            else:
                q, t = o(a, i, c), o(b, i, c)
                w = o(a, b, i) if legacy else None
                f.add(-I, -s, q)
                f.add(-I, -s, -t)
                if legacy:
                    f.add(-I, -s, w)
                f.add(-I, s, -q)
                f.add(-I, s, t)
                if legacy:
                    f.add(-I, s, -w)
                if not forward_only:
                    if legacy:
                        f.add(-s, -q, t, -w, I)
                        f.add(s, q, -t, w, I)
                    else:
                        f.add(-s, -q, t, I)
                        f.add(s, q, -t, I)


def _emptiness_defs(f, vm, binaries, domain_from, skip_first_low=False):
    """Per-triple emptiness: binaries H -> not-contained per witness, and a
    long clause H or some containment variable."""
    for (a, b, c) in vm.triples:
        if a < domain_from:
            continue
        H = vm.H(a, b, c)
        live = [i for i in range(a + 1, c) if i != b]
        if binaries:
            for i in live:
                if skip_first_low and a == 1 and i < b:
                    continue
                f.add(-H, -vm.I(a, b, c, i))
        f.add_clause([H] + [vm.I(a, b, c, i) for i in live])


def _realizability(f, vm, domain_from, families):
    """Realizability clause pairs per index 4-tuple. families selects from
    the three interlocking transitivity shapes."""
    o = vm.o
    for (w, x, y, z) in combinations(range(domain_from, vm.n + 1), 4):
        if "ax1" in families:
            f.add(-o(w, x, y), -o(w, y, z), o(w, x, z))
            f.add(o(w, x, y), o(w, y, z), -o(w, x, z))
        if "ax2" in families:
            f.add(-o(w, x, y), -o(x, y, z), o(w, y, z))
            f.add(o(w, x, y), o(x, y, z), -o(w, y, z))
        if "rax1" in families:
            f.add(-o(x, y, z), -o(w, x, z), o(w, y, z))
            f.add(o(x, y, z), o(w, x, z), -o(w, y, z))


def _chain_exclusions(f, vm):
    """A cap chain through a,c,d contradicts a positive o_acd, a cup chain a
    negative one."""
    for (a, c, d) in combinations(range(2, vm.n + 1), 3):
        if c - a < 2:
            continue
        f.add(-vm.u4(a, c, d), -vm.o(a, c, d))
        f.add(-vm.v4(a, c, d), vm.o(a, c, d))


def _trusted_hole_target(f, vm, k):
    for S in combinations(range(1, vm.n + 1), k):
        f.add_clause([-vm.H(*t) for t in combinations(S, 3)])


def _trusted_gon_target(f, vm, k):
    for S in combinations(range(1, vm.n + 1), k):
        lits = []
        for (p, q, r, s) in combinations(S, 4):
            lits.append(vm.I(p, q, s, r))
            lits.append(vm.I(p, r, s, q))
        f.add_clause(lits)


def _subset_hole_target(f, vm):
    """Per-6-subset blocking over indices 2..n: cap/cup case split with an
    emptiness literal, then the all-cap 5-subset family."""
    n = vm.n
    o, H = vm.o, vm.H
    out = f.clauses
    for S in combinations(range(2, n + 1), 6):
        s1, s2, s3, s4, s5, s6 = S
        mids = (s2, s3, s4, s5)
        out.append(tuple(sorted(
            (o(s1, s2, s3), o(s2, s3, s4), o(s3, s4, s5), o(s4, s5, s6),
             -H(s1, s3, s5)), key=abs)))
        for j in range(4):
            m = mids[j]
            x, y, z = mids[:j] + mids[j + 1:]
            out.append(tuple(sorted(
                (o(s1, x, y), o(x, y, z), o(y, z, s6), -o(s1, m, s6),
                 -H(s1, y, s6)), key=abs)))
        for (b, c) in combinations(mids, 2):
            bp, cp = (t for t in mids if t != b and t != c)
            out.append(tuple(sorted(
                (o(s1, b, c), o(b, c, s6), -o(s1, bp, cp), -o(bp, cp, s6),
                 -H(s1, min(c, cp), max(c, cp))), key=abs)))
    for (a, b, c, d, e) in combinations(range(2, n + 1), 5):
        out.append(tuple(sorted(
            (-o(a, b, c), -o(b, c, d), -o(c, d, e), -H(a, c, e)), key=abs)))


def _staged_hole_target(f, vm):
    """Existential cap/cup chains with emptiness guards, then the clash
    families pairing caps against cups."""
    n = vm.n
    o, H, u4, u5, v4 = vm.o, vm.H, vm.u4, vm.u5, vm.v4
    R = range(2, n + 1)
    for (a, b, c, d) in combinations(R, 4):
        f.add(o(a, b, c), o(b, c, d), u4(a, c, d))
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-u4(a, c, d), o(c, d, e), -H(a, c, e), u5(a, d, e))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for b in range(a + 1, e):
                if b != d:
                    f.add(-u5(a, d, e), -o(a, b, e))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for g in range(e + 1, n + 1):
                f.add(-u5(a, d, e), o(d, e, g))
    for (a, b, c, d) in combinations(R, 4):
        f.add(-o(a, b, c), -o(b, c, d), v4(a, c, d))
    for (a, d) in combinations(R, 2):
        if d - a < 4:
            continue
        for c in range(a + 2, d):
            for c2 in range(a + 2, d):
                if c2 != c:
                    f.add(-u4(a, c, d), -v4(a, c2, d),
                          -H(a, min(c, c2), max(c, c2)))
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-v4(a, c, d), -o(c, d, e), -H(a, c, e))


def _staged_gon6_target(f, vm):
    """Convex-position blocking without emptiness: cap/cup chains alone."""
    n = vm.n
    o, u4, u5, v4 = vm.o, vm.u4, vm.u5, vm.v4
    R = range(2, n + 1)
    for (a, b, c, d) in combinations(R, 4):
        f.add(o(a, b, c), o(b, c, d), u4(a, c, d))
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-u4(a, c, d), o(c, d, e), u5(a, d, e))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for b in range(a + 1, e):
                if b != d:
                    f.add(-u5(a, d, e), -o(a, b, e))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for g in range(e + 1, n + 1):
                f.add(-u5(a, d, e), o(d, e, g))
    for (a, b, c, d) in combinations(R, 4):
        f.add(-o(a, b, c), -o(b, c, d), v4(a, c, d))
    for (a, d) in combinations(R, 2):
        if d - a < 4:
            continue
        for c in range(a + 2, d):
            for c2 in range(a + 2, d):
                if c2 != c:
                    f.add(-u4(a, c, d), -v4(a, c2, d))
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-v4(a, c, d), -o(c, d, e))


def _staged_gon7_target(f, vm):
    """7-gon blocking sharing the 6-hole chain starters: longer cap/cup
    chains u5g, u6g, v5g, then the five split families."""
    n = vm.n
    o = vm.o
    u4, v4 = vm.u4, vm.v4
    u5g, u6g, v5g = vm.u5g, vm.u6g, vm.v5g
    R = range(2, n + 1)
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-u4(a, c, d), o(c, d, e), u5g(a, d, e))
    for (a, d, e, g) in combinations(R, 4):
        if d - a >= 3:
            f.add(-u5g(a, d, e), o(d, e, g), u6g(a, e, g))
    for (a, c, d, e) in combinations(R, 4):
        if c - a >= 2:
            f.add(-v4(a, c, d), -o(c, d, e), v5g(a, d, e))
    for (a, e, g) in combinations(R, 3):
        if e - a >= 4:
            for h in range(g + 1, n + 1):
                f.add(-u6g(a, e, g), o(e, g, h))
    for (a, e, g) in combinations(R, 3):
        if e - a >= 4:
            for b in range(a + 1, g):
                if b != e:
                    f.add(-u6g(a, e, g), -o(a, b, g))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for c2 in range(a + 2, e):
                if c2 != d:
                    f.add(-u5g(a, d, e), -v4(a, c2, e))
    for (a, c, e) in combinations(R, 3):
        if c - a >= 2:
            for d2 in range(a + 3, e):
                if d2 != c:
                    f.add(-u4(a, c, e), -v5g(a, d2, e))
    for (a, d, e) in combinations(R, 3):
        if d - a >= 3:
            for g in range(e + 1, n + 1):
                f.add(-v5g(a, d, e), -o(d, e, g))


def sbp_clauses(n, varmap):
    """Lexicographic symmetry break comparing the orientation triples walking
    inward-to-outward on the left against the mirrored walk on the right.
    Aux-free expansion: position i contributes 2^i clauses."""
    half_up = (n + 1) // 2
    half_dn = n // 2
    m = half_up - 2
    out = []
    o = varmap.o
    for i in range(m):
        L = [o(half_up - 1 - j, half_up - j, half_up + 1 - j) for j in range(i + 1)]
        R = [o(half_dn + 1 + j, half_dn + 2 + j, half_dn + 3 + j) for j in range(i + 1)]
        for b in range(1 << i):
            lits = []
            for j in range(i):
                if (b >> j) & 1:
                    lits += [-L[j], -R[j]]
                else:
                    lits += [L[j], R[j]]
            lits += [-L[i], R[i]]
            out.append(tuple(sorted(lits, key=abs)))
    return out


def encode(config):
    """Build the CNF for a configuration. Deterministic: same configuration,
    same clause list."""
    cfg = config
    vm = VarMap.from_config(cfg)
    f = CnfFormula(vm.num_vars, vm)
    if cfg.variant == "T":
        _units(f, vm)
        _containment_defs(f, vm, legacy=True, forward_only=False, domain_from=1)
        if cfg.hole is not None:
            _emptiness_defs(f, vm, binaries=True, domain_from=1,
                            skip_first_low=True)
        _realizability(f, vm, 1, ("ax1", "ax2"))
        if cfg.hole is not None:
            _trusted_hole_target(f, vm, cfg.hole)
        if cfg.gon is not None:
            _trusted_gon_target(f, vm, cfg.gon)
        return f
    if cfg.variant == "O1":
        _units(f, vm)
        _containment_defs(f, vm, legacy=False, forward_only=False, domain_from=2)
        _emptiness_defs(f, vm, binaries=True, domain_from=2)
        _realizability(f, vm, 2, ("ax1", "ax2", "rax1"))
        _subset_hole_target(f, vm)
        return f
    # O2 / O3 / O4
    reduced = cfg.variant in ("O3", "O4")
    _units(f, vm)
    if cfg.hole is not None:
        _containment_defs(f, vm, legacy=False, forward_only=reduced, domain_from=2)
        _emptiness_defs(f, vm, binaries=not reduced, domain_from=2)
    if reduced:
        _realizability(f, vm, 2, ("ax1",))
        _chain_exclusions(f, vm)
    else:
        _realizability(f, vm, 2, ("ax1", "ax2", "rax1"))
    if cfg.hole is not None:
        _staged_hole_target(f, vm)
        if cfg.gon is not None:
            _staged_gon7_target(f, vm)
    else:
        _staged_gon6_target(f, vm)
    if cfg.variant == "O4":
        f.extend_raw(sbp_clauses(cfg.n, vm))
    return f


# ---------------------------------------------------------------------------
# auxiliary-variable elimination


def _unit_propagate(clauses, assumed):
    """Propagate assumed literals over clauses; True means conflict."""
    assign = {}
    for lit in assumed:
        if assign.get(abs(lit), lit) != lit:
            return True
        assign[abs(lit)] = lit
    changed = True
    while changed:
        changed = False
        for cl in clauses:
            unassigned = None
            sat = False
            for lit in cl:
                cur = assign.get(abs(lit))
                if cur == lit:
                    sat = True
                    break
                if cur is None:
                    if unassigned is None:
                        unassigned = lit
                    else:
                        unassigned = False  # two free literals
            if sat or unassigned is False:
                continue
            if unassigned is None:
                return True
            assign[abs(unassigned)] = unassigned
            changed = True
    return False


def eliminate_aux(formula):
    """Resolve away the chain variables and prune the fallout.

    Every pair of clauses with opposite chain literals is resolved
    (tautologies dropped), per chain section from the longest chains down.
    The surviving resolvents are deduplicated, syntactically subsumed ones
    removed, and resolvents refutable by unit propagation over the purely
    orientational clauses discarded. Untouched clauses pass through, so a
    formula without chain variables is returned as-is.
    """
    vm = formula.varmap
    if vm is None or not (vm.has_hole_aux or vm.has_gon_aux):
        return formula
    order = []
    if vm.has_gon_aux:
        order += [vm._u6g, vm._u5g, vm._v5g]
    if vm.has_hole_aux:
        order += [vm._u5, vm._u4, vm._v4]
    aux_ids = set()
    for sec in order:
        aux_ids.update(sec.values())

    untouched = []
    work = set()
    for cl in formula.clauses:
        if any(abs(l) in aux_ids for l in cl):
            work.add(frozenset(cl))
        else:
            untouched.append(cl)

    for sec in order:
        for x in sec.values():
            pos = [c for c in work if x in c]
            neg = [c for c in work if -x in c]
            if not pos and not neg:
                continue
            for c in pos:
                work.discard(c)
            for c in neg:
                work.discard(c)
            for p in pos:
                pr = p - {x}
                for q in neg:
                    r = pr | (q - {-x})
                    if any(-l in r for l in r):
                        continue
                    work.add(r)

    untouched_set = set(map(frozenset, untouched))
    resolvents = {r for r in work if r not in untouched_set}

    # drop resolvents subsumed by any other clause
    universe = sorted(untouched_set | resolvents, key=len)
    kept = set()
    for r in sorted(resolvents, key=len):
        subsumed = False
        for d in universe:
            if len(d) >= len(r):
                break
            if d != r and d <= r:
                subsumed = True
                break
        if not subsumed:
            kept.add(r)

    # drop resolvents already refuted by the orientation-only clauses
    n_orient = vm.orientation_count()
    orient_clauses = [c for c in untouched if all(abs(l) <= n_orient for l in c)]
    final = []
    for r in kept:
        if not _unit_propagate(orient_clauses, [-l for l in r]):
            final.append(tuple(sorted(r, key=abs)))

    new_vm = VarMap(vm.n, containment=vm.has_containment, hole=vm.has_hole)
    out = CnfFormula(new_vm.num_vars, new_vm)
    out.extend_raw(untouched)
    out.extend_raw(sorted(final))
    return out
