"""Cube-and-conquer partitioning over consecutive-triple orientation windows.

A cube fixes the signs of a run of consecutive orientation triples
(a, a+1, a+2) inside a centered window, skipping sign patterns that are
impossible (three positives or four negatives in a row) or symmetric
(lexicographically above their mirror image), then splits alternating
runs one step further. The union of cubes covers the search space modulo
the symmetry break, which the tautology formula certifies.
"""

from itertools import combinations

from .encoder import CnfFormula, VarMap, sbp_clauses
from .errors import IoFailure, PreconditionViolated, WindowTooLong


def window_anchor(n, length):
    """First triple start index of the centered cube window."""
    return max(2, min((n - length) // 2 + 1, n - length - 1))


def raw_patterns(length):
    """All 0/1 strings of the given length with no '111' and no '0000'
    substring, in lexicographic order."""
    out = []

    def rec(s):
        if len(s) == length:
            out.append(s)
            return
        for b in "01":
            t = s + b
            if t.endswith("111") or t.endswith("0000"):
                continue
            rec(t)

    rec("")
    return out


def _kept_patterns(n, length):
    """Drop patterns whose mirrored counterpart is lexicographically
    smaller, comparing outward along the symmetry-break anchor pairs while
    both anchors stay inside the window."""
    a0 = window_anchor(n, length)
    pos = {a: i for i, a in enumerate(range(a0, a0 + length))}
    left = range((n + 1) // 2 - 1, 1, -1)
    right = range(n // 2 + 1, n - 1)
    kept = []
    for p in raw_patterns(length):
        drop = False
        for la, ra in zip(left, right):
            if la not in pos or ra not in pos:
                break
            lv, rv = p[pos[la]], p[pos[ra]]
            if lv == rv:
                continue
            drop = lv > rv
            break
        if not drop:
            kept.append(p)
    return kept


def _split_offsets(pattern):
    """Offsets of '01010' in the zero-padded pattern; each marks an
    alternating run refined by one extra orientation decision."""
    q = "0" + pattern + "0"
    return [j for j in range(len(q) - 4) if q[j : j + 5] == "01010"]


def generate_cubes(n, length):
    """The cube list: window literals in window order, then refinement
    literals (positive sign first). Deterministic."""
    if length < 1:
        raise PreconditionViolated("cube window length must be positive")
    if length > n - 3:
        raise WindowTooLong(f"window length {length} exceeds n-3 = {n - 3}")
    vm = VarMap(n)
    a0 = window_anchor(n, length)
    cubes = []
    for p in _kept_patterns(n, length):
        base = [
            vm.o(a0 + j, a0 + j + 1, a0 + j + 2) * (1 if p[j] == "1" else -1)
            for j in range(length)
        ]
        offs = _split_offsets(p)
        refine_vars = [vm.o(a0 + j, a0 + j + 2, a0 + j + 4) for j in offs]
        for mask in range(1 << len(offs)):
            extra = [
                v * (-1 if (mask >> k) & 1 else 1)
                for k, v in enumerate(refine_vars)
            ]
            cubes.append(tuple(base + extra))
    return cubes


def implied_window_clauses(n, varmap):
    """Orientation clauses valid in every model: no three consecutive
    positive triples, no four consecutive negative ones."""
    o = varmap.o
    out = []
    for a in range(2, n - 3):
        out.append(tuple(sorted(
            (-o(a, a + 1, a + 2), -o(a + 1, a + 2, a + 3),
             -o(a + 2, a + 3, a + 4)), key=abs)))
    for a in range(2, n - 4):
        out.append(tuple(sorted(
            (o(a, a + 1, a + 2), o(a + 1, a + 2, a + 3),
             o(a + 2, a + 3, a + 4), o(a + 3, a + 4, a + 5)), key=abs)))
    return out


def tautology_formula(n, length):
    """CNF that is unsatisfiable exactly when the cubes cover all
    assignments allowed by the symmetry break and the implied window
    clauses: the negation of every cube plus those two families."""
    cubes = generate_cubes(n, length)
    vm = VarMap(n)
    f = CnfFormula(vm.num_vars, vm)
    for cube in cubes:
        f.add_clause([-lit for lit in cube])
    f.extend_raw(implied_window_clauses(n, vm))
    f.extend_raw(sbp_clauses(n, vm))
    return f


def emit_cubes(cubes, out=None):
    """Cube lines 'a <lits> 0'. out=None returns the text; otherwise a path
    or file-like object is written."""
    lines = ["a " + " ".join(map(str, c)) + " 0\n" for c in cubes]
    text = "".join(lines)
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
        return None
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc}") from exc
    return None


def emit_icnf(formula, cubes, out=None):
    """Incremental CNF: 'p inccnf' header, the formula's clauses, then the
    cube lines."""
    if out is None:
        import io

        buf = io.StringIO()
        emit_icnf(formula, cubes, buf)
        return buf.getvalue()
    if hasattr(out, "write"):
        out.write("p inccnf\n")
        batch = []
        for cl in formula.clauses:
            batch.append(" ".join(map(str, cl)) + " 0\n")
            if len(batch) >= 65536:
                out.write("".join(batch))
                batch.clear()
        out.write("".join(batch))
        out.write(emit_cubes(cubes))
        return None
    try:
        with open(out, "w") as fh:
            emit_icnf(formula, cubes, fh)
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc}") from exc
    return None


def parse_cubes(path):
    """Read 'a <lits> 0' lines; ignores comments and a 'p inccnf' header."""
    cubes = []
    try:
        with open(path) as fh:
            for ln in fh:
                ln = ln.strip()
                if not ln or ln.startswith(("c", "p")):
                    continue
                if not ln.startswith("a "):
                    continue
                lits = [int(x) for x in ln[2:].split()]
                if not lits or lits[-1] != 0:
                    raise PreconditionViolated(f"cube line missing terminator: {ln!r}")
                cubes.append(tuple(lits[:-1]))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return cubes
