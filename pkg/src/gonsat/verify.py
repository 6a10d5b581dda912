"""Cross-checking utilities: an entailment formula certifying that the
subset-blocking clause family is a consequence of the trusted encoding,
plus model decoding and combinatorial witness checks."""

from . import signotope
from .encoder import CnfFormula, EncodingConfig, _subset_hole_target, encode
from .errors import AxiomViolation, PreconditionViolated


def entailment_formula(n):
    """Trusted encoding plus a selector gadget asserting that at least one
    subset-blocking clause is falsified. Unsatisfiability certifies that
    every clause of that family is entailed.

    One fresh selector variable per blocked clause: the selector implies
    every literal of its clause false, and at least one selector is on.
    """
    if n < 6:
        raise PreconditionViolated("entailment formula needs n >= 6")
    base = encode(EncodingConfig(n, "T", hole=6))
    family = CnfFormula(base.num_vars, base.varmap)
    _subset_hole_target(family, base.varmap)

    out = CnfFormula(base.num_vars, None)
    out.extend_raw(base.clauses)
    selectors = []
    for clause in family.clauses:
        out.num_vars += 1
        sel = out.num_vars
        selectors.append(sel)
        for lit in clause:
            out.add(-sel, -lit)
    out.add_clause(selectors)
    return out


def parse_v_lines(text):
    """Extract model literals from solver output ("v" lines, 0-terminated)."""
    lits = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("v"):
            continue
        for tok in line[1:].split():
            val = int(tok)
            if val != 0:
                lits.append(val)
    return lits


def decode_model(varmap, model):
    """Project a model onto the orientation block and return the resulting
    orientation assignment.

    `model` is an iterable of nonzero signed variable ids (or a dict from
    variable id to bool). The orientation block must be fully assigned.
    Raises AxiomViolation if the projection is not a valid signotope;
    models of every encoding variant must decode cleanly, so a violation
    indicates a defect in the formula that produced the model.
    """
    if isinstance(model, dict):
        values = dict(model)
    else:
        values = {}
        for lit in model:
            values[abs(lit)] = lit > 0
    count = varmap.orientation_count()
    vals = {}
    for triple, var in varmap._o.items():
        if var not in values:
            raise PreconditionViolated(
                "model leaves orientation variable %d unassigned" % var)
        vals[triple] = values[var]
    assert len(vals) == count
    a = signotope.OrientationAssignment(varmap.n, vals)
    bad = signotope.first_violation(a)
    if bad is not None:
        raise AxiomViolation("decoded assignment violates signotope "
                             "exchange condition at %r" % (bad,))
    return a


def check_witness(a, holes=(), gons=()):
    """Report, for each requested size, whether the assignment contains a
    k-hole / k-gon. Keys are "<k>-hole" and "<k>-gon"."""
    report = {}
    for k in holes:
        report["%d-hole" % k] = signotope.contains_khole(a, k)
    for k in gons:
        report["%d-gon" % k] = signotope.contains_kgon(a, k)
    return report
