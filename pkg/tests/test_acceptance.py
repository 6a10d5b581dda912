"""Acceptance battery for the complete pipeline.

Every test here pins an externally meaningful quantity: formula sizes at
the production scale, minimal point counts recovered from scratch by the
bundled solver, cube census values, model counts cross-checked against
axiom-level enumeration, and desk-scale campaigns driven through a real
external solver.  Tests that need the external solver skip when it is
absent; everything else runs everywhere.
"""

import functools
import hashlib
import random
import shutil
import time

import pytest

from gonsat import geometry as ge
from gonsat import signotope as sg
from gonsat.encoder import EncodingConfig, eliminate_aux, emit_dimacs, encode
from gonsat.minisolver import MiniSolver, solve_formula
from gonsat.partition import emit_cubes, generate_cubes, tautology_formula
from gonsat.runner import run_campaign
from gonsat.verify import decode_model, entailment_formula

SPLR = shutil.which("splr") or "/opt/cargo/bin/splr"
needs_splr = pytest.mark.skipif(
    not shutil.which(SPLR), reason="external solver not installed")


# ---------------------------------------------------------------------------
# formula sizes at the production scale

# Emitted totals are exact; the separate window check allows a fixed slack
# of 30 clauses against independently reported totals, absorbing counting
# conventions for the handful of fixed unit clauses.
PRODUCTION_SIZES = {
    "T": (62930, 1171919, 1171942),
    "O2": (75110, 666982, None),
    "O3": (75110, 436024, 436047),
    "O4": (75110, 444215, 444238),
}


@pytest.mark.parametrize("variant", sorted(PRODUCTION_SIZES))
def test_production_scale_formula_sizes(variant):
    want_vars, want_clauses, reported = PRODUCTION_SIZES[variant]
    t0 = time.monotonic()
    f = encode(EncodingConfig(30, variant, hole=6))
    elapsed = time.monotonic() - t0
    assert f.num_vars == want_vars
    assert len(f.clauses) == want_clauses
    if reported is not None:
        assert abs(len(f.clauses) - reported) <= 30
    assert elapsed < 60.0


# ---------------------------------------------------------------------------
# minimal point counts for small gons and holes, solved from scratch

SMALL_THRESHOLDS = [
    # (target kwargs, first n forcing the structure)
    ({"gon": 4}, 5),
    ({"hole": 4}, 5),
    ({"gon": 5}, 9),
    ({"hole": 5}, 10),
]


@pytest.mark.parametrize("target,threshold", SMALL_THRESHOLDS)
def test_minimal_point_counts_for_small_structures(target, threshold):
    unsat = encode(EncodingConfig(threshold, "T", **target))
    assert solve_formula(unsat)[1] is False
    sat = encode(EncodingConfig(threshold - 1, "T", **target))
    assert solve_formula(sat)[1] is True


# ---------------------------------------------------------------------------
# cube census

def test_cube_census_across_scales():
    ladder = {7: 57, 9: 188, 11: 629, 13: 2149, 15: 7393,
              17: 25663, 19: 89384, 21: 312418}
    for length, want in ladder.items():
        assert len(generate_cubes(24, length)) == want
    assert len(generate_cubes(30, 21)) == 312418
    assert len(generate_cubes(17, 12)) == 1108
    assert len(generate_cubes(29, 22)) == 581428


def test_cube_cover_is_exhaustive_and_disjoint():
    cubes = generate_cubes(17, 8)
    assert len(cubes) == 93
    for i in range(len(cubes)):
        for j in range(i + 1, len(cubes)):
            assert any(-lit in cubes[j] for lit in cubes[i]), \
                f"cubes {i} and {j} overlap"
    f = tautology_formula(17, 8)
    assert solve_formula(f)[1] is False


# ---------------------------------------------------------------------------
# the bundled 29-point witness

def test_twenty_nine_point_witness_has_no_six_hole():
    t0 = time.monotonic()
    pts = ge.overmars_points()
    assert len(pts) == 29
    assert ge.enumerate_holes(pts, 6) == 0
    assert ge.enumerate_gons(pts, 8) == 0
    assert ge.enumerate_gons(pts, 7) == 494
    assert ge.hull_layers(pts) == [3, 4, 7, 7, 7, 1]
    assert time.monotonic() - t0 < 300.0


# ---------------------------------------------------------------------------
# model census: decoded solver models == axiom-level enumeration

ORIENTATION_MODEL_COUNTS = {3: 1, 4: 2, 5: 8, 6: 61, 7: 840}


@pytest.mark.parametrize("n", sorted(ORIENTATION_MODEL_COUNTS))
def test_model_census_matches_axiom_level_enumeration(n):
    f = encode(EncodingConfig(n, "T", hole=6))
    vm = f.varmap
    ovars = [vm.o(a, b, c) for (a, b, c) in vm.triples]
    s = MiniSolver(f.num_vars)
    s.add_formula(f)
    got = set()
    for lits in s.enumerate_models(ovars):
        got.add(decode_model(vm, lits).vector())

    want = set()
    for a in sg.enumerate(n, constraint=lambda a: not sg.contains_khole(a, 6)):
        if all(a.value(1, b, c)
               for b in range(2, n + 1) for c in range(b + 1, n + 1)):
            want.add(a.vector())

    assert got == want
    assert len(got) == ORIENTATION_MODEL_COUNTS[n]


# ---------------------------------------------------------------------------
# variant agreement and lossless auxiliary elimination

def test_variants_agree_on_satisfiability():
    for n in range(6, 10):
        verdicts = {
            v: solve_formula(encode(EncodingConfig(n, v, hole=6)))[1]
            for v in ("T", "O1", "O2", "O3")
        }
        assert len(set(verdicts.values())) == 1, verdicts


def test_aux_elimination_recovers_direct_blocking():
    with_aux = encode(EncodingConfig(7, "O2", hole=6))
    direct = encode(EncodingConfig(7, "O1", hole=6))
    got = eliminate_aux(with_aux)
    assert sorted(map(tuple, got.clauses)) == sorted(map(tuple, direct.clauses))
    assert got.num_vars == direct.num_vars


# ---------------------------------------------------------------------------
# every derived blocking clause is entailed by the trusted encoding

@pytest.mark.parametrize("n", [6, 7, 8])
def test_derived_blocking_clauses_are_entailed(n):
    t0 = time.monotonic()
    f = entailment_formula(n)
    assert solve_formula(f)[1] is False
    assert time.monotonic() - t0 < 600.0


# ---------------------------------------------------------------------------
# exact coordinate normalization

def _radial_set(rng, n):
    pts = []
    while len(pts) < n:
        cand = (rng.randrange(-50, 50), rng.randrange(-50, 50))
        try:
            ge.check_general_position(pts + [cand])
        except ge.CollinearInput:
            continue
        pts.append(cand)
    p1 = min(pts, key=lambda p: (p[1], p[0]))
    rest = [p for p in pts if p != p1]

    def by_angle(u, v):
        cr = ((u[0] - p1[0]) * (v[1] - p1[1])
              - (u[1] - p1[1]) * (v[0] - p1[0]))
        return -1 if cr > 0 else 1

    rest.sort(key=functools.cmp_to_key(by_angle))
    return [p1] + rest


def test_normalization_preserves_orientation_structure():
    rng = random.Random(424242)
    for _ in range(100):
        n = rng.randint(3, 12)
        pts = _radial_set(rng, n)
        out = ge.normalize(pts)
        xs = [p[0] for p in out]
        assert all(x1 < x2 for x1, x2 in zip(xs, xs[1:]))
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    assert (ge.orient3(out[a], out[b], out[c])
                            == ge.orient3(pts[a], pts[b], pts[c]))


# ---------------------------------------------------------------------------
# campaign inputs are byte-deterministic

CAMPAIGN_DIGESTS = {
    "base-30": "e313a3447ced627a65bb933d1ed675b4d71933580658703fc389f5b1445af6e8",
    "cubes-30-21": "8b718686515d65b0cc16b7aeb1fedf74f2c9cbd59ac73fba6e600676085dc251",
    "base-24-combined": "6506d45cc2fa51a28a017b69ece282e8d1350b0f74c6eb2ad4dad8027ca4df6f",
    "cubes-24-21": "e72ebee6c10adb56f10606d0afa838f92f1c3fe7e27c09b77312a394bf360c5e",
}


def _sha(text):
    return hashlib.sha256(text.encode()).hexdigest()


def test_campaign_inputs_are_byte_deterministic():
    cfg30 = EncodingConfig(30, "O4", hole=6)
    once = emit_dimacs(encode(cfg30))
    again = emit_dimacs(encode(cfg30))
    assert once == again
    assert _sha(once) == CAMPAIGN_DIGESTS["base-30"]

    cubes30 = emit_cubes(generate_cubes(30, 21))
    assert _sha(cubes30) == CAMPAIGN_DIGESTS["cubes-30-21"]
    assert cubes30 == emit_cubes(generate_cubes(30, 21))

    cfg24 = EncodingConfig(24, "O4", hole=6, gon=7)
    combined = emit_dimacs(encode(cfg24))
    assert combined == emit_dimacs(encode(cfg24))
    assert _sha(combined) == CAMPAIGN_DIGESTS["base-24-combined"]

    cubes24 = emit_cubes(generate_cubes(24, 21))
    assert _sha(cubes24) == CAMPAIGN_DIGESTS["cubes-24-21"]


# ---------------------------------------------------------------------------
# campaigns through a real external solver

@needs_splr
def test_six_gon_forcing_campaign_at_seventeen(tmp_path):
    base = encode(EncodingConfig(17, "O4", gon=6))
    cubes = generate_cubes(17, 12)
    assert len(cubes) == 1108
    t0 = time.monotonic()
    report = run_campaign(base, cubes, f"{SPLR} -r -", timeout=60.0,
                          report=str(tmp_path / "g17.csv"))
    wall = time.monotonic() - t0
    assert report.verdict == "UNSAT"
    assert report.unsat == len(cubes)
    assert wall < 85.3

    solo = run_campaign(encode(EncodingConfig(16, "O4", gon=6)), [],
                        f"{SPLR} -r -", timeout=60.0)
    assert solo.verdict == "SAT"


@needs_splr
def test_desk_scale_campaign_on_sampled_cubes(tmp_path):
    cubes = generate_cubes(29, 22)
    assert len(cubes) == 581428
    rng = random.Random(20260817)
    picked = [cubes[i] for i in rng.sample(range(len(cubes)), 100)]
    base = encode(EncodingConfig(29, "O4", hole=6))
    report = run_campaign(base, picked, f"{SPLR} -r -", timeout=12.0,
                          jobs=1, report=str(tmp_path / "sample29.csv"))
    assert len(report.results) == 100
    assert {r.status for r in report.results} <= {"SAT", "UNSAT", "TIMEOUT"}
    assert report.sat >= 1
    assert report.verdict == "SAT"
    rows = (tmp_path / "sample29.csv").read_text().splitlines()
    assert rows[0] == "cube_index,status,seconds,exit_code,checked"
    assert len(rows) == 101
    assert (tmp_path / "sample29_hist.png").exists()
    assert (tmp_path / "sample29_cumulative.png").exists()
