"""Campaign orchestration: solve a cube partition against a base formula
with an external solver, optionally piping each unsatisfiability proof to
an external checker, and aggregate per-cube results into a CSV report with
runtime figures rendered next to it."""

import csv
import os
import shlex
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .encoder import CnfFormula
from .errors import CheckerRejected, IoFailure, SolverCrashed
from .partition import parse_cubes

SAT_EXIT = 10
UNSAT_EXIT = 20


@dataclass
class CubeResult:
    cube_index: int
    status: str            # SAT | UNSAT | ERROR | TIMEOUT
    seconds: float
    exit_code: int
    checked: str = ""      # "yes" | "no" | "" (checking disabled or n/a)


@dataclass
class CampaignReport:
    results: list
    verdict: str
    sat: int = 0
    unsat: int = 0
    total_seconds: float = 0.0
    mean_seconds: float = 0.0
    max_seconds: float = 0.0

    def __post_init__(self):
        done = [r for r in self.results if r.status in ("SAT", "UNSAT")]
        self.sat = sum(1 for r in done if r.status == "SAT")
        self.unsat = len(done) - self.sat
        secs = [r.seconds for r in self.results]
        self.total_seconds = sum(secs)
        self.mean_seconds = self.total_seconds / len(secs) if secs else 0.0
        self.max_seconds = max(secs) if secs else 0.0


def parse_dimacs(path):
    """Read a DIMACS CNF file into a CnfFormula (no variable map)."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(str(exc))
    num_vars = 0
    tokens = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] not in ("cnf", "inccnf"):
                raise IoFailure("malformed problem line: %r" % line)
            num_vars = int(parts[2])
            continue
        tokens.extend(line.split())
    f = CnfFormula(num_vars)
    cur = []
    for tok in tokens:
        val = int(tok)
        if val == 0:
            f.clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(val)
            f.num_vars = max(f.num_vars, abs(val))
    if cur:
        raise IoFailure("unterminated clause in %s" % path)
    return f


def parse_icnf(path):
    """Read an incremental CNF file: clauses plus "a"-prefixed cubes.
    Returns (CnfFormula, list of cubes)."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(str(exc))
    num_vars = 0
    f = CnfFormula(0)
    cubes = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) >= 3 and parts[2].isdigit():
                num_vars = int(parts[2])
            continue
        toks = line.split()
        is_cube = toks[0] == "a"
        if is_cube:
            toks = toks[1:]
        vals = [int(t) for t in toks]
        if not vals or vals[-1] != 0:
            raise IoFailure("unterminated line in %s: %r" % (path, line))
        body = tuple(vals[:-1])
        for lit in body:
            num_vars = max(num_vars, abs(lit))
        if is_cube:
            cubes.append(body)
        else:
            f.clauses.append(body)
    f.num_vars = max(f.num_vars, num_vars)
    return f, cubes


def _dimacs_body(formula):
    """Clause block of a DIMACS file, as bytes, without the problem line."""
    chunks = []
    for cl in formula.clauses:
        chunks.append(" ".join(str(l) for l in cl) + " 0")
    chunks.append("")
    return "\n".join(chunks).encode()


def _materialize(num_vars, num_clauses, body, cube, tmpdir):
    fd, path = tempfile.mkstemp(suffix=".cnf", dir=tmpdir)
    with os.fdopen(fd, "wb") as fh:
        fh.write(b"p cnf %d %d\n" % (num_vars, num_clauses + len(cube)))
        fh.write(body)
        for lit in cube:
            fh.write(b"%d 0\n" % lit)
    return path


def _solve_one(index, cnf_path, solver, checker, timeout):
    """Run the solver on one materialized file; broker the proof pipe to
    the checker when one is configured. Returns a CubeResult."""
    pipe_dir = None
    checker_proc = None
    start = time.perf_counter()
    try:
        if checker is not None:
            pipe_dir = tempfile.mkdtemp(prefix="proofpipe.")
            pipe = os.path.join(pipe_dir, "proof.lrat")
            os.mkfifo(pipe)
            checker_proc = subprocess.Popen(
                checker + [cnf_path, pipe],
                stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
            cmd = solver + [cnf_path, pipe]
        else:
            cmd = solver + [cnf_path]
        proc = subprocess.Popen(cmd, stdout=subprocess.DEVNULL,
                                stderr=subprocess.DEVNULL)
    except OSError:
        if checker_proc is not None:
            checker_proc.kill()
        return CubeResult(index, "ERROR", time.perf_counter() - start, -1)

    try:
        code = proc.wait(timeout=timeout)
        seconds = time.perf_counter() - start
    except subprocess.TimeoutExpired:
        proc.kill()
        proc.wait()
        if checker_proc is not None:
            checker_proc.kill()
            checker_proc.wait()
        return CubeResult(index, "TIMEOUT", time.perf_counter() - start,
                          -1)

    if code == SAT_EXIT:
        status = "SAT"
    elif code == UNSAT_EXIT:
        status = "UNSAT"
    else:
        status = "ERROR"

    checked = ""
    if checker_proc is not None:
        try:
            remaining = max(1.0, timeout - seconds) if timeout else None
            checker_code = checker_proc.wait(timeout=remaining)
        except subprocess.TimeoutExpired:
            checker_proc.kill()
            checker_proc.wait()
            checker_code = -1
        if status == "UNSAT":
            checked = "yes" if checker_code == 0 else "no"
    return CubeResult(index, status, seconds, code, checked)


def campaign_verdict(results, checking=False):
    """Aggregate verdict: a pure function of the result multiset."""
    statuses = [r.status for r in results]
    if any(s == "SAT" for s in statuses):
        return "SAT"
    if all(s == "UNSAT" for s in statuses) and statuses:
        if checking and not all(r.checked == "yes" for r in results):
            return "INCOMPLETE"
        return "UNSAT"
    return "INCOMPLETE"


def write_report(results, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cube_index", "status", "seconds", "exit_code",
                    "checked"])
        for r in sorted(results, key=lambda r: r.cube_index):
            w.writerow([r.cube_index, r.status, "%.3f" % r.seconds,
                        r.exit_code, r.checked])


def render_figures(results, report_path):
    """Render a runtime histogram and a cumulative completion curve as PNG
    files next to the CSV report. Returns the two paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    stem, _ = os.path.splitext(report_path)
    hist_path = stem + "_hist.png"
    cum_path = stem + "_cumulative.png"
    secs = sorted(r.seconds for r in results
                  if r.status in ("SAT", "UNSAT"))

    fig, ax = plt.subplots(figsize=(6, 4))
    if secs:
        ax.hist(secs, bins=min(30, max(5, len(secs) // 4 + 1)),
                color="#4878a8", edgecolor="black")
    ax.set_xlabel("solve time (s)")
    ax.set_ylabel("cubes")
    ax.set_title("per-cube runtime")
    fig.tight_layout()
    fig.savefig(hist_path, dpi=110)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    if secs:
        xs, total = [0.0], 0.0
        for s in secs:
            total += s
            xs.append(total)
        ax.step(xs, range(len(xs)), where="post", color="#a85048")
    ax.set_xlabel("cumulative solve time (s)")
    ax.set_ylabel("cubes completed")
    ax.set_title("completion curve")
    fig.tight_layout()
    fig.savefig(cum_path, dpi=110)
    plt.close(fig)
    return hist_path, cum_path


def run_campaign(base, cubes, solver_cmd, checker_cmd=None, jobs=1,
                 timeout=3600.0, report=None):
    """Solve every cube of a partition against the base formula.

    `base` is a CnfFormula or a DIMACS path; `cubes` a list of literal
    tuples or a cube-file path. Each cube is materialized as base formula
    plus unit clauses in a temporary DIMACS file and handed to the solver
    command. An empty cube list solves the base formula once. When `report`
    is given, a CSV is written there and figure files are rendered next to
    it. Raises SolverCrashed / CheckerRejected after the report is written
    if any cube errored or any proof failed its check."""
    if not hasattr(base, "clauses"):
        base = parse_dimacs(base)
    if isinstance(cubes, (str, os.PathLike)):
        cubes = parse_cubes(cubes)
    solver = shlex.split(solver_cmd) if isinstance(solver_cmd, str) \
        else list(solver_cmd)
    checker = None
    if checker_cmd is not None:
        checker = shlex.split(checker_cmd) if isinstance(checker_cmd, str) \
            else list(checker_cmd)

    work = list(cubes) if cubes else [()]
    body = _dimacs_body(base)
    nv, nc = base.num_vars, len(base.clauses)
    results = []
    with tempfile.TemporaryDirectory(prefix="campaign.") as tmpdir:
        def job(arg):
            index, cube = arg
            path = _materialize(nv, nc, body, cube, tmpdir)
            try:
                return _solve_one(index, path, solver, checker, timeout)
            finally:
                os.unlink(path)

        if jobs <= 1:
            for arg in enumerate(work):
                results.append(job(arg))
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(job, enumerate(work)))

    results.sort(key=lambda r: r.cube_index)
    if report:
        write_report(results, report)
        render_figures(results, report)

    if any(r.status == "ERROR" for r in results):
        bad = [r.cube_index for r in results if r.status == "ERROR"]
        raise SolverCrashed("solver failed on cube(s) %s" % bad)
    if checker is not None:
        reject = [r.cube_index for r in results
                  if r.status == "UNSAT" and r.checked != "yes"]
        if reject:
            raise CheckerRejected("proof check failed on cube(s) %s"
                                  % reject)
    return CampaignReport(results, campaign_verdict(results,
                                                    checker is not None))
