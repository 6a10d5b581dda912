"""Command-line interface: encode formulas, emit cube partitions, build
entailment checks, decode models, solve with the built-in solver, and run
external-solver campaigns."""

import json
import os
import sys

import click

from . import runner as runner_mod
from . import verify as verify_mod
from .encoder import VARIANTS, EncodingConfig, VarMap, emit_dimacs, encode
from .errors import GonsatError
from .minisolver import MiniSolver
from .partition import (emit_cubes, emit_icnf, generate_cubes,
                        tautology_formula)
from .signotope import to_text


@click.group()
def cli():
    """Generate, partition, solve and check k-gon/k-hole avoidance
    formulas."""


@cli.command("encode")
@click.option("--n", required=True, type=int, help="number of points")
@click.option("--variant", required=True,
              type=click.Choice(sorted(VARIANTS)), help="encoding variant")
@click.option("--hole", type=int, default=None, help="forbidden hole size")
@click.option("--gon", type=int, default=None, help="forbidden gon size")
@click.option("--out", type=click.Path(), default=None,
              help="DIMACS output file (default: stdout)")
@click.option("--stats", is_flag=True, help="print variable/clause counts")
def encode_cmd(n, variant, hole, gon, out, stats):
    """Build an avoidance formula and emit it as DIMACS."""
    f = encode(EncodingConfig(n, variant, hole=hole, gon=gon))
    if out is not None:
        emit_dimacs(f, out)
    elif not stats:
        emit_dimacs(f, sys.stdout)
    if stats:
        v, c = f.stats()
        click.echo("variables=%d clauses=%d" % (v, c))


@cli.command("cubes")
@click.option("--n", required=True, type=int, help="number of points")
@click.option("--len", "length", required=True, type=int,
              help="window length")
@click.option("--icnf", "icnf_base", type=click.Path(exists=True),
              default=None,
              help="base CNF to combine with the cubes into an iCNF file")
@click.option("--out", type=click.Path(), default=None,
              help="output file (default: stdout)")
@click.option("--negate", is_flag=True,
              help="emit the coverage tautology check as CNF instead")
def cubes_cmd(n, length, icnf_base, out, negate):
    """Emit the cube partition for n points and the given window length."""
    if negate and icnf_base:
        raise click.UsageError("--negate and --icnf are mutually exclusive")
    if negate:
        f = tautology_formula(n, length)
        emit_dimacs(f, out if out is not None else sys.stdout)
        return
    cubes = generate_cubes(n, length)
    if icnf_base is not None:
        base = runner_mod.parse_dimacs(icnf_base)
        emit_icnf(base, cubes, out if out is not None else sys.stdout)
    else:
        emit_cubes(cubes, out if out is not None else sys.stdout)


@cli.command("entail")
@click.option("--n", required=True, type=int, help="number of points")
@click.option("--out", type=click.Path(), default=None,
              help="DIMACS output file (default: stdout)")
def entail_cmd(n, out):
    """Emit the formula whose unsatisfiability certifies that the trusted
    encoding entails the subset-blocking clause family."""
    f = verify_mod.entailment_formula(n)
    emit_dimacs(f, out if out is not None else sys.stdout)


def _parse_map_spec(spec):
    if os.path.exists(spec):
        with open(spec) as fh:
            raw = json.load(fh)
    else:
        raw = {}
        for part in spec.split(","):
            key, _, val = part.partition("=")
            if not _:
                raise click.UsageError("bad map entry %r" % part)
            raw[key.strip()] = val.strip()
    n = int(raw["n"])
    variant = str(raw["variant"])
    hole = raw.get("hole")
    gon = raw.get("gon")
    hole = int(hole) if hole not in (None, "") else None
    gon = int(gon) if gon not in (None, "") else None
    return EncodingConfig(n, variant, hole=hole, gon=gon)


@cli.command("decode")
@click.option("--map", "map_spec", required=True,
              help='encoding config: JSON file or inline "n=9,variant=T"')
@click.option("--model", "model_file", required=True,
              type=click.Path(exists=True),
              help='solver model file ("v" lines)')
def decode_cmd(map_spec, model_file):
    """Decode a solver model into an orientation assignment."""
    cfg = _parse_map_spec(map_spec)
    vm = VarMap.from_config(cfg)
    with open(model_file) as fh:
        lits = verify_mod.parse_v_lines(fh.read())
    a = verify_mod.decode_model(vm, lits)
    click.echo(to_text(a), nl=False)


def _print_model(solver):
    lits = solver.model_literals()
    for i in range(0, len(lits), 20):
        click.echo("v " + " ".join(str(l) for l in lits[i:i + 20]))
    click.echo("v 0")


@cli.command("solve")
@click.option("--cnf", "cnf_file", type=click.Path(exists=True),
              default=None, help="DIMACS CNF input")
@click.option("--icnf", "icnf_file", type=click.Path(exists=True),
              default=None, help="incremental CNF input (clauses + cubes)")
@click.pass_context
def solve_cmd(ctx, cnf_file, icnf_file):
    """Solve with the built-in solver. Exit status 10 = satisfiable,
    20 = unsatisfiable. With cubes, satisfiable iff some cube is."""
    if cnf_file is None and icnf_file is None:
        raise click.UsageError("need --cnf and/or --icnf")
    clauses = []
    cubes = []
    num_vars = 0
    if cnf_file is not None:
        f = runner_mod.parse_dimacs(cnf_file)
        clauses.extend(f.clauses)
        num_vars = max(num_vars, f.num_vars)
    if icnf_file is not None:
        f, cubes = runner_mod.parse_icnf(icnf_file)
        clauses.extend(f.clauses)
        num_vars = max(num_vars, f.num_vars)
        for cube in cubes:
            for lit in cube:
                num_vars = max(num_vars, abs(lit))
    s = MiniSolver(num_vars)
    for cl in clauses:
        s.add_clause(cl)
    if cubes:
        res = False
        for cube in cubes:
            if s.solve(assumptions=cube):
                res = True
                break
    else:
        res = s.solve()
    if res:
        click.echo("s SATISFIABLE")
        _print_model(s)
        ctx.exit(10)
    click.echo("s UNSATISFIABLE")
    ctx.exit(20)


@cli.command("run")
@click.option("--cnf", "cnf_file", required=True,
              type=click.Path(exists=True), help="base DIMACS CNF")
@click.option("--cubes", "cube_file", required=True,
              type=click.Path(exists=True), help="cube file")
@click.option("--solver", required=True, help="solver command")
@click.option("--checker", default=None, help="proof checker command")
@click.option("--jobs", type=int, default=1, help="parallel workers")
@click.option("--timeout", type=float, default=3600.0,
              help="per-cube timeout in seconds")
@click.option("--report", required=True, type=click.Path(),
              help="CSV report path (figures rendered next to it)")
def run_cmd(cnf_file, cube_file, solver, checker, jobs, timeout, report):
    """Run an external-solver campaign over a cube partition."""
    rep = runner_mod.run_campaign(cnf_file, cube_file, solver,
                                  checker_cmd=checker, jobs=jobs,
                                  timeout=timeout, report=report)
    click.echo("verdict=%s sat=%d unsat=%d total=%.3fs mean=%.3fs max=%.3fs"
               % (rep.verdict, rep.sat, rep.unsat, rep.total_seconds,
                  rep.mean_seconds, rep.max_seconds))


def main():
    try:
        rv = cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(1)
    except GonsatError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)
    if isinstance(rv, int):
        sys.exit(rv)


if __name__ == "__main__":
    main()
