"""SAT-based search for point sets avoiding k-gons and k-holes:
orientation-triple encodings, cube partitions, a built-in CDCL solver for
small instances, and campaign orchestration for external solvers."""

from .encoder import (CnfFormula, EncodingConfig, VarMap, eliminate_aux,
                      emit_dimacs, encode)
from .errors import (AxiomViolation, BoundExceeded, CheckerRejected,
                     CollinearInput, GonsatError, InvalidAssignment,
                     IoFailure, PreconditionViolated, ResourceLimit,
                     SolverCrashed, UnsupportedVariant, WindowTooLong)
from .minisolver import MiniSolver, solve_formula
from .partition import (emit_cubes, emit_icnf, generate_cubes, parse_cubes,
                        tautology_formula)
from .runner import (CampaignReport, CubeResult, parse_dimacs, parse_icnf,
                     run_campaign)
from .signotope import OrientationAssignment
from .verify import check_witness, decode_model, entailment_formula

__version__ = "1.0.0"

__all__ = [
    "AxiomViolation", "BoundExceeded", "CampaignReport", "CheckerRejected",
    "CnfFormula", "CollinearInput", "CubeResult", "EncodingConfig",
    "GonsatError", "InvalidAssignment", "IoFailure", "MiniSolver",
    "OrientationAssignment", "PreconditionViolated", "ResourceLimit",
    "SolverCrashed", "UnsupportedVariant", "VarMap", "WindowTooLong",
    "check_witness", "decode_model", "eliminate_aux", "emit_cubes",
    "emit_dimacs", "emit_icnf", "encode", "entailment_formula",
    "generate_cubes", "parse_cubes", "parse_dimacs", "parse_icnf",
    "run_campaign", "solve_formula", "tautology_formula",
]
