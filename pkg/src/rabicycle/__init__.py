"""Isoenergetic thermodynamic cycles on the two lowest quantum Rabi levels.

The working substance is the quantum Rabi model
H = (bigomega/2) sigma_z + omega a^dag a + g sigma_x (a^dag + a); the cycle
alternates two isoenergetic strokes (constant <H>, enforced by an energy
bath) with two quantum adiabats, varying one of g, omega, bigomega.
"""

from .errors import (CapabilityError, ConfigError, ConfigSemanticError,
                     ConfigSyntaxError, ConvergenceError, CycleError,
                     DegeneracyError, IntegrationError, ParameterError,
                     RabiError, RangeError, SizingError)
from .model import (DEGENERACY_THRESHOLD, REFUSAL_FACTOR, EigenSystem, Knob,
                    LevelPair, Method, ModelParams, TruncationPolicy)
from .spectrum import (approx_levels, build_hamiltonian, eigensystem,
                       exact_levels, level_derivative, level_gap, level_pair)
from .cycle import (COMPRESSION_SIDE, EXPANSION_SIDE, CycleResult, CycleSpec,
                    Direction, OccupationProfile, adiabatic_work,
                    energy_exchange_closed_form, energy_exchange_quadrature,
                    occupation_profile, range_probe, run_cycle,
                    solve_compression, solve_expansion)
from .sweep import (LEVELS_SCHEMA, SWEEP_SCHEMA, LevelRow, LevelTable,
                    SweepConfig, SweepRow, SweepTable, emit_csv, emit_json,
                    figure_dataset, parse_config, parse_csv, run_sweep,
                    write_output)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError", "ConfigError", "ConfigSemanticError",
    "ConfigSyntaxError", "ConvergenceError", "CycleError", "DegeneracyError",
    "IntegrationError", "ParameterError", "RabiError", "RangeError",
    "SizingError",
    "DEGENERACY_THRESHOLD", "REFUSAL_FACTOR", "EigenSystem", "Knob",
    "LevelPair", "Method", "ModelParams", "TruncationPolicy",
    "approx_levels", "build_hamiltonian", "eigensystem", "exact_levels",
    "level_derivative", "level_gap", "level_pair",
    "COMPRESSION_SIDE", "EXPANSION_SIDE", "CycleResult", "CycleSpec",
    "Direction", "OccupationProfile", "adiabatic_work",
    "energy_exchange_closed_form", "energy_exchange_quadrature",
    "occupation_profile", "range_probe", "run_cycle", "solve_compression",
    "solve_expansion",
    "LEVELS_SCHEMA", "SWEEP_SCHEMA", "LevelRow", "LevelTable", "SweepConfig",
    "SweepRow", "SweepTable", "emit_csv", "emit_json", "figure_dataset",
    "parse_config", "parse_csv", "run_sweep", "write_output",
    "__version__",
]
