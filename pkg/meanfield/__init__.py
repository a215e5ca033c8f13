"""Invariant measures, temperature sweeps and Nash certificates."""

from meanfield.fixed_point import gibbs_map, invariant_fixed_point
from meanfield.free_energy import free_energy
from meanfield.io import read_sweep_csv, write_sweep_csv
from meanfield.nash import best_response_gap, epsilon_nash_from_mfe
from meanfield.residual import mfe_residual
from meanfield.sweep import analytic_candidate, mfe_sigma_sweep

__all__ = [
    "analytic_candidate",
    "best_response_gap",
    "epsilon_nash_from_mfe",
    "free_energy",
    "gibbs_map",
    "invariant_fixed_point",
    "mfe_residual",
    "mfe_sigma_sweep",
    "read_sweep_csv",
    "write_sweep_csv",
]
