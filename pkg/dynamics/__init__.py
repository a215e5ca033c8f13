"""Time-stepping engines: gradient flows, particle systems and couplings."""

from dynamics.coupling import MeanFieldReference, simulate_coupled_pair, simulate_poc_coupling
from dynamics.engine import SimulationResult
from dynamics.io import read_series_csv, write_series_csv, write_snapshot_csv, write_trajectory_csv
from dynamics.mean_field import lq_coupled_rate, mean_field_flow_lq
from dynamics.noise import NoiseSource, PermutedNoise, PhiloxNoise, ZeroNoise
from dynamics.ode import Trajectory, cesaro_average, ode_gradient_flow
from dynamics.particles import gaussian_initial, simulate_interacting

__all__ = [
    "MeanFieldReference",
    "NoiseSource",
    "PermutedNoise",
    "PhiloxNoise",
    "SimulationResult",
    "Trajectory",
    "ZeroNoise",
    "cesaro_average",
    "gaussian_initial",
    "lq_coupled_rate",
    "mean_field_flow_lq",
    "ode_gradient_flow",
    "read_series_csv",
    "simulate_coupled_pair",
    "simulate_interacting",
    "simulate_poc_coupling",
    "write_series_csv",
    "write_snapshot_csv",
    "write_trajectory_csv",
]
