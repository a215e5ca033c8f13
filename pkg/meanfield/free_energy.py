"""Free energy Phi(mu, m) = int F(x, m) mu(dx) + sigma H(mu | nu)."""

from core.errors import MeasureError
from games.base import MeanFieldCost
from games.potentials import Potential
from measures.base import BaseMeasure
from measures.entropy import relative_entropy
from measures.grid import GridMeasure1D


def reference_on_grid(potential: Potential, like: GridMeasure1D) -> GridMeasure1D:
    """nu = exp(-U) renormalized on the grid of `like`."""
    return GridMeasure1D.from_log_density(like.lo, like.hi, -potential.value(like.support))


def free_energy(
    cost: MeanFieldCost,
    potential: Potential,
    mu: BaseMeasure,
    m: BaseMeasure,
    sigma: float,
) -> float:
    if sigma < 0:
        raise MeasureError(f"sigma must be non-negative, got {sigma}")
    energy = float(mu.integrate(cost.value(mu.support, m)))
    if sigma == 0:
        return energy
    if not isinstance(mu, GridMeasure1D):
        raise MeasureError("entropy term needs mu as a grid density")
    return energy + sigma * relative_entropy(mu, reference_on_grid(potential, mu))
