"""Relative entropy between grid densities."""

import numpy as np
from scipy.special import rel_entr

from core.errors import AbsoluteContinuityError, MeasureError
from measures.grid import GridMeasure1D, trapezoid_weights


def relative_entropy(mu: GridMeasure1D, nu: GridMeasure1D) -> float:
    """H(mu|nu) = int log(dmu/dnu) dmu by trapezoid quadrature on a shared grid."""
    if not mu.same_grid(nu):
        raise MeasureError("relative entropy needs both densities on the same grid")
    charged = (mu.density > 0) & (nu.density <= 0)
    if np.any(charged):
        node = float(mu.nodes[np.argmax(charged)])
        raise AbsoluteContinuityError(
            f"mu charges {int(charged.sum())} nodes where nu vanishes (first at x={node:.6g})",
            nodes=int(charged.sum()),
            first=node,
        )
    integrand = rel_entr(mu.density, nu.density)
    return float(integrand @ trapezoid_weights(mu.n_nodes, mu.step))
