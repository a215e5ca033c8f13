"""Pairwise interaction costs F(x, m) = g(x) +/- (phi * m)(x)."""

import math
from typing import ClassVar, Literal, Optional

import numpy as np
from pydantic import Field

from games.base import CostConstants, Dissipativity, KernelCost
from measures.discrete import DiscreteMeasure

HALF_PI = 0.5 * math.pi


class ConvolutionCost(KernelCost):
    """F(x, m) = int phi(x - y) m(dy) + g(x) with phi odd and bounded (d = 1).

    variant "sin":         phi = sin,           g = x^2;         MFE delta_{-1/2}
    variant "double_well": phi = sin(pi z / 2), g = (x^2 - 1)^2; MFE (delta_-1 + delta_1) / 2
    """

    name: ClassVar[str] = "convolution"

    dim: int = Field(default=1, ge=1, le=1)
    variant: Literal["sin", "double_well"] = "sin"

    @property
    def constants(self) -> CostConstants:
        if self.variant == "sin":
            return CostConstants(
                dm_constant=0.0,
                convexity_constant=1.0,
                lipschitz_bound=3.0,
                wasserstein_lipschitz=(1.0, 1.0),
                dissipativity=Dissipativity(alpha=3.0, c1=-1.0, c2=0.0),
            )
        # g'' >= -4 and |phi''| <= pi^2 / 4
        return CostConstants(
            dm_constant=-4.0 - 0.5 * math.pi**2,
            convexity_constant=-4.0 - 0.25 * math.pi**2,
            wasserstein_lipschitz=(HALF_PI, 1.0),
            dissipativity=Dissipativity(alpha=1.0, c1=-5.1, c2=0.0),
        )

    def confinement(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)[..., 0]
        if self.variant == "sin":
            return x**2
        return (x**2 - 1.0) ** 2

    def confinement_grad(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.variant == "sin":
            return 2.0 * x
        return 4.0 * x * (x**2 - 1.0)

    def kernel(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)[..., 0]
        if self.variant == "sin":
            return np.sin(z)
        return np.sin(HALF_PI * z)

    def kernel_grad(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if self.variant == "sin":
            return np.cos(z)
        return HALF_PI * np.cos(HALF_PI * z)

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        if self.variant == "sin":
            return DiscreteMeasure.dirac(-0.5)
        return DiscreteMeasure(points=[-1.0, 1.0], masses=[0.5, 0.5])


class AntiConvolutionCost(KernelCost):
    """F(x, m) = C|x|^2 - (phi * m)(x) with phi(z) = beta exp(-|z|^2).

    phi is concave at the origin with -2 beta <= phi'' <= 4 beta e^{-3/2}.
    The Gaussian kernel is positive definite, so Gamma_LL < 0 whenever
    m != m'; displacement monotonicity holds with l_F = 2C - 4 beta e^{-3/2}.
    """

    name: ClassVar[str] = "anti_convolution"

    C: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, gt=0)

    @property
    def hessian_bound(self) -> float:
        """Largest eigenvalue of the Hessian of phi."""
        return 4.0 * self.beta * math.exp(-1.5)

    @property
    def constants(self) -> CostConstants:
        l_f = 2.0 * self.C - self.hessian_bound
        # |grad phi| <= beta sqrt(2) e^{-1/2}
        grad_bound = self.beta * math.sqrt(2.0) * math.exp(-0.5)
        return CostConstants(
            dm_constant=l_f,
            convexity_constant=l_f,
            lipschitz_bound=2.0 * self.C + 2.0 * self.beta,
            wasserstein_lipschitz=(grad_bound, 1.0),
            dissipativity=Dissipativity(alpha=4.0 * self.C - 1.0, c1=-(grad_bound**2) - 1e-2, c2=0.0)
            if 4.0 * self.C > 1.0
            else None,
        )

    def confinement(self, x: np.ndarray) -> np.ndarray:
        return self.C * np.sum(np.asarray(x, dtype=float) ** 2, axis=-1)

    def confinement_grad(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * self.C * np.asarray(x, dtype=float)

    def kernel(self, z: np.ndarray) -> np.ndarray:
        return -self.beta * np.exp(-np.sum(np.asarray(z, dtype=float) ** 2, axis=-1))

    def kernel_grad(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        return 2.0 * self.beta * z * np.exp(-np.sum(z**2, axis=-1, keepdims=True))

    def analytic_mfe(self) -> Optional[DiscreteMeasure]:
        return DiscreteMeasure.dirac(np.zeros(self.dim))
