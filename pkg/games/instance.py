"""A cost paired with a confinement at a temperature."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import ConfigError
from games.base import MeanFieldCost
from games.potentials import Potential


class GameInstance(BaseModel):
    """(F, U, sigma) as it enters the Langevin dynamics and the Gibbs map."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cost: MeanFieldCost
    potential: Potential
    sigma: float = Field(gt=0)

    @model_validator(mode="after")
    def check_dims(self) -> "GameInstance":
        if self.cost.dim != self.potential.dim:
            raise ConfigError(
                f"cost lives in R^{self.cost.dim} but potential in R^{self.potential.dim}"
            )
        return self

    @property
    def dim(self) -> int:
        return self.cost.dim

    @property
    def contraction_rate(self) -> float:
        """l_F + sigma * l_U."""
        return self.cost.constants.dm_constant + self.sigma * self.potential.convexity_constant

    def with_sigma(self, sigma: float) -> "GameInstance":
        return GameInstance(cost=self.cost, potential=self.potential, sigma=sigma)
