"""Exception hierarchy shared by every package.

The CLI maps `ConfigError` to exit code 2 and `NumericalError` to exit
code 3. Verdict failures are reported through `ExperimentReport`, not raised.
"""

from typing import Any


class MeanFieldError(Exception):
    """Base class for library errors."""

    def __init__(self, message: str, **context: Any):
        self.context = context
        super().__init__(message)


class ConfigError(MeanFieldError, ValueError):
    """Invalid run configuration or game parameters."""


class UnknownGameError(ConfigError):
    """Raised when a game id is not in the catalog."""

    def __init__(self, name: str, suggestions: list[str]):
        self.name = name
        self.suggestions = suggestions
        hint = f" Did you mean: {', '.join(suggestions)}?" if suggestions else ""
        super().__init__(f"Unknown game: {name}.{hint}", name=name)


class MeasureError(MeanFieldError, ValueError):
    """Invalid measure, coupling or incompatible measure pair."""


class NumericalError(MeanFieldError):
    """A numerical procedure failed."""


class BlowUpError(NumericalError):
    """A trajectory left the admissible region."""

    def __init__(self, step: int, time: float, max_abs: float, replica: int | None = None):
        self.step = step
        self.time = time
        self.max_abs = max_abs
        self.replica = replica
        super().__init__(
            f"Blow-up at step {step} (t={time:.6g}): max |x| = {max_abs:.3e}"
            + (f" in replica {replica}" if replica is not None else ""),
            step=step,
            time=time,
            max_abs=max_abs,
            replica=replica,
        )


class FixedPointError(NumericalError):
    """The damped Gibbs iteration did not reach the tolerance."""

    def __init__(self, iterations: int, residual: float, sigma: float):
        self.iterations = iterations
        self.residual = residual
        self.sigma = sigma
        super().__init__(
            f"Fixed point not converged after {iterations} iterations "
            f"(sigma={sigma:g}, residual={residual:.3e})",
            iterations=iterations,
            residual=residual,
            sigma=sigma,
        )


class BoundaryMassError(NumericalError):
    """A grid density does not vanish at the grid boundary."""

    def __init__(self, ratio: float, threshold: float):
        self.ratio = ratio
        self.threshold = threshold
        super().__init__(
            f"Boundary density ratio {ratio:.3e} exceeds {threshold:.1e}; widen the grid",
            ratio=ratio,
        )


class UnsupportedCaseError(NumericalError):
    """Parameters fall outside every branch of a piecewise formula."""


class AbsoluteContinuityError(NumericalError):
    """mu charges a region where the reference measure vanishes."""


class HypothesisError(MeanFieldError):
    """An experiment was requested outside its theorem's hypotheses."""
