"""Fournier-Guillin rate of the empirical Wasserstein error."""

import math

from core.errors import UnsupportedCaseError


def fournier_guillin_delta(n: int, p: float, d: int) -> float:
    """delta_{N,p} in dimension d.

    Three branches are covered: p > d/2, d = 2p and p < d/2, each with
    p != 1 for the first two and d/(d-p) != 2 for the last. Anything else
    raises UnsupportedCaseError.
    """
    if n < 1 or d < 1:
        raise UnsupportedCaseError(f"need N >= 1 and d >= 1, got N={n}, d={d}", n=n, d=d)
    if not 0.0 < p < 2.0:
        raise UnsupportedCaseError(f"p must lie in (0, 2), got {p}", p=p)

    tail = n ** (-(2.0 - p) / 2.0)
    if p > d / 2.0 and p != 1.0:
        return n**-0.5 + tail
    if d == 2.0 * p and p != 1.0:
        return n**-0.5 * math.log1p(n) + tail
    if p < d / 2.0 and d / (d - p) != 2.0:
        return n ** (-p / d) + tail
    raise UnsupportedCaseError(f"no rate branch covers p={p}, d={d}", p=p, d=d)
