"""Closed-form limiting regimes of the distinct-parts estimates.

Notation:  c^2 = pi^2/12,  gamma = 1 - (ln 2)^2 / c^2,
sigma(E, N) = N - sqrt(E) ln2 / c  (deviation of N from its typical value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PartitionArgumentError

C = math.pi / (2.0 * math.sqrt(3.0))
GAMMA = 1.0 - math.log(2.0) ** 2 / C ** 2
_LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class LimitConstants:
    c: float = C
    gamma: float = GAMMA

    def sigma(self, E, N) -> float:
        return N - math.sqrt(E) * math.log(2.0) / self.c

    def typical_parts(self, E) -> int:
        """Integer N minimizing |sigma(E, N)|."""
        return max(1, round(math.sqrt(E) * math.log(2.0) / self.c))


CONSTANTS = LimitConstants()


def _check(E, N=None):
    for name, val in (("E", E), ("N", N)):
        if val is None:
            continue
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise PartitionArgumentError(f"{name} must be an integer >= 1, got {val!r}")


def sigma(E, N) -> float:
    return CONSTANTS.sigma(E, N)


def mb_limit_ln_q(E: int, N: int) -> float:
    """Few-parts (N << sqrt E) limit: ln[e^{2N} E^{N-1} / (2 pi N^{2N})]."""
    _check(E, N)
    return 2.0 * N + (N - 1) * math.log(E) - _LN_2PI - 2.0 * N * math.log(N)


def erdos_ln_q(E: int, N: int, *, include_inverse_energy: bool = True) -> float:
    """Near-typical N: 2c sqrt(E) - 2c sigma^2/(gamma sqrt E) - ln(4 sqrt(6 gamma)) - ln E.

    ``include_inverse_energy=False`` drops the ``-ln E`` of the 1/E prefactor;
    it exists only to show how far off that variant lands.
    """
    _check(E, N)
    rt = math.sqrt(E)
    s = sigma(E, N)
    val = 2.0 * C * rt - 2.0 * C * s * s / (GAMMA * rt) - math.log(4.0 * math.sqrt(6.0 * GAMMA))
    return val - math.log(E) if include_inverse_energy else val


def total_distinct_ln_q(E: int) -> float:
    """All distinct partitions of E: ln[e^{2c sqrt E} / (4 3^{1/4} E^{3/4})]."""
    _check(E)
    return 2.0 * C * math.sqrt(E) - math.log(4.0) - 0.25 * math.log(3.0) - 0.75 * math.log(E)


def szekeres_bounded_ln_q(E: int, N: int, B: int, *, decaying: bool = True) -> float:
    """Near-typical N with parts <= B: Erdos value minus (sqrt E / c) e^{-cB/sqrt E}.

    The correction decays as B grows, recovering :func:`erdos_ln_q`.
    ``decaying=False`` flips the exponent sign (a divergent variant kept for
    comparison only).
    """
    _check(E, N)
    _check(B)
    if not N < B:
        raise PartitionArgumentError(f"need N < B, got N={N}, B={B}")
    rt = math.sqrt(E)
    exponent = -C * B / rt if decaying else C * B / rt
    if exponent > 700.0:
        return -math.inf
    return erdos_ln_q(E, N) - (rt / C) * math.exp(exponent)
