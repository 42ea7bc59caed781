"""Exact partition counts by dynamic programming over Python integers.

These are the ground-truth oracles for every asymptotic formula in the
package.  Tables are built once, frozen into tuples and may be shared
between threads.

    P(E, N)     partitions of E into at most N parts
    q(E, N)     partitions of E into exactly N distinct parts
    q(E, N, B)  as q(E, N) with every part <= B
    q(E)        partitions of E into distinct parts (any number)

Out-of-range queries (for instance ``E < N(N+1)/2`` for distinct parts)
return a zero count rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import numpy as np

from .errors import PartitionArgumentError

_LN2 = math.log(2.0)
# ints below this bit length convert to float without overflow
_FLOAT_SAFE_BITS = 1000
_MANTISSA_BITS = 64


@total_ordering
@dataclass(frozen=True, eq=False)
class BigCount:
    """A nonnegative exact count with a log-domain accessor."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 0:
            raise PartitionArgumentError(f"count must be a nonnegative int, got {self.value!r}")

    @property
    def ln_value(self) -> float:
        """Natural log of the count, ``-inf`` for zero.

        Computed from the bit length and the leading 64 bits so that counts
        far beyond the float range still get a correctly rounded logarithm.
        """
        n = self.value
        if n == 0:
            return -math.inf
        bits = n.bit_length()
        if bits <= _FLOAT_SAFE_BITS:
            return math.log(n)
        shift = bits - _MANTISSA_BITS
        return math.log(n >> shift) + shift * _LN2

    @property
    def log10_value(self) -> float:
        return self.ln_value / math.log(10.0)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, BigCount):
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, BigCount):
            return self.value < other.value
        if isinstance(other, int):
            return self.value < other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class ExactQuery:
    E: int
    N: int
    B: int | None = None

    def __post_init__(self):
        _check_nonneg(E=self.E, N=self.N)
        if self.B is not None:
            _check_bound(self.B)


def _check_nonneg(**kwargs):
    for name, val in kwargs.items():
        if not isinstance(val, int) or isinstance(val, bool):
            raise PartitionArgumentError(f"{name} must be an integer, got {val!r}")
        if val < 0:
            raise PartitionArgumentError(f"{name} must be >= 0, got {val}")


def _check_bound(B):
    if not isinstance(B, int) or isinstance(B, bool) or B < 1:
        raise PartitionArgumentError(f"B must be an integer >= 1, got {B!r}")


def min_distinct_energy(N: int) -> int:
    """Smallest E admitting N distinct positive parts: 1 + 2 + ... + N."""
    return N * (N + 1) // 2


def max_bounded_energy(N: int, B: int) -> int:
    """Largest E admitting N distinct parts in {1..B}: B + (B-1) + ... + (B-N+1)."""
    return N * B - N * (N - 1) // 2


@lru_cache(maxsize=8)
def unrestricted_table(E_max: int, N_max: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``e = 0..E_max`` of P(e, n) for ``n = 0..N_max``.

    P(e, n) = P(e, n-1) + P(e-n, n): either no part equals n, or remove one
    copy of the largest allowed part.
    """
    _check_nonneg(E=E_max, N=N_max)
    rows = [[1] * (N_max + 1)]
    for e in range(1, E_max + 1):
        row = [0] * (N_max + 1)
        for n in range(1, N_max + 1):
            row[n] = row[n - 1] + (rows[e - n][n] if e >= n else 0)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=8)
def distinct_table(E_max: int, N_max: int) -> tuple[tuple[int, ...], ...]:
    """Rows ``e = 0..E_max`` of q(e, n) for ``n = 0..N_max``.

    q(e, n) = q(e-n, n) + q(e-n, n-1): subtract one from every part; a part
    equal to one either disappears or does not exist.
    """
    _check_nonneg(E=E_max, N=N_max)
    rows = [[1] + [0] * N_max]
    for e in range(1, E_max + 1):
        row = [0] * (N_max + 1)
        for n in range(1, N_max + 1):
            if n * (n + 1) // 2 > e:
                break
            prev = rows[e - n]
            row[n] = prev[n] + prev[n - 1]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def count_unrestricted_max_parts(E: int, N: int) -> BigCount:
    """Number of partitions of E into at most N positive parts."""
    _check_nonneg(E=E, N=N)
    if E == 0:
        return BigCount(1)
    if N == 0:
        return BigCount(0)
    return BigCount(unrestricted_table(E, min(N, E))[E][min(N, E)])


def count_distinct(E: int, N: int) -> BigCount:
    """Number of partitions of E into exactly N pairwise-distinct positive parts."""
    _check_nonneg(E=E, N=N)
    if min_distinct_energy(N) > E:
        return BigCount(0)
    return BigCount(distinct_table(E, N)[E][N])


def count_distinct_bounded(E: int, N: int, B: int) -> BigCount:
    """Number of partitions of E into exactly N distinct parts from {1, ..., B}.

    A 0/1 selection DP over the part values k = 1..B; the state is the
    (parts used, energy) table, updated in place from the highest part count
    down so each value is used at most once.
    """
    _check_nonneg(E=E, N=N)
    _check_bound(B)
    if N > B or not (min_distinct_energy(N) <= E <= max_bounded_energy(N, B)):
        return BigCount(0)
    if N == 0:
        return BigCount(1)
    table = np.zeros((N + 1, E + 1), dtype=object)
    table[0, 0] = 1
    # a part larger than E - (1 + ... + (N-1)) can never be used
    k_max = min(B, E - min_distinct_energy(N - 1))
    for k in range(1, k_max + 1):
        for n in range(min(k, N), 0, -1):
            table[n, k:] += table[n - 1, : E + 1 - k]
    return BigCount(int(table[N, E]))


def count_distinct_total(E: int) -> BigCount:
    """Number of partitions of E into distinct parts, any number of them.

    Built by its own single-index DP so that summing :func:`count_distinct`
    over N is an independent check.
    """
    _check_nonneg(E=E)
    q = np.zeros(E + 1, dtype=object)
    q[0] = 1
    for k in range(1, E + 1):
        # right-hand side is evaluated before assignment: each k used once
        q[k:] = q[k:] + q[: E + 1 - k]
    return BigCount(int(q[E]))


def count(model: str, E: int, N: int | None = None, B: int | None = None) -> BigCount:
    """Dispatch on a model name: unrestricted, distinct, bounded-distinct, total."""
    model = str(model)
    if model in ("total", "distinct-total"):
        return count_distinct_total(E)
    if N is None:
        raise PartitionArgumentError(f"model {model!r} needs N")
    if model == "unrestricted":
        return count_unrestricted_max_parts(E, N)
    if model == "distinct":
        return count_distinct(E, N)
    if model in ("bounded", "bounded-distinct"):
        if B is None:
            raise PartitionArgumentError("bounded model needs B")
        return count_distinct_bounded(E, N, B)
    raise PartitionArgumentError(f"unknown model {model!r}")


def verify_shift_identity(E: int, N: int) -> bool:
    """Check q(E, N) == P(E - N(N+1)/2, N), a negative shifted energy counting 0."""
    _check_nonneg(E=E, N=N)
    shifted = E - min_distinct_energy(N)
    rhs = count_unrestricted_max_parts(shifted, N) if shifted >= 0 else BigCount(0)
    return count_distinct(E, N) == rhs
