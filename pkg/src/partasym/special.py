"""Debye-type integrals that drive every saddle equation.

Two integrals appear::

    g_minus(v) = int_0^v t / (e^t - 1) dt      (bounded above by pi^2/6)
    g_plus(v)  = int_0^v t / (1 - e^-t) dt  = g_minus(v) + v^2/2

``g_minus`` is evaluated with a termwise-integrated Bernoulli series for
``v < 1`` and with the exponentially convergent tail
``pi^2/6 - sum_k e^{-kv} (v/k + 1/k^2)`` for ``v >= 1``.  No quadrature is
used on the hot path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PartitionArgumentError

ZETA2 = math.pi ** 2 / 6.0
SWITCH_POINT = 1.0
# beyond this the tail is below the double-precision resolution of ZETA2
DOMAIN_CAP = 700.0

_EPS = 2.220446049250313e-16
_TAIL_CUTOFF = 1e-18
_MAX_TAYLOR_ORDER = 60


def _bernoulli_numbers(n_max):
    """B_0..B_n_max as exact fractions (B_1 = -1/2 convention)."""
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b[m] = -acc / (m + 1)
    return b


def _taylor_coefficients(n_max):
    # int_0^v sum_n B_n t^n / n! dt = sum_n B_n v^(n+1) / ((n+1) n!)
    coeffs = []
    for n, bn in enumerate(_bernoulli_numbers(n_max)):
        if bn != 0:
            coeffs.append((n + 1, float(bn / ((n + 1) * math.factorial(n)))))
    return tuple(coeffs)


_TAYLOR = _taylor_coefficients(_MAX_TAYLOR_ORDER)


@dataclass(frozen=True)
class IntegralValue:
    """A real value with an a-priori absolute error bound."""

    value: float
    abs_error_bound: float

    def __float__(self):
        return self.value


def _check_argument(v):
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise PartitionArgumentError(f"v must be a real number, got {v!r}")
    v = float(v)
    if not math.isfinite(v) or v < 0.0:
        raise PartitionArgumentError(f"v must be finite and >= 0, got {v!r}")
    return v


def _g_minus_taylor(v):
    total = 0.0
    last = 0.0
    vp = v
    power = 1
    # coefficients are ordered by power; accumulate smallest-last is not
    # needed here because |terms| decay like (v / 2 pi)^n
    for p, coef in _TAYLOR:
        while power < p:
            vp *= v
            power += 1
        last = coef * vp
        total += last
        if abs(last) < _TAIL_CUTOFF * max(total, 1e-300) and p > 3:
            break
    return total, abs(last)


def _g_minus_tail(v):
    tail = 0.0
    k = 1
    q = math.exp(-v)
    qk = q
    while True:
        term = qk * (v / k + 1.0 / (k * k))
        tail += term
        if term < _TAIL_CUTOFF:
            break
        k += 1
        qk *= q
    return ZETA2 - tail, term


def g_minus_taylor_branch(v):
    """Series branch only; exposed so the branch switch can be tested."""
    return _g_minus_taylor(_check_argument(v))[0]


def g_minus_tail_branch(v):
    """Exponential-tail branch only; exposed so the branch switch can be tested."""
    v = _check_argument(v)
    if v == 0.0:
        return 0.0
    return _g_minus_tail(v)[0]


def g_minus(v) -> IntegralValue:
    """Integral of t/(e^t - 1) over [0, v].

    Monotone nondecreasing, ``0 <= g_minus(v) <= min(v, pi^2/6)``.  For
    ``v > 700`` the value is ``pi^2/6`` to double precision.
    """
    v = _check_argument(v)
    if v == 0.0:
        return IntegralValue(0.0, 0.0)
    if v > DOMAIN_CAP:
        return IntegralValue(ZETA2, 2 * _EPS * ZETA2)
    if v < SWITCH_POINT:
        value, trunc = _g_minus_taylor(v)
    else:
        value, trunc = _g_minus_tail(v)
    return IntegralValue(value, trunc + 8 * _EPS * max(value, 1e-300))


def g_plus(v) -> IntegralValue:
    """Integral of t/(1 - e^-t) over [0, v], i.e. ``g_minus(v) + v**2 / 2``.

    The stated error bound includes the rounding of ``v**2 / 2``, so it grows
    with v beyond the bound of :func:`g_minus`.
    """
    base = g_minus(v)
    v = float(v)
    half_sq = 0.5 * v * v
    value = base.value + half_sq
    return IntegralValue(value, base.abs_error_bound + 2 * _EPS * value)


def g_plus_derivative(v):
    """d/dv g_plus(v) = v / (1 - e^-v), with the limit 1 at v = 0."""
    v = _check_argument(v)
    if v == 0.0:
        return 1.0
    return v / -math.expm1(-v)


def g_minus_derivative(v):
    """d/dv g_minus(v) = v / (e^v - 1), with the limit 1 at v = 0."""
    v = _check_argument(v)
    if v == 0.0:
        return 1.0
    if v > DOMAIN_CAP:
        return 0.0
    return v / math.expm1(v)
