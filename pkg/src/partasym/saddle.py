"""Saddle-point solutions and log-domain asymptotic estimates.

Every model reduces to a scalar equation in ``v = beta* N`` with
``u = N / sqrt(E)``:

unrestricted (at most N parts)
    v^2/u^2 = g_minus(v),            e^{-alpha*} = 1 - e^{-v}
distinct (exactly N distinct parts)
    v^2/u^2 = g_plus(v),             e^{-alpha*} = e^v - 1
bounded distinct (parts <= B, p = N/B < 1)
    v^2/u^2 = g_plus(w) - (1 + v/p)(w - v),
    e^{-alpha*} = e^w - 1 = (e^v - 1) / (1 - e^{v(1 - 1/p)})

and the estimate is ``ln q = sqrt(E) g(u) + ln f(u) - ln E``.  All
quantities stay in log domain; ``e^{sqrt(E) g}`` is never formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import special
from .errors import (
    FeasibilityError,
    PartitionArgumentError,
    SaddleNumericalError,
    ValidityError,
)

_LN_PREFACTOR = 1.5 * math.log(2.0) + math.log(math.pi)  # ln(2^{3/2} pi)
_LN10 = math.log(10.0)

INITIAL_BRACKET = (1e-8, 700.0)
ROOT_RTOL = 1e-12
VALIDITY_MARGIN = 1e-12
U2_WALL = 2.0 - 1e-9


class ModelKind(str, Enum):
    UNRESTRICTED = "unrestricted"
    DISTINCT = "distinct"
    BOUNDED = "bounded-distinct"

    @classmethod
    def parse(cls, value) -> "ModelKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"bounded": cls.BOUNDED, "unequal": cls.DISTINCT, "max-parts": cls.UNRESTRICTED}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise PartitionArgumentError(f"unknown model {value!r}") from None

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SaddleSolution:
    """Solved saddle coordinates for one (model, E, N, B) query."""

    model: ModelKind
    E: int
    N: int
    B: int | None
    u: float
    p: float | None
    v: float
    w: float | None
    alpha_star: float
    beta_star: float
    entropy: float
    hessian_det: float
    residual: float


@dataclass(frozen=True)
class AsymptoticEstimate:
    """``ln_value = g_term + f_term``: exponent and log-prefactor kept apart."""

    ln_value: float
    g_term: float
    f_term: float
    model: ModelKind
    E: int
    N: int
    B: int | None
    solution: SaddleSolution

    @property
    def log10_value(self) -> float:
        return self.ln_value / _LN10

    @property
    def decimal_digits(self) -> float:
        return self.log10_value


# ---------------------------------------------------------------- helpers


def log_expm1(x: float) -> float:
    """ln(e^x - 1) for x > 0 without overflow."""
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def softplus(x: float) -> float:
    """ln(1 + e^x) without overflow."""
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def bounded_gap(v: float, p: float) -> float:
    """``w - v`` for the bounded model, from the closed form for e^w - 1.

    Uses ``e^{w-v} - 1 = (1 - e^{-v}) q / (1 - q)`` with
    ``q = e^{-v(1/p - 1)}``, which stays accurate when w - v is tiny.
    """
    s = v * (1.0 / p - 1.0)
    q = math.exp(-s)
    return math.log1p(-math.expm1(-v) * q / -math.expm1(-s))


def _as_int(name, value):
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise PartitionArgumentError(f"{name} must be an integer, got {value!r}")
    return value


def check_feasible(model, E, N, B=None):
    """Raise :class:`FeasibilityError` naming the violated bound, else return None."""
    model = ModelKind.parse(model)
    E = _as_int("E", E)
    N = _as_int("N", N)
    if E < 1 or N < 1:
        raise FeasibilityError(f"need E >= 1 and N >= 1, got E={E}, N={N}")
    if model is ModelKind.UNRESTRICTED:
        return
    m = N * (N + 1) // 2
    if m > E:
        raise FeasibilityError(
            f"N(N+1)/2 = {m} > {E} = E: no partition into {N} distinct parts"
        )
    if N * N / E > U2_WALL:
        raise FeasibilityError(f"u^2 = N^2/E = {N * N / E:.12g} exceeds 2 - 1e-9")
    if model is ModelKind.DISTINCT:
        return
    if B is None:
        raise FeasibilityError("bounded model needs a part bound B")
    B = _as_int("B", B)
    if not N < B:
        raise FeasibilityError(f"need N < B, got N={N}, B={B}")
    top = N * B - N * (N - 1) // 2
    if E > top:
        raise FeasibilityError(f"E = {E} > NB - N(N-1)/2 = {top}")
    # counts are symmetric about N(B+1)/2; the saddle has beta* > 0 only below it
    if 2 * E >= N * (B + 1):
        raise FeasibilityError(
            f"E = {E} >= N(B+1)/2 = {N * (B + 1) / 2:g}: saddle has beta* <= 0 "
            f"(use the reflection q(E,N,B) = q(N(B+1)-E,N,B))"
        )


# ---------------------------------------------------------------- saddle equations


def _saddle_functions(model, u, p):
    """Return (h, dh, G): scaled increasing residual, its derivative, and G(v).

    The saddle equation is ``v^2/u^2 = G(v)``; ``h(v) = 1/u^2 - G(v)/v^2`` is
    strictly increasing, which makes bracketing unconditionally safe.
    """
    inv_u2 = 1.0 / (u * u)
    if model is ModelKind.UNRESTRICTED:
        G = lambda v: special.g_minus(v).value  # noqa: E731
        dG = special.g_minus_derivative
    elif model is ModelKind.DISTINCT:
        G = lambda v: special.g_plus(v).value  # noqa: E731
        dG = special.g_plus_derivative
    else:

        def G(v):
            gap = bounded_gap(v, p)
            return special.g_plus(v + gap).value - (1.0 + v / p) * gap

        def dG(v):
            h = 1e-6 * v
            return (G(v + h) - G(v - h)) / (2.0 * h)

    def h(v):
        return inv_u2 - G(v) / (v * v)

    def dh(v):
        return -dG(v) / (v * v) + 2.0 * G(v) / (v * v * v)

    return h, dh, G


def _expand_bracket(h, lo, hi):
    h_lo, h_hi = h(lo), h(hi)
    while h_lo > 0.0 and lo > 1e-300:
        hi, h_hi = lo, h_lo
        lo *= 1e-4
        h_lo = h(lo)
    while h_hi < 0.0 and hi < 1e12:
        lo, h_lo = hi, h_hi
        hi *= 8.0
        h_hi = h(hi)
    if not (h_lo <= 0.0 <= h_hi):
        raise SaddleNumericalError(
            f"root not bracketed: h({lo:.3g}) = {h_lo:.3g}, h({hi:.3g}) = {h_hi:.3g}"
        )
    return lo, hi, h_lo, h_hi


def _safeguarded_newton(h, dh, lo, hi, rtol=ROOT_RTOL, max_iter=400):
    """Bisection on an increasing function, accelerated by Newton steps.

    A Newton step is accepted only if it lands inside the current bracket;
    otherwise the bracket is bisected (geometrically when it spans decades).
    """
    lo, hi, h_lo, h_hi = _expand_bracket(h, lo, hi)
    if h_lo == 0.0:
        return lo
    if h_hi == 0.0:
        return hi
    x = math.sqrt(lo * hi)
    for _ in range(max_iter):
        fx = h(x)
        if fx == 0.0:
            return x
        if fx < 0.0:
            lo = x
        else:
            hi = x
        if hi - lo <= rtol * 1e-2 * hi:
            return 0.5 * (lo + hi)
        step = None
        d = dh(x)
        if d > 0.0 and math.isfinite(d):
            cand = x - fx / d
            if lo < cand < hi:
                step = cand
        if step is None:
            step = math.sqrt(lo * hi) if hi > 4.0 * lo else 0.5 * (lo + hi)
        elif abs(step - x) <= rtol * 1e-2 * x:
            return step
        x = step
    raise SaddleNumericalError(f"no convergence after {max_iter} steps; bracket [{lo!r}, {hi!r}]")


def alpha_from_v(model, v, w=None):
    """alpha* from the closed-form relation of each model."""
    model = ModelKind.parse(model)
    if model is ModelKind.UNRESTRICTED:
        if v < 0.6931471805599453:
            return -math.log(-math.expm1(-v))
        return -math.log1p(-math.exp(-v))
    if model is ModelKind.DISTINCT:
        return -log_expm1(v)
    return -log_expm1(w)


def solve_saddle(model, E, N, B=None) -> SaddleSolution:
    """Solve the scalar saddle equation of ``model`` for (E, N[, B]).

    Raises
    ------
    FeasibilityError
        If the query violates the model's bounds.
    SaddleNumericalError
        If the root cannot be bracketed.
    ValidityError
        If the closed-form Hessian is not positive at the root.
    """
    model = ModelKind.parse(model)
    check_feasible(model, E, N, B)
    E, N = int(E), int(N)
    B = int(B) if (B is not None and model is ModelKind.BOUNDED) else None
    u = N / math.sqrt(E)
    p = N / B if B is not None else None

    h, dh, G = _saddle_functions(model, u, p)
    v = _safeguarded_newton(h, dh, *INITIAL_BRACKET)
    residual = abs(G(v) - v * v / (u * u))
    w = v + bounded_gap(v, p) if model is ModelKind.BOUNDED else None
    alpha = alpha_from_v(model, v, w)
    beta = v / N
    D = closed_form_hessian(model, u, v, beta, w)
    S = entropy_at(model, alpha, beta, E, N, B)
    return SaddleSolution(
        model=model, E=E, N=N, B=B, u=u, p=p, v=v, w=w,
        alpha_star=alpha, beta_star=beta, entropy=S, hessian_det=D, residual=residual,
    )


def saddle_residual(solution: SaddleSolution) -> float:
    """Recompute ``|G(v) - v^2/u^2|`` for a solution."""
    _, _, G = _saddle_functions(solution.model, solution.u, solution.p)
    v, u = solution.v, solution.u
    return abs(G(v) - v * v / (u * u))


# ---------------------------------------------------------------- entropy, Hessian


def entropy_at(model, alpha, beta, E, N, B=None, *, boundary=True) -> float:
    """Euler-Maclaurin entropy ``S = alpha N + beta E + ln Z`` at (alpha, beta).

    ``boundary=False`` drops the O(1) endpoint terms and returns the
    leading-order functional whose stationary point the saddle equations
    describe; finite-difference checks of the Hessian use that form.
    """
    model = ModelKind.parse(model)
    alpha, beta = float(alpha), float(beta)
    if not (beta > 0.0 and math.isfinite(beta)) or not math.isfinite(alpha):
        raise PartitionArgumentError(f"need finite alpha and beta > 0, got ({alpha}, {beta})")
    base = alpha * N + beta * E
    if model is ModelKind.UNRESTRICTED:
        if alpha <= 0.0:
            raise PartitionArgumentError("unrestricted entropy needs e^-alpha < 1 (alpha > 0)")
        # int_0^inf -ln(1 - e^-alpha e^-x) dx = g_minus(-ln(1 - e^-alpha))
        L = -math.log(-math.expm1(-alpha)) if alpha < 0.6931471805599453 else -math.log1p(-math.exp(-alpha))
        S = base + special.g_minus(L).value / beta
        return S - 0.5 * L if boundary else S
    L = softplus(-alpha)
    if model is ModelKind.DISTINCT:
        # int_0^inf ln(1 + e^-alpha e^-x) dx = g_plus(ln(1 + e^-alpha))
        S = base + special.g_plus(L).value / beta
        return S - 0.5 * L if boundary else S
    if B is None:
        raise PartitionArgumentError("bounded entropy needs B")
    Lb = softplus(-alpha - beta * B)
    S = base + (special.g_plus(L).value - special.g_plus(Lb).value) / beta
    return S - 0.5 * L + 0.5 * Lb if boundary else S


def closed_form_hessian(model, u, v, beta, w=None) -> float:
    """D = S_bb S_aa - S_ab^2 from the asymptotic closed-form second derivatives.

    With ``S_bb = 2 v^2 / (u^2 beta^3)``, ``S_ab = v / beta^2`` and
    ``S_aa = X / beta`` this is ``(v^2 / beta^4)(2X/u^2 - 1)``, where X is
    ``e^v - 1``, ``1 - e^-v`` or ``1 - e^-w`` for the three models.
    """
    model = ModelKind.parse(model)
    if model is ModelKind.UNRESTRICTED:
        X = math.expm1(v) if v < 700.0 else math.inf
    elif model is ModelKind.DISTINCT:
        X = -math.expm1(-v)
    else:
        X = -math.expm1(-w)
    if not X - 0.5 * u * u > VALIDITY_MARGIN:
        raise ValidityError(
            f"Hessian degenerates: X - u^2/2 = {X - 0.5 * u * u:.3g} <= {VALIDITY_MARGIN:g} "
            f"(u={u:.12g}, v={v:.12g})"
        )
    return (v * v / beta ** 4) * (2.0 * X / (u * u) - 1.0)


def hessian_det(solution: SaddleSolution) -> float:
    """Closed-form Hessian determinant at a (possibly modified) solution."""
    return closed_form_hessian(solution.model, solution.u, solution.v, solution.beta_star, solution.w)


def gaussian_saddle_ln(solution: SaddleSolution) -> float:
    """``S(alpha*, beta*) - ln(2 pi sqrt(D))``: the uncollapsed saddle formula."""
    return solution.entropy - math.log(2.0 * math.pi) - 0.5 * math.log(solution.hessian_det)


# ---------------------------------------------------------------- estimates


def _exponent_and_radicand(sol: SaddleSolution):
    u, v = sol.u, sol.v
    if sol.model is ModelKind.UNRESTRICTED:
        g = 2.0 * v / u - u * math.log(-math.expm1(-v))
        inner = -math.expm1(-v) - 0.5 * u * u * math.exp(-v)
        ln_scale = 0.0
    elif sol.model is ModelKind.DISTINCT:
        g = 2.0 * v / u - u * log_expm1(v)
        # (e^v - 1) - u^2 e^v / 2 = e^v ((1 - e^-v) - u^2/2)
        inner = -math.expm1(-v) - 0.5 * u * u
        ln_scale = v
    else:
        w, p = sol.w, sol.p
        g = 2.0 * v / u - u * log_expm1(w) + (u / p) * (w - v)
        inner = -math.expm1(-w) - 0.5 * u * u
        ln_scale = w
    if not inner > VALIDITY_MARGIN:
        raise ValidityError(f"prefactor radicand {inner:.3g} <= {VALIDITY_MARGIN:g} at u={u:.12g}")
    return g, ln_scale + math.log(inner)


def estimate_from_solution(sol: SaddleSolution) -> AsymptoticEstimate:
    g, ln_radicand = _exponent_and_radicand(sol)
    g_term = math.sqrt(sol.E) * g
    ln_f = math.log(sol.v) - _LN_PREFACTOR - math.log(sol.u) - 0.5 * ln_radicand
    f_term = ln_f - math.log(sol.E)
    return AsymptoticEstimate(
        ln_value=g_term + f_term, g_term=g_term, f_term=f_term,
        model=sol.model, E=sol.E, N=sol.N, B=sol.B, solution=sol,
    )


def estimate(model, E, N, B=None) -> AsymptoticEstimate:
    """Log-domain asymptotic count ``ln q = sqrt(E) g(u) + ln f(u) - ln E``.

    >>> round(estimate("distinct", 2000, 35).ln_value, 3)
    71.638
    """
    return estimate_from_solution(solve_saddle(model, E, N, B))
