"""Limit law of the standardized sequence, and partial sums.

Standardizing member n yields (V0 + r_n*V1 - mean)/sd with r_n the ratio of
consecutive Fibonacci numbers; as n grows this converges, for every outcome,
to Y = (V0 + phi*V1 - (mean0 + phi*mean1)) / sqrt(var0 + phi^2*var1). The
same Y is the limit of the standardized partial sums S_n = sum of members 0
through n, which collapse exactly to a_{n+1}*V0 + (a_{n+2}-1)*V1.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import fib_core
from .errors import DomainError
from .fib_core import PHI
from .marginal import FsrvModel
from .numerics import DEFAULT_CONFIG, QuadratureConfig, scaled_convolution

_SQRT_1_PHI2 = math.sqrt(1.0 + PHI * PHI)


@dataclass(frozen=True)
class LimitLaw:
    """Affine standardization constants of the limit variable Y."""

    model: FsrvModel
    a_scale: float
    b_shift: float


def limit_law(model: FsrvModel) -> LimitLaw:
    m0, v0, m1, v1 = model.seed_moments()
    a_scale = math.sqrt(v0 + PHI * PHI * v1)
    if a_scale <= 0.0:
        raise DomainError("limit law undefined: both seeds are degenerate (zero variance)")
    return LimitLaw(model=model, a_scale=a_scale, b_shift=m0 + PHI * m1)


def pdf_limit_numeric(law: LimitLaw, x: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Density of Y at x: the density of V0 + phi*V1 evaluated at
    a_scale*x + b_shift and rescaled by a_scale, with the inner density
    obtained by scaled convolution."""
    inner = scaled_convolution(
        law.model.seed0.pdf,
        law.model.seed1.pdf,
        1.0,
        PHI,
        law.a_scale * x + law.b_shift,
        cfg,
        support0=law.model.seed0.effective_support(cfg.tail_mass_cutoff),
        support1=law.model.seed1.effective_support(cfg.tail_mass_cutoff),
        breakpoints0=law.model.seed0.breakpoints(),
        breakpoints1=law.model.seed1.breakpoints(),
    )
    return law.a_scale * inner


def pdf_limit_exponential_closed(x: float) -> float:
    """Closed-form density of Y for iid exponential seeds.

    Standardization makes the result rate-free. With
    c(x) = x*sqrt(1+phi^2) + (1+phi), the density is
    sqrt(1+phi^2) * exp(-c) * (exp(c*(1-1/phi)) - 1) / (phi-1) for c >= 0.
    """
    c = x * _SQRT_1_PHI2 + (1.0 + PHI)
    if c <= 0.0:
        return 0.0
    return _SQRT_1_PHI2 * (math.exp(-c / PHI) - math.exp(-c)) / (PHI - 1.0)


def cdf_limit_exponential_closed(x):
    """Distribution function matching pdf_limit_exponential_closed.

    Accepts a float or an array; obtained by integrating the closed density,
    F = (phi*(1 - exp(-c/phi)) - (1 - exp(-c))) / (phi - 1) for c >= 0.
    """
    c = np.maximum(np.asarray(x, dtype=np.float64) * _SQRT_1_PHI2 + (1.0 + PHI), 0.0)
    out = (PHI * -np.expm1(-c / PHI) + np.expm1(-c)) / (PHI - 1.0)
    return float(out) if np.isscalar(x) else out


_UNIFORM_A = math.sqrt((1.0 + PHI * PHI) / 12.0)
_UNIFORM_B = (1.0 + PHI) / 2.0


def pdf_limit_uniform_closed(x: float) -> float:
    """Closed-form density of Y for iid unit-uniform seeds: the trapezoidal
    density of V0 + phi*V1 pushed through the standardization."""
    u = _UNIFORM_A * x + _UNIFORM_B
    if u <= 0.0 or u >= 1.0 + PHI:
        return 0.0
    if u < 1.0:
        return _UNIFORM_A * u / PHI
    if u <= PHI:
        return _UNIFORM_A / PHI
    return _UNIFORM_A * (1.0 + PHI - u) / PHI


def cdf_limit_uniform_closed(x):
    """Distribution function of Y for iid unit-uniform seeds.

    Computed as the exact integral of the trapezoidal density, so it is
    continuous and hits 0 and 1 exactly at the support edges. Accepts a
    float or an array.
    """
    u = np.asarray(_UNIFORM_A * np.asarray(x, dtype=np.float64) + _UNIFORM_B)
    rising = u * u / (2.0 * PHI)
    flat = 1.0 / (2.0 * PHI) + (u - 1.0) / PHI
    falling = 1.0 - (1.0 + PHI - u) ** 2 / (2.0 * PHI)
    out = np.select(
        [u <= 0.0, u < 1.0, u <= PHI, u < 1.0 + PHI],
        [0.0, rising, flat, falling],
        default=1.0,
    )
    return float(out) if np.isscalar(x) else out


@dataclass(frozen=True)
class SumLaw:
    """Exact linear reduction of the partial sum S_n and its moments."""

    n: int
    coeff0: int
    coeff1: int
    mean: float
    variance: float


def sum_law(n: int, model: FsrvModel) -> SumLaw:
    """Coefficients and moments of S_n = a_{n+1}*V0 + (a_{n+2}-1)*V1."""
    if n < 2:
        raise DomainError(f"sum index must be >= 2, got {n}")
    c0 = fib_core.fib(n + 1)
    c1 = fib_core.fib(n + 2) - 1
    m0, v0, m1, v1 = model.seed_moments()
    return SumLaw(
        n=n,
        coeff0=c0,
        coeff1=c1,
        mean=float(c0) * m0 + float(c1) * m1,
        variance=float(c0 * c0) * v0 + float(c1 * c1) * v1,
    )


def pdf_sum(n: int, model: FsrvModel, x: float,
            cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Density of the partial sum S_n at x by scaled convolution with
    coefficients a_{n+1} and a_{n+2}-1."""
    law = sum_law(n, model)
    return scaled_convolution(
        model.seed0.pdf,
        model.seed1.pdf,
        float(law.coeff0),
        float(law.coeff1),
        x,
        cfg,
        support0=model.seed0.effective_support(cfg.tail_mass_cutoff),
        support1=model.seed1.effective_support(cfg.tail_mass_cutoff),
        breakpoints0=model.seed0.breakpoints(),
        breakpoints1=model.seed1.breakpoints(),
    )


def pdf_sum_exponential_closed(n: int, x: float, rate: float = 1.0) -> float:
    """Closed-form density of S_n for iid exponential seeds:
    (exp(-x/B) - exp(-x/A)) / (B - A) with A = a_{n+1}, B = a_{n+2}-1
    at unit rate, scaled to other rates."""
    if n < 2:
        raise DomainError(f"sum index must be >= 2, got {n}")
    if rate <= 0:
        raise DomainError(f"rate must be positive, got {rate}")
    if x < 0:
        return 0.0
    a = float(fib_core.fib(n + 1))
    b = float(fib_core.fib(n + 2) - 1)
    y = rate * x
    return rate * (math.exp(-y / b) - math.exp(-y / a)) / (b - a)


def normalized_sum_law(n: int, model: FsrvModel) -> tuple[float, float]:
    """(mean, standard deviation) standardizing S_n; the standardized sum
    converges in law to the same limit variable Y as the standardized
    sequence members."""
    law = sum_law(n, model)
    if law.variance <= 0.0:
        raise DomainError("normalized sum undefined: zero variance")
    return law.mean, math.sqrt(law.variance)
