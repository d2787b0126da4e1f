"""First-order asymptotic formulas (in log space) and the limiting law of
(inner reticulations, n - reticulations) for uniformly random galled networks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .galled import _cherry_poly
from .series import DomainError

FAMILIES = ("one_component", "galled", "dup", "fdu", "one_component_near_max")

# ln of the leading constants c in  c * n^-1 * (8/e^2)^n * n^(2n)
_LOG_CONSTANTS = {
    "galled": 0.5 * (math.log(2) + 1 + 0.25) - math.log(4),
    "one_component": 0.5 * (math.log(2) + 0.5) - math.log(4),
    "fdu": 0.5 * (math.log(2) + 0.5) - math.log(4),
    "dup": 0.5 * (math.log(2) + 1.5) - math.log(4),
}

DEFAULT_TRUNCATION = 40


@dataclass(frozen=True)
class LogEstimate:
    family: str
    n: int
    ln_value: float
    k: Optional[int] = None


def log_exact(x: int) -> float:
    """Natural log of a positive big integer without float overflow."""
    if x <= 0:
        raise DomainError("log of a non-positive count")
    return math.log(x)


def log_asym(family: str, n: int, k: Optional[int] = None) -> LogEstimate:
    """Log of the first-order asymptotic formula for ``family`` at ``n`` leaves.

    ``one_component_near_max`` estimates 1-GN[n, n-k], which is only accurate
    for k much smaller than sqrt(n).
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if family == "one_component_near_max":
        if k is None or k < 0:
            raise DomainError("near-max estimate needs k >= 0")
        const = 0.5 * math.log(2) - math.lgamma(k + 1) - (k + 2) * math.log(2) - 0.25
    else:
        if k is not None:
            raise DomainError(f"family {family!r} takes no k")
        const = _LOG_CONSTANTS[family]
    ln_value = const - math.log(n) + n * (math.log(8) - 2) + 2 * n * math.log(n)
    return LogEstimate(family, n, ln_value, k)


def laurent_coeff(j: int, m: int) -> Fraction:
    """[z^m] exp(1/(2z)) * (1 + 2z + 3z^2)^j, exactly."""
    if j < 0:
        raise DomainError(f"j must be >= 0, got {j}")
    poly = _cherry_poly(j)
    total = Fraction(0)
    for l in range(max(0, m), len(poly)):
        d = l - m
        total += Fraction(poly[l], 2 ** d * math.factorial(d))
    return total


def limit_pmf_xy_rational(j: int, k: int) -> Fraction:
    """Rational factor of P(X=j, Y=k); the full probability is this times e^(-7/8)."""
    if j < 0 or k < -j:
        return Fraction(0)
    return laurent_coeff(j, j - k) / (16 ** j * math.factorial(j))


def limit_pmf_xy(j: int, k: int) -> float:
    return math.exp(-7 / 8) * float(limit_pmf_xy_rational(j, k))


def limit_pmf_table(J: int = DEFAULT_TRUNCATION, K: int = DEFAULT_TRUNCATION) -> Dict[Tuple[int, int], float]:
    """P(X=j, Y=k) for 0 <= j <= J, -j <= k <= K."""
    return {
        (j, k): limit_pmf_xy(j, k)
        for j in range(J + 1)
        for k in range(-j, K + 1)
    }


def poisson_pmf(lam: float, k: int) -> float:
    if lam <= 0:
        raise DomainError(f"Poisson parameter must be positive, got {lam}")
    if k < 0:
        return 0.0
    return math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1))


def limit_x_marginal(j: int) -> float:
    return poisson_pmf(3 / 8, j)


class TruncationError(ArithmeticError):
    pass


def limit_moments(J: int = DEFAULT_TRUNCATION, K: int = DEFAULT_TRUNCATION,
                  tol: float = 1e-12) -> Tuple[float, float]:
    """Mean and variance of Y under the truncated limit law."""
    table = limit_pmf_table(J, K)
    mass = math.fsum(table.values())
    if abs(1 - mass) > tol:
        raise TruncationError(f"truncation J={J}, K={K} leaves mass deficit {1 - mass:.3e}")
    mean = math.fsum(k * p for (j, k), p in table.items())
    second = math.fsum(k * k * p for (j, k), p in table.items())
    return mean, second - mean * mean
