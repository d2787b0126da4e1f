"""Exact arithmetic and truncated power series with bivariate mark coefficients.

A :class:`MarkedSeries` is a power series in ``z`` truncated at a fixed order.
Each coefficient is a :class:`MarkPoly`, a sparse polynomial in two marks,
``u`` (inner reticulations) and ``w`` (reticulations), with exact rational
coefficients and degree caps shared by every coefficient of the series.

Rationals are :class:`fractions.Fraction`; values with denominator 1 are
stored as plain ``int`` so integer-valued computations stay fast.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Tuple, Union

Rational = Union[int, Fraction]
Monomial = Tuple[int, int]


class DomainError(ValueError):
    """An argument is outside the domain of the operation."""


class ContractError(ValueError):
    """Operands violate a structural precondition (caps, constant term, ...)."""


def exact(x: Rational) -> Rational:
    """Normalize ``x`` to ``int`` when it is integral, else a reduced ``Fraction``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return x


def as_integer(x: Rational) -> int:
    """Return ``x`` as an ``int``; raise if it is not integral."""
    x = exact(x)
    if not isinstance(x, int):
        raise ArithmeticError(f"expected an integer, got {x}")
    return x


def double_factorial(m: int) -> int:
    """m·(m-2)·…·1 for odd ``m >= -1``, with (-1)!! = 1."""
    if m < -1 or m % 2 == 0:
        raise DomainError(f"double factorial needs an odd integer >= -1, got {m}")
    result = 1
    for f in range(m, 1, -2):
        result *= f
    return result


class MarkPoly:
    """Sparse polynomial in the marks ``u`` and ``w`` with degree caps.

    Terms above the caps are discarded on construction and multiplication.
    Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "max_u", "max_w")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None,
                 max_u: int = 0, max_w: int = 0):
        if max_u < 0 or max_w < 0:
            raise DomainError("mark caps must be non-negative")
        self.max_u = max_u
        self.max_w = max_w
        clean: Dict[Monomial, Rational] = {}
        for (du, dw), c in (terms or {}).items():
            if du < 0 or dw < 0:
                raise DomainError(f"negative mark degree {(du, dw)}")
            if du > max_u or dw > max_w:
                continue
            c = exact(c)
            if c:
                clean[(du, dw)] = exact(clean.get((du, dw), 0) + c)
                if not clean[(du, dw)]:
                    del clean[(du, dw)]
        self._terms = clean

    @classmethod
    def constant(cls, c: Rational, max_u: int = 0, max_w: int = 0) -> "MarkPoly":
        return cls({(0, 0): c}, max_u, max_w)

    @property
    def caps(self) -> Monomial:
        return (self.max_u, self.max_w)

    def terms(self) -> Dict[Monomial, Rational]:
        return dict(self._terms)

    def __getitem__(self, key: Monomial) -> Rational:
        return self._terms.get(key, 0)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MarkPoly):
            return self.caps == other.caps and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0, 0): exact(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.caps, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "MarkPoly(0)"
        parts = []
        for (du, dw) in sorted(self._terms):
            c = self._terms[(du, dw)]
            mono = "".join(
                f"{v}^{d}" if d > 1 else v for v, d in (("u", du), ("w", dw)) if d
            )
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return "MarkPoly(" + " + ".join(parts) + ")"

    def _check(self, other: "MarkPoly") -> None:
        if self.caps != other.caps:
            raise ContractError(f"mark cap mismatch: {self.caps} vs {other.caps}")

    def __add__(self, other: "MarkPoly") -> "MarkPoly":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return MarkPoly(out, *self.caps)

    def __neg__(self) -> "MarkPoly":
        return MarkPoly({k: -c for k, c in self._terms.items()}, *self.caps)

    def __sub__(self, other: "MarkPoly") -> "MarkPoly":
        return self + (-other)

    def scale(self, c: Rational) -> "MarkPoly":
        c = exact(c)
        return MarkPoly({k: v * c for k, v in self._terms.items()}, *self.caps)

    def __mul__(self, other: "MarkPoly") -> "MarkPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, Rational] = {}
        mu, mw = self.caps
        for (u1, w1), c1 in self._terms.items():
            for (u2, w2), c2 in other._terms.items():
                du, dw = u1 + u2, w1 + w2
                if du > mu or dw > mw:
                    continue
                out[(du, dw)] = out.get((du, dw), 0) + c1 * c2
        return MarkPoly(out, mu, mw)

    __rmul__ = scale

    def evaluate(self, u: Rational = 1, w: Rational = 1) -> Rational:
        return exact(sum(c * u ** du * w ** dw for (du, dw), c in self._terms.items()))


class MarkedSeries:
    """Power series in ``z`` truncated after ``z**order``; coefficients are MarkPolys."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Union[MarkPoly, Rational]], order: int,
                 max_u: int = 0, max_w: int = 0):
        if order < 0:
            raise DomainError("truncation order must be >= 0")
        polys = []
        for c in coeffs:
            if not isinstance(c, MarkPoly):
                c = MarkPoly.constant(c, max_u, max_w)
            elif c.caps != (max_u, max_w):
                raise ContractError(f"coefficient caps {c.caps} differ from {(max_u, max_w)}")
            polys.append(c)
        polys = polys[: order + 1]
        zero = MarkPoly({}, max_u, max_w)
        polys.extend(zero for _ in range(order + 1 - len(polys)))
        self.order = order
        self.coeffs = tuple(polys)

    @property
    def caps(self) -> Monomial:
        return self.coeffs[0].caps

    def __getitem__(self, d: int) -> MarkPoly:
        return self.coeffs[d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"MarkedSeries(order={self.order}, coeffs={list(self.coeffs)!r})"

    def valuation(self) -> int | None:
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        return None

    def truncate(self, order: int) -> "MarkedSeries":
        return MarkedSeries(self.coeffs[: order + 1], order, *self.caps)

    def __add__(self, other: "MarkedSeries") -> "MarkedSeries":
        return series_add(self, other)

    def __sub__(self, other: "MarkedSeries") -> "MarkedSeries":
        return series_add(self, other.scale(-1))

    def __mul__(self, other: "MarkedSeries") -> "MarkedSeries":
        return series_mul(self, other)

    def scale(self, c: Rational) -> "MarkedSeries":
        return MarkedSeries((p.scale(c) for p in self.coeffs), self.order, *self.caps)


def _same_caps(a: MarkedSeries, b: MarkedSeries) -> None:
    if a.caps != b.caps:
        raise ContractError(f"mark cap mismatch: {a.caps} vs {b.caps}")


def series_add(a: MarkedSeries, b: MarkedSeries) -> MarkedSeries:
    _same_caps(a, b)
    order = min(a.order, b.order)
    return MarkedSeries((a[d] + b[d] for d in range(order + 1)), order, *a.caps)


def series_mul(a: MarkedSeries, b: MarkedSeries) -> MarkedSeries:
    """Truncated Cauchy product; result order is ``min(a.order, b.order)``."""
    _same_caps(a, b)
    order = min(a.order, b.order)
    zero = MarkPoly({}, *a.caps)
    out = []
    for d in range(order + 1):
        acc = zero
        for i in range(d + 1):
            if a[i] and b[d - i]:
                acc = acc + a[i] * b[d - i]
        out.append(acc)
    return MarkedSeries(out, order, *a.caps)


def one(order: int, max_u: int = 0, max_w: int = 0) -> MarkedSeries:
    return MarkedSeries([1], order, max_u, max_w)


def reciprocal_power(m: MarkedSeries, n: int, order: int) -> MarkedSeries:
    """Truncation of ``(1 - m)**(-n)`` for ``m`` without constant term.

    Uses the binomial series sum_i C(n-1+i, i) m**i; only i <= order
    contributes because ``m`` has valuation >= 1.
    """
    if n < 1:
        raise DomainError(f"exponent must be >= 1, got {n}")
    if order < 0:
        raise DomainError("truncation order must be >= 0")
    if m[0]:
        raise ContractError("series must have zero constant term")
    m = MarkedSeries(m.coeffs, order, *m.caps)
    result = one(order, *m.caps)
    power = one(order, *m.caps)
    for i in range(1, order + 1):
        power = series_mul(power, m)
        if power.valuation() is None:
            break
        result = series_add(result, power.scale(comb(n - 1 + i, i)))
    return result
