"""
Closed-form generating functions and their truncated series.

``Y(x, z) = sum over increasing trees t of x**o(t) * z**m(t) / m(t)!``
has the closed form

    Y = 2x (e^{sz} - 1) / ((s - 1) e^{sz} + s + 1),    s = sqrt(1 - 2x),

and the probability series ``F(x, z) = sum_n sum_o P_n(o) x**o z**n`` is
``F(x, z) = z * Y(x / 2, 2z)``.

The expression for ``Y`` is 0/0 at ``x = 1/2`` and needs imaginary ``s``
for ``x > 1/2``. Writing ``e^w - 1 = w * phi(w)`` with ``w = s z`` gives

    Y = 2 x z phi(w) / (e^w + 1 - z phi(w)),

which is even in ``s`` (so real for every real ``x``) and has no removable
singularity. That form is what gets evaluated; only genuine poles raise
:class:`DomainError`. For series cross-checks keep ``|z| <= 1`` and
``x <= 1`` where the truncated series converges quickly.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import factorial

from .distributions import MAX_EXACT_SIZE, cherry_distribution, joint_counts
from .errors import DomainError, SizeOutOfRangeError

__all__ = [
    "y_closed_form",
    "f_closed_form",
    "evaluate_closed_forms",
    "f_series_coefficients",
    "f_series_value",
    "y_series_coefficients",
    "identity_probability_from_series",
]

_POLE_TOL = 1e-12


def _phi(w: complex) -> complex:
    # (e^w - 1) / w without cancellation near 0
    if abs(w) < 1e-3:
        return 1 + w / 2 + w**2 / 6 + w**3 / 24 + w**4 / 120 + w**5 / 720 + w**6 / 5040
    return (cmath.exp(w) - 1) / w


def y_closed_form(x: float, z: float) -> float:
    s = cmath.sqrt(1 - 2 * x)
    w = s * z
    phi = _phi(w)
    denom = cmath.exp(w) + 1 - z * phi
    if abs(denom) < _POLE_TOL * max(1.0, abs(x * z)):
        raise DomainError(f"Y(x, z) has a pole near x={x}, z={z}")
    return (2 * x * z * phi / denom).real


def f_closed_form(x: float, z: float) -> float:
    try:
        return z * y_closed_form(x / 2, 2 * z)
    except DomainError:
        raise DomainError(f"F(x, z) has a pole near x={x}, z={z}") from None


def evaluate_closed_forms(x: float, z: float) -> tuple[float, float]:
    """Return ``(Y(x, z), F(x, z))`` as floats."""
    return y_closed_form(x, z), f_closed_form(x, z)


def f_series_coefficients(n_max: int, *, max_size: int = MAX_EXACT_SIZE) -> dict[int, list[Fraction]]:
    """Coefficients of ``F`` by power of ``z``.

    ``result[n][o]`` is the coefficient of ``x**o z**n``, i.e. the probability
    that a tree with ``n`` leaves has ``o`` cherries. Lists are indexed from
    ``o = 0`` (always zero) to ``n // 2``.
    """
    if not isinstance(n_max, int) or n_max < 2:
        raise SizeOutOfRangeError(f"n_max must be an integer >= 2, got {n_max!r}")
    out = {}
    for n in range(2, n_max + 1):
        dist = cherry_distribution(n, max_size=max_size)
        coeffs = [Fraction(0)] * (n // 2 + 1)
        for o, p in dist.items():
            coeffs[o] = p
        out[n] = coeffs
    return out


def f_series_value(x, z, order: int = 30) -> Fraction | float:
    """Partial sum of ``F`` through ``z**order``.

    Exact when ``x`` and ``z`` are rationals, a float otherwise.
    """
    total = 0
    for n, coeffs in f_series_coefficients(order).items():
        poly = 0
        for c in reversed(coeffs):
            poly = poly * x + c
        total += poly * z**n
    return total


def y_series_coefficients(x, m_max: int, *, max_size: int = MAX_EXACT_SIZE) -> list:
    """``[z**m] Y(x, z)`` for ``m = 1..m_max`` (index 0 holds the zero constant term)."""
    out = [Fraction(0)]
    for m in range(1, m_max + 1):
        marginal = joint_counts(m, max_size=max_size).cherry_marginal()
        out.append(sum(c * Fraction(x) ** o for o, c in marginal.items()) / factorial(m))
    return out


def identity_probability_from_series(n: int) -> Fraction:
    """``4**(n-1) / (n-1)! * [z**(n-1)] Y(1/4, z)``."""
    if n < 2:
        raise SizeOutOfRangeError(f"n must be >= 2, got {n}")
    coef = y_series_coefficients(Fraction(1, 4), n - 1)[n - 1]
    return Fraction(4 ** (n - 1), factorial(n - 1)) * coef
