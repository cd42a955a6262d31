"""Chebyshev polynomials of the first and second kind.

Everything here evaluates through the three-term recurrence, never through
the trigonometric forms: the solver routinely needs arguments with |x| > 1,
and the recurrence is exact-form stable for the small orders (n <= ~20)
appearing in this package.  The trig identities are reserved for tests.

Order -1 is allowed for the second kind and denotes the zero polynomial,
which closes recurrences that shift orders down by one.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["u_eval", "t_eval", "u_roots", "u_stack", "truncated_geometric"]


def u_eval(n: int, x):
    """Second-kind Chebyshev polynomial U_n(x); scalar or ndarray x."""
    if n < -1:
        raise ValueError("order must be >= -1")
    if n == -1:
        return np.zeros_like(x) if isinstance(x, np.ndarray) else 0.0
    prev = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return prev
    cur = 2 * x
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def t_eval(n: int, x):
    """First-kind Chebyshev polynomial T_n(x); scalar or ndarray x."""
    if n < 0:
        raise ValueError("order must be >= 0")
    prev = np.ones_like(x) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return prev
    cur = x
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def u_roots(n: int) -> list[float]:
    """The n roots of U_n, cos(k*pi/(n+1)) for k = 1..n, in decreasing order."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return [math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)]


def u_stack(n_max: int, x):
    """All of U_0(x)..U_{n_max}(x) at once, sharing the recurrence.

    Returns a list indexed by order; entries are scalars or arrays matching x.
    """
    out = [np.ones_like(x) if isinstance(x, np.ndarray) else 1.0]
    if n_max >= 1:
        out.append(2 * x)
    for _ in range(n_max - 1):
        out.append(2 * x * out[-1] - out[-2])
    return out


def truncated_geometric(n: int, x: float, z: complex) -> complex:
    """Partial sum  sum_{j=0}^{n-1} U_j(x) z^j  by direct summation.

    The closed form (1 - z^n U_n(x) + z^{n+1} U_{n-1}(x)) / (1 - 2zx + z^2)
    is equivalent away from the denominator's zero set and is used as a test
    oracle only, so this routine stays safe at the singularity.
    """
    if n < 1:
        raise ValueError("need at least one term")
    total = 0j
    u_prev, u_cur = 0.0, 1.0  # U_{-1}, U_0
    zpow = 1.0 + 0j
    for _ in range(n):
        total += u_cur * zpow
        u_prev, u_cur = u_cur, 2 * x * u_cur - u_prev
        zpow *= z
    return total
