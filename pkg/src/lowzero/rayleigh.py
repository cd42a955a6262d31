"""Brute-force oracle: minimize the support-constrained Rayleigh quotient.

Admissible test functions on [-R, R] are expanded in the odd cosine modes
C_n(u) = cos(pi*n*u/(2R)) (even-index coefficients vanish identically for
this boundary condition).  In that basis the quotient becomes a ratio of two
quadratic forms c^T A c / c^T B c whose entries are closed-form trigonometric
integrals, and its minimum over the first N modes is the smallest generalized
eigenvalue of (A, B).  B is positive definite, so the LAPACK Cholesky-based
reduction applies.

The minimum returned is the 16 R^2 - scaled quantity (so the unitary case is
exactly 1 for every R and N); divide its square root by 4R to compare with
the normalized quotient used by the closed-form solver.

Truncation makes this an upper-bounding subspace minimum, nonincreasing in N;
nothing here certifies a lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .symmetry import Symmetry

__all__ = [
    "QuadraticForms",
    "cos_conv_integral",
    "sin_conv_integral",
    "assemble_forms",
    "minimize",
    "sqrt_quotient",
]


def cos_conv_integral(m: int, n: int, R: float) -> float:
    """Integral over [-1, 1] of the self-convolution C_m * C_n.

    Only used past half support (R > 1/2); below it the convolution integral
    collapses to a rank-one term handled directly in ``assemble_forms``.
    Symmetric in (m, n).
    """
    _check_mode_args(m, n, R)
    if m == n:
        return (
            2 * R * (2 * R - 1) / (n * math.pi) * math.sin(math.pi * n / (2 * R))
            - 8 * R * R / (math.pi * n) ** 2 * math.cos(math.pi * n / (2 * R))
            + 8 * R * R / (math.pi * n) ** 2
        )
    sign = -1.0 if ((m + n) // 2) % 2 else 1.0
    lead = 8 * R * R * sign / math.pi**2
    bracket = (
        math.cos(math.pi * n / (2 * R)) / n**2
        - math.cos(math.pi * m / (2 * R)) / m**2
    )
    return lead * m * n / (m * m - n * n) * bracket - lead / (m * n)


def sin_conv_integral(m: int, n: int, R: float) -> float:
    """Integral over [-1, 1] of S_m * S_n with S_n(u) = sin(pi*n*u/(2R)).

    Captures the derivative convolution; symmetric in (m, n).
    """
    _check_mode_args(m, n, R)
    if m == n:
        return -2 * R * (2 * R - 1) / (n * math.pi) * math.sin(math.pi * n / (2 * R))
    sign = -1.0 if ((m + n) // 2) % 2 else 1.0
    return (
        8 * R * R * sign / (math.pi**2 * (m * m - n * n))
        * (math.cos(math.pi * m / (2 * R)) - math.cos(math.pi * n / (2 * R)))
    )


def _check_mode_args(m: int, n: int, R: float) -> None:
    if R <= 0.5:
        raise ValueError("convolution coefficients only apply for R > 1/2")
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ValueError("mode indices must be odd positive integers")


@dataclass(frozen=True)
class QuadraticForms:
    """Numerator/denominator forms of the truncated Rayleigh quotient."""

    numerator: np.ndarray
    denominator: np.ndarray
    R: float
    g: Symmetry


def assemble_forms(g: Symmetry, R: float, N: int) -> QuadraticForms:
    """Build the N x N quadratic forms over the first N odd cosine modes."""
    if R <= 0:
        raise ValueError("R must be positive")
    if N < 1:
        raise ValueError("N must be >= 1")
    delta = g.delta
    eps = float(g.epsilon)
    idx = 2 * np.arange(1, N + 1) - 1  # odd mode indices 1, 3, 5, ...
    v = np.where((idx // 2) % 2 == 0, 1.0, -1.0) / idx

    A = np.diag(idx.astype(float) ** 2)
    B = np.eye(N)
    if R <= 0.5:
        B += (delta + 2 * eps) * (8 * R / math.pi**2) * np.outer(v, v)
    else:
        mm, nn = np.meshgrid(idx, idx, indexing="ij")
        lam = np.empty((N, N))
        mu = np.empty((N, N))
        off = mm != nn
        sign = np.where(((mm + nn) // 2) % 2 == 0, 1.0, -1.0)
        cos_m = np.cos(math.pi * mm / (2 * R))
        cos_n = np.cos(math.pi * nn / (2 * R))
        with np.errstate(divide="ignore", invalid="ignore"):
            diff = (mm * mm - nn * nn).astype(float)
            lead = 8 * R * R * sign / math.pi**2
            lam_off = lead * mm * nn / diff * (cos_n / nn**2 - cos_m / mm**2)
            lam_off -= lead / (mm * nn)
            mu_off = lead / diff * (cos_m - cos_n)
        d = idx.astype(float)
        sin_d = np.sin(math.pi * idx / (2 * R))
        cos_d = np.cos(math.pi * idx / (2 * R))
        lam_diag = (
            2 * R * (2 * R - 1) / (d * math.pi) * sin_d
            - 8 * R * R / (math.pi * d) ** 2 * cos_d
            + 8 * R * R / (math.pi * d) ** 2
        )
        mu_diag = -2 * R * (2 * R - 1) / (d * math.pi) * sin_d
        lam = np.where(off, lam_off, 0.0) + np.diag(lam_diag)
        mu = np.where(off, mu_off, 0.0) + np.diag(mu_diag)

        A -= (delta / (2 * R)) * (mm * nn) * mu
        B += (delta / (2 * R)) * lam + (16 * R * eps / math.pi**2) * np.outer(v, v)

    A = 0.5 * (A + A.T)
    B = 0.5 * (B + B.T)
    return QuadraticForms(numerator=A, denominator=B, R=R, g=g)


def minimize(g: Symmetry, R: float, N: int = 400) -> float:
    """Smallest generalized eigenvalue of the truncated quotient forms.

    This is the subspace minimum of the scaled quotient; it decreases toward
    the true minimum as N grows.
    """
    forms = assemble_forms(g, R, N)
    try:
        vals = scipy.linalg.eigh(
            forms.numerator,
            forms.denominator,
            eigvals_only=True,
            subset_by_index=(0, 0),
        )
    except scipy.linalg.LinAlgError as exc:
        cond = np.linalg.cond(forms.denominator)
        raise RuntimeError(
            f"generalized eigensolve failed for {g} at R={R}, N={N} "
            f"(denominator condition estimate {cond:.3e})"
        ) from exc
    return float(vals[0])


def sqrt_quotient(g: Symmetry, R: float, N: int = 400) -> float:
    """Oracle value of the square root of the normalized minimum.

    Rescales ``minimize`` from the 16 R^2 convention back to the quotient the
    closed-form solver reports the square root of.
    """
    return math.sqrt(minimize(g, R, N)) / (4 * R)
