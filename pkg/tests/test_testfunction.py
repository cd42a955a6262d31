import cmath
import math

import numpy as np
import pytest
import scipy.integrate

from lowzero import rayleigh
from lowzero.chebyshev import u_eval
from lowzero.solver import build_context, smallest_root
from lowzero.symmetry import Symmetry
from lowzero.testfunction import (
    assemble,
    full_integral_closed,
    mode_coefficient,
    quotient_quadrature,
    reconstruct,
    residuals,
    small_support_function,
    solve_continuity,
    tail_integral_closed,
)

EQUATION_CASES = [
    (Symmetry.SOplus, 0.75),
    (Symmetry.Sp, 0.75),
    (Symmetry.Sp, 0.6),
    (Symmetry.SOminus, 0.8),
    (Symmetry.SOminus, 1.2),
]

SMALL_CASES = [
    (Symmetry.O, 0.35),
    (Symmetry.O, 0.9),
    (Symmetry.Sp, 0.3),
    (Symmetry.SOplus, 0.45),
    (Symmetry.SOminus, 0.25),
]


def _solved(g, R):
    ctx = build_context(g, R)
    lam = smallest_root(ctx)
    return ctx, lam


# ---------------------------------------------------------------------------
# Mode coefficients
# ---------------------------------------------------------------------------

def test_mode_conjugation_identity():
    for g, R in EQUATION_CASES:
        ctx = build_context(g, R)
        n = ctx.n
        for lam in (0.37, 0.83, 1.9):
            z_last = mode_coefficient(ctx, lam, n - 1, order=n)
            z_first = mode_coefficient(ctx, lam, 0, order=n)
            assert z_last.conjugate() == pytest.approx(-z_first, abs=1e-12)


def test_mode_cross_order_identity():
    # z_{n-1}(0) = i*delta*(U_n/U_{n-1})*e^{i lam/2}*z_n(0) - 2*w*delta*e^{i lam n/2};
    # the final term is what produces -2 w delta lam cos(lam R) in the
    # derivative limit at the inner edge of the outermost cell.
    for g, R in EQUATION_CASES:
        ctx = build_context(g, R)
        n, d, w = ctx.n, ctx.delta, ctx.w
        lam = 0.837
        zn0 = mode_coefficient(ctx, lam, 0, order=n)
        zlo0 = mode_coefficient(ctx, lam, 0, order=n - 1)
        rhs = (
            1j * d * u_eval(n, lam) / u_eval(n - 1, lam) * cmath.exp(1j * lam / 2) * zn0
            - 2 * w * d * cmath.exp(1j * lam * n / 2)
        )
        assert zlo0 == pytest.approx(rhs, abs=1e-10)
        lhs_deriv = lam * (zlo0 * cmath.exp(1j * lam * (R - n / 2))).real
        rhs_deriv = -2 * w * d * lam * math.cos(lam * R) + lam * (
            1j * d * u_eval(n, lam) / u_eval(n - 1, lam)
            * zn0 * cmath.exp(1j * lam * (R - (n - 1) / 2))
        ).real
        assert lhs_deriv == pytest.approx(rhs_deriv, abs=1e-10)


def test_mode_coefficient_guards():
    ctx = build_context(Symmetry.Sp, 0.75)
    with pytest.raises(ValueError):
        mode_coefficient(ctx, 0.3, 2, order=2)
    with pytest.raises(ValueError):
        mode_coefficient(ctx, 0.5, 0, order=2)  # root of U_2


def test_mode_coefficient_outermost_cell_display():
    # alternative form of z_n(0): the whole partial geometric sum divided
    # through by (i*delta)^n U_n, instead of the term-by-term expression
    for g, R in EQUATION_CASES:
        ctx = build_context(g, R)
        n, d, w = ctx.n, ctx.delta, ctx.w
        for lam in (0.41, 1.3):
            zfac = 1j * d * cmath.exp(1j * lam)
            series = 1 - zfac**n * u_eval(n, lam) + zfac ** (n + 1) * u_eval(n - 1, lam)
            alt = (
                1j * w / ((1j * d) ** n * u_eval(n, lam))
                * cmath.exp(-1j * lam * (n + 1) / 2)
                * series
                / (lam + d * math.sin(lam))
            )
            assert mode_coefficient(ctx, lam, 0, order=n) == pytest.approx(
                alt, rel=1e-12
            )


# ---------------------------------------------------------------------------
# Continuity system
# ---------------------------------------------------------------------------

def test_solve_continuity_residual():
    from lowzero.solver import _ipow, forcing_amplitude

    for g, R in EQUATION_CASES:
        ctx, lam = _solved(g, R)
        x = solve_continuity(ctx, lam)
        z = forcing_amplitude(ctx, lam)
        rhs = np.array(
            [u_eval(k, lam) * (z * _ipow(-ctx.delta, k)).imag for k in range(ctx.n)]
        )
        residual = np.linalg.norm(ctx.m_matrix @ x - rhs)
        assert residual <= 1e-10 * max(np.linalg.norm(rhs), 1e-30)


def test_solve_continuity_two_cells_cramer():
    ctx, lam = _solved(Symmetry.SOplus, 0.75)
    d = ctx.delta
    theta_cap = 0.5 * (0.75 - 0.5) + 0.5 * math.pi * (1 + d / 2)
    inv = np.linalg.inv(ctx.m_matrix)
    assert inv[0, 0] == pytest.approx(-1.0, rel=1e-12)
    assert inv[1, 0] == pytest.approx(0.0, abs=1e-14)
    assert inv[0, 1] == pytest.approx(-d * math.tan(theta_cap), rel=1e-12)
    assert inv[1, 1] == pytest.approx(d / math.cos(theta_cap), rel=1e-12)


def test_solve_continuity_linear_in_scale():
    base = build_context(Symmetry.Sp, 0.8, w=1.0)
    double = build_context(Symmetry.Sp, 0.8, w=2.0)
    lam = smallest_root(base)
    assert np.allclose(
        solve_continuity(double, lam), 2 * solve_continuity(base, lam), rtol=1e-12
    )


# ---------------------------------------------------------------------------
# Assembled optimizer
# ---------------------------------------------------------------------------

def test_assembled_even_continuous_supported():
    rng = np.random.default_rng(99)
    for g, R in EQUATION_CASES:
        ctx, lam = _solved(g, R)
        h = assemble(ctx, lam)
        amp = max(abs(h(float(u))) for u in np.linspace(-R, R, 101))
        for u in rng.uniform(0, R + 0.3, 500):
            u = float(u)
            assert abs(h(u) - h(-u)) <= 1e-9 * max(amp, 1.0)
        for b in h.breakpoints()[1:-1]:
            b = float(b)
            assert abs(h(b - 1e-12) - h(b + 1e-12)) <= 1e-8 * amp
        assert h(R) == pytest.approx(0.0, abs=1e-10 * amp)
        assert h(-R) == pytest.approx(0.0, abs=1e-10 * amp)
        assert h(R + 0.05) == 0.0
        assert h(-R - 10.0) == 0.0


def test_assembled_frequency_split():
    # each cell carries exactly one term at the solved frequency, the rest at
    # Chebyshev frequencies strictly below 1
    ctx, lam = _solved(Symmetry.SOminus, 1.2)
    h = assemble(ctx, lam)
    for piece in h.pieces:
        at_lam = [t for t in piece.terms if abs(t[1] - lam) < 1e-12]
        others = [t for t in piece.terms if abs(t[1] - lam) >= 1e-12]
        assert len(at_lam) == 1
        assert all(abs(t[1]) < 1.0 for t in others)


def test_small_support_function_is_shifted_cosine():
    for g, R in SMALL_CASES:
        h, _ = small_support_function(g, R)
        lam = h.lam
        for u in np.linspace(-R, R, 41):
            expected = -(1.0 / lam) * (math.cos(lam * u) - math.cos(lam * R))
            assert h(float(u)) == pytest.approx(expected, abs=1e-13)
        assert h(R + 1e-9) == 0.0


def test_reconstruct_dispatch():
    h, res = reconstruct(Symmetry.O, 0.9)
    assert res.branch == "small_support"
    h2, res2 = reconstruct(Symmetry.Sp, 0.75)
    assert res2.branch == "transcendental"
    with pytest.raises(ValueError):
        reconstruct(Symmetry.U, 0.5)


# ---------------------------------------------------------------------------
# Integrals: closed forms against quadrature
# ---------------------------------------------------------------------------

def test_integral_closed_forms_match_quadrature():
    for g, R in EQUATION_CASES:
        ctx, lam = _solved(g, R)
        h = assemble(ctx, lam)
        tail_quad, _ = scipy.integrate.quad(
            h, R - 1, R, points=[float(b) for b in h.breakpoints() if R - 1 < b < R],
            limit=200, epsabs=1e-12,
        )
        full_quad, _ = scipy.integrate.quad(
            h, -R, R, points=[float(b) for b in h.breakpoints()[1:-1]],
            limit=200, epsabs=1e-12,
        )
        scale = max(abs(tail_quad), abs(full_quad), 1e-12)
        assert abs(tail_integral_closed(ctx, lam) - tail_quad) <= 1e-9 * scale
        assert abs(full_integral_closed(ctx, lam) - full_quad) <= 1e-9 * scale


def test_lambda_mode_integrals_closed_form():
    # isolate the lam-frequency part of the optimizer and compare its two
    # closed-form integrals against quadrature of that part alone
    from lowzero.solver import _ipow, forcing_amplitude
    from lowzero.testfunction import Piece, PiecewiseTestFunction

    for g, R in EQUATION_CASES:
        ctx, lam = _solved(g, R)
        h = assemble(ctx, lam)
        lam_pieces = tuple(
            Piece(p.lo, p.hi, tuple(t for t in p.terms if abs(t[1] - lam) < 1e-12))
            for p in h.pieces
        )
        h_lam = PiecewiseTestFunction(
            pieces=lam_pieces, R=h.R, lam=lam, g=h.g, w=h.w
        )
        z = forcing_amplitude(ctx, lam)
        d = ctx.delta
        full_closed = -(2 / lam) * sum(
            u_eval(k, lam) * (z * _ipow(-d, k)).real for k in range(ctx.n)
        )
        acc = sum(_ipow(-d, k) * u_eval(k, lam) for k in range(ctx.n))
        tail_closed = (
            -(2 * ctx.w / (d * lam)) * math.cos(lam * R)
            - (2 / lam) * z.real
            + 2 * d * (1j * z * acc).real
        )
        pts = [float(b) for b in h.breakpoints()]
        full_quad, _ = scipy.integrate.quad(
            h_lam, -R, R, points=[b for b in pts if -R < b < R], limit=200,
            epsabs=1e-12,
        )
        tail_quad, _ = scipy.integrate.quad(
            h_lam, R - 1, R, points=[b for b in pts if R - 1 < b < R], limit=200,
            epsabs=1e-12,
        )
        scale = max(abs(full_quad), abs(tail_quad), 1.0)
        assert abs(full_closed - full_quad) <= 1e-9 * scale
        assert abs(tail_closed - tail_quad) <= 1e-9 * scale


def test_exact_integral_matches_quadrature():
    ctx, lam = _solved(Symmetry.Sp, 0.75)
    h = assemble(ctx, lam)
    for lo, hi in [(-0.75, 0.75), (0.1, 0.6), (-0.3, 0.71), (0.6, 1.4)]:
        quad, _ = scipy.integrate.quad(
            h, lo, hi, points=[float(b) for b in h.breakpoints() if lo < b < hi],
            limit=200, epsabs=1e-12,
        )
        assert h.integral(lo, hi) == pytest.approx(quad, abs=1e-10)


# ---------------------------------------------------------------------------
# Residual suite
# ---------------------------------------------------------------------------

def test_residuals_equation_branch():
    for g, R in EQUATION_CASES:
        ctx, lam = _solved(g, R)
        h = assemble(ctx, lam)
        report = residuals(h, ctx)
        assert report.delayed_ode <= 1e-7
        assert report.volterra <= 1e-7
        assert report.compatibility <= 1e-7
        assert report.rayleigh_gap <= 1e-7
        assert report.int_tail_gap <= 1e-9
        assert report.int_full_gap <= 1e-9


def test_residuals_small_support_branch():
    for g, R in SMALL_CASES:
        h, _ = reconstruct(g, R)
        report = residuals(h, None)
        assert report.max_defect() <= 1e-7


def test_quotient_matches_solved_minimum_and_oracle():
    for g, R in [(Symmetry.SOplus, 0.75), (Symmetry.SOminus, 1.2), (Symmetry.O, 0.6)]:
        h, res = reconstruct(g, R)
        target = res.m_tilde
        assert quotient_quadrature(h) == pytest.approx(target, rel=1e-6)
        assert math.sqrt(quotient_quadrature(h)) == pytest.approx(
            rayleigh.sqrt_quotient(g, R, 400), abs=5e-3
        )


def test_compatibility_scale_covariance():
    ctx, lam = _solved(Symmetry.Sp, 0.8)
    h = assemble(ctx, lam)
    ctx2 = build_context(Symmetry.Sp, 0.8, w=2.0)
    h2 = assemble(ctx2, lam)
    # doubling the normalization doubles every linear functional of h
    assert h2.integral(ctx.R - 1, ctx.R) == pytest.approx(
        2 * h.integral(ctx.R - 1, ctx.R), rel=1e-10
    )
    assert h2.integral(-ctx.R, ctx.R) == pytest.approx(
        2 * h.integral(-ctx.R, ctx.R), rel=1e-10
    )
