"""Cross-validation matrix behind the ``verify`` CLI command.

Each case compares an independent route against the production one: the
closed-form minimum against the truncated eigenvalue oracle, the general
transcendental equation against its two-piece reduction, the reconstructed
optimizer against its defining residuals, and the symmetric-power proportion
closed forms against the generic bound.  Results are flat, deterministic
records so two runs diff cleanly.
"""

from __future__ import annotations

import numpy as np

from . import proportion as prop
from . import rayleigh, solver, testfunction
from .symmetry import Symmetry

__all__ = ["run_all", "ORACLE_TOL", "ROOT_TOL", "RESIDUAL_TOL", "IDENTITY_TOL"]

ORACLE_TOL = 5e-3
ROOT_TOL = 1e-9
RESIDUAL_TOL = 1e-6
IDENTITY_TOL = 1e-10
THRESHOLD_ZERO_TOL = 1e-9

_NON_UNITARY = (Symmetry.O, Symmetry.Sp, Symmetry.SOplus, Symmetry.SOminus)


def _case(name: str, expected: float, got: float, tol: float) -> dict:
    return {
        "name": name,
        "expected": expected,
        "got": got,
        "tol": tol,
        "pass": bool(abs(got - expected) <= tol),
    }


def oracle_grid(grid_size: int) -> list[float]:
    """R grid in (0.15, 0.95) avoiding the branch seam at 0.5."""
    grid = np.linspace(0.17, 0.93, grid_size)
    return [float(r) for r in grid if abs(r - 0.5) > 0.01]


def oracle_equivalence_cases(grid_size: int = 12, trunc: int = 400) -> list[dict]:
    cases = []
    for g in _NON_UNITARY:
        for R in oracle_grid(grid_size):
            closed = solver.minimal_quotient(g, R).bound
            estimate = rayleigh.sqrt_quotient(g, R, trunc)
            cases.append(
                _case(f"oracle/{g.value}/R={R:.4f}", closed, estimate, ORACLE_TOL)
            )
    return cases


def two_piece_cases() -> list[dict]:
    cases = []
    grid = np.linspace(0.56, 0.94, 8)
    for g in (Symmetry.Sp, Symmetry.SOplus, Symmetry.SOminus):
        for R in grid:
            R = float(R)
            ctx = solver.build_context(g, R)
            general = solver.smallest_root(ctx)
            reduced = _two_piece_root(g, R)
            cases.append(
                _case(f"two-piece/{g.value}/R={R:.4f}", general, reduced, ROOT_TOL)
            )
        cases.append(
            _case(
                f"two-piece/{g.value}/vanishes-at-half",
                0.0,
                float(solver.spectral_equation_two_piece(g, 0.8, 0.5)),
                1e-12,
            )
        )
    return cases


def _two_piece_root(g: Symmetry, R: float, step: float = 1e-3) -> float:
    grid = np.arange(step, 8.0, step)
    vals = np.asarray(solver.spectral_equation_two_piece(g, R, grid))
    excluded = solver.u_product_roots(2)
    f = lambda x: float(solver.spectral_equation_two_piece(g, R, x))
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            root = float(grid[i])
        elif (vals[i] < 0) != (vals[i + 1] < 0):
            root = solver._bisect(f, float(grid[i]), float(grid[i + 1]), 1e-12)
        else:
            continue
        if all(abs(root - e) > 1e-6 for e in excluded):
            return root
    raise solver.RootScanError(f"no two-piece root for {g} at R={R}", grid, vals)


RESIDUAL_PAIRS = (
    (Symmetry.O, 0.35),
    (Symmetry.O, 0.9),
    (Symmetry.Sp, 0.3),
    (Symmetry.Sp, 0.75),
    (Symmetry.SOplus, 0.75),
    (Symmetry.SOminus, 1.2),
)


def residual_cases() -> list[dict]:
    cases = []
    for g, R in RESIDUAL_PAIRS:
        if g is Symmetry.O or R <= 0.5:
            h, _ = testfunction.reconstruct(g, R)
            ctx = None
        else:
            ctx = solver.build_context(g, R)
            lam = solver.smallest_root(ctx)
            h = testfunction.assemble(ctx, lam)
        report = testfunction.residuals(h, ctx)
        cases.append(
            _case(
                f"residuals/{g.value}/R={R:.4f}",
                0.0,
                report.max_defect(),
                RESIDUAL_TOL,
            )
        )
    return cases


def proportion_cases(draws: int = 50, seed: int = 20240901) -> list[dict]:
    rng = np.random.default_rng(seed)
    cases = []
    worst_full = 0.0
    for _ in range(draws):
        r = int(rng.integers(1, 7))
        beta = float(rng.uniform(0.2, 40.0))
        _, lower = prop.sym_power_proportion(r, beta)
        generic = prop.proportion_bound((-1) ** (r + 1), 1 / (2 * r * r), beta)
        worst_full = max(worst_full, abs(lower - generic) / max(1.0, abs(generic)))
    cases.append(_case("proportion/full-family-identity", 0.0, worst_full, IDENTITY_TOL))

    worst_signed = 0.0
    for _ in range(draws):
        r = int(rng.choice([1, 3, 5]))
        sigma = int(rng.choice([-1, 1]))
        beta = float(rng.uniform(0.2, 40.0))
        _, lower = prop.sym_power_proportion_signed(r, sigma, beta)
        generic = prop.proportion_bound(sigma, 1 / (4 * r * (r + 2)), beta)
        worst_signed = max(worst_signed, abs(lower - generic) / max(1.0, abs(generic)))
    cases.append(_case("proportion/signed-family-identity", 0.0, worst_signed, IDENTITY_TOL))

    worst_zero = 0.0
    for _ in range(20):
        sigma = int(rng.choice([-1, 1]))
        R = float(rng.uniform(0.05, 0.5))
        worst_zero = max(
            worst_zero, abs(prop.proportion_bound(sigma, R, prop.beta_threshold(sigma, R)))
        )
    cases.append(_case("proportion/zero-at-threshold", 0.0, worst_zero, THRESHOLD_ZERO_TOL))
    return cases


def run_all(grid_size: int = 12, trunc: int = 400) -> dict:
    """Run every suite; returns a JSON-ready deterministic summary."""
    cases = []
    cases += oracle_equivalence_cases(grid_size=grid_size, trunc=trunc)
    cases += two_piece_cases()
    cases += residual_cases()
    cases += proportion_cases()
    gaps = [
        abs(c["got"] - c["expected"]) for c in cases if c["name"].startswith("oracle/")
    ]
    return {
        "grid_size": grid_size,
        "trunc": trunc,
        "cases": cases,
        "max_oracle_gap": max(gaps),
        "passed": all(c["pass"] for c in cases),
    }
