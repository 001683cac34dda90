"""Acceptance gate: one test per shipping criterion.

Every test prints exactly one PASS/FAIL line (visible even under
capture) and then asserts, so a red criterion is still summarized in
the run log. Tolerances and runtime budgets are pinned here and must
not be loosened; a failing criterion means the library genuinely does
not meet it.
"""

import time

import numpy as np
import pytest

import fleetcontest as fc
from fleetcontest.boundary import _distinct_certified, enumerate_candidates
from helpers import random_feasible_point, random_spec

#: Reference two-region rows: alpha -> (x_a, u_a, x_b, u_b).
TABLE_ROWS = {
    1.0: ((222.6, 777.4), 35591.0, (453.0, 1547.0), 71178.4),
    5.0: ((484.1, 515.9), 20448.0, (1336.6, 663.4), 32165.6),
    25.0: ((943.6, 56.4), 3707.7, (1937.9, 62.1), 5646.1),
    41.0: ((1000.0, 0.0), 1290.3, (2000.0, 0.0), 2580.7),
}

ALLOC_TOL = 0.2
PROFIT_TOL = 1.0


def _gate(capsys, label, body, budget=None):
    """Run one criterion body, print its verdict line, then assert it."""
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:
        ok, detail = False, f"raised {exc!r}"
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        ok = False
        detail += f" [over {budget:g}s budget]"
    with capsys.disabled():
        print(f"{'PASS' if ok else 'FAIL'} {label}: {detail} ({elapsed:.2f}s)")
    assert ok, f"{label}: {detail}"


@pytest.fixture(scope="module")
def sampled_specs():
    """The 100 random two-region instances shared by criteria 5 and 6."""
    rng = np.random.default_rng(1743)
    return [random_spec(rng) for _ in range(100)]


def test_criterion_01_reference_table(capsys):
    def body():
        offenders = []
        worst_alloc = worst_profit = 0.0
        for alpha, (x_a, u_a, x_b, u_b) in TABLE_ROWS.items():
            result = fc.solve_two_region(fc.two_region_spec(alpha))
            got = {
                "x_a": result.strategy.alloc_a.values,
                "x_b": result.strategy.alloc_b.values,
            }
            for name, expected in (("x_a", x_a), ("x_b", x_b)):
                for j, cell in enumerate(expected):
                    gap = abs(got[name][j] - cell)
                    worst_alloc = max(worst_alloc, gap)
                    if gap > ALLOC_TOL:
                        offenders.append(f"alpha={alpha:g} {name}[{j}] off {gap:.2f}")
            for player, expected in (("a", u_a), ("b", u_b)):
                gap = abs(fc.utility(fc.two_region_spec(alpha), player, result.strategy) - expected)
                worst_profit = max(worst_profit, gap)
                if gap > PROFIT_TOL:
                    offenders.append(f"alpha={alpha:g} u_{player} off {gap:.1f}")
        detail = (
            f"worst allocation gap {worst_alloc:.2f} (cap {ALLOC_TOL}), "
            f"worst profit gap {worst_profit:.1f} (cap {PROFIT_TOL})"
        )
        if offenders:
            detail += "; " + "; ".join(offenders)
        return not offenders, detail

    _gate(capsys, "criterion 1 (reference table)", body, budget=1.0)


def test_criterion_02_interior_across_charging_scales(capsys):
    def body():
        worst = 0.0
        for alpha in np.linspace(1.0, 20.0, 100):
            spec = fc.four_region_spec(float(alpha))
            outcome = fc.interior_equilibrium(spec)
            if not outcome.is_interior:
                return False, f"alpha={alpha:g} left the interior"
            joint = outcome.strategy
            if not (np.all(joint.alloc_a.values > 0) and np.all(joint.alloc_b.values > 0)):
                return False, f"alpha={alpha:g} produced a zero component"
            scale = abs(fc.utility(spec, "a", joint)) + abs(fc.utility(spec, "b", joint)) + 1.0
            worst = max(worst, fc.ne_residual(spec, joint) / scale)
            if worst > 1e-6:
                return False, f"alpha={alpha:g} residual ratio {worst:.2e} > 1e-6"
        return True, f"100 interior solves, worst residual ratio {worst:.2e}"

    _gate(capsys, "criterion 2 (interior across charging scales)", body, budget=5.0)


def test_criterion_03_transition_detector(capsys):
    def body():
        value = fc.detect_alpha_crit(1.0, 50.0, 0.1)
        ok = value is not None and 40.2 <= value <= 41.2
        return ok, f"detected scale {value}, window [40.2, 41.2]"

    _gate(capsys, "criterion 3 (transition detector)", body, budget=10.0)


def test_criterion_04_rival_fleet_optimum(capsys):
    def body():
        value = fc.detect_optimal_fleet(200.0, 4000.0, 1.0)
        ok = 1733.0 <= value <= 1753.0
        return ok, f"optimal rival fleet {value:.3f}, window [1733, 1753]"

    _gate(capsys, "criterion 4 (rival fleet optimum)", body, budget=30.0)


def test_criterion_05_grid_oracle_agreement(capsys, sampled_specs):
    def body():
        worst_ratio = 0.0
        for spec in sampled_specs:
            step = max(spec.fleet_a, spec.fleet_b) / 2000.0
            oracle = fc.grid_equilibrium(spec, step=step)
            exact = fc.solve_two_region(spec)
            for player in ("a", "b"):
                cells = max(1, round(spec.fleet_of(player) / step))
                effective = spec.fleet_of(player) / cells
                gap = np.abs(
                    oracle.strategy.of(player).values - exact.strategy.of(player).values
                )
                worst_ratio = max(worst_ratio, float(gap.max()) / effective)
                if gap.max() > 2.0 * effective:
                    return False, (
                        f"gap {gap.max():.4f} exceeds 2 grid steps "
                        f"({2 * effective:.4f}) for player {player}"
                    )
        return True, f"100 specs agree; worst gap {worst_ratio:.3f} grid steps (cap 2)"

    _gate(capsys, "criterion 5 (grid oracle agreement)", body, budget=120.0)


def test_criterion_06_single_equilibrium_description(capsys, sampled_specs):
    def body():
        interior = boundary = 0
        for spec in sampled_specs:
            outcome = fc.interior_equilibrium(spec)
            distinct = _distinct_certified(spec, enumerate_candidates(spec))
            descriptions = int(outcome.is_interior) + len(distinct)
            if descriptions != 1:
                kinds = ["interior"] * int(outcome.is_interior)
                kinds += [c.family for c in distinct]
                return False, f"{descriptions} descriptions certified: {kinds}"
            if outcome.is_interior:
                interior += 1
            else:
                boundary += 1
        return True, f"one description each: {interior} interior, {boundary} boundary"

    _gate(capsys, "criterion 6 (single equilibrium description)", body)


def test_criterion_07_concavity_certificate(capsys):
    def body():
        rng = np.random.default_rng(407)
        closest = -np.inf
        for _ in range(1000):
            spec = random_spec(rng, m=int(rng.integers(1, 5)))
            joint = random_feasible_point(rng, spec)
            cert = fc.concavity_certificate(spec, joint)
            closest = max(closest, cert.max_eigenvalue)
            if not cert.negative_definite:
                return False, f"max eigenvalue {cert.max_eigenvalue:.3e} not negative"
            dense = np.linalg.eigvalsh(cert.matrix).max()
            if abs(dense - cert.max_eigenvalue) > 1e-10 * max(1.0, abs(dense)):
                return False, "closed-form spectrum disagrees with dense eigensolve"
        return True, f"1000 points negative definite, max eigenvalue {closest:.3e}"

    _gate(capsys, "criterion 7 (concavity certificate)", body)


def test_criterion_08_derivative_checks(capsys):
    def body():
        rng = np.random.default_rng(101)
        worst = 0.0
        for _ in range(50):
            spec = random_spec(rng, m=int(rng.integers(1, 5)))
            joint = random_feasible_point(rng, spec)
            own = joint.alloc_a.values.copy()
            rival = joint.alloc_b.values
            grad = fc.utility_gradient(spec, "a", joint)
            for j in range(spec.m):
                h = 1e-5 * (1.0 + abs(own[j]))
                up, dn = own.copy(), own.copy()
                up[j] += h
                dn[j] = max(dn[j] - h, 0.0)
                fd = (fc.raw_utility(spec, up, rival) - fc.raw_utility(spec, dn, rival))
                fd /= up[j] - dn[j]
                err = abs(fd - grad[j]) / (1.0 + abs(grad[j]))
                worst = max(worst, err)
                if err > 1e-6:
                    return False, f"utility gradient off by {err:.2e} relative"
        for _ in range(50):
            spec = random_spec(rng, m=int(rng.integers(1, 5)))
            offsets = 2.0 * spec.beta_c
            t = float(offsets.min() - np.exp(rng.uniform(-2.0, 8.0)))
            ana = fc.mass_balance_derivative(spec, offsets, t)
            # Richardson-extrapolated central differences; the plain stencil
            # loses accuracy when t sits close to the pole at the offset.
            h = min(1e-4 * (1.0 + abs(t)), 1e-2 * (float(offsets.min()) - t))
            coarse = (fc.mass_balance(spec, offsets, t + h) - fc.mass_balance(spec, offsets, t - h))
            coarse /= 2.0 * h
            fine = (fc.mass_balance(spec, offsets, t + h / 2) - fc.mass_balance(spec, offsets, t - h / 2))
            fine /= h
            fd = (4.0 * fine - coarse) / 3.0
            err = abs(fd - ana) / (1.0 + abs(ana))
            worst = max(worst, err)
            if err > 1e-6:
                return False, f"mass balance derivative off by {err:.2e} relative"
        return True, f"50 + 50 points, worst relative error {worst:.2e}"

    _gate(capsys, "criterion 8 (derivative checks)", body)


def test_criterion_09_share_conservation(capsys):
    def body():
        rng = np.random.default_rng(103)
        worst = 0.0
        for _ in range(1000):
            region = fc.RegionParams(
                beta_m=float(rng.uniform(1e3, 2e5)),
                beta_c=float(rng.uniform(0.0, 500.0)),
                epsilon=float(rng.uniform(10.0, 500.0)),
            )
            x_a = float(rng.uniform(0.0, 5000.0))
            x_b = float(rng.uniform(0.0, 5000.0))
            total = (
                fc.market_share(region, x_a, x_b)
                + fc.market_share(region, x_b, x_a)
                + fc.profit_loss(region, x_a, x_b)
            )
            err = abs(total - region.beta_m) / region.beta_m
            worst = max(worst, err)
            if err > 1e-12:
                return False, f"conservation off by {err:.2e} relative"
        return True, f"1000 points conserve potential profit, worst {worst:.2e}"

    _gate(capsys, "criterion 9 (share conservation)", body)


def test_criterion_10_iteration_matches_closed_form(capsys):
    def body():
        spec = fc.four_region_spec(1.0)
        closed = fc.interior_equilibrium(spec)
        iterated = fc.iterated_best_response(spec)
        if not iterated.converged:
            return False, "best-response iteration did not converge"
        worst = 0.0
        for player in ("a", "b"):
            gap = np.abs(
                iterated.strategy.of(player).values - closed.strategy.of(player).values
            )
            worst = max(worst, float(gap.max()))
        return worst <= 1e-4, f"largest component gap {worst:.2e} (cap 1e-4)"

    _gate(capsys, "criterion 10 (iteration matches closed form)", body)
