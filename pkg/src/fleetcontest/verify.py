"""Independent checks for candidate equilibria.

Everything here is built from primitives (utilities, gradients, scalar
bisection, grid scans) rather than from the closed-form solvers, so the
two routes can cross-check each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import two_region_scan
from .errors import (
    GridSizeError,
    InconsistencyError,
    ShapeError,
    ValidationError,
)
from .game import (
    Allocation,
    DualCertificate,
    GameSpec,
    JointStrategy,
    is_feasible,
    joint_from_arrays,
    opponent,
    raw_utility,
    raw_utility_gradient,
)
from .result import EquilibriumResult

#: Relative (to the player's fleet) tolerance of the best-response fleet sum
#: before the exact rescale.
BR_SUM_RTOL = 1e-9

#: Per-player cell cap and joint point cap for the grid oracle.
GRID_MAX_CELLS = 100_000
GRID_MAX_POINTS = 250_000_000

#: Components above this fraction of the fleet count as occupied.
SUPPORT_RTOL = 1e-9


def _require_feasible(spec: GameSpec, joint: JointStrategy) -> None:
    for alloc in (joint.alloc_a, joint.alloc_b):
        if not is_feasible(spec, alloc):
            raise ValidationError(f"allocation of player {alloc.owner!r} is infeasible")


def _water_fill(spec: GameSpec, y: np.ndarray, target: float) -> np.ndarray:
    """Maximize the contest payoff over x >= 0 with components summing to target.

    y holds the rival-plus-epsilon masses. Each positive component obeys
    sqrt(beta_m * y / (beta_c + mu)) - y = x for a common water level mu
    found by bisection, then the positive part is rescaled so the sum is
    exact.
    """
    bm, bc = spec.beta_m, spec.beta_c

    def filled(mu: float) -> np.ndarray:
        return np.maximum(0.0, np.sqrt(bm * y / (bc + mu)) - y)

    delta = 1e-12 * (1.0 + float(bc.min()))
    lo = -float(bc.min()) + delta
    for _ in range(8):
        if filled(lo).sum() > target:
            break
        delta /= 1000.0
        lo = -float(bc.min()) + delta
    hi = float((bm / y - bc).max())
    # filled(hi) is identically zero, so the root lies in (lo, hi].
    width_tol = 1e-15 * max(1.0, abs(lo), abs(hi))
    for _ in range(200):
        if hi - lo <= width_tol:
            break
        mid = 0.5 * (lo + hi)
        if filled(mid).sum() > target:
            lo = mid
        else:
            hi = mid
    x = filled(0.5 * (lo + hi))
    total = float(x.sum())
    if abs(total - target) > BR_SUM_RTOL * target or total <= 0.0:
        raise ValidationError("best-response bisection missed its fleet-sum tolerance")
    return x * (target / total)


def best_response(spec: GameSpec, player: str, rival: Allocation) -> Allocation:
    """Optimal feasible reply to a fixed rival allocation."""
    if rival.owner != opponent(player):
        raise ValidationError(
            f"rival allocation owner {rival.owner!r} does not oppose player {player!r}"
        )
    if not is_feasible(spec, rival):
        raise ValidationError("rival allocation is infeasible")
    return Allocation(_water_fill(spec, rival.values + spec.eps, spec.fleet_of(player)), player)


def ne_residual(spec: GameSpec, joint: JointStrategy) -> float:
    """Largest unilateral payoff improvement available to either player.

    Each reply redistributes the mass the player actually deployed (its
    component sum) rather than the nominal fleet, so a sum sitting at the
    edge of the feasibility tolerance is not charged the water level
    times the sum slack.
    """
    _require_feasible(spec, joint)
    worst = -math.inf
    for player in ("a", "b"):
        own = joint.of(player).values
        rival = joint.of(opponent(player))
        current = raw_utility(spec, own, rival.values)
        reply = _water_fill(spec, rival.values + spec.eps, float(own.sum()))
        worst = max(worst, raw_utility(spec, reply, rival.values) - current)
    return worst


def kkt_residual(spec: GameSpec, joint: JointStrategy, duals: DualCertificate) -> float:
    """Largest absolute violation of the stationarity and complementarity system.

    Stationarity reads gradient + lambda + nu = 0 per player and region;
    the returned value also covers primal feasibility, nu >= 0, and the
    complementary slackness products.
    """
    _require_feasible(spec, joint)
    if duals.nu_a.size != spec.m or duals.nu_b.size != spec.m:
        raise ValidationError("dual certificate region count does not match the spec")
    worst = 0.0
    for player in ("a", "b"):
        own = joint.of(player).values
        rival = joint.of(opponent(player)).values
        grad = raw_utility_gradient(spec, own, rival)
        nu = duals.nu_of(player)
        stationarity = grad + duals.lambda_of(player) + nu
        worst = max(worst, float(np.abs(stationarity).max()))
        worst = max(worst, abs(float(own.sum()) - spec.fleet_of(player)))
        worst = max(worst, max(0.0, -float(own.min())))
        worst = max(worst, max(0.0, -float(nu.min())))
        worst = max(worst, float(np.abs(nu * own).max()))
    return worst


@dataclass(frozen=True)
class ConcavityCertificate:
    """Certificate that the joint payoff map is diagonally strictly concave.

    matrix is the symmetrized Jacobian of the stacked payoff gradients at
    the probed point; schur is its Schur complement in the a-block,
    computed by block algebra and cross-checked against the closed form.
    """

    block_aa: np.ndarray
    block_bb: np.ndarray
    block_cross: np.ndarray
    matrix: np.ndarray
    schur: np.ndarray
    max_eigenvalue: float
    negative_definite: bool


#: Relative agreement required between the two Schur complement routes.
SCHUR_RTOL = 1e-10


def concavity_certificate(spec: GameSpec, joint: JointStrategy) -> ConcavityCertificate:
    """Evaluate the concavity certificate at one nonnegative joint point."""
    for alloc in (joint.alloc_a, joint.alloc_b):
        if alloc.values.size != spec.m:
            raise ValidationError("allocation length does not match region count")
        if np.any(alloc.values < 0):
            raise ValidationError("allocations must be componentwise >= 0")
    x_a = joint.alloc_a.values
    x_b = joint.alloc_b.values
    totals = x_a + x_b + spec.eps
    cubes = totals**3
    aa = -2.0 * spec.beta_m * (x_b + spec.eps) / cubes
    bb = -2.0 * spec.beta_m * (x_a + spec.eps) / cubes
    cross = -2.0 * spec.beta_m * spec.eps / cubes

    block_aa = np.diag(aa)
    block_bb = np.diag(bb)
    block_cross = np.diag(cross)
    matrix = np.block([[2.0 * block_aa, block_cross], [block_cross, 2.0 * block_bb]])

    schur = 2.0 * block_bb - 0.5 * block_cross @ np.linalg.inv(block_aa) @ block_cross
    closed = -spec.beta_m * (4.0 * x_a + spec.eps * (4.0 - spec.eps / (spec.eps + x_b))) / cubes
    gap = np.abs(np.diag(schur) - closed)
    allowed = SCHUR_RTOL * np.maximum(1.0, np.abs(closed))
    if np.any(gap > allowed):
        raise InconsistencyError("Schur complement routes disagree beyond tolerance")

    # The symmetrized Jacobian is permutation-similar to m independent
    # 2x2 blocks pairing rows j and m + j, so its spectrum is exact.
    p = 2.0 * aa
    q = 2.0 * bb
    eig_max = (p + q) / 2.0 + np.sqrt(((p - q) / 2.0) ** 2 + cross * cross)
    max_eigenvalue = float(eig_max.max())

    return ConcavityCertificate(
        block_aa=block_aa,
        block_bb=block_bb,
        block_cross=block_cross,
        matrix=matrix,
        schur=schur,
        max_eigenvalue=max_eigenvalue,
        negative_definite=bool(max_eigenvalue < 0.0),
    )


@dataclass(frozen=True)
class GridOracleResult:
    """Grid equilibrium with its resolution and discrete regret."""

    strategy: JointStrategy
    step: float
    eps_ne: float


def grid_equilibrium(spec: GameSpec, step: float) -> GridOracleResult:
    """Solver-free equilibrium oracle on a joint allocation grid.

    Two regions only. Each player's fleet is split into round(fleet/step)
    cells; the returned point minimizes the larger unilateral grid regret
    over the joint grid, ties resolving to the first point in row-major
    order of (a's index, b's index).
    """
    if spec.m != 2:
        raise ShapeError("grid oracle needs exactly two regions")
    step = float(step)
    if not math.isfinite(step) or step <= 0.0:
        raise ValidationError(f"step must be > 0, got {step!r}")
    n_a = max(1, round(spec.fleet_a / step))
    n_b = max(1, round(spec.fleet_b / step))
    if n_a > GRID_MAX_CELLS or n_b > GRID_MAX_CELLS:
        raise GridSizeError(
            f"grid of {n_a} x {n_b} cells exceeds the per-player cap {GRID_MAX_CELLS}"
        )
    if (n_a + 1) * (n_b + 1) > GRID_MAX_POINTS:
        raise GridSizeError(
            f"joint grid of {(n_a + 1) * (n_b + 1)} points exceeds the cap {GRID_MAX_POINTS}"
        )
    bm, bc, eps = spec.beta_m, spec.beta_c, spec.eps
    ia, ib, eps_ne = two_region_scan(
        bm[0], bm[1], bc[0], bc[1], eps[0], eps[1],
        spec.fleet_a, spec.fleet_b, n_a, n_b,
    )
    za = ia * (spec.fleet_a / n_a)
    zb = ib * (spec.fleet_b / n_b)
    strategy = joint_from_arrays(
        [za, spec.fleet_a - za], [zb, spec.fleet_b - zb]
    )
    return GridOracleResult(strategy=strategy, step=step, eps_ne=float(eps_ne))


def duals_from_gradients(spec: GameSpec, joint: JointStrategy) -> DualCertificate:
    """Multipliers read off the payoff gradients at a feasible point.

    lambda is minus the largest gradient component, nu the componentwise
    slack, which makes nu >= 0 by construction. A multiplier may only be
    positive where the allocation is zero, so slack on components above
    the support threshold is dropped; at a non-equilibrium point the
    dropped slack resurfaces as a stationarity violation, which is where
    it belongs.
    """
    _require_feasible(spec, joint)
    lams = {}
    nus = {}
    for player in ("a", "b"):
        own = joint.of(player).values
        grad = raw_utility_gradient(spec, own, joint.of(opponent(player)).values)
        lams[player] = -float(grad.max())
        nu = -lams[player] - grad
        nu[own > SUPPORT_RTOL * spec.fleet_of(player)] = 0.0
        nus[player] = nu
    return DualCertificate(lams["a"], lams["b"], nus["a"], nus["b"])


def iterated_best_response(
    spec: GameSpec,
    damping: float = 0.5,
    max_iters: int = 2000,
    tol: float | None = None,
) -> EquilibriumResult:
    """Damped alternating best responses from the uniform split.

    Stops when the largest componentwise movement in one round falls
    below tol (default 1e-9 times the larger fleet). Hitting max_iters
    flags converged=False on the result instead of raising.
    """
    if not 0.0 < damping <= 1.0:
        raise ValidationError(f"damping must be in (0, 1], got {damping!r}")
    if max_iters < 1:
        raise ValidationError("max_iters must be >= 1")
    if tol is None:
        tol = 1e-9 * max(spec.fleet_a, spec.fleet_b)

    m = spec.m
    x_a = np.full(m, spec.fleet_a / m)
    x_b = np.full(m, spec.fleet_b / m)
    converged = False
    iterations = 0
    for _ in range(max_iters):
        iterations += 1
        reply_a = best_response(spec, "a", Allocation(x_b, "b")).values
        new_a = (1.0 - damping) * x_a + damping * reply_a
        movement = float(np.abs(new_a - x_a).max())
        x_a = new_a
        reply_b = best_response(spec, "b", Allocation(x_a, "a")).values
        new_b = (1.0 - damping) * x_b + damping * reply_b
        movement = max(movement, float(np.abs(new_b - x_b).max()))
        x_b = new_b
        if movement < tol:
            converged = True
            break

    x_a *= spec.fleet_a / x_a.sum()
    x_b *= spec.fleet_b / x_b.sum()
    strategy = joint_from_arrays(x_a, x_b)
    interior = np.all(x_a > 1e-9 * spec.fleet_a) and np.all(x_b > 1e-9 * spec.fleet_b)
    return EquilibriumResult(
        strategy=strategy,
        duals=duals_from_gradients(spec, strategy),
        location="interior" if interior else "boundary",
        ne_residual=ne_residual(spec, strategy),
        trace=None,
        converged=converged,
        iterations=iterations,
    )
