"""Two-region solver covering boundary equilibria.

When the interior candidate fails, a two-region equilibrium must sit in
one of four families, each pinning one player entirely into one region
while the other player splits z vehicles into region 1:

    A1: a = (0, X_a),     b = (z, X_b - z)
    A2: a = (X_a, 0),     b = (z, X_b - z)
    B1: a = (z, X_a - z), b = (0, X_b)
    B2: a = (z, X_a - z), b = (X_b, 0)

The free player's payoff slope along its segment is strictly decreasing,
so its best reply z* follows from the slope's endpoint signs or a scalar
root. A family is an equilibrium exactly when the pinned player's
multiplier on its empty region comes out nonnegative; that check is the
certification below. B families reduce to A families with the fleet
sizes swapped.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InconsistencyError, NumericalError, ShapeError, ValidationError
from .game import GameSpec, JointStrategy, joint_from_arrays
from .interior import interior_equilibrium
from .result import EquilibriumResult
from .verify import duals_from_gradients, ne_residual

FAMILIES = ("A1", "A2", "B1", "B2")

#: Certification accepts nu down to -CERT_RTOL * (1 + term scale).
CERT_RTOL = 1e-9

#: Strategies closer than this (relative to 1 + total fleet) are one candidate.
DEDUPE_RTOL = 1e-7


class _Params(NamedTuple):
    """Raw two-region parameters from the pinned player's viewpoint."""

    bm1: float
    bm2: float
    bc1: float
    bc2: float
    e1: float
    e2: float
    xa: float
    xb: float


def _params(spec: GameSpec) -> _Params:
    if spec.m != 2:
        raise ShapeError(f"boundary analysis needs exactly two regions, spec has {spec.m}")
    r1, r2 = spec.regions
    return _Params(
        bm1=r1.beta_m, bm2=r2.beta_m,
        bc1=r1.beta_c, bc2=r2.beta_c,
        e1=r1.epsilon, e2=r2.epsilon,
        xa=spec.fleet_a, xb=spec.fleet_b,
    )


def _v_bounds(p: _Params) -> tuple[float, float]:
    """Free player's slope at z = 0 and z = xb when a is empty in region 1."""
    upper = p.bc2 - p.bc1 + p.bm1 / p.e1 - p.bm2 * (p.xa + p.e2) / (p.xa + p.xb + p.e2) ** 2
    lower = p.bc2 - p.bc1 + p.bm1 * p.e1 / (p.xb + p.e1) ** 2 - p.bm2 / (p.xa + p.e2)
    return upper, lower


def _w_bounds(p: _Params) -> tuple[float, float]:
    """Free player's slope at z = 0 and z = xb when a is empty in region 2."""
    upper = p.bc2 - p.bc1 + p.bm1 / (p.xa + p.e1) - p.bm2 * p.e2 / (p.xb + p.e2) ** 2
    lower = p.bc2 - p.bc1 + p.bm1 * (p.xa + p.e1) / (p.xa + p.xb + p.e1) ** 2 - p.bm2 / p.e2
    return upper, lower


def _slope_region1_empty(p: _Params, z: float) -> float:
    return (
        p.bm1 * p.e1 / (z + p.e1) ** 2
        - p.bm2 * (p.xa + p.e2) / (p.xa + p.xb - z + p.e2) ** 2
        + p.bc2
        - p.bc1
    )


def _slope_region2_empty(p: _Params, z: float) -> float:
    return (
        p.bm1 * (p.xa + p.e1) / (p.xa + z + p.e1) ** 2
        - p.bm2 * p.e2 / (p.xb - z + p.e2) ** 2
        + p.bc2
        - p.bc1
    )


def _pinned_root(slope, p: _Params) -> float:
    """Root of a strictly decreasing slope over (0, xb), by bisection."""
    lo, hi = 0.0, p.xb
    width_tol = 1e-15 * max(1.0, p.xb)
    for _ in range(200):
        if hi - lo <= width_tol:
            break
        mid = 0.5 * (lo + hi)
        if slope(p, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    residual = slope(p, z)
    if abs(residual) > 1e-10 * (p.bm1 + p.bm2):
        raise NumericalError(f"pinned best-response root residual {residual!r} too large")
    return z


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValidationError(f"family must be one of {FAMILIES}, got {family!r}")


def _family_view(spec: GameSpec, family: str) -> _Params:
    """Parameters from the pinned player's viewpoint (B swaps the fleets)."""
    _check_family(family)
    return _params(spec if family.startswith("A") else spec.swapped())


def slope_bounds_region1_empty(spec: GameSpec) -> tuple[float, float]:
    """Slope of b's payoff along family A1 at z = 0 and z = fleet_b.

    The pair brackets the best reply: lower bound >= 0 sends all of b to
    region 1, upper bound <= 0 keeps b out of it, and a sign change puts
    a unique root strictly inside. The first value always exceeds the
    second.
    """
    return _v_bounds(_params(spec))


def slope_bounds_region2_empty(spec: GameSpec) -> tuple[float, float]:
    """Slope of b's payoff along family A2 at z = 0 and z = fleet_b."""
    return _w_bounds(_params(spec))


def pinned_best_response(spec: GameSpec, family: str) -> float:
    """Best region-1 mass z* of the free player within one family."""
    p = _family_view(spec, family)
    if family.endswith("1"):
        upper, lower = _v_bounds(p)
        slope = _slope_region1_empty
    else:
        upper, lower = _w_bounds(p)
        slope = _slope_region2_empty
    if lower >= 0.0:
        return p.xb
    if upper <= 0.0:
        return 0.0
    return _pinned_root(slope, p)


def family_strategy(spec: GameSpec, family: str, z: float) -> JointStrategy:
    """Joint strategy of a family at free-player mass z."""
    _check_family(family)
    z = float(z)
    free_fleet = spec.fleet_b if family.startswith("A") else spec.fleet_a
    if not 0.0 <= z <= free_fleet:
        raise ValidationError(f"z={z!r} is outside [0, {free_fleet}]")
    if family == "A1":
        return joint_from_arrays([0.0, spec.fleet_a], [z, spec.fleet_b - z])
    if family == "A2":
        return joint_from_arrays([spec.fleet_a, 0.0], [z, spec.fleet_b - z])
    if family == "B1":
        return joint_from_arrays([z, spec.fleet_a - z], [0.0, spec.fleet_b])
    return joint_from_arrays([z, spec.fleet_a - z], [spec.fleet_b, 0.0])


@dataclass(frozen=True)
class BoundaryCandidate:
    """One family's best reply and its certification verdict.

    slope_upper and slope_lower are the family's endpoint slopes from the
    pinned player's viewpoint; nu_check is the pinned player's multiplier
    on its empty region, nonnegative exactly when the candidate is an
    equilibrium.
    """

    family: str
    z_star: float
    slope_upper: float
    slope_lower: float
    nu_check: float
    certified: bool
    strategy: JointStrategy


def certify(spec: GameSpec, family: str, z_star: float) -> BoundaryCandidate:
    """Certify a family at free-player mass z_star.

    Evaluates the pinned player's multiplier on its empty region. The
    all-in endpoints that can never be equilibria (z = xb in the
    region-1-empty families, z = 0 in the region-2-empty families) are
    rejected outright; their nu_check is still reported.
    """
    p = _family_view(spec, family)
    z = float(z_star)
    if not 0.0 <= z <= p.xb:
        raise ValidationError(f"z_star={z!r} is outside [0, {p.xb}]")

    if family.endswith("1"):
        upper, lower = _v_bounds(p)
        if 0.0 < z < p.xb:
            t2 = (p.xa + p.xb - z + p.e2) ** 2
            term_gain = (p.xb - z - p.xa) * p.bm2 / t2
            term_loss = p.bm1 * z / (z + p.e1) ** 2
            nu = term_gain - term_loss
            certifiable = True
        elif z == 0.0:
            term_gain = (p.xb - p.xa) * p.bm2 / (p.xa + p.xb + p.e2) ** 2
            term_loss = upper
            nu = term_gain - term_loss
            certifiable = True
        else:
            term_gain = -p.bm1 * p.xb / (p.xb + p.e1) ** 2
            term_loss = lower + p.bm2 * p.xa / (p.xa + p.e2) ** 2
            nu = term_gain - term_loss
            certifiable = False
    else:
        upper, lower = _w_bounds(p)
        if 0.0 < z < p.xb:
            term_gain = (z - p.xa) * p.bm1 / (p.xa + z + p.e1) ** 2
            term_loss = (p.xb - z) * p.bm2 / (p.xb - z + p.e2) ** 2
            nu = term_gain - term_loss
            certifiable = True
        elif z == p.xb:
            term_gain = (p.xb - p.xa) * p.bm1 / (p.xa + p.xb + p.e1) ** 2
            term_loss = -lower
            nu = term_gain - term_loss
            certifiable = True
        else:
            term_gain = upper
            term_loss = p.bm1 * p.xa / (p.xa + p.e1) ** 2 + p.bm2 * p.xb / (p.xb + p.e2) ** 2
            nu = term_gain - term_loss
            certifiable = False

    tol = CERT_RTOL * (1.0 + abs(term_gain) + abs(term_loss))
    certified = bool(certifiable and nu >= -tol)
    return BoundaryCandidate(
        family=family,
        z_star=z,
        slope_upper=upper,
        slope_lower=lower,
        nu_check=float(nu),
        certified=certified,
        strategy=family_strategy(spec, family, z),
    )


def boundary_candidate(spec: GameSpec, family: str) -> BoundaryCandidate:
    """Best reply and certification of one family."""
    return certify(spec, family, pinned_best_response(spec, family))


def enumerate_candidates(spec: GameSpec) -> tuple[BoundaryCandidate, ...]:
    """All four family candidates, in the order A1, A2, B1, B2."""
    return tuple(boundary_candidate(spec, family) for family in FAMILIES)


def _joint_as_vector(strategy: JointStrategy) -> np.ndarray:
    return np.concatenate([strategy.alloc_a.values, strategy.alloc_b.values])


def _distinct_certified(spec: GameSpec, candidates) -> list[BoundaryCandidate]:
    """Certified candidates with coinciding strategies collapsed to the first."""
    tol = DEDUPE_RTOL * (1.0 + spec.fleet_a + spec.fleet_b)
    distinct: list[BoundaryCandidate] = []
    for cand in candidates:
        if not cand.certified:
            continue
        vec = _joint_as_vector(cand.strategy)
        if all(
            np.abs(vec - _joint_as_vector(kept.strategy)).max() > tol for kept in distinct
        ):
            distinct.append(cand)
    return distinct


def _boundary_result(spec: GameSpec, cand: BoundaryCandidate) -> EquilibriumResult:
    return EquilibriumResult(
        strategy=cand.strategy,
        duals=duals_from_gradients(spec, cand.strategy),
        location=cand.family,
        ne_residual=ne_residual(spec, cand.strategy),
        trace=None,
    )


def solve_two_region(spec: GameSpec) -> EquilibriumResult:
    """The unique equilibrium of a two-region game.

    Tries the interior candidate first. Otherwise enumerates the four
    boundary families and returns the single certified strategy; corner
    points certified by two coinciding families count once. A strictly
    non-interior candidate with zero or several distinct certified
    strategies raises InconsistencyError. A boundary-suspect interior
    candidate (components positive but below threshold) competes with
    the certified candidates on the lower equilibrium residual.
    """
    if spec.m != 2:
        raise ShapeError(f"solve_two_region needs exactly two regions, spec has {spec.m}")
    outcome = interior_equilibrium(spec)
    if outcome.is_interior:
        return EquilibriumResult(
            strategy=outcome.strategy,
            duals=outcome.duals,
            location="interior",
            ne_residual=ne_residual(spec, outcome.strategy),
            trace=outcome.trace,
            iterations=outcome.trace.iterations,
        )

    distinct = _distinct_certified(spec, enumerate_candidates(spec))

    if outcome.not_interior.strictly_outside:
        if len(distinct) != 1:
            raise InconsistencyError(
                f"interior candidate is outside the simplex but {len(distinct)} distinct "
                "certified boundary candidates exist (expected exactly 1)"
            )
        return _boundary_result(spec, distinct[0])

    # Boundary-suspect interior point: keep whichever candidate verifies best.
    interior_result = EquilibriumResult(
        strategy=outcome.strategy,
        duals=outcome.duals,
        location="interior",
        ne_residual=ne_residual(spec, outcome.strategy),
        trace=outcome.trace,
        iterations=outcome.trace.iterations,
    )
    best = interior_result
    for cand in distinct:
        result = _boundary_result(spec, cand)
        if result.ne_residual < best.ne_residual:
            best = result
    return best
