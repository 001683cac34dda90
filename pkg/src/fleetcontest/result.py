"""Shared result type for the equilibrium solvers."""

from dataclasses import dataclass

from .game import DualCertificate, JointStrategy
from .interior import InteriorSolveTrace

#: Location tags: the interior, one of the four two-region boundary
#: families, or a generic boundary point found by iteration.
LOCATIONS = ("interior", "A1", "A2", "B1", "B2", "boundary")


@dataclass(frozen=True)
class EquilibriumResult:
    """A solved equilibrium with its multipliers and quality measure.

    ne_residual is the largest unilateral payoff improvement either
    player could still gain; trace is present for interior solves;
    converged is False only when an iterative fallback hit its cap.
    """

    strategy: JointStrategy
    duals: DualCertificate
    location: str
    ne_residual: float
    trace: InteriorSolveTrace | None = None
    converged: bool = True
    iterations: int = 0

    def __post_init__(self):
        if self.location not in LOCATIONS:
            raise ValueError(f"unknown location tag {self.location!r}")
