"""Equalizing strategies.

A strategy of player I is equalizing when ``conj(z)^T A`` has the same
complex entry ``eta`` in every column: player II then receives ``Re(eta)``
whatever they play. Likewise ``A w = theta * 1`` for player II. Both are found
by solving one square or rectangular complex linear system per side.
"""
import math
from dataclasses import dataclass

import numpy as np

from .game import COLUMN, ROW, ComplexGame, EquilibriumCandidate, pure_security
from .numerics import DEFAULT_TOL, as_complex_matrix, solve_complex_linear


class EqualizingInconsistency(RuntimeError):
    """Both sides equalize but disagree on the value (a numerics bug)."""


class NonMonotoneFeasibility(ValueError):
    """Feasibility in the common argument is not monotone, so bisection is unsound."""


@dataclass(frozen=True)
class EqualizingSolution:
    """One side's equalizing system and what came out of it.

    ``strategy`` is the game strategy (for player I, the conjugate of the
    system unknowns); it is ``None`` when the system is inconsistent.
    ``feasible`` means the strategy also lies in the player's polytope.
    """

    side: str
    consistent: bool
    feasible: bool
    strategy: np.ndarray | None
    constant: complex | None
    residual: float
    rank: int


def equalizing_system(A, side):
    """The matrix ``B`` and right-hand side ``b`` of one side's system.

    ROW: unknowns ``(z_1..z_m, eta)``, rows ``sum_i a_ij z_i - eta = 0`` per
    column ``j`` and ``sum z = 1``. COLUMN: unknowns ``(w_1..w_n, theta)``, rows
    ``sum_j a_ij w_j - theta = 0`` per row ``i`` and ``sum w = 1``.
    """
    A = as_complex_matrix(A, "payoff matrix")
    if side == ROW:
        K = A.T
    elif side == COLUMN:
        K = A
    else:
        raise ValueError(f"side must be {ROW!r} or {COLUMN!r}, got {side!r}")
    r, k = K.shape
    B = np.zeros((r + 1, k + 1), dtype=np.complex128)
    B[:r, :k] = K
    B[:r, k] = -1.0
    B[r, :k] = 1.0
    b = np.zeros(r + 1, dtype=np.complex128)
    b[r] = 1.0
    return B, b


def solve_equalizing_system(g, side, tol=DEFAULT_TOL):
    B, b = equalizing_system(g.A, side)
    res = solve_complex_linear(B, b, tol)
    if not res.consistent:
        return EqualizingSolution(side, False, False, None, None, res.residual, res.rank)
    x = res.solution
    strategy = x[:-1].conj() if side == ROW else x[:-1].copy()
    poly = g.row_polytope if side == ROW else g.col_polytope
    feasible = poly.contains(strategy, tol)
    return EqualizingSolution(side, True, feasible, strategy, complex(x[-1]), res.residual, res.rank)


@dataclass(frozen=True)
class EqualizingEquilibrium:
    candidate: EquilibriumCandidate
    value: float
    row: EqualizingSolution
    col: EqualizingSolution


def equalizing_sides(g, tol=DEFAULT_TOL):
    return solve_equalizing_system(g, ROW, tol), solve_equalizing_system(g, COLUMN, tol)


def equalizing_equilibrium(g, tol=DEFAULT_TOL, sides=None):
    """Equilibrium made of two feasible equalizing strategies, or ``None``.

    ``sides`` may pass in already computed :func:`equalizing_sides`.
    """
    row, col = sides if sides is not None else equalizing_sides(g, tol)
    if not (row.feasible and col.feasible):
        return None
    v_row, v_col = row.constant.real, col.constant.real
    if abs(v_row - v_col) > tol.eps_val:
        raise EqualizingInconsistency(
            f"equalizing constants disagree: Re(eta)={v_row!r}, Re(theta)={v_col!r}"
        )
    return EqualizingEquilibrium(
        EquilibriumCandidate(row.strategy, col.strategy), v_row, row, col
    )


def _feasible_at(A, gamma, tol):
    g = ComplexGame(A, gamma, gamma)
    sec = pure_security(g)
    if not sec.h_low < sec.h_high - tol.eps_val:
        return False
    row, col = equalizing_sides(g, tol)
    return row.feasible and col.feasible


def smallest_equalizing_argument(A, delta, tol=DEFAULT_TOL, probes=16):
    """Smallest common argument at which both equalizing strategies are feasible
    while the game has no pure saddle point.

    Bisects on ``(0, pi/2)`` and returns the lower end of the final bracket,
    which is within ``delta`` of the threshold; an infimum at 0 is reported
    as 0. Returns ``None`` if the problem is infeasible at ``pi/2 - delta``.
    A grid of ``probes`` points is checked first and
    :class:`NonMonotoneFeasibility` is raised if feasibility is lost as the
    argument grows.
    """
    if not delta > 0:
        raise ValueError(f"resolution must be positive, got {delta!r}")
    A = as_complex_matrix(A, "payoff matrix")
    top = math.pi / 2 - delta
    if top <= 0 or not _feasible_at(A, top, tol):
        return None
    grid = [top * (k + 1) / (probes + 1) for k in range(probes)] + [top]
    seen = False
    for gamma in grid:
        ok = _feasible_at(A, gamma, tol)
        if seen and not ok:
            raise NonMonotoneFeasibility(
                f"feasible below {gamma!r} but not at it; bisection bracket is unreliable"
            )
        seen = seen or ok
    lo, hi = 0.0, top
    while hi - lo > delta:
        mid = 0.5 * (lo + hi)
        if _feasible_at(A, mid, tol):
            hi = mid
        else:
            lo = mid
    return lo
