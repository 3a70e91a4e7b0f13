"""Two-player zero-sum complex matrix games.

Player I picks ``z`` from the polytope of argument ``a0`` (dimension m),
player II picks ``w`` from the polytope of argument ``b0`` (dimension n), and
player I receives ``Re(conj(z)^T A w)``.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .numerics import DEFAULT_TOL, as_complex_matrix, as_complex_vector, check_argument
from .polytope import StrategyPolytope

ROW = "row"
COLUMN = "column"


@dataclass(frozen=True, eq=False)
class ComplexGame:
    A: np.ndarray
    a0: float
    b0: float

    def __post_init__(self):
        A = as_complex_matrix(self.A, "payoff matrix").copy()
        A.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "a0", check_argument(self.a0))
        object.__setattr__(self, "b0", check_argument(self.b0))

    @property
    def shape(self):
        return self.A.shape

    @cached_property
    def row_polytope(self):
        return StrategyPolytope(self.A.shape[0], self.a0)

    @cached_property
    def col_polytope(self):
        return StrategyPolytope(self.A.shape[1], self.b0)

    @cached_property
    def payoff_table(self):
        """``m^2 x n^2`` real payoffs over all pairs of extreme points."""
        T = kernels.payoff_table(
            self.A, self.row_polytope.vertex_matrix, self.col_polytope.vertex_matrix
        )
        T.setflags(write=False)
        return T

    def submatrix(self, rows, cols):
        return ComplexGame(self.A[np.ix_(rows, cols)], self.a0, self.b0)

    def __repr__(self):
        m, n = self.A.shape
        return f"ComplexGame({m}x{n}, a0={self.a0:.6g}, b0={self.b0:.6g})"


def payoff(g, z, w):
    z = as_complex_vector(z, "z")
    w = as_complex_vector(w, "w")
    m, n = g.shape
    if z.shape[0] != m or w.shape[0] != n:
        raise ValueError(f"dimension mismatch: game is {m}x{n}, got z[{z.shape[0]}], w[{w.shape[0]}]")
    return float(np.real(z.conj() @ g.A @ w))


@dataclass(frozen=True)
class PureSecurityReport:
    h_low: float
    h_high: float
    maximin_index: object
    minimax_index: object


def pure_security(g):
    T = g.payoff_table
    row_min = T.min(axis=1)
    col_max = T.max(axis=0)
    # argmax/argmin return the first hit, i.e. the lowest canonical index
    i0 = int(np.argmax(row_min))
    j0 = int(np.argmin(col_max))
    return PureSecurityReport(
        float(row_min[i0]),
        float(col_max[j0]),
        g.row_polytope.indices[i0],
        g.col_polytope.indices[j0],
    )


def pure_equilibria(g, tol=DEFAULT_TOL):
    """All extreme-point pairs that are saddle points of the payoff table."""
    T = g.payoff_table
    eps = tol.eps_val
    row_min = T.min(axis=1)
    col_max = T.max(axis=0)
    ri, rj = g.row_polytope.indices, g.col_polytope.indices
    out = []
    for i in range(T.shape[0]):
        for j in range(T.shape[1]):
            v = T[i, j]
            if v <= row_min[i] + eps and v >= col_max[j] - eps:
                out.append((ri[i], rj[j]))
    return out


def best_response_envelope(g, side, s, tol=DEFAULT_TOL):
    """Guaranteed payoff of a mixed strategy against every opponent extreme point.

    ``side=ROW``: ``s`` is player I's strategy, returns the min over player
    II's extreme points. ``side=COLUMN``: ``s`` is player II's strategy,
    returns the max over player I's extreme points. Returns
    ``(value, witness_index)``.
    """
    s = as_complex_vector(s, "strategy")
    if side == ROW:
        poly = g.row_polytope
        if s.shape[0] != poly.m or not poly.contains(s, tol):
            raise ValueError("strategy is not a member of player I's polytope")
        vals = np.real(s.conj() @ g.A @ g.col_polytope.vertex_matrix)
        k = int(np.argmin(vals))
        return float(vals[k]), g.col_polytope.indices[k]
    if side == COLUMN:
        poly = g.col_polytope
        if s.shape[0] != poly.m or not poly.contains(s, tol):
            raise ValueError("strategy is not a member of player II's polytope")
        vals = np.real(g.row_polytope.vertex_matrix.conj().T @ (g.A @ s))
        k = int(np.argmax(vals))
        return float(vals[k]), g.row_polytope.indices[k]
    raise ValueError(f"side must be {ROW!r} or {COLUMN!r}, got {side!r}")


@dataclass(frozen=True)
class EquilibriumCandidate:
    z: np.ndarray
    w: np.ndarray


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    value: float | None
    z_member: bool
    w_member: bool
    row_guarantee: float | None = None
    row_witness: object = None
    col_guarantee: float | None = None
    col_witness: object = None
    reasons: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.passed


def verify_equilibrium(g, cand, tol=DEFAULT_TOL):
    """Check the saddle inequalities of ``(z, w)`` against all extreme points.

    Failures are returned in the report (with the deviating extreme point),
    never raised.
    """
    z = as_complex_vector(cand.z, "z")
    w = as_complex_vector(cand.w, "w")
    m, n = g.shape
    if z.shape[0] != m or w.shape[0] != n:
        return VerificationReport(False, None, False, False, reasons=("dimension mismatch",))
    z_ok = g.row_polytope.contains(z, tol)
    w_ok = g.col_polytope.contains(w, tol)
    reasons = []
    if not z_ok:
        reasons.append("z is not in player I's polytope")
    if not w_ok:
        reasons.append("w is not in player II's polytope")
    if not (z_ok and w_ok):
        return VerificationReport(False, None, z_ok, w_ok, reasons=tuple(reasons))

    value = payoff(g, z, w)
    row_val, row_wit = best_response_envelope(g, ROW, z, tol)
    col_val, col_wit = best_response_envelope(g, COLUMN, w, tol)
    if row_val < value - tol.eps_val:
        reasons.append(
            f"player II deviates to {row_wit.label()} and lowers the payoff to {row_val:.12g}"
        )
    if col_val > value + tol.eps_val:
        reasons.append(
            f"player I deviates to {col_wit.label()} and raises the payoff to {col_val:.12g}"
        )
    return VerificationReport(
        not reasons, value, True, True, row_val, row_wit, col_val, col_wit, tuple(reasons)
    )


def affine_transform(g, k, c):
    """The game with payoff matrix ``k A + c E`` (``E`` all ones), ``k > 0``."""
    if not k > 0:
        raise ValueError(f"scale k must be positive, got {k!r}")
    return ComplexGame(k * g.A + c, g.a0, g.b0)


@dataclass(frozen=True)
class Classification:
    square: bool
    skew_hermitian: bool
    common_argument: bool
    symmetric: bool


def classify(g, tol=DEFAULT_TOL):
    m, n = g.shape
    square = m == n and m >= 2
    skew = square and bool(np.all(np.abs(g.A + g.A.conj().T) <= tol.eps_feas))
    common = g.a0 == g.b0
    return Classification(square, skew, common, skew and common)
