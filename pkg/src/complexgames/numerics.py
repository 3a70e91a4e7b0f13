"""Complex arithmetic helpers, sector-cone membership and a complex linear solver."""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack used throughout the package.

    eps_feas: feasibility slack (memberships, residuals).
    eps_val: slack for comparing payoffs and values.
    eps_rank: pivot threshold in elimination and simplex.
    """

    eps_feas: float = 1e-9
    eps_val: float = 1e-7
    eps_rank: float = 1e-10

    def __post_init__(self):
        for name in ("eps_feas", "eps_val", "eps_rank"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")


DEFAULT_TOL = Tolerances()


def check_argument(a0):
    """Reject strategy arguments outside the open interval (0, pi/2)."""
    a0 = float(a0)
    if not (0.0 < a0 < math.pi / 2):
        raise ValueError(f"unsupported strategy argument {a0!r}: must lie in (0, pi/2)")
    return a0


def as_complex_vector(v, name="vector"):
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_complex_matrix(M, name="matrix"):
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-d array")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def sector_contains(c, a0, tol=DEFAULT_TOL):
    """True iff ``c`` lies in the closed cone ``|arg c| <= a0`` (with slack).

    The test is the half-plane pair ``Re c >= 0`` and ``|Im c| <= tan(a0) Re c``,
    so the argument of zero is never evaluated.
    """
    a0 = check_argument(a0)
    c = complex(c)
    eps = tol.eps_feas
    return c.real >= -eps and abs(c.imag) <= math.tan(a0) * c.real + eps


def in_closed_sector(c, angle, eps):
    """Sector membership for any half-angle in ``[0, pi/2]``.

    Uses ``|Im c| cos(angle) <= Re c sin(angle)`` so both end points are exact:
    angle 0 is the non-negative real ray, angle pi/2 the right half-plane.
    """
    c = complex(c)
    if c.real < -eps:
        return False
    return abs(c.imag) * math.cos(angle) <= c.real * math.sin(angle) + eps


@dataclass(frozen=True)
class LinearSolveResult:
    """Outcome of :func:`solve_complex_linear`.

    ``solution`` is ``None`` exactly when the system is inconsistent.
    """

    consistent: bool
    rank: int
    solution: np.ndarray | None
    residual: float
    pivot_columns: tuple

    def __bool__(self):
        return self.consistent


def solve_complex_linear(B, b, tol=DEFAULT_TOL):
    """Solve ``B z = b`` by Gaussian elimination with partial pivoting by modulus.

    Rectangular and rank-deficient systems are allowed: free variables are set
    to zero. An inconsistent system is reported, not raised.
    """
    B = as_complex_matrix(B, "B")
    b = as_complex_vector(b, "b")
    p, q = B.shape
    if b.shape[0] != p:
        raise ValueError(f"dimension mismatch: B is {p}x{q}, b has length {b.shape[0]}")

    M = np.ascontiguousarray(np.column_stack([B, b]))
    pivots = kernels.complex_echelon(M, tol.eps_rank)
    r = len(pivots)

    z = np.zeros(q, dtype=np.complex128)
    for k in range(r - 1, -1, -1):
        col = pivots[k]
        s = M[k, q] - M[k, col + 1 : q] @ z[col + 1 :]
        z[col] = s / M[k, col]

    residual = float(np.max(np.abs(B @ z - b)))
    bound = tol.eps_feas * (1.0 + float(np.max(np.abs(b))))
    if residual > bound:
        return LinearSolveResult(False, r, None, residual, tuple(pivots))
    return LinearSolveResult(True, r, z, residual, tuple(pivots))
