"""Dominated rows and columns.

A row ``i0`` is dominated when another row (or a real mix of two rows, or a
mixed strategy) pays player I at least as much against every extreme point of
player II. A column is dominated when another column costs player II no more
against every extreme point of player I. "Weak" needs one strict comparison,
"strict" needs all of them. Indices are zero-based.
"""
from dataclasses import dataclass, field

import numpy as np

from .game import COLUMN, ROW
from .lp import EQ, GE, LPError, _Builder, simplex_solve
from .numerics import DEFAULT_TOL, as_complex_vector


@dataclass(frozen=True)
class Single:
    i: int


@dataclass(frozen=True)
class PairMix:
    """``lam * e_i1 + (1 - lam) * e_i2`` with ``0 < lam < 1``."""

    i1: int
    i2: int
    lam: float

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lam must lie in (0, 1), got {self.lam!r}")


@dataclass(frozen=True)
class Mixed:
    strategy: np.ndarray


@dataclass(frozen=True)
class DominationClaim:
    axis: str
    target: int
    dominator: object
    strict: bool

    def describe(self):
        name = "row" if self.axis == ROW else "column"
        d = self.dominator
        kind = "strictly" if self.strict else "weakly"
        if isinstance(d, Single):
            by = f"{name} {d.i + 1}"
        elif isinstance(d, PairMix):
            by = f"{d.lam:.12g}*{name} {d.i1 + 1} + {1 - d.lam:.12g}*{name} {d.i2 + 1}"
        else:
            by = "a mixed strategy"
        return f"{name} {self.target + 1} {kind} dominated by {by}"


@dataclass(frozen=True)
class EliminationTrace:
    """Claims in the order applied, plus the surviving original indices."""

    claims: tuple
    rows: tuple
    cols: tuple

    def __len__(self):
        return len(self.claims)


def _check_axis(axis):
    if axis not in (ROW, COLUMN):
        raise ValueError(f"axis must be {ROW!r} or {COLUMN!r}, got {axis!r}")


def comparison_matrix(g, axis):
    """Real payoffs oriented so that larger is better for the axis owner.

    ROW: ``Re(e_i^* A d^j)`` with shape ``m x n^2``. COLUMN: the negated
    ``Re(d^{i*} A e_j)`` transposed to shape ``n x m^2``, so a column with
    larger entries costs player II less.
    """
    _check_axis(axis)
    if axis == ROW:
        return np.real(g.A @ g.col_polytope.vertex_matrix)
    return -np.real(g.row_polytope.vertex_matrix.conj().T @ g.A).T


def _verdict(diff, eps):
    """``(dominates, strict)`` from the comparison slacks."""
    if np.any(diff < -eps):
        return False, False
    if np.all(diff > eps):
        return True, True
    return bool(np.any(diff > eps)), False


def _check_index(k, size, what):
    if not 0 <= k < size:
        raise IndexError(f"{what} {k} out of range for {size} strategies")


def dominates_single(g, axis, target, candidate, strict=False, tol=DEFAULT_TOL):
    """Is ``target`` (weakly or strictly) dominated by ``candidate``?"""
    R = comparison_matrix(g, axis)
    _check_index(target, R.shape[0], "target")
    _check_index(candidate, R.shape[0], "candidate")
    if target == candidate:
        return False
    ok, is_strict = _verdict(R[candidate] - R[target], tol.eps_val)
    return is_strict if strict else ok


def _lambda_interval(a, c, eps):
    """Interval of ``lam`` with ``a_j lam >= c_j`` for all j, clipped to [0, 1]."""
    lo, hi = 0.0, 1.0
    for aj, cj in zip(a, c):
        if abs(aj) <= eps:
            if cj > eps:
                return None
        elif aj > 0:
            lo = max(lo, cj / aj)
        else:
            hi = min(hi, cj / aj)
    if lo > hi:
        return None
    return lo, hi


def find_pair_domination(g, axis, target, tol=DEFAULT_TOL):
    """First pair ``(i1, i2)`` whose real mix dominates ``target``.

    Pairs ``i1 < i2`` (both other than ``target``) are scanned in
    lexicographic order. Each opponent extreme point restricts ``lam`` to a
    half-line; the intersection with (0, 1) is taken and its midpoint used.
    Returns a :class:`DominationClaim` or ``None``.
    """
    R = comparison_matrix(g, axis)
    k = R.shape[0]
    _check_index(target, k, "target")
    eps = tol.eps_val
    others = [i for i in range(k) if i != target]
    for x, i1 in enumerate(others):
        for i2 in others[x + 1 :]:
            a = R[i1] - R[i2]
            c = R[target] - R[i2]
            iv = _lambda_interval(a, c, eps)
            if iv is None:
                continue
            lo, hi = iv
            lam = float(0.5 * (lo + hi))
            if not 0.0 < lam < 1.0:
                continue
            ok, strict = _verdict(lam * R[i1] + (1 - lam) * R[i2] - R[target], eps)
            if ok:
                return DominationClaim(axis, target, PairMix(i1, i2, lam), strict)
    return None


@dataclass(frozen=True)
class MixedDomination:
    strategy: np.ndarray
    strict: bool
    slacks: np.ndarray = field(repr=False)


def _mixed_lp(g, axis, target, uniform):
    bld = _Builder()
    m, n = g.shape
    if axis == ROW:
        xs, ys = bld.strategy_vars(m, g.a0)
        C = g.A @ g.col_polytope.vertex_matrix
        sign = 1.0
    else:
        xs, ys = bld.strategy_vars(n, g.b0)
        C = (g.A.T @ g.row_polytope.vertex_matrix.conj()).conj()
        sign = -1.0
    # sign * Re(conj(s)^T C[:, j]) is the axis owner's gain against extreme point j
    base = sign * C[target].real
    k = C.shape[1]
    if uniform:
        s = bld.var("s")
        for j in range(k):
            coeffs = {s: -1.0}
            for i in range(len(xs)):
                coeffs[xs[i]] = sign * C[i, j].real
                coeffs[ys[i]] = sign * C[i, j].imag
            bld.add(coeffs, GE, base[j])
        return bld.build({s: 1.0}, maximize=True)
    slack = [bld.var(f"s{j + 1}", 0.0) for j in range(k)]
    for j in range(k):
        coeffs = {slack[j]: -1.0}
        for i in range(len(xs)):
            coeffs[xs[i]] = sign * C[i, j].real
            coeffs[ys[i]] = sign * C[i, j].imag
        bld.add(coeffs, EQ, base[j])
    return bld.build({sj: 1.0 for sj in slack}, maximize=True)


def _gains(g, axis, strategy, target):
    R = comparison_matrix(g, axis)
    if axis == ROW:
        own = np.real(strategy.conj() @ g.A @ g.col_polytope.vertex_matrix)
    else:
        own = -np.real(g.row_polytope.vertex_matrix.conj().T @ (g.A @ strategy))
    return own - R[target]


def find_mixed_domination(g, axis, target, tol=DEFAULT_TOL):
    """A mixed strategy dominating ``target``, found by LP, or ``None``.

    First maximises a uniform slack (strict domination iff it exceeds
    ``eps_val``); failing that, maximises the total of non-negative slacks
    (weak domination iff the total exceeds ``eps_val``).
    """
    _check_axis(axis)
    size = g.shape[0] if axis == ROW else g.shape[1]
    _check_index(target, size, "target")
    for uniform in (True, False):
        lp = _mixed_lp(g, axis, target, uniform)
        sol = simplex_solve(lp, tol)
        if sol.status != "optimal":
            raise LPError(f"domination LP is {sol.status}")
        if sol.value > tol.eps_val:
            strategy = lp.strategy(sol.x)
            return MixedDomination(strategy, uniform, _gains(g, axis, strategy, target))
    return None


def _find_single(g, axis, tol):
    R = comparison_matrix(g, axis)
    k = R.shape[0]
    for t in range(k):
        for c in range(k):
            if c == t:
                continue
            ok, strict = _verdict(R[c] - R[t], tol.eps_val)
            if ok:
                return DominationClaim(axis, t, Single(c), strict)
    return None


def _find_pair(g, axis, tol):
    k = g.shape[0] if axis == ROW else g.shape[1]
    if k < 3:
        return None
    for t in range(k):
        claim = find_pair_domination(g, axis, t, tol)
        if claim is not None:
            return claim
    return None


def _to_original(claim, rows, cols):
    idx = rows if claim.axis == ROW else cols
    d = claim.dominator
    if isinstance(d, Single):
        d = Single(idx[d.i])
    else:
        d = PairMix(idx[d.i1], idx[d.i2], d.lam)
    return DominationClaim(claim.axis, idx[claim.target], d, claim.strict)


def iterated_eliminate(g, tol=DEFAULT_TOL):
    """Remove dominated rows and columns until none remain.

    Each pass tries, in order: rows by a single row, columns by a single
    column, rows by a pair, columns by a pair, and removes the first hit.
    A player is never left without strategies. Returns the reduced game and
    an :class:`EliminationTrace` in original indices.
    """
    rows = list(range(g.shape[0]))
    cols = list(range(g.shape[1]))
    claims = []
    cur = g
    while True:
        m, n = cur.shape
        claim = None
        for finder, axis, size in (
            (_find_single, ROW, m),
            (_find_single, COLUMN, n),
            (_find_pair, ROW, m),
            (_find_pair, COLUMN, n),
        ):
            if size < 2:
                continue
            claim = finder(cur, axis, tol)
            if claim is not None:
                break
        if claim is None:
            break
        claims.append(_to_original(claim, rows, cols))
        if claim.axis == ROW:
            del rows[claim.target]
        else:
            del cols[claim.target]
        cur = g.submatrix(rows, cols)
    return cur, EliminationTrace(tuple(claims), tuple(rows), tuple(cols))


def pad_strategy(s, keep, size):
    """Embed a reduced strategy into ``size`` coordinates, zeros elsewhere."""
    out = np.zeros(size, dtype=np.complex128)
    out[list(keep)] = as_complex_vector(s, "strategy")
    return out


@dataclass(frozen=True)
class ConditionVerdict:
    claim: DominationClaim
    target_im: float
    dominator_im: float
    met: bool


def check_elimination_condition(g, trace, z, w, tol=DEFAULT_TOL):
    """Compare imaginary parts that must agree for each elimination to be safe.

    Row claims use ``Im((A w)_i)``, column claims ``Im(conj(z)^T A e_j)``;
    a pair dominator contributes the matching ``lam`` mix. ``z`` and ``w``
    are strategies of the original game (eliminated coordinates zero).
    """
    z = as_complex_vector(z, "z")
    w = as_complex_vector(w, "w")
    m, n = g.shape
    if z.shape[0] != m or w.shape[0] != n:
        raise ValueError(f"dimension mismatch: game is {m}x{n}, got z[{z.shape[0]}], w[{w.shape[0]}]")
    row_im = np.imag(g.A @ w)
    col_im = np.imag(z.conj() @ g.A)
    out = []
    for claim in trace.claims:
        im = row_im if claim.axis == ROW else col_im
        d = claim.dominator
        if isinstance(d, Single):
            dom = float(im[d.i])
        elif isinstance(d, PairMix):
            dom = float(d.lam * im[d.i1] + (1 - d.lam) * im[d.i2])
        else:
            raise TypeError("mixed dominators are not used for elimination")
        tgt = float(im[claim.target])
        out.append(ConditionVerdict(claim, tgt, dom, abs(tgt - dom) <= tol.eps_val))
    return out
