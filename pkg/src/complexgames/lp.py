"""Minimax values through a real linear program.

A complex strategy ``z = x + iy`` in the polytope of argument ``a0`` becomes
the real constraints ``x >= 0``, ``|y| <= tan(a0) x``, ``sum x = 1`` and
``sum y = 0``. Because a linear function on the opponent's polytope attains
its extremes at extreme points, each player's security level is a finite LP
over ``(x, y, t)``. The LPs are solved by a dense two-phase simplex with
Bland's rule.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .game import COLUMN, ROW, best_response_envelope
from .numerics import DEFAULT_TOL, as_complex_vector, in_closed_sector

LE, GE, EQ = "<=", ">=", "="


class LPError(RuntimeError):
    """Raised when an LP that must be solvable is not (a numerics failure)."""


@dataclass
class RealEmbeddedLP:
    names: list
    objective: np.ndarray
    maximize: bool
    rows: np.ndarray
    relations: list
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @property
    def n_vars(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def strategy(self, values):
        """Rebuild ``x + iy`` from a variable assignment."""
        xs = [i for i, s in enumerate(self.names) if s.startswith("x")]
        ys = [i for i, s in enumerate(self.names) if s.startswith("y")]
        return np.asarray(values)[xs] + 1j * np.asarray(values)[ys]


class _Builder:
    def __init__(self):
        self.names, self.lower, self.upper = [], [], []
        self.rows, self.relations, self.rhs = [], [], []

    def var(self, name, lower=-math.inf, upper=math.inf):
        self.names.append(name)
        self.lower.append(lower)
        self.upper.append(upper)
        return len(self.names) - 1

    def add(self, coeffs, rel, rhs):
        self.rows.append(dict(coeffs))
        self.relations.append(rel)
        self.rhs.append(float(rhs))

    def strategy_vars(self, k, a0):
        """Variables ``x_1..x_k, y_1..y_k`` with the polytope constraints."""
        xs = [self.var(f"x{i + 1}", 0.0) for i in range(k)]
        ys = [self.var(f"y{i + 1}") for i in range(k)]
        tan = math.tan(a0)
        for xi, yi in zip(xs, ys):
            self.add({yi: 1.0, xi: -tan}, LE, 0.0)
            self.add({yi: -1.0, xi: -tan}, LE, 0.0)
        self.add({xi: 1.0 for xi in xs}, EQ, 1.0)
        self.add({yi: 1.0 for yi in ys}, EQ, 0.0)
        return xs, ys

    def build(self, objective, maximize):
        n = len(self.names)
        R = np.zeros((len(self.rows), n))
        for r, coeffs in enumerate(self.rows):
            for k, v in coeffs.items():
                R[r, k] += v
        c = np.zeros(n)
        for k, v in objective.items():
            c[k] = v
        return RealEmbeddedLP(
            list(self.names), c, maximize, R, list(self.relations),
            np.array(self.rhs), np.array(self.lower), np.array(self.upper),
        )


def embed_player(g, side):
    """Security-level LP of one player.

    ROW: maximise ``t`` with ``Re(conj(z)^T A d) >= t`` for each extreme point
    ``d`` of player II. COLUMN: minimise ``t`` with ``Re(conj(d)^T A w) <= t``
    for each extreme point ``d`` of player I.
    """
    bld = _Builder()
    m, n = g.shape
    if side == ROW:
        xs, ys = bld.strategy_vars(m, g.a0)
        t = bld.var("t")
        C = g.A @ g.col_polytope.vertex_matrix
        for j in range(C.shape[1]):
            coeffs = {t: -1.0}
            for i in range(m):
                coeffs[xs[i]] = C[i, j].real
                coeffs[ys[i]] = C[i, j].imag
            bld.add(coeffs, GE, 0.0)
        return bld.build({t: 1.0}, maximize=True)
    if side == COLUMN:
        xs, ys = bld.strategy_vars(n, g.b0)
        t = bld.var("t")
        G = g.A.T @ g.row_polytope.vertex_matrix.conj()
        for i in range(G.shape[1]):
            coeffs = {t: -1.0}
            for j in range(n):
                coeffs[xs[j]] = G[j, i].real
                coeffs[ys[j]] = -G[j, i].imag
            bld.add(coeffs, LE, 0.0)
        return bld.build({t: 1.0}, maximize=False)
    raise ValueError(f"side must be {ROW!r} or {COLUMN!r}, got {side!r}")


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: float | None
    x: np.ndarray | None
    iterations: int


def _standard_form(lp):
    """Map bounded/free variables onto non-negative ones.

    Returns ``(shift, Q, extra_rows)`` with ``x = shift + Q @ x_std`` and the
    upper-bound rows to append in terms of ``x_std``.
    """
    n = lp.n_vars
    cols, shift, bounds = [], np.zeros(n), []
    for k in range(n):
        lo, hi = lp.lower[k], lp.upper[k]
        e = np.zeros(n)
        e[k] = 1.0
        if math.isfinite(lo):
            shift[k] = lo
            cols.append(e)
            if math.isfinite(hi):
                bounds.append((len(cols) - 1, hi - lo))
        elif math.isfinite(hi):
            shift[k] = hi
            cols.append(-e)
        else:
            cols.append(e)
            cols.append(-e)
    Q = np.column_stack(cols)
    extra = []
    for col, ub in bounds:
        row = np.zeros(Q.shape[1])
        row[col] = 1.0
        extra.append((row, LE, ub))
    return shift, Q, extra


def _basic_values(T0, rows, basis):
    """Basic variable values recomputed from the original rows.

    Many degenerate pivots let rounding drift build up in the tableau;
    solving ``B x_B = b`` afresh for the final basis removes it. Returns
    ``None`` if the basis matrix is singular to working precision.
    """
    B = T0[np.ix_(rows, basis)]
    try:
        xb = np.linalg.solve(B, T0[rows, -1])
    except np.linalg.LinAlgError:
        return None
    return xb if np.all(np.isfinite(xb)) else None


def violation(lp, x):
    """Largest constraint or bound violation of ``x``."""
    lhs = lp.rows @ x
    worst = 0.0
    for v, rel, b in zip(lhs, lp.relations, lp.rhs):
        if rel == LE:
            worst = max(worst, v - b)
        elif rel == GE:
            worst = max(worst, b - v)
        else:
            worst = max(worst, abs(v - b))
    worst = max(worst, float(np.max(lp.lower - x, initial=0.0)), float(np.max(x - lp.upper, initial=0.0)))
    return worst


def simplex_solve(lp, tol=DEFAULT_TOL, max_iter=50_000, escalations=3):
    """Two-phase dense primal simplex with Bland's rule.

    The pivot threshold starts at ``tol.eps_rank``. If the optimal basis,
    re-solved against the original rows, violates a constraint by more than
    ``eps_feas`` (scaled by the data), or if the LP is reported infeasible or
    unbounded, the solve is repeated with a threshold ten times larger, at most
    ``escalations`` times; the last attempt's verdict stands.
    """
    scale = 1.0 + float(np.max(np.abs(lp.rhs), initial=0.0))
    eps = tol.eps_rank
    total = 0
    for attempt in range(escalations + 1):
        sol = _simplex_attempt(lp, tol, eps, max_iter)
        total += sol.iterations
        if sol.status == "optimal" and violation(lp, sol.x) <= tol.eps_feas * scale:
            break
        eps *= 10.0
    return LPSolution(sol.status, sol.value, sol.x, total)


def _simplex_attempt(lp, tol, eps, max_iter):
    shift, Q, extra = _standard_form(lp)
    A = lp.rows @ Q
    b = lp.rhs - lp.rows @ shift
    rels = list(lp.relations)
    if extra:
        A = np.vstack([A] + [r for r, _, _ in extra])
        b = np.concatenate([b, [u for _, _, u in extra]])
        rels += [rel for _, rel, _ in extra]
    c = Q.T @ lp.objective
    if lp.maximize:
        c = -c
    k, n_std = A.shape

    for r in range(k):
        if b[r] < 0:
            A[r], b[r] = -A[r], -b[r]
            rels[r] = {LE: GE, GE: LE, EQ: EQ}[rels[r]]

    n_slack = sum(1 for rel in rels if rel != EQ)
    art_rows = [r for r in range(k) if rels[r] != LE]
    n_art = len(art_rows)
    n_cols = n_std + n_slack + n_art
    T = np.zeros((k + 1, n_cols + 1))
    T[:k, :n_std] = A
    T[:k, -1] = b
    basis = np.zeros(k, dtype=np.int64)
    s = n_std
    a = n_std + n_slack
    for r in range(k):
        if rels[r] == LE:
            T[r, s] = 1.0
            basis[r] = s
            s += 1
        else:
            if rels[r] == GE:
                T[r, s] = -1.0
                s += 1
            T[r, a] = 1.0
            basis[r] = a
            a += 1

    T0 = T[:k].copy()
    iterations = 0
    first_art = n_std + n_slack
    if n_art:
        T[k, :] = -T[art_rows, :].sum(axis=0)
        T[k, first_art:n_cols] = 0.0
        status, it = kernels.simplex_loop(T, basis, n_cols, eps, max_iter)
        iterations += it
        # phase 1 is bounded below by 0, so an unbounded ray can only come from a
        # reduced cost at noise level; the feasibility test below decides
        if status == kernels.ITERATION_LIMIT:
            raise LPError("phase 1 hit the iteration limit")
        xb = _basic_values(T0, np.arange(k), basis)
        if xb is None:
            infeas = -T[k, -1]
        else:
            infeas = float(np.abs(xb[basis >= first_art]).sum())
        if infeas > tol.eps_feas * (1.0 + float(np.max(np.abs(b), initial=0.0))):
            return LPSolution("infeasible", None, None, iterations)
        keep = []
        for r in range(k):
            if basis[r] >= first_art:
                cand = np.nonzero(np.abs(T[r, :first_art]) > eps)[0]
                if cand.size == 0:
                    continue  # redundant row
                kernels.pivot(T, r, int(cand[0]))
                basis[r] = int(cand[0])
            keep.append(r)
        rows = keep + [k]
        T = np.ascontiguousarray(
            np.column_stack([T[rows, :first_art], T[rows, -1]])
        )
        basis = np.ascontiguousarray(basis[keep])
        k = len(keep)
    else:
        keep = list(range(k))

    cost = np.zeros(first_art)
    cost[:n_std] = c
    T[k, :first_art] = cost
    T[k, -1] = 0.0
    for r in range(k):
        cb = cost[basis[r]]
        if cb != 0.0:
            T[k, :] -= cb * T[r, :]
    status, it = kernels.simplex_loop(T, basis, first_art, eps, max_iter)
    iterations += it
    if status == kernels.UNBOUNDED:
        return LPSolution("unbounded", None, None, iterations)
    if status != kernels.OPTIMAL:
        raise LPError(f"phase 2 stopped with status {status}")

    x_std = np.zeros(first_art)
    xb = _basic_values(T0, np.asarray(keep), basis)
    x_std[basis] = T[:k, -1] if xb is None else xb
    x = shift + Q @ x_std[:n_std]
    return LPSolution("optimal", float(lp.objective @ x), x, iterations)


@dataclass(frozen=True)
class MinimaxResult:
    """Both security levels with the strategies that attain them.

    ``v_low`` and ``v_high`` are the exact guarantees of ``z_opt`` and
    ``w_opt`` over the opponent's extreme points, so ``v_low <= v <= v_high``
    holds for the true value ``v`` up to rounding; ``lp_values`` are the raw
    LP optima.
    """

    v_low: float
    v_high: float
    z_opt: np.ndarray
    w_opt: np.ndarray
    iterations: tuple
    lp_values: tuple = (None, None)

    @property
    def gap(self):
        return self.v_high - self.v_low

    @property
    def value(self):
        return 0.5 * (self.v_low + self.v_high)


def minimax(g, tol=DEFAULT_TOL):
    """Solve both security-level LPs; raise :class:`LPError` if they disagree."""
    results = []
    for side, poly in ((ROW, g.row_polytope), (COLUMN, g.col_polytope)):
        lp = embed_player(g, side)
        sol = simplex_solve(lp, tol)
        if sol.status != "optimal":
            raise LPError(f"{side} player LP is {sol.status}; the embedding is always feasible and bounded")
        s = lp.strategy(sol.x)
        if not poly.contains(s, tol):
            raise LPError(f"{side} player LP returned a strategy outside the polytope")
        guarantee, _ = best_response_envelope(g, side, s, tol)
        results.append((s, guarantee, sol))
    (z, v_low, sol_i), (w, v_high, sol_ii) = results
    if v_low > v_high + tol.eps_val:
        raise LPError(f"weak duality violated: v_low={v_low!r} > v_high={v_high!r}")
    if abs(v_high - v_low) > tol.eps_val:
        raise LPError(f"duality gap {v_high - v_low:.3e} exceeds {tol.eps_val:.1e}")
    return MinimaxResult(
        v_low, v_high, z, w, (sol_i.iterations, sol_ii.iterations), (sol_i.value, sol_ii.value)
    )


@dataclass(frozen=True)
class ComplexLCPInstance:
    M: np.ndarray
    q: np.ndarray
    gamma: np.ndarray

    @property
    def size(self):
        return self.q.shape[0]


def build_lcp(g):
    """Complex LCP whose solutions encode both players' scaled strategies.

    The all-ones blocks are realised as the column vectors ``1_m`` and ``1_n``,
    so the last two coordinates are scalars (multipliers of the two
    ``sum Im = 0`` constraints). Size is ``m + n + 2``.
    """
    A = g.A
    m, n = A.shape
    p = m + n + 2
    M = np.zeros((p, p), dtype=np.complex128)
    r1, r2, r3, r4 = slice(0, m), slice(m, m + n), m + n, m + n + 1
    M[r1, r2] = -A
    M[r1, r3] = -1.0
    M[r2, r1] = A.conj().T
    M[r2, r4] = -1.0
    M[r3, r1] = 1.0
    M[r4, r2] = 1.0
    q = np.concatenate([np.ones(m), -np.ones(n), [0.0, 0.0]]).astype(np.complex128)
    half_pi = math.pi / 2
    gamma = np.concatenate([np.full(m, g.a0), np.full(n, g.b0), [half_pi, half_pi]])
    return ComplexLCPInstance(M, q, gamma)


@dataclass(frozen=True)
class LCPReport:
    passed: bool
    y: np.ndarray
    residual: float
    x_violations: tuple
    y_violations: tuple

    def __bool__(self):
        return self.passed


def verify_lcp(inst, x, tol=DEFAULT_TOL):
    """Check ``x`` against the cone and complementarity conditions.

    ``y = q + M x`` must lie in the cone of half-angle ``pi/2 - gamma`` and
    ``x`` in the cone of half-angle ``gamma``, with ``Re(conj(x)^T y) = 0``.
    """
    x = as_complex_vector(x, "x")
    if x.shape[0] != inst.size:
        raise ValueError(f"dimension mismatch: LCP has size {inst.size}, x has {x.shape[0]}")
    y = inst.q + inst.M @ x
    eps = tol.eps_feas
    x_bad = tuple(k for k in range(inst.size) if not in_closed_sector(x[k], inst.gamma[k], eps))
    y_bad = tuple(
        k for k in range(inst.size)
        if not in_closed_sector(y[k], math.pi / 2 - inst.gamma[k], eps)
    )
    residual = abs(float(np.real(x.conj() @ y)))
    passed = not x_bad and not y_bad and residual <= eps
    return LCPReport(passed, y, residual, x_bad, y_bad)


def _multiplier(u, angle):
    """Real ``s`` putting every ``u_k - i s`` in the cone of half-angle ``angle``.

    Each coordinate admits an interval of ``s``; returns the midpoint of their
    intersection. When rounding leaves the intersection slightly inverted the
    midpoint is still the best choice; a truly empty one shows up in
    :func:`verify_lcp`.
    """
    lo, hi = -math.inf, math.inf
    tan = math.tan(angle)
    for c in u:
        r = tan * c.real
        lo = max(lo, c.imag - r)
        hi = min(hi, c.imag + r)
    return 0.5 * (lo + hi)


def lcp_candidate(g, result):
    """Assemble an LCP point from a minimax solution.

    The strategies are scaled by ``1 / v`` (requires ``v > 0``; shift the game
    with :func:`~complexgames.game.affine_transform` otherwise). The two scalar
    coordinates carry purely imaginary multipliers for the ``sum Im = 0``
    constraints.
    """
    v = result.value
    if not v > 0:
        raise ValueError(f"game value {v!r} is not positive; shift the payoff matrix first")
    m, n = g.shape
    z1 = result.z_opt / v
    w1 = result.w_opt / v
    s3 = _multiplier(np.ones(m) - g.A @ w1, math.pi / 2 - g.a0)
    s4 = _multiplier(g.A.conj().T @ z1 - np.ones(n), math.pi / 2 - g.b0)
    return np.concatenate([z1, w1, [1j * s3, 1j * s4]])
