"""End-to-end solution of a complex game with an audit trail.

Steps: a pure saddle point if the pure security levels meet; otherwise
eliminate dominated strategies, try equalizing strategies on what is left and
lift them back if every elimination was safe; otherwise solve the minimax LP
on the full matrix. Whatever is returned has been verified on the original
game.
"""
from dataclasses import dataclass

import numpy as np

from .domination import check_elimination_condition, iterated_eliminate, pad_strategy
from .equalizing import equalizing_equilibrium, equalizing_sides
from .game import EquilibriumCandidate, pure_equilibria, pure_security, verify_equilibrium
from .lp import minimax
from .numerics import DEFAULT_TOL

PURE, EQUALIZING, LP = "pure", "equalizing", "lp"
AUTO = "auto"
METHODS = (AUTO, EQUALIZING, LP)


class SolveError(RuntimeError):
    """No verified equilibrium could be produced."""


@dataclass(frozen=True)
class FinalCertificate:
    value: float
    z: np.ndarray
    w: np.ndarray
    method: str
    verified: bool
    fair: bool
    verification: object


@dataclass(frozen=True)
class SolveReport:
    pure: object
    pure_equilibria: list
    trace: object = None
    reduced: object = None
    equalizing_sides: tuple | None = None
    equalizing: object = None
    lifted: EquilibriumCandidate | None = None
    elimination_conditions: list | None = None
    lifted_verification: object = None
    lp_result: object = None
    final: FinalCertificate | None = None


def _certify(g, z, w, method, tol):
    rep = verify_equilibrium(g, EquilibriumCandidate(z, w), tol)
    if not rep.passed:
        raise SolveError(f"{method} candidate failed verification: {'; '.join(rep.reasons)}")
    value = rep.value
    return FinalCertificate(value, z, w, method, True, abs(value) <= tol.eps_val, rep)


def solve(g, method=AUTO, tol=DEFAULT_TOL):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    sec = pure_security(g)
    pure_eq = pure_equilibria(g, tol)
    report = {"pure": sec, "pure_equilibria": pure_eq}

    if method == AUTO and sec.h_high - sec.h_low <= tol.eps_val:
        z = g.row_polytope.extreme_point(sec.maximin_index)
        w = g.col_polytope.extreme_point(sec.minimax_index)
        return SolveReport(**report, final=_certify(g, z, w, PURE, tol))

    if method in (AUTO, EQUALIZING):
        reduced, trace = iterated_eliminate(g, tol)
        sides = equalizing_sides(reduced, tol)
        eq = equalizing_equilibrium(reduced, tol, sides)
        report.update(trace=trace, reduced=reduced, equalizing_sides=sides, equalizing=eq)
        if eq is not None:
            m, n = g.shape
            z = pad_strategy(eq.candidate.z, trace.rows, m)
            w = pad_strategy(eq.candidate.w, trace.cols, n)
            conds = check_elimination_condition(g, trace, z, w, tol)
            check = verify_equilibrium(g, EquilibriumCandidate(z, w), tol)
            report.update(
                lifted=EquilibriumCandidate(z, w),
                elimination_conditions=conds,
                lifted_verification=check,
            )
            if all(c.met for c in conds) and check.passed:
                return SolveReport(**report, final=_certify(g, z, w, EQUALIZING, tol))
        if method == EQUALIZING:
            raise SolveError("no equalizing equilibrium could be certified for the full game")

    res = minimax(g, tol)
    report["lp_result"] = res
    return SolveReport(**report, final=_certify(g, res.z_opt, res.w_opt, LP, tol))

