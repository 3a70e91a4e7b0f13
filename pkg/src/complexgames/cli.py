"""Command-line front end.

Game files are JSON objects::

    {"m": 2, "n": 3,
     "alpha": {"kind": "pi_fraction", "num": 1, "den": 4},
     "beta": {"kind": "radians", "value": 1.3},
     "matrix": [[[2, 0], [1, 1], [5, 2]], [[3, 1], [3, 0], [4, -1]]]}

Complex numbers are ``[re, im]`` pairs. Strategy and extreme-point indices
are printed one-based. Exit codes: 0 success, 1 invalid input, 2 numeric
failure.
"""
import argparse
import json
import math
import sys

import numpy as np

from .domination import iterated_eliminate
from .equalizing import EqualizingInconsistency, equalizing_equilibrium, equalizing_sides
from .game import (
    ComplexGame,
    EquilibriumCandidate,
    classify,
    pure_equilibria,
    pure_security,
    verify_equilibrium,
)
from .lp import LPError, build_lcp, lcp_candidate, minimax, verify_lcp
from .numerics import DEFAULT_TOL, Tolerances
from .solver import METHODS, SolveError, solve

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class InputError(ValueError):
    """Malformed game file or command-line strategy."""


def _angle(obj, field):
    if not isinstance(obj, dict):
        raise InputError(f"{field}: expected an object with a 'kind' key")
    kind = obj.get("kind")
    if kind == "pi_fraction":
        num, den = obj.get("num"), obj.get("den")
        if not (isinstance(num, int) and isinstance(den, int)) or isinstance(num, bool) or den == 0:
            raise InputError(f"{field}: pi_fraction needs integer 'num' and non-zero integer 'den'")
        value = math.pi * num / den
    elif kind == "radians":
        value = obj.get("value")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InputError(f"{field}: radians needs a numeric 'value'")
        value = float(value)
    else:
        raise InputError(f"{field}: unknown kind {kind!r} (expected 'pi_fraction' or 'radians')")
    if not 0.0 < value < math.pi / 2:
        raise InputError(f"{field}: argument {value!r} must lie in (0, pi/2)")
    return value


def _complex(pair, field):
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
    ):
        raise InputError(f"{field}: expected a [re, im] pair of numbers, got {pair!r}")
    c = complex(float(pair[0]), float(pair[1]))
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise InputError(f"{field}: non-finite entry")
    return c


def parse_vector(data, field):
    if not isinstance(data, list) or not data:
        raise InputError(f"{field}: expected a non-empty list of [re, im] pairs")
    return np.array([_complex(p, f"{field}[{k}]") for k, p in enumerate(data)])


def parse_game(data):
    """Build a :class:`ComplexGame` from a decoded game file."""
    if not isinstance(data, dict):
        raise InputError("game file: top level must be an object")
    for key in ("m", "n", "alpha", "beta", "matrix"):
        if key not in data:
            raise InputError(f"{key}: missing")
    m, n = data["m"], data["n"]
    for key, v in (("m", m), ("n", n)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InputError(f"{key}: expected a positive integer, got {v!r}")
    a0 = _angle(data["alpha"], "alpha")
    b0 = _angle(data["beta"], "beta")
    rows = data["matrix"]
    if not isinstance(rows, list) or len(rows) != m:
        raise InputError(f"matrix: expected {m} rows")
    A = np.zeros((m, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"matrix[{i}]: expected {n} entries")
        for j, pair in enumerate(row):
            A[i, j] = _complex(pair, f"matrix[{i}][{j}]")
    return ComplexGame(A, a0, b0)


def load_game(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    return parse_game(data)


def _strategy_arg(text, field):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{field}: not valid JSON ({exc})") from exc
    return parse_vector(data, field)


# ---- serialisation -------------------------------------------------------

def jvec(v):
    return [[float(c.real), float(c.imag)] for c in np.asarray(v, dtype=np.complex128)]


def jcomplex(c):
    return [float(c.real), float(c.imag)]


def fnum(x):
    return f"{x:.12g}"


def fcomplex(c):
    return f"{c.real + 0.0:.12g}{c.imag + 0.0:+.12g}i"


def fvec(v):
    return "(" + ", ".join(fcomplex(c) for c in v) + ")"


def _claim_json(c):
    d = c.dominator
    out = {"axis": c.axis, "target": c.target + 1, "strict": bool(c.strict)}
    if hasattr(d, "lam"):
        out["dominator"] = {"kind": "pair", "i1": d.i1 + 1, "i2": d.i2 + 1, "lam": d.lam}
    else:
        out["dominator"] = {"kind": "single", "i": d.i + 1}
    return out


def _verification_json(rep):
    return {
        "passed": bool(rep.passed),
        "value": rep.value,
        "z_member": bool(rep.z_member),
        "w_member": bool(rep.w_member),
        "row_guarantee": rep.row_guarantee,
        "row_witness": rep.row_witness.label() if rep.row_witness is not None else None,
        "col_guarantee": rep.col_guarantee,
        "col_witness": rep.col_witness.label() if rep.col_witness is not None else None,
        "reasons": list(rep.reasons),
    }


def _verification_text(rep):
    lines = [f"verdict: {'pass' if rep.passed else 'fail'}"]
    if rep.value is not None:
        lines.append(f"payoff: {fnum(rep.value)}")
        lines.append(f"player I guarantee: {fnum(rep.row_guarantee)} (worst reply {rep.row_witness.label()})")
        lines.append(f"player II guarantee: {fnum(rep.col_guarantee)} (worst reply {rep.col_witness.label()})")
    lines.extend(f"reason: {r}" for r in rep.reasons)
    return lines


def _side_json(s):
    return {
        "side": s.side,
        "consistent": bool(s.consistent),
        "feasible": bool(s.feasible),
        "strategy": jvec(s.strategy) if s.strategy is not None else None,
        "constant": jcomplex(s.constant) if s.constant is not None else None,
        "rank": s.rank,
        "residual": s.residual,
    }


def _side_text(s):
    who = "player I" if s.side == "row" else "player II"
    sym = "eta" if s.side == "row" else "theta"
    if not s.consistent:
        return [f"{who}: system inconsistent (residual {fnum(s.residual)})"]
    return [
        f"{who}: strategy {fvec(s.strategy)}, {sym} = {fcomplex(s.constant)}, "
        f"{'feasible' if s.feasible else 'violates the argument bound'}"
    ]


# ---- commands ------------------------------------------------------------

def cmd_info(g, args, tol):
    c = classify(g, tol)
    m, n = g.shape
    data = {
        "m": m, "n": n, "alpha": g.a0, "beta": g.b0,
        "square": c.square, "skew_hermitian": c.skew_hermitian,
        "common_argument": c.common_argument, "symmetric": c.symmetric,
    }
    lines = [
        f"size: {m} x {n}",
        f"alpha: {fnum(g.a0)} rad, beta: {fnum(g.b0)} rad",
        f"square: {c.square}, skew-hermitian: {c.skew_hermitian}, "
        f"common argument: {c.common_argument}, symmetric: {c.symmetric}",
    ]
    return data, lines


def cmd_security(g, args, tol):
    s = pure_security(g)
    eq = pure_equilibria(g, tol)
    data = {
        "h_low": s.h_low, "h_high": s.h_high,
        "maximin": s.maximin_index.label(), "minimax": s.minimax_index.label(),
        "pure_equilibrium_exists": bool(eq),
    }
    lines = [
        f"h_low = {fnum(s.h_low)} (player I plays {s.maximin_index.label()})",
        f"h_high = {fnum(s.h_high)} (player II plays {s.minimax_index.label()})",
        "pure equilibrium: " + ("yes" if eq else "none"),
    ]
    return data, lines


def cmd_pure_ne(g, args, tol):
    eq = pure_equilibria(g, tol)
    data = {"equilibria": [[i.label(), j.label()] for i, j in eq]}
    lines = [f"{i.label()} vs {j.label()}" for i, j in eq] or ["no pure equilibrium"]
    return data, lines


def _trace_lines(trace, reduced):
    lines = [c.describe() for c in trace.claims] or ["no dominated rows or columns"]
    lines.append(
        f"surviving rows: {[r + 1 for r in trace.rows]}, columns: {[c + 1 for c in trace.cols]}"
    )
    for i, row in enumerate(reduced.A):
        lines.append(f"  reduced row {i + 1}: " + ", ".join(fcomplex(c) for c in row))
    return lines


def _trace_json(trace, reduced):
    return {
        "claims": [_claim_json(c) for c in trace.claims],
        "rows": [r + 1 for r in trace.rows],
        "cols": [c + 1 for c in trace.cols],
        "reduced_matrix": [jvec(r) for r in reduced.A],
    }


def cmd_eliminate(g, args, tol):
    reduced, trace = iterated_eliminate(g, tol)
    return _trace_json(trace, reduced), _trace_lines(trace, reduced)


def cmd_equalize(g, args, tol):
    row, col = equalizing_sides(g, tol)
    eq = equalizing_equilibrium(g, tol, (row, col))
    data = {"row": _side_json(row), "column": _side_json(col), "value": eq.value if eq else None}
    lines = _side_text(row) + _side_text(col)
    lines.append(f"equalizing value: {fnum(eq.value)}" if eq else "no equalizing equilibrium")
    return data, lines


def cmd_solve(g, args, tol):
    r = solve(g, args.method, tol)
    f = r.final
    data = {
        "h_low": r.pure.h_low,
        "h_high": r.pure.h_high,
        "pure_equilibrium_exists": bool(r.pure_equilibria),
    }
    lines = [
        f"h_low = {fnum(r.pure.h_low)}, h_high = {fnum(r.pure.h_high)}",
        "pure equilibrium: " + ("yes" if r.pure_equilibria else "none"),
    ]
    if r.trace is not None:
        data["elimination"] = _trace_json(r.trace, r.reduced)
        lines.append("elimination:")
        lines.extend("  " + s for s in _trace_lines(r.trace, r.reduced))
        row, col = r.equalizing_sides
        data["equalizing"] = {
            "row": _side_json(row),
            "column": _side_json(col),
            "reduced_value": r.equalizing.value if r.equalizing else None,
        }
        lines.append("equalizing strategies on the reduced game:")
        lines.extend("  " + s for s in _side_text(row) + _side_text(col))
        if r.equalizing is not None:
            lines.append(f"  reduced-game value: {fnum(r.equalizing.value)}")
    if r.elimination_conditions is not None:
        data["elimination_conditions"] = [
            {"claim": _claim_json(v.claim), "target_im": v.target_im,
             "dominator_im": v.dominator_im, "met": bool(v.met)}
            for v in r.elimination_conditions
        ]
        data["lifted_verification"] = _verification_json(r.lifted_verification)
        lines.append("elimination conditions:")
        for v in r.elimination_conditions:
            lines.append(
                f"  {v.claim.describe()}: Im {fnum(v.target_im)} vs {fnum(v.dominator_im)}"
                f" -> {'met' if v.met else 'not met'}"
            )
        lines.append(
            "  lifted strategies on the full game: "
            + ("pass" if r.lifted_verification.passed else "fail")
        )
    if r.lp_result is not None:
        data["lp"] = {"v_low": r.lp_result.v_low, "v_high": r.lp_result.v_high,
                      "gap": r.lp_result.gap}
        lines.append(
            f"LP on the full game: v_low = {fnum(r.lp_result.v_low)}, "
            f"v_high = {fnum(r.lp_result.v_high)}"
        )
    data["final"] = {
        "value": f.value, "z": jvec(f.z), "w": jvec(f.w), "method": f.method,
        "verified": f.verified, "fair": f.fair,
    }
    lines += [
        f"value: {fnum(f.value)}",
        f"z: {fvec(f.z)}",
        f"w: {fvec(f.w)}",
        f"method: {f.method}, verified: {f.verified}, fair: {f.fair}",
    ]
    return data, lines


def cmd_verify(g, args, tol):
    z = _strategy_arg(args.z, "--z")
    w = _strategy_arg(args.w, "--w")
    rep = verify_equilibrium(g, EquilibriumCandidate(z, w), tol)
    return _verification_json(rep), _verification_text(rep)


def cmd_lcp(g, args, tol):
    inst = build_lcp(g)
    data = {"M": [jvec(r) for r in inst.M], "q": jvec(inst.q), "gamma": inst.gamma.tolist()}
    lines = [f"size: {inst.size}", f"q: {fvec(inst.q)}",
             "gamma: (" + ", ".join(fnum(x) for x in inst.gamma) + ")"]
    for i, row in enumerate(inst.M):
        lines.append(f"M row {i + 1}: " + ", ".join(fcomplex(c) for c in row))
    x = None
    if args.x is not None:
        x = _strategy_arg(args.x, "--x")
        if x.shape[0] != inst.size:
            raise InputError(f"--x: expected {inst.size} entries, got {x.shape[0]}")
    elif args.from_lp:
        res = minimax(g, tol)
        if res.value <= 0:
            data["verification"] = None
            lines.append("verification skipped: game value is not positive")
            return data, lines
        x = lcp_candidate(g, res)
    if x is not None:
        rep = verify_lcp(inst, x, tol)
        data["verification"] = {
            "x": jvec(x), "passed": bool(rep.passed), "residual": rep.residual,
            "x_violations": [k + 1 for k in rep.x_violations],
            "y_violations": [k + 1 for k in rep.y_violations],
        }
        lines.append(f"x: {fvec(x)}")
        lines.append(
            f"verdict: {'pass' if rep.passed else 'fail'}, residual {fnum(rep.residual)}"
        )
        lines.extend(f"x[{k + 1}] outside its cone" for k in rep.x_violations)
        lines.extend(f"y[{k + 1}] outside its cone" for k in rep.y_violations)
    return data, lines


COMMANDS = {
    "info": (cmd_info, "dimensions, arguments and classification"),
    "security": (cmd_security, "pure security levels"),
    "pure-ne": (cmd_pure_ne, "pure equilibria"),
    "eliminate": (cmd_eliminate, "iterated elimination of dominated strategies"),
    "equalize": (cmd_equalize, "equalizing strategies of both players"),
    "solve": (cmd_solve, "full solution with certificate"),
    "verify": (cmd_verify, "check a supplied strategy pair"),
    "lcp": (cmd_lcp, "complementarity instance and optional check"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="complexgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("game", help="path to a game file")
        p.add_argument("--tol", type=float, default=None,
                       help=f"value tolerance (default {DEFAULT_TOL.eps_val:g})")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "solve":
            p.add_argument("--method", choices=METHODS, default="auto")
        if name == "verify":
            p.add_argument("--z", required=True, help="player I strategy as JSON [[re, im], ...]")
            p.add_argument("--w", required=True, help="player II strategy as JSON [[re, im], ...]")
        if name == "lcp":
            grp = p.add_mutually_exclusive_group()
            grp.add_argument("--x", help="point to check, as JSON [[re, im], ...]")
            grp.add_argument("--from-lp", action="store_true",
                             help="check the point built from the minimax solution")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        tol = DEFAULT_TOL if args.tol is None else Tolerances(eps_val=args.tol)
        g = load_game(args.game)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        data, lines = func(g, args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LPError, SolveError, EqualizingInconsistency, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
