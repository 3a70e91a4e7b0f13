"""Acceptance criteria 1 to 10, one test each.

Each test records a PASS or FAIL line, printed in an "acceptance criteria"
section at the end of the pytest run. Run directly with
``python3 tests/test_acceptance.py``.
"""
import math
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from complexgames.domination import COLUMN, ROW, Single, comparison_matrix, dominates_single, iterated_eliminate
from complexgames.equalizing import equalizing_equilibrium
from complexgames.game import (
    ComplexGame,
    EquilibriumCandidate,
    affine_transform,
    pure_security,
    verify_equilibrium,
)
from complexgames.lp import build_lcp, lcp_candidate, minimax, verify_lcp
from complexgames.polytope import Pair, StrategyPolytope
from complexgames.solver import LP, solve

from conftest import ACCEPTANCE_LINES, ALPHA, A_FULL, A_RED, BETA, random_game, random_skew_game

H_LOW = (7 - math.sqrt(3)) / 4
ARGS = (math.pi / 6, math.pi / 4, math.pi / 3)


@contextmanager
def criterion(k, text):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES[k] = f"criterion {k:2d}: FAIL  {text}"
        raise
    ACCEPTANCE_LINES[k] = f"criterion {k:2d}: PASS  {text}"


def test_01_pure_security_levels():
    with criterion(1, "pure security levels of the 2x3 example"):
        A = np.array(A_FULL)
        sec = pure_security(ComplexGame(A, ALPHA, BETA))
        assert abs(sec.h_low - H_LOW) <= 1e-9
        assert abs(sec.h_high - 3.0) <= 1e-9
        g = ComplexGame(A, ALPHA, BETA)
        assert g.payoff_table.shape == (4, 9)
        best = math.inf
        for _ in range(20):
            t0 = time.perf_counter()
            pure_security(ComplexGame(A, ALPHA, BETA))
            best = min(best, time.perf_counter() - t0)
        assert best < 0.010


def test_02_domination_of_third_column():
    with criterion(2, "column 3 weakly dominated by column 1, reduction to 2x2"):
        g = ComplexGame(A_FULL, ALPHA, BETA)
        # columns of the player II comparison, negated back to raw payoffs
        R = -comparison_matrix(g, COLUMN)
        P = g.row_polytope
        order = [P.position(k) for k in P.indices]
        np.testing.assert_allclose(R[2, order], [5, 4, 6, 3], atol=1e-12)
        np.testing.assert_allclose(R[0, order], [2, 3, 2, 3], atol=1e-12)
        assert dominates_single(g, COLUMN, 2, 0)
        assert not dominates_single(g, COLUMN, 2, 0, strict=True)
        reduced, trace = iterated_eliminate(g)
        assert [(c.axis, c.target, c.dominator) for c in trace.claims] == [(COLUMN, 2, Single(0))]
        np.testing.assert_array_equal(reduced.A, A_RED)


def test_03_equalizing_on_reduced_game():
    with criterion(3, "equalizing strategies and value 12/5 on the reduced game"):
        g = ComplexGame(A_RED, ALPHA, BETA)
        eq = equalizing_equilibrium(g)
        assert eq is not None
        np.testing.assert_allclose(eq.candidate.z, [2 / 5 + 1j / 5, 3 / 5 - 1j / 5], atol=1e-9, rtol=0)
        np.testing.assert_allclose(eq.candidate.w, [4 / 5 + 3j / 5, 1 / 5 - 3j / 5], atol=1e-9, rtol=0)
        assert abs(eq.value - 12 / 5) <= 1e-9
        assert verify_equilibrium(g, eq.candidate).passed


def test_04_minimax_lp():
    with criterion(4, "minimax LP value 12/5 on the reduced game, 0 on the symmetric game"):
        res = minimax(ComplexGame(A_RED, ALPHA, BETA))
        assert abs(res.v_low - 12 / 5) <= 1e-7 and abs(res.v_high - 12 / 5) <= 1e-7
        sym = minimax(ComplexGame([[0, 1 + 1j], [-1 + 1j, 0]], ALPHA, ALPHA))
        assert abs(sym.v_low) <= 1e-7 and abs(sym.v_high) <= 1e-7


def test_05_random_game_properties():
    with criterion(5, "100 random games: duality gap, sandwich, LP output verifies"):
        rng = np.random.default_rng(20240501)
        for _ in range(100):
            g = random_game(rng, 3, 3, 5.0, ARGS)
            res = minimax(g)
            sec = pure_security(g)
            assert res.gap <= 1e-7
            assert sec.h_low - 1e-7 <= res.value <= sec.h_high + 1e-7
            assert verify_equilibrium(g, EquilibriumCandidate(res.z_opt, res.w_opt)).passed


def test_06_decomposition_round_trip():
    with criterion(6, "decomposition round trip on 9000 random members"):
        rng = np.random.default_rng(7)
        for m in (2, 3, 5):
            for a0 in ARGS:
                P = StrategyPolytope(m, a0)
                D = {k: P.extreme_point(k) for k in P.indices}
                for z in P.sample(rng, size=1000):
                    w = P.decompose(z)
                    rebuilt = sum(v * D[k] for k, v in w.items())
                    assert np.max(np.abs(rebuilt - z)) <= 1e-10
                    assert all(v >= 0 for v in w.values())
                    assert abs(sum(w.values()) - 1) <= 1e-12
                    n_signed = int(np.count_nonzero(z.imag))
                    n_pairs = sum(1 for k in w if isinstance(k, Pair))
                    assert n_pairs <= max(n_signed - 1, 0)


def test_07_affine_transform():
    with criterion(7, "value maps to k*v + c and verdicts are invariant on 50 games"):
        rng = np.random.default_rng(11)
        for _ in range(50):
            g = random_game(rng, 3, 3, 5.0, ARGS)
            rep = solve(g)
            v = rep.final.value
            good = EquilibriumCandidate(rep.final.z, rep.final.w)
            bad = EquilibriumCandidate(g.row_polytope.sample(rng), g.col_polytope.sample(rng))
            for k, c in ((2.0, 1.0), (0.5, -3.0)):
                h = affine_transform(g, k, c)
                assert abs(solve(h).final.value - (k * v + c)) <= 1e-6
                for cand in (good, bad):
                    assert verify_equilibrium(h, cand).passed == verify_equilibrium(g, cand).passed


def test_08_symmetric_games():
    with criterion(8, "20 skew-hermitian games: value 0, (z, z) verifies, domination mirrors"):
        rng = np.random.default_rng(3)
        for t in range(20):
            g = random_skew_game(rng, 2 + t % 3, ARGS[t % 3])
            rep = solve(g)
            assert abs(rep.final.value) <= 1e-7
            z = rep.final.z
            assert verify_equilibrium(g, EquilibriumCandidate(z, z)).passed
            size = g.shape[0]
            for k in range(size):
                for l in range(size):
                    if k == l:
                        continue
                    for strict in (False, True):
                        assert dominates_single(g, ROW, k, l, strict) == dominates_single(
                            g, COLUMN, k, l, strict
                        )


def test_09_full_example_pipeline():
    with criterion(9, "full 2x3 example: lifting fails its condition, LP output verifies"):
        g = ComplexGame(A_FULL, ALPHA, BETA)
        rep = solve(g)
        (cond,) = rep.elimination_conditions
        assert not cond.met
        assert {round(cond.target_im, 12), round(cond.dominator_im, 12)} == {0.0, 0.8}
        assert rep.final.method == LP
        f = rep.final
        assert verify_equilibrium(g, EquilibriumCandidate(f.z, f.w)).passed
        assert H_LOW - 1e-7 <= f.value <= 3 + 1e-7


def test_10_lcp_construction():
    with criterion(10, "LCP blocks for the reduced game and LP-derived point complementary"):
        g = ComplexGame(A_RED, ALPHA, BETA)
        inst = build_lcp(g)
        assert inst.q.tolist() == [1, 1, -1, -1, 0, 0]
        assert inst.gamma.tolist() == [ALPHA, ALPHA, BETA, BETA, math.pi / 2, math.pi / 2]
        x = lcp_candidate(g, minimax(g))
        rep = verify_lcp(inst, x)
        assert rep.residual <= 1e-7
        assert rep.passed


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
