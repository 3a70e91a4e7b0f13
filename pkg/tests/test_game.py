import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexgames.game import (
    COLUMN,
    ROW,
    ComplexGame,
    EquilibriumCandidate,
    affine_transform,
    best_response_envelope,
    classify,
    payoff,
    pure_equilibria,
    pure_security,
    verify_equilibrium,
)
from complexgames.polytope import Pair, Trivial

from conftest import ALPHA, BETA, random_game


def brute_table(g):
    """Payoff table by explicit loops over extreme points."""
    Pr, Pc = g.row_polytope, g.col_polytope
    return np.array([
        [sum(np.conj(zi) * g.A[i, j] * wj for i, zi in enumerate(z) for j, wj in enumerate(w)).real
         for w in Pc.extreme_points()]
        for z in Pr.extreme_points()
    ])


class TestConstruction:
    def test_matrix_is_frozen(self, full_game):
        with pytest.raises(ValueError):
            full_game.A[0, 0] = 1

    def test_copies_input(self):
        A = np.ones((2, 2), dtype=complex)
        g = ComplexGame(A, 0.5, 0.5)
        A[0, 0] = 7
        assert g.A[0, 0] == 1

    @pytest.mark.parametrize("bad", [[], [[math.nan]], [[1, math.inf]], [1, 2]])
    def test_rejects_bad_matrix(self, bad):
        with pytest.raises(ValueError):
            ComplexGame(bad, 0.5, 0.5)

    def test_rejects_argument(self):
        with pytest.raises(ValueError, match="argument"):
            ComplexGame([[1]], 0.5, math.pi / 2)


class TestPayoff:
    def test_pair_three_against_third_column(self, full_game):
        z = full_game.row_polytope.extreme_point(Pair(0, 1))
        assert payoff(full_game, z, [0, 0, 1]) == pytest.approx(6, abs=1e-14)

    def test_pair_four_against_third_column(self, full_game):
        z = full_game.row_polytope.extreme_point(Pair(1, 0))
        assert payoff(full_game, z, [0, 0, 1]) == pytest.approx(3, abs=1e-14)

    def test_trivial(self):
        assert payoff(ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA), [1, 0], [1, 0]) == 0

    def test_conjugates_left_argument(self):
        g = ComplexGame([[1j]], 0.5, 0.5)
        assert payoff(g, [1j], [1]) == pytest.approx(1.0)

    def test_dimension_mismatch(self, full_game):
        with pytest.raises(ValueError, match="dimension"):
            payoff(full_game, [1, 0, 0], [1, 0, 0])


class TestPureSecurity:
    def test_full_game(self, full_game):
        s = pure_security(full_game)
        assert s.h_low == pytest.approx((7 - math.sqrt(3)) / 4, abs=1e-12)
        assert s.h_high == pytest.approx(3, abs=1e-12)
        assert s.maximin_index == Pair(0, 1)
        assert s.minimax_index == Trivial(0)

    def test_one_by_one(self):
        s = pure_security(ComplexGame([[2 - 3j]], 0.4, 0.9))
        assert (s.h_low, s.h_high) == (2.0, 2.0)

    def test_no_saddle_matches_enumeration(self):
        g = ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA)
        T = brute_table(g)
        s = pure_security(g)
        assert s.h_low == pytest.approx(T.min(axis=1).max(), abs=1e-14)
        assert s.h_high == pytest.approx(T.max(axis=0).min(), abs=1e-14)
        assert s.h_low < s.h_high

    def test_ties_go_to_first_index(self):
        s = pure_security(ComplexGame(np.ones((2, 2)), 0.5, 0.5))
        assert s.maximin_index == Trivial(0) and s.minimax_index == Trivial(0)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_table_matches_enumeration_and_ordering(self, seed):
        g = random_game(np.random.default_rng(seed))
        np.testing.assert_allclose(g.payoff_table, brute_table(g), atol=1e-12)
        s = pure_security(g)
        assert s.h_low <= s.h_high + 1e-7


class TestPureEquilibria:
    def test_none_without_saddle(self):
        assert pure_equilibria(ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA)) == []

    def test_constant_game(self):
        g = ComplexGame(np.ones((2, 3)), 0.5, 0.7)
        assert len(pure_equilibria(g)) == 4 * 9

    def test_full_game(self, full_game):
        assert pure_equilibria(full_game) == []

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_empty_iff_levels_differ(self, seed):
        rng = np.random.default_rng(seed)
        g = random_game(rng)
        if rng.random() < 0.5:
            g = ComplexGame(np.round(g.A.real), g.a0, g.b0)
        eq = pure_equilibria(g)
        s = pure_security(g)
        assert (not eq) == (s.h_low < s.h_high - 1e-7)
        vals = [payoff(g, g.row_polytope.extreme_point(i), g.col_polytope.extreme_point(j)) for i, j in eq]
        if vals:
            assert max(vals) - min(vals) <= 2e-7


class TestEnvelope:
    def test_flat_for_equalizing_row_strategy(self, reduced_game):
        z = [0.4 + 0.2j, 0.6 - 0.2j]
        vals = [payoff(reduced_game, z, d) for d in reduced_game.col_polytope.extreme_points()]
        assert max(vals) - min(vals) < 1e-12
        v, _ = best_response_envelope(reduced_game, ROW, z)
        assert v == pytest.approx(2.4, abs=1e-12)

    def test_flat_for_equalizing_column_strategy(self, reduced_game):
        v, _ = best_response_envelope(reduced_game, COLUMN, [0.8 + 0.6j, 0.2 - 0.6j])
        assert v == pytest.approx(2.4, abs=1e-12)

    def test_full_game_unit_vector(self, full_game):
        v, wit = best_response_envelope(full_game, ROW, [1, 0])
        T = brute_table(full_game)
        assert v == pytest.approx(T[0].min(), abs=1e-13)
        assert full_game.col_polytope.position(wit) == int(np.argmin(T[0]))

    def test_membership(self, full_game):
        with pytest.raises(ValueError, match="member"):
            best_response_envelope(full_game, ROW, [2, -1])

    def test_bad_side(self, full_game):
        with pytest.raises(ValueError, match="side"):
            best_response_envelope(full_game, "diagonal", [1, 0])


class TestVerify:
    def test_reduced_equilibrium(self, reduced_game):
        rep = verify_equilibrium(
            reduced_game, EquilibriumCandidate([0.4 + 0.2j, 0.6 - 0.2j], [0.8 + 0.6j, 0.2 - 0.6j])
        )
        assert rep.passed and rep.value == pytest.approx(2.4, abs=1e-12)

    def test_constant_game(self):
        rep = verify_equilibrium(ComplexGame(np.ones((2, 2)), 0.5, 0.5), EquilibriumCandidate([1, 0], [1, 0]))
        assert rep.passed and rep.value == pytest.approx(1.0)

    def test_failure_carries_witness(self):
        g = ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA)
        rep = verify_equilibrium(g, EquilibriumCandidate([1, 0], [0, 1]))
        assert not rep.passed and not rep
        assert rep.row_guarantee < rep.value  # player II moves to column 1
        assert rep.row_witness == Trivial(0)
        assert any("deviates" in r for r in rep.reasons)

    def test_membership_is_reported(self):
        g = ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA)
        rep = verify_equilibrium(g, EquilibriumCandidate([1 + 1j, -1j], [1, 0]))
        assert not rep.passed and not rep.z_member and rep.w_member

    def test_dimension_mismatch_is_reported(self):
        g = ComplexGame([[0, 2], [1, 0]], ALPHA, ALPHA)
        assert not verify_equilibrium(g, EquilibriumCandidate([1], [1, 0])).passed


class TestAffine:
    def test_identity(self, reduced_game):
        np.testing.assert_array_equal(affine_transform(reduced_game, 1, 0).A, reduced_game.A)

    def test_entries(self, reduced_game):
        h = affine_transform(reduced_game, 2, 1)
        np.testing.assert_allclose(h.A, 2 * reduced_game.A + 1)
        assert (h.a0, h.b0) == (reduced_game.a0, reduced_game.b0)

    @pytest.mark.parametrize("k", [0, -1])
    def test_rejects_non_positive_scale(self, reduced_game, k):
        with pytest.raises(ValueError, match="positive"):
            affine_transform(reduced_game, k, 0)

    def test_payoff_shift(self):
        # Re(conj(z)^T E w) = Re(conj(sum z) sum w) = 1 on the polytopes
        g = random_game(np.random.default_rng(3))
        rng = np.random.default_rng(4)
        z = g.row_polytope.sample(rng)
        w = g.col_polytope.sample(rng)
        assert payoff(affine_transform(g, 3, -2), z, w) == pytest.approx(3 * payoff(g, z, w) - 2)


class TestClassify:
    def test_symmetric(self):
        c = classify(ComplexGame([[0, 1 + 1j], [-1 + 1j, 0]], ALPHA, ALPHA))
        assert c.square and c.skew_hermitian and c.common_argument and c.symmetric

    def test_reduced_game_not_skew(self, reduced_game):
        c = classify(reduced_game)
        assert c.square and not c.skew_hermitian and not c.symmetric

    def test_skew_without_common_argument(self):
        c = classify(ComplexGame([[0, 1 + 1j], [-1 + 1j, 0]], ALPHA, BETA))
        assert c.skew_hermitian and not c.common_argument and not c.symmetric

    def test_not_square(self, full_game):
        assert not classify(full_game).square

    def test_skew_needs_imaginary_diagonal(self):
        assert classify(ComplexGame([[2j, 1], [-1, -1j]], 0.5, 0.5)).skew_hermitian
        assert not classify(ComplexGame([[1, 1], [-1, 0]], 0.5, 0.5)).skew_hermitian
