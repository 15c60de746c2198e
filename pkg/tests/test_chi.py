"""The chi invariant on the norm set M and the witness search."""

from fractions import Fraction

import pytest

from chatelet.chi import ChiValue, SearchGrid, chi, find_witness, in_M, sample_M, verify_ramified_disjunction
from chatelet.padic import rational_is_square
from chatelet.quadratic import build_extension

GRID2 = SearchGrid(max_abs_valuation=3, residue_depth=4)
GRID_ODD = SearchGrid(max_abs_valuation=3, residue_depth=1)


class TestMembership:
    def test_zero_always_in_M(self):
        assert in_M(5, 0, 2, 5)
        assert in_M(2, 0, 5, 2)

    def test_membership_is_norm_condition(self):
        # over Q_3 with d = 2: x = 1 gives 1*(1-3) = -2, a norm from
        # Q_3(sqrt 2) iff v(-2) is even (unramified criterion)
        assert in_M(3, 1, 2, 3)
        # (1/3)((1/9) - 3) = -26/27 has odd valuation -3, hence not a norm
        assert not in_M(3, Fraction(1, 3), 2, 3)

    def test_zero_or_two_nonnorm_factors(self):
        # for x in M \ {0} the factors x and x^2 - e are non-norms in pairs
        for (p, d, e, grid) in [(2, 5, 2, GRID2), (3, 2, 3, GRID_ODD),
                                (5, 2, 5, GRID_ODD)]:
            L = build_extension(p, d)
            for x in sample_M(p, d, e, grid=grid):
                if x == 0:
                    continue
                bad = sum(1 for t in (x, x * x - e) if not L.is_norm(t))
                assert bad in (0, 2), (p, d, e, x)


class TestChi:
    def test_defined_only_on_M(self):
        with pytest.raises(ValueError):
            chi(3, Fraction(1, 3), 2, 3)

    def test_diagonal_law(self):
        # the two coordinates agree everywhere on M
        for (p, d, e, grid) in [(2, 5, 2, GRID2), (3, 2, 3, GRID_ODD)]:
            for x in sample_M(p, d, e, grid=grid):
                value = chi(p, x, d, e)
                assert value.first == value.second, (p, d, e, x)

    def test_trivial_when_extensions_coincide(self):
        # d = 2, e = 18 define the same extension of Q_5
        for x in sample_M(5, 2, 18, grid=GRID_ODD):
            assert chi(5, x, 2, 18).as_tuple() == (0, 0)

    def test_value_at_zero(self):
        # chi(0) tests -e against the norms of L
        L = build_extension(2, 5)
        expected = 0 if L.is_norm(-2) else 1
        assert chi(2, 0, 5, 2).first == expected

    def test_chivalue_protocol(self):
        v = ChiValue(1, 1)
        assert tuple(v) == (1, 1)
        assert v.as_tuple() == (1, 1)


class TestWitness:
    def test_witness_found_in_z2_case(self):
        w = find_witness(2, 5, 2, grid=GRID2)
        assert w is not None
        assert chi(2, w, 5, 2).as_tuple() == (1, 1)

    def test_no_witness_when_extensions_coincide(self):
        assert find_witness(5, 2, 18, grid=GRID_ODD) is None

    def test_no_witness_in_zero_case(self):
        # v(e) = 0 mod 4 with L unramified: classifier says 0
        assert find_witness(2, 5, 3, grid=GRID2) is None

    def test_witness_is_deterministic(self):
        a = find_witness(2, 5, 2, grid=GRID2)
        b = find_witness(2, 5, 2, grid=GRID2)
        assert a == b

    def test_grid_candidate_order(self):
        g = SearchGrid(max_abs_valuation=1, residue_depth=1)
        first = list(g.candidates(3))[:4]
        assert first[0] == 0
        assert all(x != 0 for x in first[1:])


class TestSearchGrid:
    def test_candidates_are_unique(self):
        xs = list(GRID2.candidates(2))
        assert len(xs) == len(set(xs))

    def test_valuation_window_respected(self):
        from chatelet.padic import frac_val_unit
        for x in GRID_ODD.candidates(5):
            if x == 0:
                continue
            assert abs(frac_val_unit(5, x)[0]) <= 3


class TestRamifiedDisjunction:
    def test_example_d2_e6(self):
        assert verify_ramified_disjunction(2, 6)

    def test_depth_three_variant(self):
        assert verify_ramified_disjunction(2, 24)

    def test_rejects_wrong_d_valuation(self):
        with pytest.raises(ValueError):
            verify_ramified_disjunction(3, 6)

    def test_rejects_wrong_e_valuation(self):
        with pytest.raises(ValueError):
            verify_ramified_disjunction(2, 3)

    def test_rejects_isomorphic_extensions(self):
        with pytest.raises(ValueError):
            verify_ramified_disjunction(2, 2)

    def test_exhaustive_over_unit_window(self):
        # all ramified d of valuation 1, both e-depths, e-units mod 16
        for d in (2, -2, 10, -10):
            for v_e in (1, 3):
                for u in range(1, 16, 2):
                    e = Fraction(u * 2 ** v_e)
                    if rational_is_square(2, Fraction(e, d)):
                        continue  # isomorphic L, E: outside the disjunction's scope
                    assert verify_ramified_disjunction(d, e), (d, e)
