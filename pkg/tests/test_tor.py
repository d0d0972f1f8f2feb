"""Upsilon ladders: Tor maps along the power filtration."""

import pytest

from lindef.errors import AlgebraError, LindefError
from lindef.presentation import algebra_from_text
from lindef.resolution import resolve
from lindef.tor_ladder import (
    msquared_preimage_condition,
    tor_ladder,
    upsilon,
    upsilon_defect_profile,
    upsilon_one_implies_two,
)


def ring(text):
    return algebra_from_text(text)


X3 = ring("vars x\nideal x^3")
X4 = ring("vars x\nideal x^4")
X5 = ring("vars x\nideal x^5")
KOSZUL3 = ring("vars x y z\nideal x^2, x*y, y^2, x*z, y*z, z^2")


def ladder_of(algebra, horizon):
    return tor_ladder(resolve(algebra.residue_field(), horizon + 1), horizon)


class TestFrozenLadders:
    def test_x3_rows(self):
        lad = ladder_of(X3, 6)
        table = lad.rank_table()
        assert table[1] == [1, 0, 1, 0, 1, 0, 1]
        assert table[2] == [1, 0, 0, 0, 0, 0, 0]
        assert table[3] == [1, 0, 0, 0, 0, 0, 0]
        assert lad.forced[(2, 3)] and lad.forced[(3, 0)]
        assert not lad.forced[(1, 2)]

    def test_x4_rows(self):
        lad = ladder_of(X4, 6)
        table = lad.rank_table()
        assert table[1] == [1, 0, 1, 0, 1, 0, 1]
        assert table[2] == [1, 0, 1, 0, 1, 0, 1]
        assert table[3] == [1, 0, 0, 0, 0, 0, 0]
        assert table[4] == [1, 0, 0, 0, 0, 0, 0]

    def test_koszul3_rows(self):
        lad = ladder_of(KOSZUL3, 4)
        table = lad.rank_table()
        assert table[1] == [1, 0, 0, 0, 0]
        assert table[2] == [1, 0, 0, 0, 0]
        # index 2: every row already has free source
        assert all(lad.forced[(n, i)] for n in (1, 2) for i in range(5))


class TestTorDims:
    def test_tor_against_k_recovers_betti(self):
        res = resolve(KOSZUL3.residue_field(), 5)
        lad = tor_ladder(res, 4)
        for i in range(5):
            assert lad.tor_dim(1, i) == res.betti[i]

    def test_tor_against_full_ring_concentrated_at_zero(self):
        lad = ladder_of(X3, 4)
        assert lad.tor_dim(3, 0) == 1  # m^3 = 0, so R/m^3 = R
        for i in range(1, 5):
            assert lad.tor_dim(3, i) == 0

    def test_zero_power_is_zero_module(self):
        lad = ladder_of(X3, 3)
        assert all(lad.tor_dim(0, i) == 0 for i in range(4))
        assert all(lad.rank(0, i) == 0 for i in range(4))

    def test_powers_above_index_saturate(self):
        lad = ladder_of(X3, 3)
        assert lad.rank(99, 0) == 1
        assert lad.rank(99, 2) == 0
        assert lad.tor_dim(99, 0) == 1

    def test_x3_middle_tor_dims(self):
        # Tor_i(k, R/m^2) over x^3: syzygies alternate ann(x)/ann(x^2)
        lad = ladder_of(X3, 4)
        assert [lad.tor_dim(2, i) for i in range(5)] == [1, 1, 1, 1, 1]


class TestSingleCell:
    def test_agrees_with_ladder(self):
        res = resolve(X4.residue_field(), 5)
        lad = tor_ladder(res, 4)
        for n in (1, 2, 3):
            for i in range(5):
                cell = upsilon(res, n, i)
                assert cell["rank"] == lad.rank(n, i)
                assert cell["src_dim"] == lad.tor_dim(n + 1, i)
                assert cell["dst_dim"] == lad.tor_dim(n, i)

    def test_forced_cell_carries_note(self):
        res = resolve(X3.residue_field(), 3)
        cell = upsilon(res, 2, 1)
        assert cell["rank"] == 0
        assert "free module R" in cell["note"]

    def test_honest_cell_has_no_note(self):
        res = resolve(X3.residue_field(), 3)
        assert upsilon(res, 1, 1)["note"] is None

    def test_power_zero_cell(self):
        res = resolve(X3.residue_field(), 2)
        cell = upsilon(res, 0, 1)
        assert cell["rank"] == 0
        assert cell["dst_dim"] == 0
        assert "m^0" in cell["note"]

    def test_matrix_shape_matches_dims(self):
        res = resolve(X4.residue_field(), 4)
        cell = upsilon(res, 1, 2)
        assert cell["matrix"].shape == (cell["src_dim"], cell["dst_dim"])


class TestProfiles:
    def test_x3_profile(self):
        prof = upsilon_defect_profile(ladder_of(X3, 6))
        assert prof["h"] == [0, 1, 0, 1, 0, 1]
        assert prof["dmax"] == 6
        assert prof["classification"] == "defect >= 6"
        assert prof["silence_tail"] is False

    def test_koszul3_profile_clean(self):
        prof = upsilon_defect_profile(ladder_of(KOSZUL3, 4))
        assert prof["h"] == [0, 0, 0, 0]
        assert prof["classification"] == "ld=0 up to horizon"


class TestVanishingStep:
    def test_holds_on_x4(self):
        records = upsilon_one_implies_two(ladder_of(X4, 6))
        assert [r["i"] for r in records] == list(range(7))
        for r in records:
            if r["antecedent"]:
                assert r["holds"] is True
            else:
                assert r["holds"] is None
        assert any(r["antecedent"] for r in records)

    def test_rejected_beyond_m4(self):
        with pytest.raises(AlgebraError, match="m\\^4"):
            upsilon_one_implies_two(ladder_of(X5, 3))


class TestPreimageCondition:
    def test_matches_rank_vanishing(self):
        for A in (X3, X4, KOSZUL3):
            res = resolve(A.residue_field(), 5)
            lad = tor_ladder(res, 4)
            for i in range(5):
                assert msquared_preimage_condition(res, i) == (lad.rank(1, i) == 0)

    def test_index_zero_degenerates(self):
        res = resolve(X3.residue_field(), 2)
        assert msquared_preimage_condition(res, 0) is False

    def test_out_of_range(self):
        res = resolve(X3.residue_field(), 2)
        with pytest.raises(LindefError):
            msquared_preimage_condition(res, 3)


class TestGuards:
    def test_ladder_needs_one_extra_stage(self):
        res = resolve(X3.residue_field(), 4)
        with pytest.raises(LindefError, match="horizon"):
            tor_ladder(res, 4)

    def test_rank_outside_horizon(self):
        lad = ladder_of(X3, 2)
        with pytest.raises(LindefError):
            lad.rank(1, 3)

    def test_single_cell_beyond_horizon(self):
        res = resolve(X3.residue_field(), 2)
        with pytest.raises(LindefError, match="horizon"):
            upsilon(res, 1, 2)

    def test_negative_inputs(self):
        res = resolve(X3.residue_field(), 2)
        with pytest.raises(LindefError):
            upsilon(res, -1, 0)
        with pytest.raises(LindefError):
            upsilon(res, 1, -1)
