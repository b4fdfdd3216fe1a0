"""
Test suite for lamps.py module
"""
import random

import pytest

from lamps import EmptySupportError, LampConfig, LampTape, OddParityError


def lamps(*positions):
    return LampConfig.from_positions(positions)


class TestLampConfigReads:

    def test_from_positions_cancels_repeats(self):
        """Test that a position listed twice is toggled off again"""
        assert lamps(0, 2, 2, 5).support() == [0, 5]

    def test_wide_dense_support(self):
        """Test listing and building a long run of lamps against the packed mask"""
        n = 200_000
        run = LampConfig.from_positions(range(-n // 2, n // 2))
        assert run.base == -n // 2
        assert run.mask == (1 << n) - 1
        assert run.support() == list(range(-n // 2, n // 2))
        sparse = LampConfig(-7, (1 << 150_000) | (1 << 70_000) | 1)
        assert sparse.support() == [-7, 69_993, 149_993]
        assert LampConfig.from_positions(sparse.support()) == sparse

    def test_support_matches_bits(self):
        rng = random.Random(8)
        for _ in range(300):
            f = LampConfig(rng.randint(-50, 50), rng.getrandbits(rng.randint(0, 90)))
            expected = [p for p in range(f.base, f.base + f.width()) if f.bit(p)]
            assert f.support() == expected
            assert LampConfig.from_positions(expected + [3, 3]) == f

    def test_normalized_storage(self):
        """Test that equal configurations compare equal whatever their base"""
        assert LampConfig(3, 0b100) == LampConfig(5, 1)
        assert LampConfig(7, 0) == LampConfig.zero()

    def test_negative_mask_rejected(self):
        with pytest.raises(ValueError):
            LampConfig(0, -1)

    def test_low_high_diam(self):
        f = lamps(-2, 3)
        assert f.low == -2
        assert f.high == 3
        assert f.diam() == 5
        assert f.width() == 6

    def test_empty_support_errors(self):
        """Test m, M and diam on the empty configuration"""
        empty = LampConfig.zero()
        with pytest.raises(EmptySupportError):
            _ = empty.low
        with pytest.raises(EmptySupportError):
            _ = empty.high
        with pytest.raises(EmptySupportError):
            empty.diam()
        assert empty.width() == 0

    def test_popcount_and_parity(self):
        f = lamps(-1, 0, 4)
        assert f.popcount() == 3
        assert f.parity() == 1
        assert lamps(1, 2).parity() == 0

    def test_membership_and_iteration(self):
        f = lamps(0, 2)
        assert 2 in f
        assert 1 not in f
        assert "a" not in f
        assert list(f) == [0, 2]
        assert f.bit(-5) == 0

    def test_bitstring_window(self):
        """Test reading f(start) .. f(start + length - 1)"""
        assert lamps(0, 2).bitstring(-1, 5) == "01010"
        assert lamps(0, 2).bitstring(1, 2) == "01"
        assert lamps(0).bitstring(0, 0) == ""

    def test_aligned(self):
        assert lamps(2).aligned(0) == 4
        assert LampConfig.zero().aligned(10) == 0
        with pytest.raises(ValueError):
            lamps(2).aligned(3)

    def test_repr(self):
        assert repr(lamps(0, 2)) == "LampConfig({0,2})"


class TestLampArithmetic:

    def test_shift_moves_support_left(self):
        """Test that f^b moves the support by -b"""
        assert lamps(0, 1).shift(4) == lamps(-4, -3)
        assert LampConfig.zero().shift(3) == LampConfig.zero()

    def test_times_monomial(self):
        assert lamps(0).times_monomial(2) == lamps(2)

    def test_addition_is_symmetric_difference(self):
        assert lamps(0, 1) + lamps(1, 2) == lamps(0, 2)
        assert lamps(0, 1) ^ lamps(0, 1) == LampConfig.zero()
        assert lamps(3) - LampConfig.zero() == lamps(3)

    def test_carry_less_product(self):
        """Test polynomial multiplication over GF(2)"""
        assert lamps(0, 1) * lamps(0, 1) == lamps(0, 2)
        assert lamps(-1, 0) * lamps(1) == lamps(0, 1)
        assert lamps(0) * LampConfig.zero() == LampConfig.zero()

    def test_times_binomial(self):
        assert lamps(0).times_binomial(3) == lamps(0, 3)
        assert lamps(0).times_binomial(0) == LampConfig.zero()

    def test_prefix_parity(self):
        """Test g(j) = sum of f(i) for i <= j"""
        assert lamps(0, 3).prefix_parity() == lamps(0, 1, 2)
        assert lamps(-2, -1, 4, 6).prefix_parity() == lamps(-2, 4, 5)
        with pytest.raises(OddParityError):
            lamps(0).prefix_parity()

    def test_prefix_parity_inverts_binomial(self):
        """Test that (1 + x) * prefix_parity(f) == f on random even configurations"""
        rng = random.Random(11)
        for _ in range(300):
            f = LampConfig(rng.randint(-20, 20), rng.getrandbits(40))
            if f.parity():
                f = f + lamps(rng.randint(-30, 30))
            g = f.prefix_parity()
            assert g.times_binomial(1) == f

    def test_ring_laws(self):
        rng = random.Random(5)
        for _ in range(300):
            f, g, h = (LampConfig(rng.randint(-10, 10), rng.getrandbits(24)) for _ in range(3))
            assert f * (g + h) == f * g + f * h
            assert f * g == g * f
            assert (f * g).shift(2) == f.shift(2) * g


class TestLampTape:

    def test_toggle_both_directions(self):
        tape = LampTape()
        for p in (0, -3, 2, 2):
            tape.toggle(p)
        assert tape.freeze().support() == [-3, 0]

    def test_empty_tape(self):
        assert LampTape().freeze() == LampConfig.zero()
