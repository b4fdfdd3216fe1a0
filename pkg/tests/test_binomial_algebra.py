"""
Test suite for binomial_algebra.py module
"""
import random
from functools import reduce
from math import gcd

import pytest

from binomial_algebra import (
    AllZeroModuliError,
    LiftPreconditionError,
    NotInKernelError,
    Residues,
    bezout_binomials,
    divide_by_binomial,
    lift_certificate,
    project,
)
from lamps import LampConfig


def lamps(*positions):
    return LampConfig.from_positions(positions)


def naive_projection(f, d):
    mask = 0
    for p in f.support():
        mask ^= 1 << (p % d)
    return mask


def random_lamps(rng, radius=12):
    return LampConfig(rng.randint(-radius, radius), rng.getrandbits(2 * radius))


class TestProject:

    def test_small_examples(self):
        """Test parities per residue class"""
        assert project(lamps(0, 1, 2, 3), 2).is_zero()
        assert project(lamps(0, 1, 2), 2).mask == 0b10
        assert project(lamps(0, 1, 2), 2).bitstring() == "01"
        assert project(lamps(-1), 3).bitstring() == "001"

    def test_modulus_zero_is_identity(self):
        f = lamps(-3, 4)
        assert project(f, 0) == Residues(0, f)
        assert project(f, 0).bitstring() == "10000001"

    def test_negative_modulus_rejected(self):
        with pytest.raises(ValueError):
            project(lamps(0), -1)

    def test_matches_naive_fold(self):
        rng = random.Random(3)
        for _ in range(500):
            f = random_lamps(rng, 30)
            d = rng.randint(1, 17)
            assert project(f, d).mask == naive_projection(f, d)

    def test_shift_rotates_residues(self):
        """Test pi_d(f^s) == rotate(pi_d(f), s)"""
        rng = random.Random(4)
        for _ in range(500):
            f = random_lamps(rng)
            d = rng.randint(1, 9)
            s = rng.randint(-20, 20)
            assert project(f.shift(s), d) == project(f, d).rotate(s)

    def test_residue_addition(self):
        r = Residues.from_mask(3, 0b011) + Residues.from_mask(3, 0b110)
        assert r.mask == 0b101
        with pytest.raises(ValueError):
            Residues.from_mask(3, 1) + Residues.from_mask(4, 1)


class TestBezout:

    def test_two_three(self):
        """Test x * (x^2 + 1) + 1 * (x^3 + 1) == x + 1"""
        combo = bezout_binomials([2, 3])
        assert combo.gcd == 1
        assert combo.coefficients == (lamps(1), lamps(0))
        assert combo.evaluate() == lamps(0, 1)

    def test_negative_modulus(self):
        combo = bezout_binomials([-2])
        assert combo.gcd == 2
        assert combo.evaluate() == lamps(0, 2)

    def test_zero_moduli_are_skipped(self):
        combo = bezout_binomials([0, 4, 6])
        assert combo.gcd == 2
        assert combo.coefficients[0] == LampConfig.zero()

    def test_all_zero_rejected(self):
        with pytest.raises(AllZeroModuliError):
            bezout_binomials([0, 0])
        with pytest.raises(AllZeroModuliError):
            bezout_binomials([])

    def test_random_moduli(self):
        rng = random.Random(8)
        for _ in range(200):
            bs = [rng.randint(-15, 15) for _ in range(rng.randint(1, 4))]
            if not any(bs):
                bs.append(1)
            combo = bezout_binomials(bs)
            assert combo.evaluate() == lamps(0, combo.gcd)


class TestDivision:

    def test_exact_division(self):
        assert divide_by_binomial(lamps(0, 2), 2) == lamps(0)
        assert divide_by_binomial(LampConfig.zero(), 5) == LampConfig.zero()

    def test_not_in_kernel(self):
        with pytest.raises(NotInKernelError):
            divide_by_binomial(lamps(0, 1), 2)
        with pytest.raises(NotInKernelError):
            divide_by_binomial(lamps(0), 3)

    def test_modulus_must_be_positive(self):
        with pytest.raises(ValueError):
            divide_by_binomial(lamps(0), 0)

    def test_round_trip(self):
        rng = random.Random(9)
        for _ in range(300):
            q = random_lamps(rng)
            d = rng.randint(1, 10)
            assert divide_by_binomial(q.times_binomial(d), d) == q


class TestLift:

    def test_lift_reproduces_target(self):
        target = lamps(0, 5)
        lifted = lift_certificate([2, 3], target)
        total = LampConfig.zero()
        for b, f in zip([2, 3], lifted):
            total = total + f.times_binomial(b)
        assert total == target

    def test_odd_target_rejected(self):
        with pytest.raises(LiftPreconditionError):
            lift_certificate([2, 3], lamps(0))

    def test_zero_moduli(self):
        assert lift_certificate([0, 0], LampConfig.zero()) == [LampConfig.zero(), LampConfig.zero()]
        with pytest.raises(LiftPreconditionError):
            lift_certificate([0, 0], lamps(1))

    def test_random_lifts(self):
        rng = random.Random(10)
        for _ in range(200):
            bs = [rng.randint(-8, 8) for _ in range(rng.randint(1, 4))]
            if not any(bs):
                bs[0] = 3
            d = reduce(gcd, (abs(b) for b in bs), 0)
            target = random_lamps(rng).times_binomial(d)
            lifted = lift_certificate(bs, target)
            total = LampConfig.zero()
            for b, f in zip(bs, lifted):
                total = total + f.times_binomial(b)
            assert total == target
