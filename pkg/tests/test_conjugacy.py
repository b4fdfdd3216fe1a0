"""
Test suite for conjugacy.py module
"""
import random

import pytest

from conjugacy import (
    CyclicLengthError,
    NonPositiveShiftError,
    cyclic_match,
    find_conjugator,
    find_first,
    is_conjugate,
    prefix_function,
    pull_to_window,
)
from core_group import GroupWord, LampElement, conjugate, eval_word, mul, parse_word
from generators import random_element, random_word
from lamps import LampConfig


def element(word):
    return eval_word(parse_word(word))


class TestStringMatching:

    def test_prefix_function(self):
        assert prefix_function("abab") == [0, 0, 1, 2]
        assert prefix_function("aaaa") == [0, 1, 2, 3]
        assert prefix_function("") == []

    def test_find_first(self):
        assert find_first("ab", "xxab") == 2
        assert find_first("ab", "xxa") is None
        assert find_first("", "abc") == 0

    def test_cyclic_match(self):
        """Test the least rotation with s1[r] == s2[(r + delta) % n]"""
        assert cyclic_match("0110", "1100") == 3
        assert cyclic_match("1100", "1100") == 0
        assert cyclic_match("11", "10") is None
        assert cyclic_match("", "") == 0

    def test_cyclic_match_length_mismatch(self):
        with pytest.raises(CyclicLengthError):
            cyclic_match("01", "011")

    def test_cyclic_match_against_rotations(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(1, 12)
            s = "".join(rng.choice("01") for _ in range(n))
            k = rng.randint(0, n - 1)
            rotated = s[-k:] + s[:-k] if k else s
            delta = cyclic_match(s, rotated)
            assert delta is not None
            assert all(s[r] == rotated[(r + delta) % n] for r in range(n))


class TestDecision:

    def test_examples(self):
        assert is_conjugate(element("a"), element("taT"))
        assert not is_conjugate(element("a"), element("t"))
        assert is_conjugate(element("ta"), element("at"))

    def test_lamp_patterns_must_match(self):
        assert not is_conjugate(element("a"), element("taTa"))
        assert is_conjugate(LampElement.identity(), element("aa"))
        assert not is_conjugate(LampElement.identity(), element("a"))


class TestPullToWindow:

    def test_requires_positive_delta(self):
        with pytest.raises(NonPositiveShiftError):
            pull_to_window(element("a"))
        with pytest.raises(NonPositiveShiftError):
            pull_to_window(element("T"))

    def test_already_in_window(self):
        g = LampElement(3, LampConfig.from_positions([0, 2]))
        word, result = pull_to_window(g)
        assert word == GroupWord()
        assert result == g

    def test_window_postcondition(self):
        """Test that pulled lamps land in 0..delta-1 and the conjugator is exact"""
        rng = random.Random(17)
        for _ in range(1000):
            g = random_element(rng, 6, 15)
            if g.delta <= 0:
                g = LampElement(1 - g.delta, g.lamps)
            word, result = pull_to_window(g)
            assert conjugate(g, eval_word(word)) == result
            if result.lamps:
                assert result.lamps.low >= 0
                assert result.lamps.high <= g.delta - 1


class TestFindConjugator:

    def test_translate_example(self):
        answer = find_conjugator(element("a"), element("taT"))
        assert answer.conjugate
        assert answer.conjugator == GroupWord("T")
        assert answer.shift == -1

    def test_rotation_example(self):
        c1, c2 = element("ta"), element("at")
        answer = find_conjugator(c1, c2)
        assert answer.conjugate
        assert answer.conjugator == GroupWord("a")
        assert answer.shift == 0
        assert conjugate(c1, eval_word(answer.conjugator)) == c2

    def test_negative_answers(self):
        assert not find_conjugator(element("a"), element("t")).conjugate
        assert not find_conjugator(element("a"), element("taTa")).conjugate
        assert not find_conjugator(element("t^2 a"), element("t^2")).conjugate

    def test_negative_delta(self):
        c1 = element("T^3 a t a")
        z = element("a t^2 a")
        answer = find_conjugator(c1, conjugate(c1, z))
        assert answer.conjugate
        assert conjugate(c1, eval_word(answer.conjugator)) == conjugate(c1, z)

    def test_random_conjugate_pairs(self):
        """Test 10^4 random (g, z^-1 g z) pairs: decided yes, short verified conjugator"""
        rng = random.Random(99)
        for _ in range(10_000):
            w = random_word(rng, rng.randint(0, 200))
            v = random_word(rng, rng.randint(0, 200))
            g, z = eval_word(w), eval_word(v)
            c2_word = v.inverse() + w + v
            c2 = eval_word(c2_word)
            assert is_conjugate(g, c2)
            answer = find_conjugator(g, c2)
            assert answer.conjugate
            assert conjugate(g, eval_word(answer.conjugator)) == c2
            assert len(answer.conjugator) <= 8 * (len(w) + len(c2_word))

    def test_random_non_conjugate_pairs(self):
        """Test 10^4 pairs whose lamp parities differ"""
        rng = random.Random(100)
        for _ in range(10_000):
            g = eval_word(random_word(rng, rng.randint(0, 200)))
            z = eval_word(random_word(rng, rng.randint(0, 200)))
            other = mul(conjugate(g, z), LampElement.a())
            assert not is_conjugate(g, other)
            assert not find_conjugator(g, other).conjugate


WINDOW = 12  # lamps of f^eps and h + h^delta stay within [-12, 12]


def window_mask(f):
    return f.aligned(-WINDOW) if f else 0


def reduce_mask(basis, v):
    for top in sorted(basis, reverse=True):
        if (v >> top) & 1:
            v ^= basis[top]
    return v


def lamp_span(delta, radius):
    """Echelon basis of {h + h^delta : supp(h) in [-radius, radius]}, keyed by leading bit."""
    basis = {}
    for j in range(-radius, radius + 1):
        lamp = LampConfig.monomial(j)
        v = reduce_mask(basis, window_mask(lamp + lamp.shift(delta)))
        if v:
            basis[v.bit_length() - 1] = v
    return basis


class TestCompleteness:

    @pytest.mark.slow
    def test_against_bounded_conjugators(self):
        """
        Test every pair with |delta| <= 3 and lamps in [-4, 4] against all
        conjugators z = (eps, h) with |eps| <= 8 and supp(h) in [-8, 8].

        z^-1 (delta, f) z = (delta, f^eps + h + h^delta), so for each eps the
        reachable lamp sets form a coset of the span of h + h^delta and two
        configurations are compared through their reduced coset representatives.
        """
        configs = [LampConfig(-4, m) for m in range(1 << 9)]
        for delta in range(-3, 4):
            basis = lamp_span(delta, 8)
            keys = [reduce_mask(basis, window_mask(f)) for f in configs]
            for f1 in configs:
                g = LampElement(delta, f1)
                orbit = {reduce_mask(basis, window_mask(f1.shift(eps))) for eps in range(-8, 9)}
                for f2, key in zip(configs, keys):
                    assert is_conjugate(g, LampElement(delta, f2)) == (key in orbit), (delta, f1, f2)

    def test_sampled_pairs_against_bounded_conjugators(self):
        """Test a seeded sample of the same family, including the conjugators found"""
        rng = random.Random(41)
        for _ in range(400):
            delta = rng.randint(-3, 3)
            basis = lamp_span(delta, 8)
            f1 = LampConfig(-4, rng.getrandbits(9))
            g = LampElement(delta, f1)
            if rng.random() < 0.5:
                z = LampElement(rng.randint(-8, 8), LampConfig(-8, rng.getrandbits(17)))
                f2 = conjugate(g, z).lamps
            else:
                f2 = LampConfig(-4, rng.getrandbits(9))
            orbit = {reduce_mask(basis, window_mask(f1.shift(eps))) for eps in range(-8, 9)}
            expected = reduce_mask(basis, window_mask(f2)) in orbit
            c2 = LampElement(delta, f2)
            answer = find_conjugator(g, c2)
            assert answer.conjugate == expected
            if expected:
                assert conjugate(g, eval_word(answer.conjugator)) == c2
