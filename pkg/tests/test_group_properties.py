"""
Seeded property checks: the multiplication formulas, length bounds on words
and the widths of the commutator and two-square decompositions.
"""
import random

from core_group import (
    LampElement,
    commutator,
    commutator_witness,
    conjugate,
    eval_word,
    in_derived,
    in_V,
    inv,
    mul,
    two_squares_witness,
)
from generators import random_derived_element, random_element, random_v_element, random_word, random_y_word


class TestGroupFormulas:

    def test_formulas_on_random_triples(self):
        """Test product, inverse, square and conjugation formulas on 10^4 triples"""
        rng = random.Random(2024)
        for _ in range(10_000):
            g = random_element(rng, 6, 8)
            h = random_element(rng, 6, 8)
            z = random_element(rng, 6, 8)
            assert mul(mul(g, h), z) == mul(g, mul(h, z))
            assert mul(g, inv(g)).is_identity()
            assert g.square() == LampElement(2 * g.delta, g.lamps.shift(g.delta) + g.lamps)
            expected = LampElement(g.delta, g.lamps.shift(z.delta) + z.lamps + z.lamps.shift(g.delta))
            assert conjugate(g, z) == expected

    def test_homomorphism_from_words(self):
        rng = random.Random(7)
        for _ in range(2000):
            u = random_word(rng, rng.randint(0, 20))
            v = random_word(rng, rng.randint(0, 20))
            assert eval_word(u + v) == mul(eval_word(u), eval_word(v))
            assert eval_word(u.inverse()) == inv(eval_word(u))
            assert eval_word(u.reduced()) == eval_word(u)


class TestWordBounds:

    def test_displacement_and_diameter(self):
        """Test |delta| <= |w| and diam <= |w| on random words"""
        rng = random.Random(31)
        for _ in range(10_000):
            w = random_word(rng, rng.randint(1, 30))
            g = eval_word(w)
            assert abs(g.delta) <= len(w)
            if g.lamps:
                assert g.lamps.diam() <= len(w)

    def test_diameter_in_y(self):
        """Test diam <= |w|/2 - 1 for words with t-exponent sum 0"""
        rng = random.Random(32)
        for _ in range(10_000):
            w = random_y_word(rng, rng.randint(0, 24))
            g = eval_word(w)
            assert g.delta == 0
            if g.lamps and len(w) >= 2:
                assert 2 * g.lamps.diam() <= len(w) - 2


class TestDecompositionWidths:

    def test_single_commutator(self):
        rng = random.Random(41)
        for _ in range(1000):
            g = random_derived_element(rng, 12)
            assert in_derived(g)
            x, y = commutator_witness(g)
            assert commutator(x, y) == g

    def test_two_squares(self):
        rng = random.Random(42)
        for _ in range(1000):
            g = random_v_element(rng, 5, 12)
            assert in_V(g)
            x, y = two_squares_witness(g)
            assert mul(x.square(), y.square()) == g
