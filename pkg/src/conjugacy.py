"""
Conjugacy in L2: a linear-time decision and a linear-length conjugator.

For delta = 0 conjugation only translates the lamps, so two elements are
conjugate exactly when one lamp pattern is a translate of the other. For
delta != 0 conjugation can move any lamp by multiples of delta, so only the
parities per residue class mod |delta| survive, up to a cyclic rotation.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from binomial_algebra import project
from core_group import GroupWord, LampElement, conjugate, eval_word, inv, normal_form_word
from lamps import LampConfig, LampError, WitnessCheckError

logger = logging.getLogger(__name__)


class CyclicLengthError(LampError):
    pass


class NonPositiveShiftError(LampError):
    pass


@dataclass(frozen=True)
class ConjugacyAnswer:
    conjugate: bool
    conjugator: Optional[GroupWord] = None
    shift: Optional[int] = None


def prefix_function(pattern: Sequence) -> List[int]:
    """pi[i] = length of the longest proper border of pattern[:i + 1]."""
    pi = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k > 0 and pattern[i] != pattern[k]:
            k = pi[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        pi[i] = k
    return pi


def find_first(pattern: Sequence, text: Sequence) -> Optional[int]:
    """Index of the first occurrence of pattern in text (Knuth-Morris-Pratt)."""
    if not pattern:
        return 0
    pi = prefix_function(pattern)
    k = 0
    for i, ch in enumerate(text):
        while k > 0 and ch != pattern[k]:
            k = pi[k - 1]
        if ch == pattern[k]:
            k += 1
        if k == len(pattern):
            return i - k + 1
    return None


def cyclic_match(s1: Sequence, s2: Sequence) -> Optional[int]:
    """Least delta in [0, n) with s1[r] == s2[(r + delta) % n] for every r, or None."""
    if len(s1) != len(s2):
        raise CyclicLengthError(f"cannot rotate a length {len(s2)} string onto length {len(s1)}")
    if not s1:
        return 0
    return find_first(s1, s2 + s2[:-1])


def is_conjugate(c1: LampElement, c2: LampElement) -> bool:
    if c1.delta != c2.delta:
        return False
    if c1.delta == 0:
        f1, f2 = c1.lamps, c2.lamps
        if not f1 or not f2:
            return not f1 and not f2
        return f1.mask == f2.mask
    d = abs(c1.delta)
    s1 = project(c1.lamps, d).bitstring()
    s2 = project(c2.lamps, d).bitstring()
    return cyclic_match(s2, s1) is not None


def pull_to_window(g: LampElement) -> Tuple[GroupWord, LampElement]:
    """
    Conjugate g = (delta, f), delta > 0, until every lamp sits in 0..delta-1.

    Lamps right of the window are pulled delta places left, rightmost first;
    lamps left of it are pulled delta places right, leftmost first. Each pull
    is conjugation by a single lamp t^i a t^-i, and the pulls commute, so the
    conjugator is (0, H) with H the set of pulled positions.
    """
    delta = g.delta
    if delta <= 0:
        raise NonPositiveShiftError(f"pull_to_window needs delta > 0, got {delta}")
    f = g.lamps
    if not f or (f.low >= 0 and f.high < delta):
        return GroupWord(), g

    lo = min(f.low, 0)
    hi = max(f.high, delta - 1)
    bits = bytearray(hi - lo + 1)
    for p in f.support():
        bits[p - lo] = 1

    pulled: List[int] = []
    for i in range(f.high, delta - 1, -1):
        if bits[i - lo]:
            bits[i - lo] = 0
            bits[i - delta - lo] ^= 1
            pulled.append(i)
    for i in range(f.low, 0):
        if bits[i - lo]:
            bits[i - lo] = 0
            bits[i + delta - lo] ^= 1
            pulled.append(i + delta)

    window = LampConfig.from_positions(r for r in range(delta) if bits[r - lo])
    result = LampElement(delta, window)
    z = LampElement(0, LampConfig.from_positions(pulled))
    if conjugate(g, z) != result:
        raise WitnessCheckError(f"lamp pulling failed for {g.describe()}")
    return normal_form_word(z), result


def find_conjugator(c1: LampElement, c2: LampElement) -> ConjugacyAnswer:
    """A word x with x^-1 c1 x == c2, or a negative answer."""
    if c1.delta != c2.delta:
        return ConjugacyAnswer(False)
    if c1.delta < 0:
        # x^-1 c1 x = c2 iff x^-1 c1^-1 x = c2^-1
        return find_conjugator(inv(c1), inv(c2))

    if c1.delta == 0:
        f1, f2 = c1.lamps, c2.lamps
        if not f1 and not f2:
            return _checked(c1, c2, GroupWord(), 0)
        if not f1 or not f2 or f1.mask != f2.mask:
            return ConjugacyAnswer(False)
        shift = f1.low - f2.low
        return _checked(c1, c2, GroupWord.t_power(shift), shift)

    d = c1.delta
    shift = cyclic_match(project(c2.lamps, d).bitstring(), project(c1.lamps, d).bitstring())
    if shift is None:
        return ConjugacyAnswer(False)
    logger.debug("conjugacy case delta=%d: rotation %d", d, shift)
    x1, _ = pull_to_window(conjugate(c1, LampElement.t(shift)))
    x2, _ = pull_to_window(c2)
    assembled = GroupWord.t_power(shift) + x1 + x2.inverse()
    normal = normal_form_word(eval_word(assembled))
    word = normal if len(normal) <= len(assembled) else assembled
    return _checked(c1, c2, word, shift)


def _checked(c1: LampElement, c2: LampElement, word: GroupWord, shift: int) -> ConjugacyAnswer:
    if conjugate(c1, eval_word(word)) != c2:
        raise WitnessCheckError(f"conjugator {word} does not conjugate {c1.describe()} to {c2.describe()}")
    return ConjugacyAnswer(True, word, shift)
