"""
Elements and words of the lamplighter group L2 = Z_2 wr Z.

An element is (delta, f): the lamplighter's position and the finite set of
lit lamps. The product is

    (d1, f1) * (d2, f2) = (d1 + d2, f1^{d2} + f2),   f^b(x) = f(x + b),

so in polynomial terms f^b = x^{-b} * f. The generators are a = (0, {0}) and
t = (1, {}).
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

import settings
from binomial_algebra import divide_by_binomial, project
from lamps import LampConfig, LampError, LampTape, WitnessCheckError

logger = logging.getLogger(__name__)


class WordSyntaxError(LampError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class WordTooLongError(LampError):
    pass


class NotInDerivedSubgroupError(LampError):
    pass


class NotInVError(LampError):
    pass


_LETTERS = "aAtT"
_INVERSE = str.maketrans("aAtT", "AaTt")
_TOKEN = re.compile(r"([aAtT])(?:\s*\^\s*([+-]?\d+))?|(1)")
_SPACE = re.compile(r"\s*")


@dataclass(frozen=True)
class GroupWord:
    """A word over a, a^-1 (A), t, t^-1 (T), stored as a string of those letters."""
    letters: str = ""

    def __post_init__(self) -> None:
        if self.letters.strip(_LETTERS):
            raise ValueError(f"illegal letters in {self.letters!r}")

    @classmethod
    def t_power(cls, n: int) -> "GroupWord":
        return cls("t" * n if n >= 0 else "T" * -n)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.letters[::-1].translate(_INVERSE))

    def reduced(self) -> "GroupWord":
        """Freely reduced form (adjacent x x^-1 pairs cancelled)."""
        stack: List[str] = []
        for ch in self.letters:
            if stack and stack[-1] == ch.swapcase():
                stack.pop()
            else:
                stack.append(ch)
        return GroupWord("".join(stack))

    def sigma_a(self) -> int:
        return (self.letters.count("a") + self.letters.count("A")) & 1

    def sigma_t(self) -> int:
        return self.letters.count("t") - self.letters.count("T")

    def serialize(self) -> str:
        return serialize(self)

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class LampElement:
    delta: int = 0
    lamps: LampConfig = field(default_factory=LampConfig.zero)

    @classmethod
    def identity(cls) -> "LampElement":
        return cls(0, LampConfig.zero())

    @classmethod
    def a(cls) -> "LampElement":
        return cls(0, LampConfig.monomial(0))

    @classmethod
    def t(cls, n: int = 1) -> "LampElement":
        return cls(n, LampConfig.zero())

    def is_identity(self) -> bool:
        return self.delta == 0 and not self.lamps

    def __mul__(self, other: "LampElement") -> "LampElement":
        return mul(self, other)

    def inverse(self) -> "LampElement":
        return inv(self)

    def square(self) -> "LampElement":
        return mul(self, self)

    def describe(self) -> str:
        return "delta=%d supp=[%s]" % (self.delta, ",".join(str(p) for p in self.lamps.support()))


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def parse_word(text: str, max_len: Optional[int] = None) -> GroupWord:
    """
    Parse the word grammar: letters a, t, A, T each with an optional
    ``^<signed int>`` exponent, ``1`` for the identity, whitespace ignored.
    Exponents are expanded letter by letter.
    """
    cap = max_len if max_len is not None else settings.max_word_length()
    cap = min(cap, settings.HARD_MAX_LEN)
    chunks: List[str] = []
    total = 0
    pos = 0
    end = len(text)
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= end:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected {text[pos]!r}", pos)
        letter, exponent = m.group(1), m.group(2)
        pos = m.end()
        if letter is None:
            continue
        n = int(exponent) if exponent is not None else 1
        if n < 0:
            letter, n = letter.translate(_INVERSE), -n
        total += n
        if total > cap:
            raise WordTooLongError(f"word expands to more than {cap} letters")
        chunks.append(letter * n)
    return GroupWord("".join(chunks))


def serialize(w: GroupWord) -> str:
    """Canonical text: lowercase letters with exponents, ``1`` for the empty word."""
    letters = w.letters
    if not letters:
        return "1"
    parts: List[str] = []
    i, n = 0, len(letters)
    while i < n:
        ch = letters[i]
        j = i
        while j < n and letters[j] == ch:
            j += 1
        run = j - i
        base = ch.lower()
        exp = run if ch.islower() else -run
        parts.append(base if exp == 1 else f"{base}^{exp}")
        i = j
    return " ".join(parts)


def eval_word(w: GroupWord) -> LampElement:
    """(delta, f) of a word in one left-to-right pass."""
    tape = LampTape()
    pos = 0
    for ch in w.letters:
        if ch == "t":
            pos += 1
        elif ch == "T":
            pos -= 1
        else:
            tape.toggle(pos)
    # lamps were recorded at absolute positions; the element stores them
    # relative to the final lamplighter position
    return LampElement(pos, tape.freeze().shift(pos))


def normal_form_word(g: LampElement) -> GroupWord:
    """The walking word t^{p1} a t^{p2-p1} a ... a t^{delta-pn}, p the absolute lamp positions."""
    chunks: List[str] = []
    here = 0
    for p in g.lamps.shift(-g.delta).support():
        chunks.append(GroupWord.t_power(p - here).letters)
        chunks.append("a")
        here = p
    chunks.append(GroupWord.t_power(g.delta - here).letters)
    return GroupWord("".join(chunks))


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def mul(g: LampElement, h: LampElement) -> LampElement:
    return LampElement(g.delta + h.delta, g.lamps.shift(h.delta) + h.lamps)


def inv(g: LampElement) -> LampElement:
    return LampElement(-g.delta, g.lamps.shift(-g.delta))


def conjugate(g: LampElement, z: LampElement) -> LampElement:
    """z^-1 g z."""
    return mul(mul(inv(z), g), z)


def commutator(x: LampElement, y: LampElement) -> LampElement:
    """[x, y] = x y x^-1 y^-1."""
    return mul(mul(mul(x, y), inv(x)), inv(y))


def product(elements: Iterable[LampElement]) -> LampElement:
    acc = LampElement.identity()
    for g in elements:
        acc = mul(acc, g)
    return acc


def sigma_a(g: Union[GroupWord, LampElement]) -> int:
    if isinstance(g, GroupWord):
        return g.sigma_a()
    return g.lamps.parity()


def sigma_t(g: Union[GroupWord, LampElement]) -> int:
    if isinstance(g, GroupWord):
        return g.sigma_t()
    return g.delta


def diam(f: LampConfig) -> int:
    return f.diam()


# ---------------------------------------------------------------------------
# Squares, commutators and the verbal subgroup V
# ---------------------------------------------------------------------------

def is_square(g: LampElement) -> bool:
    """(delta, f) is a square iff delta = 2b and pi_|b|(f) = 0."""
    if g.delta % 2:
        return False
    return project(g.lamps, abs(g.delta) // 2).is_zero()


def sqrt_witness(g: LampElement) -> Optional[LampElement]:
    """h with h*h == g, or None when g is not a square."""
    if not is_square(g):
        return None
    b = g.delta // 2
    if b == 0:
        root = LampElement.identity()
    else:
        q = divide_by_binomial(g.lamps, abs(b))
        # (b, r)^2 = (2b, (1 + x^{-b}) r)
        root = LampElement(b, q.times_monomial(b) if b > 0 else q)
    if root.square() != g:
        raise WitnessCheckError(f"square root of {g.describe()} failed to verify")
    return root


def in_derived(g: LampElement) -> bool:
    return g.delta == 0 and g.lamps.parity() == 0


def commutator_witness(g: LampElement) -> Tuple[LampElement, LampElement]:
    """(x, y) = ((0, G), t) with G the prefix parity of f, so [x, y] = g."""
    if not in_derived(g):
        raise NotInDerivedSubgroupError(f"{g.describe()} is not a commutator")
    x = LampElement(0, g.lamps.prefix_parity())
    y = LampElement.t()
    if commutator(x, y) != g:
        raise WitnessCheckError(f"commutator witness for {g.describe()} failed to verify")
    return x, y


def in_V(g: LampElement) -> bool:
    return g.delta % 2 == 0 and g.lamps.parity() == 0


def two_squares_witness(g: LampElement) -> Tuple[LampElement, LampElement]:
    """
    x = (1, h), y = (k, {}) with k = delta/2 - 1 and x^2 y^2 = g.

    x^2 y^2 = (2k + 2, x^{-2k} (1 + x^{-1}) h), so h solves
    h(j) + h(j + 1) = f'(j) with f' = x^{2k} f; the suffix parity of f' does.
    """
    if not in_V(g):
        raise NotInVError(f"{g.describe()} is not a product of squares")
    k = g.delta // 2 - 1
    shifted = g.lamps.times_monomial(2 * k)
    h = shifted.prefix_parity().times_monomial(1)
    x = LampElement(1, h)
    y = LampElement.t(k)
    if mul(x.square(), y.square()) != g:
        raise WitnessCheckError(f"two-squares witness for {g.describe()} failed to verify")
    return x, y
