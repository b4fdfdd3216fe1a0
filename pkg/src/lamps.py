"""
Finite lamp configurations f: Z -> Z_2, read interchangeably as GF(2) Laurent
polynomials sum f(i) x^i.

A LampConfig is stored bit-packed: ``mask`` bit j is f(base + j). Values are
kept normalized (bit 0 set whenever the support is nonempty, ``base == 0`` for
the zero configuration), so m(f) and M(f) are constant-time reads.

Shift convention, fixed everywhere: f^b(x) = f(x + b), i.e. the support moves
by -b and f^b = f * x^(-b).
"""
from collections import deque
from dataclasses import dataclass
from typing import Deque, Iterable, Iterator, List


class LampError(Exception):
    """Root of every error raised by this toolkit."""


class EmptySupportError(LampError):
    """m(f), M(f) and diam(f) are undefined for f = 0."""


class OddParityError(LampError):
    """A prefix/suffix parity of f only has finite support when sigma_a(f) = 0."""


class WitnessCheckError(LampError):
    """A constructed witness failed its own substitution check."""


def _popcount(value: int) -> int:
    return bin(value).count("1")


@dataclass(frozen=True)
class LampConfig:
    base: int = 0
    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise ValueError("mask must be nonnegative")
        if self.mask == 0:
            object.__setattr__(self, "base", 0)
            return
        low = (self.mask & -self.mask).bit_length() - 1
        if low:
            object.__setattr__(self, "mask", self.mask >> low)
            object.__setattr__(self, "base", self.base + low)

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "LampConfig":
        return cls(0, 0)

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "LampConfig":
        """Lamps toggled once per occurrence, so repeated positions cancel."""
        pos = list(positions)
        if not pos:
            return cls.zero()
        lo = min(pos)
        # ASCII '0' ^ 1 == '1'; the digits are read back in one base-2 pass
        digits = bytearray(b"0" * (max(pos) - lo + 1))
        for p in pos:
            digits[p - lo] ^= 1
        digits.reverse()
        return cls(lo, int(digits, 2))

    @classmethod
    def monomial(cls, exponent: int) -> "LampConfig":
        return cls(exponent, 1)

    # -- reads --------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.mask == 0

    def __bool__(self) -> bool:
        return self.mask != 0

    def popcount(self) -> int:
        return _popcount(self.mask)

    def parity(self) -> int:
        """sigma_a of the configuration: number of lit lamps mod 2."""
        return self.popcount() & 1

    @property
    def low(self) -> int:
        """m(f)."""
        if not self.mask:
            raise EmptySupportError("m(f) is undefined for the empty configuration")
        return self.base

    @property
    def high(self) -> int:
        """M(f)."""
        if not self.mask:
            raise EmptySupportError("M(f) is undefined for the empty configuration")
        return self.base + self.mask.bit_length() - 1

    def width(self) -> int:
        """Number of stored bits (M - m + 1, or 0)."""
        return self.mask.bit_length()

    def diam(self) -> int:
        if not self.mask:
            raise EmptySupportError("diam(f) is undefined for the empty configuration")
        return self.mask.bit_length() - 1

    def bit(self, position: int) -> int:
        offset = position - self.base
        if offset < 0:
            return 0
        return (self.mask >> offset) & 1

    def __contains__(self, position: object) -> bool:
        return isinstance(position, int) and self.bit(position) == 1

    def support(self) -> List[int]:
        """Lit positions in increasing order, read off one binary rendering of the mask."""
        if not self.mask:
            return []
        base = self.base
        digits = format(self.mask, "b")[::-1]
        return [base + j for j, ch in enumerate(digits) if ch == "1"]

    def __iter__(self) -> Iterator[int]:
        return iter(self.support())

    def aligned(self, base: int) -> int:
        """The mask re-expressed with bit 0 at ``base`` (base must not exceed m(f))."""
        if not self.mask:
            return 0
        if base > self.base:
            raise ValueError("alignment base lies inside the support")
        return self.mask << (self.base - base)

    def bitstring(self, start: int, length: int) -> str:
        """f(start), ..., f(start + length - 1) as '0'/'1' characters."""
        if length <= 0:
            return ""
        offset = start - self.base
        window = self.mask >> offset if offset >= 0 else self.mask << -offset
        window &= (1 << length) - 1
        return format(window, "0%db" % length)[::-1]

    # -- arithmetic ---------------------------------------------------------
    def shift(self, b: int) -> "LampConfig":
        """f^b, the configuration x -> f(x + b)."""
        if not self.mask:
            return self
        return LampConfig(self.base - b, self.mask)

    def times_monomial(self, exponent: int) -> "LampConfig":
        """x^exponent * f."""
        return self.shift(-exponent)

    def __add__(self, other: "LampConfig") -> "LampConfig":
        if not other.mask:
            return self
        if not self.mask:
            return other
        base = min(self.base, other.base)
        return LampConfig(base, self.aligned(base) ^ other.aligned(base))

    __xor__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "LampConfig") -> "LampConfig":
        """Product of GF(2) Laurent polynomials (carry-less multiply)."""
        if not self.mask or not other.mask:
            return LampConfig.zero()
        small, big = (self.mask, other.mask)
        if _popcount(small) > _popcount(big):
            small, big = big, small
        acc = 0
        while small:
            low = small & -small
            acc ^= big << (low.bit_length() - 1)
            small ^= low
        return LampConfig(self.base + other.base, acc)

    def times_binomial(self, d: int) -> "LampConfig":
        """(x^d + 1) * f, which over GF(2) equals (x^d - 1) * f."""
        return self + self.times_monomial(d)

    def prefix_parity(self) -> "LampConfig":
        """g(j) = sum_{i <= j} f(i); finite only when the parity of f is 0."""
        if not self.mask:
            return self
        if self.parity():
            raise OddParityError("prefix parity of an odd configuration has infinite support")
        width = self.mask.bit_length()
        acc, step = self.mask, 1
        while step < width:
            acc ^= acc << step
            step <<= 1
        return LampConfig(self.base, acc & ((1 << width) - 1))

    def __repr__(self) -> str:
        return "LampConfig({%s})" % ",".join(str(p) for p in self.support())


class LampTape:
    """
    Mutable lamp row used while reading a word left to right. Bits live in a
    deque with an explicit base offset, so the row grows at either end in
    amortized constant time as the lamplighter walks.
    """

    def __init__(self) -> None:
        self._bits: Deque[int] = deque([0])
        self._base = 0

    def toggle(self, position: int) -> None:
        bits = self._bits
        while position < self._base:
            bits.appendleft(0)
            self._base -= 1
        while position >= self._base + len(bits):
            bits.append(0)
        bits[position - self._base] ^= 1

    def freeze(self) -> LampConfig:
        text = "".join("1" if b else "0" for b in reversed(self._bits))
        return LampConfig(self._base, int(text, 2))
