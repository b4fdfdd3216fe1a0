"""
Projections onto Z_d, Bezout identities between binomials x^b + 1, exact
division by x^d + 1 and the lift that turns a vanishing projection back into
explicit lamp configurations.

All polynomials are GF(2) Laurent polynomials represented as LampConfig, so
x^b - 1 and x^b + 1 coincide and every sign in the classical identities drops.
A modulus of 0 means Z itself: projection is the identity and the only element
of the kernel is 0.
"""
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

from lamps import LampConfig, LampError, WitnessCheckError

logger = logging.getLogger(__name__)


class BinomialError(LampError):
    pass


class AllZeroModuliError(BinomialError):
    pass


class NotInKernelError(BinomialError):
    """The dividend does not vanish under projection mod d."""


class LiftPreconditionError(BinomialError):
    pass


def _full(d: int) -> int:
    return (1 << d) - 1


def _rotate_right(mask: int, amount: int, d: int) -> int:
    amount %= d
    if not amount:
        return mask
    return ((mask >> amount) | (mask << (d - amount))) & _full(d)


def _rotate_left(mask: int, amount: int, d: int) -> int:
    return _rotate_right(mask, d - (amount % d), d)


@dataclass(frozen=True)
class Residues:
    """
    pi_d(f). For d > 0 the values live on 0..d-1 (bit r is the parity of the
    lamps in residue class r); for d = 0 they are f itself.
    """
    modulus: int
    values: LampConfig

    @property
    def mask(self) -> int:
        """Bit r is residue r. Only meaningful for d > 0."""
        if not self.values:
            return 0
        return self.values.mask << self.values.base

    @classmethod
    def from_mask(cls, modulus: int, mask: int) -> "Residues":
        return cls(modulus, LampConfig(0, mask))

    def is_zero(self) -> bool:
        return self.values.is_zero()

    def bitstring(self) -> str:
        if self.modulus == 0:
            if not self.values:
                return ""
            return self.values.bitstring(self.values.low, self.values.width())
        return self.values.bitstring(0, self.modulus)

    def rotate(self, delta: int) -> "Residues":
        """pi_d(f^delta): bit r becomes bit (r + delta) mod d."""
        if self.modulus == 0:
            return Residues(0, self.values.shift(delta))
        return Residues.from_mask(self.modulus, _rotate_right(self.mask, delta, self.modulus))

    def __add__(self, other: "Residues") -> "Residues":
        if self.modulus != other.modulus:
            raise ValueError("cannot add residues of different moduli")
        return Residues(self.modulus, self.values + other.values)


def project(f: LampConfig, d: int) -> Residues:
    if d < 0:
        raise ValueError("modulus must be nonnegative")
    if d == 0:
        return Residues(0, f)
    if not f:
        return Residues.from_mask(d, 0)
    mask = f.mask
    # fold at multiples of d until a single window of d bits is left
    while mask.bit_length() > d:
        half = (mask.bit_length() + 1) // 2
        cut = d * ((half + d - 1) // d)
        mask = (mask & _full(cut)) ^ (mask >> cut)
    # bit j now holds residue (base + j) mod d
    return Residues.from_mask(d, _rotate_left(mask, f.base, d))


@dataclass(frozen=True)
class BezoutCombination:
    """sum_i coefficients[i] * (x^moduli[i] + 1) == x^gcd + 1."""
    moduli: Tuple[int, ...]
    coefficients: Tuple[LampConfig, ...]
    gcd: int

    def evaluate(self) -> LampConfig:
        total = LampConfig.zero()
        for b, u in zip(self.moduli, self.coefficients):
            total = total + u.times_binomial(b)
        return total


def _binomial(e: int) -> LampConfig:
    """x^e + 1 (zero when e == 0)."""
    return LampConfig.monomial(0).times_binomial(e)


def _geometric(step: int, terms: int) -> LampConfig:
    """1 + x^step + ... + x^((terms-1)*step)."""
    return LampConfig.from_positions(range(0, step * terms, step))


def _combine(vec: List[LampConfig], other: List[LampConfig], factor: LampConfig) -> List[LampConfig]:
    return [a + factor * b for a, b in zip(vec, other)]


def bezout_binomials(moduli: Sequence[int]) -> BezoutCombination:
    """
    Coefficients u_i with sum u_i * (x^{b_i} + 1) = x^d + 1, d = gcd(|b_i|).

    Runs the Euclidean algorithm on exponents: writing e2 = q*e1 + r,
        x^r + 1 = (x^e2 + 1) + x^r * (1 + x^e1 + ... + x^{(q-1)e1}) * (x^e1 + 1).
    Each remainder is carried as a coefficient vector over the inputs.
    """
    bs = tuple(int(b) for b in moduli)
    if not bs or all(b == 0 for b in bs):
        raise AllZeroModuliError("bezout_binomials needs at least one nonzero modulus")
    k = len(bs)
    zero = LampConfig.zero()

    def unit(i: int) -> List[LampConfig]:
        vec = [zero] * k
        # x^{|b|} + 1 = x^{-b} (x^b + 1) when b < 0
        vec[i] = LampConfig.monomial(-bs[i] if bs[i] < 0 else 0)
        return vec

    acc_e = 0
    acc_vec: List[LampConfig] = [zero] * k
    for i, b in enumerate(bs):
        e = abs(b)
        if e == 0:
            continue
        if acc_e == 0:
            acc_e, acc_vec = e, unit(i)
            continue
        big_e, big_vec = acc_e, acc_vec
        small_e, small_vec = e, unit(i)
        if small_e > big_e:
            big_e, big_vec, small_e, small_vec = small_e, small_vec, big_e, big_vec
        while small_e:
            q, r = divmod(big_e, small_e)
            factor = _geometric(small_e, q).times_monomial(r)
            rem_vec = _combine(big_vec, small_vec, factor)
            big_e, big_vec, small_e, small_vec = small_e, small_vec, r, rem_vec
        acc_e, acc_vec = big_e, big_vec

    combo = BezoutCombination(bs, tuple(acc_vec), acc_e)
    if combo.evaluate() != _binomial(acc_e):
        raise WitnessCheckError("Bezout identity failed for moduli %r" % (bs,))
    logger.debug("bezout over %r: gcd=%d", bs, acc_e)
    return combo


def divide_by_binomial(h: LampConfig, d: int) -> LampConfig:
    """q with (x^d + 1) * q == h, provided pi_d(h) = 0."""
    if d <= 0:
        raise ValueError("divide_by_binomial needs a positive modulus")
    if not h:
        return h
    width = h.width()
    if width <= d:
        raise NotInKernelError("lamps %r do not vanish mod %d" % (h, d))
    keep = _full(width)
    q, step = h.mask, d
    # multiply by 1 + x^d + x^2d + ... truncated at the width of h
    while step < width:
        q = (q ^ (q << step)) & keep
        step <<= 1
    quotient = LampConfig(h.base, q & _full(width - d))
    if quotient.times_binomial(d) != h:
        raise NotInKernelError("lamps %r do not vanish mod %d" % (h, d))
    return quotient


def lift_certificate(moduli: Sequence[int], target: LampConfig) -> List[LampConfig]:
    """f_i with sum (1 + x^{b_i}) * f_i == target."""
    bs = [int(b) for b in moduli]
    d = reduce(gcd, (abs(b) for b in bs), 0)
    if d == 0:
        if target:
            raise LiftPreconditionError("with all moduli zero only the empty target lifts")
        return [LampConfig.zero() for _ in bs]
    try:
        q = divide_by_binomial(target, d)
    except NotInKernelError as exc:
        raise LiftPreconditionError(str(exc)) from exc
    combo = bezout_binomials(bs)
    lifted = [u * q for u in combo.coefficients]
    check = LampConfig.zero()
    for b, f in zip(bs, lifted):
        check = check + f.times_binomial(b)
    if check != target:
        raise WitnessCheckError("lift over %r does not reproduce the target" % (bs,))
    return lifted
