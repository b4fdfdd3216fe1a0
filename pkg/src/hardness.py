"""
3-partition instances as spherical equations over L2.

A value y becomes c_y = prod_{i<y} t^i a t^-i, the element (0, {0, ..., y-1})
of y consecutive lit lamps. The target c is k runs of T lit lamps, each run
followed by one dark lamp. Conjugating c_y only translates its lamps, so the
equation c_{s_1}^{z_1} ... c_{s_3k}^{z_3k} (c^-1)^{z} = 1 is solvable exactly
when the runs can tile the k blocks of c, i.e. when the instance is positive.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from core_group import GroupWord
from equation_solvers import Form, QuadEquation, ShiftCertificate
from lamps import LampError

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 1_000_000


class InstanceError(LampError):
    pass


class NonDivisibleSumError(InstanceError):
    pass


class WindowViolationError(InstanceError):
    pass


class InstanceSizeError(InstanceError):
    pass


class PartitionBudgetError(LampError):
    pass


class TilingError(LampError):
    """A certificate whose shifted runs do not tile the target blocks."""


@dataclass(frozen=True)
class TPartInstance:
    values: Tuple[int, ...]
    k: int
    target: int

    @property
    def total(self) -> int:
        return sum(self.values)


def validate(values: Sequence[int], k: int) -> TPartInstance:
    vals = tuple(int(v) for v in values)
    if k < 1 or len(vals) != 3 * k:
        raise InstanceSizeError(f"expected 3k = {3 * k} values, got {len(vals)}")
    if any(v <= 0 for v in vals):
        raise InstanceSizeError("values must be positive")
    if sum(vals) % k:
        raise NonDivisibleSumError(f"sum {sum(vals)} is not divisible by k={k}")
    target = sum(vals) // k
    for v in vals:
        if not (4 * v > target and 2 * v < target):
            raise WindowViolationError(f"{v} is outside ({target}/4, {target}/2)")
    return TPartInstance(vals, k, target)


def run_word(y: int) -> GroupWord:
    """c_y, freely reduced: a (t a)^(y-1) t^-(y-1)."""
    if y < 1:
        raise InstanceSizeError("run length must be positive")
    return GroupWord("a" + "ta" * (y - 1) + "T" * (y - 1))


def target_word(inst: TPartInstance) -> GroupWord:
    """c = prod_{i<k} t^{(T+1)i} c_T t^{-(T+1)i}, freely reduced."""
    block = run_word(inst.target)
    word = GroupWord()
    for i in range(inst.k):
        move = GroupWord.t_power((inst.target + 1) * i)
        word = word + move + block + move.inverse()
    return word.reduced()


def encode(inst: TPartInstance) -> QuadEquation:
    coeffs = [run_word(s) for s in inst.values]
    coeffs.append(target_word(inst).inverse())
    return QuadEquation(Form.SPHERICAL, 0, tuple(coeffs))


def encode_genus_one(inst: TPartInstance) -> QuadEquation:
    """The same coefficients behind a single square x^2."""
    return QuadEquation(Form.NONORIENTABLE, 1, encode(inst).coeffs)


def brute_force_3part(
    inst: TPartInstance,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Optional[List[Tuple[int, ...]]]:
    """One partition into triples summing to T, or None."""
    nodes = 0

    def search(rest: Tuple[int, ...]) -> Optional[List[Tuple[int, ...]]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise PartitionBudgetError(f"3-partition search exceeded {budget} nodes")
        if not rest:
            return []
        first, others = rest[0], rest[1:]
        need = inst.target - first
        tried = set()
        for i in range(len(others)):
            for j in range(i + 1, len(others)):
                pair = (others[i], others[j])
                if sum(pair) != need or pair in tried:
                    continue
                tried.add(pair)
                left = others[:i] + others[i + 1:j] + others[j + 1:]
                found = search(left)
                if found is not None:
                    return [tuple(sorted((first,) + pair))] + found
        return None

    return search(tuple(sorted(inst.values)))


def decode(inst: TPartInstance, cert: ShiftCertificate) -> List[Tuple[int, ...]]:
    """
    Read the partition off a certificate for encode(inst): run i starts at
    offset shifts[-1] - shifts[i] inside the shifted target, and that offset
    names its block.
    """
    n = 3 * inst.k
    if len(cert.shifts) != n + 1:
        raise TilingError(f"expected {n + 1} shifts, got {len(cert.shifts)}")
    period = inst.target + 1
    anchor = cert.shifts[-1]
    cells = [bytearray(inst.target) for _ in range(inst.k)]
    groups: List[List[int]] = [[] for _ in range(inst.k)]
    for value, shift in zip(inst.values, cert.shifts[:n]):
        offset = anchor - shift
        block, start = divmod(offset, period)
        if offset < 0 or block >= inst.k or start + value > inst.target:
            raise TilingError(f"run of {value} at offset {offset} leaves the target")
        row = cells[block]
        for pos in range(start, start + value):
            if row[pos]:
                raise TilingError(f"runs overlap at block {block}, cell {pos}")
            row[pos] = 1
        groups[block].append(value)
    if not all(all(row) for row in cells):
        raise TilingError("runs leave part of the target dark")
    return [tuple(sorted(g)) for g in groups]
