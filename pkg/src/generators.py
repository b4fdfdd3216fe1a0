"""
Seeded random words, elements and 3-partition instances.

Everything takes an explicit ``random.Random`` so benchmark suites and tests
are reproducible from a single seed.
"""
import random
from typing import Iterator, List, Tuple

from core_group import GroupWord, LampElement
from hardness import InstanceSizeError, TPartInstance, validate
from lamps import LampConfig


def random_word(rng: random.Random, length: int, letters: str = "aAtT") -> GroupWord:
    return GroupWord("".join(rng.choice(letters) for _ in range(length)))


def random_y_word(rng: random.Random, length: int) -> GroupWord:
    """A random word with t-exponent sum 0 (so it evaluates into Y)."""
    w = random_word(rng, length)
    return w + GroupWord.t_power(-w.sigma_t())


def random_lamps(rng: random.Random, radius: int) -> LampConfig:
    return LampConfig(-radius, rng.getrandbits(2 * radius + 1))


def random_element(rng: random.Random, max_delta: int, radius: int) -> LampElement:
    return LampElement(rng.randint(-max_delta, max_delta), random_lamps(rng, radius))


def _even(rng: random.Random, radius: int) -> LampConfig:
    f = random_lamps(rng, radius)
    if f.parity():
        f = f + LampConfig.monomial(rng.randint(-radius, radius))
    return f


def random_derived_element(rng: random.Random, radius: int) -> LampElement:
    """delta = 0 and an even number of lit lamps."""
    return LampElement(0, _even(rng, radius))


def random_v_element(rng: random.Random, max_half: int, radius: int) -> LampElement:
    """Even delta and an even number of lit lamps."""
    return LampElement(2 * rng.randint(-max_half, max_half), _even(rng, radius))


def value_window(target: int) -> Tuple[int, int]:
    """Integers s with T/4 < s < T/2."""
    return target // 4 + 1, (target - 1) // 2


def positive_instance(rng: random.Random, k: int, target: int) -> TPartInstance:
    """k random triples, each summing to ``target``, shuffled together."""
    lo, hi = value_window(target)
    triples = [
        (a, b, target - a - b)
        for a in range(lo, hi + 1)
        for b in range(lo, hi + 1)
        if lo <= target - a - b <= hi
    ]
    if not triples:
        raise InstanceSizeError(f"no triple sums to {target} inside the value window")
    values: List[int] = []
    for _ in range(k):
        values.extend(rng.choice(triples))
    rng.shuffle(values)
    return validate(values, k)


def random_instance(rng: random.Random, k: int, target: int) -> TPartInstance:
    """Values drawn in the window, then nudged one unit at a time until they sum to k*T."""
    lo, hi = value_window(target)
    n = 3 * k
    if lo > hi or not (n * lo <= k * target <= n * hi):
        raise InstanceSizeError(f"no {n} values in [{lo}, {hi}] sum to {k * target}")
    values = [rng.randint(lo, hi) for _ in range(n)]
    gap = k * target - sum(values)
    while gap:
        step = 1 if gap > 0 else -1
        movable = [i for i, v in enumerate(values) if lo <= v + step <= hi]
        i = rng.choice(movable)
        values[i] += step
        gap -= step
    return validate(values, k)


def all_instances(max_total: int) -> Iterator[TPartInstance]:
    """Every valid instance (as a sorted multiset) with sum at most ``max_total``."""
    k = 1
    while 3 * k * 2 <= max_total:
        for target in range(1, max_total // k + 1):
            lo, hi = value_window(target)
            if lo > hi:
                continue
            for values in _multisets(3 * k, k * target, lo, hi):
                yield validate(values, k)
        k += 1


def _multisets(count: int, total: int, lo: int, hi: int) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing tuples of ``count`` values in [lo, hi] summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, hi + 1):
        if first * count > total:
            break
        if total - first > hi * (count - 1):
            continue
        for rest in _multisets(count - 1, total - first, first, hi):
            yield (first,) + rest
