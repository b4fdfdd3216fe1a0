"""
Benchmark suites for the linear-time paths (conjugacy, orientable, each with
a random-word and a dense-lamp variant) and the enumeration paths
(spherical, encoded 3-partition). Each row records the input size |W|, the
number of constants k, the decision, the enumeration count and the median
wall time over the repeats.
"""
import logging
import random
import timeit
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from conjugacy import find_conjugator
from core_group import GroupWord, eval_word
from equation_solvers import Form, QuadEquation, solve
from generators import positive_instance, random_word, random_y_word
from hardness import encode
from lamps import LampError

logger = logging.getLogger(__name__)

COLUMNS = ["suite", "size", "W", "k", "decision", "enumerated", "millis"]

DEFAULT_SIZES: Dict[str, List[int]] = {
    "conjugacy": [1000, 2000, 4000, 8000],
    "conjugacy-dense": [1000, 2000, 4000, 8000],
    "orientable": [1000, 10000, 100000],
    "orientable-dense": [1000, 10000, 100000],
    "spherical": [8, 12, 16],
    "3part": [6, 9, 12],
}

# (decision, enumerated, |W|, k)
Outcome = Tuple[bool, int, int, int]


class UnknownSuiteError(LampError):
    pass


def _conjugacy_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    w = random_word(rng, size)
    v = random_word(rng, size // 2)
    conjugated = v.inverse() + w + v

    def run() -> Outcome:
        answer = find_conjugator(eval_word(w), eval_word(conjugated))
        return answer.conjugate, 0, len(w) + len(conjugated), 2
    return run


def _dense_conjugacy_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    # t (at)^n T^n has n consecutive lit lamps
    n = max(1, size // 3)
    w = GroupWord("t" + "at" * n + "T" * n)
    v = GroupWord.t_power(rng.randint(0, n)) + GroupWord("a")
    conjugated = v.inverse() + w + v

    def run() -> Outcome:
        answer = find_conjugator(eval_word(w), eval_word(conjugated))
        return answer.conjugate, 0, len(w) + len(conjugated), 2
    return run


def _orientable_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    c1 = random_word(rng, max(1, size // 2 - 2))
    # c1 * c1^-1 * taTa lands in the derived subgroup, so the answer is yes
    c2 = c1.inverse() + GroupWord("taTa")
    eq = QuadEquation(Form.ORIENTABLE, 1, (c1, c2))

    def run() -> Outcome:
        result = solve(eq)
        return result.decision, result.stats.enumerated, eq.size(), eq.k
    return run


def _dense_orientable_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    # an even run of lamps, so the single coefficient is a commutator
    n = max(2, size // 6 * 2)
    r = rng.randint(0, n)
    c1 = GroupWord.t_power(r) + GroupWord("at" * n + "T" * n) + GroupWord.t_power(-r)
    eq = QuadEquation(Form.ORIENTABLE, 1, (c1,))

    def run() -> Outcome:
        result = solve(eq)
        return result.decision, result.stats.enumerated, eq.size(), eq.k
    return run


def _spherical_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    k = 2 + rng.randint(0, 1)
    coeffs = tuple(random_y_word(rng, max(1, size // (2 * k))) for _ in range(k))
    eq = QuadEquation(Form.SPHERICAL, 0, coeffs)

    def run() -> Outcome:
        result = solve(eq)
        return result.decision, result.stats.enumerated, eq.size(), eq.k
    return run


def _three_part_case(rng: random.Random, size: int) -> Callable[[], Outcome]:
    eq = encode(positive_instance(rng, 2, size))

    def run() -> Outcome:
        result = solve(eq)
        return result.decision, result.stats.enumerated, eq.size(), eq.k
    return run


SUITES: Dict[str, Callable[[random.Random, int], Callable[[], Outcome]]] = {
    "conjugacy": _conjugacy_case,
    "conjugacy-dense": _dense_conjugacy_case,
    "orientable": _orientable_case,
    "orientable-dense": _dense_orientable_case,
    "spherical": _spherical_case,
    "3part": _three_part_case,
}


def run_bench(
    suite: str,
    sizes: Optional[Sequence[int]] = None,
    seed: int = 0,
    repeats: int = 3,
    timing: bool = True,
) -> pd.DataFrame:
    if suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if repeats < 1:
        raise ValueError("repeats must be positive")
    rng = random.Random(seed)
    rows = []
    for size in sizes or DEFAULT_SIZES[suite]:
        run = SUITES[suite](rng, size)
        times: List[float] = []
        outcome: Optional[Outcome] = None
        for _ in range(repeats):
            started = timeit.default_timer()
            outcome = run()
            times.append((timeit.default_timer() - started) * 1000.0)
        assert outcome is not None
        decision, enumerated, w, k = outcome
        millis = round(float(np.median(times)), 3) if timing else 0.0
        logger.info("bench %s size=%d |W|=%d: %.3f ms", suite, size, w, millis)
        rows.append({
            "suite": suite,
            "size": size,
            "W": w,
            "k": k,
            "decision": "yes" if decision else "no",
            "enumerated": enumerated,
            "millis": millis,
        })
    return pd.DataFrame(rows, columns=COLUMNS)


def growth_ratios(df: pd.DataFrame) -> List[float]:
    """Time ratio between consecutive rows, for scaling checks."""
    millis = df["millis"].to_numpy(dtype=float)
    return [float(b / a) if a > 0 else float("inf") for a, b in zip(millis[:-1], millis[1:])]
