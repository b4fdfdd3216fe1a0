"""
Decision procedures, shift certificates and explicit witnesses for quadratic
equations over L2 in standard form:

    spherical       z1^-1 c1 z1 ... zk^-1 ck zk = 1
    orientable      [x1, y1] ... [xg, yg] z1^-1 c1 z1 ... zk^-1 ck zk = 1
    non-orientable  x1^2 ... xg^2 z1^-1 c1 z1 ... zk^-1 ck zk = 1

Writing c_i = (gamma_i, F_i), a spherical equation is solvable iff the gammas
sum to 0 and, for d = gcd(|gamma_i|), some shifts delta_i make
sum_i F_i^{delta_i} vanish modulo d (exactly, when d = 0). A certificate is
that tuple of shifts; witnesses are recovered from it with lift_certificate.
"""
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from math import gcd
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple, TypeVar

import settings
from binomial_algebra import Residues, lift_certificate, project
from core_group import (
    GroupWord,
    LampElement,
    commutator,
    commutator_witness,
    conjugate,
    eval_word,
    inv,
    mul,
    normal_form_word,
    product,
    two_squares_witness,
)
from lamps import LampConfig, LampError, WitnessCheckError

logger = logging.getLogger(__name__)

T = TypeVar("T")


class MalformedEquationError(LampError):
    pass


class MissingVariableError(LampError):
    pass


class Form(Enum):
    SPHERICAL = "sph"
    ORIENTABLE = "or"
    NONORIENTABLE = "nonor"


@dataclass(frozen=True)
class QuadEquation:
    form: Form
    genus: int
    coeffs: Tuple[GroupWord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.form is Form.SPHERICAL:
            if self.genus != 0:
                raise MalformedEquationError("spherical equations have genus 0")
            if not self.coeffs:
                raise MalformedEquationError("spherical equations need at least one coefficient")
        elif self.genus < 1:
            raise MalformedEquationError(f"{self.form.value} equations need genus >= 1")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def variables(self) -> List[str]:
        names: List[str] = []
        if self.form is Form.ORIENTABLE:
            for i in range(1, self.genus + 1):
                names += [f"x{i}", f"y{i}"]
        elif self.form is Form.NONORIENTABLE:
            names += [f"x{i}" for i in range(1, self.genus + 1)]
        names += [f"z{j}" for j in range(1, self.k + 1)]
        return names

    def size(self) -> int:
        """|W|: coefficient letters plus two per variable."""
        return sum(len(c) for c in self.coeffs) + 2 * len(self.variables())

    def elements(self) -> List[LampElement]:
        return [eval_word(c) for c in self.coeffs]


@dataclass(frozen=True)
class ShiftCertificate:
    """
    shifts[i] = delta_i means coefficient i contributes F_i^{delta_i} (lamps
    moved by -delta_i). prefix_shifts[i] = gamma_{i+1} + ... + gamma_k.
    """
    modulus: int
    shifts: Tuple[int, ...]
    prefix_shifts: Tuple[int, ...] = ()
    clusters: Tuple[Tuple[int, ...], ...] = ()


@dataclass
class Witness:
    assignment: Dict[str, GroupWord]
    verified: bool = False


@dataclass
class SolveStats:
    enumerated: int = 0
    millis: float = 0.0
    strategy: str = ""


@dataclass
class SolveResult:
    decision: bool
    certificate: Optional[ShiftCertificate] = None
    witness: Optional[Witness] = None
    stats: SolveStats = field(default_factory=SolveStats)


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def evaluate_equation(eq: QuadEquation, assignment: Mapping[str, GroupWord]) -> LampElement:
    missing = [v for v in eq.variables() if v not in assignment]
    if missing:
        raise MissingVariableError("no value for " + ", ".join(missing))
    value = {name: eval_word(assignment[name]) for name in eq.variables()}
    acc = LampElement.identity()
    if eq.form is Form.ORIENTABLE:
        for i in range(1, eq.genus + 1):
            acc = mul(acc, commutator(value[f"x{i}"], value[f"y{i}"]))
    elif eq.form is Form.NONORIENTABLE:
        for i in range(1, eq.genus + 1):
            acc = mul(acc, value[f"x{i}"].square())
    for j, c in enumerate(eq.elements(), start=1):
        acc = mul(acc, conjugate(c, value[f"z{j}"]))
    return acc


def verify(eq: QuadEquation, witness: Witness) -> bool:
    return evaluate_equation(eq, witness.assignment).is_identity()


def _identity_assignment(eq: QuadEquation) -> Dict[str, GroupWord]:
    return {name: GroupWord() for name in eq.variables()}


def _finish(eq: QuadEquation, assignment: Dict[str, GroupWord]) -> Witness:
    witness = Witness(assignment)
    if not verify(eq, witness):
        raise WitnessCheckError("constructed witness does not satisfy the equation")
    witness.verified = True
    return witness


def _suffix_sums(gammas: Sequence[int]) -> List[int]:
    out = [0] * len(gammas)
    running = 0
    for i in range(len(gammas) - 1, -1, -1):
        out[i] = running
        running += gammas[i]
    return out


def _lift_witness(
    elements: Sequence[LampElement],
    shifts: Sequence[int],
    lead_delta: Optional[int] = None,
) -> Tuple[Optional[LampElement], List[LampElement]]:
    """
    Turn certificate shifts into conjugators z_i (and, for the genus-one
    form, the square root x). With Delta_i the sum of later gammas,
    z_i = (delta_i - Delta_i, x^{Delta_i} f_i*) where the f_i* solve
    sum (1 + x^{-gamma_i}) f_i* = sum F_i^{delta_i}.
    """
    gammas = [c.delta for c in elements]
    after = _suffix_sums(gammas)
    target = LampConfig.zero()
    for c, s in zip(elements, shifts):
        target = target + c.lamps.shift(s)
    moduli = [-g for g in gammas]
    if lead_delta is not None:
        moduli = [-lead_delta] + moduli
    lifted = lift_certificate(moduli, target)
    lead: Optional[LampElement] = None
    if lead_delta is not None:
        lead = LampElement(lead_delta, lifted[0].times_monomial(sum(gammas)))
        lifted = lifted[1:]
    zs = [
        LampElement(s - a, f.times_monomial(a))
        for s, a, f in zip(shifts, after, lifted)
    ]
    return lead, zs


# ---------------------------------------------------------------------------
# Partitioned enumeration
# ---------------------------------------------------------------------------

Search = Callable[[Sequence[int], Callable[[], bool]], Tuple[Optional[T], int]]


def run_partitioned(candidates: Sequence[int], search: Search, threads: int) -> Tuple[Optional[T], int]:
    """
    Split the first coordinate into contiguous chunks searched in parallel.
    The lowest successful chunk wins and the count covers every chunk up to
    and including it, so answers and counts do not depend on ``threads``.
    """
    if threads <= 1 or len(candidates) < 2:
        return search(candidates, lambda: False)
    parts = min(threads, len(candidates))
    size = -(-len(candidates) // parts)
    chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]
    winner = [len(chunks)]
    lock = threading.Lock()

    def work(idx: int) -> Tuple[Optional[T], int]:
        found, count = search(chunks[idx], lambda: winner[0] < idx)
        if found is not None:
            with lock:
                winner[0] = min(winner[0], idx)
        return found, count

    with ThreadPoolExecutor(max_workers=parts) as pool:
        outcomes = list(pool.map(work, range(len(chunks))))
    total = 0
    for found, count in outcomes:
        total += count
        if found is not None:
            return found, total
    return None, total


def rotation_search(masks: Sequence[int], d: int, threads: int = 1) -> Tuple[Optional[Tuple[int, ...]], int]:
    """
    Least (delta_1, ..., delta_{k-1}, 0) in [0, d)^k with the XOR of the residue
    masks, each rotated by its delta, equal to 0. Returns (shifts, tuples tried).
    """
    k = len(masks)
    if k == 0:
        return (), 1
    rotated: List[List[int]] = []
    for m in masks:
        base = Residues.from_mask(d, m)
        rotated.append([base.rotate(s).mask for s in range(d)])
    goal = rotated[-1][0]
    if k == 1:
        return ((0,) if goal == 0 else None), 1

    def search(first: Sequence[int], cancelled: Callable[[], bool]) -> Tuple[Optional[Tuple[int, ...]], int]:
        count = 0
        picks = [0] * (k - 1)

        def walk(i: int, acc: int) -> bool:
            nonlocal count
            if i == k - 1:
                count += 1
                return acc == goal
            options = first if i == 0 else range(d)
            row = rotated[i]
            for s in options:
                if i == 0 and cancelled():
                    return False
                picks[i] = s
                if walk(i + 1, acc ^ row[s]):
                    return True
            return False

        if walk(0, 0):
            return tuple(picks) + (0,), count
        return None, count

    return run_partitioned(list(range(d)), search, threads)


def _popcount(value: int) -> int:
    return bin(value).count("1")


def _window_radius(size: int) -> int:
    return -(-size // 4)


def _merge_clusters(spans: Sequence[Tuple[int, int, int]]) -> Tuple[Tuple[int, ...], ...]:
    """Group indices whose [lo, hi] spans overlap transitively; spans are (lo, hi, index)."""
    clusters: List[List[int]] = []
    reach = None
    for lo, hi, idx in sorted(spans):
        if reach is not None and lo <= reach:
            clusters[-1].append(idx)
            reach = max(reach, hi)
        else:
            clusters.append([idx])
            reach = hi
    return tuple(tuple(sorted(c)) for c in clusters)


class _TupleSearch:
    """
    Literal enumeration of d = 0 shift tuples: every shifted support must lie
    in [-R, R], the first k-1 shifts range over their candidate windows in
    increasing order and the last one is forced by aligning masks.
    """

    def __init__(self, lamps: Sequence[LampConfig], radius: int):
        self.lamps = list(lamps)
        self.radius = radius
        self.candidates: List[List[int]] = []
        for f in self.lamps:
            if not f:
                self.candidates.append([0])
            elif f.diam() > 2 * radius:
                self.candidates.append([])
            else:
                self.candidates.append(list(range(f.high - radius, f.low + radius + 1)))
        pops = [f.popcount() for f in self.lamps]
        self.remaining = [sum(pops[i:]) for i in range(len(pops) + 1)]

    def tuple_count(self) -> int:
        total = 1
        for c in self.candidates[:-1]:
            total *= len(c)
        return total

    def feasible(self) -> bool:
        return all(self.candidates)

    def _placed(self, i: int, shift: int) -> int:
        f = self.lamps[i]
        if not f:
            return 0
        return f.mask << (f.low - shift + self.radius)

    def search(self, first: Sequence[int], cancelled: Callable[[], bool]) -> Tuple[Optional[Tuple[int, ...]], int]:
        k = len(self.lamps)
        picks = [0] * k
        count = 0
        last = self.lamps[-1]

        def close(acc: int) -> bool:
            if not last:
                if acc:
                    return False
                picks[k - 1] = 0
                return True
            if not acc:
                return False
            low = (acc & -acc).bit_length() - 1
            if acc >> low != last.mask:
                return False
            start = low - self.radius
            if start + last.diam() > self.radius:
                return False
            picks[k - 1] = last.low - start
            return True

        def walk(i: int, acc: int) -> bool:
            nonlocal count
            if _popcount(acc) > self.remaining[i]:
                return False
            if i == k - 1:
                count += 1
                return close(acc)
            options = first if i == 0 else self.candidates[i]
            for s in options:
                if i == 0 and cancelled():
                    return False
                picks[i] = s
                if walk(i + 1, acc ^ self._placed(i, s)):
                    return True
            return False

        if walk(0, 0):
            return tuple(picks), count
        return None, count

    def clusters(self, shifts: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
        spans = [(f.low - s, f.high - s, i) for i, (f, s) in enumerate(zip(self.lamps, shifts)) if f]
        empties = tuple((i,) for i, f in enumerate(self.lamps) if not f)
        return tuple(sorted(_merge_clusters(spans) + empties))


class _SweepSearch:
    """
    Exact d = 0 search placing the coefficient lamps in order of their
    leftmost lamp. With S the running sum seen from the last placed leftmost
    lamp, the lowest lit lamp of S must be cancelled by a later term, so the
    next term starts between here and that lamp. When S vanishes the placed
    terms form a closed cluster and the next one starts afresh at 0. Failed
    states (remaining multiset, S) are memoized.
    """

    def __init__(self, lamps: Sequence[LampConfig]):
        self.lamps = list(lamps)
        self.masks: List[int] = []
        self.owners: List[List[int]] = []
        for i, f in enumerate(self.lamps):
            if not f:
                continue
            if f.mask in self.masks:
                self.owners[self.masks.index(f.mask)].append(i)
            else:
                self.masks.append(f.mask)
                self.owners.append([i])
        self.pops = [_popcount(m) for m in self.masks]
        self.failed: Set[Tuple[Tuple[int, ...], int]] = set()
        self.path: List[Tuple[int, int]] = []
        self.nodes = 0

    def _weight(self, counts: Tuple[int, ...]) -> int:
        return sum(c * p for c, p in zip(counts, self.pops))

    def _walk(self, counts: Tuple[int, ...], acc: int) -> bool:
        self.nodes += 1
        if not any(counts):
            return acc == 0
        key = (counts, acc)
        if key in self.failed:
            return False
        if _popcount(acc) <= self._weight(counts):
            if acc == 0:
                moves = [(j, -1) for j, c in enumerate(counts) if c]
            else:
                lowest = (acc & -acc).bit_length() - 1
                moves = [(j, off) for j, c in enumerate(counts) if c for off in range(lowest + 1)]
            for j, off in moves:
                nxt = counts[:j] + (counts[j] - 1,) + counts[j + 1:]
                base = 0 if off < 0 else acc >> off
                self.path.append((j, off))
                if self._walk(nxt, base ^ self.masks[j]):
                    return True
                self.path.pop()
        self.failed.add(key)
        return False

    def search(self) -> Tuple[Optional[Tuple[int, ...]], Tuple[Tuple[int, ...], ...], int]:
        counts = tuple(len(o) for o in self.owners)
        if not self._walk(counts, 0):
            return None, (), self.nodes
        pools = [list(o) for o in self.owners]
        segments: List[List[Tuple[int, int]]] = []
        here = 0
        for j, off in self.path:
            if off < 0:
                segments.append([])
                here = 0
            else:
                here += off
            segments[-1].append((pools[j].pop(0), here))
        shifts = [0] * len(self.lamps)
        clusters: List[Tuple[int, ...]] = []
        for segment in segments:
            lo = min(start for _, start in segment)
            hi = max(start + self.lamps[i].diam() for i, start in segment)
            mid = (lo + hi) // 2
            for i, start in segment:
                shifts[i] = self.lamps[i].low - (start - mid)
            clusters.append(tuple(sorted(i for i, _ in segment)))
        clusters += [(i,) for i, f in enumerate(self.lamps) if not f]
        return tuple(shifts), tuple(sorted(clusters)), self.nodes


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def _case_one(
    lamps: Sequence[LampConfig],
    size: int,
    threads: int,
    strategy: Optional[str],
) -> Tuple[Optional[Tuple[int, ...]], Tuple[Tuple[int, ...], ...], int, str]:
    """Shifts, clusters, search count and strategy name for the d = 0 case."""
    tuples = _TupleSearch(lamps, _window_radius(size))
    if not tuples.feasible():
        logger.debug("case d=0: a coefficient is wider than the window, no solution")
        return None, (), 0, "window"
    chosen = strategy or ("tuple" if tuples.tuple_count() <= settings.tuple_budget() else "sweep")
    logger.debug("case d=0: %d candidate tuples, strategy %s", tuples.tuple_count(), chosen)
    if chosen == "sweep":
        shifts, clusters, nodes = _SweepSearch(lamps).search()
        return shifts, clusters, nodes, chosen
    first = tuples.candidates[0] if len(lamps) > 1 else [0]
    found, count = run_partitioned(first, tuples.search, threads)
    if found is None:
        return None, (), count, chosen
    return found, tuples.clusters(found), count, chosen


def solve_spherical(
    eq: QuadEquation,
    threads: Optional[int] = None,
    strategy: Optional[str] = None,
) -> SolveResult:
    """
    Decide z1^-1 c1 z1 ... zk^-1 ck zk = 1.

    ``strategy`` forces "tuple" or "sweep" for the d = 0 case; by default the
    literal tuple enumeration runs unless it exceeds LLQ_TUPLE_BUDGET tuples.
    """
    if eq.form is not Form.SPHERICAL:
        raise MalformedEquationError("solve_spherical needs a spherical equation")
    workers = threads if threads is not None else settings.default_threads()
    elements = eq.elements()
    gammas = [c.delta for c in elements]
    if sum(gammas) != 0:
        logger.debug("t-exponents sum to %d, no solution", sum(gammas))
        return SolveResult(False, stats=SolveStats(strategy="balance"))
    d = reduce(gcd, (abs(g) for g in gammas), 0)

    if d == 0:
        shifts, clusters, count, chosen = _case_one([c.lamps for c in elements], eq.size(), workers, strategy)
    else:
        masks = [project(c.lamps, d).mask for c in elements]
        shifts, count = rotation_search(masks, d, workers)
        clusters, chosen = (), "rotation"
    stats = SolveStats(enumerated=count, strategy=chosen)
    if shifts is None:
        return SolveResult(False, stats=stats)
    cert = ShiftCertificate(d, shifts, tuple(_suffix_sums(gammas)), clusters)

    _, zs = _lift_witness(elements, cert.shifts)
    assignment = {f"z{j}": normal_form_word(z) for j, z in enumerate(zs, start=1)}
    return SolveResult(True, cert, _finish(eq, assignment), stats)


def solve_orientable(eq: QuadEquation) -> SolveResult:
    if eq.form is not Form.ORIENTABLE:
        raise MalformedEquationError("solve_orientable needs an orientable equation")
    p = product(eq.elements())
    stats = SolveStats(strategy="abelian")
    if p.delta != 0 or p.lamps.parity() != 0:
        return SolveResult(False, stats=stats)
    assignment = _identity_assignment(eq)
    if not p.is_identity():
        x, y = commutator_witness(inv(p))
        assignment["x1"] = normal_form_word(x)
        assignment["y1"] = normal_form_word(y)
    return SolveResult(True, witness=_finish(eq, assignment), stats=stats)


def _solve_genus_one(eq: QuadEquation, threads: int, strategy: Optional[str]) -> SolveResult:
    elements = eq.elements()
    gammas = [c.delta for c in elements]
    total = sum(gammas)
    if not elements:
        return SolveResult(True, witness=_finish(eq, _identity_assignment(eq)), stats=SolveStats(strategy="trivial"))
    if total % 2:
        return SolveResult(False, stats=SolveStats(strategy="balance"))
    lead = -total // 2
    if lead == 0:
        logger.debug("genus one with x of displacement 0: reducing to the spherical equation")
        inner = solve_spherical(QuadEquation(Form.SPHERICAL, 0, eq.coeffs), threads, strategy)
        if not inner.decision or inner.witness is None:
            return SolveResult(False, stats=inner.stats)
        assignment = dict(inner.witness.assignment)
        assignment["x1"] = GroupWord()
        return SolveResult(True, inner.certificate, _finish(eq, assignment), inner.stats)

    d = reduce(gcd, (abs(g) for g in gammas), abs(lead))
    logger.debug("genus one: x displacement %d, modulus %d", lead, d)
    masks = [project(c.lamps, d).mask for c in elements]
    shifts, count = rotation_search(masks, d, threads)
    stats = SolveStats(enumerated=count, strategy="rotation")
    if shifts is None:
        return SolveResult(False, stats=stats)
    cert = ShiftCertificate(d, shifts, tuple(_suffix_sums(gammas)))
    x, zs = _lift_witness(elements, shifts, lead_delta=lead)
    assert x is not None
    assignment = {"x1": normal_form_word(x)}
    assignment.update({f"z{j}": normal_form_word(z) for j, z in enumerate(zs, start=1)})
    return SolveResult(True, cert, _finish(eq, assignment), stats)


def solve_nonorientable(
    eq: QuadEquation,
    threads: Optional[int] = None,
    strategy: Optional[str] = None,
) -> SolveResult:
    if eq.form is not Form.NONORIENTABLE:
        raise MalformedEquationError("solve_nonorientable needs a non-orientable equation")
    workers = threads if threads is not None else settings.default_threads()
    if eq.genus == 1:
        return _solve_genus_one(eq, workers, strategy)
    p = product(eq.elements())
    stats = SolveStats(strategy="abelian")
    if p.delta % 2 or p.lamps.parity():
        return SolveResult(False, stats=stats)
    assignment = _identity_assignment(eq)
    if not p.is_identity():
        x, y = two_squares_witness(inv(p))
        assignment["x1"] = normal_form_word(x)
        assignment["x2"] = normal_form_word(y)
    return SolveResult(True, witness=_finish(eq, assignment), stats=stats)


def solve(eq: QuadEquation, threads: Optional[int] = None, strategy: Optional[str] = None) -> SolveResult:
    started = time.perf_counter()
    if eq.form is Form.SPHERICAL:
        result = solve_spherical(eq, threads, strategy)
    elif eq.form is Form.ORIENTABLE:
        result = solve_orientable(eq)
    else:
        result = solve_nonorientable(eq, threads, strategy)
    result.stats.millis = (time.perf_counter() - started) * 1000.0
    logger.info(
        "solve form=%s genus=%d k=%d: %s (enumerated=%d, %.1f ms)",
        eq.form.value, eq.genus, eq.k, "yes" if result.decision else "no",
        result.stats.enumerated, result.stats.millis,
    )
    return result
