"""
Bounded brute-force checker for quadratic equations.

Every variable v = (delta_v, f_v) is searched with |delta_v| <= B and
supp(f_v) in [-B, B]. Once the deltas are fixed the lamp part of the equation
is affine over GF(2) in the bits of the f_v, so instead of listing all lamp
configurations we ask whether the constant part lies in the span of the
columns x^p * P_v (Gaussian elimination on bit-packed columns). Where a
variable's t-exponent is forced by the total-displacement condition it is
solved for rather than enumerated.
"""
import itertools
import logging
from typing import Dict, Iterator, List, NamedTuple, Optional

import settings
from core_group import LampElement
from equation_solvers import Form, QuadEquation
from lamps import LampConfig, LampError

logger = logging.getLogger(__name__)


class OracleBudgetError(LampError):
    pass


class _Token(NamedTuple):
    """A variable occurrence (name, sign) or a constant element."""
    name: Optional[str]
    sign: int = 0
    element: Optional[LampElement] = None


def _tokens(eq: QuadEquation) -> List[_Token]:
    out: List[_Token] = []
    if eq.form is Form.ORIENTABLE:
        for i in range(1, eq.genus + 1):
            out += [_Token(f"x{i}", 1), _Token(f"y{i}", 1), _Token(f"x{i}", -1), _Token(f"y{i}", -1)]
    elif eq.form is Form.NONORIENTABLE:
        for i in range(1, eq.genus + 1):
            out += [_Token(f"x{i}", 1), _Token(f"x{i}", 1)]
    for j, c in enumerate(eq.elements(), start=1):
        out += [_Token(f"z{j}", -1), _Token(None, element=c), _Token(f"z{j}", 1)]
    return out


def _centered(bound: int) -> List[int]:
    """0, 1, -1, 2, -2, ..., bound, -bound."""
    values = [0]
    for n in range(1, bound + 1):
        values += [n, -n]
    return values


def _in_span(columns: List[LampConfig], target: LampConfig) -> bool:
    if not target:
        return True
    cols = [c for c in columns if c]
    if not cols:
        return False
    base = min([target.base] + [c.base for c in cols])
    basis: Dict[int, int] = {}
    for col in cols:
        v = col.aligned(base)
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    v = target.aligned(base)
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return False
        v ^= basis[top]
    return True


def _assignments(
    free: List[str],
    forced: Optional[str],
    nets: Dict[str, int],
    constant_delta: int,
    bound: int,
) -> Iterator[Dict[str, int]]:
    choices = _centered(bound)
    for combo in itertools.product(choices, repeat=len(free)):
        deltas = dict(zip(free, combo))
        if forced is None:
            yield deltas
            continue
        rest = constant_delta + sum(nets[v] * deltas[v] for v in free)
        if rest % nets[forced]:
            continue
        deltas[forced] = -rest // nets[forced]
        yield deltas


def oracle_solve(eq: QuadEquation, bound: int, budget: Optional[int] = None) -> bool:
    """True iff some assignment within ``bound`` satisfies ``eq``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    tokens = _tokens(eq)
    names = eq.variables()
    nets = {v: 0 for v in names}
    constant_delta = 0
    for tok in tokens:
        if tok.element is not None:
            constant_delta += tok.element.delta
        elif tok.name is not None:
            nets[tok.name] += tok.sign
    moving = [v for v in names if nets[v]]
    forced = moving[-1] if moving else None
    free = [v for v in names if v != forced]
    if forced is None and constant_delta != 0:
        return False

    width = 2 * bound + 1
    work = width ** len(free) * max(1, len(names) * width)
    limit = budget if budget is not None else settings.oracle_budget()
    if work > limit:
        raise OracleBudgetError(f"oracle work {work} exceeds budget {limit}")
    logger.debug("oracle: %d free variables, forced=%s, bound=%d", len(free), forced, bound)

    for deltas in _assignments(free, forced, nets, constant_delta, bound):
        constant = LampConfig.zero()
        polys = {v: LampConfig.zero() for v in names}
        after = 0
        for tok in reversed(tokens):
            name = tok.name
            if tok.element is not None:
                constant = constant + tok.element.lamps.shift(after)
                after += tok.element.delta
            elif name is None:
                continue
            elif tok.sign == 1:
                polys[name] = polys[name] + LampConfig.monomial(-after)
                after += deltas[name]
            else:
                # v^-1 = (-delta_v, x^{delta_v} f_v)
                polys[name] = polys[name] + LampConfig.monomial(deltas[name] - after)
                after -= deltas[name]
        columns = [
            polys[v].times_monomial(p)
            for v in names if polys[v]
            for p in range(-bound, bound + 1)
        ]
        if _in_span(columns, constant):
            return True
    return False
