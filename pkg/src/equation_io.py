"""
Text formats: equation files, 3-partition instance files and flat result
records (JSON object or key=value lines).

Equation file:
    form=<sph|or|nonor> genus=<g>
    <one coefficient word per line>
Lines starting with '#' are comments, except ``# instance: k=<k> S=<s1,...>``
which records the 3-partition instance an equation was encoded from.
"""
import json
import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from core_group import GroupWord, parse_word, serialize
from equation_solvers import Form, QuadEquation, SolveResult
from hardness import TPartInstance, validate
from lamps import LampError

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^form\s*=\s*(\w+)\s+genus\s*=\s*(\d+)\s*$")
_INSTANCE_NOTE = re.compile(r"^#\s*instance:\s*k\s*=\s*(\d+)\s+S\s*=\s*([\d,\s]+)$")
_K_LINE = re.compile(r"^k\s*=\s*(\d+)$")


class EquationFormatError(LampError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class EquationFile:
    equation: QuadEquation
    instance: Optional[TPartInstance] = None


def _split_values(text: str, line: int) -> List[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise EquationFormatError(f"bad value list {text!r}", line) from exc


def parse_equation_text(text: str, max_len: Optional[int] = None) -> EquationFile:
    header = None
    instance = None
    words: List[GroupWord] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            note = _INSTANCE_NOTE.match(s)
            if note:
                instance = validate(_split_values(note.group(2), number), int(note.group(1)))
            continue
        if header is None:
            m = _HEADER.match(s)
            if m is None:
                raise EquationFormatError(f"expected 'form=<sph|or|nonor> genus=<g>', got {s!r}", number)
            try:
                form = Form(m.group(1))
            except ValueError as exc:
                raise EquationFormatError(f"unknown form {m.group(1)!r}", number) from exc
            header = (form, int(m.group(2)))
            continue
        words.append(parse_word(s, max_len))
    if header is None:
        raise EquationFormatError("missing form/genus header")
    return EquationFile(QuadEquation(header[0], header[1], tuple(words)), instance)


def read_equation_file(path: str, max_len: Optional[int] = None) -> EquationFile:
    with open(path, "r", encoding="utf-8") as f:
        return parse_equation_text(f.read(), max_len)


def format_equation(eq: QuadEquation, instance: Optional[TPartInstance] = None) -> str:
    lines = []
    if instance is not None:
        lines.append("# instance: k=%d S=%s" % (instance.k, ",".join(str(v) for v in instance.values)))
    lines.append(f"form={eq.form.value} genus={eq.genus}")
    lines.extend(serialize(c) for c in eq.coeffs)
    return "\n".join(lines) + "\n"


def parse_instance_text(text: str) -> TPartInstance:
    k = None
    values: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if k is None:
            m = _K_LINE.match(s)
            if m is None:
                raise EquationFormatError(f"expected 'k=<int>', got {s!r}", number)
            k = int(m.group(1))
            continue
        values.extend(_split_values(s, number))
    if k is None:
        raise EquationFormatError("missing k=<int> line")
    return validate(values, k)


def read_instance_file(path: str) -> TPartInstance:
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance_text(f.read())


def format_instance(inst: TPartInstance) -> str:
    return "k=%d\n%s\n" % (inst.k, ",".join(str(v) for v in inst.values))


def flatten_result(
    result: SolveResult,
    partition: Optional[Sequence[Sequence[int]]] = None,
    timing: bool = True,
) -> Dict[str, Any]:
    """Flatten a SolveResult into one level of keys: witness words become witness.<var>."""
    flat: Dict[str, Any] = {"decision": "yes" if result.decision else "no"}
    cert = result.certificate
    flat["d"] = cert.modulus if cert is not None else None
    flat["shifts"] = list(cert.shifts) if cert is not None else None
    if result.witness is not None:
        for name, word in result.witness.assignment.items():
            flat[f"witness.{name}"] = serialize(word)
        flat["verified"] = result.witness.verified
    else:
        flat["verified"] = False
    flat["enumerated"] = result.stats.enumerated
    flat["millis"] = int(round(result.stats.millis)) if timing else 0
    if result.stats.strategy:
        flat["strategy"] = result.stats.strategy
    if cert is not None and cert.clusters:
        flat["clusters"] = [list(c) for c in cert.clusters]
    if partition is not None:
        flat["partition"] = [list(p) for p in partition]
    return flat


def _render(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def format_key_values(flat: Dict[str, Any]) -> str:
    return "\n".join(f"{key}={_render(value)}" for key, value in flat.items())


def format_json(flat: Dict[str, Any]) -> str:
    return json.dumps(flat, ensure_ascii=False)
