"""
Command-line front end.

    python src/cli.py eval "atat^3"
    python src/cli.py conj a taT --search
    python src/cli.py solve equation.txt --oracle-check 4 --json
    python src/cli.py encode-3part instance.txt --out equation.txt
    python src/cli.py bench orientable --sizes 1000,2000 --seed 7 --no-timing

Exit codes: 0 decided yes (or plain success), 1 decided no, 2 input error,
3 solver and oracle disagree.
"""
import argparse
import logging
import sys
import timeit
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import settings
from benchmark import SUITES, run_bench
from conjugacy import find_conjugator, is_conjugate
from core_group import (
    GroupWord,
    LampElement,
    commutator_witness,
    eval_word,
    in_derived,
    in_V,
    normal_form_word,
    parse_word,
    serialize,
    sqrt_witness,
    two_squares_witness,
)
from equation_io import (
    flatten_result,
    format_equation,
    format_json,
    format_key_values,
    read_equation_file,
    read_instance_file,
)
from equation_solvers import solve
from hardness import decode, encode, encode_genus_one
from lamps import LampError
from log_config import setup_logging
from oracle import oracle_solve

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_DISAGREE = 3


@dataclass
class RunReport:
    command: str
    payload: Dict[str, Any] = field(default_factory=dict)
    millis: float = 0.0
    exit_code: int = EXIT_YES
    text: Optional[str] = None

    def render(self, as_json: bool) -> str:
        if as_json:
            return format_json(self.payload)
        if self.text is not None:
            return self.text
        return format_key_values(self.payload)


def _decision(flag: bool) -> str:
    return "yes" if flag else "no"


def _exit_for(flag: bool) -> int:
    return EXIT_YES if flag else EXIT_NO


def _max_len(args: argparse.Namespace) -> int:
    # --max-len beats LLQ_MAX_LEN beats the default
    if args.max_len is not None:
        return min(args.max_len, settings.HARD_MAX_LEN)
    return settings.max_word_length()


def _word(args: argparse.Namespace, text: str) -> GroupWord:
    return parse_word(text, _max_len(args))


def _word_of(g: LampElement) -> str:
    return serialize(normal_form_word(g))


def cmd_eval(args: argparse.Namespace) -> RunReport:
    g = eval_word(_word(args, args.word))
    payload = {"delta": g.delta, "supp": g.lamps.support()}
    return RunReport("eval", payload, text=g.describe())


def cmd_is_square(args: argparse.Namespace) -> RunReport:
    g = eval_word(_word(args, args.word))
    root = sqrt_witness(g)
    payload: Dict[str, Any] = {"decision": _decision(root is not None)}
    if root is not None:
        payload["root"] = _word_of(root)
    return RunReport("is-square", payload, exit_code=_exit_for(root is not None))


def cmd_in_derived(args: argparse.Namespace) -> RunReport:
    g = eval_word(_word(args, args.word))
    member = in_derived(g)
    payload: Dict[str, Any] = {"decision": _decision(member)}
    if member:
        x, y = commutator_witness(g)
        payload["witness.x"] = _word_of(x)
        payload["witness.y"] = _word_of(y)
    return RunReport("in-derived", payload, exit_code=_exit_for(member))


def cmd_in_v(args: argparse.Namespace) -> RunReport:
    g = eval_word(_word(args, args.word))
    member = in_V(g)
    payload: Dict[str, Any] = {"decision": _decision(member)}
    if member:
        x, y = two_squares_witness(g)
        payload["witness.x1"] = _word_of(x)
        payload["witness.x2"] = _word_of(y)
    return RunReport("in-V", payload, exit_code=_exit_for(member))


def cmd_conj(args: argparse.Namespace) -> RunReport:
    c1 = eval_word(_word(args, args.word1))
    c2 = eval_word(_word(args, args.word2))
    if not args.search:
        decided = is_conjugate(c1, c2)
        return RunReport("conj", {"decision": _decision(decided)}, exit_code=_exit_for(decided))
    answer = find_conjugator(c1, c2)
    payload: Dict[str, Any] = {"decision": _decision(answer.conjugate)}
    if answer.conjugate and answer.conjugator is not None:
        payload["conjugator"] = serialize(answer.conjugator)
        payload["shift"] = answer.shift
        payload["verified"] = True
    return RunReport("conj", payload, exit_code=_exit_for(answer.conjugate))


def cmd_solve(args: argparse.Namespace) -> RunReport:
    loaded = read_equation_file(args.file, _max_len(args))
    eq = loaded.equation
    result = solve(eq, threads=args.threads, strategy=args.strategy)
    partition = None
    if (
        result.decision
        and result.certificate is not None
        and loaded.instance is not None
    ):
        partition = decode(loaded.instance, result.certificate)
    payload = flatten_result(result, partition, timing=not args.no_timing)
    code = _exit_for(result.decision)
    if args.oracle_check is not None:
        agreed = oracle_solve(eq, args.oracle_check)
        payload["oracle"] = _decision(agreed)
        if agreed != result.decision:
            logger.error("solver says %s, oracle(B=%d) says %s", _decision(result.decision),
                         args.oracle_check, _decision(agreed))
            payload["error"] = "solver and oracle disagree"
            code = EXIT_DISAGREE
    return RunReport("solve", payload, exit_code=code)


def cmd_oracle(args: argparse.Namespace) -> RunReport:
    eq = read_equation_file(args.file, _max_len(args)).equation
    found = oracle_solve(eq, args.bound)
    return RunReport("oracle", {"decision": _decision(found), "bound": args.bound}, exit_code=_exit_for(found))


def cmd_encode_3part(args: argparse.Namespace) -> RunReport:
    inst = read_instance_file(args.file)
    eq = encode_genus_one(inst) if args.genus_one else encode(inst)
    text = format_equation(eq, inst)
    payload: Dict[str, Any] = {"k": inst.k, "target": inst.target, "coefficients": eq.k, "W": eq.size()}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        payload["out"] = args.out
        return RunReport("encode-3part", payload)
    payload["equation"] = text
    return RunReport("encode-3part", payload, text=text.rstrip("\n"))


def _sizes(raw: Optional[str]) -> Optional[List[int]]:
    if not raw:
        return None
    try:
        return [int(s) for s in raw.split(",") if s.strip()]
    except ValueError as exc:
        raise LampError(f"bad --sizes value {raw!r}") from exc


def cmd_bench(args: argparse.Namespace) -> RunReport:
    df = run_bench(args.suite, _sizes(args.sizes), args.seed, args.repeats, timing=not args.no_timing)
    csv = df.to_csv(index=False)
    payload: Dict[str, Any] = {"suite": args.suite, "rows": len(df)}
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(csv)
        payload["out"] = args.out
        return RunReport("bench", payload)
    return RunReport("bench", payload, text=csv.rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one flat JSON object")
    common.add_argument("--max-len", type=int, default=None, help="cap on expanded word length")
    common.add_argument("--threads", type=int, default=None, help="workers for partitioned enumeration")
    common.add_argument("--no-timing", action="store_true", help="report millis as 0")

    parser = argparse.ArgumentParser(prog="llq", description="Quadratic equations over the lamplighter group L2")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], RunReport], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    for name, handler, help_text in (
        ("eval", cmd_eval, "evaluate a word to (delta; support)"),
        ("is-square", cmd_is_square, "decide whether a word is a square"),
        ("in-derived", cmd_in_derived, "decide membership in the derived subgroup"),
        ("in-V", cmd_in_v, "decide membership in the verbal subgroup of squares"),
    ):
        add(name, handler, help_text).add_argument("word")

    p = add("conj", cmd_conj, "decide conjugacy of two words")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--search", action="store_true", help="also return a verified conjugator")

    p = add("solve", cmd_solve, "solve an equation file")
    p.add_argument("file")
    p.add_argument("--oracle-check", type=int, default=None, metavar="B",
                   help="cross-check against the bounded oracle")
    p.add_argument("--strategy", choices=["tuple", "sweep"], default=None,
                   help="force the d=0 spherical search")

    p = add("oracle", cmd_oracle, "bounded brute-force check of an equation file")
    p.add_argument("file")
    p.add_argument("bound", type=int)

    p = add("encode-3part", cmd_encode_3part, "encode a 3-partition instance file as an equation file")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    p.add_argument("--genus-one", action="store_true", help="prepend a single square x1^2")

    p = add("bench", cmd_bench, "run a benchmark suite and emit CSV")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--sizes", default=None, help="comma-separated sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--out", default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    logger.info("command %s started", args.command)
    started = timeit.default_timer()
    try:
        report = args.handler(args)
    except (LampError, OSError, ValueError) as exc:
        logger.info("command %s failed: %s", args.command, exc)
        report = RunReport(args.command, {"error": str(exc)}, exit_code=EXIT_INPUT, text=f"error: {exc}")
        print(report.render(args.json), file=sys.stderr)
        return report.exit_code
    report.millis = (timeit.default_timer() - started) * 1000.0
    logger.info("command %s finished with exit %d in %.1f ms", args.command, report.exit_code, report.millis)
    print(report.render(args.json))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
