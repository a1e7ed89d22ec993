"""The ``qp`` command.

Exit codes: 0 affirmative or success, 1 negative result (an axiom fails, a
classification is refused, a theorem check finds a counterexample),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .axioms import Axiom, check, check_all
from .chain import ChainError
from .classify import (
    KINDS,
    NotQuasiPolynomial,
    Refused,
    as_quasi_sugeno,
    as_quasi_term,
    as_quasi_weighted_max,
    as_quasi_weighted_min,
    classify,
    is_quasi_polynomial,
)
from .formats import FormatError, load, serialize
from .poly import SetFunction, dnf_eval
from .table import DiscreteFunction, UnaryMap
from .verify import (
    DEFAULT_BUDGET,
    MODES,
    PORCELAIN_HEADER,
    BudgetExceeded,
    Theorem,
    Universe,
    count_classes,
    random_quasi_polynomials,
    sample_tables,
    verify,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers like 2,0, got {text!r}"
        ) from None


def _axiom(text: str) -> Axiom:
    try:
        return Axiom[text.upper().replace("-", "_")]
    except KeyError:
        names = ", ".join(a.value for a in Axiom)
        raise argparse.ArgumentTypeError(f"unknown axiom {text!r}; expected one of {names}") from None


def _theorem(text: str) -> str:
    if text.lower() == "all":
        return "all"
    try:
        return Theorem.parse(text).value
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qp", description="Quasi-polynomial functions on finite chains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(p):
        p.add_argument("-f", "--file", required=True, help="function table (.qpf, .qsf or .qum)")

    def with_universe(p, modes=True):
        p.add_argument("--m", type=int, required=True, help="chain size")
        p.add_argument("--n", type=int, required=True, help="arity")
        if modes:
            p.add_argument("--mode", choices=MODES, default="exhaustive")
            p.add_argument("--samples", type=int, default=0)
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("eval", help="evaluate a function at a tuple")
    with_file(p)
    p.add_argument("-x", type=_tuple, required=True, help="comma-separated chain elements")

    p = sub.add_parser("axioms", help="check axioms, with a witness for each failure")
    with_file(p)
    p.add_argument("--axiom", type=_axiom, help="check only this axiom")
    p.add_argument("--subset", type=_tuple, help="S for S_MAX_HOM / S_MIN_HOM (default: range hull)")
    p.add_argument("--porcelain", action="store_true")

    p = sub.add_parser("classify", help="recognize quasi-polynomial subclasses")
    with_file(p)
    p.add_argument("--porcelain", action="store_true")

    p = sub.add_parser("factor", help="factor f as p o phi")
    with_file(p)
    p.add_argument("--kind", choices=KINDS, default="general")

    p = sub.add_parser("verify", help="check a characterization theorem over a universe")
    p.add_argument("--theorem", type=_theorem, required=True, help="theorem id or 'all'")
    with_universe(p)
    p.add_argument("--porcelain", action="store_true")

    p = sub.add_parser("count", help="class cardinalities over an exhaustive universe")
    with_universe(p, modes=False)
    p.add_argument("--porcelain", action="store_true")

    p = sub.add_parser("random", help="generate seeded random function tables")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1, help="number of tables")
    p.add_argument(
        "--constraint", choices=("any", "nondecreasing", "quasi-polynomial"), default="any"
    )
    p.add_argument("--out", help="directory for one .qpf file per table (default: stdout)")
    return parser


def _fmt(x: Sequence[int]) -> str:
    return "(" + ",".join(map(str, x)) + ")"


def _load_function(path: str) -> DiscreteFunction:
    obj = load(path)
    if isinstance(obj, UnaryMap):
        return obj.as_function()
    if not isinstance(obj, DiscreteFunction):
        raise UsageError(f"{path}: expected a function table (.qpf or .qum)")
    return obj


def cmd_eval(args, out: TextIO) -> int:
    obj = load(args.file)
    if isinstance(obj, SetFunction):
        value = dnf_eval(obj, args.x)
    elif isinstance(obj, UnaryMap):
        if len(args.x) != 1:
            raise ChainError(f"expected a 1-tuple, got {len(args.x)} components")
        obj.chain.check(args.x[0])
        value = obj(args.x[0])
    else:
        value = obj(*args.x)
    print(value, file=out)
    return OK


def cmd_axioms(args, out: TextIO) -> int:
    f = _load_function(args.file)
    if args.subset is not None and (args.axiom is None or not args.axiom.parameterized):
        raise UsageError("--subset applies only with --axiom S_MAX_HOM or S_MIN_HOM")
    results = [check(f, args.axiom, args.subset)] if args.axiom else check_all(f)
    if args.porcelain:
        print(PORCELAIN_HEADER, file=out)
        for r in results:
            witness = "-" if r.holds else _porcelain_witness(r.witness)
            print(f"axiom={r.axiom.value}\tholds={'yes' if r.holds else 'no'}\twitness={witness}",
                  file=out)
    else:
        for r in results:
            print(r.describe(), file=out)
    if args.axiom is not None:
        return OK if results[0].holds else NEGATIVE
    return OK


def _porcelain_witness(witness: dict) -> str:
    parts = []
    for key, val in witness.items():
        val = ",".join(map(str, val)) if isinstance(val, tuple) else str(val)
        parts.append(f"{key}:{val}")
    return ";".join(parts)


def cmd_classify(args, out: TextIO) -> int:
    f = _load_function(args.file)
    report = classify(f)
    lines = []
    for name, flag in report.flags.items():
        if flag:
            lines.append((name, "yes", ""))
        elif name == "polynomial":
            lines.append((name, "no", ""))
        elif name == "quasi_polynomial":
            lines.append((name, "no", report.recognition.describe()))
        else:
            kind = name.removeprefix("quasi_").replace("_", "-")
            reason = report.refusals[kind]
            if not report.is_quasi_polynomial:
                reason = "not quasi-polynomial"
            lines.append((name, "no", reason))
    if args.porcelain:
        print(PORCELAIN_HEADER, file=out)
        for name, verdict, reason in lines:
            print(f"class={name}\tholds={verdict}\treason={reason or '-'}", file=out)
    else:
        for name, verdict, reason in lines:
            print(f"{name}: {verdict}" + (f" ({reason})" if reason else ""), file=out)
    return OK if report.is_quasi_polynomial else NEGATIVE


_BUILDERS = {
    "sugeno": as_quasi_sugeno,
    "term": as_quasi_term,
    "weighted-max": as_quasi_weighted_max,
    "weighted-min": as_quasi_weighted_min,
}


def cmd_factor(args, out: TextIO) -> int:
    f = _load_function(args.file)
    try:
        if args.kind == "general":
            rec = is_quasi_polynomial(f)
            if not rec.holds:
                raise NotQuasiPolynomial(rec)
            fact = rec.factorization
        else:
            fact = _BUILDERS[args.kind](f)
    except NotQuasiPolynomial as exc:
        print(f"not quasi-polynomial: {exc.recognition.describe()}", file=out)
        return NEGATIVE
    except Refused as exc:
        print(f"refused: {exc.result.describe()}", file=out)
        return NEGATIVE
    print(f"kind: {fact.kind}", file=out)
    print("p: " + " ".join(map(str, fact.p.table)), file=out)
    print("phi: " + " ".join(map(str, fact.phi.values)), file=out)
    if fact.weights is not None:
        print("weights: " + " ".join(map(str, fact.weights)), file=out)
    return OK


def cmd_verify(args, out: TextIO) -> int:
    theorems = list(Theorem) if args.theorem == "all" else [Theorem(args.theorem)]
    u = Universe(args.m, args.n, args.mode, args.samples, args.seed, args.budget)
    reports = [verify(t, u, jobs=args.jobs) for t in theorems]
    if args.porcelain:
        print(PORCELAIN_HEADER, file=out)
        for r in reports:
            print(r.porcelain(), file=out)
    else:
        for r in reports:
            prefix = f"{r.theorem.value}: " if len(reports) > 1 else ""
            print(prefix + r.summary(), file=out)
    return OK if all(r.holds for r in reports) else NEGATIVE


def cmd_count(args, out: TextIO) -> int:
    counts = count_classes(args.m, args.n, budget=args.budget)
    if args.porcelain:
        print(PORCELAIN_HEADER, file=out)
        print(f"m={args.m}\tn={args.n}\t" + "\t".join(f"{k}={v}" for k, v in counts.items()),
              file=out)
    else:
        width = max(map(len, counts))
        for k, v in counts.items():
            print(f"{k:<{width}}  {v}", file=out)
    return OK


def cmd_random(args, out: TextIO) -> int:
    if args.m < 2 or args.n < 1 or args.samples < 1:
        raise UsageError("need --m >= 2, --n >= 1 and --samples >= 1")
    if args.constraint == "quasi-polynomial":
        tables = [f.table for f in random_quasi_polynomials(args.m, args.n, args.samples, args.seed)]
    else:
        tables = sample_tables(args.m, args.n, args.samples, args.seed, args.constraint)
    functions = [DiscreteFunction.from_array(args.m, args.n, t) for t in tables]
    if args.out is None:
        for f in functions:
            out.write(serialize(f))
        return OK
    folder = Path(args.out)
    folder.mkdir(parents=True, exist_ok=True)
    digits = len(str(len(functions) - 1))
    for i, f in enumerate(functions):
        (folder / f"f{i:0{digits}d}.qpf").write_text(serialize(f), encoding="utf-8")
    print(f"wrote {len(functions)} tables to {folder}", file=out)
    return OK


COMMANDS = {
    "eval": cmd_eval,
    "axioms": cmd_axioms,
    "classify": cmd_classify,
    "factor": cmd_factor,
    "verify": cmd_verify,
    "count": cmd_count,
    "random": cmd_random,
}


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(list(argv))
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=err)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (FormatError, ChainError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"qp: error: {exc}", file=err)
    return USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
