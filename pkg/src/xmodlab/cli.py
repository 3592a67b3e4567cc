"""Command-line interface.

    xmodlab [--corpus FILE] [--json] [--seed N] [--cap N] COMMAND ...

Commands operate on a corpus file (see corpus.py for the schema). The
corpus is resolved from --corpus, then the XMODLAB_CORPUS directory
(standard.json inside it), then the packaged default.

Exit codes: 0 success, 1 mathematical failure (NOT FLAT, not admissible,
condition fails), 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .config import DEFAULT_LIMITS, Limits
from .corpus import Corpus, _load_localizer, load_corpus_file
from .errors import (ConditionFails, ParseError, ValidationError,
                     XModLabError)
from .flatness import (admissibility_scan, apply_to_ses, counterexample_demo,
                       fiberwise_condition, fiberwise_localize)
from .localize import Localizer, NullificationLocalizer

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2


def _default_corpus_path() -> str:
    env_dir = os.environ.get("XMODLAB_CORPUS")
    if env_dir:
        return os.path.join(env_dir, "standard.json")
    return str(resources.files("xmodlab").joinpath("data", "standard.json"))


def _emit(args, human_lines: list[str], summary: dict) -> None:
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _get(table: dict, name: str, what: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "(none)"
        raise ParseError(f"no {what} named '{name}'; known: {known}")
    return table[name]


def _resolve_localizer(corpus: Corpus, name: str) -> Localizer:
    if name in corpus.localizers:
        return corpus.localizers[name]
    return _load_localizer(name, name, corpus)


def cmd_validate(args, corpus: Corpus, limits: Limits) -> int:
    counts = {"groups": len(corpus.groups) + len(corpus.ab_groups),
              "xmods": len(corpus.xmods),
              "morphisms": len(corpus.morphisms) + len(corpus.ab_morphisms),
              "sequences": len(corpus.sequences),
              "localizers": len(corpus.localizers)}
    lines = ["corpus valid"] + [f"  {k}: {v}" for k, v in sorted(counts.items())]
    _emit(args, lines, {"command": "validate", "status": "pass",
                        "counts": counts})
    return EXIT_OK


def cmd_localize(args, corpus: Corpus, limits: Limits) -> int:
    t = _get(corpus.xmods, args.object, "crossed module")
    loc = _resolve_localizer(corpus, args.localizer)
    res = loc.localize(t, limits)
    lines = [f"{loc.name}({args.object}) = {res.local.describe()}",
             f"stages: {len(res.trace)}",
             f"already local: {loc.is_local(t, limits)}"]
    _emit(args, lines, {"command": "localize", "status": "pass",
                        "object": args.object, "localizer": loc.name,
                        "local": res.local.describe(),
                        "stages": len(res.trace)})
    return EXIT_OK


def cmd_nullify(args, corpus: Corpus, limits: Limits) -> int:
    t = _get(corpus.xmods, args.object, "crossed module")
    a = _get(corpus.xmods, args.annihilator, "crossed module")
    loc = NullificationLocalizer(a, name=f"nullify:{args.annihilator}")
    res = loc.localize(t, limits)
    lines = [f"{loc.name}({args.object}) = {res.local.describe()}",
             f"stages: {len(res.trace)}",
             f"acyclic: {res.local.is_trivial()}"]
    _emit(args, lines, {"command": "nullify", "status": "pass",
                        "object": args.object, "annihilator": args.annihilator,
                        "local": res.local.describe(),
                        "stages": len(res.trace),
                        "acyclic": res.local.is_trivial()})
    return EXIT_OK


def cmd_flat_check(args, corpus: Corpus, limits: Limits) -> int:
    s = _get(corpus.sequences, args.sequence, "sequence")
    loc = _resolve_localizer(corpus, args.localizer)
    report = apply_to_ses(loc, s, limits)
    _emit(args, [f"{args.sequence} under {loc.name}: {report.describe()}"],
          {"command": "flat-check", "sequence": args.sequence,
           "localizer": loc.name,
           "status": "pass" if report.flat else "fail",
           "report": report.describe()})
    return EXIT_OK if report.flat else EXIT_MATH_FAIL


def cmd_fiberwise(args, corpus: Corpus, limits: Limits) -> int:
    s = _get(corpus.sequences, args.sequence, "sequence")
    loc = _resolve_localizer(corpus, args.localizer)
    ok, witness = fiberwise_condition(loc, s, limits)
    if not ok:
        _emit(args, [f"fiberwise condition FAILS at witness {witness}"],
              {"command": "fiberwise", "sequence": args.sequence,
               "localizer": loc.name, "status": "fail",
               "witness": list(witness)})
        return EXIT_MATH_FAIL
    result = fiberwise_localize(loc, s, limits)
    status = "pass" if result.comparison_is_equivalence else "fail"
    lines = ["fiberwise condition holds",
             f"fiberwise kernel: {result.sequence.kernel.describe()}",
             f"new middle object: {result.sequence.total.describe()}",
             f"comparison is an equivalence: {result.comparison_is_equivalence}"]
    _emit(args, lines,
          {"command": "fiberwise", "sequence": args.sequence,
           "localizer": loc.name, "status": status,
           "kernel": result.sequence.kernel.describe(),
           "middle": result.sequence.total.describe(),
           "comparison_is_equivalence": result.comparison_is_equivalence})
    return EXIT_OK if result.comparison_is_equivalence else EXIT_MATH_FAIL


def cmd_admissibility_scan(args, corpus: Corpus, limits: Limits) -> int:
    loc = _resolve_localizer(corpus, args.localizer)
    report = admissibility_scan(loc, corpus.xmods, limits, seed=args.seed)
    _emit(args, [report.describe()],
          {"command": "admissibility-scan", "localizer": loc.name,
           "status": "pass" if report.verdict else "fail",
           **report.summary()})
    return EXIT_OK if report.verdict else EXIT_MATH_FAIL


def cmd_counterexample(args, corpus: Corpus, limits: Limits) -> int:
    report = counterexample_demo()
    _emit(args, report.lines(),
          {"command": "counterexample",
           "status": "pass" if report.flat else "fail",
           **report.summary()})
    return EXIT_OK if report.flat else EXIT_MATH_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmodlab",
        description="A laboratory for localizing crossed modules of groups "
                    "and testing exact sequences for flatness.")
    parser.add_argument("--corpus", metavar="FILE",
                        help="corpus file (default: $XMODLAB_CORPUS/"
                             "standard.json, then the packaged corpus)")
    parser.add_argument("--json", action="store_true",
                        help="print a machine-readable summary")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized scan ordering")
    parser.add_argument("--cap", type=int, default=None,
                        help="search budget override")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", help="load and validate the corpus")
    p = sub.add_parser("localize", help="localize a named crossed module")
    p.add_argument("object")
    p.add_argument("localizer")
    p = sub.add_parser("nullify", help="nullify a crossed module at another")
    p.add_argument("object")
    p.add_argument("annihilator")
    p = sub.add_parser("flat-check",
                       help="test a sequence for flatness under a localizer")
    p.add_argument("sequence")
    p.add_argument("localizer")
    p = sub.add_parser("fiberwise",
                       help="fiberwise-localize the kernel of a sequence")
    p.add_argument("sequence")
    p.add_argument("localizer")
    p = sub.add_parser("admissibility-scan",
                       help="scan pullback squares of regular epis between "
                            "local objects")
    p.add_argument("localizer")
    sub.add_parser("counterexample",
                   help="run the infinite-coefficient non-flat pullback demo")
    return parser


_DISPATCH = {
    "validate": cmd_validate,
    "localize": cmd_localize,
    "nullify": cmd_nullify,
    "flat-check": cmd_flat_check,
    "fiberwise": cmd_fiberwise,
    "admissibility-scan": cmd_admissibility_scan,
    "counterexample": cmd_counterexample,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    limits = DEFAULT_LIMITS if args.cap is None else DEFAULT_LIMITS.scaled(args.cap)
    path = args.corpus or _default_corpus_path()
    try:
        corpus = load_corpus_file(path, limits)
        return _DISPATCH[args.command](args, corpus, limits)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionFails as exc:
        print(f"condition fails: {exc}", file=sys.stderr)
        return EXIT_MATH_FAIL
    except XModLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
