"""Command-line front door.

Every subcommand validates its configuration up front, echoes the
resolved configuration as a ``#`` comment line, and then writes
deterministic text or CSV, so identical flags give byte-identical
output.  Exit codes: 0 for success and theorem-consistent outcomes, 2
for a verification mismatch (the witness is printed), 1 for usage or
configuration errors.

Word-valued flags take comma-separated symbols, each either a letter or
a ``base^exp`` run token.  Word files use the line format: one word per
line, space-separated decimal symbols.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import analysis
from .errors import SmoothwordError
from .expansion import (
    DEFAULT_BUDGET,
    CyclicOrder,
    phi_inverse_prefix,
    pseudo_inverse_chain,
)
from .kolakoski import BaseSequenceSpec, kolakoski_prefix, kolakoski_stream
from .substitution import (
    build_substitution,
    flatten,
    incidence_matrix,
    is_primitive,
    iterate,
    verify_substitution_fixpoint,
)
from .verify import ALL_CHECKS, run_check
from .words import (
    Alphabet,
    Permutation,
    Word,
    derivative,
    format_symbols,
    parse_symbols,
    rle_encode,
)

STDOUT_SYMBOL_LIMIT = 10**5
BUDGET_ENV = "SMOOTHWORDS_MAX_EXPANSION"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we use 1
        raise _UsageError(f"{self.prog}: {message}")


def _budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
    except ValueError:
        raise _UsageError(f"{BUDGET_ENV} must be a positive integer") from None
    return value


def _letters(text: str) -> tuple[int, ...]:
    try:
        return parse_symbols(text.replace(",", " "))
    except ValueError:
        raise _UsageError(f"cannot parse symbols from {text!r}") from None


def _alphabet(args, fallback: tuple[int, ...] | None = None) -> Alphabet:
    if getattr(args, "alphabet", None):
        return Alphabet(tuple(sorted(set(_letters(args.alphabet)))))
    if fallback:
        return Alphabet(tuple(sorted(set(fallback))))
    raise _UsageError("--alphabet is required")


def _read_word(args, alphabet: Alphabet | None) -> Word:
    if getattr(args, "input", None):
        line = ""
        with open(args.input, "r", encoding="utf-8") as handle:
            for raw in handle:
                if raw.strip() and not raw.lstrip().startswith("#"):
                    line = raw
                    break
        symbols = parse_symbols(line)
    elif getattr(args, "word", None):
        symbols = _letters(args.word)
    else:
        raise _UsageError("provide --word or --input")
    return Word(symbols, alphabet, is_prefix=getattr(args, "prefix", False))


def _config_line(args, **extra) -> str:
    skip = {"func", "output"}
    pairs = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and value is not None and not callable(value)
    }
    pairs.update(extra)
    body = " ".join(f"{k}={v}" for k, v in sorted(pairs.items()))
    return f"# smoothwords {body}"


@contextmanager
def _sink(args) -> Iterator[TextIO]:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            yield handle
    else:
        yield sys.stdout


def _emit_word(args, word: Word) -> None:
    if len(word) > STDOUT_SYMBOL_LIMIT and not getattr(args, "output", None):
        raise _UsageError(
            f"{len(word)} symbols exceed the stdout limit of "
            f"{STDOUT_SYMBOL_LIMIT}; pass --output FILE"
        )
    with _sink(args) as out:
        print(_config_line(args), file=out)
        print(format_symbols(word), file=out)


def _base_spec(args, alphabet: Alphabet) -> BaseSequenceSpec:
    if not getattr(args, "base_period", None):
        raise _UsageError("--base-period is required")
    period = _letters(args.base_period)
    preperiod = _letters(args.base_preperiod) if args.base_preperiod else ()
    return BaseSequenceSpec(alphabet, period, preperiod)


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    alphabet = _alphabet(
        args,
        fallback=_letters(args.base_period or "")
        + _letters(args.base_preperiod or ""),
    )
    spec = _base_spec(args, alphabet)
    if args.stats:
        stream = kolakoski_stream(spec)
        word = stream.take(args.length)
        gap_note = {
            "max_gap": stream.max_gap,
            "gap_ratio": round(stream.max_gap / max(args.length, 1), 6),
        }
    else:
        word = kolakoski_prefix(spec, args.length)
        gap_note = {}
    if len(word) > STDOUT_SYMBOL_LIMIT and not args.output:
        raise _UsageError(
            f"{len(word)} symbols exceed the stdout limit of "
            f"{STDOUT_SYMBOL_LIMIT}; pass --output FILE"
        )
    with _sink(args) as out:
        print(_config_line(args, **gap_note), file=out)
        print(format_symbols(word), file=out)
    return 0


def cmd_encode(args) -> int:
    alphabet = _alphabet(args) if args.alphabet else None
    word = _read_word(args, alphabet)
    rd = rle_encode(word)
    with _sink(args) as out:
        print(_config_line(args, truncated=rd.last_run_truncated), file=out)
        print(format_symbols(rd.exponents), file=out)
        print(format_symbols(rd.bases), file=out)
    return 0


def cmd_derive(args) -> int:
    alphabet = _alphabet(args)
    word = _read_word(args, alphabet)
    for _ in range(args.times):
        word = derivative(word)
    _emit_word(args, word)
    return 0


def cmd_expand(args) -> int:
    order = CyclicOrder.from_letters(_letters(args.order))
    if args.alphabet and _alphabet(args) != order.alphabet:
        raise _UsageError("--alphabet disagrees with --order letters")
    target = Word(_letters(args.target))
    chain = _letters(args.chain) if args.chain else ()
    word = pseudo_inverse_chain(chain, target, order, budget=_budget())
    _emit_word(args, word)
    return 0


def cmd_phi_inverse(args) -> int:
    order = CyclicOrder.from_letters(_letters(args.order))
    directive = Word(_letters(args.u), order.alphabet)
    word = phi_inverse_prefix(directive, order, budget=_budget())
    _emit_word(args, word)
    return 0


def cmd_freq(args) -> int:
    alphabet = _alphabet(args, fallback=_letters(args.base_period or ""))
    if args.input:
        word = _read_word(args, alphabet)
    else:
        word = kolakoski_prefix(_base_spec(args, alphabet), args.length)
    samples = (
        [int(s) for s in args.samples.split(",")]
        if args.samples
        else [len(word)]
    )
    report = analysis.letter_frequencies(word, samples, alphabet)
    with _sink(args) as out:
        print(_config_line(args), file=out)
        report.to_csv(out)
    if args.tol is not None and report.max_deviation() > args.tol:
        print(
            f"frequency deviation {report.max_deviation():.3e} exceeds "
            f"tolerance {args.tol:.3e}",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_recur(args) -> int:
    alphabet = _alphabet(args, fallback=_letters(args.base_period or ""))
    if args.input:
        word = _read_word(args, alphabet)
    else:
        word = kolakoski_prefix(_base_spec(args, alphabet), args.length)
    report = analysis.recurrence_report(
        word, args.l_max, scan_len=args.scan_len
    )
    with _sink(args) as out:
        print(_config_line(args), file=out)
        report.to_csv(out)
    if args.expect == "recurrent" and not report.all_recurrent:
        bad = report.non_recurrent[0]
        print(
            f"non-recurrent factor of length {bad.length}: "
            f"{format_symbols(bad.factor)} (first at {bad.first})",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_gaps(args) -> int:
    alphabet = _alphabet(args, fallback=_letters(args.base_period or ""))
    if args.input:
        word = _read_word(args, alphabet)
    else:
        word = kolakoski_prefix(_base_spec(args, alphabet), args.length)
    report = analysis.max_gap_report(word, args.l_max)
    with _sink(args) as out:
        print(_config_line(args), file=out)
        report.to_csv(out)
    if args.expect == "stable":
        stability = analysis.gap_stability_check(word, args.l_max)
        if not stability.all_stable:
            length, factor, before, after = stability.mismatches[0]
            print(
                f"gap of length-{length} factor {format_symbols(factor)} "
                f"changed {before} -> {after}",
                file=sys.stderr,
            )
            return 2
    return 0


def cmd_closure(args) -> int:
    alphabet = _alphabet(args, fallback=_letters(args.base_period or ""))
    if args.input:
        word = _read_word(args, alphabet)
    else:
        word = kolakoski_prefix(_base_spec(args, alphabet), args.length)
    if args.op == "reversal":
        op: str | Permutation = "reversal"
    elif args.op == "complement":
        op = Permutation.complement(alphabet)
    elif args.op == "perm":
        if not args.map:
            raise _UsageError("--map is required with --op perm")
        mapping = {}
        for pair in args.map.split(","):
            src, _, dst = pair.partition(":")
            mapping[int(src)] = int(dst)
        op = Permutation(mapping)
    else:  # pragma: no cover - argparse constrains choices
        raise _UsageError(f"unknown op {args.op}")
    witnesses = analysis.closure_check(word, op, args.l_max)
    with _sink(args) as out:
        print(_config_line(args, misses=len(witnesses)), file=out)
        analysis.write_witness_csv(witnesses, out)
    if args.expect == "closed" and witnesses:
        wit = witnesses[0]
        print(
            f"image of {format_symbols(wit.factor)} absent from the prefix",
            file=sys.stderr,
        )
        return 2
    if args.expect == "witness" and not witnesses:
        print("expected at least one closure witness, found none", file=sys.stderr)
        return 2
    return 0


def _built_substitution(args):
    order = CyclicOrder.from_letters(_letters(args.order))
    alphabet = order.alphabet
    if args.alphabet and _alphabet(args) != alphabet:
        raise _UsageError("--alphabet disagrees with --order letters")
    return build_substitution(alphabet, order), order


def cmd_subst(args) -> int:
    sub, order = _built_substitution(args)
    action = args.action
    if action in ("build", "show"):
        with _sink(args) as out:
            print(_config_line(args, seed=sub.seed), file=out)
            if action == "build":
                for sym, block in sub.blocks.items():
                    print(f"{sym} = {format_symbols(block.expansion)}", file=out)
            print(sub.rule_table(), file=out)
        return 0
    if action == "iterate":
        bw = iterate(sub, args.seed_symbol or sub.seed, args.t)
        with _sink(args) as out:
            print(_config_line(args, seed=sub.seed), file=out)
            if args.blocks:
                print(" ".join(bw), file=out)
            else:
                print(format_symbols(flatten(sub, bw)), file=out)
        return 0
    if action == "check-primitive":
        primitive, k = is_primitive(sub)
        with _sink(args) as out:
            print(_config_line(args, seed=sub.seed), file=out)
            print(f"primitive={primitive} k={k}", file=out)
        return 0 if primitive else 2
    if action == "verify-fixpoint":
        spec = BaseSequenceSpec(order.alphabet, order.arrangement)
        ok = verify_substitution_fixpoint(sub, spec, args.length)
        with _sink(args) as out:
            print(_config_line(args, seed=sub.seed), file=out)
            print(f"fixpoint_match={ok} length={args.length}", file=out)
        if not ok:
            print(
                "substitution iterate disagrees with the fixpoint word",
                file=sys.stderr,
            )
            return 2
        return 0
    raise _UsageError(f"unknown subst action {action}")


def cmd_verify_all(args) -> int:
    for name, fn in ALL_CHECKS:
        result = run_check(fn, args.seed)
        print(result.format_line())
        if not result.passed:
            if args.output:
                with open(args.output, "w", encoding="utf-8") as handle:
                    print(_config_line(args, failed=name), file=handle)
                    print(result.format_line(), file=handle)
                    if result.counterexample:
                        print(result.counterexample, file=handle)
            if result.counterexample:
                print(f"counterexample: {result.counterexample}")
            return 2
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common_word_source(p: _Parser) -> None:
    p.add_argument("--alphabet", help="comma-separated letters")
    p.add_argument("--base-preperiod", default="", help="base preperiod letters")
    p.add_argument("--base-period", default="", help="base period letters")
    p.add_argument("--length", type=int, default=10**6, help="prefix length")
    p.add_argument("--input", help="read the word from a file instead")
    p.add_argument("--output", help="write output to a file")


def build_parser() -> _Parser:
    parser = _Parser(prog="smoothwords")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a run-length fixpoint prefix")
    p.add_argument("--alphabet")
    p.add_argument("--base-preperiod", default="")
    p.add_argument("--base-period", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--stats", action="store_true", help="report pointer-gap stats")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("encode", help="run-length code a word")
    p.add_argument("--alphabet")
    p.add_argument("--word")
    p.add_argument("--input")
    p.add_argument("--prefix", action="store_true", help="mark the word as a prefix")
    p.add_argument("--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("derive", help="run-length derivative of a word")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--word")
    p.add_argument("--input")
    p.add_argument("--prefix", action="store_true")
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("expand", help="chained pseudo-inverse expansion")
    p.add_argument("--alphabet")
    p.add_argument("--order", required=True)
    p.add_argument("--chain", default="", help="control word, outermost first")
    p.add_argument("--target", required=True, help="exponent word to expand")
    p.add_argument("--output")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("phi-inverse", help="expand a directive word")
    p.add_argument("--order", required=True)
    p.add_argument("--u", required=True, help="directive word")
    p.add_argument("--output")
    p.set_defaults(func=cmd_phi_inverse)

    p = sub.add_parser("freq", help="letter frequency report (CSV)")
    _add_common_word_source(p)
    p.add_argument("--samples", help="comma-separated sample lengths")
    p.add_argument("--tol", type=float, help="exit 2 if any deviation exceeds")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("recur", help="recurrence report (CSV)")
    _add_common_word_source(p)
    p.add_argument("--l-max", type=int, default=24)
    p.add_argument("--scan-len", type=int)
    p.add_argument("--expect", choices=["recurrent", "none"], default="recurrent")
    p.set_defaults(func=cmd_recur)

    p = sub.add_parser("gaps", help="occurrence gap report (CSV)")
    _add_common_word_source(p)
    p.add_argument("--l-max", type=int, default=8)
    p.add_argument("--expect", choices=["stable", "none"], default="none")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("closure", help="factor-set closure report (CSV)")
    _add_common_word_source(p)
    p.add_argument("--op", choices=["reversal", "complement", "perm"], required=True)
    p.add_argument("--map", help="letter mapping for --op perm, e.g. 1:2,2:1")
    p.add_argument("--l-max", type=int, default=10)
    p.add_argument(
        "--expect", choices=["closed", "witness", "none"], default="none"
    )
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("subst", help="block substitution toolbox")
    p.add_argument(
        "action",
        choices=["build", "show", "iterate", "check-primitive", "verify-fixpoint"],
    )
    p.add_argument("--alphabet")
    p.add_argument("--order", required=True)
    p.add_argument("--t", type=int, default=1, help="iteration count")
    p.add_argument("--seed-symbol", help="override the iteration seed")
    p.add_argument("--blocks", action="store_true", help="print block symbols")
    p.add_argument("--length", type=int, default=10**4)
    p.add_argument("--output")
    p.set_defaults(func=cmd_subst)

    p = sub.add_parser("verify-all", help="run the acceptance battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="path for the first counterexample")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (SmoothwordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
