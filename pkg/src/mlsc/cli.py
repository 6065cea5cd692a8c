"""Command-line interface: ``mlsc convert | validate | terms | inspect``.

Data goes to stdout, reports to stderr.  Exit status is 0 on success,
1 when diagnostics include errors (or warnings with ``--strict-exit``),
2 on usage or I/O problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .converter import ConversionReport, convert, to_canonical
from .diagnostics import Code, Diagnostic, Severity, diagnostics_json, has_errors
from .model import CanonicalClass, CanonicalRelation
from .rdf import ParseError, TripleGraph, format_for_path, parse, serialize
from .registry import (
    SOURCE_VOCABS,
    OverlayParseError,
    VocabId,
    VocabRegistry,
    default_registry,
    load_vocab_overlay,
)
from .validator import PROFILES, RULES, validate

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2

NAMESPACE_ENV = "MLSC_NAMESPACE"
_FORMAT_CHOICES = {"ttl": "turtle", "nt": "ntriples"}


class UsageError(Exception):
    pass


def _vocab(text: str) -> VocabId:
    try:
        return VocabId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _registry(args: argparse.Namespace) -> VocabRegistry:
    try:
        registry = default_registry(os.environ.get(NAMESPACE_ENV) or None)
    except ValueError as exc:
        raise UsageError(f"{NAMESPACE_ENV}: {exc}") from None
    overlay = getattr(args, "overlay", None)
    if overlay:
        try:
            text = Path(overlay).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read overlay: {exc}") from None
        try:
            registry = load_vocab_overlay(registry, text)
        except OverlayParseError as exc:
            raise UsageError(f"{overlay}: {exc}") from None
    return registry


def _read_graph(args: argparse.Namespace) -> tuple[TripleGraph | None, list[Diagnostic]]:
    """Parse the input file; a syntax error becomes a PARSE_ERROR diagnostic."""
    path = args.input
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    fmt = _FORMAT_CHOICES[args.input_format] if args.input_format else format_for_path(path)
    try:
        return parse(data, fmt), []
    except ParseError as exc:
        where = f"{path}:{exc.line}:{exc.column}"
        detail = exc.message + (f" (at {exc.token!r})" if exc.token else "")
        return None, [Diagnostic(Code.PARSE_ERROR, where, detail, Severity.error)]


def _exit_status(diagnostics: Sequence[Diagnostic], strict_exit: bool) -> int:
    if has_errors(diagnostics):
        return EXIT_DIAGNOSTICS
    if strict_exit and any(d.severity is Severity.warning for d in diagnostics):
        return EXIT_DIAGNOSTICS
    return EXIT_OK


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_convert(args: argparse.Namespace) -> int:
    registry = _registry(args)
    graph, diags = _read_graph(args)
    if graph is None:
        report = ConversionReport(args.source, args.target, {}, diags)
        sys.stderr.write(report.to_text())
        if args.report:
            _write(args.report, report.to_json())
        return EXIT_DIAGNOSTICS

    output, report = convert(graph, args.source, args.target, registry)
    if args.format:
        out_format = _FORMAT_CHOICES[args.format]
    elif args.output:
        out_format = format_for_path(args.output)
    else:
        out_format = "turtle"
    text = serialize(output, out_format).decode("utf-8")
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(report.to_text())
    if args.report:
        _write(args.report, report.to_json())
    return _exit_status(report.diagnostics, args.strict_exit)


def cmd_validate(args: argparse.Namespace) -> int:
    registry = _registry(args)
    graph, diags = _read_graph(args)
    if graph is not None:
        canon, lift = to_canonical(graph, args.source, registry)
        diags = lift + validate(canon, PROFILES[args.profile], args.disable)
    for diag in diags:
        sys.stdout.write(diag.line() + "\n")
    if args.report:
        _write(args.report, diagnostics_json(diags))
    return _exit_status(diags, args.strict_exit)


def cmd_terms(args: argparse.Namespace) -> int:
    registry = _registry(args)
    vocabs = [args.vocab] if args.vocab else list(SOURCE_VOCABS)
    lines = []
    if args.na_only:
        for vocab in vocabs:
            for cls in CanonicalClass:
                if registry.lookup_forward(cls, vocab).is_na:
                    lines.append(f"{vocab.cli_name}\t{cls.value}")
    else:
        for cls in CanonicalClass:
            cells = [str(registry.lookup_forward(cls, v)) for v in vocabs]
            lines.append("\t".join([cls.value, *cells]))
    sys.stdout.write("".join(line + "\n" for line in lines))
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    registry = _registry(args)
    graph, diags = _read_graph(args)
    if graph is None:
        sys.stderr.write("".join(d.line() + "\n" for d in diags))
        return EXIT_DIAGNOSTICS
    canon, diags = to_canonical(graph, args.source, registry)
    lines = [f"{cls.value}: {len(canon.entities_of(cls))}" for cls in CanonicalClass]
    lines += [f"{rel.value}: {sum(e[1] is rel for e in canon.edges)}" for rel in CanonicalRelation]
    lines.append(f"unknown: {sum(d.code is Code.UNKNOWN_TERM for d in diags)}")
    sys.stdout.write("".join(line + "\n" for line in lines))
    sys.stderr.write("".join(d.line() + "\n" for d in diags))
    return _exit_status(diags, False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlsc",
        description="Convert and validate ML experiment metadata through ML-Schema.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    vocab_help = "one of: " + ", ".join(v.cli_name for v in VocabId)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="input .ttl or .nt file ('-' for stdin)")
        p.add_argument("--input-format", choices=sorted(_FORMAT_CHOICES), help="override the extension-based parser choice")
        p.add_argument("--overlay", metavar="PATH", help="vocabulary overlay file")

    p = sub.add_parser("convert", help="convert a document between vocabularies")
    p.add_argument("--from", dest="source", type=_vocab, required=True, help=vocab_help)
    p.add_argument("--to", dest="target", type=_vocab, required=True, help=vocab_help)
    p.add_argument("--format", choices=sorted(_FORMAT_CHOICES), help="output serialization (default ttl)")
    p.add_argument("--report", metavar="PATH", help="also write the report as JSON")
    p.add_argument("-o", "--output", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--strict-exit", action="store_true", help="exit 1 on warnings too")
    add_input(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("validate", help="check a document against a structural profile")
    p.add_argument("--from", dest="source", type=_vocab, required=True, help=vocab_help)
    p.add_argument("--profile", choices=sorted(PROFILES), default="minimal")
    p.add_argument("--disable", action="append", default=[], choices=RULES, metavar="RULE", help="switch off a rule (R1-R6); repeatable")
    p.add_argument("--report", metavar="PATH", help="also write diagnostics as JSON")
    p.add_argument("--strict-exit", action="store_true", help="exit 1 on warnings too")
    add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("terms", help="print the term mapping table")
    p.add_argument("--vocab", type=_vocab, help=vocab_help)
    p.add_argument("--na-only", action="store_true", help="list only N/A cells")
    p.add_argument("--overlay", metavar="PATH", help="vocabulary overlay file")
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("inspect", help="count canonical entities and edges in a document")
    p.add_argument("--from", dest="source", type=_vocab, required=True, help=vocab_help)
    add_input(p)
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"mlsc: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
