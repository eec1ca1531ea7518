"""``cgel-kit`` command line.

Exit status: 0 clean, 1 validation errors (or warnings with ``-W``) or a
failed ``fmt --check``, 2 unreadable or unparsable input.
"""
from __future__ import annotations

import argparse
import difflib
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO

from .format import ParseError, parse_corpus, serialize_corpus
from .grammar import RecoveryError, build_graph
from .render import render_forest
from .stats import corpus_stats, format_table, format_tsv
from .text import check_headers
from .validate import ERROR, INFO, WARNING, Diagnostic, sort_diagnostics, validate

SUBCOMMANDS = ("validate", "fmt", "render", "stats", "sent-check")


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str]
    strict_lexicon: bool = False
    collapse_depth: Optional[int] = None
    output: Optional[str] = None
    warnings_as_errors: bool = False
    check: bool = False
    write: bool = False
    preamble: bool = False
    tsv: bool = False
    show_info: bool = False
    headers: bool = True

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if not self.inputs:
            raise ValueError("no inputs")


class InputError(Exception):
    pass


def expand_inputs(inputs: list[str]) -> list[Path]:
    files = []
    for name in inputs:
        p = Path(name)
        if p.is_dir():
            files.extend(sorted(p.rglob("*.cgel")))
        elif p.is_file():
            files.append(p)
        else:
            raise InputError(f"{name}: no such file or directory")
    return files


def _colorize(line: str, severity: str, stream: TextIO) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return line
    color = {ERROR: "31", WARNING: "33", INFO: "36"}[severity]
    return line.replace(f" {severity} ", f" \x1b[{color}m{severity}\x1b[0m ", 1)


def _load(path: Path, stderr: TextIO):
    try:
        return parse_corpus(path.read_bytes())
    except ParseError as e:
        print(f"{path}:{e.line}:{e.col}: error parse {e.message}", file=stderr)
    except OSError as e:
        print(f"{path}: {e.strerror}", file=stderr)
    return None


def _diagnose(cfg: RunConfig, path: Path, trees, stdout: TextIO) -> tuple[int, int]:
    errors = warnings = 0
    for tree in trees:
        graph = build_graph(tree, strict=False)
        diags: list[Diagnostic] = []
        if cfg.subcommand == "validate":
            diags += validate(graph, strict_lexicon=cfg.strict_lexicon)
        if cfg.headers:
            diags += check_headers(tree, graph)
        for d in sort_diagnostics(diags):
            if d.severity == INFO and not cfg.show_info:
                continue
            errors += d.severity == ERROR
            warnings += d.severity == WARNING
            print(_colorize(d.format(str(path)), d.severity, stdout), file=stdout)
    return errors, warnings


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", text).strip("_") or "tree"


def run(cfg: RunConfig, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    try:
        files = expand_inputs(cfg.inputs)
    except InputError as e:
        print(f"cgel-kit: {e}", file=stderr)
        return 2
    status = 0
    corpora = []
    for path in files:
        trees = _load(path, stderr)
        if trees is None:
            status = 2
            continue
        corpora.append((path, trees))

    if cfg.subcommand in ("validate", "sent-check"):
        errors = warnings = 0
        for path, trees in corpora:
            e, w = _diagnose(cfg, path, trees, stdout)
            errors, warnings = errors + e, warnings + w
        if status == 0 and (errors or (cfg.warnings_as_errors and warnings)):
            status = 1
        return status

    if cfg.subcommand == "fmt":
        if cfg.output and len(corpora) > 1:
            print("cgel-kit: --output needs a single input file", file=stderr)
            return 2
        for path, trees in corpora:
            original = path.read_text(encoding="utf-8")
            formatted = serialize_corpus(trees)
            if cfg.check:
                if formatted != original:
                    stdout.writelines(difflib.unified_diff(
                        original.splitlines(True), formatted.splitlines(True),
                        str(path), f"{path} (formatted)"))
                    status = max(status, 1)
            elif cfg.write:
                if formatted != original:
                    path.write_text(formatted, encoding="utf-8")
            elif cfg.output:
                Path(cfg.output).write_text(formatted, encoding="utf-8")
            else:
                stdout.write(formatted)
        return status

    if cfg.subcommand == "render":
        outdir = Path(cfg.output) if cfg.output else None
        if outdir is not None:
            outdir.mkdir(parents=True, exist_ok=True)
        for path, trees in corpora:
            for i, tree in enumerate(trees):
                graph = build_graph(tree, strict=False)
                try:
                    tex = render_forest(graph, collapse_depth=cfg.collapse_depth,
                                        preamble=cfg.preamble)
                except RecoveryError as e:
                    print(f"{path}: tree {i + 1}: {e}", file=stderr)
                    status = max(status, 1)
                    continue
                if outdir is None:
                    stdout.write(f"% {path} tree {i + 1}" +
                                 (f" ({tree.sent_id})" if tree.sent_id else "") + "\n" + tex)
                else:
                    name = f"{path.stem}-{i + 1:04d}-{_slug(tree.sent_id or '')}.tex"
                    (outdir / name).write_text(tex, encoding="utf-8")
        return status

    stats = corpus_stats(build_graph(t, strict=False) for _, trees in corpora for t in trees)
    stdout.write((format_tsv(stats) if cfg.tsv else format_table(stats)) + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgel-kit", description="Parse, check, format and draw .cgel treebank files.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("inputs", nargs="+", help=".cgel files or directories")
        return p

    p = add("validate", "check trees against the annotation constraints")
    p.add_argument("--strict-lexicon", action="store_true",
                   help="warn on multiword tokens that are not listed complex lexemes")
    p.add_argument("-W", "--warnings-as-errors", action="store_true")
    p.add_argument("--no-headers", dest="headers", action="store_false",
                   help="skip the sent/text header checks")
    p.add_argument("--show-info", action="store_true", help="also print info diagnostics")

    p = add("fmt", "rewrite files in canonical layout")
    p.add_argument("--check", action="store_true", help="print a diff and exit 1 if not canonical")
    p.add_argument("--write", action="store_true", help="rewrite files in place")
    p.add_argument("-o", "--output")

    p = add("render", "emit LaTeX forest source")
    p.add_argument("--collapse-depth", type=int)
    p.add_argument("--preamble", action="store_true", help="wrap in a standalone document")
    p.add_argument("-o", "--output", help="directory for one .tex file per tree")

    p = add("stats", "count categories, functions, fused nodes, gaps and nonce constituents")
    p.add_argument("--tsv", action="store_true", help="key<TAB>value lines")

    p = add("sent-check", "compare sent/text headers with the trees")
    p.add_argument("-W", "--warnings-as-errors", action="store_true")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = vars(build_parser().parse_args(argv))
    return run(RunConfig(**args))


if __name__ == "__main__":
    sys.exit(main())
