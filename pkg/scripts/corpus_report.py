#!/usr/bin/env python3
"""Validate a directory of .cgel files and summarise the findings.

Prints per-rule diagnostic counts, corpus statistics and the number of
trees whose sent/text headers disagree with their terminals. With
``--expect-header KEY`` each tree's header KEY (a space-separated list of
rule codes) is compared with the codes actually found.

    python scripts/corpus_report.py tests/fixtures/wellformed
    python scripts/corpus_report.py tests/fixtures/violations --expect-header expect
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from cgelkit import build_graph, parse_file, validate
from cgelkit.cli import expand_inputs
from cgelkit.stats import corpus_stats, format_table
from cgelkit.text import check_headers


@dataclass
class ReportConfig:
    inputs: list[str]
    strict_lexicon: bool = False
    expect_header: Optional[str] = None
    json_out: Optional[str] = None


@dataclass
class Report:
    trees: int = 0
    by_code: dict[str, int] = field(default_factory=dict)
    header_mismatches: list[str] = field(default_factory=list)
    expectation_failures: list[str] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)


def build_report(cfg: ReportConfig) -> Report:
    report = Report()
    codes: Counter = Counter()
    graphs = []
    for path in expand_inputs(cfg.inputs):
        for i, tree in enumerate(parse_file(path)):
            g = build_graph(tree, strict=False)
            graphs.append(g)
            report.trees += 1
            diags = validate(g, strict_lexicon=cfg.strict_lexicon)
            codes.update(d.code for d in diags)
            label = f"{path.name}#{i + 1}" + (f" ({tree.sent_id})" if tree.sent_id else "")
            if check_headers(tree, g):
                report.header_mismatches.append(label)
            if cfg.expect_header and tree.header(cfg.expect_header) is not None:
                expected = set(tree.header(cfg.expect_header).split())
                found = {d.code for d in diags}
                if not found or not found <= expected:
                    report.expectation_failures.append(
                        f"{label}: expected within {sorted(expected)}, found {sorted(found)}")
    report.by_code = dict(sorted(codes.items()))
    report.stats = corpus_stats(graphs)
    return report


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--strict-lexicon", action="store_true")
    p.add_argument("--expect-header")
    p.add_argument("--json-out")
    cfg = ReportConfig(**vars(p.parse_args(argv)))
    report = build_report(cfg)

    print(f"trees: {report.trees}")
    print("diagnostics by code:")
    for code, n in report.by_code.items() or [("(none)", 0)]:
        print(f"  {code:<6} {n}")
    print(f"header mismatches: {len(report.header_mismatches)}")
    for label in report.header_mismatches:
        print(f"  {label}")
    if cfg.expect_header:
        print(f"expectation failures: {len(report.expectation_failures)}")
        for line in report.expectation_failures:
            print(f"  {line}")
    print("statistics:")
    print("\n".join("  " + ln for ln in format_table(report.stats).splitlines()))
    if cfg.json_out:
        Path(cfg.json_out).write_text(json.dumps({"config": asdict(cfg), **asdict(report)},
                                                 indent=2), encoding="utf-8")
    return 1 if report.expectation_failures else 0


if __name__ == "__main__":
    sys.exit(main())
