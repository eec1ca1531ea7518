#!/usr/bin/env python3
"""Render every tree in a set of .cgel files to standalone .tex documents.

Trees whose fused constituents cannot be placed are listed and skipped.
If ``--compile`` is given and ``pdflatex`` is on PATH, each document is
compiled and failures are reported.

    python scripts/render_fixtures.py tests/fixtures/wellformed -o build/trees
"""
from __future__ import annotations

import argparse
import shutil
import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from cgelkit import build_graph, parse_file, render_forest
from cgelkit.cli import expand_inputs
from cgelkit.grammar import RecoveryError


@dataclass
class RenderConfig:
    inputs: list[str]
    output: str = "build/trees"
    collapse_depth: Optional[int] = None
    compile: bool = False


def render_all(cfg: RenderConfig) -> tuple[list[Path], list[str]]:
    outdir = Path(cfg.output)
    outdir.mkdir(parents=True, exist_ok=True)
    written, skipped = [], []
    for path in expand_inputs(cfg.inputs):
        for i, tree in enumerate(parse_file(path)):
            name = f"{path.stem}-{i + 1:02d}"
            try:
                tex = render_forest(build_graph(tree, strict=True),
                                    collapse_depth=cfg.collapse_depth, preamble=True)
            except RecoveryError as e:
                skipped.append(f"{name}: {e}")
                continue
            target = outdir / f"{name}.tex"
            target.write_text(tex, encoding="utf-8")
            written.append(target)
    return written, skipped


def compile_all(files: list[Path]) -> list[str]:
    failures = []
    for tex in files:
        proc = subprocess.run(["pdflatex", "-interaction=nonstopmode", "-halt-on-error",
                               tex.name], cwd=tex.parent, capture_output=True, text=True)
        if proc.returncode != 0:
            failures.append(tex.name)
    return failures


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", default="build/trees")
    p.add_argument("--collapse-depth", type=int)
    p.add_argument("--compile", action="store_true")
    cfg = RenderConfig(**vars(p.parse_args(argv)))
    written, skipped = render_all(cfg)
    print(f"wrote {len(written)} documents to {cfg.output}")
    for line in skipped:
        print(f"skipped {line}")
    if cfg.compile:
        if shutil.which("pdflatex") is None:
            print("pdflatex not found; skipping compilation")
        else:
            failures = compile_all(written)
            print(f"compiled {len(written) - len(failures)}/{len(written)}")
            for name in failures:
                print(f"  failed: {name}")
            if failures:
                return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
