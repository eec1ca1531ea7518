from __future__ import annotations

from collections import Counter
from typing import Iterable

from .grammar import ConstituentGraph


def corpus_stats(graphs: Iterable[ConstituentGraph]) -> dict[str, int]:
    """Flat counts keyed ``trees``, ``constituents``, ``fused``, ``gaps``,
    ``nonce``, ``category.<token>`` and ``function.<token>``."""
    totals = Counter(trees=0, constituents=0, fused=0, gaps=0, nonce=0)
    cats: Counter = Counter()
    fns: Counter = Counter()
    for g in graphs:
        totals["trees"] += 1
        for n in g.nodes:
            totals["constituents"] += 1
            cats[n.category.token] += 1
            if n.function is not None:
                fns[n.function.token] += 1
                if n.function.is_fused:
                    totals["fused"] += 1
            if n.category.is_gap:
                totals["gaps"] += 1
            if n.category.is_nonce or (n.function is not None and n.function.is_nonce):
                totals["nonce"] += 1
    out = dict(totals)
    out.update({f"category.{k}": v for k, v in sorted(cats.items())})
    out.update({f"function.{k}": v for k, v in sorted(fns.items())})
    return out


def format_table(stats: dict[str, int]) -> str:
    width = max(len(k) for k in stats)
    num = max(len(str(v)) for v in stats.values())
    return "\n".join(f"{k:<{width}}  {v:>{num}}" for k, v in stats.items())


def format_tsv(stats: dict[str, int]) -> str:
    return "\n".join(f"{k}\t{v}" for k, v in stats.items())
