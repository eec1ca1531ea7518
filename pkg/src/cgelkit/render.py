"""LaTeX ``forest`` output for constituent graphs.

A fused constituent is laid out under its deeper parent. That parent is
shifted right, the fused node's own edge is suppressed (``no edge``), and
two ``\\draw`` commands add the edges from both parents, addressing the
upper one by a relative ``!u...u`` path.
"""
from __future__ import annotations

from typing import Mapping, Optional

from .grammar import Constituent, ConstituentGraph, RecoveryError

PROLOGUE = "where n children=0{font=\\itshape, tier=word}{},"

PREAMBLE = r"""\documentclass[border=5pt]{standalone}
\usepackage{forest}
\newcommand{\Node}[2]{\small\textsf{#1:}\\#2}
\forestset{default preamble={for tree={align=center}}}
\begin{document}
"""

_LATEX_ESCAPES = {
    "\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
    "_": r"\_", "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}", "[": r"\lbrack{}", "]": r"\rbrack{}",
}


def latex_escape(text: str) -> str:
    out = "".join(_LATEX_ESCAPES.get(c, c) for c in text)
    # forest treats ',' and '=' in node content as option syntax
    if "," in out or "=" in out:
        out = "{" + out + "}"
    return out


def _subscripted(token: str) -> str:
    base, sep, sub = token.partition("_")
    return f"{base}\\textsubscript{{{sub}}}" if sep else base


def category_label(node: Constituent) -> str:
    cat = node.category
    if cat.is_nonce:
        label = "+".join(_subscripted(p.token) for p in cat.nonce_parts)
    elif cat.is_unknown:
        label = latex_escape(cat.token)
    else:
        label = _subscripted(cat.token)
    if node.coindex_var:
        label += f"\\textsubscript{{{node.coindex_var}}}"
    return label


def function_label(node: Constituent) -> str:
    fn = node.function
    if fn.is_unknown:
        return latex_escape(fn.token)
    return "+".join("/".join(_subscripted(a) for a in part.split("/"))
                    for part in fn.token.split("+"))


def leaf_text(node: Constituent) -> Optional[str]:
    if node.category.is_gap:
        return "--"
    t, corr = node.feature("t"), node.feature("correct")
    if t is None and corr is None:
        return None
    if t is None:
        return f"({latex_escape(corr)})"
    if corr is not None:
        return f"{latex_escape(t)} ({latex_escape(corr)})"
    return latex_escape(t)


def _yield(graph: ConstituentGraph, node: Constituent) -> str:
    words = []
    stack = [node]
    while stack:
        cur = stack.pop()
        if cur.is_leaf:
            text = leaf_text(cur)
            if text is not None:
                words.append(text)
        stack.extend(reversed(graph.children(cur)))
    return " ".join(words)


def _fmt_em(value: float) -> str:
    return f"{int(value)}em" if float(value).is_integer() else f"{value:g}em"


def render_forest(graph: ConstituentGraph, collapse_depth: Optional[int] = None,
                  preamble: bool = False, shifts: Optional[Mapping[int, float]] = None) -> str:
    """Forest source for ``graph``.

    ``collapse_depth`` roofs every constituent at that depth. ``shifts``
    overrides the rightward shift (in em) of a deeper parent, keyed by node id.
    """
    if graph.recovery_failures:
        nid, reason = graph.recovery_failures[0]
        raise RecoveryError(f"cannot render unrecovered fused node {nid}: {reason}")
    shifts = dict(shifts or {})

    def visible(n: Constituent) -> bool:
        return collapse_depth is None or graph.depth(n) <= collapse_depth

    shift_for: dict[int, float] = {}
    for n in graph.fused_nodes():
        if visible(n):
            parent = graph.parent(n)
            default = 2 if len(parent.children) > 1 else 1
            shift_for[parent.id] = shifts.get(parent.id, default)

    lines: list[str] = []

    def emit(n: Constituent, indent: int) -> None:
        pad = "    " * indent
        label = category_label(n) if n.function is None else \
            f"\\Node{{{function_label(n)}}}{{{category_label(n)}}}"
        opts = []
        if n.id in shift_for:
            opts.append(f"before drawing tree={{x+={_fmt_em(shift_for[n.id])}}}")
        fused = n.fused_parent is not None
        if fused:
            opts.append("no edge")
        head = "[" + label + "".join(", " + o for o in opts)
        if fused:
            ups = "u" * (graph.depth(n) - graph.depth(graph[n.fused_parent]))
            tail = f"]{{ \\draw[-] (!{ups}.south) -- (); \\draw[-] (!u.south) -- (); }}"
        else:
            tail = "]"
        if n.is_leaf:
            text = leaf_text(n)
            lines.append(pad + head + (f"[{text}]" if text is not None else "") + tail)
        elif collapse_depth is not None and graph.depth(n) >= collapse_depth:
            lines.append(pad + head + f"[{_yield(graph, n)}, roof]" + tail)
        else:
            lines.append(pad + head)
            for c in graph.children(n):
                emit(c, indent + 1)
            lines.append(pad + tail)

    emit(graph.root, 0)
    body = "\\begin{forest}\n" + PROLOGUE + "\n" + "\n".join(lines) + "\n\\end{forest}\n"
    if preamble:
        return PREAMBLE + body + "\\end{document}\n"
    return body
