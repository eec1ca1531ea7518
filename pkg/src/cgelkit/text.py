"""Rebuild the ``# sent`` and ``# text`` header strings from a tree.

``:p`` features are read by position relative to ``:t``: marks written
before the token precede it in the sentence, marks after it follow it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .format import SourceTree
from .grammar import Constituent, ConstituentGraph, terminals
from .validate import Diagnostic, _diag

GAP_MARK = "--"
OPENERS = frozenset("([{“‘«")


@dataclass(frozen=True)
class TokenRecord:
    surface: Optional[str]
    corrected: Optional[str]
    lemma: Optional[str]
    pre_punct: tuple[str, ...]
    post_punct: tuple[str, ...]
    subtokens: tuple[str, ...]
    is_gap: bool

    @property
    def is_insertion(self) -> bool:
        return self.surface is None and bool(self.corrected)

    @property
    def is_deletion(self) -> bool:
        return self.corrected == ""


def token_record(node: Constituent) -> TokenRecord:
    pre: list[str] = []
    post: list[str] = []
    seen_token = False
    for f in node.features:
        if f.key == "t":
            seen_token = True
        elif f.key == "p":
            (post if seen_token else pre).append(f.value)
    if node.feature("t") is None:
        # insertions carry no :t; their marks all count as preceding
        pre, post = pre + post, []
    return TokenRecord(
        surface=node.feature("t"), corrected=node.feature("correct"), lemma=node.feature("l"),
        pre_punct=tuple(pre), post_punct=tuple(post),
        subtokens=tuple(node.feature_values("subt")), is_gap=node.category.is_gap)


def token_records(graph: ConstituentGraph) -> list[TokenRecord]:
    return [token_record(n) for n in terminals(graph)]


def _sent_token(rec: TokenRecord) -> Optional[str]:
    if rec.is_gap:
        return GAP_MARK
    if rec.surface is not None:
        return rec.surface
    return rec.corrected or None


def reconstruct_sent(graph: ConstituentGraph) -> str:
    """Terminals joined by spaces: original tokens, inserted words by their
    corrected form, ``--`` for gaps."""
    return " ".join(t for t in map(_sent_token, token_records(graph)) if t is not None)


def corrected_sentence(graph: ConstituentGraph) -> str:
    out = []
    for rec in token_records(graph):
        if rec.is_gap:
            continue
        word = rec.corrected if rec.corrected is not None else rec.surface
        if word:
            out.append(word)
    return " ".join(out)


class TextReconstruction(NamedTuple):
    text: str
    case_recoverable: bool  # tokens are case-normalized, so this is always False


def reconstruct_text(graph: ConstituentGraph) -> TextReconstruction:
    """Surface string with punctuation restored.

    Marks stored before a token attach to the preceding word, except that
    an opening bracket or quote (and anything after it) hugs the token.
    Marks stored after a token follow it directly.
    """
    pieces: list[str] = []
    for rec in token_records(graph):
        if rec.is_gap or rec.surface is None:
            if rec.pre_punct or rec.post_punct:
                # punctuation on an inserted word still belongs in the text
                pieces.append("".join(rec.pre_punct + rec.post_punct))
            continue
        pre = list(rec.pre_punct)
        split = next((i for i, p in enumerate(pre) if p[:1] in OPENERS), len(pre))
        trailing, leading = pre[:split], pre[split:]
        if trailing:
            if pieces:
                pieces[-1] += "".join(trailing)
            else:
                leading = trailing + leading
        pieces.append("".join(leading) + rec.surface + "".join(rec.post_punct))
    return TextReconstruction(" ".join(pieces), False)


def normalize_sent(s: str) -> str:
    return s.lower()


def normalize_text(s: str) -> str:
    return "".join(s.split()).lower()


def check_headers(tree: SourceTree, graph: ConstituentGraph) -> list[Diagnostic]:
    """Compare the ``sent`` and ``text`` headers with the tree's terminals.
    Missing headers are not reported."""
    out = []
    sent = tree.header("sent")
    if sent is not None:
        rebuilt = reconstruct_sent(graph)
        if normalize_sent(sent) != normalize_sent(rebuilt):
            out.append(_diag("H1", graph.root, f"sent header {sent!r} != terminals {rebuilt!r}"))
    text = tree.header("text")
    if text is not None:
        rebuilt = reconstruct_text(graph).text
        if normalize_text(text) != normalize_text(rebuilt):
            out.append(_diag("H2", graph.root, f"text header {text!r} != {rebuilt!r}"))
    return out
