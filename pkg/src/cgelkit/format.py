"""Reader and writer for the bracketed ``.cgel`` treebank format.

A corpus file is a sequence of entries. Each entry is a block of
``# key = value`` header lines followed by one parenthesized tree::

    # sent_id = example-1
    # sent = stop
    (Clause
        :Head (VP
            :Head (V :t "stop")))

Inside a tree, ``:Name (`` introduces a child in function ``Name`` and
``:key "value"`` attaches a string feature. A coindexation variable is
written ``(x / GAP)``.

The parser is iterative, so nesting depth is bounded only by memory.
"""
from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional, Union

FEATURE_KEYS = frozenset({"t", "p", "subt", "correct", "l", "note"})
VARIABLE_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
INDENT = "    "

Span = tuple[int, int, int, int]  # start line, start col, end line, end col (1-based)


class ParseError(ValueError):
    """Malformed ``.cgel`` input. Always carries a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at {line}:{col}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Feature:
    key: str
    value: str


@dataclass(frozen=True)
class RawNode:
    """One constituent exactly as written: category, optional variable,
    features and function-tagged children, all in source order."""

    category: str
    coindex_var: Optional[str] = None
    features: tuple[Feature, ...] = ()
    children: tuple[tuple[str, "RawNode"], ...] = ()
    span: Optional[Span] = field(default=None, compare=False, repr=False)

    def feature(self, key: str) -> Optional[str]:
        """First value stored under ``key``, or None."""
        for f in self.features:
            if f.key == key:
                return f.value
        return None

    def feature_values(self, key: str) -> list[str]:
        return [f.value for f in self.features if f.key == key]


@dataclass(frozen=True)
class SourceTree:
    headers: tuple[tuple[str, str], ...]
    root: RawNode
    span: Optional[Span] = field(default=None, compare=False, repr=False)
    # exact source text of the entry, including any blank lines before it
    raw: Optional[str] = field(default=None, compare=False, repr=False)

    def header(self, key: str) -> Optional[str]:
        for k, v in self.headers:
            if k == key:
                return v
        return None

    @property
    def sent_id(self) -> Optional[str]:
        return self.header("sent_id")


# -- lexing -----------------------------------------------------------------

_LPAREN, _RPAREN, _SLASH, _NAME, _STRING, _SYMBOL, _EOF = (
    "(", ")", "/", "name", "string", "symbol", "eof")

_SYMBOL_STOP = set(' \t\r\n\f\v():"/')
_NAME_STOP = set(' \t\r\n\f\v()"')


class _Positions:
    def __init__(self, text: str):
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def __call__(self, offset: int) -> tuple[int, int]:
        i = bisect.bisect_right(self.starts, offset) - 1
        return i + 1, offset - self.starts[i] + 1


class _Lexer:
    def __init__(self, text: str, pos: int, where: _Positions):
        self.text = text
        self.pos = pos
        self.where = where
        self._peeked: Optional[tuple[str, str, int]] = None

    def error(self, message: str, offset: int) -> ParseError:
        return ParseError(message, *self.where(offset))

    def peek(self) -> tuple[str, str, int]:
        if self._peeked is None:
            self._peeked = self._next()
        return self._peeked

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        self._peeked = None
        return tok

    def _next(self) -> tuple[str, str, int]:
        text, n = self.text, len(self.text)
        i = self.pos
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            self.pos = i
            return _EOF, "", i
        c = text[i]
        if c in "()/":
            self.pos = i + 1
            return c, c, i
        if c == '"':
            return self._string(i)
        if c == ":":
            j = i + 1
            while j < n and text[j] not in _NAME_STOP:
                j += 1
            if j == i + 1:
                raise self.error("empty name after ':'", i)
            self.pos = j
            return _NAME, text[i + 1:j], i
        j = i
        while j < n and text[j] not in _SYMBOL_STOP:
            j += 1
        self.pos = j
        return _SYMBOL, text[i:j], i

    def _string(self, start: int) -> tuple[str, str, int]:
        text, n = self.text, len(self.text)
        out = []
        i = start + 1
        while True:
            if i >= n or text[i] == "\n":
                raise self.error("unterminated string", start)
            c = text[i]
            if c == '"':
                self.pos = i + 1
                return _STRING, "".join(out), start
            if c == "\\":
                nxt = text[i + 1] if i + 1 < n else ""
                if nxt not in ('"', "\\"):
                    raise self.error("invalid escape in string", i)
                out.append(nxt)
                i += 2
                continue
            out.append(c)
            i += 1


# -- parsing ----------------------------------------------------------------

class _Frame:
    __slots__ = ("category", "var", "features", "children", "start", "function")

    def __init__(self, category, var, start, function):
        self.category = category
        self.var = var
        self.features: list[Feature] = []
        self.children: list[tuple[str, RawNode]] = []
        self.start = start
        self.function = function


def _parse_tree(lexer: _Lexer) -> RawNode:
    """Parse one constituent starting at the lexer's next token."""
    kind, _, off = lexer.next()
    if kind != _LPAREN:
        raise lexer.error("expected '('", off)
    stack = [_open_node(lexer, off, None)]
    while True:
        kind, value, off = lexer.next()
        top = stack[-1]
        if kind == _RPAREN:
            stack.pop()
            node = RawNode(
                top.category, top.var, tuple(top.features), tuple(top.children),
                span=lexer.where(top.start) + lexer.where(off))
            if not stack:
                return node
            stack[-1].children.append((top.function, node))
        elif kind == _NAME:
            nkind, nvalue, noff = lexer.peek()
            if nkind == _STRING:
                lexer.next()
                if value not in FEATURE_KEYS:
                    raise lexer.error(f"unknown feature key ':{value}'", off)
                top.features.append(Feature(value, nvalue))
            elif nkind == _LPAREN:
                lexer.next()
                stack.append(_open_node(lexer, noff, value))
            elif nkind == _EOF:
                raise lexer.error("unbalanced parenthesis", stack[-1].start)
            else:
                raise lexer.error(f"expected a string or '(' after ':{value}'", noff)
        elif kind == _EOF:
            raise lexer.error("unbalanced parenthesis", top.start)
        elif kind == _SLASH:
            raise lexer.error("'/' without preceding variable", off)
        elif kind == _LPAREN:
            raise lexer.error("constituent without a function", off)
        elif kind == _STRING:
            raise lexer.error("string value without a feature key", off)
        else:
            raise lexer.error(f"unexpected token {value!r}", off)


def _open_node(lexer: _Lexer, start: int, function: Optional[str]) -> _Frame:
    kind, value, off = lexer.next()
    if kind == _SLASH:
        raise lexer.error("'/' without preceding variable", off)
    if kind == _EOF:
        raise lexer.error("unbalanced parenthesis", start)
    if kind != _SYMBOL:
        raise lexer.error("expected a category", off)
    var = None
    if lexer.peek()[0] == _SLASH:
        lexer.next()
        if not VARIABLE_RE.match(value):
            raise lexer.error(f"invalid coindexation variable {value!r}", off)
        var = value
        kind, value, off = lexer.next()
        if kind == _EOF:
            raise lexer.error("unbalanced parenthesis", start)
        if kind != _SYMBOL:
            raise lexer.error("expected a category after '/'", off)
    return _Frame(value, var, start, function)


def parse_node(text: str) -> RawNode:
    """Parse a single parenthesized constituent (no headers)."""
    where = _Positions(text)
    lexer = _Lexer(text, 0, where)
    node = _parse_tree(lexer)
    kind, value, off = lexer.next()
    if kind != _EOF:
        if kind == _RPAREN:
            raise lexer.error("unbalanced parenthesis", off)
        raise lexer.error("unexpected text after tree", off)
    return node


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = data[:e.start]
        line = prefix.count(b"\n") + 1
        col = len(prefix[prefix.rfind(b"\n") + 1:].decode("utf-8", "replace")) + 1
        raise ParseError("invalid UTF-8", line, col) from None


def parse_corpus(text: Union[str, bytes]) -> list[SourceTree]:
    """Split a ``.cgel`` corpus into entries.

    A ``#`` header block starts a new entry; blank lines are otherwise
    insignificant. The ``raw`` slices of the returned trees concatenate
    back to the input exactly.
    """
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))
    where = _Positions(text)
    trees: list[SourceTree] = []
    headers: list[tuple[str, str]] = []
    header_start: Optional[int] = None
    entry_start = 0
    pos, n = 0, len(text)
    if text.startswith("﻿"):
        pos = 1
    while pos < n:
        eol = text.find("\n", pos)
        eol = n if eol < 0 else eol + 1
        line = text[pos:eol]
        stripped = line.strip()
        lead = pos + (len(line) - len(line.lstrip()))
        if not stripped:
            pos = eol
        elif stripped.startswith("#"):
            body = stripped[1:]
            key, eq, value = body.partition("=")
            key = key.strip()
            if not eq or not key:
                raise ParseError("malformed header line (expected '# key = value')", *where(lead))
            if header_start is None:
                header_start = lead
            headers.append((key, value.strip()))
            pos = eol
        elif stripped.startswith("("):
            lexer = _Lexer(text, lead, where)
            root = _parse_tree(lexer)
            end = lexer.pos
            rest_end = text.find("\n", end)
            rest_end = n if rest_end < 0 else rest_end + 1
            if text[end:rest_end].strip():
                off = end + (len(text[end:rest_end]) - len(text[end:rest_end].lstrip()))
                if text[off] == ")":
                    raise ParseError("unbalanced parenthesis", *where(off))
                raise ParseError("unexpected text after tree", *where(off))
            start = header_start if header_start is not None else lead
            trees.append(SourceTree(
                tuple(headers), root,
                span=where(start) + where(end - 1),
                raw=text[entry_start:rest_end]))
            headers, header_start = [], None
            entry_start = pos = rest_end
        else:
            raise ParseError("unexpected text between trees", *where(lead))
    if header_start is not None:
        raise ParseError("header block without a tree", *where(header_start))
    if trees and entry_start < n:
        last = trees[-1]
        trees[-1] = SourceTree(last.headers, last.root, last.span, last.raw + text[entry_start:])
    return trees


def parse_file(path) -> list[SourceTree]:
    with open(path, "rb") as f:
        return parse_corpus(f.read())


# -- serialization ----------------------------------------------------------

def escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def _node_head(node: RawNode) -> str:
    head = f"({node.coindex_var} / {node.category}" if node.coindex_var else f"({node.category}"
    for f in node.features:
        head += f' :{f.key} "{escape(f.value)}"'
    return head


def serialize_node(node: RawNode) -> str:
    """Canonical text of a single constituent, one constituent per line."""
    lines: list[str] = []
    stack: list = [(node, 0, "")]
    while stack:
        item = stack.pop()
        if item is None:
            lines[-1] += ")"
            continue
        cur, depth, prefix = item
        lines.append(INDENT * depth + prefix + _node_head(cur))
        stack.append(None)
        for fn, child in reversed(cur.children):
            stack.append((child, depth + 1, f":{fn} "))
    return "\n".join(lines)


def serialize(tree: SourceTree, style: Literal["canonical", "preserved"] = "canonical") -> str:
    """Text for one entry. ``preserved`` reproduces the source bytes when the
    tree came from the parser; otherwise it falls back to canonical."""
    if style == "preserved" and tree.raw is not None:
        return tree.raw
    if style not in ("canonical", "preserved"):
        raise ValueError(f"unknown style {style!r}")
    lines = [f"# {k} = {v}" if v else f"# {k} =" for k, v in tree.headers]
    lines.append(serialize_node(tree.root))
    return "\n".join(lines) + "\n"


def serialize_corpus(trees: Iterable[SourceTree],
                     style: Literal["canonical", "preserved"] = "canonical") -> str:
    trees = list(trees)
    if style == "preserved" and all(t.raw is not None for t in trees):
        return "".join(t.raw for t in trees)
    return "\n".join(serialize(t, "canonical") for t in trees)
