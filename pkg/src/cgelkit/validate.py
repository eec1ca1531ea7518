"""Well-formedness checks over a :class:`ConstituentGraph`.

Each check has a stable code (``R1`` ... ``R15`` for the annotation rules,
plus a few bookkeeping codes). :data:`RULES` is the catalog.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from .grammar import (EXTRAPOSED, Constituent, ConstituentGraph, path_str)

ERROR, WARNING, INFO = "error", "warning", "info"


@dataclass(frozen=True)
class Rule:
    code: str
    severity: str
    summary: str


RULES = {r.code: r for r in [
    Rule("R0", ERROR, "category or function token outside the inventory"),
    Rule("R1", ERROR, "a lexical node must head a phrase of its corresponding category "
                      "(except V_aux alone in Prenucleus)"),
    Rule("R2", ERROR, "vacuous layering: a lexical node's unary parent is a Head whose category "
                      "repeats in the grandparent, which is not a Coordinate"),
    Rule("R3", ERROR, "each non-unary VP level is Head plus one Mod, one extraposed complement, "
                      "or internal complements; no two consecutive complement levels"),
    Rule("R4", ERROR, "an NP must be headed by Nom or NP"),
    Rule("R5", ERROR, "a Clause or Clause_rel must be headed by VP or a clause"),
    Rule("R6", ERROR, "a headed phrase other than VP is at most binary, not counting supplements"),
    Rule("R7", ERROR, "a unary phrase must not be headed by its own category "
                      "(intermediate nodes of fused structures exempt)"),
    Rule("R8", ERROR, "every gap is coindexed to exactly one overt element"),
    Rule("R9", ERROR, "every coindexation variable appears on at least one gap"),
    Rule("R10", ERROR, "a variable may not be borne by two distinct overt elements"),
    Rule("R11", WARNING, "the overt coindexed element should be nonlexical where possible"),
    Rule("R12", WARNING, "a gap usually has a non-gap sister outside Supplement function"),
    Rule("R13", ERROR, "fused function in an invalid position or without a recoverable second parent"),
    Rule("R14", ERROR, "Flat children are lexical under a lexical parent of the same category; "
                       "only Flat structures give lexical nodes children; gaps are bare leaves"),
    Rule("R15", WARNING, "a multiword token must be a listed complex lexeme (strict lexicon only)"),
    Rule("F1", WARNING, "empty feature value (only :correct may be empty)"),
    Rule("N1", INFO, "nonce constituent: branching rules not checked"),
    Rule("H1", ERROR, "sent header differs from the reconstructed terminal sequence"),
    Rule("H2", WARNING, "text header differs from the reconstructed text"),
]}
_ORDER = {code: i for i, code in enumerate(RULES)}

COMPLEX_LEXEMES = frozenset([
    # determinatives
    "a certain", "a few", "a great many", "a little", "many a", "no one",
    # prepositions
    "as for", "as from", "as if", "as of", "as per", "as though", "as to", "in case",
    "in charge", "in front", "in order", "in spite", "in view", "no matter", "on board",
    "on purpose", "on to", "on top", "so as", "à la", "as long as", "as soon as",
    # subordinators
    "whether or not", "whether or no",
    # coordinators
    "as well as", "rather than",
])


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    node_path: tuple[tuple[str, int], ...]
    message: str
    position: Optional[tuple[int, int]] = None   # line, col of the node in the source

    @property
    def path(self) -> str:
        return "/" + "/".join(f"{fn}[{i}]" for fn, i in self.node_path)

    def sort_key(self):
        return tuple(i for _, i in self.node_path), _ORDER.get(self.code, len(_ORDER))

    def format(self, filename: str = "<input>") -> str:
        line, col = self.position or (0, 0)
        return f"{filename}:{line}:{col}: {self.severity} {self.code} {self.path} {self.message}"


def _diag(code: str, node: Constituent, message: str) -> Diagnostic:
    span = node.raw.span
    return Diagnostic(code, RULES[code].severity, node.path, message,
                      None if span is None else (span[0], span[1]))


def sort_diagnostics(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=Diagnostic.sort_key)


class _Checker:
    def __init__(self, graph: ConstituentGraph, strict_lexicon: bool):
        self.g = graph
        self.strict_lexicon = strict_lexicon
        self.out: list[Diagnostic] = []
        self.deeper_parents = {n.parent for n in graph.fused_nodes()}
        self.fused_parents = {n.fused_parent for n in graph.nodes if n.fused_parent is not None}
        self.compounding = self._compounding_region()

    def emit(self, code, node, message):
        self.out.append(_diag(code, node, message))

    # -- helpers -------------------------------------------------------------

    def _compounding_region(self) -> set[int]:
        region: set[int] = set()
        for n in self.g.nodes:
            p = n.parent
            if (n.function is not None and n.function.base == "Compounding") or p in region:
                region.add(n.id)
        return region

    @staticmethod
    def is_nonce(n: Constituent) -> bool:
        return n.category.is_nonce or (n.function is not None and n.function.is_nonce)

    def core_children(self, n: Constituent) -> list[Constituent]:
        """Children not in Supplement/Vocative function."""
        return [c for c in self.g.children(n) if not c.function.is_supplement]

    def heads(self, n: Constituent) -> list[Constituent]:
        return [c for c in self.core_children(n) if c.function.is_head]

    def subtree(self, n: Constituent):
        stack = [n]
        while stack:
            cur = stack.pop()
            yield cur
            stack.extend(self.g.children(cur))

    # -- rules ---------------------------------------------------------------

    def run(self) -> list[Diagnostic]:
        for n in self.g.nodes:
            self.labels(n)
            self.features(n)
            if self.is_nonce(n):
                self.emit("N1", n, f"nonce constituent {n.category.token}"
                          + (f" in {n.function.token}" if n.function else "") + " not checked")
                continue
            parent = self.g.parent(n)
            if not (parent is not None and self.is_nonce(parent)):
                self.projection(n)
                self.layering(n)
            if n.category.base == "VP":
                self.vp_levels(n)
            self.phrase_heads(n)
            self.binarity(n)
            self.vacuous_unary(n)
            self.flat_and_gaps(n)
            self.lexeme(n)
        self.coindexation()
        self.fusion()
        return sort_diagnostics(self.out)

    def labels(self, n):
        if n.category.is_unknown:
            self.emit("R0", n, f"unknown category {n.category.token!r}")
        if n.function is not None and n.function.is_unknown:
            self.emit("R0", n, f"unknown function {n.function.token!r}")

    def features(self, n):
        for f in n.features:
            if f.value == "" and f.key != "correct":
                self.emit("F1", n, f"empty :{f.key} value")

    def projection(self, n):  # R1
        cat = n.category
        want = cat.projection
        if want is None or n.id in self.compounding:
            return
        fn = n.function.base if n.function is not None else None
        if fn in ("Flat", "Compounding"):
            return
        if cat.token == "V_aux" and fn == "Prenucleus":
            return
        parent = self.g.parent(n)
        if parent is None or fn != "Head" or parent.category.base != want:
            where = "as the root" if parent is None else f"as {fn} of {parent.category.token}"
            self.emit("R1", n, f"{cat.token} must head a {want}; found {where}")

    def layering(self, n):  # R2
        if not n.category.is_lexical or n.parent is None:
            return
        if n.function.is_fused:  # the extra layer is the deeper parent
            return
        parent = self.g.parent(n)
        grand = self.g.parent(parent)
        if grand is None or not parent.function.is_head or self.is_nonce(grand):
            return
        if len(self.core_children(parent)) != 1:
            return
        if parent.category.token == grand.category.token and (
                grand.function is None or grand.function.base != "Coordinate"):
            self.emit("R2", n, f"{n.category.token} has too many layers: "
                               f"{parent.category.token} directly under {grand.category.token}")

    def vp_level_type(self, n) -> Optional[str]:
        """'unary', 'mod', 'ext', 'comp', 'other' or None for a bad level."""
        core = self.core_children(n)
        if len(core) <= 1:
            return "unary"
        heads = [c for c in core if c.function.is_head or c.function.is_fused]
        if len(heads) != 1:
            return None
        deps = [c for c in core if c is not heads[0]]
        fns = [c.function for c in deps]
        if any(f.is_nonce or f.is_unknown for f in fns):
            return "other"
        if all(f.is_internal_complement for f in fns):
            return "comp"
        if len(fns) == 1:
            base = fns[0].base
            if base == "Mod":
                return "mod"
            if base in EXTRAPOSED or base == "Postnucleus":
                return "ext"
            if base in ("Marker", "Comp_ind"):
                return "other"
        return None

    def vp_levels(self, n):  # R3
        kind = self.vp_level_type(n)
        if kind is None:
            labels = ", ".join(c.function.token for c in self.core_children(n))
            self.emit("R3", n, f"VP level must be Head plus one Mod, one extraposed complement, "
                               f"or internal complements; found {labels}")
            return
        if kind == "comp":
            head = next(c for c in self.core_children(n)
                        if c.function.is_head or c.function.is_fused)
            if head.category.base == "VP" and not self.is_nonce(head) \
                    and self.vp_level_type(head) == "comp":
                self.emit("R3", n, "two consecutive VP levels of internal complements")

    def phrase_heads(self, n):  # R4, R5
        base = n.category.base
        if base == "NP":
            code, allowed = "R4", ("Nom", "NP")
        elif base == "Clause":
            code, allowed = "R5", ("VP", "Clause")
        else:
            return
        heads = self.heads(n)
        if not heads:
            self.emit(code, n, f"{n.category.token} has no Head")
        elif heads[0].category.base not in allowed or heads[0].category.is_nonce:
            self.emit(code, n, f"{n.category.token} must be headed by {' or '.join(allowed)}"
                               f" level, not {heads[0].category.token}")

    def binarity(self, n):  # R6
        if not n.category.is_phrasal or n.category.base in ("VP", "Coordination"):
            return
        core = self.core_children(n)
        if not any(c.function.is_head or c.function.is_fused for c in core):
            return
        if len(core) > 2:
            self.emit("R6", n, f"{n.category.token} has {len(core)} branches (max 2, "
                               f"not counting supplements)")

    def vacuous_unary(self, n):  # R7
        if not n.category.is_phrasal:
            return
        core = self.core_children(n)
        if len(core) != 1:
            return
        only = core[0]
        if not only.function.is_head or only.category.base != n.category.base:
            return
        if n.id in self.fused_parents or only.id in self.deeper_parents:
            return
        self.emit("R7", n, f"vacuous unary {n.category.token} over {only.category.token}")

    def flat_and_gaps(self, n):  # R14
        parent = self.g.parent(n)
        if n.function is not None and n.function.base == "Flat":
            if not n.category.is_lexical or parent is None or not parent.category.is_lexical \
                    or parent.category.base != n.category.base:
                pcat = parent.category.token if parent is not None else "nothing"
                self.emit("R14", n, f"Flat {n.category.token} under {pcat}; Flat children must "
                                    f"be lexical under a lexical parent of the same category")
        if n.category.is_lexical and n.children:
            bad = [c.function.token for c in self.g.children(n) if c.function.base != "Flat"]
            if bad:
                self.emit("R14", n, f"lexical {n.category.token} has non-Flat children "
                                    f"({', '.join(bad)})")
        if n.category.is_gap:
            if n.children:
                self.emit("R14", n, "GAP must be a leaf")
            for key in ("t", "correct", "l"):
                if n.feature(key) is not None:
                    self.emit("R14", n, f"GAP carries :{key}")

    def lexeme(self, n):  # R15
        if not self.strict_lexicon:
            return
        for tok in n.feature_values("t"):
            words = " ".join(tok.split())
            if " " in tok and words.lower() not in COMPLEX_LEXEMES:
                self.emit("R15", n, f"multiword token {tok!r} is not a listed complex lexeme")

    def coindexation(self):  # R8-R11
        by_var: dict[str, list[Constituent]] = defaultdict(list)
        for n in self.g.nodes:
            if n.coindex_var is not None:
                by_var[n.coindex_var].append(n)
        for n in self.g.nodes:
            if not n.category.is_gap:
                continue
            if n.coindex_var is None:
                self.emit("R8", n, "gap without a coindexation variable")
                continue
            overt = [m for m in by_var[n.coindex_var] if not m.category.is_gap]
            if len(overt) != 1:
                self.emit("R8", n, f"gap {n.coindex_var} is coindexed to {len(overt)} "
                                   f"overt elements (expected 1)")
        for var, members in by_var.items():
            gaps = [m for m in members if m.category.is_gap]
            overt = [m for m in members if not m.category.is_gap]
            if not gaps:
                self.emit("R9", members[0], f"variable {var} is not on any gap")
            for extra in overt[1:]:
                self.emit("R10", extra, f"variable {var} already used on "
                                        f"{path_str(overt[0])}")
            if len(overt) == 1 and gaps:
                self.coindex_level(overt[0])
        for n in self.g.nodes:  # R12
            if n.category.is_gap and not self._has_overt_sister(n):
                self.emit("R12", n, "gap has no non-gap sister outside Supplement")

    def coindex_level(self, o: Constituent):  # R11
        if not o.category.is_lexical:
            return
        fn = o.function.base if o.function is not None else None
        if o.category.token == "V_aux" and fn == "Prenucleus":
            return
        parent = self.g.parent(o)
        if o.category.base == "N" and parent is not None:
            for sis in self.g.children(parent):
                if sis.id == o.id or sis.function.base not in ("Mod", "Comp_ind"):
                    continue
                if any(m.category.is_gap and m.coindex_var == o.coindex_var
                       for m in self.subtree(sis)):
                    return
        self.emit("R11", o, f"coindexation variable {o.coindex_var} on lexical "
                            f"{o.category.token}; prefer the phrase level")

    def _has_overt_sister(self, n: Constituent) -> bool:
        parent = self.g.parent(n)
        if parent is None:
            return False
        return any(s.id != n.id and not s.category.is_gap and not s.function.is_supplement
                   for s in self.g.children(parent))

    def fusion(self):  # R13
        for nid, reason in self.g.recovery_failures:
            self.emit("R13", self.g[nid], reason)


def validate(graph: ConstituentGraph, strict_lexicon: bool = False) -> list[Diagnostic]:
    """All findings for one graph, ordered by node position then rule code.

    Build the graph with ``strict=False`` so that fusion failures surface
    here as R13 instead of raising.
    """
    return _Checker(graph, strict_lexicon).run()


def count_by_severity(diags: Iterable[Diagnostic]) -> dict[str, int]:
    counts = {ERROR: 0, WARNING: 0, INFO: 0}
    for d in diags:
        counts[d.severity] += 1
    return counts
