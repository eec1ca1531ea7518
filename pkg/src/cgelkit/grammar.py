"""Category and function inventories, and the constituent graph.

The bracketed format stores a tree. Constituents in one of the fused
functions (``Det-Head``, ``Mod-Head``, ``Marker-Head``, ``Head-Prenucleus``)
sit under their deeper parent only; :func:`build_graph` restores the second,
level-skipping parent so the result is a DAG.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .format import Feature, RawNode, SourceTree

LEXICAL = ("N", "V", "Adj", "Adv", "P", "D", "Int", "Sdr", "Coordinator")
PHRASAL = ("Nom", "NP", "VP", "Clause", "AdjP", "AdvP", "PP", "DP", "IntP", "Coordination")
GAP = "GAP"
SUBCATEGORIES = {"pro": "N", "aux": "V", "rel": "Clause", "strand": "PP"}

# lexical base -> the phrase it heads; Sdr and Coordinator project nothing
PROJECTS = {"N": "Nom", "V": "VP", "Adj": "AdjP", "Adv": "AdvP",
            "P": "PP", "D": "DP", "Int": "IntP"}

FUNCTIONS = (
    "Head", "Det", "Comp", "Comp_ind", "PredComp", "DisplacedSubj",
    "ExtraposedSubj", "ExtraposedObj", "Obj", "Obj_dir", "Obj_ind", "Particle",
    "Prenucleus", "Postnucleus", "Subj", "Marker", "Flat", "Compounding",
    "Coordinate", "Mod", "Supplement", "Vocative",
    "Det-Head", "Mod-Head", "Marker-Head", "Head-Prenucleus",
)
FUSED = frozenset({"Det-Head", "Mod-Head", "Marker-Head", "Head-Prenucleus"})
INTERNAL_COMPLEMENTS = frozenset(
    {"Comp", "Obj", "Obj_dir", "Obj_ind", "PredComp", "Particle", "DisplacedSubj"})
EXTRAPOSED = frozenset({"ExtraposedSubj", "ExtraposedObj"})
SUPPLEMENTS = frozenset({"Supplement", "Vocative"})


@dataclass(frozen=True)
class Category:
    base: Optional[str] = None
    subcat: Optional[str] = None
    nonce_parts: Optional[tuple["Category", ...]] = None
    unknown: Optional[str] = None

    @property
    def token(self) -> str:
        if self.unknown is not None:
            return self.unknown
        if self.nonce_parts is not None:
            return "+".join(p.token for p in self.nonce_parts)
        return f"{self.base}_{self.subcat}" if self.subcat else self.base

    def __str__(self) -> str:
        return self.token

    @property
    def is_unknown(self) -> bool:
        return self.unknown is not None

    @property
    def is_nonce(self) -> bool:
        return self.nonce_parts is not None

    @property
    def is_gap(self) -> bool:
        return self.base == GAP

    @property
    def is_lexical(self) -> bool:
        return self.base in LEXICAL

    @property
    def is_phrasal(self) -> bool:
        return self.base in PHRASAL

    @property
    def projection(self) -> Optional[str]:
        """Phrasal base this lexical category must head, if any."""
        return PROJECTS.get(self.base)


@dataclass(frozen=True)
class Function:
    base: Optional[str] = None
    # one entry per '+' part, each a tuple of '/'-separated alternatives
    nonce_parts: Optional[tuple[tuple[str, ...], ...]] = None
    unknown: Optional[str] = None

    @property
    def token(self) -> str:
        if self.unknown is not None:
            return self.unknown
        if self.nonce_parts is not None:
            return "+".join("/".join(alts) for alts in self.nonce_parts)
        return self.base

    def __str__(self) -> str:
        return self.token

    @property
    def is_unknown(self) -> bool:
        return self.unknown is not None

    @property
    def is_nonce(self) -> bool:
        return self.nonce_parts is not None

    @property
    def is_fused(self) -> bool:
        return self.base in FUSED

    @property
    def is_internal_complement(self) -> bool:
        return self.base in INTERNAL_COMPLEMENTS

    @property
    def is_supplement(self) -> bool:
        return self.base in SUPPLEMENTS

    @property
    def is_head(self) -> bool:
        return self.base == "Head"


def _simple_category(token: str) -> Optional[Category]:
    if token in LEXICAL or token in PHRASAL or token == GAP:
        return Category(base=token)
    base, sep, sub = token.partition("_")
    if sep and SUBCATEGORIES.get(sub) == base:
        return Category(base=base, subcat=sub)
    return None


def classify_category(token: str) -> Category:
    """Interpret a category token. Never raises: unknown tokens come back
    as ``Category(unknown=token)``."""
    simple = _simple_category(token)
    if simple is not None:
        return simple
    if "+" in token:
        parts = [_simple_category(p) for p in token.split("+")]
        if len(parts) >= 2 and all(p is not None and not p.is_gap for p in parts):
            return Category(nonce_parts=tuple(parts))
    return Category(unknown=token)


def classify_function(token: str) -> Function:
    """Interpret a function token, including ``+``/``/`` nonce composites."""
    if token in FUNCTIONS:
        return Function(base=token)
    if "+" in token or "/" in token:
        parts = tuple(tuple(part.split("/")) for part in token.split("+"))
        names = [a for alts in parts for a in alts]
        if all(a in FUNCTIONS and a not in FUSED for a in names) and (
                len(parts) >= 2 or len(parts[0]) >= 2):
            return Function(nonce_parts=parts)
    return Function(unknown=token)


# -- graph --------------------------------------------------------------------

class RecoveryError(ValueError):
    """A fused constituent has no acceptable second parent."""


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Constituent:
    id: int
    category: Category
    coindex_var: Optional[str]
    features: tuple[Feature, ...]
    function: Optional[Function]          # incoming function from the primary parent
    parent: Optional[int]                 # primary parent id
    children: tuple[int, ...]             # primary children in surface order
    path: tuple[tuple[str, int], ...]     # (function, child index) steps from the root
    raw: RawNode = field(compare=False, repr=False)
    fused_parent: Optional[int] = None
    fused_role: Optional[str] = None      # function borne towards fused_parent

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def feature(self, key: str) -> Optional[str]:
        for f in self.features:
            if f.key == key:
                return f.value
        return None

    def feature_values(self, key: str) -> list[str]:
        return [f.value for f in self.features if f.key == key]


@dataclass(frozen=True)
class ConstituentGraph:
    nodes: tuple[Constituent, ...]        # preorder; node.id is its index
    tree: Optional[SourceTree] = field(default=None, compare=False, repr=False)
    # fused node id -> reason its second parent could not be found
    recovery_failures: tuple[tuple[int, str], ...] = ()

    @property
    def root(self) -> Constituent:
        return self.nodes[0]

    def __getitem__(self, node_id: int) -> Constituent:
        return self.nodes[node_id]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[Constituent]:
        return iter(self.nodes)

    def children(self, node: Constituent) -> list[Constituent]:
        return [self.nodes[c] for c in node.children]

    def parent(self, node: Constituent) -> Optional[Constituent]:
        return None if node.parent is None else self.nodes[node.parent]

    def ancestors(self, node: Constituent) -> Iterator[Constituent]:
        cur = self.parent(node)
        while cur is not None:
            yield cur
            cur = self.parent(cur)

    def fused_nodes(self) -> list[Constituent]:
        return [n for n in self.nodes if n.function is not None and n.function.is_fused]

    def fused_edges(self) -> list[tuple[int, int]]:
        """(fused parent id, node id) pairs for every recovered fused edge."""
        return [(n.fused_parent, n.id) for n in self.nodes if n.fused_parent is not None]

    def fused_children(self, node: Constituent) -> list[Constituent]:
        return [n for n in self.nodes if n.fused_parent == node.id]

    def depth(self, node: Constituent) -> int:
        return len(node.path)

    def by_path(self, path) -> Constituent:
        cur = self.root
        for _, idx in path:
            cur = self.nodes[cur.children[idx]]
        return cur


# fused function -> (categories allowed for the deeper parent,
#                    categories accepted for the second parent)
FUSION_TABLE = {
    "Det-Head": ({"Nom"}, {"Nom", "NP"}),
    "Mod-Head": ({"Nom"}, {"Nom", "NP"}),
    "Marker-Head": ({"Nom", "VP"}, {"NP", "Nom"}),
    "Head-Prenucleus": ({"Clause_rel"}, {"Nom", "NP", "PP", "AdjP", "AdvP"}),
}


def _find_fused_parent(node_id, categories, functions, parents) -> int:
    fn = functions[node_id].base
    deeper_ok, accepted = FUSION_TABLE[fn]
    parent = parents[node_id]
    if parent is None:
        raise RecoveryError(f"{fn} on the root")
    if categories[parent].token not in deeper_ok:
        raise RecoveryError(
            f"{fn} under {categories[parent].token}; expected {'/'.join(sorted(deeper_ok))}")
    if fn == "Marker-Head":
        # 'to'-ellipsis: VP over VP; 'etc.': Nom up to NP
        accepted = {"VP"} if categories[parent].token == "VP" else {"NP", "Nom"}
    cur = parents[parent]
    while cur is not None:
        cat = categories[cur]
        if cat.token in accepted:
            return cur
        # a Marker-Head can also attach to the coordinate it marks
        if fn == "Marker-Head" and cat.is_phrasal and functions[cur] is not None \
                and functions[cur].base == "Coordinate":
            return cur
        if functions[cur] is None or not functions[cur].is_head:
            break
        cur = parents[cur]
    raise RecoveryError(f"no acceptable ancestor for {fn} under {categories[parent].token}")


def recover_fused_parent(graph: ConstituentGraph, node: int | Constituent) -> int:
    """Id of the level-skipping parent of a fused constituent.

    Walks up from the grandparent and returns the nearest ancestor whose
    category is acceptable for the fused function, climbing only through
    ancestors that are themselves heads.
    """
    node_id = node.id if isinstance(node, Constituent) else node
    fn = graph[node_id].function
    if fn is None or not fn.is_fused:
        raise ValueError(f"node {node_id} is not in a fused function")
    categories = [n.category for n in graph.nodes]
    functions = [n.function for n in graph.nodes]
    parents = [n.parent for n in graph.nodes]
    return _find_fused_parent(node_id, categories, functions, parents)


def build_graph(tree: SourceTree | RawNode, strict: bool = True) -> ConstituentGraph:
    """Number constituents in preorder and restore fused edges.

    With ``strict`` a failed recovery raises :class:`RecoveryError`;
    otherwise the failure is recorded on the graph for the validator.
    """
    root = tree.root if isinstance(tree, SourceTree) else tree
    raws: list[RawNode] = []
    functions: list[Optional[Function]] = []
    parents: list[Optional[int]] = []
    paths: list[tuple] = []
    kids: list[list[int]] = []
    stack = [(root, None, None, ())]
    while stack:
        raw, fn, parent, path = stack.pop()
        nid = len(raws)
        raws.append(raw)
        functions.append(None if fn is None else classify_function(fn))
        parents.append(parent)
        paths.append(path)
        kids.append([])
        if parent is not None:
            kids[parent].append(nid)
        for i in range(len(raw.children) - 1, -1, -1):
            cfn, child = raw.children[i]
            stack.append((child, cfn, nid, path + ((cfn, i),)))
    categories = [classify_category(r.category) for r in raws]

    fused: dict[int, int] = {}
    failures: list[tuple[int, str]] = []
    for nid, fn in enumerate(functions):
        if fn is not None and fn.is_fused:
            try:
                fused[nid] = _find_fused_parent(nid, categories, functions, parents)
            except RecoveryError as e:
                if strict:
                    raise RecoveryError(f"{e} (node {_path_str(paths[nid])})") from None
                failures.append((nid, str(e)))

    nodes = []
    for nid, raw in enumerate(raws):
        fp = fused.get(nid)
        role = None
        if fp is not None:
            role = functions[nid].base.split("-")[0]
        nodes.append(Constituent(
            id=nid, category=categories[nid], coindex_var=raw.coindex_var,
            features=raw.features, function=functions[nid], parent=parents[nid],
            children=tuple(kids[nid]), path=paths[nid], raw=raw,
            fused_parent=fp, fused_role=role))
    return ConstituentGraph(tuple(nodes), tree if isinstance(tree, SourceTree) else None,
                            tuple(failures))


def _path_str(path) -> str:
    return "/" + "/".join(f"{fn}[{i}]" for fn, i in path)


def path_str(node: Constituent) -> str:
    return _path_str(node.path)


def terminals(graph: ConstituentGraph) -> list[Constituent]:
    """Leaves of the primary tree in surface order, gaps included."""
    return [n for n in graph.nodes if n.is_leaf]
