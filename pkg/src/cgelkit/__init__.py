"""Tools for the ``.cgel`` treebank format."""
from .format import (Feature, ParseError, RawNode, SourceTree, parse_corpus, parse_file,
                     parse_node, serialize, serialize_corpus)
from .grammar import (Category, ConstituentGraph, Function, RecoveryError, build_graph,
                      classify_category, classify_function, recover_fused_parent, terminals)
from .render import render_forest
from .text import check_headers, corrected_sentence, reconstruct_sent, reconstruct_text
from .validate import RULES, Diagnostic, validate

__version__ = "0.1.0"
