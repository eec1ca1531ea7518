import re

import pytest

from cgelkit.grammar import RecoveryError, build_graph
from cgelkit.format import parse_node
from cgelkit.render import PREAMBLE, PROLOGUE, latex_escape, render_forest

from conftest import FIXTURES, WELLFORMED, graph_of, load

GOLDEN = FIXTURES / "golden" / "appendix_b.tex"


def balanced(s, open_, close):
    depth = 0
    for ch in s:
        depth += (ch == open_) - (ch == close)
        if depth < 0:
            return False
    return depth == 0


def test_golden(appendix_graph):
    out = render_forest(appendix_graph)
    assert out == GOLDEN.read_text(encoding="utf-8")
    assert render_forest(appendix_graph) == out


def test_appendix_counts(appendix_graph):
    out = render_forest(appendix_graph)
    assert out.count("no edge") == 2
    assert out.count("before drawing tree={x+=") == 2
    assert out.count("\\draw[-]") == 4
    assert balanced(out, "[", "]") and balanced(out, "{", "}")
    assert PROLOGUE in out


def test_leaf_label(appendix_graph):
    assert "[\\Node{Head}{V}[call]]" in render_forest(appendix_graph)


def test_det_head_drawing(appendix_graph):
    lines = render_forest(appendix_graph).splitlines()
    i = next(k for k, ln in enumerate(lines) if "{Det-Head}{DP}" in ln)
    assert "no edge" in lines[i]
    assert "{Nom}" in lines[i - 1] and "before drawing tree={x+=1em}" in lines[i - 1]
    assert lines[i + 2].strip() == \
        "]{ \\draw[-] (!uu.south) -- (); \\draw[-] (!u.south) -- (); }"


def test_shift_depends_on_siblings(appendix_graph):
    out = render_forest(appendix_graph)
    assert re.search(r"\{Mod\}\{Clause\\textsubscript\{rel\}\}, before drawing tree=\{x\+=2em\}",
                     out)
    rel = next(n for n in appendix_graph if n.category.token == "Clause_rel" and n.children)
    custom = render_forest(appendix_graph, shifts={rel.id: 1.5})
    assert "x+=1.5em" in custom


def test_no_fusion_no_drawing():
    out = render_forest(graph_of('(NP :Det (DP :Head (D :t "a")) :Head (Nom :Head (N :t "cat")))'))
    assert "no edge" not in out and "\\draw" not in out


def test_gap_label():
    out = render_forest(graph_of("(VP :Head (V :t \"see\") :Obj (x / GAP))"))
    assert "[\\Node{Obj}{GAP\\textsubscript{x}}[--]]" in out


def test_unrecovered_fusion_refused():
    g = build_graph(parse_node('(Clause :Head (VP :Det-Head (DP :Head (D :t "this"))))'),
                    strict=False)
    with pytest.raises(RecoveryError):
        render_forest(g)


def test_collapse_depth(appendix_graph):
    out = render_forest(appendix_graph, collapse_depth=2)
    assert "[\\Node{Subj}{NP}[that, roof]]" in out
    assert "[is that -- what you call -- WH-movement" not in out
    assert "[-- what you call -- WH-movement, roof]" in out
    assert "no edge" not in out
    assert balanced(out, "[", "]")


def test_preamble(appendix_graph):
    out = render_forest(appendix_graph, preamble=True)
    assert out.startswith(PREAMBLE)
    assert out.rstrip().endswith("\\end{document}")


def test_escaping():
    assert latex_escape("a,b") == "{a,b}"
    assert latex_escape("50%") == "50\\%"
    assert latex_escape("[x]") == "\\lbrack{}x\\rbrack{}"
    out = render_forest(graph_of('(NP :Head (Nom :Head (N :t "x]" :p "," :correct "a=b")))'))
    assert balanced(out, "[", "]") and balanced(out, "{", "}")


@pytest.mark.parametrize("path", sorted(WELLFORMED.glob("*.cgel")), ids=lambda p: p.stem)
def test_fused_drawing_invariants(path):
    for tree in load(path):
        g = build_graph(tree)
        out = render_forest(g)
        fused = g.fused_nodes()
        assert out.count("no edge") == len(fused)
        assert out.count("\\draw[-]") == 2 * len(fused)
        assert out.count("before drawing tree") == len({g.parent(n).id for n in fused})
        anchors = re.findall(r"\\draw\[-\] \(!(u+)\.south\) -- \(\); \\draw", out)
        assert sorted(len(a) for a in anchors) == \
            sorted(g.depth(n) - g.depth(g[n.fused_parent]) for n in fused)
        assert balanced(out, "[", "]") and balanced(out, "{", "}")
