"""End-to-end acceptance checks, one per criterion.

Run under pytest (the lines appear in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""
import re
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cgelkit import build_graph, parse_corpus, render_forest, validate  # noqa: E402
from cgelkit.format import serialize  # noqa: E402
from cgelkit.grammar import path_str  # noqa: E402
from cgelkit.text import normalize_text, reconstruct_sent, reconstruct_text  # noqa: E402

from conftest import APPENDIX_RAW, FIXTURES, FLAGGED, VIOLATIONS, WELLFORMED  # noqa: E402

RESULTS: list[str] = []
NAMED = ["det-head", "relNP", "Etc", "doublegap", "subjaux", "delayed", "gapped1", "Flat", "120M",
         "LetItBe"]


def _trees(path):
    return parse_corpus(Path(path).read_bytes())


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    return ok


def check_round_trip():
    files = [APPENDIX_RAW] + sorted(WELLFORMED.glob("*.cgel")) + sorted(FLAGGED.glob("*.cgel"))
    transcribed = {p.stem for p in files} - {"appendix_b", "appendix_b_raw", "errors",
                                              "marker-head-to"}
    start = time.perf_counter()
    bad = []
    count = 0
    for path in files:
        for tree in _trees(path):
            count += 1
            (back,) = parse_corpus(serialize(tree))
            if back != tree or serialize(back) != serialize(tree):
                bad.append(path.stem)
    elapsed = time.perf_counter() - start
    missing = [n for n in NAMED if n not in transcribed]
    ok = not bad and not missing and len(transcribed) >= 15 and elapsed < 1.0
    return record(1, ok, f"{count} trees ({len(transcribed)} transcribed figures) round-trip, "
                         f"{elapsed:.3f}s; mismatches={bad} missing={missing}")


def check_zero_errors():
    errors, unexpected_warnings = [], []
    for path in sorted(WELLFORMED.glob("*.cgel")):
        for tree in _trees(path):
            diags = validate(build_graph(tree, strict=False))
            errors += [f"{path.stem}:{d.code}" for d in diags if d.severity == "error"]
            if path.stem != "doublegap":
                unexpected_warnings += [f"{path.stem}:{d.code}" for d in diags
                                        if d.severity == "warning"]
    (appendix,) = _trees(APPENDIX_RAW)
    appendix_diags = validate(build_graph(appendix))
    (dg,) = _trees(WELLFORMED / "doublegap.cgel")
    dg_codes = [d.code for d in validate(build_graph(dg))]
    ok = not errors and not unexpected_warnings and not appendix_diags and \
        dg_codes and set(dg_codes) == {"R12"}
    return record(2, ok, f"errors={errors} other warnings={unexpected_warnings} "
                         f"appendix={len(appendix_diags)} doublegap={dg_codes}")


def check_negative_suite():
    problems = []
    files = sorted(VIOLATIONS.glob("*.cgel"))
    for path in files:
        (tree,) = _trees(path)
        allowed = set(tree.header("expect").split())
        target = f"R{int(path.stem[1:])}"
        found = {d.code for d in validate(build_graph(tree, strict=False))}
        if target not in found or not found <= allowed:
            problems.append(f"{path.stem}: found {sorted(found)}, allowed {sorted(allowed)}")
    rules = sorted(int(p.stem[1:]) for p in files)
    ok = not problems and rules == list(range(1, 15))
    return record(3, ok, f"{len(files)} seeded fixtures; problems={problems}")


def check_fusion():
    (tree,) = _trees(APPENDIX_RAW)
    g = build_graph(tree)
    edges = sorted((g[c].category.token, g[c].function.token, g[p].category.token,
                    g.depth(g[c]) - g.depth(g[p])) for p, c in g.fused_edges())
    expected = [("DP", "Det-Head", "NP", 2), ("NP", "Head-Prenucleus", "Nom", 2)]
    return record(4, edges == expected,
                  f"edges={[(path_str(g[c]), path_str(g[p])) for p, c in g.fused_edges()]}")


def check_sentences():
    (tree,) = _trees(APPENDIX_RAW)
    g = build_graph(tree)
    sent, text = reconstruct_sent(g), reconstruct_text(g).text
    ok = sent == tree.header("sent") == "is that -- what you call -- WH-movement" and \
        normalize_text(text) == normalize_text(tree.header("text"))
    return record(5, ok, f"sent={sent!r} text={text!r}")


def _balanced(s):
    for o, c in ("[]", "{}"):
        depth = 0
        for ch in s:
            depth += (ch == o) - (ch == c)
            if depth < 0:
                return False
        if depth:
            return False
    return True


def check_renderer():
    (tree,) = _trees(APPENDIX_RAW)
    runs = [render_forest(build_graph(tree)) for _ in range(3)]
    out = runs[0]
    golden = (FIXTURES / "golden" / "appendix_b.tex").read_text(encoding="utf-8")
    counts = (out.count("no edge"), out.count("before drawing tree={x+="),
              len(re.findall(r"\\draw\[-\]", out)))
    ok = counts == (2, 2, 4) and _balanced(out) and all(r == golden for r in runs)
    return record(6, ok, f"no edge/shift/draw={counts} balanced={_balanced(out)} "
                         f"golden match={all(r == golden for r in runs)}")


def check_properties():
    import test_properties as props

    names = ["test_parser_survives_bytes", "test_parser_survives_near_syntax",
             "test_serialize_parse_fixed_point", "test_validate_deterministic",
             "test_supplement_never_adds_shape_errors"]
    props.CALLS.clear()
    start = time.perf_counter()
    for name in names:
        getattr(props, name)()
    elapsed = time.perf_counter() - start
    counts = {n: props.CALLS[n] for n in names}
    ok = all(c >= 1000 for c in counts.values()) and elapsed < 30
    return record(7, ok, f"cases={counts} in {elapsed:.1f}s")


CHECKS = [check_round_trip, check_zero_errors, check_negative_suite, check_fusion,
          check_sentences, check_renderer, check_properties]


def test_criterion_1_round_trip():
    assert check_round_trip(), RESULTS[-1]


def test_criterion_2_zero_error_closure():
    assert check_zero_errors(), RESULTS[-1]


def test_criterion_3_negative_suite():
    assert check_negative_suite(), RESULTS[-1]


def test_criterion_4_fusion_recovery():
    assert check_fusion(), RESULTS[-1]


def test_criterion_5_sentence_reconstruction():
    assert check_sentences(), RESULTS[-1]


def test_criterion_6_renderer_snapshot():
    assert check_renderer(), RESULTS[-1]


def test_criterion_7_property_tests():
    assert check_properties(), RESULTS[-1]


if __name__ == "__main__":
    results = []
    for check in CHECKS:
        try:
            results.append(check())
        except Exception as e:  # report and keep going
            results.append(False)
            RESULTS.append(f"{check.__name__}: FAIL - {type(e).__name__}: {e}")
        print(RESULTS[-1])
    sys.exit(0 if all(results) else 1)
