"""Hypothesis strategies for random ``.cgel`` trees.

Trees are grown from a drawn seed with :mod:`random`; drawing every node
through hypothesis directly is several times slower.
"""
import random

from hypothesis import strategies as st

from cgelkit.format import FEATURE_KEYS, Feature, RawNode
from cgelkit.grammar import FUNCTIONS, FUSED, LEXICAL, PHRASAL

CATEGORIES = list(PHRASAL) + list(LEXICAL) + ["N_pro", "V_aux", "Clause_rel", "PP_strand",
                                               "GAP", "NP+PP", "Junk"]
CHILD_FUNCTIONS = list(FUNCTIONS) + sorted(FUSED) + ["Obj+Comp", "Obj+PredComp/Comp", "Frob"]
# quoted values may hold anything but line breaks
VALUES = ["", "a", "the", "x y", '"', "\\", 'say "hi\\"', "é", ",", "?", "--", "\t(/:)"]
KEYS = sorted(FEATURE_KEYS)
VARIABLES = [None, None, None, "x", "y", "z1"]


def random_tree(rng: random.Random, budget: int = 10) -> RawNode:
    features = tuple(Feature(rng.choice(KEYS), rng.choice(VALUES))
                     for _ in range(rng.choice((0, 0, 1, 2))))
    children = []
    if budget > 1 and rng.random() < 0.7:
        n = rng.randint(1, 3)
        share = max(1, (budget - 1) // n)
        children = [(rng.choice(CHILD_FUNCTIONS), random_tree(rng, share)) for _ in range(n)]
    return RawNode(rng.choice(CATEGORIES), rng.choice(VARIABLES), features, tuple(children))


trees = st.builds(lambda seed, size: random_tree(random.Random(seed), size),
                  st.integers(0, 2**32 - 1), st.integers(1, 24))

headers = st.lists(st.tuples(
    st.text(st.characters(whitelist_categories=("Ll", "Nd"), whitelist_characters="_"),
            min_size=1, max_size=8),
    st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp"),
                          blacklist_characters="\x85"), max_size=10).map(str.strip)),
    max_size=3).map(tuple)

# text close to the format, so the fuzzer reaches deep parser states
near_syntax = st.lists(st.sampled_from(list('():"/\\ \n#=+-_') + ["NP", "Head", ":t", "x",
                                                                   ":p", "GAP", "é"]),
                       max_size=40).map("".join)
