import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankedtrees.distributions import zigzag_numbers
from rankedtrees.errors import InvalidTreeError, MalformedMergeSequenceError, SizeOutOfRangeError
from rankedtrees.trees import (
    MAX_ENUMERATION_SIZE,
    IncreasingTree,
    OutdegreeProfile,
    canonical_code,
    cherries_and_pitchforks,
    coalescent_probability,
    count_pitchforks,
    enumerate_increasing_trees,
    format_tree_line,
    outdegree_profile,
    parse_tree_line,
    tree_from_merge_sequence,
)
from rankedtrees.verify import all_merge_sequences

SINGLE = IncreasingTree((0,))
CHAIN3 = IncreasingTree((0, 1, 2))
CHERRY_ROOT = IncreasingTree((0, 1, 1))


def test_enumeration_counts_small():
    assert len(list(enumerate_increasing_trees(1))) == 1
    assert len(list(enumerate_increasing_trees(4))) == 5
    assert len(list(enumerate_increasing_trees(5))) == 16


def test_enumeration_is_deterministic_and_duplicate_free():
    first = [t.parent for t in enumerate_increasing_trees(7)]
    second = [t.parent for t in enumerate_increasing_trees(7)]
    assert first == second
    assert len(set(first)) == len(first)


def test_size6_shape_tallies():
    # (cherries, pitchforks) over the 16 ranked trees with six leaves
    tally = Counter(cherries_and_pitchforks(t) for t in enumerate_increasing_trees(5))
    assert tally == {(3, 0): 4, (2, 1): 7, (2, 2): 3, (2, 0): 1, (1, 1): 1}


@pytest.mark.parametrize("m", [0, -1, MAX_ENUMERATION_SIZE + 1])
def test_enumeration_rejects_out_of_range(m):
    with pytest.raises(SizeOutOfRangeError):
        list(enumerate_increasing_trees(m))


@pytest.mark.parametrize(
    "tree, profile",
    [(SINGLE, (1, 0, 0)), (CHAIN3, (1, 2, 0)), (CHERRY_ROOT, (2, 0, 1))],
)
def test_outdegree_profile_examples(tree, profile):
    assert outdegree_profile(tree) == OutdegreeProfile(*profile)


@pytest.mark.parametrize(
    "tree, r", [(SINGLE, 0), (IncreasingTree((0, 1)), 1), (CHERRY_ROOT, 0), (CHAIN3, 1)]
)
def test_count_pitchforks_examples(tree, r):
    assert count_pitchforks(tree) == r


def test_coalescent_probability_examples():
    assert coalescent_probability(SINGLE) == 1
    for t in enumerate_increasing_trees(5):
        if outdegree_profile(t).o == 2:
            assert coalescent_probability(t) == Fraction(1, 15)
    probs = sorted(coalescent_probability(t) for t in enumerate_increasing_trees(3))
    assert probs == [Fraction(1, 3), Fraction(2, 3)]
    assert sum(probs) == 1


@pytest.mark.parametrize("m", range(1, 11))
def test_per_tree_invariants(m):
    total = Fraction(0)
    count = 0
    for t in enumerate_increasing_trees(m):
        o, p, q = outdegree_profile(t)
        assert o + p + q == m
        assert o == q + 1
        assert p == m - 2 * o + 1
        r = count_pitchforks(t)
        assert 0 <= r <= min(o, m - 2 * o + 1)
        total += coalescent_probability(t)
        count += 1
    assert total == 1
    assert count == zigzag_numbers(m + 1)[m]


def test_canonical_code_examples():
    assert canonical_code(SINGLE) == canonical_code(IncreasingTree((0,)))
    a, b = enumerate_increasing_trees(3)
    assert canonical_code(a) != canonical_code(b)


@pytest.mark.parametrize("m", range(1, 9))
def test_canonical_codes_are_distinct(m):
    codes = {canonical_code(t) for t in enumerate_increasing_trees(m)}
    assert len(codes) == zigzag_numbers(m + 1)[m]


def test_merge_sequence_examples():
    assert tree_from_merge_sequence([(0, 1)]) == SINGLE
    chain = IncreasingTree((0, 1))
    for a, b in itertools.combinations(range(3), 2):
        c = ({0, 1, 2} - {a, b}).pop()
        assert tree_from_merge_sequence([(a, b), (c, 3)]) == chain


def test_merge_sequences_n4_split():
    seqs = list(all_merge_sequences(4))
    assert len(seqs) == 18
    tally = Counter(outdegree_profile(tree_from_merge_sequence(s)).o for s in seqs)
    assert tally == {1: 12, 2: 6}


@pytest.mark.parametrize("n", range(2, 6))
def test_merge_sequences_induce_coalescent_distribution(n):
    seqs = list(all_merge_sequences(n))
    hist = Counter(tree_from_merge_sequence(s) for s in seqs)
    assert {t: Fraction(c, len(seqs)) for t, c in hist.items()} == {
        t: coalescent_probability(t) for t in enumerate_increasing_trees(n - 1)
    }


def test_merge_labels_follow_time_order():
    # first merge gets the largest label, the last merge is the root
    t = tree_from_merge_sequence([(0, 1), (2, 3), (4, 5)])
    assert t == IncreasingTree((0, 1, 1))


@pytest.mark.parametrize(
    "merges, n",
    [
        ([], None),
        ([(0, 1)], 3),
        ([(0, 0)], None),
        ([(0, 1), (0, 2)], None),
        ([(0, 1), (2, 4)], None),
        ([(0,)], None),
    ],
)
def test_malformed_merge_sequences(merges, n):
    with pytest.raises(MalformedMergeSequenceError):
        tree_from_merge_sequence(merges, n)


@pytest.mark.parametrize("parent", [(), (1,), (0, 2), (0, 1, 1, 1), (0, 0)])
def test_invalid_trees_rejected(parent):
    with pytest.raises(InvalidTreeError):
        IncreasingTree(parent)


def test_dump_line_round_trip():
    for t in enumerate_increasing_trees(6):
        line = format_tree_line(t)
        assert line.startswith("0")
        assert parse_tree_line(line) == t


@st.composite
def merge_sequences(draw):
    n = draw(st.integers(2, 40))
    active = list(range(n))
    merges = []
    nxt = n
    while len(active) > 1:
        a, b = draw(st.lists(st.sampled_from(active), min_size=2, max_size=2, unique=True))
        merges.append((a, b))
        active = [x for x in active if x not in (a, b)] + [nxt]
        nxt += 1
    return n, merges


@given(merge_sequences())
@settings(max_examples=200, deadline=None)
def test_merge_sequences_give_valid_trees(case):
    n, merges = case
    t = tree_from_merge_sequence(merges)
    assert t.size == n - 1
    IncreasingTree(t.parent)  # passes full validation
    # every leaf-leaf merge is a cherry
    leafy = sum(1 for a, b in merges if a < n and b < n)
    assert outdegree_profile(t).o == leafy
