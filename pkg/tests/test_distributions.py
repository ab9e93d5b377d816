from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankedtrees import reference as ref
from rankedtrees.distributions import (
    DistributionTable,
    JointCountTable,
    base_table,
    cherry_counts,
    cherry_distribution,
    conditional_pitchfork_distribution,
    conditional_pitchfork_means,
    euler_numbers,
    expected_cherries,
    expected_pitchforks,
    extend_counts,
    identity_probability,
    joint_counts,
    joint_distribution,
    pitchfork_distribution,
    pitchfork_mean_recursion,
    variance_cherries,
    zigzag_numbers,
)
from rankedtrees.errors import NullEventError, SizeOutOfRangeError
from rankedtrees.trees import cherries_and_pitchforks, coalescent_probability, enumerate_increasing_trees

F = Fraction

# A000111, E_0..E_14
ZIGZAG = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765, 22368256, 199360981]


def test_extend_counts_examples():
    assert extend_counts(base_table()) == JointCountTable(2, {(1, 1): 1})
    assert dict(joint_counts(3).counts) == {(1, 1): 1, (2, 0): 1}
    assert dict(joint_counts(5).counts) == {(1, 1): 1, (2, 0): 1, (2, 1): 7, (2, 2): 3, (3, 0): 4}


def test_joint_distribution_examples():
    assert joint_distribution(1) == {(1, 0): 1}
    assert joint_distribution(3) == {(1, 1): F(2, 3), (2, 0): F(1, 3)}
    assert joint_distribution(5)[2, 2] == F(1, 5)


def test_cherry_distribution_examples():
    assert cherry_distribution(2) == {1: 1}
    assert cherry_distribution(4) == {1: F(2, 3), 2: F(1, 3)}
    assert cherry_distribution(6) == {1: F(2, 15), 2: F(11, 15), 3: F(2, 15)}


def test_pitchfork_distribution_examples():
    assert pitchfork_distribution(1) == {0: 1}
    assert pitchfork_distribution(2) == {1: 1}
    assert pitchfork_distribution(5) == {0: F(1, 5), 1: F(3, 5), 2: F(1, 5)}


def test_conditional_examples():
    assert conditional_pitchfork_distribution(5, 2) == {0: F(1, 11), 1: F(7, 11), 2: F(3, 11)}
    assert conditional_pitchfork_distribution(5, 3) == {0: 1}
    assert conditional_pitchfork_distribution(1, 1) == {0: 1}
    with pytest.raises(NullEventError):
        conditional_pitchfork_distribution(5, 4)
    with pytest.raises(NullEventError):
        conditional_pitchfork_distribution(5, 0)


def test_conditional_means_m5():
    assert conditional_pitchfork_means(5) == {1: 1, 2: F(13, 11), 3: 0}


@pytest.mark.parametrize("n, p", sorted(ref.IDENTITY.items()))
def test_identity_probability(n, p):
    assert identity_probability(n) == p


def test_euler_numbers():
    assert euler_numbers(8) == [1, 1, 1, 2, 5, 16, 61, 272]
    assert euler_numbers(6)[-1] == 16
    assert euler_numbers(1) == [1]
    assert euler_numbers(15) == ZIGZAG


def test_zigzag_numbers_independent():
    assert zigzag_numbers(15) == ZIGZAG


def test_moment_examples():
    assert expected_cherries(9) == 3 and variance_cherries(9) == F(2, 5)
    assert expected_cherries(2) == 1 and variance_cherries(2) == 0
    assert expected_cherries(4) == F(4, 3) and variance_cherries(4) == F(2, 9)
    assert variance_cherries(4) != F(2 * 4, 45)
    assert expected_pitchforks(2) == 1
    assert expected_pitchforks(5) == 1
    assert expected_pitchforks(11) == 2


def test_moment_identities_to_200():
    rec = pitchfork_mean_recursion(200)
    for n in range(3, 201):
        assert expected_cherries(n) == F(n, 3)
        if n >= 7:
            assert variance_cherries(n) == F(2 * n, 45)
    for m in range(2, 201):
        assert expected_pitchforks(m) == rec[m]
        if m >= 3:
            assert rec[m] == F(m + 1, 6)


def test_closed_forms_at_small_sizes():
    # exact values: 2n/45 fails at n = 3, 4 but already holds at n = 5, 6
    assert [variance_cherries(n) for n in range(3, 7)] == [0, F(2, 9), F(2, 9), F(4, 15)]
    assert [variance_cherries(n) == F(2 * n, 45) for n in range(3, 7)] == [False, False, True, True]
    assert expected_pitchforks(2) != F(3, 6)


@pytest.mark.parametrize("m", range(1, 11))
def test_dp_matches_brute_force(m):
    hist = Counter(cherries_and_pitchforks(t) for t in enumerate_increasing_trees(m))
    assert dict(hist) == dict(joint_counts(m).counts)


@pytest.mark.parametrize("n", range(2, 10))
def test_identity_probability_matches_brute_force(n):
    brute = sum(coalescent_probability(t) ** 2 for t in enumerate_increasing_trees(n - 1))
    assert identity_probability(n) == brute


def test_euler_consistency_to_200():
    zig = zigzag_numbers(201)
    for m in range(1, 201):
        assert joint_counts(m).total() == zig[m]


@given(st.integers(1, 200))
@settings(max_examples=40, deadline=None)
def test_table_properties(m):
    table = joint_counts(m)
    for o, r in table.counts:
        assert 1 <= o <= (m + 1) // 2
        assert 0 <= r <= min(o, m - 2 * o + 1)
    assert table.cherry_marginal() == cherry_counts(m)
    joint = joint_distribution(m)
    cherries = cherry_distribution(m + 1)
    pitchforks = pitchfork_distribution(m)
    o_marg, r_marg = Counter(), Counter()
    for (o, r), p in joint.items():
        o_marg[o] += p
        r_marg[r] += p
    assert dict(o_marg) == dict(cherries)
    assert dict(r_marg) == dict(pitchforks)
    for o, po in cherries.items():
        for r, pr in conditional_pitchfork_distribution(m, o).items():
            assert joint[o, r] == pr * po


def test_distribution_table_rejects_bad_input():
    with pytest.raises(ValueError):
        DistributionTable({0: F(1, 2)})
    with pytest.raises(ValueError):
        DistributionTable({0: F(3, 2), 1: F(-1, 2)})
    d = DistributionTable({0: F(1, 4), 2: F(3, 4)})
    assert d.mean() == F(3, 2) and d.variance() == F(3, 4)


@pytest.mark.parametrize(
    "call",
    [
        lambda: joint_counts(0),
        lambda: joint_counts(2001),
        lambda: cherry_distribution(1),
        lambda: pitchfork_distribution(0),
        lambda: identity_probability(1),
        lambda: expected_cherries(1),
        lambda: expected_pitchforks(0),
        lambda: pitchfork_mean_recursion(1),
    ],
)
def test_size_errors(call):
    with pytest.raises(SizeOutOfRangeError):
        call()


def test_cap_override():
    assert joint_counts(5, max_size=5).total() == 16
    with pytest.raises(SizeOutOfRangeError):
        joint_counts(6, max_size=5)
