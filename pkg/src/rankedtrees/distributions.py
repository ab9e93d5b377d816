"""
Exact cherry/pitchfork distributions under the coalescent.

Everything here is driven by one dynamic program on integer counts
``N_m(o, r)``: the number of increasing trees with ``m`` nodes, ``o``
outdegree-0 nodes (cherries) and ``r`` pitchforks. Adding node ``m + 1``
to a tree in state ``(o, r)`` can

* hang it under a pitchfork's leaf (``r`` ways): the old pitchfork becomes
  a two-node chain, the new leaf makes a new pitchfork, state unchanged;
* hang it under any other leaf (``o - r`` ways): ``(o, r + 1)``;
* hang it under a pitchfork's top node (``r`` ways): ``(o + 1, r - 1)``;
* hang it under any other outdegree-1 node (``m - 2o + 1 - r`` ways):
  ``(o + 1, r)``.

A tree in state ``(o, r)`` has coalescent probability ``2**(m - o) / m!``;
that weight is applied only when a probability is requested.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Hashable, Iterator

from .errors import NullEventError, SizeOutOfRangeError

__all__ = [
    "MAX_EXACT_SIZE",
    "JointCountTable",
    "DistributionTable",
    "base_table",
    "extend_counts",
    "joint_counts",
    "cherry_counts",
    "tree_weight",
    "joint_distribution",
    "cherry_distribution",
    "pitchfork_distribution",
    "conditional_pitchfork_distribution",
    "conditional_pitchfork_means",
    "identity_probability",
    "euler_numbers",
    "zigzag_numbers",
    "expected_cherries",
    "variance_cherries",
    "expected_pitchforks",
    "pitchfork_mean_recursion",
]

#: Default upper bound on m for exact tables. Pass ``max_size=`` to go
#: further; the algorithm is the same, only slower (cubic in m overall).
MAX_EXACT_SIZE = 2000


@dataclass(frozen=True)
class JointCountTable:
    """Counts ``N_m(o, r)`` of increasing trees of size ``m``."""

    m: int
    counts: Mapping[tuple[int, int], int] = field(repr=False)

    def total(self) -> int:
        return sum(self.counts.values())

    def cherry_marginal(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for (o, _), c in self.counts.items():
            out[o] += c
        return dict(sorted(out.items()))

    def items(self):
        return sorted(self.counts.items())


class DistributionTable(Mapping):
    """Finite probability distribution with exact rational values.

    Construction fails unless every value is nonnegative and the values
    sum to exactly one.
    """

    def __init__(self, probabilities: Mapping[Hashable, Fraction]):
        probs = {k: Fraction(v) for k, v in sorted(probabilities.items())}
        if any(v < 0 for v in probs.values()):
            raise ValueError("negative probability in distribution")
        # common-denominator sum: far fewer gcds than Fraction.__add__
        common = lcm(*(v.denominator for v in probs.values())) if probs else 1
        total = sum(v.numerator * (common // v.denominator) for v in probs.values())
        if total != common:
            raise ValueError(f"probabilities sum to {Fraction(total, common)}, not 1")
        self._probs = probs

    def __getitem__(self, key):
        return self._probs[key]

    def __iter__(self) -> Iterator:
        return iter(self._probs)

    def __len__(self) -> int:
        return len(self._probs)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v}" for k, v in self._probs.items())
        return f"DistributionTable({{{body}}})"

    def moment(self, k: int) -> Fraction:
        common = lcm(*(v.denominator for v in self._probs.values()))
        num = sum(x**k * v.numerator * (common // v.denominator) for x, v in self._probs.items())
        return Fraction(num, common)

    def mean(self) -> Fraction:
        return self.moment(1)

    def variance(self) -> Fraction:
        mu = self.mean()
        return self.moment(2) - mu * mu


def base_table() -> JointCountTable:
    return JointCountTable(1, {(1, 0): 1})


def extend_counts(table: JointCountTable) -> JointCountTable:
    """Apply one step of the cherry/pitchfork succession rule."""
    m = table.m
    new: dict[tuple[int, int], int] = defaultdict(int)
    for (o, r), n in table.counts.items():
        if r:
            new[o, r] += n * r
            new[o + 1, r - 1] += n * r
        if o > r:
            new[o, r + 1] += n * (o - r)
        free = m - 2 * o + 1 - r
        if free > 0:
            new[o + 1, r] += n * free
    return JointCountTable(m + 1, dict(new))


_tables: list[JointCountTable] = []


def _check_m(m, max_size: int = MAX_EXACT_SIZE, *, name: str = "m", low: int = 1) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < low:
        raise SizeOutOfRangeError(f"{name} must be an integer >= {low}, got {m!r}")
    if m > max_size:
        raise SizeOutOfRangeError(
            f"{name}={m} exceeds the exact-size cap {max_size}; pass max_size to raise it"
        )


def joint_counts(m: int, *, max_size: int = MAX_EXACT_SIZE) -> JointCountTable:
    """Return ``N_m``; tables are memoized so repeated calls are cheap."""
    _check_m(m, max_size)
    if not _tables:
        _tables.append(base_table())
    while len(_tables) < m:
        _tables.append(extend_counts(_tables[-1]))
    return _tables[m - 1]


@lru_cache(maxsize=None)
def _cherry_rule_counts(m: int) -> tuple[int, ...]:
    # Index o -> number of trees; uses the two-parameter rule (o, m) only.
    if m == 1:
        return (0, 1)
    prev = _cherry_rule_counts(m - 1)
    k = m - 1
    out = [0] * ((m + 1) // 2 + 1)
    for o, n in enumerate(prev):
        if n:
            out[o] += n * o
            if k - 2 * o + 1 > 0:
                out[o + 1] += n * (k - 2 * o + 1)
    return tuple(out)


def cherry_counts(m: int, *, max_size: int = MAX_EXACT_SIZE) -> dict[int, int]:
    """Counts of increasing trees of size ``m`` by cherries alone.

    Computed from the cherry-only succession rule, independently of the
    joint table; used to cross-check the joint table's marginal.
    """
    _check_m(m, max_size)
    for k in range(1, m):  # warm the cache bottom-up to avoid deep recursion
        _cherry_rule_counts(k)
    return {o: n for o, n in enumerate(_cherry_rule_counts(m)) if n}


def tree_weight(m: int, o: int) -> Fraction:
    """Coalescent probability of any single tree of size ``m`` with ``o`` cherries."""
    return Fraction(2 ** (m - o), factorial(m))


def _weighted(m: int, project, max_size: int) -> DistributionTable:
    # Sum integer weights N * 2**(m - o) per outcome, divide by m! once.
    weights: dict = defaultdict(int)
    for (o, r), n in joint_counts(m, max_size=max_size).counts.items():
        weights[project(o, r)] += n << (m - o)
    mf = factorial(m)
    return DistributionTable({k: Fraction(w, mf) for k, w in weights.items()})


def joint_distribution(m: int, *, max_size: int = MAX_EXACT_SIZE) -> DistributionTable:
    return _weighted(m, lambda o, r: (o, r), max_size)


def cherry_distribution(n: int, *, max_size: int = MAX_EXACT_SIZE) -> DistributionTable:
    """Distribution of the number of cherries of a coalescent tree with ``n`` leaves."""
    _check_m(n, max_size + 1, name="n", low=2)
    return _weighted(n - 1, lambda o, r: o, max_size)


def pitchfork_distribution(m: int, *, max_size: int = MAX_EXACT_SIZE) -> DistributionTable:
    """Distribution of the number of pitchforks of an increasing tree of size ``m``."""
    return _weighted(m, lambda o, r: r, max_size)


def conditional_pitchfork_distribution(
    m: int, o_given: int, *, max_size: int = MAX_EXACT_SIZE
) -> DistributionTable:
    """Pitchfork distribution given exactly ``o_given`` cherries.

    All trees with the same number of cherries are equally likely, so this
    is a ratio of counts.
    """
    table = joint_counts(m, max_size=max_size)
    row = {r: n for (o, r), n in table.counts.items() if o == o_given}
    total = sum(row.values())
    if not total:
        raise NullEventError(f"no tree of size {m} has {o_given} cherries")
    return DistributionTable({r: Fraction(n, total) for r, n in row.items()})


def conditional_pitchfork_means(m: int, *, max_size: int = MAX_EXACT_SIZE) -> dict[int, Fraction]:
    """Mean number of pitchforks given each feasible number of cherries."""
    table = joint_counts(m, max_size=max_size)
    return {
        o: conditional_pitchfork_distribution(m, o, max_size=max_size).mean()
        for o in table.cherry_marginal()
    }


def identity_probability(n: int, *, max_size: int = MAX_EXACT_SIZE) -> Fraction:
    """Probability that two independent coalescent trees with ``n`` leaves coincide."""
    _check_m(n, max_size + 1, name="n", low=2)
    m = n - 1
    return sum(
        (c * tree_weight(m, o) ** 2 for o, c in joint_counts(m, max_size=max_size).cherry_marginal().items()),
        Fraction(0),
    )


def zigzag_numbers(count: int) -> list[int]:
    """First ``count`` zigzag (Euler up/down) numbers E_0, E_1, ...

    Seidel's boustrophedon triangle; shares nothing with the tree DP.
    """
    out = []
    row = [1]
    for k in range(count):
        out.append(row[-1])
        nxt = [0]
        for j in range(k + 1):
            nxt.append(nxt[-1] + row[k - j])
        row = nxt
    return out


def euler_numbers(k_max: int, *, max_size: int = MAX_EXACT_SIZE) -> list[int]:
    """Number of ranked trees with ``n`` leaves for ``n = 1..k_max``.

    Taken from the joint table totals and checked against the boustrophedon
    triangle; a mismatch raises ``RuntimeError``.
    """
    _check_m(k_max, max_size + 1, name="k_max")
    seq = [1] + [joint_counts(m, max_size=max_size).total() for m in range(1, k_max)]
    zig = zigzag_numbers(k_max)
    if seq != zig:
        bad = next(i for i, (a, b) in enumerate(zip(seq, zig)) if a != b)
        raise RuntimeError(f"tree count for n={bad + 1} disagrees with zigzag number E_{bad}")
    return seq


def expected_cherries(n: int, *, max_size: int = MAX_EXACT_SIZE) -> Fraction:
    return cherry_distribution(n, max_size=max_size).mean()


def variance_cherries(n: int, *, max_size: int = MAX_EXACT_SIZE) -> Fraction:
    return cherry_distribution(n, max_size=max_size).variance()


def expected_pitchforks(m: int, *, max_size: int = MAX_EXACT_SIZE) -> Fraction:
    return pitchfork_distribution(m, max_size=max_size).mean()


def pitchfork_mean_recursion(m_max: int) -> dict[int, Fraction]:
    """Mean pitchfork counts for ``m = 2..m_max`` from the first-order recursion

    ``E(2) = 1`` and ``(m + 1) E(m + 1) = (m - 2) E(m) + 2 (m + 1) / 3``.
    """
    if m_max < 2:
        raise SizeOutOfRangeError(f"recursion starts at m=2, got m_max={m_max}")
    means = {2: Fraction(1)}
    for m in range(2, m_max):
        means[m + 1] = ((m - 2) * means[m] + Fraction(2 * (m + 1), 3)) / (m + 1)
    return means
