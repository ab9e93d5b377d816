"""
0-1-2-increasing trees: representation, enumeration and per-tree statistics.

A ranked tree with ``n`` leaves is stored as the increasing tree of size
``m = n - 1`` obtained by deleting its leaves. Node labels ``1..m`` are the
ranks of the internal nodes (1 is the root, the most recent common
ancestor), so a tree is fully described by its parent array and two trees
are equal exactly when their parent arrays are.

Outdegree vocabulary (in the increasing tree):

* outdegree 0 -- a cherry of the ranked tree (both children are leaves)
* outdegree 1 -- an internal node with exactly one leaf child
* outdegree 2 -- an internal node with no leaf children

A pitchfork is an outdegree-1 node whose only child has outdegree 0.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, NamedTuple, Sequence

from .errors import InvalidTreeError, MalformedMergeSequenceError, SizeOutOfRangeError

__all__ = [
    "MAX_ENUMERATION_SIZE",
    "IncreasingTree",
    "OutdegreeProfile",
    "enumerate_increasing_trees",
    "outdegree_profile",
    "count_pitchforks",
    "cherries_and_pitchforks",
    "coalescent_probability",
    "canonical_code",
    "tree_from_merge_sequence",
    "format_tree_line",
    "parse_tree_line",
]

#: Largest size accepted by :func:`enumerate_increasing_trees`. There are
#: 2702765 trees at m=12 and the count grows roughly by a factor 2m/pi per
#: step, so anything beyond this takes minutes in pure Python.
MAX_ENUMERATION_SIZE = 12

ROOT_SENTINEL = 0


@dataclass(frozen=True)
class IncreasingTree:
    """An increasing tree given by its parent array.

    ``parent[i]`` is the parent label of node ``i + 1``; ``parent[0]`` is the
    root sentinel ``0``. Every parent label is smaller than its child's label
    and no node has more than two children.
    """

    parent: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(self.parent)
        object.__setattr__(self, "parent", parent)
        if not parent:
            raise InvalidTreeError("an increasing tree needs at least one node")
        if parent[0] != ROOT_SENTINEL:
            raise InvalidTreeError("node 1 must be the root (parent sentinel 0)")
        degree = [0] * (len(parent) + 1)
        for label in range(2, len(parent) + 1):
            p = parent[label - 1]
            if not 1 <= p < label:
                raise InvalidTreeError(
                    f"node {label} has parent {p}; parents must carry smaller labels"
                )
            degree[p] += 1
            if degree[p] > 2:
                raise InvalidTreeError(f"node {p} has more than two children")

    @classmethod
    def _trusted(cls, parent: tuple[int, ...]) -> IncreasingTree:
        # Skips validation; only for parent arrays built by this module.
        tree = object.__new__(cls)
        object.__setattr__(tree, "parent", parent)
        return tree

    @property
    def size(self) -> int:
        return len(self.parent)

    @property
    def leaves(self) -> int:
        """Number of leaves of the corresponding ranked tree."""
        return len(self.parent) + 1

    def outdegrees(self) -> list[int]:
        """Outdegree of every node, indexed by label (index 0 unused)."""
        degree = [0] * (len(self.parent) + 1)
        for p in self.parent[1:]:
            degree[p] += 1
        return degree

    def children(self, label: int) -> list[int]:
        return [c for c in range(label + 1, len(self.parent) + 1) if self.parent[c - 1] == label]


class OutdegreeProfile(NamedTuple):
    o: int
    p: int
    q: int


def _check_size(m: int, cap: int = MAX_ENUMERATION_SIZE) -> None:
    if not isinstance(m, int) or m < 1 or m > cap:
        raise SizeOutOfRangeError(f"m must satisfy 1 <= m <= {cap}, got {m!r}")


def enumerate_increasing_trees(m: int) -> Iterator[IncreasingTree]:
    """Yield every increasing tree with ``m`` nodes exactly once.

    Trees are produced depth-first along the generating tree in which node
    ``k + 1`` is attached, in turn, to each node of outdegree < 2 of a tree
    of size ``k`` (lowest label first). The order is therefore fixed.
    """
    _check_size(m)
    parent = [ROOT_SENTINEL]
    degree = [0] * (m + 1)

    def grow(size):
        if size == m:
            yield IncreasingTree._trusted(tuple(parent))
            return
        for p in range(1, size + 1):
            if degree[p] < 2:
                degree[p] += 1
                parent.append(p)
                yield from grow(size + 1)
                parent.pop()
                degree[p] -= 1

    return grow(1)


def outdegree_profile(t: IncreasingTree) -> OutdegreeProfile:
    counts = [0, 0, 0]
    for d in t.outdegrees()[1:]:
        counts[d] += 1
    return OutdegreeProfile(*counts)


def count_pitchforks(t: IncreasingTree) -> int:
    """Number of outdegree-1 nodes whose single child is a leaf."""
    return cherries_and_pitchforks(t)[1]


def cherries_and_pitchforks(t: IncreasingTree) -> tuple[int, int]:
    """Return ``(o, r)`` in a single pass over the parent array."""
    parent = t.parent
    degree = [0] * (len(parent) + 1)
    for p in parent[1:]:
        degree[p] += 1
    o = r = 0
    for label in range(1, len(parent) + 1):
        if degree[label] == 0:
            o += 1
            p = parent[label - 1]
            if p and degree[p] == 1:
                r += 1
    return o, r


def coalescent_probability(t: IncreasingTree) -> Fraction:
    """Probability that the coalescent on ``m + 1`` leaves produces ``t``.

    Equals ``2**(m - o) / m!`` with ``o`` the number of cherries.
    """
    m = t.size
    o = outdegree_profile(t).o
    return Fraction(2 ** (m - o), factorial(m))


CanonicalCode = bytes


def canonical_code(t: IncreasingTree) -> CanonicalCode:
    """Serialize the parent array as little-endian uint32 words.

    Labels are intrinsic to increasing trees, so this is already canonical.
    """
    return struct.pack(f"<{t.size}I", *t.parent)


def tree_from_merge_sequence(
    merges: Sequence[tuple[int, int]], n: int | None = None
) -> IncreasingTree:
    """Build the increasing tree recorded by a sequence of coalescences.

    Lineages are identified by integers: the ``n`` initial leaves are
    ``0..n-1`` and the lineage created by the k-th merge (k = 1, 2, ...) is
    ``n + k - 1``. The k-th merge becomes the internal node of rank ``n - k``,
    so the final merge is the root. Leaf identities are discarded.

    ``n`` defaults to ``len(merges) + 1``.
    """
    if n is None:
        n = len(merges) + 1
    if n < 2 or len(merges) != n - 1:
        raise MalformedMergeSequenceError(
            f"{n} lineages need exactly {n - 1} merges (n >= 2), got {len(merges)}"
        )
    m = n - 1
    active = set(range(n))
    node_of: dict[int, int] = {}
    parent = [ROOT_SENTINEL] * (m + 1)
    for k, pair in enumerate(merges, start=1):
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise MalformedMergeSequenceError(f"merge {k} is not a pair: {pair!r}") from None
        if a == b:
            raise MalformedMergeSequenceError(f"merge {k} joins lineage {a} with itself")
        for lineage in (a, b):
            if lineage not in active:
                raise MalformedMergeSequenceError(
                    f"merge {k} references inactive lineage {lineage!r}"
                )
        label = n - k
        for lineage in (a, b):
            active.remove(lineage)
            if lineage >= n:
                parent[node_of.pop(lineage)] = label
        new = n + k - 1
        node_of[new] = label
        active.add(new)
    return IncreasingTree._trusted(tuple(parent[1:]))


def format_tree_line(t: IncreasingTree) -> str:
    return ",".join(map(str, t.parent))


def parse_tree_line(line: str) -> IncreasingTree:
    return IncreasingTree(tuple(int(x) for x in line.strip().split(",")))
