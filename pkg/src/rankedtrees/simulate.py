"""
Seeded Monte Carlo sampling of ranked trees by the coalescent process.

Each replicate starts from ``n`` lineages and repeatedly merges a uniformly
chosen unordered pair of the active lineages. Randomness comes from numpy's
counter-based Philox generator; worker ``i`` of ``W`` draws from the ``i``-th
child of ``SeedSequence(seed)``, so results depend only on
``(seed, samples, workers)``.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy import stats

from .errors import BudgetExceededError, RankedTreeError
from .trees import (
    IncreasingTree,
    canonical_code,
    cherries_and_pitchforks,
    tree_from_merge_sequence,
)

__all__ = [
    "SIMULATION_BUDGET",
    "SimConfig",
    "EmpiricalSummary",
    "make_rng",
    "sample_ranked_tree",
    "sample_merge_sequence",
    "estimate_statistics",
    "estimate_identity_probability",
    "chi_square_pvalue",
]

#: Upper bound on ``n * samples`` (identity runs count each pair twice).
SIMULATION_BUDGET = 500_000_000

_BATCH = 4096


@dataclass(frozen=True)
class SimConfig:
    n: int
    samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise RankedTreeError(f"n must be >= 2, got {self.n}")
        if self.samples < 1:
            raise RankedTreeError(f"samples must be >= 1, got {self.samples}")
        if self.workers < 1:
            raise RankedTreeError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise RankedTreeError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass
class EmpiricalSummary:
    config: SimConfig
    mode: str
    o_histogram: dict[int, int]
    r_histogram: dict[int, int]
    o_mean: float
    o_variance: float
    o_mean_se: float
    o_variance_se: float
    r_mean: float
    r_variance: float
    r_mean_se: float
    r_variance_se: float
    identity_trials: int = 0
    identity_matches: int = 0
    identity_fraction: float | None = None
    identity_se: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["o_histogram"] = {str(k): v for k, v in self.o_histogram.items()}
        d["r_histogram"] = {str(k): v for k, v in self.r_histogram.items()}
        return d


def make_rng(seed: int, worker: int = 0, workers: int = 1) -> np.random.Generator:
    child = np.random.SeedSequence(seed).spawn(workers)[worker]
    return np.random.Generator(np.random.Philox(child))


def _pair_table(n: int) -> list[tuple[int, int]]:
    # Pairs (i, j), i < j, ordered so the first C(k, 2) entries are exactly
    # the pairs among positions 0..k-1.
    return [(i, j) for j in range(1, n) for i in range(j)]


def _highs(n: int) -> np.ndarray:
    return np.array([k * (k - 1) // 2 for k in range(n, 1, -1)], dtype=np.int64)


def _merges_from_indices(n: int, indices, pairs) -> list[tuple[int, int]]:
    active = list(range(n))
    merges = []
    new = n
    for q in indices:
        i, j = pairs[q]
        a, b = active[i], active[j]
        merges.append((a, b))
        active[i] = new
        active[j] = active[-1]
        active.pop()
        new += 1
    return merges


def sample_merge_sequence(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Draw one coalescent merge sequence on lineages ``0..n-1``."""
    if n < 2:
        raise RankedTreeError(f"n must be >= 2, got {n}")
    indices = rng.integers(0, _highs(n)).tolist()
    return _merges_from_indices(n, indices, _pair_table(n))


def sample_ranked_tree(n: int, rng: np.random.Generator) -> IncreasingTree:
    """Draw a ranked tree with ``n`` leaves from the coalescent."""
    return tree_from_merge_sequence(sample_merge_sequence(n, rng), n)


def _tree_stream(n: int, count: int, rng: np.random.Generator):
    pairs = _pair_table(n)
    highs = _highs(n)
    done = 0
    while done < count:
        batch = min(_BATCH, count - done)
        for row in rng.integers(0, highs, size=(batch, n - 1)).tolist():
            yield tree_from_merge_sequence(_merges_from_indices(n, row, pairs), n)
        done += batch


def _worker(args):
    n, count, seed, worker, workers, mode = args
    rng = make_rng(seed, worker, workers)
    o_hist: Counter = Counter()
    r_hist: Counter = Counter()
    matches = 0
    if mode == "stats":
        for t in _tree_stream(n, count, rng):
            o, r = cherries_and_pitchforks(t)
            o_hist[o] += 1
            r_hist[r] += 1
    else:
        stream = _tree_stream(n, 2 * count, rng)
        for t1 in stream:
            t2 = next(stream)
            o, r = cherries_and_pitchforks(t1)
            o_hist[o] += 1
            r_hist[r] += 1
            matches += canonical_code(t1) == canonical_code(t2)
    return o_hist, r_hist, matches


def _chunks(samples: int, workers: int) -> list[int]:
    base, extra = divmod(samples, workers)
    return [base + (i < extra) for i in range(workers)]


def _run(config: SimConfig, mode: str):
    cost = config.n * config.samples * (2 if mode == "identity" else 1)
    if cost > SIMULATION_BUDGET:
        raise BudgetExceededError(
            f"n * samples = {cost} exceeds the simulation budget {SIMULATION_BUDGET}"
        )
    tasks = [
        (config.n, c, config.seed, i, config.workers, mode)
        for i, c in enumerate(_chunks(config.samples, config.workers))
    ]
    if config.workers == 1:
        results = [_worker(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_worker, tasks))
    o_hist: Counter = Counter()
    r_hist: Counter = Counter()
    matches = 0
    for oh, rh, mt in results:
        o_hist.update(oh)
        r_hist.update(rh)
        matches += mt
    return dict(sorted(o_hist.items())), dict(sorted(r_hist.items())), matches


def _moments(hist: Mapping[int, int]) -> tuple[float, float, float, float]:
    """Mean, unbiased variance, and standard errors of both."""
    total = sum(hist.values())
    mean = Fraction(sum(k * c for k, c in hist.items()), total)
    m2 = sum(((k - mean) ** 2 * c for k, c in hist.items()), Fraction(0)) / total
    m4 = sum(((k - mean) ** 4 * c for k, c in hist.items()), Fraction(0)) / total
    var = m2 * total / (total - 1) if total > 1 else Fraction(0)
    mean_se = math.sqrt(var / total)
    var_se = math.sqrt(max(m4 - m2 * m2, 0) / total)
    return float(mean), float(var), mean_se, var_se


def _summary(config, mode, o_hist, r_hist, matches) -> EmpiricalSummary:
    o = _moments(o_hist)
    r = _moments(r_hist)
    s = EmpiricalSummary(config, mode, o_hist, r_hist, *o, *r)
    if mode == "identity":
        frac = matches / config.samples
        s.identity_trials = config.samples
        s.identity_matches = matches
        s.identity_fraction = frac
        s.identity_se = math.sqrt(frac * (1 - frac) / config.samples)
    return s


def estimate_statistics(config: SimConfig) -> EmpiricalSummary:
    """Histogram and moments of cherries and pitchforks over ``config.samples`` trees."""
    return _summary(config, "stats", *_run(config, "stats"))


def estimate_identity_probability(config: SimConfig) -> EmpiricalSummary:
    """Fraction of ``config.samples`` independent tree pairs that coincide.

    The cherry/pitchfork histograms tally the first tree of each pair.
    """
    return _summary(config, "identity", *_run(config, "identity"))


def chi_square_pvalue(observed: Mapping[int, int], expected: Mapping[int, Fraction]) -> float:
    """Goodness-of-fit p-value of a histogram against exact probabilities."""
    if any(k not in expected or expected[k] == 0 for k in observed):
        return 0.0
    keys = [k for k in expected if expected[k] > 0]
    total = sum(observed.values())
    f_obs = [observed.get(k, 0) for k in keys]
    f_exp = [float(expected[k]) * total for k in keys]
    return float(stats.chisquare(f_obs, f_exp).pvalue)
