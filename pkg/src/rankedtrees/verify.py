"""Self-verification suite behind ``rankedtrees verify``."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import reference as ref
from .closed_forms import evaluate_closed_forms, f_series_coefficients, f_series_value, y_series_coefficients
from .distributions import (
    cherry_counts,
    cherry_distribution,
    conditional_pitchfork_distribution,
    euler_numbers,
    expected_cherries,
    expected_pitchforks,
    identity_probability,
    joint_counts,
    joint_distribution,
    pitchfork_distribution,
    pitchfork_mean_recursion,
    variance_cherries,
    zigzag_numbers,
)
from .trees import (
    canonical_code,
    cherries_and_pitchforks,
    coalescent_probability,
    enumerate_increasing_trees,
    outdegree_profile,
    tree_from_merge_sequence,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def all_merge_sequences(n: int):
    """Every sequence of pair choices of the coalescent on ``n`` lineages."""

    def rec(active, nxt, prefix):
        if len(active) == 1:
            yield list(prefix)
            return
        for a, b in itertools.combinations(active, 2):
            rest = [x for x in active if x not in (a, b)] + [nxt]
            prefix.append((a, b))
            yield from rec(rest, nxt + 1, prefix)
            prefix.pop()

    yield from rec(list(range(n)), n, [])


def _check_euler():
    got = euler_numbers(8)
    return got == ref.EULER_PREFIX, ",".join(map(str, got))


def _check_identity():
    got = {n: identity_probability(n) for n in ref.IDENTITY}
    return got == ref.IDENTITY, ", ".join(f"p_{n}={v}" for n, v in got.items())


def _check_identity_series():
    coeffs = y_series_coefficients(Fraction(1, 4), 5)[1:]
    return coeffs == ref.Y_QUARTER, " ".join(map(str, coeffs))


def _check_f_terms():
    coeffs = f_series_coefficients(8)
    for n, term in ref.F_TERMS.items():
        got = {o: c for o, c in enumerate(coeffs[n]) if c}
        if got != term:
            return False, f"z^{n}: {got} != {term}"
    return True, "z^2..z^8"


def _check_y_polynomials():
    for m, poly in ref.Y_POLYNOMIALS.items():
        want = {k: c * factorial(m) for k, c in poly.items()}
        got = dict(joint_counts(m).counts)
        if got != want:
            return False, f"m={m}: {got} != {want}"
    return True, "Y_1..Y_5"


def _check_moments(max_closed):
    for n in range(2, max_closed + 1):
        if n >= 3 and expected_cherries(n) != Fraction(n, 3):
            return False, f"E_o({n}) = {expected_cherries(n)}"
        if n >= 7 and variance_cherries(n) != Fraction(2 * n, 45):
            return False, f"Var_o({n}) = {variance_cherries(n)}"
    rec = pitchfork_mean_recursion(max_closed)
    for m in range(2, max_closed + 1):
        e = expected_pitchforks(m)
        if e != rec[m]:
            return False, f"E_r({m}) = {e}, recursion gives {rec[m]}"
        if m >= 3 and e != Fraction(m + 1, 6):
            return False, f"E_r({m}) = {e} != {Fraction(m + 1, 6)}"
    return True, f"n, m <= {max_closed}"


def _check_enumeration(max_m):
    for m in range(1, max_m + 1):
        hist: Counter = Counter()
        total = Fraction(0)
        codes = set()
        for t in enumerate_increasing_trees(m):
            prof = outdegree_profile(t)
            o, r = cherries_and_pitchforks(t)
            if prof.o + prof.p + prof.q != m or prof.o != prof.q + 1:
                return False, f"profile invariant broken at m={m}: {t.parent}"
            if not 0 <= r <= min(o, m - 2 * o + 1):
                return False, f"pitchfork bound broken at m={m}: {t.parent}"
            hist[o, r] += 1
            total += coalescent_probability(t)
            codes.add(canonical_code(t))
        if dict(hist) != dict(joint_counts(m).counts):
            return False, f"histogram mismatch at m={m}"
        if total != 1:
            return False, f"probabilities sum to {total} at m={m}"
        if len(codes) != zigzag_numbers(m + 1)[m]:
            return False, f"{len(codes)} distinct codes at m={m}"
    return True, f"m <= {max_m}"


def _check_identity_oracle(max_n):
    for n in range(2, max_n + 1):
        brute = sum((coalescent_probability(t) ** 2 for t in enumerate_increasing_trees(n - 1)), Fraction(0))
        if brute != identity_probability(n):
            return False, f"n={n}: brute force {brute} != {identity_probability(n)}"
    return True, f"n <= {max_n}"


def _check_size6():
    hist = Counter(cherries_and_pitchforks(t) for t in enumerate_increasing_trees(5))
    two = {r: c for (o, r), c in hist.items() if o == 2}
    ok = (
        sum(hist.values()) == ref.SIZE6_TOTAL
        and sum(two.values()) == ref.SIZE6_TWO_CHERRIES
        and two == {0: 1, 1: 7, 2: 3}
        and cherry_distribution(6)[2] == ref.SIZE6_TWO_CHERRY_PROBABILITY
        and conditional_pitchfork_distribution(5, 2) == {0: Fraction(1, 11), 1: Fraction(7, 11), 2: Fraction(3, 11)}
    )
    return ok, f"two-cherry trees by pitchforks {dict(sorted(two.items()))}"


def _check_closed_forms():
    worst = 0.0
    for x, z in ((0.5, 0.1), (0.25, 0.2)):
        series = f_series_value(Fraction(x), Fraction(z), order=30)
        worst = max(worst, abs(float(series) - evaluate_closed_forms(x, z)[1]))
    return worst <= 1e-12, f"max |series - closed form| = {worst:.3g}"


def _check_euler_big(max_closed):
    euler_numbers(max_closed + 1)
    return True, f"n <= {max_closed + 1}"


def _check_tables(max_closed):
    for m in range(1, max_closed + 1):
        table = joint_counts(m)
        for o, r in table.counts:
            if not (1 <= o <= (m + 1) // 2 and 0 <= r <= min(o, m - 2 * o + 1)):
                return False, f"key {(o, r)} out of bounds at m={m}"
        if table.cherry_marginal() != cherry_counts(m):
            return False, f"cherry-only rule disagrees with the joint marginal at m={m}"
        # constructing these validates exact normalization
        joint = joint_distribution(m)
        pitchfork_distribution(m)
        cherries = cherry_distribution(m + 1)
        for o, po in cherries.items():
            cond = conditional_pitchfork_distribution(m, o)
            for r, pr in cond.items():
                if joint[o, r] != pr * po:
                    return False, f"P(o,r) != P(r|o)P(o) at m={m}, {(o, r)}"
    return True, f"m <= {max_closed}"


def _check_merge_sequences():
    for n in range(2, 6):
        seqs = list(all_merge_sequences(n))
        expected_total = 1
        for k in range(2, n + 1):
            expected_total *= comb(k, 2)
        if len(seqs) != expected_total:
            return False, f"n={n}: {len(seqs)} sequences"
        hist = Counter(canonical_code(tree_from_merge_sequence(s)) for s in seqs)
        want = {
            canonical_code(t): coalescent_probability(t) for t in enumerate_increasing_trees(n - 1)
        }
        got = {code: Fraction(c, len(seqs)) for code, c in hist.items()}
        if got != want:
            return False, f"n={n}: merge-sequence distribution differs"
    return True, "n <= 5"


def _check_simulation():
    from .simulate import SimConfig, chi_square_pvalue, estimate_identity_probability, estimate_statistics

    big = estimate_statistics(SimConfig(54, 100_000, seed=20240601))
    small = estimate_statistics(SimConfig(6, 100_000, seed=20240602))
    pair = estimate_identity_probability(SimConfig(4, 100_000, seed=20240603))
    pval = chi_square_pvalue(small.r_histogram, pitchfork_distribution(5))
    ok = (
        abs(big.o_mean - 18) <= 3 * big.o_mean_se
        and abs(big.o_variance - 2.4) <= 0.1 * 2.4
        and pval >= 1e-3
        and abs(pair.identity_fraction - 5 / 9) <= 3 * pair.identity_se
    )
    return ok, (
        f"mean(o)={big.o_mean:.4f} var(o)={big.o_variance:.4f} "
        f"chi2 p={pval:.3g} identity={pair.identity_fraction:.4f}"
    )


def run_checks(max_m: int = 10, max_closed: int = 200, simulate: bool = False) -> list[Check]:
    plan = [
        ("euler-regression", _check_euler),
        ("identity-probabilities", _check_identity),
        ("identity-series-coefficients", _check_identity_series),
        ("f-series-regression", _check_f_terms),
        ("y-polynomial-regression", _check_y_polynomials),
        ("moment-identities", lambda: _check_moments(max_closed)),
        ("enumeration-oracle", lambda: _check_enumeration(max_m)),
        ("identity-oracle", lambda: _check_identity_oracle(min(9, max_m + 1))),
        ("size6-tallies", _check_size6),
        ("closed-form-numeric", _check_closed_forms),
        ("euler-consistency", lambda: _check_euler_big(max_closed)),
        ("table-invariants", lambda: _check_tables(max_closed)),
        ("merge-sequence-oracle", _check_merge_sequences),
    ]
    if simulate:
        plan.append(("monte-carlo", _check_simulation))
    results = []
    for name, fn in plan:
        try:
            ok, detail = fn()
        except Exception as exc:  # report, never abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(Check(name, bool(ok), detail))
    return results
