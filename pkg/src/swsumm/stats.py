"""Paired Wilcoxon signed-rank test."""
from __future__ import annotations

import math
from dataclasses import dataclass

EXACT_MAX_N = 12


@dataclass(frozen=True)
class WilcoxonResult:
    n_effective: int
    w_statistic: float
    p_value: float
    significant_at_95: bool
    method: str
    degenerate: bool = False


def average_ranks(values) -> list:
    """1-based ranks of ``values``, ties sharing their mean rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for t in range(i, j + 1):
            ranks[order[t]] = (i + j + 2) / 2
        i = j + 1
    return ranks


def _exact_p(doubled_ranks, w2) -> float:
    """P(min(W+, W-) <= w) under random signs, by subset-sum counting.

    Ranks are doubled so tied (half-integer) ranks stay integral.
    """
    total = sum(doubled_ranks)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in doubled_ranks:
        for s in range(total, r - 1, -1):
            counts[s] += counts[s - r]
    # W+ = s, W- = total - s
    extreme = sum(c for s, c in enumerate(counts) if c and min(s, total - s) <= w2)
    return min(1.0, extreme / 2 ** len(doubled_ranks))


def _normal_p(ranks, w) -> float:
    # E[W+] = sum(r)/2 and Var[W+] = sum(r^2)/4; with average ranks the
    # variance already carries the tie correction
    mean = sum(ranks) / 2
    var = sum(r * r for r in ranks) / 4
    if var <= 0:
        return 1.0
    # w <= mean, so the continuity correction moves it toward the mean
    z = min(0.0, w - mean + 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(abs(z) / math.sqrt(2)))


def wilcoxon_signed_rank(pairs, zero_method: str = "wilcox", exact_max_n: int = EXACT_MAX_N,
                         method: str = "auto") -> WilcoxonResult:
    """Two-sided signed-rank test on paired scores ``(a_i, b_i)``.

    ``zero_method="wilcox"`` drops zero differences before ranking;
    ``"pratt"`` ranks them and then discards their ranks.  ``method`` is
    ``"auto"`` (exact when at most ``exact_max_n`` non-zero pairs),
    ``"exact"`` or ``"normal"``.  All-zero input is not an error: the result
    has ``p_value == 1`` and ``degenerate`` set.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one pair")
    if zero_method not in ("wilcox", "pratt"):
        raise ValueError(f"unknown zero_method {zero_method!r}")
    diffs = [a - b for a, b in pairs]
    if zero_method == "wilcox":
        diffs = [d for d in diffs if d != 0]
        ranks = average_ranks([abs(d) for d in diffs])
    else:
        all_ranks = average_ranks([abs(d) for d in diffs])
        ranks = [r for r, d in zip(all_ranks, diffs) if d != 0]
        diffs = [d for d in diffs if d != 0]

    n = len(diffs)
    if n == 0:
        return WilcoxonResult(0, 0.0, 1.0, False, "exact", degenerate=True)

    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)
    w = min(w_plus, w_minus)

    if method == "auto":
        method = "exact" if n <= exact_max_n else "normal"
    if method == "exact":
        p = _exact_p([round(2 * r) for r in ranks], round(2 * w))
    elif method == "normal":
        p = _normal_p(ranks, w)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WilcoxonResult(n, w, p, p < 0.05, method)
