"""Brute-force reference implementations the test suite trusts.

Every oracle here favors obviousness over speed and shares no code with
the package under test: plain-python distance sums, explicit component
merging, exhaustive matching enumeration, textbook entropy formulas, and
literal pair counting.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations, permutations
from typing import Hashable, Sequence


def euclidean(a: Sequence[float], b: Sequence[float]) -> float:
    total = 0.0
    for x, y in zip(a, b):
        d = x - y
        total += d * d
    return math.sqrt(total)


def single_linkage_merge_heights(points: Sequence[Sequence[float]]) -> list[float]:
    """Merge heights of single-linkage clustering, ascending.  O(m^3).

    Maintains explicit components and repeatedly merges the closest pair
    by minimum cross distance; a cloud of m points yields m - 1 heights.
    """
    m = len(points)
    dist = [[euclidean(points[i], points[j]) for j in range(m)] for i in range(m)]
    components: list[set[int]] = [{i} for i in range(m)]
    heights: list[float] = []
    while len(components) > 1:
        best = (math.inf, 0, 1)
        for x in range(len(components)):
            for y in range(x + 1, len(components)):
                d = min(dist[i][j] for i in components[x] for j in components[y])
                if d < best[0]:
                    best = (d, x, y)
        d, x, y = best
        heights.append(d)
        merged = components[x] | components[y]
        components = [c for idx, c in enumerate(components) if idx not in (x, y)]
        components.append(merged)
    return sorted(heights)


def _linf(p: Sequence[float], q: Sequence[float]) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _to_diagonal(p: Sequence[float]) -> float:
    return (p[1] - p[0]) / 2.0


def wasserstein_by_enumeration(
    bars1: Sequence[Sequence[float]], bars2: Sequence[Sequence[float]]
) -> float:
    """Exact q=1 matching cost by enumerating every partial bijection.

    Each bar either matches a distinct bar on the other side (sup-norm
    cost) or its own diagonal projection.  Exponential; keep inputs tiny.
    """
    m, n = len(bars1), len(bars2)
    best = math.inf
    for size in range(min(m, n) + 1):
        for left in combinations(range(m), size):
            for right in permutations(range(n), size):
                cost = sum(_linf(bars1[i], bars2[j]) for i, j in zip(left, right))
                cost += sum(_to_diagonal(bars1[i]) for i in range(m) if i not in left)
                cost += sum(_to_diagonal(bars2[j]) for j in range(n) if j not in right)
                best = min(best, cost)
    return best


def entropy_v_measure(
    gold: Sequence[Hashable], predicted: Sequence[Hashable]
) -> tuple[float, float, float]:
    """(homogeneity, completeness, V) via the joint-entropy identity
    H(A|B) = H(A,B) - H(B), a different route than conditional sums."""
    total = len(gold)

    def entropy(counts: Counter) -> float:
        return -sum((c / total) * math.log(c / total) for c in counts.values())

    h_gold = entropy(Counter(gold))
    h_pred = entropy(Counter(predicted))
    h_joint = entropy(Counter(zip(gold, predicted)))
    h_gold_given_pred = h_joint - h_pred
    h_pred_given_gold = h_joint - h_gold
    h = 1.0 if h_gold == 0.0 else 1.0 - h_gold_given_pred / h_gold
    c = 1.0 if h_pred == 0.0 else 1.0 - h_pred_given_gold / h_pred
    v = 0.0 if h + c == 0.0 else 2.0 * h * c / (h + c)
    return h, c, v


def fscore_by_pair_enumeration(
    gold: Sequence[Hashable], predicted: Sequence[Hashable]
) -> tuple[float, float, float]:
    """(precision, recall, F) by walking every unordered instance pair."""
    both = in_pred = in_gold = 0
    m = len(gold)
    for i in range(m):
        for j in range(i + 1, m):
            same_pred = predicted[i] == predicted[j]
            same_gold = gold[i] == gold[j]
            in_pred += same_pred
            in_gold += same_gold
            both += same_pred and same_gold
    precision = both / in_pred if in_pred else 0.0
    recall = both / in_gold if in_gold else 0.0
    f = 0.0 if precision + recall == 0.0 else 2 * precision * recall / (precision + recall)
    return precision, recall, f


def pearson_by_hand(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson r straight from the covariance/stddev definition."""
    m = len(x)
    mx = sum(x) / m
    my = sum(y) / m
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sx = math.sqrt(sum((a - mx) ** 2 for a in x))
    sy = math.sqrt(sum((b - my) ** 2 for b in y))
    return cov / (sx * sy)
