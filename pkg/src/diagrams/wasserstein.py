"""
Exact 1-Wasserstein distance between diagrams on a polyhedral pair.

Signed diagrams are compared through W1(a+ + b-, b+ + a-). The unsigned
problem is an assignment on the diagonal-augmented (m+n) x (m+n) matrix,
with real-real cost min(|x - y|, d_A(x) + d_A(y)).
"""

import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import PairMismatchError, WassersteinError
from ..geometry import PolyhedralPair
from .diagram import SignedDiagram

BRUTEFORCE_LIMIT = 5


def default_cap() -> int:
    return int(os.getenv("PD_SCHAUDER_W1_CAP", "2000"))


@dataclass
class Matching:
    """Optimal partial matching between the expanded point lists `left` and `right`.

    Pairs are (i, j) index pairs; None stands for the diagonal (A).
    """
    left: np.ndarray
    right: np.ndarray
    pairs: List[Tuple[Optional[int], Optional[int]]] = field(default_factory=list)
    cost: float = 0.0

    def to_dict(self) -> dict:
        def side(points, idx):
            return "A" if idx is None else [float(c) for c in points[idx]]

        return {
            "cost": self.cost,
            "pairs": [{"from": side(self.left, i), "to": side(self.right, j)} for i, j in self.pairs],
        }


def _reduce(pair: PolyhedralPair, alpha: SignedDiagram, beta: SignedDiagram, cap: Optional[int]):
    for diag in (alpha, beta):
        if diag.pair != pair:
            raise PairMismatchError(f"diagram on {diag.pair.describe()} compared on {pair.describe()}")
        if not diag.is_integral():
            raise WassersteinError("W1 is defined for integer weights only")
    left = np.vstack([alpha.positive_part().expanded(), beta.negative_part().expanded()])
    right = np.vstack([beta.positive_part().expanded(), alpha.negative_part().expanded()])
    limit = default_cap() if cap is None else cap
    if len(left) + len(right) > limit:
        raise WassersteinError(f"{len(left) + len(right)} expanded points exceed the W1 cap of {limit}")
    return left, right


def _solve(pair: PolyhedralPair, left: np.ndarray, right: np.ndarray) -> Matching:
    m, n = len(left), len(right)
    if m + n == 0:
        return Matching(left, right, [], 0.0)
    da = pair.distances_to_A(left) if m else np.zeros(0)
    db = pair.distances_to_A(right) if n else np.zeros(0)
    big = float(da.sum() + db.sum()) + 1.0

    cost = np.zeros((m + n, m + n))
    if m and n:
        euclid = np.linalg.norm(left[:, None, :] - right[None, :, :], axis=2)
        cost[:m, :n] = np.minimum(euclid, da[:, None] + db[None, :])
    else:
        euclid = np.zeros((m, n))
    if m:
        block = np.full((m, m), big)
        np.fill_diagonal(block, da)
        cost[:m, n:] = block
    if n:
        block = np.full((n, n), big)
        np.fill_diagonal(block, db)
        cost[m:, :n] = block

    rows, cols = linear_sum_assignment(cost)
    pairs: List[Tuple[Optional[int], Optional[int]]] = []
    total = 0.0
    for r, c in zip(rows, cols):
        total += cost[r, c]
        if r < m and c < n:
            if euclid[r, c] <= da[r] + db[c]:
                pairs.append((int(r), int(c)))
            else:
                pairs.append((int(r), None))
                pairs.append((None, int(c)))
        elif r < m:
            pairs.append((int(r), None))
        elif c < n:
            pairs.append((None, int(c)))
    return Matching(left, right, pairs, float(total))


def optimal_matching(
    pair: PolyhedralPair, alpha: SignedDiagram, beta: SignedDiagram, cap: Optional[int] = None
) -> Matching:
    left, right = _reduce(pair, alpha, beta, cap)
    return _solve(pair, left, right)


def wasserstein1(pair: PolyhedralPair, alpha: SignedDiagram, beta: SignedDiagram, cap: Optional[int] = None) -> float:
    return optimal_matching(pair, alpha, beta, cap).cost


def wasserstein1_bruteforce(pair: PolyhedralPair, alpha: SignedDiagram, beta: SignedDiagram) -> float:
    """Exhaustive search over partial matchings; at most 5 expanded points per side."""
    left, right = _reduce(pair, alpha, beta, None)
    if len(left) > BRUTEFORCE_LIMIT or len(right) > BRUTEFORCE_LIMIT:
        raise WassersteinError(f"brute force handles at most {BRUTEFORCE_LIMIT} points per side")
    da = pair.distances_to_A(left) if len(left) else np.zeros(0)
    db = pair.distances_to_A(right) if len(right) else np.zeros(0)
    best = math.inf

    def search(i: int, used: Tuple[bool, ...], acc: float) -> None:
        nonlocal best
        if acc >= best:
            return
        if i == len(left):
            rest = sum(db[j] for j, u in enumerate(used) if not u)
            best = min(best, acc + rest)
            return
        search(i + 1, used, acc + da[i])
        for j, u in enumerate(used):
            if not u:
                step = float(np.linalg.norm(left[i] - right[j]))
                search(i + 1, used[:j] + (True,) + used[j + 1:], acc + step)

    search(0, tuple(False for _ in range(len(right))), 0.0)
    return float(best)


def diagram_norm(pair: PolyhedralPair, alpha: SignedDiagram, cap: Optional[int] = None) -> float:
    """||alpha|| = W1(alpha+, alpha-)."""
    return wasserstein1(pair, alpha, SignedDiagram.empty(pair), cap)
