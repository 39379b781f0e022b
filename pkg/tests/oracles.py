"""Independent brute-force oracles.

These deliberately avoid the production algorithms: plain recursion for
edit distance and LCS, a memoized forest recurrence for tree edit
distance, and exhaustive choice enumeration for greedy tiling.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from itertools import combinations
from typing import Sequence

sys.setrecursionlimit(100_000)


def brute_levenshtein(a: Sequence, b: Sequence) -> int:
    """Exhaustive recursion over edit choices (no DP table)."""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(
            go(i + 1, j) + 1,
            go(i, j + 1) + 1,
            go(i + 1, j + 1) + (a[i] != b[j]),
        )

    return go(0, 0)


def brute_lcs(a: Sequence, b: Sequence) -> int:
    """Longest common subsequence by enumerating all subsequences of a."""
    best = 0
    for r in range(len(a), 0, -1):
        if r <= best:
            break
        for idxs in combinations(range(len(a)), r):
            cand = [a[i] for i in idxs]
            it = iter(b)
            if all(x in it for x in cand):  # subsequence check
                best = r
                break
    return best


class OracleNode:
    """Minimal ordered tree for the forest edit-distance oracle."""

    def __init__(self, kind: str, children: list["OracleNode"] | None = None):
        self.kind = kind
        self.children = children or []

    def key(self):
        return (self.kind, tuple(c.key() for c in self.children))


def forest_edit_distance(f1: tuple, f2: tuple) -> int:
    """Textbook recurrence on ordered forests, memoized on structure keys."""

    @lru_cache(maxsize=None)
    def go(k1, k2) -> int:
        if not k1 and not k2:
            return 0
        if not k1:
            return sum(_size(t) for t in k2)
        if not k2:
            return sum(_size(t) for t in k1)
        t1, t2 = k1[-1], k2[-1]
        rel = 0 if t1[0] == t2[0] else 1
        return min(
            go(k1[:-1] + t1[1], k2) + 1,  # delete root of last tree in f1
            go(k1, k2[:-1] + t2[1]) + 1,  # insert root of last tree in f2
            go(t1[1], t2[1]) + go(k1[:-1], k2[:-1]) + rel,  # match roots
        )

    return go(f1, f2)


@lru_cache(maxsize=None)
def _size(tree_key) -> int:
    return 1 + sum(_size(c) for c in tree_key[1])


def brute_tree_edit_distance(t1: OracleNode, t2: OracleNode) -> int:
    return forest_edit_distance((t1.key(),), (t2.key(),))


def brute_gst_coverage(a: Sequence, b: Sequence, mml: int) -> int:
    """Naive greedy tiling: one tile per step, full rescan each step.

    No hashing, no seed index, no per-round batching: every step scans
    all (i, j) start pairs for the longest unmarked common substring and
    marks the smallest (pos_a, pos_b) among the longest.
    """
    marked_a = [False] * len(a)
    marked_b = [False] * len(b)
    coverage = 0
    while True:
        best_len = 0
        best: tuple[int, int] | None = None
        for i in range(len(a)):
            for j in range(len(b)):
                length = 0
                while (
                    i + length < len(a)
                    and j + length < len(b)
                    and not marked_a[i + length]
                    and not marked_b[j + length]
                    and a[i + length] == b[j + length]
                ):
                    length += 1
                if length > best_len:
                    best_len = length
                    best = (i, j)
        if best_len < mml or best is None:
            return coverage
        i, j = best
        for t in range(best_len):
            marked_a[i + t] = True
            marked_b[j + t] = True
        coverage += best_len
