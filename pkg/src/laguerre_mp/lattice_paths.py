"""Legal lattice paths and Narayana numbers.

Nodes are points ``(a, b)`` of the quarter plane. Each step moves one unit to
the right and changes the height by any amount ``>= -1``: a step with
non-negative height change is *upward*, a step of exactly -1 is *downward*.
A path to ``(k, l)`` is *legal* if it starts at the origin and every later
node has height at least 1.

``b_j(k, l)`` counts legal paths ending at ``(k, l)`` with exactly ``j``
upward steps. At ``l = 1`` these are the Narayana numbers.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import DomainError

__all__ = [
    "PathTable",
    "iter_legal_paths",
    "enumerate_legal_paths",
    "path_table_recursion",
    "narayana",
    "catalan",
    "cut_and_glue",
    "cut_and_glue_census",
]


def iter_legal_paths(k, l):
    """Yield every legal path to ``(k, l)`` as a tuple of node heights.

    The tuple has ``k + 1`` entries and starts with 0. Heights above
    ``l + (remaining steps)`` can never come back down to ``l`` and are pruned.
    """
    if k < 1 or l < 1:
        raise DomainError("need k >= 1 and l >= 1")
    heights = [0]

    def walk(pos):
        if pos == k:
            if heights[-1] == l:
                yield tuple(heights)
            return
        here = heights[-1]
        remaining = k - pos - 1
        lo = max(1, here - 1)
        hi = l + remaining
        for nxt in range(lo, hi + 1):
            heights.append(nxt)
            yield from walk(pos + 1)
            heights.pop()

    yield from walk(0)


def _upward_steps(heights):
    return sum(1 for a, b in zip(heights, heights[1:]) if b >= a)


def enumerate_legal_paths(k, l, j):
    """Count legal paths to ``(k, l)`` with exactly ``j`` upward steps by exhaustive search.

    The count is 0 for ``j`` outside ``[1, k]``.
    """
    if not 1 <= j <= k:
        if k < 1 or l < 1:
            raise DomainError("need k >= 1 and l >= 1")
        return 0
    return sum(1 for path in iter_legal_paths(k, l) if _upward_steps(path) == j)


@dataclass
class PathTable:
    """Counts ``b_j(k, l)`` for ``1 <= k <= k_max``, ``1 <= l <= l_max``."""

    k_max: int
    l_max: int
    counts: dict = field(default_factory=dict)

    def get(self, k, l, j):
        if not (1 <= k <= self.k_max and 1 <= l <= self.l_max):
            raise KeyError((k, l, j))
        return self.counts.get((k, l, j), 0)

    __call__ = get

    def rows(self):
        for k in range(1, self.k_max + 1):
            for l in range(1, self.l_max + 1):
                for j in range(1, k + 1):
                    yield k, l, j, self.get(k, l, j)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "l", "j", "count"])
        writer.writerows(self.rows())
        return buf.getvalue()


def path_table_recursion(k_max, l_max):
    """Fill ``b_j(k, l)`` from ``b_j(k, l) = sum_{r<=l} b_{j-1}(k-1, r) + b_j(k-1, l+1)``.

    Row ``k`` needs heights up to ``l + 1`` from row ``k - 1``, so the first
    row is built ``k_max - 1`` heights wider than requested.
    """
    if k_max < 1 or l_max < 1:
        raise DomainError("need k_max >= 1 and l_max >= 1")
    width = l_max + k_max - 1
    prev = {(l, 1): 1 for l in range(1, width + 1)}
    table = PathTable(k_max, l_max)
    for l in range(1, l_max + 1):
        table.counts[(1, l, 1)] = 1
    for k in range(2, k_max + 1):
        width -= 1
        cur = {}
        for l in range(1, width + 1):
            for j in range(1, k + 1):
                val = prev.get((l + 1, j), 0)
                for r in range(1, l + 1):
                    val += prev.get((r, j - 1), 0)
                if val:
                    cur[(l, j)] = val
        for (l, j), val in cur.items():
            if l <= l_max:
                table.counts[(k, l, j)] = val
        prev = cur
    return table


def narayana(k, j):
    """``(1/k) C(k, j) C(k, j-1)`` as an exact rational; always integral."""
    if k < 1 or not 1 <= j <= k:
        raise DomainError(f"narayana needs k >= 1 and 1 <= j <= k, got k={k}, j={j}")
    return Fraction(comb(k, j) * comb(k, j - 1), k)


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def _free_paths(k, j):
    # j upward steps with heights summing to k - j + 1, plus k - j steps of -1
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for ups in combinations(range(k), j):
        for heights in compositions(k - j + 1, j):
            steps = [-1] * k
            for pos, h in zip(ups, heights):
                steps[pos] = h
            yield tuple(steps)


def _nodes(steps):
    out = [0]
    for s in steps:
        out.append(out[-1] + s)
    return out


def cut_and_glue(steps):
    """Rotate a free path so it becomes legal.

    The cut point is the last node attaining the global minimum height; the
    tail from there is moved to the front and the head glued after it.
    """
    nodes = _nodes(steps)
    low = min(nodes)
    x = max(i for i, h in enumerate(nodes) if h == low)
    if x == len(steps):
        # unreachable for paths ending one unit above their start
        raise DomainError("path ends at its minimum")
    return tuple(steps[x:]) + tuple(steps[:x])


def _is_legal(steps):
    return all(h >= 1 for h in _nodes(steps)[1:])


def cut_and_glue_census(k, j):
    """Count free paths and their cut-and-glue classes, verifying the class sizes.

    Returns ``(free_path_count, class_count)``. Every class is checked to be
    exactly the set of ``k`` cyclic rotations of its legal representative.
    """
    if k < 1 or not 1 <= j <= k:
        raise DomainError(f"need k >= 1 and 1 <= j <= k, got k={k}, j={j}")
    classes = {}
    free = 0
    for steps in _free_paths(k, j):
        free += 1
        rep = cut_and_glue(steps)
        if not _is_legal(rep):
            raise AssertionError(f"cut-and-glue produced an illegal path from {steps}")
        classes.setdefault(rep, set()).add(steps)
    for rep, members in classes.items():
        orbit = {rep[i:] + rep[:i] for i in range(k)}
        if members != orbit or len(orbit) != k:
            raise AssertionError(f"class of {rep} has {len(members)} members, expected {k}")
    return free, len(classes)
