"""Exact counts of square-free and length-l square-free ternary words.

Counting is a depth-first search that extends words one letter at a time and only
checks the newly created suffix for squares. The search tree is split into
subtrees by the first ``split_depth`` letters; subtrees that are letter
permutations of each other are counted once and weighted by orbit size.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from sqfree import _kernels
from sqfree.errors import BudgetExceeded
from sqfree.words import Word, canonical, has_square_suffix

DEFAULT_NODE_BUDGET = 10**9


def default_budget() -> int:
    env = os.environ.get("SQFREE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass
class CountSeries:
    """Counts ``values[n]`` for n = 0..N. ``ell is None`` means full square-freeness."""

    ell: Optional[int]
    values: list

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def to_json(self) -> dict:
        return {"ell": self.ell, "series": [str(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "CountSeries":
        return cls(data.get("ell"), [int(v) for v in data["series"]])


@dataclass
class CountTable:
    """Triangle ``rows[n][k]`` = number of square-free words of length n with k letters a."""

    rows: list

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nk):
        n, k = nk
        row = self.rows[n]
        return row[k] if 0 <= k < len(row) else 0

    def row(self, n: int) -> list:
        if not 0 <= n < len(self.rows):
            raise KeyError(f"row {n} not in table (max_n={self.max_n})")
        return self.rows[n]

    def totals(self) -> list:
        return [sum(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"max_n": self.max_n, "rows": [[str(v) for v in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "CountTable":
        return cls([[int(v) for v in r] for r in data["rows"]])


@dataclass
class FrequencyExtent:
    k: int
    n_min: Optional[int]
    n_max: Optional[int]  # None: not proven within the search bound
    support: list = field(default_factory=list)  # all n <= bound with s_{n,k} > 0

    @property
    def lower_frequency_bound(self) -> Optional[Fraction]:
        """k / n_max(k): every long enough word has at least this density of a."""
        if self.n_max is None or self.n_max == 0:
            return None
        return Fraction(self.k, self.n_max)

    @property
    def upper_frequency_bound(self) -> Optional[Fraction]:
        """k / n_min(k): no long enough word exceeds this density of a."""
        if self.n_min is None or self.n_min == 0:
            return None
        return Fraction(self.k, self.n_min)

    def finite_bounds(self, m: int) -> tuple:
        """The bounds (mk+1)/(m n_max+1) and (mk-1)/(m n_min-1) before taking m to infinity."""
        lo = hi = None
        if self.n_max:
            lo = Fraction(m * self.k + 1, m * self.n_max + 1)
        if self.n_min and m * self.n_min > 1:
            hi = Fraction(m * self.k - 1, m * self.n_min - 1)
        return lo, hi


def _prefixes(length: int, max_period: int) -> list:
    """All valid words of exactly ``length`` letters, in lexicographic order."""
    level = [b""]
    for _ in range(length):
        nxt = []
        for u in level:
            for x in range(3):
                v = u + bytes((x,))
                if not has_square_suffix(Word(v), max_period):
                    nxt.append(v)
        level = nxt
    return level


def _count(n_max: int, max_period: int, budget: Optional[int], split_depth: int,
           threads: Optional[int]) -> np.ndarray:
    """Full letter table ``T[n, x, j]`` as Python-int object array."""
    budget = default_budget() if budget is None else budget
    d = min(split_depth, n_max)
    table = np.zeros((n_max + 1, 3, n_max + 1), dtype=object)
    if n_max == 0:
        # the empty word is its own orbit, which the weighting below cannot express
        table[0, :, 0] = 1
        return table

    # lengths below the split depth are counted directly
    level = [b""]
    nodes = 1
    for n in range(d + 1):
        if n > 0:
            level = [u + bytes((x,)) for u in level for x in range(3)
                     if not has_square_suffix(Word(u + bytes((x,))), max_period)]
            nodes += len(level)
        if n < d:
            for u in level:
                for x in range(3):
                    table[n, x, u.count(x)] += 1
    if nodes > budget:
        raise BudgetExceeded(f"node budget {budget} exceeded while building prefixes")

    # one subtree per S3 orbit of split prefixes
    orbits = {}
    for u in level:
        key = canonical(Word(u)).letters
        orbits[key] = orbits.get(key, 0) + 1
    reps = sorted(orbits)

    def work(rep):
        arr = np.frombuffer(rep, dtype=np.int8).copy()
        return _kernels.count_subtree(arr, n_max, max_period, budget)

    if threads is None:
        threads = os.cpu_count() or 1
    if threads > 1 and len(reps) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, reps))
    else:
        results = [work(r) for r in reps]

    for rep, (sub, sub_nodes, exceeded) in zip(reps, results):
        nodes += int(sub_nodes) * orbits[rep] - orbits[rep]
        if exceeded or nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded (n_max={n_max})")
        orbit = orbits[rep]
        # permuting letters of a subtree permutes the rows x; each orbit of size 6
        # sends every letter to "a" twice, an orbit of size 3 once
        sym = sub.sum(axis=1).astype(object) * (orbit // 3)
        for x in range(3):
            table[d:, x, :] += sym[d:]
    return table


def count_lsf(ell: int, n_max: int, *, budget: Optional[int] = None, split_depth: int = 6,
              threads: Optional[int] = None) -> CountSeries:
    """Counts of length-``ell`` square-free words for lengths 0..n_max."""
    if ell < 0 or n_max < 0:
        raise ValueError("ell and n_max must be non-negative")
    table = _count(n_max, ell, budget, split_depth, threads)
    return CountSeries(ell, [int(sum(table[n, 0, :])) for n in range(n_max + 1)])


def count_square_free(n_max: int, *, budget: Optional[int] = None, split_depth: int = 6,
                      threads: Optional[int] = None) -> CountSeries:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    table = _count(n_max, n_max // 2, budget, split_depth, threads)
    return CountSeries(None, [int(sum(table[n, 0, :])) for n in range(n_max + 1)])


def count_by_letter(n_max: int, *, budget: Optional[int] = None, split_depth: int = 6,
                    threads: Optional[int] = None) -> CountTable:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    table = _count(n_max, n_max // 2, budget, split_depth, threads)
    return CountTable([[int(table[n, 0, k]) for k in range(n + 1)] for n in range(n_max + 1)])


def letter_extent(k: int, search_bound: Optional[int] = None, *,
                  budget: Optional[int] = None) -> FrequencyExtent:
    """Shortest and longest square-free words containing exactly ``k`` letters a.

    A gap of more than three letters between consecutive a's forces a square, so no
    such word is longer than ``4k + 3``; that is the default search bound. With a
    smaller bound, ``n_max`` is reported as None unless the search ran dry first.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if search_bound is None:
        search_bound = 4 * k + 4
    budget = default_budget() if budget is None else budget
    hit, reach, nodes, exceeded = _kernels.extent_search(k, search_bound, budget)
    if exceeded:
        return FrequencyExtent(k, None, None, [])
    support = [int(n) for n in np.flatnonzero(hit)]
    n_min = support[0] if support else None
    exhausted = not reach[search_bound]
    n_max = support[-1] if (support and exhausted) else None
    return FrequencyExtent(k, n_min, n_max, support)


def enumerate_words(n: int, *, max_period: Optional[int] = None,
                    budget: Optional[int] = None) -> Iterator[Word]:
    """Yield the square-free words of length ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    budget = default_budget() if budget is None else budget
    max_period = n // 2 if max_period is None else max_period
    w = bytearray()
    nodes = 0

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded enumerating length {n}")
        if len(w) == n:
            yield Word(bytes(w))
            return
        for x in range(3):
            w.append(x)
            if not has_square_suffix(Word(bytes(w)), max_period):
                yield from rec()
            w.pop()

    yield from rec()
