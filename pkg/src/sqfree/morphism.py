"""Uniform substitutions with several image choices per letter (Brinkhuis-type triples).

A triple maps each letter to a list of ``k`` square-free words of a common length
``m``. It is valid when every word obtained from a square-free input by choosing,
letter by letter, any of the ``k`` images is again square-free. Only finitely many
inputs can be checked; certificates record the input length that was covered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Optional, Sequence

import mpmath

from sqfree.enumerate import enumerate_words
from sqfree.errors import BudgetExceeded
from sqfree.words import SIGMA, Word, WordLike, as_word, find_square, letter_counts, permute, reverse

FIXTURE_DIR = Path(__file__).parent / "fixtures"
DEFAULT_CHECK_BUDGET = 2_000_000


class HeterogeneousCounts(ValueError):
    pass


class DegenerateEigenspace(ValueError):
    pass


@dataclass(frozen=True)
class SubstitutionTriple:
    images_a: tuple
    images_b: tuple
    images_c: tuple
    name: str = ""

    def __post_init__(self):
        for attr in ("images_a", "images_b", "images_c"):
            object.__setattr__(self, attr, tuple(as_word(w) for w in getattr(self, attr)))
        lists = self.images
        if not all(lists):
            raise ValueError("every letter needs at least one image")
        if len({len(ws) for ws in lists}) != 1:
            raise ValueError("all letters need the same number of images")
        lengths = {len(w) for ws in lists for w in ws}
        if len(lengths) != 1:
            raise ValueError(f"images must share one length, got {sorted(lengths)}")

    @property
    def images(self) -> tuple:
        return (self.images_a, self.images_b, self.images_c)

    @property
    def m(self) -> int:
        return len(self.images_a[0])

    @property
    def k(self) -> int:
        return len(self.images_a)

    def apply(self, w: WordLike, choices: Optional[Sequence[int]] = None) -> Word:
        """Substitute each letter of ``w``; ``choices[i]`` picks the image for position i."""
        w = as_word(w)
        if choices is None:
            choices = [0] * len(w)
        out = b"".join(self.images[x][j].letters for x, j in zip(w, choices))
        return Word(out)

    def subset(self, indices: Sequence[int]) -> "SubstitutionTriple":
        pick = lambda ws: tuple(ws[i] for i in indices)
        return SubstitutionTriple(pick(self.images_a), pick(self.images_b), pick(self.images_c),
                                  self.name)

    def to_json(self) -> dict:
        return {"name": self.name, "m": self.m, "k": self.k,
                "images": {letter: [str(w) for w in ws] for letter, ws in zip("abc", self.images)}}

    @classmethod
    def from_json(cls, data: dict) -> "SubstitutionTriple":
        imgs = data["images"]
        return cls(tuple(imgs["a"]), tuple(imgs["b"]), tuple(imgs["c"]), data.get("name", ""))


def load_triple(path) -> tuple:
    """Read a fixture file; returns ``(triple, raw_json)``."""
    data = json.loads(Path(path).read_text())
    return SubstitutionTriple.from_json(data), data


def fixture_paths() -> list:
    return sorted(FIXTURE_DIR.glob("*.json"))


def require_equal_counts(triple: SubstitutionTriple) -> tuple:
    """Letter counts of the images of a, b, c; each list must be homogeneous."""
    out = []
    for letter, ws in zip("abc", triple.images):
        counts = [letter_counts(w) for w in ws]
        for j, c in enumerate(counts[1:], start=1):
            if c != counts[0]:
                raise HeterogeneousCounts(
                    f"images of {letter}: {ws[0]} has counts {counts[0]} but {ws[j]} has {c}")
        out.append(counts[0])
    return tuple(out)


@dataclass(frozen=True)
class SubstitutionMatrix:
    """``rows[y][x]`` = occurrences of letter y in an image of letter x."""

    rows: tuple

    @property
    def column_sums(self) -> tuple:
        return tuple(sum(self.rows[y][x] for y in range(3)) for x in range(3))

    def tolist(self) -> list:
        return [list(r) for r in self.rows]


def substitution_matrix(triple: SubstitutionTriple) -> SubstitutionMatrix:
    cols = require_equal_counts(triple)
    rows = tuple(tuple(cols[x][y] for x in range(3)) for y in range(3))
    M = SubstitutionMatrix(rows)
    assert M.column_sums == (triple.m,) * 3
    return M


def _kernel(A) -> list:
    """Basis of the right kernel of a small exact matrix (list of rows of Fractions)."""
    A = [[Fraction(v) for v in row] for row in A]
    n_rows, n_cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        A[r] = [v / piv for v in A[r]]
        for i in range(n_rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        basis.append(v)
    return basis


def pf_frequencies(M) -> tuple:
    """Letter frequencies: the right eigenvector of ``M`` for eigenvalue m, summing to 1."""
    rows = M.rows if isinstance(M, SubstitutionMatrix) else tuple(tuple(r) for r in M)
    sums = {sum(rows[y][x] for y in range(3)) for x in range(3)}
    if len(sums) != 1:
        raise ValueError(f"column sums differ: {sorted(sums)}")
    m = sums.pop()
    shifted = [[rows[i][j] - (m if i == j else 0) for j in range(3)] for i in range(3)]
    basis = _kernel(shifted)
    if len(basis) != 1:
        raise DegenerateEigenspace(f"eigenvalue {m} has a {len(basis)}-dimensional eigenspace")
    v = basis[0]
    total = sum(v)
    return tuple(x / total for x in v)


@dataclass
class GrowthBound:
    k: int
    m: int

    @property
    def existence_only(self) -> bool:
        return self.k == 1

    @property
    def value(self) -> mpmath.mpf:
        """k ** (1 / (m - 1))."""
        return mpmath.mpf(self.k) ** (mpmath.mpf(1) / (self.m - 1))

    def __str__(self) -> str:
        if self.existence_only:
            return "existence only (k = 1)"
        return f"{self.k}^(1/{self.m - 1}) ~ {mpmath.nstr(self.value, 6)}"

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "existence_only": self.existence_only,
                "value": None if self.existence_only else mpmath.nstr(self.value, 12)}


def growth_lower_bound(k, m: Optional[int] = None) -> GrowthBound:
    """Growth rate guaranteed by a valid triple: ``k ** (1/(m-1))``."""
    if isinstance(k, SubstitutionTriple):
        k, m = k.k, k.m
    if m is None or m < 2:
        raise ValueError("growth exponent 1/(m-1) is undefined for m < 2")
    return GrowthBound(k, m)


@dataclass
class TripleCertificate:
    valid: bool
    check_length: int
    checked_words: int
    growth: Optional[GrowthBound]
    witness: Optional[dict] = None

    @property
    def label(self) -> str:
        return f"checked to input length {self.check_length}"

    def to_json(self) -> dict:
        return {"valid": self.valid, "check_length": self.check_length, "label": self.label,
                "checked_words": self.checked_words,
                "growth_bound": self.growth.to_json() if self.growth else None,
                "witness": self.witness}


def verify_triple(triple: SubstitutionTriple, input_length: int = 3, *,
                  budget: int = DEFAULT_CHECK_BUDGET) -> TripleCertificate:
    """Check every square-free input of length <= ``input_length`` under every image choice.

    Inputs are visited in length-then-lexicographic order and choices lexicographically,
    so the reported witness is the first failure in that order.
    """
    if input_length < 1:
        raise ValueError("input_length must be at least 1")
    total = sum(triple.k ** n * sum(1 for _ in enumerate_words(n)) for n in range(input_length + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} substituted words exceed the check budget {budget}; "
                             f"lower the input length")
    checked = 0
    for n in range(1, input_length + 1):
        for w in enumerate_words(n):
            for choice in product(range(triple.k), repeat=n):
                image = triple.apply(w, choice)
                checked += 1
                sq = find_square(image)
                if sq is not None:
                    start, period = sq
                    witness = {"input": str(w), "choices": list(choice),
                               "image": str(image), "square_start": start, "period": period,
                               "square": str(image[start:start + 2 * period])}
                    return TripleCertificate(False, input_length, checked, None, witness)
    growth = growth_lower_bound(triple.k, triple.m) if triple.m >= 2 else None
    return TripleCertificate(True, input_length, checked, growth)


def build_sigma_triple(gen_a: WordLike, gen_b: Optional[WordLike] = None,
                       gen_c: Optional[WordLike] = None, *, with_reversal: bool = True,
                       name: str = "") -> SubstitutionTriple:
    """Images of a from ``gen_a``, of b from sigma(``gen_b``), of c from sigma^2(``gen_c``).

    With ``with_reversal`` each list also holds the reversed generator, giving k = 2.
    ``gen_b`` and ``gen_c`` default to ``gen_a`` (the fully sigma-symmetric case).
    """
    gens = [as_word(gen_a), as_word(gen_b if gen_b is not None else gen_a),
            as_word(gen_c if gen_c is not None else gen_a)]
    if len({len(g) for g in gens}) != 1:
        raise ValueError("generators must have equal length")
    lists = []
    for power, g in enumerate(gens):
        base = [g, reverse(g)] if with_reversal else [g]
        lists.append(tuple(permute(w, SIGMA ** power) for w in base))
    return SubstitutionTriple(*lists, name=name)
