"""Words over the alphabet {a, b, c} and the square checks everything else is built on.

Letters are stored as the integers 0, 1, 2. A ``Word`` is immutable and hashable;
``Word.packed`` gives a 2-bit-per-letter integer key. Python integers are unbounded,
so the packed key works for any length.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Union

ALPHABET = "abc"
_INDEX = {ch: i for i, ch in enumerate(ALPHABET)}


@dataclass(frozen=True)
class Word:
    letters: bytes = b""

    def __post_init__(self):
        if any(x > 2 for x in self.letters):
            raise ValueError(f"letters must be 0, 1 or 2, got {self.letters!r}")

    @classmethod
    def from_str(cls, text: str) -> "Word":
        try:
            return cls(bytes(_INDEX[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"not a word over 'abc': {text!r}") from exc

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        return cls(bytes(letters))

    @property
    def packed(self) -> int:
        key = 0
        for x in reversed(self.letters):
            key = (key << 2) | x
        return key

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __add__(self, other: "WordLike") -> "Word":
        return Word(self.letters + as_word(other).letters)

    def __str__(self) -> str:
        return "".join(ALPHABET[x] for x in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


WordLike = Union[Word, str]


def as_word(w: WordLike) -> Word:
    if isinstance(w, Word):
        return w
    return Word.from_str(w)


@dataclass(frozen=True)
class LetterPermutation:
    """A bijection of {a, b, c}; ``images[i]`` is where letter i goes."""

    images: tuple = (0, 1, 2)

    def __post_init__(self):
        if sorted(self.images) != [0, 1, 2]:
            raise ValueError(f"not a permutation of 0,1,2: {self.images}")

    @classmethod
    def from_str(cls, text: str) -> "LetterPermutation":
        """``"bca"`` means a->b, b->c, c->a."""
        return cls(tuple(_INDEX[ch] for ch in text))

    def __call__(self, x):
        if isinstance(x, int):
            return self.images[x]
        return permute(x, self)

    def compose(self, other: "LetterPermutation") -> "LetterPermutation":
        """``self.compose(other)`` applies ``other`` first."""
        return LetterPermutation(tuple(self.images[other.images[i]] for i in range(3)))

    def inverse(self) -> "LetterPermutation":
        inv = [0, 0, 0]
        for i, j in enumerate(self.images):
            inv[j] = i
        return LetterPermutation(tuple(inv))

    def __pow__(self, k: int) -> "LetterPermutation":
        out = IDENTITY
        for _ in range(k % 6):
            out = self.compose(out)
        return out

    def __str__(self) -> str:
        return "".join(ALPHABET[i] for i in self.images)


IDENTITY = LetterPermutation((0, 1, 2))
SIGMA = LetterPermutation((1, 2, 0))  # a->b, b->c, c->a
S3 = tuple(LetterPermutation(p) for p in permutations(range(3)))


def has_square_suffix(w: WordLike, max_period: int) -> bool:
    """True iff the word ends in ``yy`` with ``1 <= |y| <= max_period``."""
    if max_period < 0:
        raise ValueError("max_period must be non-negative")
    x = as_word(w).letters
    n = len(x)
    for p in range(1, min(max_period, n // 2) + 1):
        if x[n - p:] == x[n - 2 * p:n - p]:
            return True
    return False


def is_length_l_square_free(w: WordLike, ell: int) -> bool:
    """No factor ``yy`` with ``1 <= |y| <= ell``. Vacuously true for ``ell == 0``."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    x = as_word(w).letters
    for end in range(2, len(x) + 1):
        if has_square_suffix(Word(x[:end]), ell):
            return False
    return True


def is_square_free(w: WordLike) -> bool:
    w = as_word(w)
    return is_length_l_square_free(w, len(w) // 2)


def permute(w: WordLike, pi: LetterPermutation) -> Word:
    return Word(bytes(pi.images[x] for x in as_word(w).letters))


def reverse(w: WordLike) -> Word:
    return Word(as_word(w).letters[::-1])


def letter_counts(w: WordLike) -> tuple:
    x = as_word(w).letters
    return (x.count(0), x.count(1), x.count(2))


def find_square(w: WordLike):
    """Return ``(start, period)`` of the leftmost-ending square in ``w``, or None."""
    x = as_word(w).letters
    for end in range(2, len(x) + 1):
        for p in range(1, end // 2 + 1):
            if x[end - p:end] == x[end - 2 * p:end - p]:
                return end - 2 * p, p
    return None


def canonical(w: WordLike) -> Word:
    """Relabel letters in order of first appearance (representative of the S3 orbit)."""
    relabel = {}
    out = bytearray()
    for x in as_word(w).letters:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return Word(bytes(out))
