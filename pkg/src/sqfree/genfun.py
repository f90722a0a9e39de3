"""Rational generating functions of length-l square-free words.

The route is: a deterministic automaton whose states are the last ``2l - 1``
letters of the word read so far, exact path counts by state-vector propagation,
the shortest linear recurrence of those counts (Berlekamp-Massey over Q), and a
held-out check that the recurrence keeps predicting further automaton counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sqfree.enumerate import CountSeries
from sqfree.errors import BudgetExceeded, ConsistencyError
from sqfree.poly import IntPolynomial, poly_gcd
from sqfree.words import Word, canonical, has_square_suffix

DEFAULT_STATE_BUDGET = 10**6
HELD_OUT_TERMS = 50

# Degrees (d_num, d_den) of the reduced S^(l)(x), used only to size the first batch of terms.
_DEGREE_HINTS = {0: (0, 1), 1: (1, 1), 2: (3, 2), 3: (5, 3), 4: (13, 6), 5: (13, 6),
                 6: (27, 15), 7: (27, 15), 8: (38, 19), 9: (38, 19), 10: (38, 19),
                 11: (81, 58), 12: (143, 106)}


class NoRecurrence(ValueError):
    """The series admits no linear recurrence of order within the requested bound."""


@dataclass
class SuffixAutomaton:
    ell: int
    states: list  # Word per state; index 0 is the empty word
    transitions: list  # per state, list of target indices (one per allowed letter)
    symmetric: bool = False

    @property
    def n_states(self) -> int:
        return len(self.states)

    def step(self, state: int, letter: int) -> Optional[int]:
        """Target state for reading ``letter``, or None when it would create a square.

        Only meaningful for the unreduced automaton, where transitions are stored per letter.
        """
        if self.symmetric:
            raise ValueError("per-letter transitions are not kept in the symmetric quotient")
        return self._letter_table[state][letter]

    _letter_table: list = field(default_factory=list, repr=False)


def build_automaton(ell: int, *, symmetric: Optional[bool] = None,
                    max_states: int = DEFAULT_STATE_BUDGET) -> SuffixAutomaton:
    """Automaton accepting exactly the length-``ell`` square-free words.

    With ``symmetric`` (default for ``ell >= 8``) states are identified up to letter
    permutation; path counts are unchanged because square-freeness is invariant
    under permutation and canonical relabelling commutes with reading a letter.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if symmetric is None:
        symmetric = ell >= 8
    keep = max(2 * ell - 1, 0)
    start = Word()
    index = {start.letters: 0}
    states = [start]
    transitions = []
    letter_table = []
    i = 0
    while i < len(states):
        u = states[i]
        targets = []
        row = [None, None, None]
        for x in range(3):
            v = Word(u.letters + bytes((x,)))
            if has_square_suffix(v, ell):
                continue
            t = v[len(v) - keep:] if len(v) > keep else v
            if symmetric:
                t = canonical(t)
            j = index.get(t.letters)
            if j is None:
                j = len(states)
                if j >= max_states:
                    raise BudgetExceeded(f"automaton for ell={ell} exceeds {max_states} states")
                index[t.letters] = j
                states.append(t)
            targets.append(j)
            row[x] = j
        transitions.append(targets)
        letter_table.append(row)
        i += 1
    return SuffixAutomaton(ell, states, transitions, symmetric, letter_table)


def series_from_automaton(aut: SuffixAutomaton, n_terms: int) -> CountSeries:
    """Number of accepted words of each length 0..n_terms-1."""
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    preds = [[] for _ in range(aut.n_states)]
    for s, targets in enumerate(aut.transitions):
        for t in targets:
            preds[t].append(s)
    vec = [0] * aut.n_states
    vec[0] = 1
    out = [1]
    for _ in range(n_terms - 1):
        vec = [sum(vec[s] for s in p) for p in preds]
        out.append(sum(vec))
    return CountSeries(aut.ell, out)


def berlekamp_massey(seq) -> tuple:
    """Shortest recurrence over Q. Returns ``(C, L)`` with ``C[0] = 1`` and
    ``sum_j C[j] * seq[n - j] == 0`` for all ``L <= n < len(seq)``."""
    seq = [Fraction(v) for v in seq]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n, s in enumerate(seq):
        d = s
        for j in range(1, L + 1):
            if j < len(C):
                d += C[j] * seq[n - j]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        if len(C) < len(B) + m:
            C = C + [Fraction(0)] * (len(B) + m - len(C))
        for j, bj in enumerate(B):
            C[j + m] -= coef * bj
        if 2 * L <= n:
            L = n + 1 - L
            B, b, m = T, d, 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L


def minimal_recurrence(series, order_bound: int) -> IntPolynomial:
    """Denominator ``D`` (``D(0) = 1``) of the shortest recurrence satisfied by ``series``.

    ``order_bound`` caps the recurrence length (max of denominator degree and
    numerator degree + 1). At least ``2 * order_bound + 2`` terms are required.
    """
    values = list(series.values if isinstance(series, CountSeries) else series)
    if len(values) < 2 * order_bound + 2:
        raise ValueError(f"need at least {2 * order_bound + 2} terms, got {len(values)}")
    C, L = berlekamp_massey(values)
    if L > order_bound or 2 * L > len(values):
        raise NoRecurrence(f"no recurrence of length <= {order_bound} in {len(values)} terms")
    if any(c.denominator != 1 for c in C):
        raise NoRecurrence("recurrence has non-integer coefficients")
    return IntPolynomial([int(c) for c in C])


@dataclass
class RationalGF:
    ell: Optional[int]
    numerator: IntPolynomial
    denominator: IntPolynomial
    n_terms_used: int = 0

    @property
    def d_num(self) -> int:
        return self.numerator.degree

    @property
    def d_den(self) -> int:
        return self.denominator.degree

    def series(self, n_terms: int) -> list:
        """Power series coefficients by long division (exact, denominator(0) = 1)."""
        den = self.denominator
        out = []
        for n in range(n_terms):
            v = self.numerator[n]
            for j in range(1, min(n, den.degree) + 1):
                v -= den[j] * out[n - j]
            out.append(v)
        return out

    def same_function(self, other: "RationalGF") -> bool:
        return (self.numerator.coeffs == other.numerator.coeffs
                and self.denominator.coeffs == other.denominator.coeffs)

    def to_json(self) -> dict:
        return {"ell": self.ell,
                "num": [str(c) for c in self.numerator.coeffs],
                "den": [str(c) for c in self.denominator.coeffs],
                "d_num": self.d_num, "d_den": self.d_den}

    @classmethod
    def from_json(cls, data: dict) -> "RationalGF":
        return cls(data.get("ell"), IntPolynomial([int(c) for c in data["num"]]),
                   IntPolynomial([int(c) for c in data["den"]]))

    def to_text(self) -> str:
        return f"S{self.ell}(x) = ({self.numerator}) / ({self.denominator})\n"


def rational_from_series(values, ell=None, *, held_out: int = HELD_OUT_TERMS) -> RationalGF:
    """Reduced N/D reproducing ``values``; the last ``held_out`` terms are not used for fitting."""
    fit = values[:len(values) - held_out]
    C, L = berlekamp_massey(fit)
    if 2 * L + 2 > len(fit):
        raise NoRecurrence(f"{len(fit)} terms too few for a recurrence of length {L}")
    den = IntPolynomial([int(c) for c in C]) if all(c.denominator == 1 for c in C) else None
    if den is None:
        raise NoRecurrence("recurrence has non-integer coefficients")
    num = (den * IntPolynomial(fit)).truncate(L)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
        scale = den[0]
        num = IntPolynomial([c / scale for c in num.coeffs])
        den = IntPolynomial([c / scale for c in den.coeffs])
        num = IntPolynomial([int(c) for c in num.coeffs])
        den = IntPolynomial([int(c) for c in den.coeffs])
    gf = RationalGF(ell, num, den, len(fit))
    if gf.series(len(values)) != list(values):
        raise ConsistencyError(f"recurrence for ell={ell} mispredicts held-out terms")
    return gf


def rational_gf(ell: int, *, symmetric: Optional[bool] = None,
                max_states: int = DEFAULT_STATE_BUDGET, max_terms: int = 20000) -> RationalGF:
    """Exact reduced S^(ell)(x), certified on ``HELD_OUT_TERMS`` extra coefficients."""
    aut = build_automaton(ell, symmetric=symmetric, max_states=max_states)
    d_num, d_den = _DEGREE_HINTS.get(ell, (aut.n_states, aut.n_states))
    n_terms = 2 * (max(d_num + 1, d_den)) + 64
    while True:
        n_terms = min(n_terms, max_terms)
        values = series_from_automaton(aut, n_terms + HELD_OUT_TERMS).values
        try:
            return rational_from_series(values, ell)
        except (NoRecurrence, ConsistencyError):
            if n_terms >= max_terms:
                raise
            n_terms *= 2
