"""Dense univariate polynomials with exact (int or Fraction) coefficients, ascending order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """``coeffs[i]`` multiplies x**i. The zero polynomial has no coefficients and degree -1."""

    coeffs: tuple = ()

    def __init__(self, coeffs: Sequence = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @property
    def degree(self) -> int:
        # -1 stands in for -infinity
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, IntPolynomial):
            return IntPolynomial([c * other for c in self.coeffs])
        if not self or not other:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def truncate(self, n: int) -> "IntPolynomial":
        """Keep terms of degree < n."""
        return IntPolynomial(self.coeffs[:n])

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c))
        return g

    def divmod(self, other: "IntPolynomial"):
        """Division over the rationals."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return IntPolynomial(), IntPolynomial(r)
        q = [Fraction(0)] * (dq + 1)
        for i in range(dq, -1, -1):
            f = r[i + other.degree] / lead
            q[i] = f
            if f:
                for j, b in enumerate(other.coeffs):
                    r[i + j] -= f * b
        return IntPolynomial(q), IntPolynomial(r[:other.degree])

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def primitive(p: IntPolynomial) -> IntPolynomial:
    """Clear denominators and divide out the content; result has integer coefficients."""
    if not p:
        return p
    den = 1
    for c in p.coeffs:
        d = Fraction(c).denominator
        den = den * d // gcd(den, d)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return IntPolynomial([c // g for c in ints])


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (Euclid over Q)."""
    a, b = primitive(a), primitive(b)
    while b:
        _, r = a.divmod(b)
        a, b = b, primitive(r)
    if a and a.coeffs[-1] < 0:
        a = -a
    return a


def sturm_sequence(p: IntPolynomial) -> list:
    seq = [primitive(p), primitive(p.derivative())]
    while seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if not r:
            break
        # keep the sign of -r; primitive() only divides by a positive content
        seq.append(primitive(-r))
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(seq: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] by Sturm's theorem; ``seq`` from ``sturm_sequence``."""
    return _sign_changes([q(lo) for q in seq]) - _sign_changes([q(hi) for q in seq])
