"""Singularity analysis of counting series by Dlog-Pade approximants.

For ``S(x) ~ A' (1 - x/x_c)**(-gamma)`` the logarithmic derivative ``S'/S`` has a
simple pole at ``x_c`` with residue ``-gamma``. Pade approximants of ``S'/S`` are
fitted with exact rational arithmetic; only their zeros are located numerically.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from sqfree.poly import IntPolynomial, primitive
from sqfree.roots import RootFindingError, all_roots

DEFECT_RADIUS = 1e-3
ROOT_DIGITS = 25


class InsufficientApproximants(ValueError):
    pass


@dataclass
class PadeResult:
    L: int
    M: int
    x_c: Optional[float] = None
    gamma: Optional[float] = None
    defect: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.defect is None


@dataclass
class ApproximantEstimate:
    x_c: float
    gamma: float
    A: Optional[float]
    spread: dict
    family: list  # (L, M) of the members that survived
    members: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"x_c": round(self.x_c, 12), "gamma": round(self.gamma, 12),
                "A": None if self.A is None else round(self.A, 10),
                "spread": {k: round(v, 12) for k, v in self.spread.items()},
                "family": [list(lm) for lm in self.family],
                "defects": [{"L": r.L, "M": r.M, "reason": r.defect}
                            for r in self.members if not r.ok]}


def log_derivative(series: Sequence) -> list:
    """Exact coefficients of ``S'(x)/S(x)``; one fewer than the input."""
    s = [Fraction(v) for v in series]
    if s[0] == 0:
        raise ValueError("series must have a non-zero constant term")
    d = []
    for n in range(len(s) - 1):
        v = (n + 1) * s[n + 1] - sum(s[j] * d[n - j] for j in range(1, n + 1))
        d.append(v / s[0])
    return d


def _solve(A, b):
    """Exact Gaussian elimination; returns None when singular."""
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        for i in range(c + 1, n):
            if aug[i][c]:
                f = aug[i][c] / aug[c][c]
                aug[i] = [a - f * bb for a, bb in zip(aug[i], aug[c])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        x[i] = (aug[i][n] - sum(aug[i][j] * x[j] for j in range(i + 1, n))) / aug[i][i]
    return x


def pade(coeffs: Sequence, L: int, M: int):
    """[L/M] Pade approximant ``P/Q`` with ``Q(0) = 1``; None if the system is singular."""
    c = [Fraction(v) for v in coeffs]
    if len(c) < L + M + 1:
        raise ValueError(f"[{L}/{M}] needs {L + M + 1} coefficients, got {len(c)}")
    get = lambda i: c[i] if i >= 0 else Fraction(0)
    if M > 0:
        A = [[get(L + i - j) for j in range(1, M + 1)] for i in range(1, M + 1)]
        b = [-get(L + i) for i in range(1, M + 1)]
        q = _solve(A, b)
        if q is None:
            return None
    else:
        q = []
    Q = [Fraction(1)] + q
    P = [sum(Q[j] * get(i - j) for j in range(min(i, M) + 1)) for i in range(L + 1)]
    return P, Q


def dlog_pade(series: Sequence, L: int, M: int, *, x_max: float = 1.0) -> PadeResult:
    """Estimate ``(x_c, gamma)`` from the [L/M] approximant of the log-derivative.

    The critical point is the smallest positive real pole below ``x_max``.
    """
    values = series.values if hasattr(series, "values") else series
    if len(values) < L + M + 2:
        raise ValueError(f"series too short for [{L}/{M}]")
    d = log_derivative(values[:L + M + 2])
    res = PadeResult(L, M)
    pq = pade(d, L, M)
    if pq is None:
        res.defect = "singular system"
        return res
    P, Q = pq
    Qp = primitive(IntPolynomial(Q))
    Pp = primitive(IntPolynomial(P))
    if Qp.degree < 1:
        res.defect = "no pole"
        return res
    try:
        fast = dict(assume_squarefree=True, double_start=True)
        poles = all_roots(Qp, ROOT_DIGITS, **fast)
        zeros = all_roots(Pp, ROOT_DIGITS, **fast) if Pp.degree >= 1 else []
    except RootFindingError:
        res.defect = "root finding failed"
        return res
    # a pole with a numerator zero right next to it is a Pade artefact (Froissart doublet)
    doublet = lambda z: any(abs(z - w) < DEFECT_RADIUS for w in zeros)
    real = sorted(float(z.real) for z in poles
                  if z.imag == 0 and 0 < z.real < x_max and not doublet(z))
    if not real:
        res.defect = f"no positive real pole in (0, {x_max:g})"
        return res
    x_p = real[0]
    with mpmath.workdps(ROOT_DIGITS):
        xp = mpmath.mpf(x_p)
        Qd = IntPolynomial(Q).derivative()
        num = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * xp**i for i, c in enumerate(P))
        den = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * xp**i for i, c in enumerate(Qd.coeffs))
        gamma = -num / den
    res.x_c, res.gamma = x_p, float(gamma)
    if any(doublet(z) and abs(z) <= x_p for z in poles):
        res.defect = "spurious pole-zero pair inside the radius of convergence"
    return res


def diag_family(n_terms: int, width: int = 2, depth: int = 10) -> list:
    """Near-diagonal orders ``|L - M| <= width`` using ``n_terms - depth .. n_terms`` series terms.

    Members shorter than ``depth`` terms are left out, so very short series get no family.
    """
    fam = []
    for used in range(max(n_terms - depth, depth, 3), n_terms + 1):
        total = used - 2  # L + M, since [L/M] of S'/S consumes L + M + 2 terms of S
        for L in range(total + 1):
            M = total - L
            if abs(L - M) <= width and M >= 1:
                fam.append((L, M))
    return fam


FAMILIES = {"diag2": lambda n: diag_family(n, 2, 10), "diag1": lambda n: diag_family(n, 1, 10),
            "diag0": lambda n: diag_family(n, 0, 10)}


def amplitude_estimate(series: Sequence, x_c, gamma, *, tail: int = 10) -> tuple:
    """Amplitude ``A`` in ``s_n ~ A x_c**-n n**(gamma - 1)``.

    ``A_n = s_n x_c**n n**(1 - gamma)`` is extrapolated linearly in ``1/n`` over the
    last ``tail`` terms. Returns ``(A, monotone_tail)``; a non-monotone tail is only
    a warning sign.
    """
    values = series.values if hasattr(series, "values") else series
    N = len(values) - 1
    with mpmath.workdps(30):
        xc = mpmath.mpf(x_c)
        g = mpmath.mpf(gamma)
        ns = list(range(max(1, N - tail + 1), N + 1))
        a = [mpmath.mpf(Fraction(values[n]).numerator) / Fraction(values[n]).denominator
             * xc**n * mpmath.mpf(n) ** (1 - g) for n in ns]
        # least-squares line in 1/n; the intercept is the n -> infinity value
        u = [mpmath.mpf(1) / n for n in ns]
        mu, ma = sum(u) / len(u), sum(a) / len(a)
        suu = sum((ui - mu) ** 2 for ui in u)
        slope = sum((ui - mu) * (ai - ma) for ui, ai in zip(u, a)) / suu if suu else 0
        A = ma - slope * mu
        noise = mpmath.mpf(10) ** -20 * max(abs(v) for v in a)
        diffs = [y - x for x, y in zip(a, a[1:])]
        monotone = all(dd >= -noise for dd in diffs) or all(dd <= noise for dd in diffs)
    return float(A), monotone


def pooled_estimate(series: Sequence, family="diag2", *, with_amplitude: bool = True,
                    min_members: int = 3, x_max: float = 1.0) -> ApproximantEstimate:
    """Median of ``(x_c, gamma)`` over non-defective members; spread is max - min."""
    values = series.values if hasattr(series, "values") else list(series)
    if isinstance(family, str):
        family = FAMILIES[family](len(values))
    members = [dlog_pade(values, L, M, x_max=x_max) for L, M in family if L + M + 2 <= len(values)]
    good = [r for r in members if r.ok]
    if len(good) < min_members:
        raise InsufficientApproximants(
            f"only {len(good)} non-defective approximants (need {min_members})")
    xs = [r.x_c for r in good]
    gs = [r.gamma for r in good]
    x_c, gamma = statistics.median(xs), statistics.median(gs)
    spread = {"x_c": max(xs) - min(xs), "gamma": max(gs) - min(gs)}
    A = None
    if with_amplitude:
        A, _ = amplitude_estimate(values, x_c, gamma)
    return ApproximantEstimate(x_c, gamma, A, spread, [(r.L, r.M) for r in good], members)
