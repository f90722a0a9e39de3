"""Zeros of integer polynomials: the dominant real zero of a denominator, certified
with exact arithmetic, and all complex zeros by Aberth iteration in mpmath."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from sqfree.poly import IntPolynomial, count_real_roots, poly_gcd, primitive, sturm_sequence

DEFAULT_DIGITS = 40


class RootFindingError(RuntimeError):
    def __init__(self, message, worst_residual=None):
        super().__init__(message)
        self.worst_residual = worst_residual


@dataclass
class RootResult:
    x_c: mpmath.mpf
    certified_interval: tuple  # (lo, hi) Fractions, exactly one root, none in (0, lo]
    ell: Optional[int] = None
    smallest_modulus: Optional[bool] = None

    def decimal(self, places: int = 9) -> str:
        """``x_c`` rounded to ``places`` decimals (assumes 0 < x_c < 1)."""
        with mpmath.workdps(places + 20):
            digits = int(mpmath.nint(self.x_c * 10**places))
        return f"0.{digits:0{places}d}" if digits < 10**places else "1." + "0" * places


@dataclass
class PoleSet:
    ell: Optional[int]
    poles: list  # (mpc, multiplicity)
    zeros: list  # (mpc, multiplicity)
    residual: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def pole_count(self) -> int:
        return sum(m for _, m in self.poles)

    def near_unit_circle(self, width: float = 0.1) -> float:
        """Fraction of poles, counted with multiplicity, with ``| |z| - 1 | <= width``."""
        if not self.poles:
            return 0.0
        close = sum(m for z, m in self.poles if abs(abs(z) - 1) <= width)
        return close / self.pole_count

    def to_json(self, digits: int = 15) -> dict:
        def rows(items):
            out = []
            for z, m in items:
                out.append({"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits),
                            "abs": mpmath.nstr(abs(z), digits),
                            "unit_circle_distance": mpmath.nstr(abs(abs(z) - 1), digits),
                            "multiplicity": m})
            return out
        return {"ell": self.ell, "poles": rows(self.poles), "zeros": rows(self.zeros),
                "near_unit_circle_fraction": round(self.near_unit_circle(), 12)}


def squarefree_factors(p: IntPolynomial) -> list:
    """Yun's algorithm: ``[(q, m), ...]`` with ``p = c * prod q**m``, each ``q`` squarefree."""
    p = primitive(p)
    out = []
    if p.degree < 1:
        return out
    a = poly_gcd(p, p.derivative())
    b, _ = p.divmod(a)
    c, _ = p.derivative().divmod(a)
    d = c - b.derivative()
    m = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, m))
        b, _ = b.divmod(g)
        c, _ = d.divmod(g)
        d = c - b.derivative()
        m += 1
    return [(primitive(q), m) for q, m in out]


def _aberth(coeffs, dps, seed, max_iter, start=None):
    """Simultaneous Aberth-Ehrlich iteration on a squarefree polynomial.

    ``start`` optionally supplies initial approximations (e.g. double-precision roots).
    """
    n = len(coeffs) - 1
    with mpmath.workdps(dps):
        a = [mpmath.mpf(c) for c in coeffs]

        def evaluate(z):
            p = a[n]
            dp = mpmath.mpf(0)
            for c in reversed(a[:-1]):
                dp = dp * z + p
                p = p * z + c
            return p, dp

        # roots-of-unity start on a circle of the geometric-mean radius
        radius = abs(a[0] / a[n]) ** (mpmath.mpf(1) / n)
        rng = random.Random(seed)
        if start is not None:
            z = [mpmath.mpc(complex(v)) for v in start]
        else:
            z = [radius * (1 + mpmath.mpf(rng.random()) / 100)
                 * mpmath.expjpi(mpmath.mpf(2 * k) / n + mpmath.mpf(0.4) / n) for k in range(n)]
        tol = mpmath.mpf(10) ** (-(dps - 8))
        for _ in range(max_iter):
            worst = mpmath.mpf(0)
            for i in range(n):
                p, dp = evaluate(z[i])
                if p == 0:
                    continue
                ratio = p / dp
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                step = ratio / (1 - ratio * s)
                z[i] -= step
                worst = max(worst, abs(step) / max(abs(z[i]), 1))
            if worst < tol:
                return z
        raise RootFindingError(f"Aberth iteration did not converge in {max_iter} steps",
                               worst_residual=float(worst))


def _residual(coeffs, z):
    p = mpmath.mpf(0)
    scale = mpmath.mpf(0)
    for c in reversed(coeffs):
        p = p * z + c
        scale = scale * abs(z) + abs(c)
    return abs(p) / scale if scale else abs(p)


def all_roots(p: IntPolynomial, precision: int = DEFAULT_DIGITS, *, seed: int = 0,
              max_iter: int = 500, with_multiplicity: bool = False,
              assume_squarefree: bool = False, double_start: bool = False) -> list:
    """All complex zeros of ``p``, repeated by multiplicity, in a fixed order.

    Each squarefree factor is solved separately, so repeated zeros converge quadratically.
    Conjugate pairs are symmetrised and every zero is residual-checked.
    ``assume_squarefree`` skips the exact decomposition; ``double_start`` seeds the
    iteration with numpy's double-precision roots instead of the circle layout.
    """
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    dps = precision + 15
    out = []
    worst = 0.0
    # zeros at the origin would collapse the start circle; split them off
    shift = next(i for i, c in enumerate(p.coeffs) if c != 0)
    if shift:
        out.append((mpmath.mpc(0), shift))
        p = IntPolynomial(p.coeffs[shift:])
    with mpmath.workdps(dps):
        factors = [(primitive(p), 1)] if assume_squarefree else squarefree_factors(p)
        for q, m in factors if p.degree >= 1 else []:
            if q.degree == 1:
                zs = [mpmath.mpc(mpmath.mpf(-q[0]) / q[1])]
            else:
                start = None
                if double_start:
                    top = max(abs(c) for c in q.coeffs)
                    start = np.roots([float(Fraction(c, top)) for c in reversed(q.coeffs)])
                    if len(start) != q.degree or not np.all(np.isfinite(start)):
                        start = None
                zs = _aberth(list(q.coeffs), dps, seed, max_iter, start)
            zs = _symmetrise(zs, mpmath.mpf(10) ** (-(precision // 2)))
            for z in zs:
                r = _residual(list(q.coeffs), z)
                worst = max(worst, float(r))
                out.append((mpmath.mpc(z), m))
        if worst > 10.0 ** (-precision + 5):
            raise RootFindingError("root residual above tolerance", worst_residual=worst)
    out.sort(key=lambda zm: (float(zm[0].real), float(zm[0].imag)))
    if with_multiplicity:
        return out
    return [z for z, m in out for _ in range(m)]


def _symmetrise(zs, tol):
    """Snap near-real zeros to the real axis and pair the rest as exact conjugates."""
    zs = [mpmath.mpc(z) for z in zs]
    real = [mpmath.mpc(z.real, 0) for z in zs if abs(z.imag) <= tol]
    upper = sorted((z for z in zs if z.imag > tol), key=lambda z: (float(z.real), float(z.imag)))
    lower = [z for z in zs if z.imag < -tol]
    paired = []
    for z in upper:
        j = min(range(len(lower)), key=lambda i: abs(lower[i] - mpmath.conj(z)))
        w = lower.pop(j)
        avg = (z + mpmath.conj(w)) / 2
        paired += [avg, mpmath.conj(avg)]
    if lower or len(real) + len(paired) != len(zs):
        raise RootFindingError("complex zeros of a real polynomial failed to pair up")
    return real + paired


def dominant_real_root(den: IntPolynomial, precision: int = 30, *, ell: Optional[int] = None,
                       check_modulus: bool = True) -> RootResult:
    """Smallest positive real zero, isolated and refined with exact rational signs."""
    if den.degree < 1 or den[0] != 1:
        raise ValueError("denominator must be normalised to den(0) = 1 and be non-constant")
    factors = squarefree_factors(den)
    core = IntPolynomial([1])
    for q, _ in factors:
        core = core * q
    core = primitive(core)
    seq = sturm_sequence(core)
    zero, one = Fraction(0), Fraction(1)
    if count_real_roots(seq, zero, one) == 0:
        raise ValueError("no positive real root in (0, 1]")

    # isolate: shrink hi until (0, hi] holds exactly one root
    lo, hi = zero, one
    while count_real_roots(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_real_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    # refine by exact sign bisection; core is squarefree so its sign changes at the root
    target = Fraction(1, 2 ** int(precision * 3.33 + 20))
    s_hi = core(hi) > 0
    if core(hi) == 0:
        lo = hi - target / 2
    while hi - lo > target:
        mid = (lo + hi) / 2
        v = core(mid)
        if v == 0:
            lo, hi = mid - target / 4, mid + target / 4
            break
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    assert count_real_roots(seq, zero, lo) == 0
    assert count_real_roots(seq, lo, hi) == 1
    with mpmath.workdps(precision + 10):
        x_c = (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2
    result = RootResult(x_c, (lo, hi), ell)
    if check_modulus:
        zs = all_roots(den, precision)
        with mpmath.workdps(precision):
            result.smallest_modulus = all(abs(z) >= x_c * (1 - mpmath.mpf(10) ** (-precision // 2))
                                          for z in zs)
    return result


def pole_zero_report(gf, precision: int = DEFAULT_DIGITS, *, seed: int = 0) -> PoleSet:
    poles = all_roots(gf.denominator, precision, seed=seed, with_multiplicity=True)
    zeros = (all_roots(gf.numerator, precision, seed=seed, with_multiplicity=True)
             if gf.numerator.degree >= 1 else [])
    return PoleSet(gf.ell, poles, zeros)
