"""Letter-weighted ensembles: s_n(q) = sum_k s_{n,k} q^k, finite-size free energies,
the critical curve x_c(q) and the entropy function P(eps) as a Legendre-Fenchel
transform of the free energy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from sqfree.enumerate import CountTable

X_C = 0.768189  # critical point of square-free words, from long-series extrapolation

# density exponents of the rigorous free-energy envelopes
LOWER_SLOPES = (Fraction(64, 233), Fraction(13, 36))
UPPER_SLOPES = (Fraction(1780, 6481), Fraction(469, 1201))
EPS_MINUS = Fraction(1780, 6481)
EPS_PLUS = Fraction(469, 1201)


def default_q_grid(points: int = 81, lo: float = 1e-2, hi: float = 1e2) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), points)


def _log_terms(table: CountTable, n: int, q: float):
    row = table.row(n)
    lq = math.log(q)
    return [(k, math.log(c) + k * lq) for k, c in enumerate(row) if c > 0]


def partition_polynomial(table: CountTable, n: int, q: float) -> float:
    """``log s_n(q)``, summed with a max shift so large or tiny ``q**k`` cannot overflow."""
    if q <= 0:
        raise ValueError("q must be positive")
    terms = _log_terms(table, n, q)
    top = max(t for _, t in terms)
    return top + math.log(math.fsum(math.exp(t - top) for _, t in terms))


def finite_free_energy(table: CountTable, n: int, q: float) -> float:
    if n <= 0:
        raise ValueError("free energy needs n >= 1")
    return partition_polynomial(table, n, q) / n


def mean_density(table: CountTable, n: int, q: float) -> float:
    """``q d/dq F_n(q)``: the mean letter-a density in the q-weighted ensemble."""
    terms = _log_terms(table, n, q)
    top = max(t for _, t in terms)
    w = [(k, math.exp(t - top)) for k, t in terms]
    return math.fsum(k * x for k, x in w) / (n * math.fsum(x for _, x in w))


def argmax_k(table: CountTable, n: int, q) -> int:
    """Least ``k`` maximising ``s_{n,k} q**k`` (exact comparison)."""
    qf = Fraction(q)
    row = table.row(n)
    best_k, best = 0, None
    for k, c in enumerate(row):
        v = c * qf**k
        if best is None or v > best:
            best_k, best = k, v
    return best_k


def free_energy_bounds(q: float, x_c: float = X_C) -> tuple:
    """Rigorous envelope ``lower <= F(q) <= upper``."""
    lq = math.log(q)
    lower = max(float(a) * lq for a in LOWER_SLOPES)
    upper = -math.log(x_c) + max(float(a) * lq for a in UPPER_SLOPES)
    return lower, upper


def critical_bounds(q: float, x_c: float = X_C) -> tuple:
    """``x_c min{q^-1780/6481, q^-469/1201} <= x_c(q) <= min{q^-64/233, q^-13/36}``."""
    lo = x_c * min(q ** -float(a) for a in UPPER_SLOPES)
    hi = min(q ** -float(a) for a in LOWER_SLOPES)
    return lo, hi


@dataclass
class ThermoTable:
    n_used: list
    q_grid: np.ndarray
    F: np.ndarray  # F[i, j] = F_{n_used[i]}(q_grid[j])
    argmax: np.ndarray

    def second_differences(self) -> np.ndarray:
        """Second differences of F_n in log q (non-uniform grid safe)."""
        x = np.log(self.q_grid)
        h1 = np.diff(x)[:-1]
        h2 = np.diff(x)[1:]
        f = self.F
        return 2 * (h1 * f[:, 2:] - (h1 + h2) * f[:, 1:-1] + h2 * f[:, :-2]) / (h1 * h2 * (h1 + h2))

    def to_rows(self) -> list:
        rows = []
        for i, n in enumerate(self.n_used):
            for j, q in enumerate(self.q_grid):
                rows.append({"n": n, "q": f"{q:.10g}", "F": f"{self.F[i, j]:.12g}",
                             "argmax_k": int(self.argmax[i, j])})
        return rows


def thermo_table(table: CountTable, n_used: Sequence[int], q_grid=None) -> ThermoTable:
    q_grid = default_q_grid() if q_grid is None else np.asarray(q_grid, dtype=float)
    F = np.array([[finite_free_energy(table, n, q) for q in q_grid] for n in n_used])
    am = np.array([[argmax_k(table, n, q) for q in q_grid] for n in n_used])
    return ThermoTable(list(n_used), q_grid, F, am)


@dataclass
class CurvePoint:
    q: float
    x_c: Optional[float]
    uncertainty: Optional[float]
    lower: float
    upper: float
    note: str = ""

    @property
    def within_bounds(self) -> Optional[bool]:
        if self.x_c is None:
            return None
        slack = self.uncertainty or 0.0
        return self.lower - slack <= self.x_c <= self.upper + slack


@dataclass
class CriticalCurve:
    method: str
    n_used: int
    points: list = field(default_factory=list)

    def to_rows(self) -> list:
        return [{"q": f"{p.q:.10g}", "x_c": "" if p.x_c is None else f"{p.x_c:.10g}",
                 "uncertainty": "" if p.uncertainty is None else f"{p.uncertainty:.3g}",
                 "lower_bound": f"{p.lower:.10g}", "upper_bound": f"{p.upper:.10g}",
                 "within_bounds": "" if p.within_bounds is None else str(p.within_bounds).lower(),
                 "note": p.note}
                for p in self.points]


def weighted_series(table: CountTable, q) -> list:
    """Exact coefficients ``s_n(q)`` for n = 0..max_n.

    A float q is read through its shortest decimal form, so 0.2 means 1/5; short
    decimals keep the Pade systems small.
    """
    qf = Fraction(str(q)) if isinstance(q, float) else Fraction(q)
    return [sum(c * qf**k for k, c in enumerate(row)) for row in table.rows]


def phase_q_grid(decades: int = 2) -> list:
    """1-2-5 sequence over ``[10^-decades, 10^decades]``."""
    out = []
    for e in range(-decades, decades + 1):
        for m in (1, 2, 5):
            if e == decades and m > 1:
                break
            out.append(float(Fraction(m) * Fraction(10) ** e))
    return out


def critical_curve(table: CountTable, q_grid: Sequence[float], estimator: str = "dlog",
                   *, family: str = "diag2") -> CriticalCurve:
    """Estimate ``x_c(q)`` per q, either by Dlog-Pade extrapolation of ``s_n(q)``
    (``"dlog"``) or as the finite-size value ``exp(-F_n(q))`` (``"finite"``)."""
    from sqfree.analysis import InsufficientApproximants, pooled_estimate

    n = table.max_n
    curve = CriticalCurve(estimator, n)
    for q in q_grid:
        q = float(q)
        lo, hi = critical_bounds(q)
        if estimator == "finite":
            curve.points.append(CurvePoint(q, math.exp(-finite_free_energy(table, n, q)),
                                           None, lo, hi))
            continue
        if estimator != "dlog":
            raise ValueError(f"unknown estimator {estimator!r}")
        try:
            est = pooled_estimate(weighted_series(table, q), family, with_amplitude=False,
                                  x_max=2 * hi)
            pt = CurvePoint(q, est.x_c, est.spread["x_c"], lo, hi)
        except InsufficientApproximants as exc:
            pt = CurvePoint(q, None, None, lo, hi, note=str(exc))
        if pt.within_bounds is False:
            pt.note = "outside rigorous bounds"
        curve.points.append(pt)
    return curve


@dataclass
class EntropyPoint:
    eps: float
    P: float
    q: float


@dataclass
class EntropyCurve:
    n_used: int
    points: list
    window: tuple = (float(EPS_MINUS), float(EPS_PLUS))

    @property
    def eps(self) -> np.ndarray:
        return np.array([p.eps for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.P for p in self.points])

    def second_differences(self) -> np.ndarray:
        x, f = self.eps, self.values
        h1, h2 = np.diff(x)[:-1], np.diff(x)[1:]
        return 2 * (h1 * f[2:] - (h1 + h2) * f[1:-1] + h2 * f[:-2]) / (h1 * h2 * (h1 + h2))

    def maximiser(self) -> EntropyPoint:
        return max(self.points, key=lambda p: p.P)

    def to_rows(self) -> list:
        return [{"eps": f"{p.eps:.10g}", "P": f"{p.P:.12g}", "q": f"{p.q:.10g}"} for p in self.points]


def _golden(f, a, b, tol=1e-12, max_iter=200):
    """Minimise a unimodal ``f`` on ``[a, b]``."""
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def legendre_point(table: CountTable, n: int, eps: float, q_grid=None) -> EntropyPoint:
    """``inf_q F_n(q) - eps log q`` over the q grid, refined by golden section in log q."""
    q_grid = default_q_grid() if q_grid is None else np.asarray(q_grid, dtype=float)
    logs = np.log(q_grid)
    obj = lambda t: finite_free_energy(table, n, math.exp(t)) - eps * t
    vals = [obj(t) for t in logs]
    i = int(np.argmin(vals))
    a = logs[max(i - 1, 0)]
    b = logs[min(i + 1, len(logs) - 1)]
    t, v = _golden(obj, a, b)
    if vals[i] < v:
        t, v = logs[i], vals[i]
    return EntropyPoint(float(eps), float(v), float(math.exp(t)))


def entropy_curve(table: CountTable, eps_grid: Sequence[float], n: Optional[int] = None,
                  q_grid=None) -> EntropyCurve:
    """Finite-size entropy function ``P_n(eps)`` on ``eps_grid`` inside (eps_-, eps_+)."""
    n = table.max_n if n is None else n
    lo, hi = float(EPS_MINUS), float(EPS_PLUS)
    for e in eps_grid:
        if not lo < e < hi:
            raise ValueError(f"eps={e} outside the window ({lo:.6f}, {hi:.6f})")
    return EntropyCurve(n, [legendre_point(table, n, float(e), q_grid) for e in eps_grid])


def default_eps_grid(points: int = 101) -> np.ndarray:
    """Evenly spaced interior points of (eps_-, eps_+), always containing 1/3."""
    lo, hi = float(EPS_MINUS), float(EPS_PLUS)
    grid = np.linspace(lo, hi, points + 2)[1:-1]
    return np.unique(np.append(grid, 1 / 3))
