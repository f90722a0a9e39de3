from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqfree.genfun import rational_gf
from sqfree.poly import IntPolynomial
from sqfree.roots import all_roots, dominant_real_root, pole_zero_report, squarefree_factors

X_C = {0: "0.333333333", 1: "0.500000000", 2: "0.618033989", 3: "0.682327804",
       4: "0.724491959", 6: "0.750653202", 8: "0.757826433", 10: "0.757826433"}


@pytest.mark.parametrize("ell", sorted(X_C))
def test_dominant_root(ell):
    r = dominant_real_root(rational_gf(ell).denominator, ell=ell)
    assert r.decimal(9) == X_C[ell]
    assert r.smallest_modulus


def test_golden_ratio():
    r = dominant_real_root(IntPolynomial([1, -1, -1]), 40)
    with mpmath.workdps(45):
        assert abs(r.x_c - (mpmath.sqrt(5) - 1) / 2) < mpmath.mpf(10) ** -38


def test_interval_is_certified():
    r = dominant_real_root(IntPolynomial([1, 0, 0, -1, -1, -1, -1]))
    lo, hi = r.certified_interval
    p = IntPolynomial([1, 0, 0, -1, -1, -1, -1])
    assert p(lo) * p(hi) < 0
    assert r.decimal(9) == "0.724491959"


def test_no_root_in_unit_interval():
    with pytest.raises(ValueError):
        dominant_real_root(IntPolynomial([1, 1]))


def test_double_root():
    p = IntPolynomial([1, -2]) * IntPolynomial([1, -2]) * IntPolynomial([1, 0, 1])
    zs = all_roots(p, 30, with_multiplicity=True)
    mults = sorted(m for _, m in zs)
    assert mults == [1, 1, 2]
    r = dominant_real_root(p)
    assert r.decimal(6) == "0.500000"


def test_squarefree_factors():
    q = IntPolynomial([-1, 1]) * IntPolynomial([-1, 1]) * IntPolynomial([2, 1])
    facs = squarefree_factors(q)
    assert sorted((f.degree, m) for f, m in facs) == [(1, 1), (1, 2)]


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_roots_agree_with_numpy(c):
    p = IntPolynomial(c)
    if p.degree < 1:
        return
    ours = [complex(z) for z in all_roots(p, 30)]
    ref = np.roots(list(reversed(c)))
    assert len(ours) == len(ref)
    # every reference root is matched by one of ours (clusters loosen this near multiple roots)
    for z in ref:
        assert min(abs(z - w) for w in ours) < 1e-4


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6).filter(lambda c: c[-1] != 0))
def test_conjugate_closed(c):
    zs = all_roots(IntPolynomial(c), 30)
    with mpmath.workdps(40):
        for z in zs:
            assert min(abs(mpmath.conj(z) - w) for w in zs) < mpmath.mpf(10) ** -20


def test_seed_independence():
    p = rational_gf(6).denominator
    a = [complex(z) for z in all_roots(p, 30, seed=0)]
    b = [complex(z) for z in all_roots(p, 30, seed=7)]
    assert np.allclose(a, b, atol=1e-20)


def test_pole_report():
    ps = pole_zero_report(rational_gf(8))
    assert ps.pole_count == 19
    assert len(ps.zeros) == 38
    data = ps.to_json()
    assert len(data["poles"]) == 19
    # most poles crowd the unit circle
    assert ps.near_unit_circle(0.3) > 0.5


@pytest.mark.parametrize("ell", [2, 4, 6, 8])
def test_zeros_and_poles_are_disjoint(ell):
    ps = pole_zero_report(rational_gf(ell))
    with mpmath.workdps(30):
        gap = min(abs(p - z) for p, _ in ps.poles for z, _ in ps.zeros)
    assert gap > 1e-10
