from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqfree import BudgetExceeded, is_square_free
from sqfree.enumerate import enumerate_words
from sqfree.morphism import (DegenerateEigenspace, HeterogeneousCounts, SubstitutionTriple,
                             build_sigma_triple, fixture_paths, growth_lower_bound, load_triple,
                             pf_frequencies, substitution_matrix, verify_triple)

FIXTURES = {p.stem: p for p in fixture_paths()}


def test_all_fixtures_present():
    assert set(FIXTURES) == {"morphism_m12", "pair_m18", "pair_m29", "pair_m30_alpha1",
                             "pair_m30_alpha2", "pair_m33_alpha1", "pair_m33_alpha2", "pair_m35"}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_matrix_and_frequencies(name):
    triple, raw = load_triple(FIXTURES[name])
    M = substitution_matrix(triple)
    assert M.tolist() == raw["expected"]["matrix"]
    assert [str(f) for f in pf_frequencies(M)] == raw["expected"]["frequencies"]


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_verifies(name):
    triple, _ = load_triple(FIXTURES[name])
    cert = verify_triple(triple, 3)
    assert cert.valid
    assert cert.label == "checked to input length 3"


def test_m12_matrix():
    triple, _ = load_triple(FIXTURES["morphism_m12"])
    assert substitution_matrix(triple).tolist() == [[4, 4, 3], [4, 4, 5], [4, 4, 4]]


def test_m18_growth():
    triple, _ = load_triple(FIXTURES["pair_m18"])
    g = verify_triple(triple, 3).growth
    assert (g.k, g.m) == (2, 18)
    assert abs(float(g.value) - 2 ** (1 / 17)) < 1e-15


def test_identity_triple():
    t = SubstitutionTriple(("a",), ("b",), ("c",))
    assert substitution_matrix(t).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(DegenerateEigenspace):
        pf_frequencies(substitution_matrix(t))
    assert verify_triple(t, 4).growth is None


def test_growth_existence_only():
    assert growth_lower_bound(1, 12).existence_only
    with pytest.raises(ValueError):
        growth_lower_bound(2, 1)


def test_invalid_triple_gives_witness():
    t = SubstitutionTriple(("ab",), ("ba",), ("cc",))
    cert = verify_triple(t, 3)
    assert not cert.valid
    w = cert.witness
    assert w["square"] == w["image"][w["square_start"]:w["square_start"] + 2 * w["period"]]
    assert not is_square_free(w["image"])


def test_heterogeneous_counts():
    t = SubstitutionTriple(("abc", "acb"), ("bca", "bac"), ("cab", "cba"))
    substitution_matrix(t)  # same counts, fine
    t2 = SubstitutionTriple(("abc", "aba"), ("bca", "bac"), ("cab", "cba"))
    with pytest.raises(HeterogeneousCounts):
        substitution_matrix(t2)


def test_unequal_lengths_rejected():
    with pytest.raises(ValueError):
        SubstitutionTriple(("ab",), ("bca",), ("cab",))


def test_check_budget():
    triple, _ = load_triple(FIXTURES["pair_m18"])
    with pytest.raises(BudgetExceeded):
        verify_triple(triple, 6, budget=100)


def test_sigma_triple_rebuilds_fixture():
    triple, raw = load_triple(FIXTURES["pair_m18"])
    g = raw["generators"]["a"]
    rebuilt = build_sigma_triple(g)
    assert rebuilt.images == triple.images


def test_json_roundtrip():
    triple, _ = load_triple(FIXTURES["pair_m35"])
    assert SubstitutionTriple.from_json(triple.to_json()) == triple


@given(st.lists(st.lists(st.integers(0, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_frequencies_are_a_fixed_point(cols):
    # columns with a common sum m; the frequency vector must satisfy M f = m f
    m = 10
    cols = [c[:2] + [m - c[0] - c[1]] for c in cols if c[0] + c[1] <= m]
    if len(cols) < 3:
        return
    rows = [[cols[x][y] for x in range(3)] for y in range(3)]
    try:
        f = pf_frequencies(rows)
    except DegenerateEigenspace:
        return
    assert sum(f) == 1
    for y in range(3):
        assert sum(rows[y][x] * f[x] for x in range(3)) == m * f[y]


@pytest.mark.parametrize("name", ["pair_m18", "pair_m35"])
def test_images_of_long_words_are_square_free(name):
    # beyond the certified depth, spot check a few longer inputs
    triple, _ = load_triple(FIXTURES[name])
    for w in list(enumerate_words(6))[:20]:
        assert is_square_free(triple.apply(w, [i % 2 for i in range(6)]))


def test_sigma_symmetric_triples_are_circulant():
    for name in ("pair_m18",):
        triple, raw = load_triple(FIXTURES[name])
        M = substitution_matrix(triple).tolist()
        assert M[1] == [M[0][2], M[0][0], M[0][1]]
        assert pf_frequencies(M) == (Fraction(1, 3),) * 3
    # any single generator used for all three letters gives a circulant matrix
    _, raw = load_triple(FIXTURES["pair_m35"])
    t = build_sigma_triple(raw["generators"]["a"])
    assert verify_triple(t, 3).valid
    assert pf_frequencies(substitution_matrix(t)) == (Fraction(1, 3),) * 3


def test_morphism_iterates():
    triple, _ = load_triple(FIXTURES["morphism_m12"])
    w = "c"
    target = (Fraction(11, 36), Fraction(13, 36), Fraction(12, 36))
    for _ in range(4):
        w = str(triple.apply(w))
        assert is_square_free(w)
        counts = [w.count(x) for x in "abc"]
        err = max(abs(Fraction(c, len(w)) - f) for c, f in zip(counts, target))
        assert err <= Fraction(2, len(w)) * 12


@pytest.mark.parametrize("name", ["pair_m18", "pair_m35"])
def test_subsets_verify(name):
    triple, _ = load_triple(FIXTURES[name])
    for i in range(triple.k):
        assert verify_triple(triple.subset([i]), 3).valid
