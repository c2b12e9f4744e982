import itertools
import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab import dyck
from shiftlab.dyck import ZERO, ReducedForm


def letters(N):
    return [c for i in range(1, N + 1) for c in (i, -i)]


def words(N, max_len=8):
    return st.lists(st.sampled_from(letters(N)), max_size=max_len).map(tuple)


def naive_reduce(w):
    """Rewrite ``a_i b_i -> 1`` anywhere until stuck; zero if some ``a_i b_j`` remains."""
    w = list(w)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] > 0 and w[k + 1] < 0:
                if w[k] != -w[k + 1]:
                    return ZERO
                del w[k:k + 2]
                changed = True
                break
    return tuple(w)


def test_parse_and_format():
    assert dyck.parse_word("a1 b2 A3") == (1, -2, 3)
    assert dyck.format_word((1, -2)) == "a1 b2"
    for bad in ["c1", "a0", "ax", "b-1"]:
        with pytest.raises(ValueError):
            dyck.parse_word(bad)
    with pytest.raises(ValueError):
        dyck.check_word(2, (3,))


@settings(max_examples=300)
@given(words(3, 10))
def test_reduce_matches_rewriting(w):
    r = dyck.reduce(w)
    ref = naive_reduce(w)
    if ref is ZERO:
        assert r is ZERO
    else:
        assert r.word() == ref
        assert all(c < 0 for c in r.betas) and all(c > 0 for c in r.alphas)


@settings(max_examples=300)
@given(words(2), words(2))
def test_reduction_is_a_morphism(u, v):
    ru, rv = dyck.reduce(u), dyck.reduce(v)
    assert dyck.reduce(u + v) == ru * rv


def test_zero_absorbs():
    assert ZERO * ReducedForm((), (1,)) is ZERO
    assert ReducedForm((), (1,)) * ZERO is ZERO
    with pytest.raises(ValueError):
        ZERO.word()


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(letters(2)), min_size=1, max_size=6).map(tuple))
def test_admissibility_matches_scan(w):
    assert dyck.is_periodic_admissible(w) == dyck._scan_admissible(w)


def test_admissibility_examples():
    assert dyck.is_periodic_admissible((1, -1))
    assert dyck.is_periodic_admissible((-1, 1, 1))
    assert not dyck.is_periodic_admissible((-1, 2))   # repeated, a2 meets b1
    assert not dyck.is_periodic_admissible((2, -1))
    with pytest.raises(ValueError):
        dyck.is_periodic_admissible(())


@pytest.mark.parametrize("N", [1, 2, 3])
def test_oracle_matches_closed_form(N):
    for n in range(1, 8 if N < 3 else 7):
        got = dyck.periodic_count_oracle(N, n)
        assert got == {j: dyck.periodic_count_closed_form(N, n, j) for j in range(-n, n + 1, 2)}


def test_counts():
    assert dyck.periodic_count_total(2, 2) == 12
    assert dyck.periodic_count_closed_form(2, 4, 0) == 24
    assert dyck.periodic_count_oracle(2, 4, 0) == 24
    assert dyck.periodic_count_oracle(2, 4, 1) == 0
    with pytest.raises(ValueError):
        dyck.periodic_count_closed_form(2, 4, 1)
    with pytest.raises(ValueError):
        dyck.periodic_count_closed_form(2, 0, 0)


def test_oracle_parallel_identical():
    assert dyck.periodic_count_oracle(2, 6, jobs=1) == dyck.periodic_count_oracle(2, 6, jobs=4)


def test_growth_rates_approach_log():
    rows = dyck.growth_rate_table(3, 40)
    assert rows[-1][2] == pytest.approx(math.log(4), abs=0.1)
    # and they decrease towards it from above
    assert all(a[2] > b[2] > math.log(4) for a, b in zip(rows, rows[1:]))


@pytest.mark.parametrize("N", [1, 2, 3])
def test_cylinders_are_probability_measures(N):
    for k in range(1, 5):
        for side in ("plus", "minus"):
            s = sum(dyck.mu_cylinder(N, w, side) for w in itertools.product(letters(N), repeat=k))
            assert s == 1


@settings(max_examples=200)
@given(words(2, 6))
def test_cylinders_are_consistent(w):
    # Kolmogorov consistency: extending on the right redistributes the mass
    for side in ("plus", "minus"):
        total = sum(dyck.mu_cylinder(2, w + (c,), side) for c in letters(2))
        assert total == dyck.mu_cylinder(2, w, side)


def test_cylinder_values():
    assert dyck.mu_cylinder(2, (-1,), "plus") == Fraction(1, 6)
    assert dyck.mu_cylinder(2, (-1,), "minus") == Fraction(1, 3)
    assert dyck.mu_cylinder(2, (1, -2)) == 0
    with pytest.raises(ValueError):
        dyck.mu_cylinder(2, (1,), "both")


def test_local_entropies():
    N = 2
    hp, hm = dyck.local_entropy(N, (1, -1))
    assert (hp.a, hp.b, hm.b) == (1, 0, 0)
    hp, hm = dyck.local_entropy(N, (1,))
    assert hp.b == 0 and hm.b == 1
    assert float(hm) == pytest.approx(math.log(3) + math.log(2))
    hp, hm = dyck.local_entropy(N, (-1, -2, 1))
    assert hp.b == Fraction(1, 3) and hm.b == 0
    with pytest.raises(ValueError):
        dyck.local_entropy(N, (2, -1))


def test_local_entropy_against_direct_decay():
    # -log mu([w^k]) / (k|w|) computed directly for large k
    for w in [(1, 1, -1), (-2, 1, -1), (-1, 1, 1, -1)]:
        hp, hm = dyck.local_entropy(2, w)
        for h, side in ((hp, "plus"), (hm, "minus")):
            k = 60
            direct = -math.log(dyck.mu_cylinder(2, w * k, side)) / (k * len(w))
            assert direct == pytest.approx(float(h), abs=0.05)


def test_sampler_frequencies():
    N, L, draws = 2, 3, 100_000
    import numpy as np
    seeds = np.random.SeedSequence(2024).generate_state(draws)
    freq = Counter(dyck.sample_mu_plus(N, L, int(s)) for s in seeds)
    for w in itertools.product(letters(N), repeat=L):
        p = float(dyck.mu_cylinder(N, w, "plus"))
        sigma = math.sqrt(draws * p * (1 - p)) or 1.0
        assert abs(freq[w] - draws * p) <= 4 * sigma, dyck.format_word(w)


def test_sampler_is_deterministic():
    assert dyck.sample_mu_plus(3, 50, seed=9) == dyck.sample_mu_plus(3, 50, seed=9)
    w = dyck.sample_mu_plus(3, 200, seed=1)
    assert dyck.reduce(w) is not ZERO
    with pytest.raises(ValueError):
        dyck.sample_mu_plus(2, 0)


@pytest.mark.parametrize("N,k", [(2, 3), (3, 2), (5, 1)])
def test_prime_certificate(N, k):
    rep = dyck.dyck_prime_certificate(N, k)
    assert rep["certified"]
    assert [s["z"] for s in rep["survivors"]] == [(1,) * (k + 1)]
    assert rep["rejected_by_congruence"] + len(rep["rejected_by_graded_counts"]) + 1 == rep["candidates"]


def test_prime_certificate_details():
    rep = dyck.dyck_prime_certificate(2, 3)
    assert rep["periods"] == [1, 2, 4, 8] and rep["top_counts"] == [2, 4, 16, 256]
    assert rep["candidates"] == 270 and rep["rejected_by_congruence"] == 268
    assert rep["comparison_rejections"] == 0
    (bad,) = rep["rejected_by_graded_counts"]
    assert bad["divisibility_fails_at"] == [4, 8]
    with pytest.raises(ValueError):
        dyck.dyck_prime_certificate(4, 2)
