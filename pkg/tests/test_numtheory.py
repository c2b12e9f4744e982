import pytest
from hypothesis import given, strategies as st

from shiftlab.numtheory import (CountSequence, divisors, is_divisor_closed, is_orbit_realizable,
                                mobius, orbit_counts)


def necklaces(k, n):
    """Aperiodic necklaces of length n over k letters, by brute force."""
    seen = set()
    count = 0
    for w in range(k ** n):
        digits = []
        for _ in range(n):
            w, r = divmod(w, k)
            digits.append(r)
        rots = {tuple(digits[i:] + digits[:i]) for i in range(n)}
        if len(rots) == n and min(rots) not in seen:
            seen.add(min(rots))
            count += 1
    return count


def test_mobius_values():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    with pytest.raises(ValueError):
        mobius(0)


@pytest.mark.parametrize("k", [2, 3])
def test_orbit_counts_are_necklaces(k):
    fix = {n: k ** n for n in range(1, 8)}
    orbits = orbit_counts(fix)
    assert orbits == {n: necklaces(k, n) for n in range(1, 8)}


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_realizable_from_any_orbit_data(orbits):
    # build fixed counts from arbitrary orbit counts; they must invert exactly
    fix = {n: sum(m * orbits[m - 1] for m in divisors(n) if m <= len(orbits))
           for n in range(1, len(orbits) + 1)}
    assert orbit_counts(fix) == {n: orbits[n - 1] for n in fix}


def test_unrealizable():
    assert not is_orbit_realizable({1: 1, 2: 2})
    assert not is_orbit_realizable({1: 2, 2: 1})
    assert is_orbit_realizable({1: 2, 2: 4, 4: 16})


def test_divisor_closed():
    assert is_divisor_closed([1, 2, 4, 8])
    assert not is_divisor_closed([1, 2, 6])


def test_count_sequence():
    c = CountSequence.from_periods([1, 3, 4, 7])
    assert c.counts == (1, 3, 4, 7)
    assert c.orbit_counts() == {1: 1, 2: 1, 3: 1, 4: 1}
    assert c == CountSequence([(1, 1), (2, 3), (3, 4), (4, 7)])
    assert c.to_json()[1] == {"period": 2, "count": "3"}
