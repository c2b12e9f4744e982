import itertools
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from shiftlab import BudgetExceeded
from shiftlab import rotations as rot
from shiftlab.numtheory import divisors


def brute_census(system):
    seen, out = set(), {}
    for x in system.elements():
        if x in seen:
            continue
        orbit, y = [x], system(x)
        while y != x:
            orbit.append(y)
            y = system(y)
        seen.update(orbit)
        out[len(orbit)] = out.get(len(orbit), 0) + 1
    return out


def direct_sum_decompositions(n):
    """Unordered families of nontrivial subgroups of Z/n whose sum map is bijective."""
    subs = [frozenset(range(0, n, d)) for d in divisors(n) if d < n]
    count = 0
    for r in range(1, len(subs) + 1):
        for fam in itertools.combinations(subs, r):
            if math.prod(len(s) for s in fam) != n:
                continue
            sums = {sum(t) % n for t in itertools.product(*fam)}
            count += len(sums) == n
    return count


def test_full_shift_census():
    c = rot.orbit_census(rot.CoordinateShift(5, 4))
    assert c.as_dict() == {1: 5, 2: 10, 4: 150}
    assert c.order == 625 and c.fixed(2) == 25 and c.fixed(4) == 625


@pytest.mark.parametrize("system", [
    rot.CoordinateShift(2, 6), rot.CoordinateShift(3, 4, step=2),
    rot.FiniteRotation((4, 6), (1, 2)), rot.FiniteRotation((12,), (8,)),
    rot.CyclicModule(5, (1, 0, 1)), rot.CyclicModule(2, (1, 0, 0, 0, 1)),
])
def test_census_against_brute_force(system):
    assert rot.orbit_census(system).as_dict() == brute_census(system)


def test_module_examples():
    M = rot.CyclicModule(5, (1, 0, 1))
    assert str(M) == "F_5[x]/(x^2 + 1)"
    assert rot.orbit_census(M).as_dict() == {1: 1, 4: 6}
    with pytest.raises(ValueError):
        rot.CyclicModule(5, (2, 1))


def test_parallel_census_identical():
    s = rot.CoordinateShift(5, 4)
    assert rot.orbit_census(s, jobs=1) == rot.orbit_census(s, jobs=8)


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        rot.orbit_census(rot.CoordinateShift(5, 4), max_nodes=100)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 7), st.integers(1, 6), st.integers(0, 5))
def test_census_product_matches_direct_product(m1, s1, m2, s2):
    A = rot.FiniteRotation((m1,), (s1,))
    B = rot.FiniteRotation((m2,), (s2,))
    AB = rot.FiniteRotation((m1, m2), (s1, s2))
    assert rot.census_product(rot.orbit_census(A), rot.orbit_census(B)) == rot.orbit_census(AB)


def test_census_from_fixed_rejects_garbage():
    with pytest.raises(ValueError):
        rot.census_from_fixed(lambda m: 3 if m == 1 else 4, [1, 2])


@pytest.mark.parametrize("p,n", [(5, 4), (2, 4), (3, 6), (7, 3), (2, 6)])
def test_decomposition_reassembles(p, n):
    dec = rot.module_decompose(p, n)
    x = sympy.Symbol("x")
    prod = sympy.Poly(1, x, modulus=p)
    for g, e in dec["factors"]:
        prod *= sympy.Poly(list(g), x, modulus=p) ** e
    assert prod == sympy.Poly(x ** n - 1, x, modulus=p)
    for m in range(1, 3 * n):
        assert math.prod(s["census"].fixed(m) for s in dec["summands"]) == dec["census"].fixed(m)
    assert dec["census"] == rot.orbit_census(rot.CoordinateShift(p, n))
    assert dec["repeated_factors"] == (n % p == 0)


def test_coarse_split():
    parts = rot.coarse_split(5, 4, 1)
    assert parts == [(1, 4), (1, 1, 1, 1)]
    out = rot.split_module(5, 4, parts)
    whole = rot.orbit_census(rot.CoordinateShift(5, 4))
    assert rot.census_product(out[0][1], out[1][1]) == whole
    with pytest.raises(ValueError):
        rot.coarse_split(5, 4, 3)
    with pytest.raises(ValueError):
        rot.split_module(5, 4, [(1, 4), (1, 4)])
    with pytest.raises(ValueError):
        rot.split_module(2, 2, [(1, 1), (1, 1)])   # (x+1)^2: not coprime


def test_decompose_errors():
    with pytest.raises(ValueError):
        rot.module_decompose(4, 2)
    with pytest.raises(ValueError):
        rot.module_decompose(5, 0)


@pytest.mark.parametrize("primes", [[2], [2, 3], [2, 3, 5]])
def test_factorizations_match_subgroup_oracle(primes):
    facs = rot.rotation_factorizations(primes)
    assert len(facs) == direct_sum_decompositions(math.prod(primes))
    for fac in facs:
        assert all(rot.is_cyclic_rotation(f) for f in fac)
        assert math.prod(f.order for f in fac) == math.prod(primes)


def test_bell_numbers_and_odometer():
    sizes = [len(rot.rotation_factorizations(list(sympy.primerange(2, P)))) for P in (3, 4, 6, 8, 12)]
    assert sizes == [1, 2, 5, 15, 52]
    t = rot.odometer_truncation(30)
    assert t["prime_factors"] == 10 and t["factorizations"] == 115975


def test_factorization_errors():
    for bad in ([], [2, 2], [4], [2, 9]):
        with pytest.raises(ValueError):
            rot.rotation_factorizations(bad)
