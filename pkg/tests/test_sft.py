import itertools
import math

import pytest
from hypothesis import given, strategies as st

from shiftlab import BudgetExceeded
from shiftlab.chessboard import chessboard_sft
from shiftlab.numtheory import orbit_counts
from shiftlab.sft import (Pattern, SftSpec, Sublattice, TorusConfiguration, box_patterns,
                          count_box_patterns, entropy_box_estimate, fixed_points, full_shift,
                          golden_mean, hermite_normal_form, periodic_count_sequence,
                          periodically_equivalent, product_sft, sublattices_of_index)
from shiftlab.specfile import SpecFormatError, dump_spec, parse_spec


def brute_fixed(X, L):
    """Every assignment of the fundamental domain, filtered by validity."""
    n = 0
    for vals in itertools.product(X.alphabet, repeat=L.index):
        n += TorusConfiguration(L, vals).is_valid(X)
    return n


def sublattice_count(d, k):
    # HNF count: prod over columns j of diag_j^j (0-based), summed over diagonals
    total = 0
    for diag in itertools.product(range(1, k + 1), repeat=d):
        if math.prod(diag) == k:
            total += math.prod(a ** j for j, a in enumerate(diag))
    return total


def test_full_shift_basics():
    X = full_shift(2, 1)
    assert X.alphabet == (0, 1) and not X.forbidden
    assert fixed_points(full_shift(1, 3), Sublattice.diagonal(2, 1, 2)) == 1


@pytest.mark.parametrize("d,k,expected", [(1, 5, 1), (2, 2, 3), (2, 4, 7), (2, 6, 12), (3, 4, 35)])
def test_sublattice_counts(d, k, expected):
    lat = sublattices_of_index(d, k)
    assert len(lat) == expected == sublattice_count(d, k)
    assert len(set(lat)) == len(lat)
    assert all(L.index == k for L in lat)


def test_sublattices_reject_large_dimension():
    with pytest.raises(ValueError):
        sublattices_of_index(4, 2)


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=2, max_size=4))
def test_hnf_is_canonical(gens):
    try:
        B = hermite_normal_form(gens)
    except ValueError:
        return  # not full rank
    # adding integer combinations of generators does not change the lattice
    shuffled = [tuple(a + 2 * b for a, b in zip(gens[0], gens[1]))] + gens[1:]
    assert hermite_normal_form(shuffled) == B
    L = Sublattice(B)
    assert all(L.contains(g) for g in gens)
    det = abs(B[0][0] * B[1][1])
    assert L.index == det


@given(st.tuples(st.integers(-30, 30), st.integers(-30, 30)))
def test_reduce_lands_in_domain(v):
    L = Sublattice(((3, 1), (0, 4)))
    r = L.reduce(v)
    assert r in set(L.cells())
    assert L.contains(tuple(a - b for a, b in zip(v, r)))
    assert L.reduce(r) == r


@pytest.mark.parametrize("L", [Sublattice.diagonal(2, 2), Sublattice(((2, 1), (0, 2))),
                               Sublattice(((3, 1), (0, 2))), Sublattice.diagonal(1, 5)])
def test_fixed_points_match_brute_force(L):
    for X in (chessboard_sft(2), full_shift(2, 2)):
        assert fixed_points(X, L) == brute_fixed(X, L)


def test_fixed_point_examples():
    assert fixed_points(chessboard_sft(2), Sublattice.diagonal(2, 2)) == 18
    assert fixed_points(full_shift(3, 2), Sublattice(((2, 1), (0, 2)))) == 81
    X = product_sft(chessboard_sft(1), chessboard_sft(1))
    assert fixed_points(X, Sublattice.diagonal(3)) == 36


def test_enumerate_agrees_with_count():
    X = chessboard_sft(2)
    for L in sublattices_of_index(2, 6):
        pts = fixed_points(X, L, "enumerate")
        assert len(pts) == fixed_points(X, L)
        assert all(p.is_valid(X) for p in pts)
        assert len(set(p.values for p in pts)) == len(pts)


def test_pinned_cells():
    X = chessboard_sft(2)
    L = Sublattice.diagonal(3, 3)
    pinned = fixed_points(X, L, "enumerate", pinned={(0, 0): 1})
    assert pinned and all(p[(0, 0)] == 1 for p in pinned)
    assert 3 * len(pinned) == fixed_points(X, L)


def test_periodic_sequences():
    assert periodic_count_sequence(full_shift(2, 1), 4).counts == (2, 4, 8, 16)
    assert periodic_count_sequence(golden_mean(), 4).counts == (1, 3, 4, 7)
    seq = periodic_count_sequence(chessboard_sft(1), 8)
    assert seq.counts == tuple(2 ** n + 2 * (-1) ** n for n in range(1, 9))
    orbit_counts(seq.as_dict())  # raises if not realizable


def test_two_dimensional_sequence_keys():
    seq = periodic_count_sequence(full_shift(2, 2), 3)
    assert len(seq) == 1 + 3 + 4
    assert all(c == 2 ** L.index for L, c in seq)


def test_product_multiplicativity():
    X, Y = chessboard_sft(2), full_shift(2, 2)
    XY = product_sft(X, Y)
    assert len(XY.alphabet) == 6
    for k in range(1, 5):
        for L in sublattices_of_index(2, k):
            assert fixed_points(XY, L) == fixed_points(X, L) * fixed_points(Y, L)
    with pytest.raises(ValueError):
        product_sft(X, golden_mean())


def test_product_with_trivial_factor():
    X = golden_mean()
    XT = product_sft(X, full_shift(1, 1))
    assert periodic_count_sequence(XT, 6) == periodic_count_sequence(X, 6)


def test_periodic_equivalence():
    six = full_shift(6, 1)
    two_three = product_sft(full_shift(2, 1), full_shift(3, 1))
    assert periodically_equivalent(six, two_three, 6).equivalent
    res = periodically_equivalent(full_shift(2, 1), golden_mean(), 4)
    assert not res.equivalent and res.witness == 1 and res.counts == (2, 1)
    X = chessboard_sft(2)
    assert periodically_equivalent(X, X, 4).equivalent


def test_box_patterns_and_transfer_count_agree():
    X = chessboard_sft(2)
    for shape in [(2, 2), (3, 3), (4, 4), (2, 5)]:
        assert box_patterns(X, shape) == count_box_patterns(X, shape)
    assert count_box_patterns(X, (4, 4)) == 7812


def test_entropy_estimates():
    assert entropy_box_estimate(full_shift(2, 2), 2) == pytest.approx(math.log(2))
    # a 1-D window of length 9 carries 3 * 2^8 colorings
    assert entropy_box_estimate(chessboard_sft(1), 4) == pytest.approx(math.log(3 * 2 ** 8) / 9)
    est = [entropy_box_estimate(chessboard_sft(2), n) for n in (2, 3, 4)]
    assert est[0] >= est[1] >= est[2] > 0


def test_budget_is_an_error():
    with pytest.raises(BudgetExceeded) as exc:
        fixed_points(chessboard_sft(2), Sublattice.diagonal(6, 6), max_nodes=10_000)
    assert exc.value.bound == 10_000


def test_parallel_results_identical():
    X = chessboard_sft(2)
    L = Sublattice(((4, 1), (0, 3)))
    a = fixed_points(X, L, "enumerate", jobs=1)
    b = fixed_points(X, L, "enumerate", jobs=8)
    assert [p.values for p in a] == [p.values for p in b]
    assert box_patterns(X, (3, 4), jobs=1) == box_patterns(X, (3, 4), jobs=8)


def test_pattern_validation():
    with pytest.raises(ValueError):
        Pattern(())
    with pytest.raises(ValueError):
        SftSpec(1, (0, 1), frozenset([Pattern.from_dict({(0,): 2})]))
    with pytest.raises(ValueError):
        SftSpec(2, (0, 1), frozenset([Pattern.from_dict({(0,): 1})]))


def test_spec_file_round_trip():
    X = chessboard_sft(2)
    Y = parse_spec(dump_spec(X))
    assert Y.forbidden == X.forbidden and Y.alphabet == X.alphabet
    P = product_sft(golden_mean(), golden_mean())
    assert parse_spec(dump_spec(P)).forbidden == P.forbidden


def test_spec_file_errors():
    text = "2\n0 1\n(0,0)=1\n(1,0)=1\n"
    assert len(parse_spec(text).forbidden) == 1
    for bad in ["", "x\n0 1\n", "2\n0 1\n(0)=1\n", "2\n0 1\n(0,0)=1\n(0,0)=0\n",
                "1\n0 1\n(0)=7\n", "1\n0 1\n0=1\n"]:
        with pytest.raises(SpecFormatError):
            parse_spec(bad)
