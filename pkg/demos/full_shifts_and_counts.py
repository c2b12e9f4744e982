"""Periodic point counts of full shifts, and what they can and cannot see."""
from shiftlab.numtheory import CountSequence
from shiftlab.sft import (fixed_points, full_shift, golden_mean, periodically_equivalent,
                          product_sft, sublattices_of_index)
from shiftlab.zeta import count_sequence_factorizations, to_transfer_matrix, zeta_series

# Every sublattice of index k in Z^2 fixes exactly n^k points of the n-shift.
for L in sublattices_of_index(2, 4):
    print(L, fixed_points(full_shift(3, 2), L))

# The 6-shift and the product of the 2- and 3-shifts share all counts.
six = full_shift(6, 1)
two_three = product_sft(full_shift(2, 1), full_shift(3, 1))
print(periodically_equivalent(six, two_three, 8))

# Zeta function of the golden mean shift: Fibonacci numbers.
print([int(c) for c in zeta_series(to_transfer_matrix(golden_mean()), 10)])

# Splitting count sequences. 6^n splits as 2^n * 3^n ...
c6 = CountSequence.from_periods([6 ** n for n in range(1, 9)])
pairs6 = count_sequence_factorizations(c6, 8)
print(len(pairs6), "realizable pairs")
print([p.a.counts for p in pairs6 if p.a.counts == tuple(2 ** n for n in range(1, 9))])

# ... but 2^n also has realizable nontrivial splits, so counts alone don't
# prove the 2-shift is prime. Only the 2-power periods are clean.
c2 = CountSequence.from_periods([2 ** n for n in range(1, 9)])
pairs = count_sequence_factorizations(c2, 8)
print(len(pairs), "pairs, nontrivial:", sum(not p.trivial for p in pairs))
print(pairs[1].a.counts, "x", pairs[1].b.counts)
chain = CountSequence([(n, 2 ** n) for n in (1, 2, 4, 8)])
print([(p.a.counts, p.b.counts) for p in count_sequence_factorizations(chain)])
