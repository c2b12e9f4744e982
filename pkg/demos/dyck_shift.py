"""The 2-bracket Dyck shift: periodic points, two measures, and a primeness check."""
import itertools
import math

from shiftlab import dyck

N = 2
# period-n points split by the bracket excess j
for n in range(1, 7):
    print(n, {j: dyck.periodic_count_closed_form(N, n, j) for j in range(-n, n + 1, 2)})

# growth rates creep down to log 3
for n, c, r in dyck.growth_rate_table(N, 30)[::6]:
    print(n, c, round(r, 4), round(math.log(3), 4))

# the two measures disagree on unbalanced cylinders
w = dyck.parse_word("b1 b2 a1")
print(dyck.mu_cylinder(N, w, "plus"), dyck.mu_cylinder(N, w, "minus"))
hp, hm = dyck.local_entropy(N, w)
print(hp, "|", hm)

# they are still probability measures
letters = [1, -1, 2, -2]
print(sum(dyck.mu_cylinder(N, u) for u in itertools.product(letters, repeat=5)))

rep = dyck.dyck_prime_certificate(N, 3)
print(rep["candidates"], rep["rejected_by_congruence"], rep["rejected_by_graded_counts"])
print("certified:", rep["certified"])
