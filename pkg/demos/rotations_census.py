"""Orbit censuses of the 5-shift over Z/4 and its module pieces."""
from shiftlab import rotations as rot

whole = rot.orbit_census(rot.CoordinateShift(5, 4))
print(whole)

dec = rot.module_decompose(5, 4)
for s in dec["summands"]:
    print(s["module"], s["census"])

# the two-piece split (x^2 - 1)(x^2 + 1)
parts = rot.split_module(5, 4, rot.coarse_split(5, 4, 2))
for M, c in parts:
    print(M, c)
print(rot.census_product(parts[0][1], parts[1][1]) == whole)

# squarefree rotations factor once per set partition of the primes
for fac in rot.rotation_factorizations([2, 3, 5]):
    print(" x ".join(f"Z/{r.order}" for r in fac))
print(rot.odometer_truncation(20))
