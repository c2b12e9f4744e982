"""Heights of proper 3-colorings: lifts, cocycles and the max-slope points."""
import numpy as np

from shiftlab.chessboard import (aut_slope_sign, height_cocycle, lift_height, max_slope_points,
                                 periodic_extension)
from shiftlab.sft import Sublattice

box = np.array([[0, 1, 0],
                [1, 2, 1],
                [0, 1, 2]])
print(lift_height(box))

# extend to a 6-periodic coloring and read off the cocycle
x = periodic_extension(box, 6)
print([height_cocycle(x, v) for v in [(1, 0), (0, 1), (2, 3), (6, 0)]])

# only three colorings climb as fast as possible
for p in max_slope_points(2, Sublattice.diagonal(3, 3)):
    print(p.values, height_cocycle(p, (3, 0)), height_cocycle(p, (0, 3)))

# colour rotations keep the slope, reflections flip it
print({name: aut_slope_sign(name) for name in ("rot1", "neg", "neg_rot2")})
