"""Proper 3-colorings of Z^d and their height functions.

Box colorings are numpy integer arrays whose index ``(i_1, ..., i_d)`` is the
cell with those coordinates (plus an optional origin offset). Periodic
colorings are TorusConfiguration objects. Heights follow the convention
``Ht(x, n) = h(n) - h(0)``, and shifts act by ``(s^m x)_p = x_{p+m}``; with
these the cocycle identity ``Ht(x, n+m) = Ht(x, m) + Ht(s^m x, n)`` holds.
"""

import itertools

import numpy as np

from ._util import DEFAULT_MAX_NODES
from .sft import Pattern, SftSpec, Sublattice, TorusConfiguration, fixed_points


class ImproperColoring(ValueError):
    pass


class ExtensionNotFound(RuntimeError):
    """No periodic extension was produced.

    `exhaustive` is True when the search finished and proved that none exists
    for the requested period.
    """

    def __init__(self, message, exhaustive):
        super().__init__(message)
        self.exhaustive = exhaustive


def chessboard_sft(d):
    """Proper 3-colorings of Z^d as an SFT: no two equal neighbours."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    forb = []
    for i in range(d):
        e = tuple(int(j == i) for j in range(d))
        for c in range(3):
            forb.append(Pattern.from_dict({(0,) * d: c, e: c}))
    return SftSpec(d, (0, 1, 2), frozenset(forb), name=f"chessboard({d})")


def _unit(d, i):
    return tuple(int(j == i) for j in range(d))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def is_proper(c, periodic=False):
    """True iff neighbouring cells differ.

    `c` is a numpy array (a box, or a torus with its own shape when
    `periodic`) or a TorusConfiguration.
    """
    if isinstance(c, TorusConfiguration):
        d = c.lattice.dimension
        return all(c[v] != c[_add(v, _unit(d, i))]
                   for v in c.lattice.cells() for i in range(d))
    a = np.asarray(c)
    if a.size and (a.min() < 0 or a.max() > 2):
        return False
    for ax in range(a.ndim):
        if periodic:
            if a.shape[ax] == 1 or np.any(a == np.roll(a, -1, axis=ax)):
                return False
        elif np.any(np.diff(a, axis=ax) == 0):
            return False
    return True


def _steps(a, ax):
    """Height increments along `ax`: +1 where the colour goes up by one mod 3."""
    diff = np.diff(a, axis=ax) % 3
    if np.any(diff == 0):
        raise ImproperColoring(f"equal neighbours along axis {ax}")
    return np.where(diff == 1, 1, -1)


def lift_height(c, base=None):
    """Integer height field with ``h mod 3 == c`` and unit steps.

    The anchor is the first cell of the array (the lexicographically
    smallest); `base` is the height there and must agree with the colour
    mod 3. Every unit square is checked to have zero loop sum.
    """
    a = np.asarray(c, dtype=np.int64)
    if a.ndim == 0 or a.size == 0:
        raise ValueError("coloring must be a nonempty array")
    anchor = a.flat[0]
    if base is None:
        base = int(anchor)
    elif (base - anchor) % 3:
        raise ValueError(f"base {base} is not congruent to the anchor colour {anchor} mod 3")
    steps = [_steps(a, ax) for ax in range(a.ndim)]
    # staircase path: axis 0 from the anchor, then axis 1, and so on
    h = np.full(a.shape, base, dtype=np.int64)
    nd = a.ndim
    for ax in range(nd):
        s = steps[ax][(slice(None),) * (ax + 1) + (slice(0, 1),) * (nd - ax - 1)]
        pad = [(0, 0)] * nd
        pad[ax] = (1, 0)
        h = h + np.pad(np.cumsum(s, axis=ax), pad)
    for ax in range(a.ndim):
        if not np.array_equal(np.diff(h, axis=ax), steps[ax]):
            raise ImproperColoring("height steps do not close up around a unit square")
    return h


def _inc(x, p, i):
    """Height step from p to p + e_i in a periodic coloring."""
    d = (x[_add(p, _unit(len(p), i))] - x[p]) % 3
    if d == 0:
        raise ImproperColoring(f"equal neighbours at {p} along axis {i}")
    return 1 if d == 1 else -1


def height_cocycle(x, n):
    """``Ht(x, n) = h(n) - h(0)`` for a periodic proper coloring x.

    Evaluated along a monotone lattice path; the value does not depend on the
    path because x lifts to a height function on all of Z^d.
    """
    d = x.lattice.dimension
    n = tuple(int(v) for v in n)
    if len(n) != d:
        raise ValueError("displacement has the wrong dimension")
    p = (0,) * d
    total = 0
    for i in range(d):
        e = _unit(d, i)
        for _ in range(abs(n[i])):
            if n[i] > 0:
                total += _inc(x, p, i)
                p = _add(p, e)
            else:
                p = tuple(a - b for a, b in zip(p, e))
                total -= _inc(x, p, i)
    return total


def torus_slopes(x):
    """Height cocycle on each generator of the stabilizing lattice.

    Zero slopes mean the lift is itself periodic; otherwise the lift is
    quasi-periodic and the slopes record how it drifts.
    """
    return tuple(height_cocycle(x, g) for g in x.lattice.generators)


def torus_lift(x):
    """Heights on the fundamental domain, anchored at ``h(0) = x_0``."""
    if not is_proper(x):
        raise ImproperColoring("coloring is not proper")
    return {c: int(x[(0,) * len(c)]) + height_cocycle(x, c) for c in x.lattice.cells()}


def glue(x, N, k0=0):
    """Split a slab coloring at level N along the last axis.

    `x` is indexed by cells; index j on the last axis is level ``k0 + j``.
    Returns ``(y, z)`` where z climbs by +1 mod 3 along the last axis and
    matches x at level N, and y equals x at levels >= N and z below.
    """
    a = np.asarray(x, dtype=np.int64)
    if not is_proper(a):
        raise ImproperColoring("slab coloring is not proper")
    levels = np.arange(a.shape[-1]) + k0
    j = N - k0
    if not 0 <= j < a.shape[-1]:
        raise ValueError(f"level {N} is outside the slab")
    cut = a[..., j:j + 1]
    z = (cut + (levels - N)) % 3
    y = np.where(levels >= N, a, z)
    return y, z


def slope_coloring(d, L, c=0):
    """The L-periodic coloring ``x_n = (n_1 + ... + n_d + c) mod 3``."""
    return TorusConfiguration(L, tuple((sum(v) + c) % 3 for v in L.cells()))


def max_slope_points(d, L, *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """Every L-periodic proper coloring with ``Ht(x, v) = sum(v)`` on L.

    Checking the generators is enough since Ht restricted to the stabilizer
    is additive. Needs every generator's coordinate sum divisible by 3.
    """
    if L.dimension != d:
        raise ValueError("sublattice dimension differs from d")
    if any(sum(g) % 3 for g in L.generators):
        raise ValueError("every generator of L must have coordinate sum divisible by 3")
    pts = fixed_points(chessboard_sft(d), L, "enumerate", jobs=jobs, max_nodes=max_nodes)
    return [x for x in pts
            if all(height_cocycle(x, g) == sum(g) for g in L.generators)]


def periodic_extension(p, K=None, *, max_nodes=DEFAULT_MAX_NODES):
    """A ``K Z^d``-periodic proper coloring agreeing with the box pattern p.

    `p` is a ``(2k+1)^d`` array for the box ``[-k, k]^d``. The heights of p
    are extended to the torus of side K by the smallest 1-Lipschitz
    extension ``h(n) = min_u (h(u) + dist(n, u))``; for even ``K >= 4k``
    this is exact. Otherwise, or if the check fails, the box is pinned and
    the torus searched by backtracking.
    """
    a = np.asarray(p, dtype=np.int64)
    if len(set(a.shape)) != 1 or a.shape[0] % 2 == 0:
        raise ValueError("pattern must live on a box [-k, k]^d")
    d, k = a.ndim, a.shape[0] // 2
    if not is_proper(a):
        raise ImproperColoring("pattern is not a proper coloring")
    if K is None:
        K = max(4 * k, 2)
    if K < 2 * k + 1:
        raise ValueError(f"period {K} is smaller than the box")
    L = Sublattice.diagonal(*([K] * d))
    box = [tuple(v - k for v in idx) for idx in itertools.product(range(2 * k + 1), repeat=d)]
    pins = {c: int(a[tuple(v + k for v in c)]) for c in box}

    if K % 2 == 0 and K >= 4 * k:
        h = lift_height(a)
        cells = np.array(L.cells())
        src = np.array(box)
        delta = np.abs(cells[:, None, :] - src[None, :, :]) % K
        dist = np.minimum(delta, K - delta).sum(axis=2)
        hv = (dist + h.reshape(-1)[None, :]).min(axis=1)
        x = TorusConfiguration(L, tuple(int(v) % 3 for v in hv))
        if is_proper(x) and all(x[c] == s for c, s in pins.items()):
            return x

    found = fixed_points(chessboard_sft(d), L, "enumerate", pinned=pins,
                         max_nodes=max_nodes)
    if not found:
        raise ExtensionNotFound(f"no {K}-periodic extension exists", exhaustive=True)
    return found[0]


# -- symmetries ----------------------------------------------------------

COLOR_MAPS = {
    "identity": (0, 1, 2),
    "rot1": (1, 2, 0),
    "rot2": (2, 0, 1),
    "neg": (0, 2, 1),
    "neg_rot1": (2, 1, 0),
    "neg_rot2": (1, 0, 2),
}


def apply_symmetry(x, perm, shift=None):
    """``psi(x)_p = perm[x_{p + shift}]``."""
    perm = COLOR_MAPS.get(perm, perm)
    if shift is not None:
        x = x.shifted(shift)
    return TorusConfiguration(x.lattice, tuple(perm[v] for v in x.values))


def aut_slope_sign(perm, shift=None, d=2):
    """The sign u with ``Ht(psi(x), .)`` cohomologous to ``u * Ht``.

    Read off on the maximal-slope points of period 3 in every direction,
    where Ht is nonzero on every generator.
    """
    perm = tuple(COLOR_MAPS.get(perm, perm))
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"{perm} is not a permutation of the colours")
    if shift is not None and len(shift) != d:
        raise ValueError("shift has the wrong dimension")
    L = Sublattice.diagonal(*([3] * d))
    signs = set()
    for x in max_slope_points(d, L):
        y = apply_symmetry(x, perm, shift)
        for g in L.generators:
            signs.add(height_cocycle(y, g) // height_cocycle(x, g))
    if len(signs) != 1 or signs - {1, -1}:
        raise RuntimeError(f"inconsistent slope ratios {sorted(signs)}")
    return signs.pop()
