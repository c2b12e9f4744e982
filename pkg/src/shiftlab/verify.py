"""Invariant suites run by ``shiftlab verify``.

Each check is a zero-argument function returning ``(ok, detail)``; the
runner times them and never stops early.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np

from . import chessboard as cb
from . import dyck
from . import rotations as rot
from .numtheory import is_orbit_realizable
from .perron import is_perron, perron_factorizations, perron_root, integer
from .sft import (Sublattice, TorusConfiguration, box_patterns, entropy_box_estimate, fixed_points, full_shift,
                  golden_mean, periodic_count_sequence, product_sft, sublattices_of_index)
from .zeta import to_transfer_matrix, zeta_denominator, zeta_series


# -- sft-core --------------------------------------------------------------

def _full_shift_law():
    bad = [(n, str(L)) for n in (2, 3) for k in range(1, 5)
           for L in sublattices_of_index(2, k)
           if fixed_points(full_shift(n, 2), L) != n ** k]
    return not bad, f"mismatches: {bad}" if bad else "n in {2,3}, index <= 4"


def _multiplicativity():
    X, Y = cb.chessboard_sft(1), golden_mean()
    XY = product_sft(X, Y)
    bad = [n for n in range(1, 7)
           if fixed_points(XY, Sublattice.diagonal(n))
           != fixed_points(X, Sublattice.diagonal(n)) * fixed_points(Y, Sublattice.diagonal(n))]
    return not bad, "chessboard(1) x goldenmean, n <= 6"


def _realizability():
    seq = periodic_count_sequence(golden_mean(), 10)
    return is_orbit_realizable(seq.as_dict()), str(seq.counts)


def _entropy_monotone():
    est = [entropy_box_estimate(cb.chessboard_sft(2), n) for n in range(0, 4)]
    ok = all(a >= b >= 0 for a, b in zip(est, est[1:]))
    return ok, ", ".join(f"{e:.4f}" for e in est)


def _enumerate_agrees():
    X = cb.chessboard_sft(2)
    L = Sublattice.from_generators([(3, 1), (0, 2)])
    return len(fixed_points(X, L, "enumerate")) == fixed_points(X, L), str(L)


# -- zeta / perron -----------------------------------------------------------

def _zeta_matches_traces():
    A = to_transfer_matrix(golden_mean())
    z = zeta_series(A, 10)
    # multiply by det(I - tA): everything above degree 2 must cancel
    den = zeta_denominator(A)
    prod = [sum(den[i] * z[k - i] for i in range(len(den)) if 0 <= k - i) for k in range(11)]
    ok = prod[0] == 1 and not any(prod[len(den):])
    return ok, f"coefficients {[int(c) for c in z[:7]]}"


def _trace_equals_count():
    X = cb.chessboard_sft(1)
    A = to_transfer_matrix(X)
    return tuple(A.traces(6)) == periodic_count_sequence(X, 6).counts, "chessboard(1), n <= 6"


def _perron_checks():
    r = perron_root([[1, 1], [1, 0]], Fraction(1, 10 ** 9))
    lo, hi = r.interval
    phi = (1 + math.sqrt(5)) / 2
    ok = (hi - lo <= Fraction(1, 10 ** 9) and lo <= phi <= hi
          and not is_perron((1, 0, -2)) and is_perron((1, -1, -1)))
    return ok, f"phi in [{float(lo):.12f}, {float(hi):.12f}]"


def _perron_six():
    rep = perron_factorizations(integer(6))
    facs = [tuple(int(f.exact()) for f in fac) for fac in rep.factorizations]
    return facs == [(2, 3)], str(facs)


# -- chessboard --------------------------------------------------------------

def _lift_roundtrip():
    bad = 0
    for pat in box_patterns(cb.chessboard_sft(2), (4, 4), "enumerate"):
        a = np.zeros((4, 4), dtype=np.int64)
        for c, s in pat.items():
            a[c] = s
        if not np.array_equal(cb.lift_height(a) % 3, a):
            bad += 1
    return bad == 0, f"{bad} failures on the 4x4 box"


def sample_periodic_colorings(count, period=6, seed=7):
    """Random ``period``-periodic colorings of Z^2 extending random 3x3 boxes."""
    rng = np.random.default_rng(seed)
    boxes = box_patterns(cb.chessboard_sft(2), (3, 3), "enumerate")
    out = []
    for i in rng.integers(len(boxes), size=count):
        a = np.zeros((3, 3), dtype=np.int64)
        for c, s in boxes[i].items():
            a[c] = s
        out.append(cb.periodic_extension(a, period))
    return out


def cocycle_identity_failures(triples=100, seed=7):
    rng = np.random.default_rng(seed)
    pts = sample_periodic_colorings(20, seed=seed)
    bad = 0
    for _ in range(triples):
        x = pts[rng.integers(len(pts))]
        n, m = (tuple(int(v) for v in rng.integers(-9, 10, size=2)) for _ in range(2))
        lhs = cb.height_cocycle(x, (n[0] + m[0], n[1] + m[1]))
        if lhs != cb.height_cocycle(x, m) + cb.height_cocycle(x.shifted(m), n):
            bad += 1
    return bad


def _cocycle_identity():
    bad = cocycle_identity_failures()
    return bad == 0, f"{bad} failures in 100 triples on 6x6 tori"


def _coboundary_vanishes():
    pts = fixed_points(cb.chessboard_sft(2), Sublattice.diagonal(3, 3), "enumerate")

    def f(x):
        return x[(0, 0)] * 3 + x[(1, 0)] - x[(0, 1)]

    ok = all(f(x.shifted(v)) == f(x) for x in pts for v in ((3, 0), (0, 3), (6, -3)))
    return ok, f"{len(pts)} points on the 3x3 torus"


def _max_slope():
    counts = {str(L): len(cb.max_slope_points(L.dimension, L))
              for L in (Sublattice.diagonal(3), Sublattice.diagonal(3, 3),
                        Sublattice.diagonal(6, 3), Sublattice.from_generators([(3, 0), (1, 2)]))}
    return set(counts.values()) == {3}, str(counts)


def _two_by_two():
    L = Sublattice.diagonal(2, 2)
    n = sum(cb.is_proper(TorusConfiguration(L, v)) for v in itertools.product(range(3), repeat=4))
    return n == 18 == fixed_points(cb.chessboard_sft(2), L), f"{n} proper colorings"


# -- dyck ----------------------------------------------------------------------

def _dyck_oracle():
    bad = []
    for N in (2, 3):
        for n in range(1, 9):
            got = dyck.periodic_count_oracle(N, n)
            want = {j: dyck.periodic_count_closed_form(N, n, j) for j in range(-n, n + 1, 2)}
            if got != want:
                bad.append((N, n))
    return not bad, "N <= 3, n <= 8" if not bad else f"mismatch at {bad}"


def _dyck_normalization():
    for N in (2, 3):
        letters = [c for i in range(1, N + 1) for c in (i, -i)]
        for k in range(1, 7):
            for side in ("plus", "minus"):
                s = sum(dyck.mu_cylinder(N, w, side) for w in itertools.product(letters, repeat=k))
                if s != 1:
                    return False, f"N={N}, k={k}, {side}: {s}"
    return True, "N <= 3, k <= 6, both sides"


def _dyck_entropies():
    for N in (2, 3):
        letters = [c for i in range(1, N + 1) for c in (i, -i)]
        for n in range(1, 6):
            for w in itertools.product(letters, repeat=n):
                if not dyck.is_periodic_admissible(w):
                    continue
                hp, hm = dyck.local_entropy(N, w)
                c = Fraction(dyck.excess(w), n)
                if min(hp.b, hm.b) != 0 or hp.b - hm.b != -c:
                    return False, f"N={N}, w={dyck.format_word(w)}"
    return True, "N <= 3, n <= 5"


def _dyck_morphism():
    rng = np.random.default_rng(3)
    for _ in range(500):
        u = tuple(int(c) for c in rng.choice([1, -1, 2, -2], size=rng.integers(0, 8)))
        v = tuple(int(c) for c in rng.choice([1, -1, 2, -2], size=rng.integers(0, 8)))
        ru, rv = dyck.reduce(u), dyck.reduce(v)
        if dyck.reduce(u + v) != ru * rv:
            return False, f"{u} {v}"
    return True, "500 random pairs"


def _dyck_certificates():
    a = dyck.dyck_prime_certificate(2, 3)["certified"]
    b = dyck.dyck_prime_certificate(3, 2)["certified"]
    return a and b, "N=2 k<=3, N=3 k<=2"


# -- rotations -------------------------------------------------------------------

def _five_shift_census():
    c = rot.orbit_census(rot.CoordinateShift(5, 4))
    return c.as_dict() == {1: 5, 2: 10, 4: 150}, str(c)


def _census_sizes():
    systems = [rot.CoordinateShift(3, 4), rot.CyclicModule(5, (1, 0, 1)),
               rot.FiniteRotation((4, 6), (1, 2)), rot.CoordinateShift(2, 6)]
    ok = all(rot.orbit_census(s).order == s.order for s in systems)
    return ok, "sum of length * count equals the carrier size"


def _census_products():
    A = rot.FiniteRotation((4,), (1,))
    B = rot.FiniteRotation((6,), (3,))
    AB = rot.FiniteRotation((4, 6), (1, 3))
    lhs = rot.census_product(rot.orbit_census(A), rot.orbit_census(B))
    return lhs == rot.orbit_census(AB), str(lhs)


def _summands_reassemble():
    for p, n in ((5, 4), (2, 4), (3, 6), (7, 3)):
        dec = rot.module_decompose(p, n)
        for m in range(1, 2 * n + 1):
            prod = math.prod(s["census"].fixed(m) for s in dec["summands"])
            if prod != dec["census"].fixed(m):
                return False, f"p={p}, n={n}, m={m}"
    return True, "(5,4) (2,4) (3,6) (7,3)"


def _bell_numbers():
    sizes = [len(rot.rotation_factorizations(ps)) for ps in ([2], [2, 3], [2, 3, 5], [2, 3, 5, 7])]
    cyclic = all(rot.is_cyclic_rotation(f) for fs in rot.rotation_factorizations([2, 3, 5]) for f in fs)
    return sizes == [1, 2, 5, 15] and cyclic, str(sizes)


SUITES = {
    "sft": [("full-shift law", _full_shift_law), ("product multiplicativity", _multiplicativity),
            ("orbit realizability", _realizability), ("entropy nonincreasing", _entropy_monotone),
            ("enumerate/count agreement", _enumerate_agrees)],
    "zeta": [("zeta = 1/det(I - tA)", _zeta_matches_traces),
             ("traces = periodic counts", _trace_equals_count),
             ("Perron root and tests", _perron_checks), ("factorizations of 6", _perron_six)],
    "chessboard": [("lift round trip", _lift_roundtrip), ("cocycle identity", _cocycle_identity),
                   ("coboundaries vanish on periods", _coboundary_vanishes),
                   ("three max-slope points", _max_slope), ("2x2 torus", _two_by_two)],
    "dyck": [("oracle = closed form", _dyck_oracle), ("cylinder normalization", _dyck_normalization),
             ("local entropies", _dyck_entropies), ("reduction is a morphism", _dyck_morphism),
             ("primeness certificates", _dyck_certificates)],
    "rotations": [("full-shift census", _five_shift_census), ("census sizes", _census_sizes),
                  ("census of products", _census_products),
                  ("summands reassemble", _summands_reassemble), ("Bell numbers", _bell_numbers)],
}


def run_suite(name="all"):
    """Run one suite (or all); returns a list of result dicts."""
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        for label, check in SUITES[s]:
            t = time.perf_counter()
            try:
                ok, detail = check()
            except Exception as e:  # a crashing check is a failing check
                ok, detail = False, f"{type(e).__name__}: {e}"
            out.append({"suite": s, "check": label, "passed": bool(ok), "detail": detail,
                        "seconds": round(time.perf_counter() - t, 3)})
    return out
