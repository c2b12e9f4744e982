"""The ten acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, printed together at the end of the
run (and immediately, for ``pytest -s``).
"""

import itertools
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from shiftlab import dyck
from shiftlab import rotations as rot
from shiftlab.chessboard import (chessboard_sft, is_proper, lift_height, max_slope_points)
from shiftlab.cli import run
from shiftlab.numtheory import CountSequence
from shiftlab.perron import integer, is_perron, perron_factorizations, perron_root
from shiftlab.sft import (Sublattice, TorusConfiguration, box_patterns, fixed_points, full_shift,
                          golden_mean, sublattices_of_index)
from shiftlab.verify import cocycle_identity_failures
from shiftlab.zeta import count_sequence_factorizations, to_transfer_matrix, zeta_series


@pytest.fixture
def record(request):
    """Call with (number, ok, detail); the line is kept even if the test then fails."""
    def _record(k, ok, detail):
        line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[k] = line
        print(line)
        return ok
    return _record


def letters(N):
    return [c for i in range(1, N + 1) for c in (i, -i)]


def nonzero_words(N, k):
    """Words of length k with nonzero reduction, by prefix extension."""
    level = [()]
    for _ in range(k):
        level = [w + (c,) for w in level for c in letters(N)
                 if dyck._first_zero(w + (c,)) is None]
    return level


def test_1_dyck_counts(record):
    t = time.perf_counter()
    bad = []
    for N in (2, 3):
        for n in range(1, 9):
            got = dyck.periodic_count_oracle(N, n)
            for j in range(-n, n + 1, 2):
                if got.get(j, 0) != dyck.periodic_count_closed_form(N, n, j):
                    bad.append((N, n, j))
            if got.get(n) != N ** n:
                bad.append((N, n, "top"))
    secs = time.perf_counter() - t
    ok = not bad and secs < 120
    record(1, ok, f"oracle = closed form for N in {{2,3}}, n <= 8; mismatches {bad}; {secs:.1f}s")
    assert ok


def test_2_dyck_entropy_trend(record):
    t = time.perf_counter()
    rate = {n: math.log(dyck.periodic_count_total(2, n)) / n for n in (6, 14)}
    gap = {n: abs(r - math.log(3)) for n, r in rate.items()}
    secs = time.perf_counter() - t
    ok = gap[14] <= 0.20 and gap[14] < gap[6] and secs < 60
    record(2, ok, f"|rate - log 3| = {gap[6]:.4f} at n=6, {gap[14]:.4f} at n=14")
    assert ok


def test_3_dyck_measures(record):
    bad = []
    for N in (1, 2, 3):
        for k in range(1, 9):
            ws = nonzero_words(N, k)
            for side in ("plus", "minus"):
                s = sum(dyck.mu_cylinder(N, w, side) for w in ws)
                if s != 1:
                    bad.append((N, k, side, s))
    periodic, ent_bad = 0, []
    for N in (1, 2, 3):
        for n in range(1, 9):
            for w in nonzero_words(N, n):
                if not dyck.is_periodic_admissible(w):
                    continue
                periodic += 1
                hp, hm = dyck.local_entropy(N, w)
                # log(N+1) exactly: a = 1 and no log(N) part on the smaller side
                if not (hp.a == hm.a == 1 and min(hp.b, hm.b) == 0):
                    ent_bad.append((N, w))
    ok = not bad and not ent_bad
    record(3, ok, f"normalization failures {bad}; min(h+,h-) = log(N+1) on {periodic} "
                  f"periodic words, failures {len(ent_bad)}")
    assert ok


def test_4_full_shift_law(record):
    t = time.perf_counter()
    checked, bad = 0, []
    for n in (2, 3):
        for k in range(1, 7):
            for L in sublattices_of_index(2, k):
                checked += 1
                X = full_shift(n, 2)
                listed = len(fixed_points(X, L, "enumerate"))
                if not fixed_points(X, L) == listed == n ** L.index:
                    bad.append((n, str(L)))
    secs = time.perf_counter() - t
    ok = not bad and secs < 120
    record(4, ok, f"{checked} (n, L) pairs with index <= 6 (counted and listed), mismatches {bad}; {secs:.1f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="realizable nontrivial splittings of 2^n exist; "
                                       "see the decision ledger")
def test_5_direct_prime_certificate(record):
    two = CountSequence.from_periods([2 ** n for n in range(1, 9)])
    pairs = count_sequence_factorizations(two, 8)
    nontrivial = [p for p in pairs if not p.trivial]
    six = CountSequence.from_periods([6 ** n for n in range(1, 9)])
    found = {(p.a.counts, p.b.counts) for p in count_sequence_factorizations(six, 8)}
    six_ok = (tuple(2 ** n for n in range(1, 9)), tuple(3 ** n for n in range(1, 9))) in found
    # what does hold: along the 2-power periods only the trivial splits are realizable
    chain = CountSequence([(n, 2 ** n) for n in (1, 2, 4, 8)])
    chain_ok = all(p.trivial for p in count_sequence_factorizations(chain))
    example = nontrivial[0] if nontrivial else None
    ok = not nontrivial and six_ok
    record(5, ok, f"2^n: {len(nontrivial)} nontrivial realizable pairs of {len(pairs)} "
                  f"(e.g. {example.a.counts if example else '-'}); 6^n -> (2^n, 3^n) "
                  f"{'found' if six_ok else 'missing'}; periods 1,2,4,8 only trivial: {chain_ok}")
    assert six_ok and chain_ok
    assert not nontrivial


def test_6_chessboard(record):
    t = time.perf_counter()
    X = chessboard_sft(2)
    boxes = box_patterns(X, (4, 4), "enumerate")
    lift_bad = 0
    for pat in boxes:
        a = np.zeros((4, 4), dtype=np.int64)
        for c, s in pat.items():
            a[c] = s
        if not np.array_equal(lift_height(a) % 3, a):
            lift_bad += 1
    cocycle_bad = cocycle_identity_failures(triples=100)
    L = Sublattice.diagonal(2, 2)
    brute = sum(is_proper(TorusConfiguration(L, v)) for v in itertools.product(range(3), repeat=4))
    slopes = len(max_slope_points(2, Sublattice.diagonal(3, 3)))
    secs = time.perf_counter() - t
    ok = (lift_bad == 0 and cocycle_bad == 0 and brute == 18 == fixed_points(X, L)
          and slopes == 3 and secs < 180)
    record(6, ok, f"{len(boxes)} 4x4 boxes, {lift_bad} lift failures; {cocycle_bad} cocycle "
                  f"failures in 100 triples; 2x2 torus {brute}; {slopes} max-slope points; {secs:.1f}s")
    assert ok


def test_7_zeta_perron(record):
    z = [int(c) for c in zeta_series(to_transfer_matrix(golden_mean()), 6)]
    r = perron_root([[1, 1], [1, 0]], Fraction(1, 10 ** 9))
    lo, hi = r.interval
    phi = (1 + math.sqrt(5)) / 2
    facs = [tuple(int(f.exact()) for f in fac)
            for fac in perron_factorizations(integer(6)).factorizations]
    ok = (list(z[:6]) == [1, 1, 2, 3, 5, 8] and hi - lo <= Fraction(1, 10 ** 9)
          and lo <= phi <= hi and is_perron((1, 0, -2)) is False and facs == [(2, 3)])
    record(7, ok, f"zeta {list(z[:6])}; root in [{float(lo):.10f}, {float(hi):.10f}]; "
                  f"is_perron(x^2-2) {is_perron((1, 0, -2))}; factorizations of 6 {facs}")
    assert ok


def test_8_rotations(record):
    whole = rot.orbit_census(rot.CoordinateShift(5, 4))
    ok_census = whole.as_dict() == {1: 5, 2: 10, 4: 150}
    dec = rot.module_decompose(5, 4)
    acc = dec["summands"][0]["census"]
    for s in dec["summands"][1:]:
        acc = rot.census_product(acc, s["census"])
    parts = rot.split_module(5, 4, rot.coarse_split(5, 4, 2))
    coarse = rot.census_product(parts[0][1], parts[1][1])
    m_census = parts[1][1].as_dict()
    report, code = run(["rotations", "decompose", "--p", "5", "--n", "4", "--coarse", "2"])
    flagged = code == 0 and len(report["result"]["notes"]) == 1
    ok = ok_census and acc == whole and coarse == whole and flagged
    record(8, ok, f"census {whole}; summands reassemble {acc == whole}; coarse split "
                  f"reassembles {coarse == whole}; M = F_5[x]/(x^2+1) has {m_census} "
                  f"(flagged note: {flagged})")
    assert ok


def test_9_dyck_certificates(record):
    t = time.perf_counter()
    reps = {(N, k): dyck.dyck_prime_certificate(N, k) for N, k in ((2, 3), (3, 2))}
    secs = time.perf_counter() - t
    ok = all(r["certified"] for r in reps.values()) and secs < 120
    summary = "; ".join(f"N={N} k<={k}: {r['candidates']} candidates, "
                        f"{r['rejected_by_congruence']} fail realizability, "
                        f"{len(r['rejected_by_graded_counts'])} fail graded counts"
                        for (N, k), r in reps.items())
    record(9, ok, f"{summary}; {secs:.1f}s")
    assert ok


def test_10_determinism(record):
    X = chessboard_sft(2)
    checks = {}
    L = Sublattice(((4, 1), (0, 3)))
    checks["fixed_points"] = [[p.values for p in fixed_points(X, L, "enumerate", jobs=j)]
                              for j in (1, 8)]
    checks["box_patterns"] = [box_patterns(X, (3, 4), jobs=j) for j in (1, 8)]
    checks["max_slope"] = [[p.values for p in max_slope_points(2, Sublattice.diagonal(6, 3), jobs=j)]
                           for j in (1, 8)]
    checks["dyck_oracle"] = [dyck.periodic_count_oracle(3, 6, jobs=j) for j in (1, 8)]
    checks["orbit_census"] = [rot.orbit_census(rot.CoordinateShift(5, 4), jobs=j) for j in (1, 8)]
    six = CountSequence.from_periods([6 ** n for n in range(1, 7)])
    checks["factor_pairs"] = [[(p.a.counts, p.b.counts)
                               for p in count_sequence_factorizations(six, jobs=j)] for j in (1, 8)]
    for argv in (["count", "--system", "chessboard(2)", "--index", "6", "--enumerate"],
                 ["dyck", "count", "--n-brackets", "2", "--period", "6", "--oracle"],
                 ["rotations", "census", "--group", "Z5^4"]):
        out = []
        for j in (1, 8):
            rep, _ = run(argv + ["--jobs", str(j)])
            out.append(json.dumps(rep["result"], sort_keys=True))
        checks["cli " + argv[0]] = out
    bad = [k for k, (a, b) in checks.items() if a != b]
    record(10, not bad, f"{len(checks)} enumerations compared at jobs 1 and 8, differing: {bad}")
    assert not bad
