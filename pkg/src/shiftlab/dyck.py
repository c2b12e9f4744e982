"""The N-bracket Dyck shift.

Letters are nonzero integers: ``+i`` is the left bracket alpha_i and ``-i``
the right bracket beta_i. Words reduce in the monoid where
``alpha_i beta_i = 1`` and ``alpha_i beta_j = 0`` for i != j; a nonzero
reduced word has the shape ``beta...beta alpha...alpha``.

Counts and cylinder measures are exact. Entropies are returned as
``a*log(N+1) + b*log(N)`` with rational a, b.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from ._util import DEFAULT_MAX_NODES, Budget, run_branches
from .numtheory import CountSequence, divisors
from .zeta import count_sequence_factorizations


# -- words and reduction -------------------------------------------------

def parse_word(text):
    """``"a1 b2"`` -> ``(1, -2)``."""
    out = []
    for tok in text.split():
        kind, num = tok[0].lower(), tok[1:]
        if kind not in "ab" or not num.isdigit() or int(num) < 1:
            raise ValueError(f"bad letter {tok!r}; expected a<i> or b<i>")
        out.append(int(num) if kind == "a" else -int(num))
    return tuple(out)


def format_word(w):
    return " ".join(f"a{c}" if c > 0 else f"b{-c}" for c in w)


def check_word(N, w):
    if any(c == 0 or abs(c) > N for c in w):
        raise ValueError(f"word uses letters outside the {N}-bracket alphabet")


class _Zero:
    def __repr__(self):
        return "Zero"

    def __mul__(self, other):
        return self

    def __rmul__(self, other):
        return self

    def word(self):
        raise ValueError("the zero element has no word")


ZERO = _Zero()


@dataclass(frozen=True)
class ReducedForm:
    betas: tuple = ()
    alphas: tuple = ()

    def word(self):
        return self.betas + self.alphas

    def __len__(self):
        return len(self.betas) + len(self.alphas)

    def __mul__(self, other):
        if other is ZERO:
            return ZERO
        stack = list(self.alphas)
        betas = list(other.betas)
        while stack and betas:
            if stack[-1] != -betas[0]:
                return ZERO
            stack.pop()
            betas.pop(0)
        if betas:
            return ReducedForm(self.betas + tuple(betas), other.alphas)
        return ReducedForm(self.betas, tuple(stack) + other.alphas)

    def __repr__(self):
        return f"ReducedForm({format_word(self.word())!r})"


def reduce(w):
    """Normal form of a word, or ZERO if some alpha_i meets beta_j with i != j."""
    betas, stack = [], []
    for c in w:
        if c > 0:
            stack.append(c)
        elif stack:
            if stack.pop() != -c:
                return ZERO
        else:
            betas.append(c)
    return ReducedForm(tuple(betas), tuple(stack))


def is_periodic_admissible(w):
    """Whether the bi-infinite repetition of w is a point of the Dyck shift.

    A point is admissible when none of its subwords reduce to zero, and every
    subword of the repetition sits inside some power of w. The reduced
    interface between periods stops changing within ``|w| + 2`` steps.
    """
    if not w:
        raise ValueError("period must be nonempty")
    r = reduce(w)
    acc = r
    for _ in range(len(w) + 1):
        if acc is ZERO:
            return False
        acc = acc * r
    return acc is not ZERO


def _scan_admissible(w):
    """Slow cross-check: every subword of ``w^(2|w|)`` reduces to nonzero."""
    u = tuple(w) * (2 * len(w))
    for i in range(len(u)):
        # reducing a prefix of u[i:] is zero iff some subword starting at i is
        if _first_zero(u[i:]) is not None:
            return False
    return True


def _first_zero(w):
    stack = []
    for k, c in enumerate(w):
        if c > 0:
            stack.append(c)
        elif stack and stack.pop() != -c:
            return k
    return None


def excess(w):
    """Left brackets minus right brackets."""
    return sum(1 if c > 0 else -1 for c in w)


# -- periodic point counts -----------------------------------------------

def periodic_count_closed_form(N, n, j):
    """Period-n points with bracket excess j per period:
    ``C(n, (n+j)/2) * N^((n+|j|)/2)``."""
    if n < 1:
        raise ValueError("period must be >= 1")
    if abs(j) > n or (n - j) % 2:
        raise ValueError(f"excess {j} is incompatible with period {n}")
    return math.comb(n, (n + j) // 2) * N ** ((n + abs(j)) // 2)


def periodic_count_total(N, n):
    return sum(periodic_count_closed_form(N, n, j) for j in range(-n, n + 1, 2))


def _oracle_task(task, limit):
    N, n, first = task
    budget = Budget(limit, "Dyck word enumeration")
    counts = {}
    letters = [c for i in range(1, N + 1) for c in (i, -i)]
    w = [first]

    def rec():
        budget.spend()
        if len(w) == n:
            if is_periodic_admissible(w):
                j = excess(w)
                counts[j] = counts.get(j, 0) + 1
            return
        for c in letters:
            w.append(c)
            if _first_zero(w) is None:
                rec()
            w.pop()

    rec()
    return counts, budget.used


def periodic_count_oracle(N, n, j=None, *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """Count period-n points by enumerating words; a dict over j if j is None."""
    if N < 1 or n < 1:
        raise ValueError("need N >= 1 and n >= 1")
    tasks = [(N, n, c) for i in range(1, N + 1) for c in (i, -i)]
    parts, _ = run_branches(_oracle_task, tasks, jobs=jobs, max_nodes=max_nodes,
                            what="Dyck word enumeration")
    total = {}
    for part in parts:
        for k, v in part.items():
            total[k] = total.get(k, 0) + v
    if j is None:
        return dict(sorted(total.items()))
    return total.get(j, 0)


def growth_rate_table(N, n_max):
    """Rows ``(n, |D^(n)|, log(count)/n)`` for n = 1..n_max."""
    rows = []
    for n in range(1, n_max + 1):
        c = periodic_count_total(N, n)
        rows.append((n, c, math.log(c) / n))
    return rows


# -- measures and local entropy --------------------------------------------

def unmatched_counts(w):
    """``(unmatched betas, unmatched alphas)`` from a left-to-right bracket scan."""
    depth = ub = 0
    for c in w:
        if c > 0:
            depth += 1
        elif depth:
            depth -= 1
        else:
            ub += 1
    return ub, depth


def mu_cylinder(N, w, side="plus"):
    """Measure of the cylinder ``[w]`` under mu_plus or mu_minus.

    mu_plus is the pull-back of the uniform Bernoulli measure on
    ``{0..N}``: each letter costs ``1/(N+1)`` and every unmatched beta must
    additionally guess its type. mu_minus is the mirror image.
    """
    check_word(N, w)
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    if reduce(w) is ZERO:
        return Fraction(0)
    ub, ua = unmatched_counts(w)
    u = ub if side == "plus" else ua
    return Fraction(1, (N + 1) ** len(w) * N ** u)


@dataclass(frozen=True)
class LogValue:
    """``a*log(N+1) + b*log(N)``."""

    N: int
    a: Fraction
    b: Fraction

    def __float__(self):
        return float(self.a) * math.log(self.N + 1) + float(self.b) * math.log(self.N)

    def __str__(self):
        return f"{self.a}*log({self.N + 1}) + {self.b}*log({self.N})"


def local_entropy(N, w):
    """Decay exponents ``-lim log mu([w^k]) / (k|w|)`` for both measures.

    The number of unmatched letters grows by a fixed amount per period once
    the interface has settled, so the limits are computed exactly.
    """
    check_word(N, w)
    if not is_periodic_admissible(w):
        raise ValueError("word does not define a periodic point")
    m = len(w) + 2
    lo = unmatched_counts(tuple(w) * m)
    hi = unmatched_counts(tuple(w) * (m + 1))
    rate_b = Fraction(hi[0] - lo[0], len(w))
    rate_a = Fraction(hi[1] - lo[1], len(w))
    return LogValue(N, Fraction(1), rate_b), LogValue(N, Fraction(1), rate_a)


def sample_mu_plus(N, length, seed=None):
    """A word of the given length sampled (approximately) from mu_plus.

    Nonzero Bernoulli symbols become left brackets; each zero closes the most
    recent open bracket, and gets a uniformly random type if none is open in
    the window.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = np.random.default_rng(seed)
    sym = rng.integers(0, N + 1, size=length)
    fill = rng.integers(1, N + 1, size=length)
    out, stack = [], []
    for s, f in zip(sym, fill):
        if s:
            out.append(int(s))
            stack.append(int(s))
        elif stack:
            out.append(-stack.pop())
        else:
            out.append(-int(f))
    return tuple(out)


# -- primeness certificate ------------------------------------------------

def dyck_prime_certificate(N, k_max, *, max_nodes=DEFAULT_MAX_NODES):
    """Counting evidence that the N-bracket Dyck shift has no direct factor.

    In a splitting ``Y x Z`` the grading by bracket excess lives on Y, so
    ``|D^(n,c)| = |Y^(n,c)| * |Z^(n)|`` for every c. Along the periods
    ``n = N^k`` the all-left-bracket class has ``N^n`` points. Every split of
    that sequence into two factors is generated; splits that are not
    orbit-realizable (the mod-N congruence along N-power periods) are
    dropped by the factorization engine, and the remaining ones must have
    ``|Z^(n)|`` dividing, and not exceeding, the count of the most balanced
    class. Certified when only ``|Z| = 1`` survives.
    """
    if not sympy.isprime(N):
        raise ValueError(f"N = {N} is not prime")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    periods = [N ** k for k in range(k_max + 1)]
    top = [periodic_count_closed_form(N, n, n) for n in periods]
    balanced = [periodic_count_closed_form(N, n, n % 2) for n in periods]
    seq = CountSequence(zip(periods, top))
    candidates = math.prod(len(divisors(t)) for t in top[1:]) * len(divisors(top[0]))
    realizable = count_sequence_factorizations(seq, max_nodes=max_nodes)

    survivors, rejected = [], []
    for pair in realizable:
        z = pair.b.counts
        bad_div = [n for n, zc, bc in zip(periods, z, balanced) if bc % zc]
        bad_cmp = [n for n, zc, bc in zip(periods, z, balanced) if zc > bc]
        if bad_div or bad_cmp:
            rejected.append({"y": pair.a.counts, "z": z,
                             "divisibility_fails_at": bad_div,
                             "comparison_fails_at": bad_cmp})
        else:
            survivors.append({"y": pair.a.counts, "z": z})
    certified = all(all(v == 1 for v in s["z"]) for s in survivors)
    return {
        "N": N,
        "periods": periods,
        "top_counts": top,
        "balanced_counts": balanced,
        "candidates": candidates,
        "rejected_by_congruence": candidates - len(realizable),
        "rejected_by_graded_counts": rejected,
        "comparison_rejections": sum(bool(r["comparison_fails_at"]) for r in rejected),
        "survivors": survivors,
        "certified": certified,
    }
