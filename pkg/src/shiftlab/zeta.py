"""Transfer matrices, zeta series, and factoring periodic-point count sequences."""

from dataclasses import dataclass
from fractions import Fraction

from ._util import DEFAULT_MAX_NODES, Budget, run_branches
from .numtheory import CountSequence, divisors, is_divisor_closed, mobius
from .perron import char_poly
from .sft import box_patterns


@dataclass(frozen=True)
class TransferMatrix:
    entries: tuple
    labels: tuple = None

    def __post_init__(self):
        E = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not E or any(len(r) != len(E) for r in E):
            raise ValueError("transfer matrix must be square and nonempty")
        if any(x < 0 for r in E for x in r):
            raise ValueError("transfer matrix entries must be nonnegative")
        object.__setattr__(self, "entries", E)

    @property
    def size(self):
        return len(self.entries)

    def __matmul__(self, other):
        A, B = self.entries, other.entries
        n = self.size
        return TransferMatrix(tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n))
                                          for j in range(n)) for i in range(n)))

    def trace(self):
        return sum(self.entries[i][i] for i in range(self.size))

    def traces(self, K):
        """tr(A^n) for n = 1..K."""
        out = []
        M = self
        for _ in range(K):
            out.append(M.trace())
            M = M @ self
        return out

    def tolist(self):
        return [list(r) for r in self.entries]


def to_transfer_matrix(X):
    """Vertex-shift presentation of a 1-D SFT by higher-block recoding.

    Vertices are the locally admissible words of length ``max(D - 1, 1)``
    where D is the largest forbidden-pattern diameter; an edge joins u to v
    when they overlap and ``u + v[-1]`` is admissible. Periodic points of
    the vertex shift correspond one-to-one with those of X.
    """
    if X.dimension != 1:
        raise ValueError("transfer matrices are only defined for 1-D specs")
    w = max(X.diameter - 1, 1)
    verts = [tuple(p[(i,)] for i in range(w)) for p in box_patterns(X, (w,), "enumerate")]
    edges = {tuple(p[(i,)] for i in range(w + 1))
             for p in box_patterns(X, (w + 1,), "enumerate")}
    index = {v: i for i, v in enumerate(verts)}
    A = [[0] * len(verts) for _ in verts]
    for e in edges:
        A[index[e[:-1]]][index[e[1:]]] = 1
    return TransferMatrix(tuple(map(tuple, A)), tuple(verts))


def zeta_series(A, K):
    """Coefficients c_0..c_K of exp(sum_n tr(A^n) t^n / n), as exact rationals.

    Uses ``n c_n = sum_{k=1}^n tr(A^k) c_{n-k}``. The coefficients are
    integers; anything else is reported as an internal error.
    """
    if K < 1:
        raise ValueError("truncation order must be >= 1")
    if not isinstance(A, TransferMatrix):
        A = TransferMatrix(A)
    tr = [None] + A.traces(K)
    c = [Fraction(1)]
    for n in range(1, K + 1):
        c.append(sum(tr[k] * c[n - k] for k in range(1, n + 1)) / n)
        if c[-1].denominator != 1:
            raise RuntimeError(f"non-integer zeta coefficient at order {n}: {c[-1]}")
    return tuple(c)


def zeta_denominator(A):
    """Coefficients of det(I - tA) in increasing powers of t."""
    M = getattr(A, "entries", A)
    return tuple(int(x) for x in char_poly(M))


# -- count-sequence factorization ------------------------------------------

@dataclass(frozen=True)
class FactorPair:
    a: CountSequence
    b: CountSequence

    @property
    def trivial(self):
        return all(x == 1 for x in self.a.counts) or all(x == 1 for x in self.b.counts)

    def to_json(self):
        return {"a": [str(x) for x in self.a.counts],
                "b": [str(x) for x in self.b.counts],
                "trivial": self.trivial}


def _pair_search(task, limit):
    periods, counts, first = task
    budget = Budget(limit, "factor-pair search")
    n_per = len(periods)
    pos = {p: i for i, p in enumerate(periods)}
    divs = [[pos[m] for m in divisors(p)] for p in periods]
    mob = [[mobius(periods[i] // periods[j]) for j in divs[i]] for i in range(n_per)]
    a = [0] * n_per
    b = [0] * n_per
    out = []

    def realizable(seq, i):
        s = sum(mu * seq[j] for mu, j in zip(mob[i], divs[i]))
        return s >= 0 and s % periods[i] == 0

    def rec(i):
        if i == n_per:
            out.append((tuple(a), tuple(b)))
            return
        opts = [first] if i == 0 else divisors(counts[i])
        for x in opts:
            budget.spend()
            a[i], b[i] = x, counts[i] // x
            if realizable(a, i) and realizable(b, i):
                rec(i + 1)

    rec(0)
    return out, budget.used


def count_sequence_factorizations(c, horizon=None, *, jobs=1,
                                  max_nodes=DEFAULT_MAX_NODES):
    """All splits ``c_n = a_n * b_n`` with both factors orbit-realizable.

    `c` is a 1-D CountSequence over a divisor-closed set of periods; only
    periods ``<= horizon`` are used. Pairs come back ordered
    lexicographically by ``(a, b)``.
    """
    items = [(k, v) for k, v in c if horizon is None or k <= horizon]
    periods = [k for k, _ in items]
    counts = [v for _, v in items]
    if not periods:
        raise ValueError("empty count sequence")
    if not is_divisor_closed(periods):
        raise ValueError("periods must be closed under taking divisors")
    if any(v <= 0 for v in counts):
        raise ValueError("counts must be positive to be factored")
    if not CountSequence(items).is_orbit_realizable():
        raise ValueError("count sequence is not orbit-realizable")
    tasks = [(periods, counts, x) for x in divisors(counts[0])]
    parts, _ = run_branches(_pair_search, tasks, jobs=jobs, max_nodes=max_nodes,
                            what="factor-pair search")
    pairs = sorted(p for part in parts for p in part)
    return [FactorPair(CountSequence(zip(periods, a)), CountSequence(zip(periods, b)))
            for a, b in pairs]


def direct_prime_certificate(c, horizon=None, **kw):
    """Nontrivial factor pairs of `c`; an empty list certifies direct-primeness
    of any system with these periodic-point counts, up to `horizon`."""
    pairs = count_sequence_factorizations(c, horizon, **kw)
    nontrivial = [p for p in pairs if not p.trivial]
    return {"horizon": horizon, "pairs": pairs, "nontrivial": nontrivial,
            "certified": not nontrivial}
