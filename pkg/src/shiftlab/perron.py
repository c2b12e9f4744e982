"""Perron numbers: certified dominance, products and bounded factor search.

A real algebraic number is carried as its integer minimal polynomial plus a
rational interval ``(lo, hi]`` holding exactly one of its roots (or a
degenerate interval for rational numbers). Dominance of a root over its
conjugates is decided exactly: the products ``z_i * z_j`` of all root pairs
are the roots of a resultant R, and ``lam`` dominates iff ``lam**2`` is the
largest real root of R and a simple one.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from scipy.sparse.csgraph import connected_components

from . import polynomials as P

_DEFAULT_WIDTH = Fraction(1, 10 ** 12)


class ReducibleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RealAlgebraic:
    """A real root of an irreducible integer polynomial, pinned by an interval."""

    min_poly: tuple
    interval: tuple

    def __post_init__(self):
        lo, hi = map(Fraction, self.interval)
        p = P.as_integer(P.normalize(self.min_poly))
        if p[0] < 0:
            p = tuple(-c for c in p)
        object.__setattr__(self, "min_poly", p)
        object.__setattr__(self, "interval", (lo, hi))
        if lo == hi:
            if P.evaluate(p, lo) != 0:
                raise ValueError("degenerate interval is not a root")
        elif P.count_roots(p, lo, hi) != 1:
            raise ValueError("interval does not isolate exactly one root")

    @property
    def degree(self):
        return P.degree(self.min_poly)

    @property
    def is_rational(self):
        return self.degree == 1

    def exact(self):
        """The value as a Fraction when rational."""
        if not self.is_rational:
            raise ValueError("not a rational number")
        a, b = self.min_poly
        return Fraction(-b, a)

    def refined(self, width=_DEFAULT_WIDTH):
        if self.is_rational:
            v = self.exact()
            return type(self)(self.min_poly, (v, v))
        return type(self)(self.min_poly, P.refine(self.min_poly, self.interval, width))

    def bracket(self, width=_DEFAULT_WIDTH):
        return self.refined(width).interval

    def __float__(self):
        lo, hi = self.bracket(Fraction(1, 10 ** 18))
        return float((lo + hi) / 2)

    def same_root(self, other):
        if self.min_poly != other.min_poly:
            return False
        (a, b), (c, d) = self.interval, other.interval
        if self.is_rational:
            return True
        if b < c or d < a:
            return False
        return P.count_roots(self.min_poly, min(a, c), max(b, d)) == 1

    def __eq__(self, other):
        return isinstance(other, RealAlgebraic) and self.same_root(other)

    def __hash__(self):
        return hash(self.min_poly)

    def __lt__(self, other):
        if self == other:
            return False
        w = Fraction(1, 2 ** 8)
        while True:
            (a, b), (c, d) = self.bracket(w), other.bracket(w)
            if b <= c:
                return True
            if d <= a:
                return False
            w /= 2 ** 8

    def __repr__(self):
        kind = type(self).__name__
        if self.is_rational:
            return f"{kind}({self.exact()})"
        return f"{kind}({P.format_poly(self.min_poly)} ~ {float(self):.12g})"

    def to_json(self):
        lo, hi = self.interval
        return {"min_poly": [str(c) for c in self.min_poly],
                "poly": P.format_poly(self.min_poly),
                "interval": [str(lo), str(hi)],
                "approx": float(self)}


class PerronNumber(RealAlgebraic):
    """A RealAlgebraic whose root is a Perron number (checked on creation)."""

    def __post_init__(self):
        super().__post_init__()
        if self.min_poly[0] != 1:
            raise ValueError("Perron numbers are algebraic integers; need a monic polynomial")
        if not is_perron(self.min_poly, self.interval):
            raise ValueError(f"{P.format_poly(self.min_poly)} root is not Perron")

    def __mul__(self, other):
        return perron_multiply(self, other)


def integer(m):
    return PerronNumber((1, -m), (m, m))


def _select_root(p, root):
    """Isolating interval of the real root of `p` picked by `root`."""
    if P.degree(p) == 1:
        v = Fraction(-p[1], p[0])
        return (v, v)
    roots = P.isolate_real_roots(p)
    if not roots:
        raise ValueError("polynomial has no real roots")
    if root is None:
        return roots[-1]
    if isinstance(root, tuple):
        lo, hi = map(Fraction, root)
        if lo == hi:
            if P.evaluate(p, lo) != 0:
                raise ValueError("selector is not a root")
            return (lo, hi)
        if P.count_roots(p, lo, hi) != 1:
            raise ValueError("root selector does not pick out a single real root")
        return (lo, hi)
    x = Fraction(root)
    return min(roots, key=lambda r: abs((r[0] + r[1]) / 2 - x)
               if r[1] - r[0] > 0 else abs(r[0] - x))


def is_perron(p, root=None):
    """Whether the selected real root of monic irreducible `p` is a Perron number.

    `root` picks the root: None for the largest real root, an interval
    ``(lo, hi)`` containing it, or an approximate value.
    """
    p = P.as_integer(P.normalize(p))
    if p[0] < 0:
        p = tuple(-c for c in p)
    if p[0] != 1:
        raise ValueError("polynomial must be monic")
    if not P.is_irreducible(p):
        raise ReducibleError(f"{P.format_poly(p)} is reducible over Q")
    if P.degree(p) == 1:
        return -p[1] > 0
    lo, hi = _select_root(p, root)
    seq = P.sturm_sequence(p)
    if hi <= 0:
        return False
    while lo <= 0:
        lo, hi = P.refine(p, (lo, hi), (hi - lo) / 2, seq)
    R = P.product_root_poly(p, p)
    S = P.squarefree(R)
    G = P.gcd_poly(R, P.derivative(R))
    s_seq = P.sturm_sequence(S)
    while P.count_roots(S, lo * lo, hi * hi, s_seq) != 1:
        lo, hi = P.refine(p, (lo, hi), (hi - lo) / 2, seq)
    if P.count_roots(S, hi * hi, "inf", s_seq):
        return False
    return P.degree(G) <= 0 or P.count_roots(G, lo * lo, hi * hi) == 0


def char_poly(A):
    """Characteristic polynomial det(xI - A) of a rational matrix (Faddeev-LeVerrier)."""
    A = [[Fraction(x) for x in row] for row in A]
    n = len(A)
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        M = [[sum(A[i][t] * M[t][j] for t in range(n)) + (c_prev if i == j else 0)
              for j in range(n)] for i in range(n)]
        tr = sum(sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n))
        coeffs.append(-tr / k)
    return tuple(coeffs)


def is_irreducible_matrix(A):
    A = np.asarray(A)
    if A.shape == (1, 1):
        return A[0, 0] > 0
    n, _ = connected_components(A > 0, directed=True, connection="strong")
    return n == 1


def perron_root(A, precision=_DEFAULT_WIDTH):
    """Spectral radius of an irreducible nonnegative integer matrix, certified.

    Returns a PerronNumber when the root dominates its conjugates (always the
    case for primitive matrices), otherwise a RealAlgebraic.
    """
    M = getattr(A, "entries", A)
    if not is_irreducible_matrix(M):
        raise ValueError("matrix is reducible; restrict to an irreducible component")
    best = None
    for f, _ in P.factor_over_q(char_poly(M)):
        for iv in ([(Fraction(-f[1], f[0]),) * 2] if P.degree(f) == 1
                   else P.isolate_real_roots(f)):
            cand = RealAlgebraic(f, iv)
            if best is None or best < cand:
                best = cand
    best = best.refined(precision)
    cls = PerronNumber if best.min_poly[0] == 1 and is_perron(best.min_poly, best.interval) \
        else RealAlgebraic
    return cls(best.min_poly, best.interval)


def perron_multiply(a, b):
    """The product of two Perron numbers, with its minimal polynomial."""
    if a.is_rational and b.is_rational:
        return integer(int(a.exact() * b.exact()))
    R = P.product_root_poly(a.min_poly, b.min_poly)
    factors = [f for f, _ in P.factor_over_q(R)]
    w = Fraction(1, 2 ** 10)
    while True:
        (alo, ahi), (blo, bhi) = a.bracket(w), b.bracket(w)
        if alo > 0 and blo > 0:
            lo, hi = alo * blo, ahi * bhi
            if lo == hi:
                return integer(int(lo))
            hits = [f for f in factors if P.count_roots(f, lo, hi)]
            if len(hits) == 1 and P.count_roots(hits[0], lo, hi) == 1:
                return PerronNumber(hits[0], (lo, hi))
        w /= 2 ** 10


# -- factor search in Z[lam] -------------------------------------------------

def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def _solve(A, b):
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


class _Field:
    """Q(lam) in the power basis 1, lam, ..., lam^(n-1)."""

    def __init__(self, lam):
        p = lam.min_poly
        self.lam = lam
        self.n = n = P.degree(p)
        C = [[Fraction(0)] * n for _ in range(n)]
        # column j of C is lam * lam^j written in the power basis
        for j in range(n - 1):
            C[j + 1][j] = Fraction(1)
        for i in range(n):
            C[i][n - 1] = Fraction(-p[n - i], p[0])
        self.powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
        for _ in range(n - 1):
            self.powers.append(_matmul(C, self.powers[-1]))
        lo, hi = lam.bracket(Fraction(1, 10 ** 40))
        self.approx = (lo + hi) / 2

    def matrix(self, a):
        n = self.n
        return [[sum(a[k] * self.powers[k][i][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    def value(self, a):
        return float(sum(c * self.approx ** k for k, c in enumerate(a)))

    def divide(self, a, b):
        return _solve(self.matrix(b), a)

    def number(self, a):
        """PerronNumber for element `a`, or None if it is not a Perron algebraic integer."""
        cp = char_poly(self.matrix(a))
        if any(Fraction(c).denominator != 1 for c in cp):
            return None
        f = P.as_integer(P.squarefree(cp))
        if f[0] < 0:
            f = tuple(-c for c in f)
        if P.degree(f) == 1:
            v = -f[1]
            return integer(v) if v >= 1 else None
        eig = np.linalg.eigvals(np.array(self.matrix(a), dtype=float))
        val = self.value(a)
        if val <= 0 or max(abs(eig)) > val * (1 + 1e-9):
            return None
        try:
            iv = _select_root(f, Fraction(val))
            return PerronNumber(f, iv)
        except ValueError:
            return None


@dataclass
class FactorizationReport:
    target: RealAlgebraic
    factorizations: list
    max_degree: int
    max_height: int

    @property
    def irreducible(self):
        return not self.factorizations

    def to_json(self):
        return {
            "target": self.target.to_json(),
            "scope": "within bounds",
            "max_degree": self.max_degree,
            "max_height": self.max_height,
            "irreducible_within_bounds": self.irreducible,
            "factorizations": [[f.to_json() for f in fac] for fac in self.factorizations],
        }


def perron_factorizations(lam, max_degree=2, max_height=20):
    """Factorizations of `lam` into irreducible Perron numbers found within bounds.

    Factors are searched among algebraic integers of Q(lam) whose power-basis
    coordinates are integers of absolute value at most `max_height` and whose
    degree is at most `max_degree`; cofactors are computed exactly and must
    themselves be Perron algebraic integers. An empty result means "no
    factorization within these bounds", not irreducibility outright.
    """
    K = _Field(lam)
    n = K.n
    target = (Fraction(0), Fraction(1)) + (Fraction(0),) * (n - 2) if n > 1 \
        else (lam.exact(),)
    norm_lam = P.evaluate(lam.min_poly, 0) * (-1) ** n

    cands = []
    lam_val = float(lam)
    for a in itertools.product(range(-max_height, max_height + 1), repeat=n):
        a = tuple(map(Fraction, a))
        v = K.value(a)
        if not 1 - 1e-9 < v < lam_val + 1e-9:
            continue
        N = P.evaluate(char_poly(K.matrix(a)), 0) * (-1) ** n
        if N == 0 or norm_lam % N:
            continue
        num = K.number(a)
        if num is None or num.degree > max_degree or not integer(1) < num:
            continue
        cands.append((a, num, v))

    memo = {}

    def splits(t):
        t_num = K.number(t)
        t_val = K.value(t)
        out = []
        for a, num, v in cands:
            if v >= t_val * (1 - 1e-12):
                continue
            b = K.divide(t, a)
            bnum = K.number(b)
            if bnum is None or bnum.degree > max_degree or not integer(1) < bnum:
                continue
            out.append((a, num, b, bnum))
        return t_num, out

    def factor(t):
        if t in memo:
            return memo[t]
        t_num, ss = splits(t)
        if not ss:
            res = {((t_num, t),)}
        else:
            res = set()
            for a, _, b, _ in ss:
                for fa in factor(a):
                    for fb in factor(b):
                        res.add(tuple(sorted(fa + fb, key=_factor_key)))
        memo[t] = res
        return res

    full = factor(target)
    facs = sorted((tuple(num for num, _ in f) for f in full if len(f) > 1),
                  key=lambda f: [float(x) for x in f])
    return FactorizationReport(lam, facs, max_degree, max_height)


def _factor_key(item):
    num, coords = item
    return (float(num), coords)


def perron_from_poly(p, root=None):
    p = P.as_integer(P.normalize(p))
    return PerronNumber(p, _select_root(p, root))


def minimal_polynomial_of(expr):
    """Integer minimal polynomial of a sympy algebraic expression (test helper)."""
    x = sympy.Symbol("x")
    return P.as_integer(P.from_sympy(sympy.Poly(sympy.minimal_polynomial(expr, x), x)))
