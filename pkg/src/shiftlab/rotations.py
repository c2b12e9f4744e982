"""Finite rotations, cyclic shift actions and F_p[x]-modules.

Every system here is a bijection of a finite set, and its orbit census
(orbit length -> number of orbits) is computed by iterating the map. Direct
products are handled on the level of censuses through fixed-point counts.
"""

import itertools
import math
from dataclasses import dataclass

import sympy
from sympy.utilities.iterables import multiset_partitions

from ._util import DEFAULT_MAX_NODES, Budget, run_branches
from .numtheory import divisors, orbit_count


@dataclass(frozen=True)
class FiniteRotation:
    """``x -> x + step`` on ``Z/m_1 x ... x Z/m_r``."""

    moduli: tuple
    step: tuple

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        object.__setattr__(self, "step", tuple(int(s) % m for s, m in zip(self.step, self.moduli)))
        if any(m < 1 for m in self.moduli) or len(self.step) != len(self.moduli):
            raise ValueError("need one positive modulus per step coordinate")

    @property
    def order(self):
        return math.prod(self.moduli)

    def elements(self):
        return itertools.product(*[range(m) for m in self.moduli])

    def __call__(self, x):
        return tuple((a + s) % m for a, s, m in zip(x, self.step, self.moduli))


@dataclass(frozen=True)
class CoordinateShift:
    """The shift by `step` places on ``(Z/m)^n``: ``y_i = x_{i+step}``."""

    m: int
    n: int
    step: int = 1

    @property
    def order(self):
        return self.m ** self.n

    def elements(self):
        return itertools.product(range(self.m), repeat=self.n)

    def __call__(self, x):
        k = self.step % self.n
        return x[k:] + x[:k]


@dataclass(frozen=True)
class CyclicModule:
    """``F_p[x]/(f)`` with multiplication by x; `f` is monic, highest degree first."""

    p: int
    f: tuple

    def __post_init__(self):
        f = tuple(int(c) % self.p for c in self.f)
        if not f or f[0] != 1:
            raise ValueError("modulus polynomial must be monic")
        object.__setattr__(self, "f", f)

    @property
    def degree(self):
        return len(self.f) - 1

    @property
    def order(self):
        return self.p ** self.degree

    def elements(self):
        # coefficient vectors, constant term first
        return itertools.product(range(self.p), repeat=self.degree)

    def __call__(self, v):
        if not v:
            return v
        top = v[-1]
        shifted = (0,) + v[:-1]
        # x^deg = -(f_1 x^(deg-1) + ... + f_deg)
        low = tuple(reversed(self.f[1:]))
        return tuple((a - top * c) % self.p for a, c in zip(shifted, low))

    def __str__(self):
        return f"F_{self.p}[x]/({_fmt_poly(self.f)})"


def _fmt_poly(f):
    x = sympy.Symbol("x")
    return str(sympy.Poly(list(f), x).as_expr()).replace("**", "^")


# -- censuses ------------------------------------------------------------

@dataclass(frozen=True)
class OrbitCensus:
    """Orbit length -> number of orbits, stored as sorted pairs."""

    entries: tuple

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self):
        return dict(self.entries)

    @property
    def order(self):
        return sum(k * v for k, v in self.entries)

    def fixed(self, m):
        """Points fixed by the m-th power."""
        return sum(k * v for k, v in self.entries if m % k == 0)

    def to_json(self):
        return {str(k): str(v) for k, v in self.entries}

    def __str__(self):
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.entries) + "}"


def _orbit_lengths(task, limit):
    system, chunk = task
    budget = Budget(limit, "orbit census")
    hist = {}
    for x in chunk:
        y, k = system(x), 1
        while y != x:
            budget.spend()
            y, k = system(y), k + 1
        budget.spend()
        hist[k] = hist.get(k, 0) + 1
    return hist, budget.used


def orbit_census(system, *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """Orbit census of a finite bijection, by iterating from every point.

    A point on an orbit of length k is counted with weight 1/k, so points can
    be processed independently and in any order.
    """
    pts = list(system.elements())
    nchunks = max(1, min(len(pts), 8 * max(jobs or 1, 1)))
    size = -(-len(pts) // nchunks)
    tasks = [(system, pts[i:i + size]) for i in range(0, len(pts), size)]
    parts, _ = run_branches(_orbit_lengths, tasks, jobs=jobs, max_nodes=max_nodes,
                            what="orbit census")
    hist = {}
    for part in parts:
        for k, v in part.items():
            hist[k] = hist.get(k, 0) + v
    if any(v % k for k, v in hist.items()):
        raise RuntimeError("map is not a bijection")
    return OrbitCensus.from_dict({k: v // k for k, v in hist.items()})


def census_from_fixed(fix, periods):
    """Census from ``fix(m)`` given a divisor-closed set containing all orbit lengths."""
    out = {}
    for m in sorted(periods):
        s = orbit_count(fix, m)
        if s < 0 or s % m:
            raise ValueError(f"fixed-point counts are not realizable at period {m}")
        out[m] = s // m
    return OrbitCensus.from_dict(out)


def census_product(a, b):
    """Census of the product action: fixed counts multiply."""
    lengths = [k for k, _ in a.entries] + [k for k, _ in b.entries]
    top = math.lcm(*lengths) if lengths else 1
    return census_from_fixed(lambda m: a.fixed(m) * b.fixed(m), divisors(top))


# -- module decomposition ------------------------------------------------

def _poly_mod_p(p, coeffs):
    return sympy.Poly(list(coeffs), sympy.Symbol("x"), modulus=p)


def _to_coeffs(P, p):
    return tuple(int(c) % p for c in P.all_coeffs())


def module_decompose(p, n, *, max_nodes=DEFAULT_MAX_NODES):
    """Split ``F_p[x]/(x^n - 1)`` into primary summands ``F_p[x]/(g^e)``.

    Returns a dict with the irreducible factorization, the summands with
    their censuses, and the census of the whole module.
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    full = (1,) + (0,) * (n - 1) + (-1,)
    _, facs = _poly_mod_p(p, full).factor_list()
    factors = sorted((_to_coeffs(g, p), e) for g, e in facs)
    summands = []
    for g, e in factors:
        f = _to_coeffs(_poly_mod_p(p, g) ** e, p)
        M = CyclicModule(p, f)
        summands.append({"module": M, "irreducible": g, "multiplicity": e,
                         "census": orbit_census(M, max_nodes=max_nodes)})
    whole = orbit_census(CyclicModule(p, full), max_nodes=max_nodes)
    return {"p": p, "n": n, "factors": factors, "summands": summands,
            "census": whole, "repeated_factors": any(e > 1 for _, e in factors)}


def split_module(p, n, parts, *, max_nodes=DEFAULT_MAX_NODES):
    """Summands ``F_p[x]/(f)`` for a coprime splitting ``x^n - 1 = prod f``.

    `parts` are monic polynomials (highest degree first); their product must
    be ``x^n - 1`` mod p and they must be pairwise coprime.
    """
    full = _poly_mod_p(p, (1,) + (0,) * (n - 1) + (-1,))
    polys = [_poly_mod_p(p, f) for f in parts]
    if math.prod(polys[1:], start=polys[0]) != full:
        raise ValueError("parts do not multiply to x^n - 1")
    for P, Q in itertools.combinations(polys, 2):
        if P.gcd(Q).degree() > 0:
            raise ValueError("parts are not coprime")
    out = []
    for P in polys:
        M = CyclicModule(p, _to_coeffs(P, p))
        out.append((M, orbit_census(M, max_nodes=max_nodes)))
    return out


def coarse_split(p, n, d):
    """The two-part splitting ``(x^d - 1) * (x^n - 1)/(x^d - 1)`` for ``d | n``."""
    if n % d:
        raise ValueError("d must divide n")
    x = sympy.Symbol("x")
    a = sympy.Poly(x ** d - 1, x, modulus=p)
    b = sympy.Poly(x ** n - 1, x, modulus=p).exquo(a)
    return [_to_coeffs(a, p), _to_coeffs(b, p)]


# -- direct factorizations of prime rotations -----------------------------

def rotation_factorizations(primes):
    """Every direct factorization of ``(prod Z/p, +1)`` for distinct primes.

    A factor is the rotation by 1 on the product over one block of a set
    partition of the primes, so there is one factorization per partition.
    """
    ps = sorted(set(int(p) for p in primes))
    if not ps:
        raise ValueError("need at least one prime")
    if len(ps) != len(list(primes)) or not all(sympy.isprime(p) for p in ps):
        raise ValueError("primes must be distinct primes")
    out = []
    for blocks in multiset_partitions(ps):
        out.append([FiniteRotation(tuple(b), (1,) * len(b)) for b in blocks])
    return out


def is_cyclic_rotation(r):
    """Whether r is a single orbit (a rotation of a cyclic group by a generator)."""
    return orbit_census(r).as_dict() == {r.order: 1}


def odometer_truncation(P):
    """Prime rotation ``prod_{p <= P} Z/p`` and the size of its factorizations.

    The finest factorization always has one factor per prime, so the number
    of direct-prime factors grows without bound as P grows.
    """
    ps = list(sympy.primerange(2, P + 1))
    return {"P": P, "primes": ps, "prime_factors": len(ps),
            "factorizations": int(sympy.bell(len(ps)))}
