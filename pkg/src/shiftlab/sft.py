"""Z^d shifts of finite type: specs, products, sublattices and periodic points.

Configurations fixed by a finite-index sublattice L are functions on the
finite torus Z^d / L; they are found by backtracking over a fundamental
domain with every forbidden pattern checked under wraparound.
"""

import itertools
import math
from dataclasses import dataclass, field

from ._util import DEFAULT_MAX_NODES, Budget, BudgetExceeded, run_branches
from .numtheory import CountSequence


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


@dataclass(frozen=True)
class Pattern:
    """A finite pattern; `cells` is a sorted tuple of ``(vector, symbol)``."""

    cells: tuple

    def __post_init__(self):
        if not self.cells:
            raise ValueError("pattern support must be nonempty")
        vecs = [v for v, _ in self.cells]
        if len(set(vecs)) != len(vecs):
            raise ValueError("pattern assigns a cell twice")
        if len({len(v) for v in vecs}) != 1:
            raise ValueError("pattern vectors have mixed dimensions")

    @classmethod
    def from_dict(cls, mapping):
        return cls(tuple(sorted((tuple(v), s) for v, s in mapping.items())))

    @property
    def dimension(self):
        return len(self.cells[0][0])

    @property
    def support(self):
        return tuple(v for v, _ in self.cells)

    def as_dict(self):
        return dict(self.cells)

    def extent(self, axis):
        xs = [v[axis] for v in self.support]
        return max(xs) - min(xs) + 1

    @property
    def diameter(self):
        return max(self.extent(i) for i in range(self.dimension))

    def normalized(self):
        """Translate so that the smallest coordinate on every axis is 0."""
        lo = [min(v[i] for v in self.support) for i in range(self.dimension)]
        return Pattern(tuple(sorted((tuple(a - b for a, b in zip(v, lo)), s)
                                    for v, s in self.cells)))


@dataclass(frozen=True)
class SftSpec:
    dimension: int
    alphabet: tuple
    forbidden: frozenset = frozenset()
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must be a nonempty set of distinct symbols")
        forb = frozenset(p.normalized() for p in self.forbidden)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "forbidden", forb)
        syms = set(self.alphabet)
        for p in forb:
            if p.dimension != self.dimension:
                raise ValueError("pattern dimension does not match the SFT")
            if any(s not in syms for _, s in p.cells):
                raise ValueError("pattern uses a symbol outside the alphabet")

    def __repr__(self):
        if self.name:
            return f"SftSpec<{self.name}>"
        return (f"SftSpec(d={self.dimension}, |A|={len(self.alphabet)}, "
                f"{len(self.forbidden)} forbidden)")

    @property
    def is_full(self):
        return not self.forbidden

    @property
    def diameter(self):
        return max((p.diameter for p in self.forbidden), default=1)


def full_shift(n, d):
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return SftSpec(d, tuple(range(n)), frozenset(), name=f"full({n},{d})")


def golden_mean():
    """The 1-D shift on {0, 1} with no two adjacent 1s."""
    p = Pattern.from_dict({(0,): 1, (1,): 1})
    return SftSpec(1, (0, 1), frozenset([p]), name="goldenmean")


def product_sft(X, Y):
    """Direct product; each factor's patterns are lifted to its coordinate."""
    if X.dimension != Y.dimension:
        raise ValueError(f"dimension mismatch: {X.dimension} != {Y.dimension}")
    alphabet = tuple(itertools.product(X.alphabet, Y.alphabet))
    forbidden = set()
    for p, other, first in [(p, Y.alphabet, True) for p in X.forbidden] + \
                           [(p, X.alphabet, False) for p in Y.forbidden]:
        vecs, syms = zip(*p.cells)
        for fill in itertools.product(other, repeat=len(vecs)):
            pairs = [(s, t) if first else (t, s) for s, t in zip(syms, fill)]
            forbidden.add(Pattern(tuple(sorted(zip(vecs, pairs)))))
    name = f"{X.name}x{Y.name}" if X.name and Y.name else None
    return SftSpec(X.dimension, alphabet, frozenset(forbidden), name=name)


# -- sublattices ---------------------------------------------------------

@dataclass(frozen=True)
class Sublattice:
    """Finite-index subgroup of Z^d spanned by the rows of an HNF basis.

    The basis is upper triangular with positive diagonal, and every entry
    above a diagonal entry lies in ``[0, diagonal)``.
    """

    basis: tuple

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", B)
        d = len(B)
        if d == 0 or any(len(r) != d for r in B):
            raise ValueError("basis must be a nonempty square matrix")
        for i in range(d):
            if B[i][i] <= 0:
                raise ValueError("diagonal entries must be positive")
            for j in range(i):
                if B[i][j] != 0:
                    raise ValueError("basis must be upper triangular")
            for j in range(i + 1, d):
                if not 0 <= B[i][j] < B[j][j]:
                    raise ValueError("off-diagonal entries must be reduced")

    @classmethod
    def diagonal(cls, *periods):
        d = len(periods)
        return cls(tuple(tuple(periods[i] if i == j else 0 for j in range(d))
                         for i in range(d)))

    @classmethod
    def from_generators(cls, gens):
        return cls(hermite_normal_form(gens))

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def index(self):
        return math.prod(self.basis[i][i] for i in range(self.dimension))

    @property
    def generators(self):
        return self.basis

    def reduce(self, v):
        """Canonical representative of ``v + L`` inside the fundamental domain."""
        v = list(v)
        B = self.basis
        for i in range(self.dimension):
            q = v[i] // B[i][i]
            if q:
                row = B[i]
                for j in range(i, self.dimension):
                    v[j] -= q * row[j]
        return tuple(v)

    def contains(self, v):
        return not any(self.reduce(v))

    def cells(self):
        """Fundamental domain, first coordinate varying fastest."""
        ranges = [range(self.basis[i][i]) for i in range(self.dimension)]
        return [tuple(reversed(c)) for c in itertools.product(*reversed(ranges))]

    def to_json(self):
        return [list(r) for r in self.basis]

    def __str__(self):
        return ";".join(",".join(map(str, r)) for r in self.basis)


def hermite_normal_form(gens):
    """Row-style HNF of the lattice spanned by integer vectors `gens`."""
    rows = [list(map(int, g)) for g in gens]
    if not rows:
        raise ValueError("no generators")
    d = len(rows[0])
    out = []
    for col in range(d):
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            raise ValueError("generators do not span a full-rank lattice")
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] != 0 else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        rows = [r for r in rest if any(r)]
    for j in range(d):
        for i in range(j):
            q = out[i][j] // out[j][j]
            out[i] = [a - q * b for a, b in zip(out[i], out[j])]
    return tuple(tuple(r) for r in out)


def sublattices_of_index(d, k):
    """Every sublattice of Z^d of index `k`, each exactly once (HNF order)."""
    if d not in (1, 2, 3):
        raise ValueError(f"unsupported dimension {d}; only d <= 3")
    if k < 1:
        raise ValueError("index must be >= 1")
    out = []

    def diagonals(rem, slots):
        if slots == 1:
            yield (rem,)
            return
        for a in range(1, rem + 1):
            if rem % a == 0:
                for tail in diagonals(rem // a, slots - 1):
                    yield (a,) + tail

    for diag in diagonals(k, d):
        slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
        for offs in itertools.product(*[range(diag[j]) for _, j in slots]):
            B = [[0] * d for _ in range(d)]
            for i in range(d):
                B[i][i] = diag[i]
            for (i, j), x in zip(slots, offs):
                B[i][j] = x
            out.append(Sublattice(tuple(map(tuple, B))))
    return out


@dataclass(frozen=True)
class TorusConfiguration:
    """An L-periodic configuration stored on the fundamental domain of L."""

    lattice: Sublattice
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.lattice.index:
            raise ValueError("need exactly one value per fundamental-domain cell")

    def __getitem__(self, v):
        return self.values[self._pos[self.lattice.reduce(v)]]

    @property
    def _pos(self):
        cache = self.__dict__.get("_pos_cache")
        if cache is None:
            cache = {c: i for i, c in enumerate(self.lattice.cells())}
            object.__setattr__(self, "_pos_cache", cache)
        return cache

    def as_dict(self):
        return dict(zip(self.lattice.cells(), self.values))

    def shifted(self, m):
        """The configuration ``n -> x[n + m]``."""
        cells = self.lattice.cells()
        return TorusConfiguration(self.lattice,
                                  tuple(self[_add(c, m)] for c in cells))

    def contains_pattern(self, pattern, at):
        return all(self[_add(v, at)] == s for v, s in pattern.cells)

    def is_valid(self, X):
        cells = self.lattice.cells()
        return not any(self.contains_pattern(p, g)
                       for p in X.forbidden for g in cells)


# -- backtracking engine ---------------------------------------------------

class _Problem:
    """Constraint tables for assigning symbols to an ordered list of cells.

    ``rules[pos][sym]`` lists the other requirements ``((p, s), ...)`` of
    every pattern occurrence completed by putting `sym` at `pos`; the
    assignment is rejected if any such list is fully matched.
    """

    def __init__(self, X, cells, locate, pinned=None):
        self.n_syms = len(X.alphabet)
        self.size = len(cells)
        sym_index = {s: i for i, s in enumerate(X.alphabet)}
        rules = [[set() for _ in range(self.n_syms)] for _ in cells]
        dead = [set() for _ in cells]
        for pat in X.forbidden:
            coded = [(v, sym_index[s]) for v, s in pat.cells]
            for g in cells:
                req = {}
                ok = True
                for v, s in coded:
                    p = locate(_add(v, g))
                    if p is None or req.get(p, s) != s:
                        ok = False
                        break
                    req[p] = s
                if not ok:
                    continue
                last = max(req)
                s_last = req.pop(last)
                if req:
                    rules[last][s_last].add(tuple(sorted(req.items())))
                else:
                    dead[last].add(s_last)
        self.rules = [[tuple(r) for r in per] for per in rules]
        allowed = [[s for s in range(self.n_syms) if s not in dead[p]]
                   for p in range(self.size)]
        for p, s in (pinned or {}).items():
            allowed[p] = [sym_index[s]] if sym_index[s] in allowed[p] else []
        self.allowed = allowed

    def branches(self):
        if self.size == 0:
            return [None]
        return list(range(self.n_syms))


def _search(problem, first, limit, collect):
    """DFS with the first cell forced to `first`. Returns (result, nodes)."""
    budget = Budget(limit, "fixed-point search")
    size = problem.size
    rules = problem.rules
    allowed = problem.allowed
    a = [0] * size
    found = [] if collect else None
    count = 0

    def ok(pos, sym):
        for req in rules[pos][sym]:
            for p, s in req:
                if a[p] != s:
                    break
            else:
                return False
        return True

    def rec(pos):
        nonlocal count
        if pos == size:
            count += 1
            if collect:
                found.append(tuple(a))
            return
        for sym in allowed[pos]:
            budget.spend()
            if ok(pos, sym):
                a[pos] = sym
                rec(pos + 1)

    if size == 0:
        count = 1
        if collect:
            found.append(())
    elif first in allowed[0]:
        budget.spend()
        if ok(0, first):
            a[0] = first
            rec(1)
    return (found if collect else count), budget.used


def _search_task(args, limit):
    problem, first, collect = args
    return _search(problem, first, limit, collect)


def _solve(X, problem, collect, jobs, max_nodes):
    tasks = [(problem, b, collect) for b in problem.branches()]
    parts, _ = run_branches(_search_task, tasks, jobs=jobs,
                            max_nodes=max_nodes, what="fixed-point search")
    if collect:
        return [tuple(X.alphabet[s] for s in row) for part in parts for row in part]
    return sum(parts)


def fixed_points(X, L, mode="count", *, pinned=None, jobs=1,
                 max_nodes=DEFAULT_MAX_NODES):
    """Count or enumerate the points of X fixed by every shift in L.

    In ``"enumerate"`` mode a list of TorusConfiguration is returned, in a
    deterministic order that does not depend on `jobs`. `pinned` maps
    fundamental-domain cells to forced symbols.
    """
    if mode not in ("count", "enumerate"):
        raise ValueError(f"unknown mode {mode!r}")
    if L.dimension != X.dimension:
        raise ValueError("sublattice and spec dimensions differ")
    cells = L.cells()
    pos = {c: i for i, c in enumerate(cells)}
    pin = {pos[L.reduce(c)]: s for c, s in (pinned or {}).items()}
    problem = _Problem(X, cells, lambda v: pos[L.reduce(v)], pin)
    res = _solve(X, problem, mode == "enumerate", jobs, max_nodes)
    if mode == "count":
        return res
    return [TorusConfiguration(L, vals) for vals in res]


def box_cells(shape):
    """Cells of the box ``prod(range(s))``, first coordinate varying fastest."""
    return [tuple(reversed(c)) for c in
            itertools.product(*[range(s) for s in reversed(shape)])]


def box_patterns(X, shape, mode="count", *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """Locally admissible patterns on a box: no forbidden pattern inside it.

    Enumerated patterns are dicts from cell to symbol.
    """
    if len(shape) != X.dimension:
        raise ValueError("box shape and spec dimensions differ")
    cells = box_cells(shape)
    pos = {c: i for i, c in enumerate(cells)}
    problem = _Problem(X, cells, pos.get)
    res = _solve(X, problem, mode == "enumerate", jobs, max_nodes)
    if mode == "count":
        return res
    return [dict(zip(cells, row)) for row in res]


def count_box_patterns(X, shape, max_nodes=DEFAULT_MAX_NODES):
    """Number of locally admissible patterns on a box, by slice transfer.

    The box is swept along axis 0; the state is the last ``s - 1`` slices,
    where `s` is the largest axis-0 extent of a forbidden pattern.
    """
    if len(shape) != X.dimension:
        raise ValueError("box shape and spec dimensions differ")
    length, cross = shape[0], tuple(shape[1:])
    span = max((p.extent(0) for p in X.forbidden), default=1)
    sym_index = {s: i for i, s in enumerate(X.alphabet)}
    xcells = box_cells(cross) if cross else [()]
    budget = Budget(max_nodes, "box pattern count")

    tables = {}

    def table(w):
        # occurrences whose axis-0 extent ends in the last slice of a w-window
        if w in tables:
            return tables[w]
        xpos = {c: i for i, c in enumerate(xcells)}
        occ = set()
        for pat in X.forbidden:
            e = pat.extent(0)
            if e > w:
                continue
            shift0 = w - e
            for g in xcells:
                req = []
                ok = True
                for v, s in pat.cells:
                    t = v[0] + shift0
                    c = _add(v[1:], g)
                    if c not in xpos:
                        ok = False
                        break
                    req.append((t, xpos[c], sym_index[s]))
                if ok and len({(t, c) for t, c, _ in req}) == len(req):
                    occ.add(tuple(sorted(req)))
        tables[w] = tuple(occ)
        return tables[w]

    succ_cache = {}

    def successors(state):
        # state: tuple of previous slices (oldest first), each a symbol tuple
        key = state
        if key in succ_cache:
            return succ_cache[key]
        w = len(state) + 1
        n = len(xcells)
        pending = [[] for _ in range(n)]
        for req in table(w):
            new = []
            ok = True
            for t, c, s in req:
                if t < w - 1:
                    if state[t][c] != s:
                        ok = False
                        break
                else:
                    new.append((c, s))
            if not ok:
                continue
            last = max(c for c, _ in new)
            pending[last].append(new)
        a = [0] * n
        out = []

        def rec(p):
            if p == n:
                out.append(tuple(a))
                return
            for sym in range(len(X.alphabet)):
                budget.spend()
                a[p] = sym
                for req in pending[p]:
                    if all(a[c] == s for c, s in req):
                        break
                else:
                    rec(p + 1)

        rec(0)
        succ_cache[key] = out
        return out

    keep = span - 1
    dist = {(): 1}
    for _ in range(length):
        nxt = {}
        for state, cnt in dist.items():
            for sl in successors(state):
                ns = (state + (sl,))[-keep:] if keep else ()
                nxt[ns] = nxt.get(ns, 0) + cnt
        dist = nxt
    return sum(dist.values())


# -- periodic data ---------------------------------------------------------

def periodic_count_sequence(X, horizon, *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """|X^(n)| for n <= horizon (d = 1), or |X^(L)| for every L of index <= horizon."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    entries = []
    for k in range(1, horizon + 1):
        for L in sublattices_of_index(X.dimension, k):
            c = fixed_points(X, L, jobs=jobs, max_nodes=max_nodes)
            entries.append((k if X.dimension == 1 else L, c))
    return CountSequence(entries)


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    horizon: int
    witness: object = None
    counts: tuple = None

    def to_json(self):
        w = self.witness
        return {
            "verdict": ("equivalent-up-to-horizon" if self.equivalent
                        else "counterexample"),
            "horizon": self.horizon,
            "witness": w.to_json() if hasattr(w, "to_json") else w,
            "counts": None if self.counts is None else [str(c) for c in self.counts],
        }


def periodically_equivalent(X, Y, horizon, *, jobs=1, max_nodes=DEFAULT_MAX_NODES):
    """Compare fixed-point counts over every sublattice of index <= horizon."""
    if X.dimension != Y.dimension:
        raise ValueError(f"dimension mismatch: {X.dimension} != {Y.dimension}")
    for k in range(1, horizon + 1):
        for L in sublattices_of_index(X.dimension, k):
            a = fixed_points(X, L, jobs=jobs, max_nodes=max_nodes)
            b = fixed_points(Y, L, jobs=jobs, max_nodes=max_nodes)
            if a != b:
                key = k if X.dimension == 1 else L
                return Equivalence(False, horizon, key, (a, b))
    return Equivalence(True, horizon)


def entropy_box_estimate(X, n, max_nodes=DEFAULT_MAX_NODES):
    """``log(#patterns on [-n, n]^d) / (2n + 1)^d`` over locally admissible patterns."""
    if n < 0:
        raise ValueError("box radius must be >= 0")
    side = 2 * n + 1
    count = count_box_patterns(X, (side,) * X.dimension, max_nodes=max_nodes)
    if count == 0:
        return 0.0
    return math.log(count) / side ** X.dimension


__all__ = [
    "BudgetExceeded", "Pattern", "SftSpec", "Sublattice", "TorusConfiguration",
    "Equivalence", "full_shift", "golden_mean", "product_sft",
    "sublattices_of_index", "hermite_normal_form", "fixed_points",
    "box_patterns", "count_box_patterns", "periodic_count_sequence",
    "periodically_equivalent", "entropy_box_estimate",
]
