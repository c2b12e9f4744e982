"""Exact univariate polynomials over Q and Sturm-sequence root isolation.

Polynomials are tuples of coefficients, highest degree first. Integer
factorization and resultants are delegated to sympy; everything that
certifies a real root (counting, isolating, refining) is done here with
Fractions.
"""

from fractions import Fraction

import sympy

_x, _y = sympy.symbols("x y")


def normalize(p):
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return tuple(p) if p else (0,)


def degree(p):
    p = normalize(p)
    return -1 if p == (0,) else len(p) - 1


def evaluate(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p):
    n = len(p) - 1
    return normalize(tuple(c * (n - i) for i, c in enumerate(p[:-1]))) if n else (0,)


def divmod_poly(a, b):
    a = [Fraction(c) for c in normalize(a)]
    b = [Fraction(c) for c in normalize(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a != [0]:
        f = a[0] / b[0]
        k = len(a) - len(b)
        q[len(q) - 1 - k] = f
        for i, c in enumerate(b):
            a[i] -= f * c
        a.pop(0)
        if not a:
            a = [Fraction(0)]
    return normalize(q), normalize(a)


def gcd_poly(a, b):
    a, b = normalize(a), normalize(b)
    while b != (0,):
        a, b = b, divmod_poly(a, b)[1]
    if a == (0,):
        return a
    return tuple(Fraction(c) / a[0] for c in a)


def squarefree(p):
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0] if degree(g) > 0 else normalize(p)


def sturm_sequence(p):
    seq = [normalize(p), derivative(p)]
    while degree(seq[-1]) > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if r == (0,):
            break
        seq.append(tuple(-c for c in r))
    return seq


def _variations(vals):
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at(seq, x):
    if x == "inf":
        return [p[0] for p in seq]
    if x == "-inf":
        return [p[0] * (-1) ** degree(p) for p in seq]
    return [evaluate(p, x) for p in seq]


def count_roots(p, lo, hi, seq=None):
    """Number of distinct real roots in ``(lo, hi]``; ends may be "-inf"/"inf"."""
    if degree(p) <= 0:
        return 0
    seq = seq or sturm_sequence(p)
    return _variations(_sign_at(seq, lo)) - _variations(_sign_at(seq, hi))


def root_bound(p):
    """Cauchy bound: every root has modulus below the returned integer."""
    p = normalize(p)
    lead = abs(Fraction(p[0]))
    return int(1 + max((abs(Fraction(c)) / lead for c in p[1:]), default=0)) + 1


def isolate_real_roots(p):
    """Disjoint rational intervals ``(lo, hi]``, one per distinct real root, ascending."""
    if degree(p) <= 0:
        return []
    seq = sturm_sequence(p)
    B = Fraction(root_bound(p))
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def refine(p, interval, width, seq=None):
    """Bisect an isolating interval of `p` until it is at most `width` wide."""
    lo, hi = map(Fraction, interval)
    seq = seq or sturm_sequence(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            return mid, mid
        if count_roots(p, lo, mid, seq):
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- sympy bridges -------------------------------------------------------

def to_sympy(p, var=_x):
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                       for c in p], var)


def _rational(c):
    f = Fraction(int(c.p), int(c.q))
    return int(f) if f.denominator == 1 else f


def from_sympy(P):
    return tuple(_rational(sympy.Rational(c)) for c in P.all_coeffs())


def as_integer(p):
    out = []
    for c in p:
        c = Fraction(c)
        if c.denominator != 1:
            raise ValueError("polynomial has non-integer coefficients")
        out.append(int(c))
    return tuple(out)


def factor_over_q(p):
    """Irreducible monic-primitive factors over Q with multiplicities."""
    _, facs = to_sympy(p).factor_list()
    return [(as_integer(from_sympy(f)), m) for f, m in facs]


def is_irreducible(p):
    facs = factor_over_q(p)
    return degree(p) >= 1 and len(facs) == 1 and facs[0][1] == 1


def product_root_poly(p, q):
    """Polynomial whose roots are the products ``a * b`` of roots of p and q."""
    P = to_sympy(p, _x).as_expr()
    m = degree(q)
    Q = sympy.expand(_x ** m * to_sympy(q, _y).as_expr().subs(_y, _y / _x))
    R = sympy.Poly(sympy.resultant(P, Q, _x), _y)
    return from_sympy(R)


def parse_poly(text):
    """Parse an integer polynomial in x such as ``"x^2-x-1"``."""
    expr = sympy.sympify(text.replace("^", "**"), locals={"x": _x})
    P = sympy.Poly(expr, _x)
    return as_integer(from_sympy(P))


def format_poly(p):
    return str(to_sympy(p).as_expr()).replace("**", "^")
