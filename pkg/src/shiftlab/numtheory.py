"""Divisors, the Moebius function and orbit counts from fixed-point counts."""

from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def mobius(n):
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    return int(sympy.mobius(n))


def divisors(n):
    return [int(x) for x in sympy.divisors(n)]


def orbit_count(fix, n):
    """Moebius sum whose quotient by `n` is the number of least-period-`n` orbits.

    ``fix(m)`` must return ``|X^(m)|``. The sum is returned undivided so the
    caller can test exact divisibility.
    """
    return sum(mobius(n // m) * fix(m) for m in divisors(n))


def orbit_counts(fix_counts):
    """Map {period: fixed count} (divisor-closed keys) to {period: orbit count}.

    Raises ValueError when some Moebius sum is negative or not divisible by
    the period, i.e. the counts cannot come from an actual action.
    """
    out = {}
    for n in sorted(fix_counts):
        s = orbit_count(fix_counts.__getitem__, n)
        if s < 0 or s % n:
            raise ValueError(f"counts are not orbit-realizable at period {n}")
        out[n] = s // n
    return out


def is_orbit_realizable(fix_counts):
    try:
        orbit_counts(fix_counts)
    except (ValueError, KeyError):
        return False
    return True


def is_divisor_closed(periods):
    ps = set(periods)
    return all(m in ps for n in ps for m in divisors(n))


class CountSequence:
    """Fixed-point counts keyed by period (d = 1) or by sublattice (d >= 2)."""

    def __init__(self, entries):
        self.entries = tuple((k, int(c)) for k, c in entries)
        for _, c in self.entries:
            if c < 0:
                raise ValueError("counts must be nonnegative")

    @classmethod
    def from_periods(cls, counts, start=1):
        return cls((start + i, c) for i, c in enumerate(counts))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, CountSequence) and self.entries == other.entries

    def __repr__(self):
        return f"CountSequence({list(self.entries)!r})"

    def as_dict(self):
        return dict(self.entries)

    @property
    def counts(self):
        return tuple(c for _, c in self.entries)

    def orbit_counts(self):
        return orbit_counts(self.as_dict())

    def is_orbit_realizable(self):
        return is_orbit_realizable(self.as_dict())

    def to_json(self):
        out = []
        for k, c in self.entries:
            key = k.to_json() if hasattr(k, "to_json") else k
            out.append({"lattice" if hasattr(k, "to_json") else "period": key,
                        "count": str(c)})
        return out
