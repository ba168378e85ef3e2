"""Multi-index arithmetic, lexicographic order, and constrained enumeration.

A multi-index is a tuple of non-negative integer exponents.  A constraint
Q = (Q_1, ..., Q_n) with n <= r bounds the first n exponents; M_Q(d) denotes
the set of multi-indexes of dimension r and degree d with I_i <= Q_i for
i <= n, and m_Q(d) its cardinality.  Closed-form counts are available for
several constraint shapes; `closed_form_count` reports applicability instead
of silently falling back.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class ClosedFormNotApplicable(Exception):
    """No closed-form count covers this (constraint shape, degree) pair."""


def degree(m):
    """Degree of a multi-index: the sum of its entries."""
    return sum(m)


def lex_compare(a, b):
    """Compare two multi-indexes lexicographically.

    Returns -1, 0 or 1.  The larger multi-index is the one with the larger
    entry at the leftmost coordinate where they differ.
    """
    if len(a) != len(b):
        raise ValueError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    return 0


def combine(a, b, mode="add"):
    """Componentwise sum or difference of two multi-indexes."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    if mode == "add":
        return tuple(x + y for x, y in zip(a, b))
    if mode == "subtract":
        out = tuple(x - y for x, y in zip(a, b))
        if any(x < 0 for x in out):
            raise ValueError("subtraction gives a negative entry: %r" % (out,))
        return out
    raise ValueError("unknown mode %r" % (mode,))


@dataclass(frozen=True)
class Constraint:
    """Exponent bounds Q = (Q_1, ..., Q_n) inside dimension r, top degree j."""

    bounds: tuple
    r: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        if len(self.bounds) > self.r:
            raise ValueError("more bounds than coordinates")
        for q in self.bounds:
            if not 0 <= q <= self.j:
                raise ValueError("bound %d outside [0, %d]" % (q, self.j))

    @property
    def a(self):
        return tuple(q + 1 for q in self.bounds)

    @property
    def q(self):
        return sum(self.bounds)

    @property
    def s_n(self):
        return sum(self.a)

    @property
    def p_n(self):
        p = 1
        for x in self.a:
            p *= x
        return p

    def to_json(self):
        return {"bounds": list(self.bounds), "r": self.r, "j": self.j}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["bounds"]), obj["r"], obj["j"])


def effective_bounds(bounds, j=None, d=None):
    """Bounds that actually constrain: drops entries equal to j.

    A bound Q_i = j never excludes a monomial of degree <= j, so the counting
    formulas treat that coordinate as unconstrained.  The normalization is
    only sound at degrees d <= j, so it is skipped when d exceeds j.
    """
    if j is None or (d is not None and d > j):
        return tuple(bounds)
    return tuple(q for q in bounds if q != j)


def enumerate_constrained(r, d, bounds=()):
    """All multi-indexes of dimension r, degree d with I_i <= bounds[i].

    Coordinates beyond len(bounds) are unconstrained.  The list is in strictly
    descending lexicographic order (the order used for matrix row and column
    indexing throughout).
    """
    bounds = tuple(bounds)
    if len(bounds) > r:
        raise ValueError("more bounds than coordinates")
    if d < 0 or r == 0:
        return [()] if (r == 0 and d == 0) else []
    caps = [bounds[i] if i < len(bounds) else d for i in range(r)]
    # Suffix capacity: the largest degree positions i..r-1 can absorb.
    tail_cap = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        tail_cap[i] = tail_cap[i + 1] + caps[i]
    if d > tail_cap[0]:
        return []

    def fill(cur, start, rem):
        # Greedily maximize entries from position `start` on.
        for i in range(start, r):
            take = min(caps[i], rem)
            cur[i] = take
            rem -= take

    cur = [0] * r
    fill(cur, 0, d)
    out = [tuple(cur)]
    while True:
        # Find the rightmost position (before the last) whose entry can be
        # decremented while the tail still absorbs the remainder.
        k = r - 2
        suffix = cur[r - 1]
        while k >= 0:
            suffix += cur[k]
            if cur[k] > 0 and suffix - (cur[k] - 1) <= tail_cap[k + 1]:
                break
            k -= 1
        if k < 0:
            return out
        cur[k] -= 1
        fill(cur, k + 1, suffix - cur[k])
        out.append(tuple(cur))


def _monomial_count(nvars, d):
    """Number of degree-d monomials in nvars unconstrained variables."""
    if d < 0:
        return 0
    if nvars == 0:
        return 1 if d == 0 else 0
    return comb(d + nvars - 1, nvars - 1)


def closed_form_count(r, d, bounds=(), j=None):
    """Closed-form m_Q(d), or None when no formula covers the input.

    The applicable formula depends on the effective constraint count n
    (bounds equal to j are discarded first; bound order never matters):

    * n = 0: the plain monomial count C(d+r-1, r-1).
    * n = r: 0 once d exceeds q = sum of bounds.
    * n = r-1: product of (Q_i + 1) for d >= q.
    * n = r-2: P_n(2d - S_n + r)/2 for d >= q, where S_n / P_n are the sum
      and product of the a_i = Q_i + 1.  For r = 3 and r = 4 the range
      extends down to d >= q-1, with a +1 correction at exactly d = q-2 and
      a plain binomial below every bound.
    * n = r-3, d >= q: a sum of triangle numbers over the constrained block;
      quadratic polynomial forms for r = 4 and r = 5.
    """
    eff = effective_bounds(bounds, j, d)
    n = len(eff)
    if d < 0:
        return 0
    if n == 0:
        return _monomial_count(r, d)
    a = [q + 1 for q in eff]
    q = sum(eff)
    if n == r:
        return 0 if d > q else None
    if n == r - 1:
        if d >= q:
            p = 1
            for x in a:
                p *= x
            return p
        return None
    if n == r - 2:
        s_n = sum(a)
        p_n = 1
        for x in a:
            p_n *= x
        if r == 3:
            a1 = a[0]
            if d >= q - 1:
                return _half(a1 * (2 * d - a1 + 3))
            if d == q - 2:
                return _half(a1 * (2 * d - a1 + 3)) + 1
            if d < a1:
                return comb(d + 2, 2)
            return None
        if r == 4:
            a1, a2 = sorted(a)
            if d >= q - 1:
                return _half(p_n * (2 * d - a1 - a2 + 4))
            if d == q - 2:
                return _half(p_n * (2 * d - a1 - a2 + 4)) + 1
            if d < a1:
                return comb(d + 3, 3)
            return None
        if d >= q:
            return _half(p_n * (2 * d - s_n + r))
        return None
    if n == r - 3 and d >= q:
        if r == 4:
            a1 = a[0]
            # a1 * [3d^2 + 3(4-a1)d + a1^2 - 6a1 + 11] / 6
            num = a1 * (3 * d * d + 3 * (4 - a1) * d + a1 * a1 - 6 * a1 + 11)
            assert num % 6 == 0
            return num // 6
        if r == 5:
            a1, a2 = a
            c0 = 2 * (a1 * a1 + a2 * a2) - 15 * (a1 + a2) + 3 * a1 * a2 + 35
            num = a1 * a2 * (6 * d * d + 6 * (5 - a1 - a2) * d + c0)
            assert num % 12 == 0
            return num // 12
        total = 0
        for prefix in _prefixes(eff, d):
            total += comb(d - sum(prefix) + 2, 2)
        return total
    return None


def _half(x):
    assert x % 2 == 0, "count formula gave an odd numerator"
    return x // 2


def _prefixes(bounds, d):
    """All tuples (d_1, ..., d_n) with 0 <= d_i <= bounds[i] and sum <= d."""
    if not bounds:
        yield ()
        return
    for head in range(min(bounds[0], d) + 1):
        for tail in _prefixes(bounds[1:], d - head):
            yield (head,) + tail


def count_constrained(r, d, bounds=(), j=None, method="auto"):
    """m_Q(d) = #M_Q(d).

    method="enumerate" counts by explicit enumeration, "closed_form" uses the
    proposition formulas and raises ClosedFormNotApplicable outside their
    stated ranges, "auto" prefers the closed form and falls back.
    """
    if method == "enumerate":
        return len(enumerate_constrained(r, d, bounds))
    cf = closed_form_count(r, d, bounds, j)
    if method == "closed_form":
        if cf is None:
            raise ClosedFormNotApplicable(
                "no closed form for r=%d d=%d bounds=%r" % (r, d, tuple(bounds)))
        return cf
    if method == "auto":
        if cf is not None:
            return cf
        return len(enumerate_constrained(r, d, bounds))
    raise ValueError("unknown method %r" % (method,))
