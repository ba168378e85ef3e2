"""Symbolic PV/L-matrices, G_Q block patterns, and determinant oracles.

A PV-matrix has entries that are either zero or a positive integer multiple
of a single variable.  A variable "moves to the left" when, for any two of
its occurrences, the one in the lower row sits strictly further left; an
L-matrix is a PV-matrix all of whose variables move left.

A square L-matrix with G_Q block pattern (block rows indexed by G_Q in
descending lexicographic order, block columns in ascending order, block
(I, J) all-nonzero exactly when I dominates J) has nonzero determinant iff
the block excesses A_I = r_I - c_I sum to a nonnegative value over every
nonempty proper topset of G_Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import exactalg
from .gqposet import GQPoset, enumerate_topsets

EXACT_DET_LIMIT = 7


@dataclass(frozen=True)
class SymbolicMatrix:
    """Rectangular grid of entries, each None or (lam, var) with lam >= 1."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged entry grid")
        for r in rows:
            for cell in r:
                if cell is None:
                    continue
                lam, _ = cell
                if lam < 1:
                    raise ValueError("nonzero entries need a positive factor")
        object.__setattr__(self, "entries", rows)

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def variables(self):
        out = set()
        for r in self.entries:
            for cell in r:
                if cell is not None:
                    out.add(cell[1])
        return out

    def submatrix(self, rows, cols):
        return SymbolicMatrix(tuple(tuple(self.entries[i][j] for j in cols)
                                    for i in rows))

    def to_json(self):
        return [[0 if cell is None else [cell[0], cell[1]] for cell in row]
                for row in self.entries]

    @classmethod
    def from_json(cls, grid):
        return cls(tuple(tuple(None if cell == 0 else (cell[0], cell[1])
                               for cell in row) for row in grid))


@dataclass(frozen=True)
class Classification:
    is_pv: bool
    moving_left_variables: frozenset
    is_l_matrix: bool


def classify(m):
    """PV/L classification with the set of variables that move left."""
    occ = {}
    for i, row in enumerate(m.entries):
        for j, cell in enumerate(row):
            if cell is not None:
                occ.setdefault(cell[1], []).append((i, j))
    moving = set()
    for var, places in occ.items():
        places.sort()
        ok = True
        for (r1, c1), (r2, c2) in itertools.combinations(places, 2):
            # lower row <=> strictly further left
            if not ((r1 < r2) == (c1 > c2) and r1 != r2 and c1 != c2):
                ok = False
                break
        if ok:
            moving.add(var)
    return Classification(True, frozenset(moving), len(moving) == len(occ))


@dataclass(frozen=True)
class GQBlockStructure:
    """Block sizes r_I, c_I over G_Q with excesses A_I = r_I - c_I."""

    poset: GQPoset
    r: dict
    c: dict

    def __post_init__(self):
        for e in self.poset.elements:
            if self.r.get(e, 0) < 0 or self.c.get(e, 0) < 0:
                raise ValueError("negative block size")

    @property
    def row_order(self):
        """Block-row indexes in descending lexicographic order."""
        return sorted(self.poset.elements, reverse=True)

    @property
    def col_order(self):
        """Block-column indexes in ascending (reverse of row) order."""
        return sorted(self.poset.elements)

    def excess(self, i):
        return self.r.get(i, 0) - self.c.get(i, 0)

    @property
    def total_rows(self):
        return sum(self.r.get(e, 0) for e in self.poset.elements)

    @property
    def total_cols(self):
        return sum(self.c.get(e, 0) for e in self.poset.elements)

    @property
    def is_square(self):
        return self.total_rows == self.total_cols

    def row_spans(self):
        spans = {}
        at = 0
        for e in self.row_order:
            spans[e] = (at, at + self.r.get(e, 0))
            at = spans[e][1]
        return spans

    def col_spans(self):
        spans = {}
        at = 0
        for e in self.col_order:
            spans[e] = (at, at + self.c.get(e, 0))
            at = spans[e][1]
        return spans


def verify_gq_pattern(m, structure):
    """Is every block all-nonzero when row index dominates column index,
    and all-zero otherwise?"""
    if m.nrows != structure.total_rows or m.ncols != structure.total_cols:
        raise ValueError("matrix shape does not match block sizes")
    rspans = structure.row_spans()
    cspans = structure.col_spans()
    for bi in structure.poset.elements:
        r0, r1 = rspans[bi]
        for bj in structure.poset.elements:
            c0, c1 = cspans[bj]
            want_nonzero = structure.poset.dominates(bi, bj)
            for i in range(r0, r1):
                for j in range(c0, c1):
                    if (m.entries[i][j] is not None) != want_nonzero:
                        return False
    return True


def gq3_criterion(structure, condition="topsets"):
    """Nonsingularity criterion for a square G_Q-pattern L-matrix.

    condition selects one of the equivalent forms:
    - "topsets": excess sums >= 0 over nonempty proper topsets of G_Q;
    - "topsets_no_bottom": same over nonempty topsets of G_Q minus Q;
    - "bottomsets": excess sums <= 0 over nonempty proper bottomsets;
    - "bottomsets_no_top": same over nonempty bottomsets of G_Q minus 0.
    """
    if not structure.is_square:
        raise ValueError("criterion requires a square structure")
    poset = structure.poset
    elements = set(poset.elements)
    tops = [t.members for t in enumerate_topsets(poset, "proper_nonempty")]
    if condition == "topsets":
        families, sign = tops, 1
    elif condition == "topsets_no_bottom":
        families = [t for t in tops if poset.bottom not in t]
        families.append(frozenset(elements - {poset.bottom}))
        families = [f for f in families if f]
        sign = 1
    elif condition == "bottomsets":
        families = [frozenset(elements - t) for t in tops]
        sign = -1
    elif condition == "bottomsets_no_top":
        bots = [frozenset(elements - t) for t in tops if poset.top not in elements - t]
        bots.append(frozenset(elements - {poset.top}))
        families = [f for f in bots if f]
        sign = -1
    else:
        raise ValueError("unknown condition %r" % (condition,))
    for fam in families:
        if sign * sum(structure.excess(e) for e in fam) < 0:
            return False
    return True


def exact_det_polynomial(m):
    """The determinant as a sparse polynomial: monomial -> integer coefficient.

    Monomials are sorted tuples of variables (with multiplicity).  Expansion
    is over all permutations, so the size guard matters.
    """
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n > EXACT_DET_LIMIT:
        raise ValueError("exact expansion limited to %dx%d"
                         % (EXACT_DET_LIMIT, EXACT_DET_LIMIT))
    poly = {}
    rows = m.entries
    for perm in itertools.permutations(range(n)):
        coeff = 1
        mono = []
        for i in range(n):
            cell = rows[i][perm[i]]
            if cell is None:
                coeff = 0
                break
            coeff *= cell[0]
            mono.append(cell[1])
        if coeff == 0:
            continue
        # permutation sign by counting inversions
        inv = sum(1 for a, b in itertools.combinations(range(n), 2)
                  if perm[a] > perm[b])
        if inv % 2:
            coeff = -coeff
        key = tuple(sorted(mono))
        poly[key] = poly.get(key, 0) + coeff
        if poly[key] == 0:
            del poly[key]
    return poly


def det_is_nonzero(m, mode="exact", p=exactalg.DEFAULT_PRIME, trials=3, seed=0):
    """Decide (exact) or probabilistically test (randomized) det != 0.

    Randomized mode evaluates at uniform points of GF(p); a nonzero
    evaluation certifies a nonzero determinant, while `False` is wrong with
    probability at most (size/p)^trials.
    """
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if mode == "exact":
        return bool(exact_det_polynomial(m))
    if mode == "randomized":
        variables = sorted(m.variables)
        for t in range(trials):
            rng = exactalg.stream(seed, "det-trial-%d" % t)
            vals = rng.integers(0, p, size=len(variables))
            assignment = {v: int(x) for v, x in zip(variables, vals)}
            dense = exactalg.evaluate_symbolic(m, assignment, p)
            if exactalg.det(dense, p) != 0:
                return True
        return False
    raise ValueError("unknown mode %r" % (mode,))


def random_gq_structure(rng, max_card=8, max_size=7,
                        shapes=((), (1,), (2,), (3,), (4,), (5,), (6,), (7,),
                                (1, 1), (1, 2), (1, 3), (1, 1, 1)),
                        square=True):
    """Random block structure over a random small G_Q, square by default."""
    while True:
        q = shapes[int(rng.integers(0, len(shapes)))]
        poset = GQPoset(q)
        if len(poset) > max_card:
            continue
        r = {e: int(rng.integers(0, 3)) for e in poset.elements}
        c = {e: int(rng.integers(0, 3)) for e in poset.elements}
        s = GQBlockStructure(poset, r, c)
        if s.total_rows == 0 or s.total_rows > max_size:
            continue
        if square and s.total_rows != s.total_cols:
            continue
        if not square and (s.total_cols == 0 or s.total_cols > max_size):
            continue
        return s


def random_l_matrix(structure, rng, reuse_prob=0.3, max_lambda=3):
    """A random L-matrix realizing the given G_Q pattern.

    Cells are filled row-major; each nonzero cell gets either a fresh
    variable or (with probability reuse_prob) an existing variable whose
    occurrences so far all sit in strictly higher rows and strictly further
    right, which preserves the move-to-left property by construction.
    """
    rows, cols = structure.total_rows, structure.total_cols
    rspans = structure.row_spans()
    cspans = structure.col_spans()
    nonzero = [[False] * cols for _ in range(rows)]
    for bi in structure.poset.elements:
        for bj in structure.poset.elements:
            if structure.poset.dominates(bi, bj):
                r0, r1 = rspans[bi]
                c0, c1 = cspans[bj]
                for i in range(r0, r1):
                    for j in range(c0, c1):
                        nonzero[i][j] = True
    grid = [[None] * cols for _ in range(rows)]
    state = {}  # var -> (last row, leftmost column)
    fresh = 0
    for i in range(rows):
        for j in range(cols):
            if not nonzero[i][j]:
                continue
            lam = int(rng.integers(1, max_lambda + 1))
            var = None
            if state and rng.random() < reuse_prob:
                eligible = [v for v, (lr, lc) in state.items()
                            if lr < i and lc > j]
                if eligible:
                    var = eligible[int(rng.integers(0, len(eligible)))]
            if var is None:
                var = "z%d" % fresh
                fresh += 1
            state[var] = (i, j)
            grid[i][j] = (lam, var)
    return SymbolicMatrix(tuple(tuple(r) for r in grid))
