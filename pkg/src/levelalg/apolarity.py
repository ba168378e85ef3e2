"""Differential-operator apolarity: derivative matrices and Hilbert functions.

Monomials X^E of the polynomial ring act on degree-j forms as differential
operators: X^E * x^J = n(J, E) x^(J-E) with n(J, E) a product of falling
factorials.  For a subspace W spanned by degree-j forms, the Hilbert function
of the level algebra R/Ann(W) is h(d) = dim R_{j-d} * W, computed here as the
rank over GF(p) of a derivative coefficient matrix.

Generators are stored in blocks; each block carries a bound tuple ("box")
confining its monomial support, and matrices are cropped per block: rows
range over operator exponents inside the box, columns over the union of the
per-block target supports.  Cropping removes only all-zero rows and columns,
so ranks match the uncropped matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import exactalg
from .gqposet import GQPoset
from .lmatrix import GQBlockStructure, SymbolicMatrix
from .multiindex import combine, enumerate_constrained, count_constrained

_FACT_CACHE = {}


def _fact_tables(p, upto):
    """Factorials and inverse factorials mod p for 0..upto (requires p > upto)."""
    have = _FACT_CACHE.get(p)
    if have is not None and len(have[0]) > upto:
        return have
    if upto >= p:
        raise ValueError("prime %d too small for degree %d" % (p, upto))
    fact = np.ones(upto + 1, dtype=np.int64)
    for k in range(1, upto + 1):
        fact[k] = fact[k - 1] * k % p
    invfact = np.ones(upto + 1, dtype=np.int64)
    invfact[upto] = pow(int(fact[upto]), -1, p)
    for k in range(upto, 0, -1):
        invfact[k - 1] = invfact[k] * k % p
    _FACT_CACHE[p] = (fact, invfact)
    return fact, invfact


def derivative_coefficient(j_idx, e_idx):
    """n(J, E) = product over k of J_k (J_k - 1) ... (J_k - E_k + 1)."""
    n = 1
    for jk, ek in zip(j_idx, e_idx):
        if ek > jk:
            return 0
        for t in range(ek):
            n *= jk - t
    return n


def apply_derivative(e_idx, f, p=None):
    """Apply X^E to a sparse form {monomial: coefficient}.

    Returns the sparse result of degree deg(f) - |E|; monomials not divisible
    by x^E vanish.
    """
    out = {}
    for mono, coeff in f.items():
        if any(mk < ek for mk, ek in zip(mono, e_idx)):
            continue
        n = derivative_coefficient(mono, e_idx)
        target = combine(mono, e_idx, "subtract")
        val = out.get(target, 0) + n * coeff
        if p is not None:
            val %= p
        out[target] = val
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class GeneratorBlock:
    """Generators sharing a support box M_bounds(j), as dense coefficients."""

    r: int
    j: int
    bounds: tuple
    coeffs: np.ndarray  # shape (generators, m_bounds(j))

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        object.__setattr__(self, "coeffs", np.atleast_2d(np.asarray(self.coeffs, dtype=np.int64)))
        if self.coeffs.shape[1] != len(self.support):
            raise ValueError("coefficient width %d != support size %d"
                             % (self.coeffs.shape[1], len(self.support)))

    @property
    def support(self):
        return enumerate_constrained(self.r, self.j, self.bounds)

    @property
    def n_generators(self):
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class HomogeneousSubspace:
    """A subspace of the degree-j forms, spanned by the blocks' generators."""

    r: int
    j: int
    blocks: tuple
    p: int = exactalg.DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.p <= self.j:
            raise ValueError("prime must exceed the socle degree")
        for b in self.blocks:
            if b.r != self.r or b.j != self.j:
                raise ValueError("block ambient mismatch")

    @property
    def n_generators(self):
        return sum(b.n_generators for b in self.blocks)

    @classmethod
    def from_dense(cls, r, j, bounds, coeffs, p=exactalg.DEFAULT_PRIME):
        return cls(r, j, (GeneratorBlock(r, j, tuple(bounds), coeffs),), p)

    @classmethod
    def from_sparse(cls, r, j, generators, bounds=None, p=exactalg.DEFAULT_PRIME):
        """Build from sparse generators [{monomial: coeff}, ...].

        Without an explicit bound tuple the support box is the componentwise
        maximum over all monomials (cropping to it never changes ranks).
        """
        if bounds is None:
            box = [0] * r
            for g in generators:
                for mono in g:
                    for k, v in enumerate(mono):
                        box[k] = max(box[k], v)
            bounds = tuple(min(v, j) for v in box)
        support = enumerate_constrained(r, j, tuple(bounds))
        index = {m: i for i, m in enumerate(support)}
        coeffs = np.zeros((len(generators), len(support)), dtype=np.int64)
        for gi, g in enumerate(generators):
            for mono, coeff in g.items():
                mono = tuple(mono)
                if sum(mono) != j:
                    raise ValueError("generator monomial %r has degree != %d"
                                     % (mono, j))
                if mono not in index:
                    raise ValueError("monomial %r outside the support box" % (mono,))
                coeffs[gi, index[mono]] = coeff % p
        return cls.from_dense(r, j, bounds, coeffs, p)

    def to_json(self):
        gens = []
        for b in self.blocks:
            support = b.support
            for gi in range(b.n_generators):
                gens.append([{"monomial": list(m), "coeff": int(c)}
                             for m, c in zip(support, b.coeffs[gi]) if c])
        obj = {"r": self.r, "j": self.j, "generators": gens}
        if len(self.blocks) == 1:
            obj["constraint"] = {"bounds": list(self.blocks[0].bounds)}
        return obj

    @classmethod
    def from_json(cls, obj, p=exactalg.DEFAULT_PRIME):
        bounds = None
        if obj.get("constraint"):
            bounds = tuple(obj["constraint"]["bounds"])
        gens = [{tuple(t["monomial"]): t["coeff"] for t in g}
                for g in obj["generators"]]
        return cls.from_sparse(obj["r"], obj["j"], gens, bounds, p)


class _SupportLookup:
    """Vectorized multi-index -> support position lookup.

    Multi-indexes with entries <= j are encoded in mixed radix j+1; since
    J = D + E has no digit exceed j, the code of J is the sum of codes and a
    sorted-array search recovers the support position.
    """

    def __init__(self, support, r, j):
        weights = (j + 1) ** np.arange(r, dtype=np.int64)
        self.weights = weights
        codes = np.array(support, dtype=np.int64).reshape(len(support), r) @ weights
        self.order = np.argsort(codes)
        self.sorted_codes = codes[self.order]

    def positions(self, rows):
        codes = rows @ self.weights
        at = np.searchsorted(self.sorted_codes, codes)
        if np.any(at >= len(self.sorted_codes)) or \
                np.any(self.sorted_codes[np.minimum(at, len(self.sorted_codes) - 1)] != codes):
            raise KeyError("multi-index outside the support box")
        return self.order[at]


@dataclass(frozen=True)
class DerivativeMatrix:
    """A derivative coefficient matrix with its row/column index lists."""

    matrix: object  # SymbolicMatrix or numpy array
    row_index: tuple  # pairs (E, generator index)
    col_index: tuple  # multi-indexes D
    structure: GQBlockStructure | None = None


def standard_structure(bounds, r, j, d, s):
    """Block sizes of the cropped matrix under the standard assignment.

    Row block I collects rows whose operator exponent starts with I; column
    block I collects columns starting with Q - I.  Sizes follow the monomial
    counts of the unconstrained trailing coordinates.
    """
    bounds = tuple(bounds)
    n = len(bounds)
    e = j - d
    q = sum(bounds)
    poset = GQPoset(bounds)
    rr, cc = {}, {}
    for i_el in poset.elements:
        psum = sum(i_el)
        rr[i_el] = s * _free_count(r - n, e - psum)
        cc[i_el] = _free_count(r - n, d - (q - psum))
    return GQBlockStructure(poset, rr, cc)


def _free_count(nvars, deg):
    if deg < 0:
        return 0
    if nvars == 0:
        return 1 if deg == 0 else 0
    return comb(deg + nvars - 1, nvars - 1)


def build_matrix(generators, bounds, r, j, d, cropped=True, symbolic=False,
                 p=exactalg.DEFAULT_PRIME):
    """The (j-d)-th derivative matrix of generators supported in M_bounds(j).

    Rows are pairs (E, generator) with E of degree e = j-d, columns are
    target monomials D of degree d, both in descending lexicographic order;
    cropping restricts E and D to the bound box.  The entry at ((E, i), D)
    is n(J, E) z_{i,J} for J = D + E inside the box, else zero.  Symbolic
    mode returns the SymbolicMatrix in the formal coefficients z_{i,J};
    otherwise z is evaluated at the given dense generator matrix.
    """
    bounds = tuple(bounds)
    generators = np.atleast_2d(np.asarray(generators, dtype=np.int64))
    s = generators.shape[0]
    e = j - d
    support = enumerate_constrained(r, j, bounds)
    index = {m: i for i, m in enumerate(support)}
    if generators.shape[1] != len(support):
        raise ValueError("generator width %d != support size %d"
                         % (generators.shape[1], len(support)))
    row_es = enumerate_constrained(r, e, bounds if cropped else ())
    cols = enumerate_constrained(r, d, bounds if cropped else ())
    row_index = tuple((ee, i) for ee in row_es for i in range(s))
    if symbolic:
        grid = []
        for ee in row_es:
            for i in range(s):
                row = []
                for dd in cols:
                    jj = combine(ee, dd, "add")
                    if jj in index:
                        row.append((derivative_coefficient(jj, ee), (i, jj)))
                    else:
                        row.append(None)
                grid.append(tuple(row))
        mat = SymbolicMatrix(tuple(grid))
    else:
        mat = np.zeros((len(row_index), len(cols)), dtype=np.int64)
        fact, invfact = _fact_tables(p, j)
        lookup = _SupportLookup(support, r, j)
        dd_arr = np.array(cols, dtype=np.int64).reshape(len(cols), r)
        for bi, ee in enumerate(row_es):
            jj_arr = dd_arr + np.array(ee, dtype=np.int64)
            ok = np.ones(len(cols), dtype=bool)
            for k, bk in enumerate(bounds):
                ok &= jj_arr[:, k] <= bk
            hot = np.nonzero(ok)[0]
            if hot.size == 0:
                continue
            n_vals = np.ones(hot.size, dtype=np.int64)
            for k in range(r):
                n_vals = n_vals * fact[jj_arr[hot, k]] % p
                n_vals = n_vals * invfact[dd_arr[hot, k]] % p
            pos = lookup.positions(jj_arr[hot])
            for i in range(s):
                mat[bi * s + i, hot] = n_vals * generators[i, pos] % p
    structure = standard_structure(bounds, r, j, d, s) if cropped else None
    return DerivativeMatrix(mat, row_index, tuple(cols), structure)


def _stacked_dense(w, d):
    """Dense stacked cropped matrix for a multi-block subspace at degree d."""
    r, j, p = w.r, w.j, w.p
    e = j - d
    fact, invfact = _fact_tables(p, j)
    block_cols = [enumerate_constrained(r, d, b.bounds) for b in w.blocks]
    union = sorted(set().union(*block_cols), reverse=True) if block_cols else []
    col_of = {m: i for i, m in enumerate(union)}
    rows = []
    for b, cols in zip(w.blocks, block_cols):
        if not cols:
            continue
        lookup = _SupportLookup(b.support, r, j)
        gcol = np.array([col_of[m] for m in cols])
        dd_arr = np.array(cols, dtype=np.int64).reshape(len(cols), r)
        for ee in enumerate_constrained(r, e, b.bounds):
            jj_arr = dd_arr + np.array(ee, dtype=np.int64)
            ok = np.ones(len(cols), dtype=bool)
            for k, bk in enumerate(b.bounds):
                ok &= jj_arr[:, k] <= bk
            hot = np.nonzero(ok)[0]
            if hot.size == 0:
                continue
            n_vals = np.ones(hot.size, dtype=np.int64)
            for k in range(r):
                n_vals = n_vals * fact[jj_arr[hot, k]] % p
                n_vals = n_vals * invfact[dd_arr[hot, k]] % p
            pos = lookup.positions(jj_arr[hot])
            for i in range(b.n_generators):
                row = np.zeros(len(union), dtype=np.int64)
                row[gcol[hot]] = n_vals * b.coeffs[i, pos] % p
                rows.append(row)
    if not rows:
        return np.zeros((0, len(union)), dtype=np.int64)
    return np.stack(rows)


def hilbert_value(w, d):
    """h(d) = dim R_{j-d} * W, the rank of the cropped derivative matrix."""
    if d < 0 or d > w.j:
        return 0
    return exactalg.rank(_stacked_dense(w, d), w.p)


@dataclass(frozen=True)
class HilbertVector:
    j: int
    start: int
    values: tuple

    @property
    def degrees(self):
        return range(self.start, self.start + len(self.values))

    def to_json(self):
        return {"j": self.j, "start": self.start, "h": list(self.values)}


def hilbert_vector(w, rng=None):
    """Hilbert values for all degrees 0..j, or a [lo, hi] subrange."""
    lo, hi = (0, w.j) if rng is None else rng
    if hi < lo:
        return HilbertVector(w.j, lo, ())
    return HilbertVector(w.j, lo,
                         tuple(hilbert_value(w, d) for d in range(lo, hi + 1)))


@dataclass(frozen=True)
class SumSplit:
    dim_sum: int
    equals_split: bool


def sum_space_dimension(v, w, d):
    """dim R_{j-d}*(V+W), and whether it splits as the sum of the parts."""
    if v.r != w.r or v.j != w.j or v.p != w.p:
        raise ValueError("subspaces live in different ambients")
    both = HomogeneousSubspace(v.r, v.j, v.blocks + w.blocks, v.p)
    dim = hilbert_value(both, d)
    return SumSplit(dim, dim == hilbert_value(v, d) + hilbert_value(w, d))


@dataclass(frozen=True)
class MaxRankReport:
    rows: int
    cols: int
    guaranteed_full_rank: bool


def max_rank_predicate(bounds, r, j, d, s):
    """Row/column counts of the cropped matrix and the tall-enough guarantee.

    When rows >= cols the generic rank is full, so the predicted Hilbert
    value at degree d is the column count.
    """
    e = j - d
    rows = s * count_constrained(r, e, bounds, j)
    cols = count_constrained(r, d, bounds, j)
    return MaxRankReport(rows, cols, rows >= cols)
