"""Finite-field censuses of subspace configurations.

Exhaustive enumeration kernels that witness the dimension theory with
point counts over F_q: Gaussian binomials cross-checked against explicit
Grassmannian enumeration, stratum counts by dimension of the sum,
rank-locus counts, partition checks, and exact Lagrange fits whose degree
is compared with the predicted stratum dimension.

The tuple-counting kernel is deliberately low-level: subspaces are held
as reduced row tuples over F_q and the running span is maintained by
incremental elimination. Products never leave int64 range because q is
capped near 2^15 here, far below the 2^31 field-modulus cap; the final
level of the search is vectorized with numpy for k = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .errors import (BudgetExceeded, EmptyStratum, InsufficientPoints,
                     NonPolynomialFit, RankTooLarge)
from .linalg import FieldSpec, Matrix, is_prime
from .grassmann import Subspace
from .strata import StratumDescriptor, dimension, is_nonempty

DEFAULT_BUDGET = 10**8

# Enumeration primes stay small; this also keeps q*q inside int64 headroom.
MAX_ENUM_PRIME = 2**15


def grassmannian_count(k: int, n: int, q: int) -> int:
    """Gaussian binomial [n choose k]_q: the number of k-subspaces of F_q^n."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    num = 1
    den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def _echelon_row_patterns(k: int, n: int, q: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All reduced row-echelon k x n matrices over F_q, one per subspace.

    Pivot patterns run lexicographically, then free entries lexicographically.
    """
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        freepos = [(r, c) for r in range(k) for c in range(n)
                   if c > pivots[r] and c not in pivset]
        for vals in product(range(q), repeat=len(freepos)):
            rows = [[0] * n for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), v in zip(freepos, vals):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


def enumerate_grassmannian(k: int, n: int, q: int,
                           budget: int = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every k-subspace of F_q^n exactly once, in canonical order.

    The canonical column-echelon basis of a subspace is the transpose of
    the reduced row-echelon form of its row-space representative, so each
    pattern maps straight to a Subspace with no re-reduction.
    """
    total = grassmannian_count(k, n, q)
    if total > budget:
        raise BudgetExceeded(f"|Gr({k},{n})(F_{q})| = {total} exceeds budget {budget}")
    field = FieldSpec.prime(q)
    for rows in _echelon_row_patterns(k, n, q):
        cols = tuple(zip(*rows)) if rows else tuple(() for _ in range(n))
        yield Subspace(Matrix(n, k, cols, field))


@dataclass(frozen=True)
class CensusRow:
    """One census table entry: |stratum (h,k,n,i) over F_q| = count."""

    h: int
    k: int
    n: int
    i: int
    q: int
    count: int


def _inverse_table(p: int) -> list[int]:
    inv = [0] * p
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def _count_tuples_by_sum_dim(k: int, n: int, q: int, h: int,
                             target: int | None, budget: int,
                             first_slice: tuple[int, int] | None = None
                             ) -> list[int]:
    """Visit every ordered h-tuple of distinct k-subspaces; tally sum dims.

    DFS over tuple positions keeps an incremental echelon basis of the
    running sum. With a ``target`` the branches whose final dimension can
    no longer hit it are pruned, so only counts[target] is meaningful;
    without one the full tally is exact. ``first_slice`` restricts the
    first tuple position to a range of canonical subspace indices, so
    disjoint slices partition the work and their tallies merge by
    addition.
    """
    if q > MAX_ENUM_PRIME:
        raise BudgetExceeded(f"enumeration prime {q} exceeds {MAX_ENUM_PRIME}")
    subs = list(_echelon_row_patterns(k, n, q))
    big_n = len(subs)
    if big_n ** h > budget:
        raise BudgetExceeded(f"{big_n}^{h} tuple visits exceed budget {budget}")
    counts = [0] * (n + 2)          # slot n+1 absorbs the leaf's "+1" write
    if big_n == 0:
        return counts[:n + 1]
    p = q
    inv = _inverse_table(p)
    ech: list[tuple[int, list[int]]] = []   # (pivot col, normalized row)
    used = bytearray(big_n)
    cand = (np.array([s[0] for s in subs], dtype=np.int64) if k == 1 else None)

    def reduce_and_extend(srows) -> int:
        added = 0
        for row in srows:
            v = list(row)
            for pc, r in ech:
                c = v[pc]
                if c:
                    v = [(a - c * b) % p for a, b in zip(v, r)]
            pc = next((idx for idx, a in enumerate(v) if a), -1)
            if pc >= 0:
                cinv = inv[v[pc]]
                if cinv != 1:
                    v = [(a * cinv) % p for a in v]
                ech.append((pc, v))
                added += 1
        return added

    def leaf_vectorized(dim: int) -> None:
        # reduce every remaining line against the frozen echelon in one sweep
        v = cand.copy()
        for pc, r in ech:
            c = v[:, pc].copy()
            nz = c != 0
            if nz.any():
                v[nz] -= np.outer(c[nz], np.asarray(r, dtype=np.int64))
                v[nz] %= p
        outside = (v != 0).any(axis=1)
        active = np.frombuffer(bytes(used), dtype=np.uint8) == 0
        n_out = int((outside & active).sum())
        counts[dim] += int(active.sum()) - n_out
        counts[dim + 1] += n_out

    def dfs(level: int, dim: int) -> None:
        remaining = h - level
        if remaining == 1 and k == 1:
            if target is None or dim + 1 >= target:
                leaf_vectorized(dim)
            return
        for s in range(big_n):
            if used[s]:
                continue
            base = len(ech)
            d = dim + reduce_and_extend(subs[s])
            if remaining == 1:
                counts[d] += 1
            elif target is None or (d <= target and d + k * (remaining - 1) >= target):
                used[s] = 1
                dfs(level + 1, d)
                used[s] = 0
            del ech[base:]

    dfs(0, 0)
    assert counts[n + 1] == 0
    return counts[:n + 1]


@lru_cache(maxsize=None)
def _stratum_count_cached(h: int, k: int, n: int, i: int, q: int,
                          budget: int) -> int:
    return _count_tuples_by_sum_dim(k, n, q, h, i, budget)[i]


def stratum_count(desc: StratumDescriptor, q: int,
                  budget: int = DEFAULT_BUDGET) -> CensusRow:
    """Exact number of ordered h-tuples of distinct k-subspaces with sum dim i."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    count = _stratum_count_cached(desc.h, desc.k, desc.n, desc.i, q, budget)
    return CensusRow(desc.h, desc.k, desc.n, desc.i, q, count)


def rank_locus_count(r: int, m: int, mprime: int, q: int) -> int:
    """Number of m x m' matrices over F_q of rank exactly r.

    Closed form: choose r independent columns' worth of row and column
    spans; the denominator divides the double count by |GL_r|.
    """
    if r > min(m, mprime):
        raise RankTooLarge(f"rank {r} exceeds min({m},{mprime})")
    if r < 0:
        raise ValueError("rank must be nonnegative")
    num = 1
    den = 1
    for j in range(r):
        num *= (q ** m - q ** j) * (q ** mprime - q ** j)
        den *= q ** r - q ** j
    return num // den


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of the disjoint-union check over all sum dimensions."""

    h: int
    k: int
    n: int
    q: int
    rows: tuple[CensusRow, ...]          # one per i in 0..n
    total: int
    expected: int
    witnesses_nonempty: bool             # nonzero counts only at nonempty strata
    passed: bool


def partition_check(h: int, k: int, n: int, q: int,
                    budget: int = DEFAULT_BUDGET) -> PartitionReport:
    """Verify that the strata partition all ordered tuples of distinct subspaces.

    The total over i must equal the falling factorial N(N-1)...(N-h+1)
    with N the Gaussian binomial, and every nonzero count must occur at a
    stratum the emptiness rules declare nonempty.
    """
    counts = _count_tuples_by_sum_dim(k, n, q, h, None, budget)
    rows = tuple(CensusRow(h, k, n, i, q, counts[i]) for i in range(n + 1))
    big_n = grassmannian_count(k, n, q)
    expected = 1
    for j in range(h):
        expected *= big_n - j
    total = sum(counts)
    witnesses = all(
        c == 0 or is_nonempty(StratumDescriptor(h, k, n, i))
        for i, c in enumerate(counts))
    return PartitionReport(h, k, n, q, rows, total, expected, witnesses,
                           passed=(total == expected) and witnesses)


@dataclass(frozen=True)
class CountPolynomial:
    """Exact interpolated count polynomial, coefficients in ascending degree."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        deg = -1
        for idx, c in enumerate(self.coefficients):
            if c != 0:
                deg = idx
        return deg

    def evaluate(self, x: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def coefficient_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]


def _lagrange_interpolate(points: Sequence[tuple[int, int]]) -> CountPolynomial:
    """Exact interpolation through (x, y) points; rational coefficients."""
    npts = len(points)
    coeffs = [Fraction(0)] * npts
    for xi, yi in points:
        # numerator poly prod_{xj != xi} (x - xj), then scale by yi / denom
        numer = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            new = [Fraction(0)] * (len(numer) + 1)
            for d, c in enumerate(numer):
                new[d] -= c * xj
                new[d + 1] += c
            numer = new
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for d, c in enumerate(numer):
            coeffs[d] += c * scale
    return CountPolynomial(tuple(coeffs))


def next_prime(x: int) -> int:
    c = x + 1
    while not is_prime(c):
        c += 1
    return c


DEFAULT_FIT_PRIMES = (2, 3, 5, 7, 11, 13)


def fit_count_polynomial(desc: StratumDescriptor,
                         q_list: Sequence[int] | None = None,
                         budget: int = DEFAULT_BUDGET) -> CountPolynomial:
    """Interpolate the stratum count as a polynomial in q and validate it.

    Uses dimension(desc) + 1 sample primes: an explicit ``q_list`` that is
    too short raises InsufficientPoints, while the default list is
    extended with further primes as needed (and either is truncated when
    over-long). The count at the next prime past the samples is computed
    independently; disagreement with the interpolant raises
    NonPolynomialFit. Callers compare ``degree`` with ``dimension(desc)``.
    """
    if not is_nonempty(desc):
        raise EmptyStratum(str(desc))
    need = dimension(desc) + 1
    if q_list is None:
        qs = list(DEFAULT_FIT_PRIMES)
        while len(qs) < need:
            qs.append(next_prime(qs[-1]))
    else:
        qs = sorted(set(int(q) for q in q_list))
        for q in qs:
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
        if len(qs) < need:
            raise InsufficientPoints(f"need {need} distinct primes, got {len(qs)}")
    qs = qs[:need]
    points = [(q, stratum_count(desc, q, budget).count) for q in qs]
    poly = _lagrange_interpolate(points)
    holdout = next_prime(max(qs))
    observed = stratum_count(desc, holdout, budget).count
    predicted = poly.evaluate(holdout)
    if predicted != observed:
        raise NonPolynomialFit(
            f"interpolant predicts {predicted} at q={holdout}, census says {observed}")
    return poly
