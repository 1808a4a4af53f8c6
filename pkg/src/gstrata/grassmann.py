"""Subspaces of F^n, ordered configurations, and affine chart coordinates.

A subspace is stored as its canonical column-echelon basis matrix, which
is the unique representative of its column space; two subspaces are equal
exactly when their basis matrices are entry-wise equal. A chart is the
open set of k-subspaces complementary to a fixed (n-k)-subspace V0,
coordinatized by (n-k) x k matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (MixedAmbient, MixedField, NoCommonComplement, NotInChart,
                     RankDeficient)
from .linalg import (FieldSpec, Matrix, column_echelon_basis, hstack, invert,
                     rank, vstack)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace held by its canonical column-echelon basis."""

    basis: Matrix

    def __post_init__(self):
        canon = column_echelon_basis(self.basis)
        if canon.cols != self.basis.cols:
            raise RankDeficient("basis columns are dependent")
        if canon != self.basis:
            raise ValueError("basis is not in canonical column-echelon form; "
                             "use canonicalize()")

    @property
    def ambient_n(self) -> int:
        return self.basis.rows

    @property
    def dim_k(self) -> int:
        return self.basis.cols

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def pivot_rows(self) -> list[int]:
        """Row index of the leading 1 in each basis column, strictly increasing."""
        out = []
        for j in range(self.basis.cols):
            col = self.basis.column(j)
            out.append(next(i for i, x in enumerate(col) if x != 0))
        return out

    def contains(self, other: "Subspace") -> bool:
        return rank(hstack([self.basis, other.basis])) == self.dim_k

    def __str__(self) -> str:
        return f"Subspace(dim {self.dim_k} of {self.field}^{self.ambient_n})"


def canonicalize(raw_basis: Matrix) -> Subspace:
    """Subspace spanned by the columns of ``raw_basis``.

    Raises RankDeficient when the columns are linearly dependent.
    """
    canon = column_echelon_basis(raw_basis)
    if canon.cols != raw_basis.cols:
        raise RankDeficient(
            f"expected {raw_basis.cols} independent columns, got rank {canon.cols}")
    return Subspace(canon)


@dataclass(frozen=True)
class Configuration:
    """Ordered tuple of pairwise-distinct subspaces sharing (k, n, field).

    Equality is order-sensitive: permuting a configuration with distinct
    entries yields a different value.
    """

    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        if not self.subspaces:
            raise ValueError("a configuration needs at least one subspace")
        first = self.subspaces[0]
        for s in self.subspaces[1:]:
            if s.field != first.field:
                raise MixedField(f"{first.field} vs {s.field}")
            if s.ambient_n != first.ambient_n:
                raise MixedAmbient(f"{first.ambient_n} vs {s.ambient_n}")
            if s.dim_k != first.dim_k:
                raise ValueError(f"subspace dimensions differ: "
                                 f"{first.dim_k} vs {s.dim_k}")
        if len(set(self.subspaces)) != len(self.subspaces):
            raise ValueError("subspaces are not pairwise distinct")
        if not (0 < first.dim_k < first.ambient_n):
            raise ValueError(f"need 0 < k < n, got k={first.dim_k}, "
                             f"n={first.ambient_n}")

    @staticmethod
    def of(subspaces: Iterable[Subspace]) -> "Configuration":
        return Configuration(tuple(subspaces))

    @property
    def h(self) -> int:
        return len(self.subspaces)

    @property
    def ambient_n(self) -> int:
        return self.subspaces[0].ambient_n

    @property
    def dim_k(self) -> int:
        return self.subspaces[0].dim_k

    @property
    def field(self) -> FieldSpec:
        return self.subspaces[0].field


@dataclass(frozen=True)
class Chart:
    """Affine chart of subspaces complementary to ``complement_v0``.

    ``basis_b`` is an invertible n x n matrix whose first k columns are the
    chart's reference vectors w_1..w_k and whose last n-k columns are a
    basis of V0. A k-subspace H with H + V0 = F^n is encoded by the unique
    (n-k) x k matrix A such that, in this basis, H is spanned by the
    columns of the stacked matrix (I; A).
    """

    complement_v0: Subspace
    basis_b: Matrix

    def __post_init__(self):
        n = self.basis_b.rows
        n_minus_k = self.complement_v0.dim_k
        if self.basis_b.cols != n:
            raise ValueError("chart basis must be square")
        tail = Matrix(n, n_minus_k,
                      tuple(row[n - n_minus_k:] for row in self.basis_b.entries),
                      self.basis_b.field)
        if column_echelon_basis(tail) != self.complement_v0.basis:
            raise ValueError("last n-k basis vectors must span V0")
        # invert() raises RankDeficient when the basis is singular
        object.__setattr__(self, "_basis_inv", invert(self.basis_b))

    @property
    def ambient_n(self) -> int:
        return self.basis_b.rows

    @property
    def dim_k(self) -> int:
        return self.ambient_n - self.complement_v0.dim_k

    @property
    def field(self) -> FieldSpec:
        return self.basis_b.field


def chart_from_complement(v0: Subspace) -> Chart:
    """Canonical chart for a complement V0: deterministic basis completion.

    The reference vectors w_1..w_k are the coordinate vectors e_j for the
    rows j that are pivot-free in V0's canonical basis, so the same V0
    always yields the same chart.
    """
    n = v0.ambient_n
    field = v0.field
    pivots = set(v0.pivot_rows())
    free = [j for j in range(n) if j not in pivots]
    cols = []
    for j in free:
        cols.append(tuple(field.one if i == j else field.zero for i in range(n)))
    for c in range(v0.basis.cols):
        cols.append(v0.basis.column(c))
    b = Matrix(n, n, tuple(zip(*cols)), field)
    return Chart(v0, b)


def is_complement_of_all(v0: Subspace, config: Configuration) -> bool:
    """Whether V0 (+) H_j = F^n for every member of the configuration."""
    n = config.ambient_n
    if v0.ambient_n != n or v0.dim_k != n - config.dim_k:
        return False
    return all(rank(hstack([v0.basis, h.basis])) == n for h in config.subspaces)


def _random_subspace_attempt(rng: random.Random, n: int, k: int,
                             field: FieldSpec, bound: int) -> Subspace | None:
    if field.is_rational:
        raw = Matrix.from_rows(
            [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(n)],
            field)
    else:
        raw = Matrix.from_rows(
            [[rng.randrange(field.p) for _ in range(k)] for _ in range(n)],
            field)
    try:
        return canonicalize(raw)
    except RankDeficient:
        return None


def find_common_complement(config: Configuration, seed: int = 0) -> Chart:
    """Chart whose V0 is a common complement of every H_j.

    Seeded random search with small entries first (widening over Q); over
    a prime field a failed search falls back to an exhaustive scan of all
    (n-k)-subspaces and raises NoCommonComplement if none works, which
    signals the caller to raise the prime.
    """
    n, k = config.ambient_n, config.dim_k
    field = config.field
    rng = random.Random(seed)
    bound = 3
    random_tries = 200
    for attempt in range(random_tries):
        v0 = _random_subspace_attempt(rng, n, n - k, field, bound)
        if v0 is not None and is_complement_of_all(v0, config):
            return chart_from_complement(v0)
        if field.is_rational and attempt % 25 == 24:
            bound *= 3
    if field.is_rational:
        # practically unreachable: complements are generic over Q
        raise NoCommonComplement("random search over Q failed")
    from .census import enumerate_grassmannian
    for v0 in enumerate_grassmannian(n - k, n, field.p):
        if is_complement_of_all(v0, config):
            return chart_from_complement(v0)
    raise NoCommonComplement(
        f"no common complement in Gr({n - k},{n}) over {field}; raise the prime")


def chart_coordinates(h: Subspace, chart: Chart) -> Matrix:
    """The (n-k) x k coordinate matrix A of a subspace in the chart.

    Raises NotInChart when H meets V0 nontrivially.
    """
    if h.field != chart.field:
        raise MixedField(f"{h.field} vs {chart.field}")
    if h.ambient_n != chart.ambient_n:
        raise MixedAmbient(f"{h.ambient_n} vs {chart.ambient_n}")
    k = chart.dim_k
    if h.dim_k != k:
        raise NotInChart(f"chart holds {k}-subspaces, got dim {h.dim_k}")
    coords = chart._basis_inv @ h.basis
    top = Matrix(k, k, coords.entries[:k], h.field)
    bottom = Matrix(h.ambient_n - k, k, coords.entries[k:], h.field)
    try:
        top_inv = invert(top)
    except RankDeficient:
        raise NotInChart("subspace meets V0 nontrivially") from None
    return bottom @ top_inv


def from_chart(a: Matrix, chart: Chart) -> Subspace:
    """The subspace spanned, in the chart basis, by the columns of (I; A)."""
    k = chart.dim_k
    if a.rows != chart.ambient_n - k or a.cols != k:
        raise NotInChart(f"coordinate matrix must be "
                         f"{chart.ambient_n - k}x{k}, got {a.rows}x{a.cols}")
    if a.field != chart.field:
        raise MixedField(f"{a.field} vs {chart.field}")
    stacked = vstack([Matrix.identity(k, a.field), a])
    return canonicalize(chart.basis_b @ stacked)


# --- JSON wire format -------------------------------------------------------
#
# {"field": {"kind": "prime", "p": 5} | {"kind": "rational"},
#  "n": 4, "k": 2,
#  "subspaces": [["1", "0", ...  n*k entries, row-major ...], ...]}
#
# Entries are strings so exact rationals ("3/7") survive the trip.

def subspace_to_strings(s: Subspace) -> list[str]:
    return [str(x) for row in s.basis.entries for x in row]


def configuration_to_dict(config: Configuration) -> dict:
    return {
        "field": config.field.to_json(),
        "n": config.ambient_n,
        "k": config.dim_k,
        "subspaces": [subspace_to_strings(s) for s in config.subspaces],
    }


def configuration_from_dict(d: dict) -> Configuration:
    field = FieldSpec.from_json(d["field"])
    n = int(d["n"])
    k = int(d["k"])
    subs = []
    for flat in d["subspaces"]:
        if len(flat) != n * k:
            raise ValueError(f"subspace needs {n * k} entries, got {len(flat)}")
        rows = [flat[i * k:(i + 1) * k] for i in range(n)]
        subs.append(canonicalize(Matrix.from_rows(rows, field, cols=k)))
    return Configuration.of(subs)
