"""Classification and dimension theory of configuration strata.

An ordered configuration of h distinct k-subspaces of F^n is graded by
the dimension i of the sum of its members. Each stratum is named by the
quadruple (h, k, n, i); this module computes which strata are nonempty,
their dimension i(n-i) + hk(i-k), the affine-times-determinantal local
model behind that count, closure adjacency, codimension steps, and the
known fundamental-group answers for the top stratum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyStratum, RankTooLarge, ShapeMismatch
from .grassmann import Configuration
from .linalg import Matrix, column_span_intersection, hstack, rank


@dataclass(frozen=True)
class StratumDescriptor:
    """The quadruple (h, k, n, i): h-tuples of k-subspaces with sum of dim i."""

    h: int
    k: int
    n: int
    i: int

    def __post_init__(self):
        if self.h < 1:
            raise ValueError(f"h must be >= 1, got {self.h}")
        if not (0 < self.k < self.n):
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if not (0 <= self.i <= self.n):
            raise ValueError(f"need 0 <= i <= n, got i={self.i}")


@dataclass(frozen=True)
class LocalModel:
    """Product-chart shape of a stratum: affine factor times a rank locus.

    The stratum looks locally like an affine space of dimension k(n-k)
    times the locus of (n-k) x (hk-k) matrices of rank exactly i-k, so
    its dimension is affine_dim + det_rank_r * (det_rows_m + det_cols_mprime
    - det_rank_r).
    """

    affine_dim: int
    det_rank_r: int
    det_rows_m: int
    det_cols_mprime: int

    @property
    def total_dimension(self) -> int:
        r = self.det_rank_r
        return self.affine_dim + r * (self.det_rows_m + self.det_cols_mprime - r)


@dataclass(frozen=True)
class Pi1Result:
    """Fundamental-group lookup outcome: trivial, a sphere braid group, or open."""

    kind: str                 # "trivial" | "pure_sphere_braid" | "unknown"
    strands: int | None = None

    def __str__(self) -> str:
        if self.kind == "pure_sphere_braid":
            return f"pure_sphere_braid({self.strands})"
        return self.kind


TRIVIAL = Pi1Result("trivial")
UNKNOWN = Pi1Result("unknown")


def pure_sphere_braid(h: int) -> Pi1Result:
    return Pi1Result("pure_sphere_braid", h)


def stratum_of(config: Configuration) -> int:
    """Dimension of the sum of the configuration's subspaces."""
    return rank(hstack([s.basis for s in config.subspaces]))


def dual_stratum_of(config: Configuration) -> int:
    """Dimension of the intersection of the configuration's subspaces."""
    return column_span_intersection([s.basis for s in config.subspaces]).cols


def is_nonempty(desc: StratumDescriptor) -> bool:
    """Whether any configuration realizes the descriptor.

    h = 1 forces i = k; for h >= 2 the sum of two distinct k-subspaces
    already has dimension k+1, and i can never exceed min(hk, n).
    """
    if desc.h == 1:
        return desc.i == desc.k
    return desc.k + 1 <= desc.i <= min(desc.h * desc.k, desc.n)


def dimension_formula(h: int, k: int, n: int, i: int) -> int:
    """The stratum dimension polynomial i(n-i) + hk(i-k), with no emptiness check."""
    return i * (n - i) + h * k * (i - k)


def dimension(desc: StratumDescriptor) -> int:
    """Dimension of a nonempty stratum; raises EmptyStratum otherwise."""
    if not is_nonempty(desc):
        raise EmptyStratum(str(desc))
    return dimension_formula(desc.h, desc.k, desc.n, desc.i)


def determinantal_dimension(r: int, m: int, mprime: int) -> int:
    """Dimension r(m + m' - r) of the locus of m x m' matrices of rank <= r."""
    if r > min(m, mprime):
        raise RankTooLarge(f"rank {r} exceeds min({m},{mprime})")
    if r < 0:
        raise ValueError("rank must be nonnegative")
    return r * (m + mprime - r)


def chart_local_model(desc: StratumDescriptor) -> LocalModel:
    """Affine-times-rank-locus model of a nonempty stratum with h >= 2.

    The model's total dimension agrees exactly with ``dimension(desc)``:
    k(n-k) + (i-k)((n-k) + (hk-k) - (i-k)) = i(n-i) + hk(i-k).
    """
    if desc.h < 2 or not is_nonempty(desc):
        raise EmptyStratum(f"{desc} has no chart model")
    h, k, n, i = desc.h, desc.k, desc.n, desc.i
    return LocalModel(affine_dim=k * (n - k), det_rank_r=i - k,
                      det_rows_m=n - k, det_cols_mprime=h * k - k)


def rank_reduction(a_list: list[Matrix]) -> tuple[int, list[Matrix]]:
    """Difference coordinates B_j = A_j - A_1 and the rank they predict.

    For chart matrices A_1..A_h of shape (n-k) x k, the block matrix with
    identity blocks on top and the A_j below has rank exactly
    k + rank(B_2 ... B_h); the claim is returned together with the B_j.
    """
    if not a_list:
        raise ShapeMismatch("need at least one chart matrix")
    first = a_list[0]
    for a in a_list[1:]:
        if (a.rows, a.cols) != (first.rows, first.cols):
            raise ShapeMismatch(f"{first.rows}x{first.cols} vs {a.rows}x{a.cols}")
        if a.field != first.field:
            raise ShapeMismatch(f"mixed fields {first.field} vs {a.field}")
    k = first.cols
    b_list = [a - first for a in a_list[1:]]
    claim = k + (rank(hstack(b_list)) if b_list else 0)
    return claim, b_list


def codimension_step(desc: StratumDescriptor) -> int:
    """Dimension drop from the stratum at i to the one at i-1.

    Evaluates the dimension polynomial at i-1 even when that stratum is
    empty, so the closed forms 1+hk-n (at i = n) and 1+n-hk (at i = hk)
    hold on the nose. The descriptor itself must be nonempty.
    """
    if not is_nonempty(desc):
        raise EmptyStratum(str(desc))
    h, k, n, i = desc.h, desc.k, desc.n, desc.i
    return dimension_formula(h, k, n, i) - dimension_formula(h, k, n, i - 1)


def adjacency_closure(desc: StratumDescriptor) -> list[StratumDescriptor]:
    """Nonempty strata contained in the closure: j = i, i-1, ..., 2.

    Requires h >= 2 (the single-subspace space is a lone stratum).
    """
    if desc.h < 2:
        raise ValueError("closure decomposition needs h >= 2")
    out = []
    for j in range(desc.i, 1, -1):
        cand = StratumDescriptor(desc.h, desc.k, desc.n, j)
        if is_nonempty(cand):
            out.append(cand)
    return out


def fundamental_group(desc: StratumDescriptor) -> Pi1Result:
    """Known fundamental group of a nonempty stratum.

    The top stratum i = min(n, hk) is simply connected when n != hk,
    except over the projective line (k=1, n=2) where it is the pure
    braid group of the sphere on h strands. Everything else is left
    open and reported as unknown rather than guessed. The hyperplane
    case k = n-1, h >= 2 (which forces i = n) lands in the trivial
    branch automatically: n = hk with k = n-1 only happens at n = 2.
    """
    if not is_nonempty(desc):
        raise EmptyStratum(str(desc))
    h, k, n, i = desc.h, desc.k, desc.n, desc.i
    if n == 2 and k == 1 and h >= 2 and i == 2:
        return pure_sphere_braid(h)
    if i == min(n, h * k) and n != h * k and (k, n) != (1, 2):
        return TRIVIAL
    return UNKNOWN
