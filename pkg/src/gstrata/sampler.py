"""Seeded random generation of subspace configurations.

Rejection sampling keeps the code honest: a sample is accepted only when
the classification operators confirm it. Everything is deterministic in
the seed, so property tests and golden CLI files stay reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .census import grassmannian_count
from .errors import (EmptyStratum, MaxAttemptsExceeded, NotEnoughSubspaces,
                     RankDeficient)
from .grassmann import Configuration, Subspace, canonicalize
from .linalg import FieldSpec, Matrix
from .strata import StratumDescriptor, is_nonempty, stratum_of

_QQ_START_BOUND = 9


@dataclass(frozen=True)
class SampleSpec:
    """Target stratum, field, seed and retry cap for constrained sampling."""

    desc: StratumDescriptor
    field: FieldSpec
    seed: int = 0
    max_attempts: int | None = None     # None picks 10 * h * i

    def __post_init__(self):
        if self.max_attempts is not None and self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    @property
    def attempts(self) -> int:
        if self.max_attempts is not None:
            return self.max_attempts
        return 10 * self.desc.h * max(self.desc.i, 1)


def _random_matrix(rng: random.Random, rows: int, cols: int,
                   field: FieldSpec, bound: int) -> Matrix:
    if field.is_rational:
        data = [[rng.randint(-bound, bound) for _ in range(cols)]
                for _ in range(rows)]
    else:
        data = [[rng.randrange(field.p) for _ in range(cols)]
                for _ in range(rows)]
    return Matrix.from_rows(data, field, cols=cols)


def _random_full_rank(rng: random.Random, rows: int, cols: int,
                      field: FieldSpec, bound: int, cap: int) -> Matrix:
    """Random rows x cols matrix of full column rank (retrying up to cap)."""
    for attempt in range(cap):
        m = _random_matrix(rng, rows, cols, field, bound)
        try:
            canonicalize(m)
        except RankDeficient:
            if field.is_rational and attempt % 5 == 4:
                bound *= 2
            continue
        return m
    raise MaxAttemptsExceeded(f"no full-rank {rows}x{cols} matrix in {cap} draws")


def sample_uniform(h: int, k: int, n: int, field: FieldSpec,
                   seed: int = 0, max_attempts: int = 1000) -> Configuration:
    """h pairwise-distinct random k-subspaces of F^n.

    Over F_p each subspace is marginally uniform: the canonical form of a
    uniformly random full-rank n x k matrix covers every subspace with
    equal weight (each has exactly |GL_k(F_p)| preimages). Over Q the
    entries come from a bounded integer range that widens on rejection.
    """
    if not (0 < k < n):
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    if not field.is_rational and grassmannian_count(k, n, field.p) < h:
        raise NotEnoughSubspaces(
            f"Gr({k},{n})(F_{field.p}) has fewer than {h} points")
    rng = random.Random(seed)
    bound = _QQ_START_BOUND
    chosen: list[Subspace] = []
    attempts = 0
    while len(chosen) < h:
        if attempts >= max_attempts:
            raise MaxAttemptsExceeded(
                f"{attempts} draws produced only {len(chosen)} distinct subspaces")
        attempts += 1
        raw = _random_matrix(rng, n, k, field, bound)
        try:
            s = canonicalize(raw)
        except RankDeficient:
            if field.is_rational:
                bound = min(bound * 2, 1 << 20)
            continue
        if s in chosen:
            if field.is_rational:
                bound = min(bound * 2, 1 << 20)
            continue
        chosen.append(s)
    return Configuration.of(chosen)


def sample_in_stratum(spec: SampleSpec) -> Configuration:
    """Random configuration whose sum has exactly the prescribed dimension.

    Draws a random i-dimensional ambient subspace S, then h distinct
    k-subspaces inside S, and rejects until their sum is all of S. The
    returned configuration always satisfies stratum_of(config) == i.
    """
    desc = spec.desc
    if not is_nonempty(desc):
        raise EmptyStratum(str(desc))
    h, k, n, i = desc.h, desc.k, desc.n, desc.i
    field = spec.field
    if not field.is_rational and grassmannian_count(k, i, field.p) < h:
        raise NotEnoughSubspaces(
            f"only {grassmannian_count(k, i, field.p)} k-subspaces inside a "
            f"{i}-dim space over F_{field.p}")
    rng = random.Random(spec.seed)
    cap = spec.attempts
    bound = _QQ_START_BOUND
    for attempt in range(cap):
        try:
            span = _random_full_rank(rng, n, i, field, bound, cap)
            members: list[Subspace] = []
            inner_draws = 0
            while len(members) < h and inner_draws < cap:
                inner_draws += 1
                coeff = _random_full_rank(rng, i, k, field, bound, cap)
                s = canonicalize(span @ coeff)
                if s not in members:
                    members.append(s)
            if len(members) < h:
                continue
            config = Configuration.of(members)
            if stratum_of(config) == i:
                return config
        except MaxAttemptsExceeded:
            pass
        if field.is_rational:
            bound = min(bound * 2, 1 << 20)
    raise MaxAttemptsExceeded(
        f"no sample for {desc} over {field} in {cap} attempts")
