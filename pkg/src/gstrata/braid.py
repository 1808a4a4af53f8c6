"""Pure sphere braid group presentations and small-group computations.

The pure braid group of the sphere on h strands is presented on
generators a_ij, 1 <= i < j <= h-1, subject to the Yang-Baxter triple
and quadruple relations together with D^2 = 1 for the full twist
D = a_12 (a_13 a_23) (a_14 a_24 a_34) ... . This module builds that
presentation, freely reduces words, abelianizes via the integer Smith
normal form, and runs Todd-Coxeter coset enumeration over the trivial
subgroup to pin down small orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .linalg import smith_normal_form


@dataclass(frozen=True, order=True)
class Generator:
    """Strand-pair generator a_ij with 1 <= i < j."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")

    def token(self, exponent: int = 1) -> str:
        base = f"a{self.i}{self.j}" if self.j < 10 else f"a{self.i}_{self.j}"
        return base if exponent == 1 else f"{base}^-1"


Letter = tuple[Generator, int]          # exponent is +1 or -1


@dataclass(frozen=True)
class Word:
    """Finite product of generators and inverses."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out: tuple[Letter, ...] = ()
        for _ in range(n):
            out += self.letters
        return Word(out)

    def tokens(self) -> str:
        return " ".join(g.token(e) for g, e in self.letters) if self.letters else "1"


def gen(i: int, j: int) -> Word:
    return Word(((Generator(i, j), 1),))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain; the result is unique."""
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def d_element(m: int) -> Word:
    """Full twist a_12 (a_13 a_23) (a_14 a_24 a_34) ... ; length m(m-1)/2.

    m = 1 gives the empty product.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    letters: list[Letter] = []
    for j in range(2, m + 1):
        for i in range(1, j):
            letters.append((Generator(i, j), 1))
    return Word(tuple(letters))


def yb3_relators(m: int) -> list[Word]:
    """Triple relators: a_ij a_ik a_jk = a_ik a_jk a_ij = a_jk a_ij a_ik.

    Two independent equalities per triple i < j < k <= m (the third is a
    consequence), encoded as w1 w2^-1 and w2 w3^-1.
    """
    out = []
    for i, j, k in combinations(range(1, m + 1), 3):
        w1 = gen(i, j) * gen(i, k) * gen(j, k)
        w2 = gen(i, k) * gen(j, k) * gen(i, j)
        w3 = gen(j, k) * gen(i, j) * gen(i, k)
        out.append(free_reduce(w1 * w2.inverse()))
        out.append(free_reduce(w2 * w3.inverse()))
    return out


def yb4_relators(m: int) -> list[Word]:
    """Quadruple relators: four vanishing commutators per i < j < k < l <= m.

    [a_kl, a_ij], [a_il, a_jk], [a_jl, a_jk^-1 a_ik a_jk] and
    [a_jl, a_kl a_ik a_kl^-1] are all trivial.
    """
    out = []
    for i, j, k, l in combinations(range(1, m + 1), 4):
        out.append(free_reduce(commutator(gen(k, l), gen(i, j))))
        out.append(free_reduce(commutator(gen(i, l), gen(j, k))))
        out.append(free_reduce(commutator(
            gen(j, l), gen(j, k).inverse() * gen(i, k) * gen(j, k))))
        out.append(free_reduce(commutator(
            gen(j, l), gen(k, l) * gen(i, k) * gen(k, l).inverse())))
    return out


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group on the a_ij with i < j <= m."""

    m: int
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        declared = set(self.generators)
        for w in self.relators:
            for g, _ in w.letters:
                if g not in declared:
                    raise ValueError(f"relator uses undeclared generator {g}")

    def to_text(self) -> str:
        """Plain-text export: 'g i j' lines, then one token line per relator."""
        lines = [f"g {g.i} {g.j}" for g in self.generators]
        lines += [w.tokens() for w in self.relators]
        return "\n".join(lines) + "\n"


def sphere_pure_braid_presentation(h: int) -> Presentation:
    """Presentation of the pure braid group of the sphere on h strands.

    Generators are indexed by pairs up to m = h - 1. For h = 2 the index
    range is empty and the full twist is the empty word, so the
    presentation is that of the trivial group.
    """
    if h < 2:
        raise ValueError("need h >= 2 strands")
    m = h - 1
    gens = tuple(Generator(i, j) for i, j in combinations(range(1, m + 1), 2))
    relators = tuple(yb3_relators(m)) + tuple(yb4_relators(m)) \
        + (free_reduce(d_element(m) ** 2),)
    return Presentation(m, gens, relators)


def exponent_matrix(p: Presentation) -> list[list[int]]:
    """Relator-by-generator exponent sums (the abelianized relation matrix)."""
    index = {g: c for c, g in enumerate(p.generators)}
    rows = []
    for w in p.relators:
        row = [0] * len(p.generators)
        for g, e in w.letters:
            row[index[g]] += e
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> tuple[list[int], int]:
    """Invariant factors (> 1) and free rank of the abelianized group."""
    rows = exponent_matrix(p)
    if not rows:
        return [], len(p.generators)
    return smith_normal_form(rows)


@dataclass(frozen=True)
class ToddCoxeterResult:
    """Outcome of a coset enumeration: a finite order, or budget exhaustion."""

    order: int | None           # None when the table did not close

    @property
    def exceeded(self) -> bool:
        return self.order is None

    def __str__(self) -> str:
        return "Exceeded" if self.order is None else f"FiniteOrder({self.order})"


EXCEEDED = ToddCoxeterResult(None)


def todd_coxeter(p: Presentation, max_cosets: int = 10**5) -> ToddCoxeterResult:
    """Coset enumeration over the trivial subgroup.

    Builds the Schreier graph of the group acting on itself, processing
    every live coset against every relator and merging coincidences with
    union-find. Returns FiniteOrder(N) when the table closes with N live
    cosets before ``max_cosets`` vertices have been created, Exceeded
    otherwise. The result does not depend on relator order.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    index = {g: c for c, g in enumerate(p.generators)}
    nsym = 2 * len(p.generators)

    def sym(g: Generator, e: int) -> int:
        return 2 * index[g] + (0 if e == 1 else 1)

    rels = [tuple(sym(g, e) for g, e in w.letters) for w in p.relators]
    # inverse relations g g^-1 = g^-1 g = 1
    for c in range(len(p.generators)):
        rels.append((2 * c, 2 * c + 1))
        rels.append((2 * c + 1, 2 * c))

    labels: list[int] = []
    neighbors: list[list[int]] = []

    def add_vertex() -> int:
        v = len(labels)
        labels.append(v)
        neighbors.append([-1] * nsym)
        return v

    def find(c: int) -> int:
        while labels[c] != c:
            labels[c] = labels[labels[c]]
            c = labels[c]
        return c

    def unify(c1: int, c2: int) -> None:
        queue = [(c1, c2)]
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            labels[b] = a
            for d in range(nsym):
                nb = neighbors[b][d]
                if nb == -1:
                    continue
                na = neighbors[a][d]
                if na == -1:
                    neighbors[a][d] = nb
                else:
                    queue.append((na, nb))

    def follow(c: int, d: int) -> int:
        c = find(c)
        if neighbors[c][d] == -1:
            neighbors[c][d] = add_vertex()
        return find(neighbors[c][d])

    add_vertex()
    visit = 0
    while visit < len(labels):
        if find(visit) == visit:
            for rel in rels:
                c = visit
                for d in reversed(rel):
                    c = follow(c, d)
                unify(c, visit)
                if len(labels) > max_cosets:
                    return EXCEEDED
        visit += 1
    return ToddCoxeterResult(sum(1 for v, l in enumerate(labels) if v == l))
