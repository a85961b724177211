"""Incidence monoids Inc(P) and antichain monoids Inc(P, A) as matrix monoids.

Membership in Inc(P, A) is the affine-subspace test: support inside the
order relation and diagonal equal to 1 at every element outside ``A``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from incmon.errors import (
    DimensionMismatch,
    NotBipartite,
    NotIdempotentSeed,
    NotInMonoid,
    NotUnit,
    WrongContext,
)
from incmon.exact import (
    QQ,
    ExactMatrix,
    Field,
    IndexSet,
    block_diagonal,
    diag_idempotent,
    inverse_upper,
    is_idempotent_matrix,
    submatrix,
)
from incmon.poset import (
    Antichain,
    Poset,
    build_poset,
    classify,
    complete_bipartite,
    component_indices,
)

FULL = "full_incidence"
ANTICHAIN = "antichain_monoid"


@dataclass(frozen=True)
class MonoidContext:
    poset: Poset
    antichain: IndexSet | None = None
    kind: str = FULL
    support_mask: tuple[tuple[bool, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (FULL, ANTICHAIN):
            raise WrongContext(f"unknown context kind {self.kind!r}")
        if self.kind == ANTICHAIN:
            if self.antichain is None:
                raise WrongContext("antichain monoid needs an antichain")
            Antichain(self.poset, self.antichain)  # validates
        elif self.antichain is not None:
            raise WrongContext("full incidence monoid takes no antichain")
        object.__setattr__(self, "support_mask", self.poset.leq)

    @property
    def n(self) -> int:
        return self.poset.n

    def fixed_one_diagonal(self) -> list[int]:
        """0-based diagonal positions pinned to 1 (elements outside the antichain)."""
        if self.kind == FULL:
            return []
        return [i for i in range(self.n) if (i + 1) not in self.antichain]

    def free_positions(self) -> list[tuple[int, int]]:
        """Row-major 0-based positions whose entries vary over the monoid."""
        fixed = set(self.fixed_one_diagonal())
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i, self.n)
            if self.support_mask[i][j] and not (i == j and i in fixed)
        ]

    def baseline(self, field_: Field = QQ) -> ExactMatrix:
        """The matrix with 1 at pinned diagonal positions and 0 elsewhere."""
        fixed = set(self.fixed_one_diagonal())
        return ExactMatrix.diagonal_matrix([1 if i in fixed else 0 for i in range(self.n)], field_)

    def describe(self) -> dict:
        d = {"kind": self.kind, "poset": self.poset.to_json(), "class": str(classify(self.poset))}
        if self.antichain is not None:
            d["antichain"] = [self.poset.labels[j - 1] for j in self.antichain]
        d["free_positions"] = [[i + 1, j + 1] for i, j in self.free_positions()]
        return d


def full_incidence(p: Poset) -> MonoidContext:
    return MonoidContext(p)


def antichain_monoid(p: Poset, antichain: Iterable) -> MonoidContext:
    return MonoidContext(p, p.index_set(antichain), ANTICHAIN)


def maximal_antichain_monoid(k: int, m: int) -> MonoidContext:
    """Inc(Q, A) for Q complete bipartite of type (k, m), A its maximal elements."""
    q = complete_bipartite(k, m)
    return MonoidContext(q, IndexSet.of(k + m, range(k + 1, k + m + 1)), ANTICHAIN)


def contains(ctx: MonoidContext, x: ExactMatrix) -> bool:
    if x.shape != (ctx.n, ctx.n):
        raise DimensionMismatch(f"expected {ctx.n}x{ctx.n}, got {x.rows}x{x.cols}")
    mask = ctx.support_mask
    for i in range(ctx.n):
        for j in range(ctx.n):
            if not mask[i][j] and x.entries[i][j] != 0:
                return False
    return all(x.entries[i][i] == 1 for i in ctx.fixed_one_diagonal())


def _require_member(ctx, x):
    if not contains(ctx, x):
        raise NotInMonoid("matrix is not an element of the context")


def is_unit(ctx: MonoidContext, x: ExactMatrix) -> bool:
    _require_member(ctx, x)
    return all(d != 0 for d in x.diagonal())


def unit_inverse(ctx: MonoidContext, x: ExactMatrix) -> ExactMatrix:
    if not is_unit(ctx, x):
        raise NotUnit("matrix has a zero diagonal entry")
    return inverse_upper(x)


def jordan_chart(ctx: MonoidContext, y: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Split ``y`` into (diagonal minus baseline, strictly upper part).

    The diagonal part is supported on the antichain and the nilpotent part on
    the strict order relation; the map is a bijection onto that product.
    """
    if ctx.kind != ANTICHAIN:
        raise WrongContext("the chart is defined for antichain monoids")
    _require_member(ctx, y)
    f = y.field
    base = ctx.baseline(f)
    n = ctx.n
    diag = ExactMatrix.diagonal_matrix([f.reduce(y.entries[i][i] - base.entries[i][i]) for i in range(n)], f)
    nil = ExactMatrix(n, n, tuple(tuple(y.entries[i][j] if j > i else f.zero for j in range(n)) for i in range(n)), f)
    return diag, nil


def jordan_unchart(ctx: MonoidContext, diag_part: ExactMatrix, nil_part: ExactMatrix) -> ExactMatrix:
    if ctx.kind != ANTICHAIN:
        raise WrongContext("the chart is defined for antichain monoids")
    n = ctx.n
    for m in (diag_part, nil_part):
        if m.shape != (n, n):
            raise DimensionMismatch(f"chart coordinates must be {n}x{n}")
    for i in range(n):
        for j in range(n):
            d, v = diag_part.entries[i][j], nil_part.entries[i][j]
            if (i != j or (i + 1) not in ctx.antichain) and d != 0:
                raise NotInMonoid(f"diagonal coordinate nonzero outside the antichain at ({i + 1},{j + 1})")
            if (j <= i or not ctx.support_mask[i][j]) and v != 0:
                raise NotInMonoid(f"nilpotent coordinate nonzero off the strict order at ({i + 1},{j + 1})")
    return ctx.baseline(diag_part.field) + diag_part + nil_part


def lambda_curve(ctx: MonoidContext, J: IndexSet, N: ExactMatrix, t) -> ExactMatrix:
    """``1_J + t (1_n - 1_J) + N`` for a seed idempotent ``1_J + N``."""
    f = N.field
    n = ctx.n
    if any(N.entries[i][j] != 0 for i in range(n) for j in range(i + 1)):
        raise NotIdempotentSeed("N must be strictly upper triangular")
    seed = diag_idempotent(J, f) + N
    if not contains(ctx, seed) or not is_idempotent_matrix(seed):
        raise NotIdempotentSeed("1_J + N is not an idempotent of the context")
    t = f(t)
    comp = diag_idempotent(J.complement(), f).scale(t)
    return diag_idempotent(J, f) + comp + N


def decompose(ctx: MonoidContext) -> list[MonoidContext]:
    if ctx.kind != ANTICHAIN:
        raise WrongContext("decompose expects an antichain monoid")
    out = []
    for idx in component_indices(ctx.poset):
        sub = ctx.poset.induced(idx)
        members = [pos + 1 for pos, i in enumerate(idx) if (i + 1) in ctx.antichain]
        out.append(MonoidContext(sub, IndexSet.of(sub.n, members), ANTICHAIN))
    return out


def split_blocks(ctx: MonoidContext, x: ExactMatrix) -> list[ExactMatrix]:
    """Principal blocks of ``x`` on each connected component (ordered as :func:`decompose`)."""
    return [submatrix(x, idx) for idx in component_indices(ctx.poset)]


def assemble_blocks(ctx: MonoidContext, blocks: list[ExactMatrix]) -> ExactMatrix:
    """Inverse of :func:`split_blocks`: place component blocks back at their indices."""
    groups = component_indices(ctx.poset)
    if len(groups) != len(blocks):
        raise DimensionMismatch(f"{len(groups)} components but {len(blocks)} blocks")
    perm = [i for g in groups for i in g]
    bd = block_diagonal(blocks)
    n = ctx.n
    where = {old: new for new, old in enumerate(perm)}
    return ExactMatrix(n, n, tuple(tuple(bd.entries[where[i]][where[j]] for j in range(n)) for i in range(n)), bd.field)


def embed_bipartite(src: MonoidContext, x: ExactMatrix) -> tuple[MonoidContext, ExactMatrix]:
    """Reinterpret an element of Inc(P) (P bipartite of type (k, m)) inside Inc(Q), Q complete.

    Q keeps the labels of P with the minimal elements listed first; when P's
    stored extension already does this the returned matrix equals ``x``.
    """
    cls = classify(src.poset)
    if cls.tag not in ("bipartite", "complete_bipartite"):
        raise NotBipartite(f"poset classifies as {cls}")
    _require_member(src, x)
    p = src.poset
    mins = p.minimal()
    maxs = p.maximal()
    order = mins + maxs
    labels = [p.labels[i] for i in order]
    q = build_poset(labels, [(p.labels[i], p.labels[j]) for i in mins for j in maxs])
    n = p.n
    y = ExactMatrix(n, n, tuple(tuple(x.entries[a][b] for b in order) for a in order), x.field)
    ctx = MonoidContext(q)
    if src.kind == ANTICHAIN:
        ctx = MonoidContext(q, q.index_set([p.labels[j - 1] for j in src.antichain]), ANTICHAIN)
    return ctx, y


def random_element(ctx: MonoidContext, rng: random.Random, field_: Field = QQ, spread: int = 9) -> ExactMatrix:
    """Uniform-ish random member; over QQ entries are small fractions, zero with some probability."""
    vals = {}
    for i, j in ctx.free_positions():
        if field_.is_rational:
            if rng.random() < 0.2:
                v = Fraction(0)
            else:
                v = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
        else:
            v = rng.randrange(field_.q)
        vals[(i, j)] = v
    return ctx.baseline(field_).replace(vals)


def random_unit(ctx: MonoidContext, rng: random.Random, field_: Field = QQ) -> ExactMatrix:
    while True:
        x = random_element(ctx, rng, field_)
        if all(d != 0 for d in x.diagonal()):
            return x


def check_member(ctx: MonoidContext, x: ExactMatrix) -> None:
    """Raise :class:`NotInMonoid` unless ``x`` belongs to ``ctx``."""
    _require_member(ctx, x)

