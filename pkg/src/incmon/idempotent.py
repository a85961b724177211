"""The idempotent variety E(M) of an incidence or antichain monoid.

Components are the fibres of the diagonal projection ``p(X) = diag(X)`` and
are named by the index set ``J`` of ``1_J``.  For complete bipartite posets
each fibre is an affine space with an explicit zero pattern.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from incmon import kernels
from incmon.errors import (
    BadDiagonal,
    ColumnRuleViolation,
    ComponentAbsent,
    NotIdempotent,
    SearchSpaceTooLarge,
    WrongContext,
    WrongPosetClass,
)
from incmon.exact import QQ, ExactMatrix, Field, IndexSet, diag_idempotent, is_idempotent_matrix
from incmon.incidence import ANTICHAIN, MonoidContext, contains
from incmon.poset import classify


def diag_projection(x: ExactMatrix) -> IndexSet:
    if not is_idempotent_matrix(x):
        raise NotIdempotent("matrix is not idempotent")
    diag = x.diagonal()
    if any(d not in (0, 1) for d in diag):
        raise BadDiagonal(f"diagonal {diag} is not 0/1")
    return IndexSet.of(x.rows, (i + 1 for i, d in enumerate(diag) if d == 1))


def _ab(k: int, m: int, J: IndexSet | Iterable[int]) -> tuple[int, int]:
    js = set(J)
    return sum(1 for j in js if 1 <= j <= k), sum(1 for j in js if k < j <= k + m)


def component_dimension(k: int, m: int, J: IndexSet | Iterable[int]) -> int:
    """Dimension of the fibre over ``1_J`` in E(Inc(Q)), Q complete bipartite of type (k, m)."""
    a, b = _ab(k, m, J)
    return k * b + a * m - 2 * a * b


@dataclass(frozen=True)
class ComponentDescriptor:
    ctx: MonoidContext
    J: IndexSet
    free_positions: tuple[tuple[int, int], ...]  # 1-based (row, col)
    forced_zero_positions: tuple[tuple[int, int], ...]

    @property
    def dimension(self) -> int:
        return len(self.free_positions)

    def instantiate(self, values: Iterable, field_: Field = QQ) -> ExactMatrix:
        values = list(values)
        if len(values) != len(self.free_positions):
            raise ValueError(f"need {len(self.free_positions)} values, got {len(values)}")
        base = diag_idempotent(self.J, field_)
        return base.replace({(i - 1, j - 1): v for (i, j), v in zip(self.free_positions, values)})

    def pattern(self) -> list[str]:
        """Rows of the component's shape: ``1``/``0`` fixed, ``*`` free."""
        n = self.J.n
        free = set(self.free_positions)
        return [
            " ".join("*" if (i, j) in free else ("1" if i == j and i in self.J else "0") for j in range(1, n + 1))
            for i in range(1, n + 1)
        ]


def _complete_bipartite_type(ctx: MonoidContext) -> tuple[int, int]:
    cls = classify(ctx.poset)
    if cls.tag != "complete_bipartite":
        raise WrongPosetClass(f"needs a complete bipartite poset, got {cls}")
    if ctx.poset.minimal() != list(range(cls.k)):
        raise WrongContext("minimal elements must occupy the first k positions")
    return cls.k, cls.m


def component_parametrization(ctx: MonoidContext, J: IndexSet) -> ComponentDescriptor:
    k, m = _complete_bipartite_type(ctx)
    n = k + m
    if J.n != n:
        raise WrongContext(f"index set lives in [{J.n}], context has {n} elements")
    pinned = {i + 1 for i in ctx.fixed_one_diagonal()}
    if not pinned <= set(J):
        raise ComponentAbsent(f"1_J is not in the antichain monoid: J must contain {sorted(pinned)}")
    free, forced = [], []
    for i in range(1, k + 1):
        for j in range(k + 1, n + 1):
            # exactly one endpoint on the diagonal support
            ((free if (i in J) != (j in J) else forced)).append((i, j))
    return ComponentDescriptor(ctx, J, tuple(free), tuple(forced))


def _is_maximal_antichain_ctx(ctx: MonoidContext) -> tuple[int, int]:
    k, m = _complete_bipartite_type(ctx)
    if ctx.kind != ANTICHAIN or set(ctx.antichain) != set(range(k + 1, k + m + 1)):
        raise WrongContext("needs the antichain monoid of the maximal elements")
    return k, m


def component_multiply(ctx: MonoidContext, y: ExactMatrix, z: ExactMatrix) -> ExactMatrix:
    """``Y Z`` for idempotents of the maximal-antichain monoid, checked against the column rule.

    Column ``i`` of ``YZ`` must be column ``i`` of ``Z`` when ``Z_ii = 0`` and
    column ``i`` of ``Y`` otherwise; the product lands over ``1_{J & J'}``.
    """
    _is_maximal_antichain_ctx(ctx)
    for x in (y, z):
        if not contains(ctx, x):
            raise WrongContext("factor is not in the context")
    jy, jz = diag_projection(y), diag_projection(z)
    yz = y @ z
    n = ctx.n
    for i in range(n):
        src = z if z.entries[i][i] == 0 else y
        if any(yz.entries[r][i] != src.entries[r][i] for r in range(n)):
            raise ColumnRuleViolation(f"column {i + 1} of YZ does not match the column rule")
    if diag_projection(yz) != jy & jz:
        raise ColumnRuleViolation("product left the component over J & J'")
    return yz


def _check_search(codec: kernels.GFCodec, cap: int | None = None):
    cap = kernels.max_search() if cap is None else cap
    if codec.total > cap:
        raise SearchSpaceTooLarge(f"{codec.total} candidates over GF({codec.q}) exceeds the cap {cap}")


def idempotent_codes(ctx: MonoidContext, q: int) -> tuple[kernels.GFCodec, np.ndarray]:
    """Codes (canonical order) of every idempotent of ``ctx`` over GF(q), by brute force."""
    codec = kernels.GFCodec(ctx, q)
    _check_search(codec)
    codes = kernels.idempotent_codes(codec.total, q, codec.n, codec.rows, codec.cols, codec.base)
    return codec, codes


def _group_by_diagonal(codec, codes):
    mats = codec.decode(codes)
    n = codec.n
    diag = mats[:, np.arange(n), np.arange(n)]
    groups: dict[str, list[int]] = {}
    for c, d in zip(codes.tolist(), diag.tolist()):
        groups.setdefault("".join(map(str, d)), []).append(c)
    return groups


def enumerate_idempotents_gf(ctx: MonoidContext, q: int) -> dict[IndexSet, list[ExactMatrix]]:
    """All idempotents over GF(q) keyed by diagonal support, in lexicographic entry order."""
    codec, codes = idempotent_codes(ctx, q)
    groups = _group_by_diagonal(codec, codes)
    out = {}
    for bits in sorted(groups, key=lambda b: IndexSet.from_bits(b).sort_key()):
        if set(bits) - {"0", "1"}:
            raise BadDiagonal(f"idempotent with diagonal {bits}")
        out[IndexSet.from_bits(bits)] = [codec.matrix_of(c) for c in groups[bits]]
    return out


def count_idempotents_gf(ctx: MonoidContext, q: int) -> dict[IndexSet, int]:
    codec, codes = idempotent_codes(ctx, q)
    groups = _group_by_diagonal(codec, codes)
    return {IndexSet.from_bits(b): len(groups[b]) for b in sorted(groups, key=lambda b: IndexSet.from_bits(b).sort_key())}


@dataclass
class OrthodoxReport:
    mode: str
    idempotents: int = 0
    products: int = 0
    violations: list = field(default_factory=list)

    @property
    def orthodox(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "idempotents": self.idempotents,
            "products": self.products,
            "violations": len(self.violations),
            "orthodox": self.orthodox,
        }


def _require_short_intervals(ctx: MonoidContext):
    if ctx.kind != ANTICHAIN:
        raise WrongContext("orthodoxy is claimed for antichain monoids")
    if ctx.poset.max_interval_size() > 2:
        raise WrongPosetClass("poset has an interval with more than two elements")


def random_idempotent(ctx: MonoidContext, rng: random.Random, field_: Field = QQ, spread: int = 9) -> ExactMatrix:
    """Random idempotent of a context whose poset has no 3-element chain.

    Pick the diagonal support (containing every pinned position), then fill each
    relation entry whose endpoints straddle the support with a random scalar.
    """
    if ctx.poset.max_interval_size() > 2:
        raise WrongPosetClass("sampler needs intervals of at most two elements")
    n = ctx.n
    pinned = set(ctx.fixed_one_diagonal())
    J = IndexSet.of(n, (i + 1 for i in range(n) if i in pinned or rng.random() < 0.5))
    vals = {}
    for i in range(n):
        for j in range(i + 1, n):
            if ctx.support_mask[i][j] and ((i + 1) in J) != ((j + 1) in J):
                if field_.is_rational:
                    v = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
                else:
                    v = rng.randrange(field_.q)
                vals[(i, j)] = v
    return diag_idempotent(J, field_).replace(vals)


def check_orthodox(ctx: MonoidContext, mode: str = "gf", q: int = 2, trials: int = 1000, seed: int = 0) -> OrthodoxReport:
    """Check that products of idempotents are idempotent.

    ``mode="gf"`` enumerates every idempotent over GF(q) and tests all ordered
    pairs; ``mode="random"`` samples ``trials`` rational pairs.
    """
    _require_short_intervals(ctx)
    if mode == "gf":
        codec, codes = idempotent_codes(ctx, q)
        mats = codec.decode(codes)
        prods = kernels.products(mats, mats, q, codec.rows, codec.cols)
        ok = np.isin(prods, codes)
        report = OrthodoxReport(f"exhaustive_gf({q})", len(codes), int(prods.size))
        for a, b in zip(*np.nonzero(~ok)):
            report.violations.append((codec.matrix_of(int(codes[a])), codec.matrix_of(int(codes[b]))))
        return report
    if mode == "random":
        rng = random.Random(seed)
        report = OrthodoxReport(f"random_rational({trials})")
        for _ in range(trials):
            e, f = random_idempotent(ctx, rng), random_idempotent(ctx, rng)
            report.idempotents += 2
            report.products += 1
            if not is_idempotent_matrix(e @ f):
                report.violations.append((e, f))
        return report
    raise ValueError(f"unknown mode {mode!r}")


def components_dot(keys: Iterable[IndexSet], dims: dict | None = None) -> str:
    """Hasse diagram of component labels under reverse inclusion (J above J' when J contains J')."""
    keys = sorted(keys, key=IndexSet.sort_key)
    lines = ["digraph components {", "  rankdir=BT;"]
    for J in keys:
        label = J.bits() + (f"\\ndim={dims[J]}" if dims and J in dims else "")
        lines.append(f'  "{J.bits()}" [label="{label}"];')
    for small in keys:
        for big in keys:
            if small < big and len(big) == len(small) + 1:
                lines.append(f'  "{small.bits()}" -> "{big.bits()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
