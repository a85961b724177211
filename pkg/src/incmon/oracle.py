"""Brute-force reference engine over GF(q).

Everything here is computed from definitions: ideals are generated sets,
conjugacy witnesses come from exhaustive search in canonical order.  The
closed forms in :mod:`incmon.green` and :mod:`incmon.conjugacy` are tested
against it.

Element ``i`` of a :class:`FiniteMonoid` is the context member with code
``i`` (see :class:`incmon.kernels.GFCodec`), so list order is the
lexicographic order of the row-major entry vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from incmon import kernels
from incmon.errors import ElementNotInMonoid, SearchSpaceTooLarge
from incmon.exact import ExactMatrix, inverse_upper
from incmon.incidence import MonoidContext, contains

MAX_MATERIALIZE = 10**6
MAX_TABLE = 10**4


class FiniteMonoid:
    def __init__(self, ctx: MonoidContext, q: int):
        self.ctx = ctx
        self.q = q
        self.codec = kernels.GFCodec(ctx, q)
        self.size = self.codec.total
        self.mats = self.codec.decode(np.arange(self.size, dtype=np.int64))
        self._elements: dict[int, ExactMatrix] = {}

    def __len__(self):
        return self.size

    def element(self, i: int) -> ExactMatrix:
        if i not in self._elements:
            self._elements[i] = self.codec.to_matrix(self.mats[i])
        return self._elements[i]

    @property
    def elements(self) -> list[ExactMatrix]:
        return [self.element(i) for i in range(self.size)]

    def index(self, x: ExactMatrix) -> int:
        if x.field != self.codec.field or x.shape != (self.codec.n, self.codec.n) or not contains(self.ctx, x):
            raise ElementNotInMonoid("matrix is not an element of this monoid")
        return self.codec.code_of(x)

    def _idx(self, a) -> int:
        return self.index(a) if isinstance(a, ExactMatrix) else int(a)

    @cached_property
    def table(self) -> Optional[np.ndarray]:
        """``table[a, b]`` is the index of ``a b``; built only for small monoids."""
        if self.size > MAX_TABLE:
            return None
        return kernels.products(self.mats, self.mats, self.q, self.codec.rows, self.codec.cols)

    def row(self, a: int) -> np.ndarray:
        """Indices of ``a s`` for every ``s``."""
        if self.table is not None:
            return self.table[a]
        return kernels.products(self.mats[a : a + 1], self.mats, self.q, self.codec.rows, self.codec.cols)[0]

    def col(self, a: int) -> np.ndarray:
        """Indices of ``s a`` for every ``s``."""
        if self.table is not None:
            return self.table[:, a]
        return kernels.products(self.mats, self.mats[a : a + 1], self.q, self.codec.rows, self.codec.cols)[:, 0]

    def mul(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        return int(kernels.products(self.mats[a : a + 1], self.mats[b : b + 1], self.q, self.codec.rows, self.codec.cols)[0, 0])

    @cached_property
    def identity(self) -> int:
        return self.codec.code_of(ExactMatrix.identity(self.codec.n, self.codec.field))

    @cached_property
    def units(self) -> np.ndarray:
        n = self.codec.n
        diag = self.mats[:, np.arange(n), np.arange(n)]
        return np.nonzero(np.all(diag != 0, axis=1))[0]

    @cached_property
    def unit_inverses(self) -> np.ndarray:
        """Matrices of the inverses of :attr:`units`, aligned with it."""
        inv = [self.codec.from_matrix(inverse_upper(self.element(int(u)))) for u in self.units]
        return np.array(inv, dtype=np.int64).reshape(len(self.units), self.codec.n, self.codec.n)

    @cached_property
    def idempotents(self) -> np.ndarray:
        return np.nonzero(kernels.idempotent_mask(self.mats, self.q))[0]

    def closure_violations(self) -> int:
        """Number of products that fail to land back in the element list (0 for a monoid)."""
        prods = kernels.products(self.mats, self.mats, self.q, self.codec.rows, self.codec.cols)
        back = self.codec.decode(prods.reshape(-1))
        full = np.einsum("aij,bjk->abik", self.mats, self.mats) % self.q
        return int(np.sum(np.any(back != full.reshape(back.shape), axis=(1, 2))))


def materialize(ctx: MonoidContext, q: int, cap: int | None = None) -> FiniteMonoid:
    cap = min(kernels.max_search(), MAX_MATERIALIZE) if cap is None else cap
    codec = kernels.GFCodec(ctx, q)
    if codec.total > cap:
        raise SearchSpaceTooLarge(f"{codec.total} elements over GF({q}) exceeds the cap {cap}")
    return FiniteMonoid(ctx, q)


@dataclass
class GreenData:
    """Class ids per element for each relation, computed from generated ideals."""

    ids: dict[str, np.ndarray]
    rl_pairs: set = field(default_factory=set)

    def related(self, a: int, b: int, rel: str) -> bool:
        if rel == "D":
            return (int(self.ids["R"][a]), int(self.ids["L"][b])) in self.rl_pairs
        return bool(self.ids[rel][a] == self.ids[rel][b])

    def classes(self, rel: str) -> list[np.ndarray]:
        ids = self.ids[rel]
        return [np.nonzero(ids == v)[0] for v in np.unique(ids)]


def _class_ids(masks: np.ndarray) -> np.ndarray:
    _, ids = np.unique(np.packbits(masks, axis=1), axis=0, return_inverse=True)
    return ids.reshape(-1)


def green_data(S: FiniteMonoid) -> GreenData:
    if "_green" in S.__dict__:
        return S.__dict__["_green"]
    N = S.size
    right = np.zeros((N, N), dtype=bool)  # right[a] = aS
    left = np.zeros((N, N), dtype=bool)  # left[a] = Sa
    for a in range(N):
        right[a, S.row(a)] = True
        left[a, S.col(a)] = True
    # SaS = union of Sb over b in aS
    two = (right.astype(np.int32) @ left.astype(np.int32)) > 0
    ids = {"R": _class_ids(right), "L": _class_ids(left), "J": _class_ids(two)}
    ids["H"] = np.unique(np.stack([ids["R"], ids["L"]], axis=1), axis=0, return_inverse=True)[1].reshape(-1)
    rl = set(zip(ids["R"].tolist(), ids["L"].tolist()))
    data = GreenData(ids, rl)
    S.__dict__["_green"] = data
    return data


def green_oracle(S: FiniteMonoid, a, b, rel: str) -> bool:
    if rel not in ("R", "L", "J", "H", "D"):
        raise ValueError(f"unknown relation {rel!r}")
    a, b = S._idx(a), S._idx(b)
    for x in (a, b):
        if not 0 <= x < S.size:
            raise ElementNotInMonoid(f"index {x} outside the monoid")
    return green_data(S).related(a, b, rel)


def p_conjugacy_oracle(S: FiniteMonoid, a, b) -> Optional[tuple[int, int]]:
    """First ``(z, w)`` in canonical order with ``z w = a`` and ``w z = b``."""
    a, b = S._idx(a), S._idx(b)
    if S.table is not None:
        hit = np.argwhere((S.table == a) & (S.table.T == b))
        return (int(hit[0, 0]), int(hit[0, 1])) if len(hit) else None
    for z in range(S.size):
        zw, wz = S.row(z), S.col(z)
        hit = np.nonzero((zw == a) & (wz == b))[0]
        if len(hit):
            return z, int(hit[0])
    return None


@dataclass
class RegularityReport:
    checked: int
    failures: list[int]

    @property
    def completely_regular(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": len(self.failures), "completely_regular": self.completely_regular}


def commuting_inverse(S: FiniteMonoid, a: int) -> Optional[int]:
    """First ``x`` with ``a x a = a``, ``x a x = x`` and ``a x = x a``."""
    ax, xa = S.row(a), S.col(a)
    ok = ax == xa
    if S.table is not None:
        ok &= S.table[ax, a] == a
        ok &= S.table[xa, np.arange(S.size)] == np.arange(S.size)
    else:
        ok &= np.array([S.mul(int(v), a) == a for v in ax])
        ok &= np.array([S.mul(int(v), x) == x for x, v in enumerate(xa)])
    hit = np.nonzero(ok)[0]
    return int(hit[0]) if len(hit) else None


def completely_regular_check(S: FiniteMonoid) -> RegularityReport:
    fails = [a for a in range(S.size) if commuting_inverse(S, a) is None]
    return RegularityReport(S.size, fails)


def conjugator_search(S: FiniteMonoid, x, y) -> Optional[int]:
    """First unit ``g`` (canonical order) with ``g x g^-1 = y``."""
    x, y = S._idx(x), S._idx(y)
    c = S.codec
    got = kernels.conjugates(S.mats[S.units], S.unit_inverses, S.mats[x], S.q, c.rows, c.cols)
    hit = np.nonzero(got == y)[0]
    return int(S.units[hit[0]]) if len(hit) else None


def conjugacy_orbits(S: FiniteMonoid) -> list[np.ndarray]:
    """Partition of the unit group into conjugacy classes, each sorted, ordered by least member."""
    c = S.codec
    G, Ginv = S.mats[S.units], S.unit_inverses
    seen = np.zeros(S.size, dtype=bool)
    orbits = []
    for u in S.units:
        if seen[u]:
            continue
        orbit = np.unique(kernels.conjugates(G, Ginv, S.mats[u], S.q, c.rows, c.cols))
        seen[orbit] = True
        orbits.append(orbit)
    return orbits


@dataclass
class RightGroupReport:
    size: int
    right_simple: bool
    left_cancellative: bool

    @property
    def right_group(self) -> bool:
        return self.right_simple and self.left_cancellative


def right_group_check(S: FiniteMonoid, members) -> RightGroupReport:
    """Check that the subset ``members`` is a right group under the monoid product.

    Right simple: ``a x = b`` is solvable inside the subset for all members.
    Left cancellative: ``a x = a y`` forces ``x = y`` inside the subset.
    """
    members = np.asarray(sorted(int(v) for v in members), dtype=np.int64)
    inside = set(members.tolist())
    simple = cancel = True
    for a in members:
        prods = S.row(int(a))[members]
        simple &= inside <= set(prods.tolist())
        cancel &= len(set(prods.tolist())) == len(members)
    return RightGroupReport(len(members), bool(simple), bool(cancel))


def report(S: FiniteMonoid) -> dict:
    """Counts per Green's class plus regularity facts, as a JSON-ready dict."""
    g = green_data(S)
    out = {
        "context": S.ctx.kind,
        "field": S.codec.field.name,
        "elements": S.size,
        "units": int(len(S.units)),
        "idempotents": int(len(S.idempotents)),
        "classes": {rel: len(g.classes(rel)) for rel in ("R", "L", "J", "H")},
    }
    out["classes"]["D"] = len(d_classes(S))
    out["completely_regular"] = completely_regular_check(S).completely_regular
    return out


def d_classes(S: FiniteMonoid) -> list[np.ndarray]:
    """D-classes as the components of the bipartite graph on (R-class, L-class) pairs."""
    g = green_data(S)
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for r, l in g.rl_pairs:
        parent[find(("R", r))] = find(("L", l))
    roots = np.array([hash(find(("R", int(r)))) for r in g.ids["R"]])
    return [np.nonzero(roots == v)[0] for v in dict.fromkeys(roots.tolist())]
