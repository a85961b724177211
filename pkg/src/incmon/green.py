"""Block form, inverses and Green's relations in the maximal antichain monoid M.

M is Inc(Q, A) for Q complete bipartite of type (k, m) and A its maximal
elements.  Every element has the shape ``[[1_k, B], [0, diag(D)]]`` and is
stored as a :class:`BlockElement`.  With ``L`` the support set and ``1~_L``
the m x m 0/1 diagonal selecting the columns ``j`` with ``D_j != 0``:

* the canonical inverse is ``[[1, B(1 - 1~_L) - B D'], [0, D']]`` where ``D'``
  inverts the nonzero entries of ``D`` and keeps zeros;
* ``J = D = R`` holds exactly when the support sets agree;
* ``L = H`` additionally needs ``B(1 - 1~_L)`` to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from incmon.errors import DimensionMismatch, FieldMismatch, NotInHClass, WrongContext
from incmon.exact import QQ, ExactMatrix, Field, IndexSet
from incmon.incidence import maximal_antichain_monoid

RELATIONS = ("R", "L", "J", "H", "D")


@dataclass(frozen=True)
class BlockElement:
    k: int
    m: int
    B: ExactMatrix
    D: tuple
    field: Field = QQ

    def __post_init__(self):
        if self.B.shape != (self.k, self.m) or len(self.D) != self.m:
            raise DimensionMismatch(f"block shapes do not match type ({self.k},{self.m})")
        if self.B.field != self.field:
            raise FieldMismatch("B lives over a different field")
        object.__setattr__(self, "D", tuple(self.field(d) for d in self.D))

    @classmethod
    def make(cls, k: int, m: int, B, D, field_: Field = QQ) -> "BlockElement":
        """Build from nested lists; ``B`` has k rows of length m."""
        B = [list(r) for r in B] if k else []
        return cls(k, m, ExactMatrix.from_rows(B, field_) if k and m else ExactMatrix.zeros(k, m, field_), tuple(D), field_)

    @classmethod
    def identity(cls, k: int, m: int, field_: Field = QQ) -> "BlockElement":
        return cls(k, m, ExactMatrix.zeros(k, m, field_), (field_.one,) * m, field_)

    @classmethod
    def diagonal_idempotent(cls, k: int, m: int, J: IndexSet, field_: Field = QQ) -> "BlockElement":
        if not set(range(1, k + 1)) <= set(J):
            raise WrongContext("diagonal idempotents of M contain [k]")
        return cls(k, m, ExactMatrix.zeros(k, m, field_), tuple(int(k + j + 1 in J) for j in range(m)), field_)

    @classmethod
    def from_matrix(cls, x: ExactMatrix, k: int) -> "BlockElement":
        n = x.rows
        m = n - k
        if x.shape != (n, n) or m < 0:
            raise DimensionMismatch("expected a square matrix of size k + m")
        ok = all(
            x.entries[i][j] == (1 if i == j else 0)
            for i in range(k)
            for j in range(k)
        )
        ok = ok and all(x.entries[i][j] == 0 for i in range(k, n) for j in range(n) if i != j)
        if not ok:
            raise WrongContext("matrix is not of the block form [[1, B], [0, diag(D)]]")
        B = tuple(tuple(x.entries[i][k + j] for j in range(m)) for i in range(k))
        return cls(k, m, ExactMatrix(k, m, B, x.field), tuple(x.entries[k + j][k + j] for j in range(m)), x.field)

    @property
    def n(self) -> int:
        return self.k + self.m

    def to_matrix(self) -> ExactMatrix:
        f, k, n = self.field, self.k, self.n
        rows = []
        for i in range(n):
            row = [f.zero] * n
            if i < k:
                row[i] = f.one
                for j in range(self.m):
                    row[k + j] = self.B.entries[i][j]
            else:
                row[i] = self.D[i - k]
            rows.append(tuple(row))
        return ExactMatrix(n, n, tuple(rows), f)

    def _check(self, other: "BlockElement"):
        if (self.k, self.m) != (other.k, other.m):
            raise DimensionMismatch(f"types ({self.k},{self.m}) and ({other.k},{other.m}) differ")
        if self.field != other.field:
            raise FieldMismatch("operands over different fields")

    def __matmul__(self, other: "BlockElement") -> "BlockElement":
        # [[1, B1], [0, D1]] [[1, B2], [0, D2]] = [[1, B2 + B1 D2], [0, D1 D2]]
        self._check(other)
        return BlockElement(
            self.k, self.m, other.B + scale_columns(self.B, other.D), tuple(self.field.reduce(a * b) for a, b in zip(self.D, other.D)), self.field
        )

    def is_unit(self) -> bool:
        return all(d != 0 for d in self.D)

    def is_idempotent(self) -> bool:
        return self @ self == self

    def to_json(self) -> dict:
        return self.to_matrix().to_json() | {"k": self.k, "m": self.m}


def scale_columns(B: ExactMatrix, d: Iterable) -> ExactMatrix:
    """``B diag(d)``."""
    d = list(d)
    f = B.field
    return ExactMatrix(B.rows, B.cols, tuple(tuple(f.reduce(v * d[j]) for j, v in enumerate(row)) for row in B.entries), f)


def _support_mask(x: BlockElement) -> list[int]:
    return [1 if d != 0 else 0 for d in x.D]


def support_set(x: BlockElement) -> IndexSet:
    return IndexSet.of(x.n, list(range(1, x.k + 1)) + [x.k + j + 1 for j, d in enumerate(x.D) if d != 0])


def _pseudo_inverse(x: BlockElement) -> tuple:
    f = x.field
    return tuple(f.inv(d) if d != 0 else f.zero for d in x.D)


def _outside_columns(x: BlockElement) -> ExactMatrix:
    """``B (1 - 1~_L)``: the columns of B where D vanishes."""
    return scale_columns(x.B, [1 - s for s in _support_mask(x)])


def canonical_inverse(x: BlockElement) -> BlockElement:
    dp = _pseudo_inverse(x)
    return BlockElement(x.k, x.m, _outside_columns(x) - scale_columns(x.B, dp), dp, x.field)


def is_inverse(x: BlockElement, y: BlockElement) -> bool:
    x._check(y)
    return x @ y @ x == x and y @ x @ y == y


def meet_idempotent(x: BlockElement) -> BlockElement:
    """``X X^-1``, the identity of the group H_X."""
    return BlockElement(x.k, x.m, _outside_columns(x), tuple(_support_mask(x)), x.field)


def green_related(x: BlockElement, y: BlockElement, rel: str) -> bool:
    x._check(y)
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    same_class = support_set(x) == support_set(y)
    if rel in ("R", "J", "D"):
        return same_class
    return same_class and _outside_columns(x) == _outside_columns(y)


@dataclass(frozen=True)
class CrossSectionLattice:
    k: int
    m: int
    elements: tuple[IndexSet, ...]

    @property
    def bottom(self) -> IndexSet:
        return IndexSet.of(self.k + self.m, range(1, self.k + 1))

    @property
    def top(self) -> IndexSet:
        return IndexSet.full(self.k + self.m)

    def meet(self, a: IndexSet, b: IndexSet) -> IndexSet:
        return a & b

    def join(self, a: IndexSet, b: IndexSet) -> IndexSet:
        return a | b

    def to_subset(self, J: IndexSet) -> frozenset:
        """The isomorphism onto subsets of [m]: ``J`` maps to ``{j - k : j in J, j > k}``."""
        return frozenset(j - self.k for j in J if j > self.k)

    def from_subset(self, s: Iterable[int]) -> IndexSet:
        return IndexSet.of(self.k + self.m, list(range(1, self.k + 1)) + [self.k + j for j in s])

    def idempotent(self, J: IndexSet, field_: Field = QQ) -> BlockElement:
        return BlockElement.diagonal_idempotent(self.k, self.m, J, field_)

    def covers(self) -> list[tuple[IndexSet, IndexSet]]:
        return [(a, b) for a in self.elements for b in self.elements if a < b and len(b) == len(a) + 1]

    def to_dot(self) -> str:
        lines = [f"digraph cross_section_{self.k}_{self.m} {{", "  rankdir=BT;"]
        lines += [f'  "{J.bits()}";' for J in self.elements]
        lines += [f'  "{a.bits()}" -> "{b.bits()}";' for a, b in self.covers()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "elements": [J.bits() for J in self.elements],
            "covers": [[a.bits(), b.bits()] for a, b in self.covers()],
        }


def cross_section_lattice(k: int, m: int) -> CrossSectionLattice:
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    n = k + m
    elems = [IndexSet.of(n, list(range(1, k + 1)) + [k + 1 + j for j in range(m) if mask >> j & 1]) for mask in range(2**m)]
    elems.sort(key=IndexSet.sort_key)
    return CrossSectionLattice(k, m, tuple(elems))


def in_h_class(J: IndexSet, x: BlockElement) -> bool:
    """Membership in H_{1_J}: D nonzero exactly on J and the columns of B outside J vanish."""
    for j in range(x.m):
        inside = (x.k + j + 1) in J
        if (x.D[j] != 0) != inside:
            return False
        if not inside and any(x.B.entries[i][j] != 0 for i in range(x.k)):
            return False
    return True


def h_class_iso(J: IndexSet, x: BlockElement) -> BlockElement:
    """Delete the rows and columns outside ``J``; lands in the unit group of type (k, |J| - k)."""
    if not in_h_class(J, x):
        raise NotInHClass(f"element is not in the H-class of 1_{J.bits()}")
    keep = [j for j in range(x.m) if (x.k + j + 1) in J]
    B = tuple(tuple(x.B.entries[i][j] for j in keep) for i in range(x.k))
    return BlockElement(x.k, len(keep), ExactMatrix(x.k, len(keep), B, x.field), tuple(x.D[j] for j in keep), x.field)


def h_class_iso_inverse(J: IndexSet, g: BlockElement, m: int) -> BlockElement:
    """Reinsert zero rows and columns at the positions of ``[k + m]`` outside ``J``."""
    k, f = g.k, g.field
    keep = [j for j in range(m) if (k + j + 1) in J]
    if len(keep) != g.m or not g.is_unit():
        raise NotInHClass("element is not a unit of the matching group")
    where = {j: p for p, j in enumerate(keep)}
    B = tuple(tuple(g.B.entries[i][where[j]] if j in where else f.zero for j in range(m)) for i in range(k))
    D = tuple(g.D[where[j]] if j in where else f.zero for j in range(m))
    return BlockElement(k, m, ExactMatrix(k, m, B, f), D, f)


def rho(x: BlockElement) -> BlockElement:
    """``X 1_L``: the H-class of ``X`` carried into the group H_{1_L}."""
    return x @ BlockElement.diagonal_idempotent(x.k, x.m, support_set(x), x.field)


def rho_inverse(y: BlockElement, x0: BlockElement) -> BlockElement:
    """``Y X0 X0^-1``, inverting :func:`rho` on the H-class of ``x0``."""
    return y @ meet_idempotent(x0)


def h_class_order(k: int, m: int, J: IndexSet, q: int) -> int:
    r = len(J) - k
    return (q - 1) ** r * q ** (k * r)


def count_h_class_types(k: int, m: int) -> int:
    return m + 1


def context(k: int, m: int):
    """The :class:`~incmon.incidence.MonoidContext` whose elements are these block matrices."""
    return maximal_antichain_monoid(k, m)
