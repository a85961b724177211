"""Dense exact matrices over the rationals or a small prime field.

Entries are plain Python numbers: :class:`fractions.Fraction` over QQ and
``int`` residues in ``[0, q)`` over GF(q).  A :class:`Field` object knows how
to coerce, reduce and invert them, so the matrix code is written once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from incmon.errors import (
    DimensionMismatch,
    FieldMismatch,
    FieldTooLarge,
    IndexOutOfRange,
    NotPrime,
    NotUnit,
    SizeLimitExceeded,
)

MAX_GF_ORDER = 7
# guard rail for rational mode; raise it deliberately if you need bigger matrices
MAX_RATIONAL_DIM = 16


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


@dataclass(frozen=True)
class Field:
    """QQ when ``q`` is None, otherwise the prime field GF(q)."""

    q: int | None = None

    def __post_init__(self):
        if self.q is not None:
            if not is_prime(self.q):
                raise NotPrime(f"{self.q} is not prime")
            if self.q > MAX_GF_ORDER:
                raise FieldTooLarge(f"GF({self.q}) exceeds the supported order {MAX_GF_ORDER}")

    @property
    def is_rational(self) -> bool:
        return self.q is None

    @property
    def name(self) -> str:
        return "QQ" if self.q is None else f"GF({self.q})"

    def __repr__(self):
        return self.name

    @property
    def zero(self):
        return Fraction(0) if self.q is None else 0

    @property
    def one(self):
        return Fraction(1) if self.q is None else 1

    def __call__(self, x):
        """Coerce ints, Fractions and ``"p/q"`` strings into this field."""
        if self.q is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.q == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.q) % self.q
        return int(x) % self.q

    def reduce(self, x):
        return x if self.q is None else x % self.q

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError(f"0 is not invertible in {self.name}")
        return 1 / x if self.q is None else pow(x, -1, self.q)

    def elements(self) -> list:
        if self.q is None:
            raise ValueError("QQ is infinite")
        return list(range(self.q))

    def format(self, x):
        """JSON form of a scalar: ``"p/q"`` strings over QQ, ints over GF(q)."""
        return str(x) if self.q is None else int(x)

    @classmethod
    def parse(cls, name: str) -> "Field":
        name = name.strip()
        if name.upper() in ("QQ", "Q", "RATIONALS"):
            return QQ
        m = re.fullmatch(r"(?:GF\()?(\d+)\)?", name, flags=re.IGNORECASE)
        if not m:
            raise ValueError(f"unrecognised field {name!r}")
        return cls(int(m.group(1)))


QQ = Field()


def GF(q: int) -> Field:
    return Field(q)


def gf_elements(q: int) -> Iterator[int]:
    """Enumerate GF(q) as 0, 1, ..., q-1."""
    yield from Field(q).elements()


@dataclass(frozen=True)
class IndexSet:
    """A subset ``J`` of ``[n] = {1, ..., n}`` (1-based, as in ``1_J``)."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        for j in ms:
            if not 1 <= j <= self.n:
                raise IndexOutOfRange(f"{j} not in [1, {self.n}]")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> "IndexSet":
        return cls(n, tuple(members))

    @classmethod
    def full(cls, n: int) -> "IndexSet":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def from_bits(cls, bits: str) -> "IndexSet":
        return cls(len(bits), tuple(i + 1 for i, b in enumerate(bits) if b == "1"))

    def __contains__(self, j) -> bool:
        return j in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"index sets live in [{self.n}] and [{other.n}]")

    def __and__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.n, tuple(set(self.members) & set(other.members)))

    def __or__(self, other: "IndexSet") -> "IndexSet":
        self._check(other)
        return IndexSet(self.n, tuple(set(self.members) | set(other.members)))

    def __le__(self, other):  # subset
        self._check(other)
        return set(self.members) <= set(other.members)

    def __lt__(self, other):
        return self <= other and self != other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def sort_key(self):
        return (len(self.members), self.members)

    def complement(self) -> "IndexSet":
        return IndexSet(self.n, tuple(j for j in range(1, self.n + 1) if j not in self.members))

    def bits(self) -> str:
        return "".join("1" if j in self.members else "0" for j in range(1, self.n + 1))

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple, ...]
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ) -> "ExactMatrix":
        data = tuple(tuple(field(x) for x in row) for row in rows)
        r = len(data)
        c = len(data[0]) if data else 0
        if any(len(row) != c for row in data):
            raise DimensionMismatch("ragged rows")
        if field.is_rational and max(r, c) > MAX_RATIONAL_DIM:
            raise SizeLimitExceeded(f"{r}x{c} exceeds the rational-mode cap {MAX_RATIONAL_DIM}")
        return cls(r, c, data, field)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, field: Field = QQ) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((field.zero,) * cols for _ in range(rows)), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls.diagonal_matrix([field.one] * n, field)

    @classmethod
    def diagonal_matrix(cls, diag: Sequence, field: Field = QQ) -> "ExactMatrix":
        n = len(diag)
        z = field.zero
        return cls(n, n, tuple(tuple(field(diag[i]) if i == j else z for j in range(n)) for i in range(n)), field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    @property
    def shape(self):
        return self.rows, self.cols

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def flat(self) -> tuple:
        return tuple(x for row in self.entries for x in row)

    def replace(self, updates: dict) -> "ExactMatrix":
        """Copy with ``{(i, j): value}`` overwritten (0-based positions)."""
        rows = [list(r) for r in self.entries]
        for (i, j), v in updates.items():
            rows[i][j] = self.field(v)
        return ExactMatrix(self.rows, self.cols, tuple(map(tuple, rows)), self.field)

    def to_field(self, field: Field) -> "ExactMatrix":
        return ExactMatrix.from_rows(self.entries, field)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)), self.field)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, other.scale(-1))

    def scale(self, c) -> "ExactMatrix":
        f = self.field
        c = f(c)
        return ExactMatrix(self.rows, self.cols, tuple(tuple(f.reduce(c * x) for x in row) for row in self.entries), f)

    def __str__(self):
        w = max((len(str(x)) for x in self.flat()), default=1)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in row) + "]" for row in self.entries)

    def to_json(self) -> dict:
        return {"field": self.field.name, "rows": [[self.field.format(x) for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactMatrix":
        return cls.from_rows(obj["rows"], Field.parse(obj.get("field", "QQ")))


def _same_field(a: ExactMatrix, b: ExactMatrix):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.name} vs {b.field.name}")


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    f = a.field
    bt = tuple(zip(*b.entries)) if b.rows else ((),) * b.cols
    z = f.zero
    return ExactMatrix(
        a.rows,
        b.cols,
        tuple(tuple(f.reduce(sum((x * y for x, y in zip(row, col)), z)) for col in bt) for row in a.entries),
        f,
    )


def mat_add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _same_field(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    f = a.field
    return ExactMatrix(
        a.rows, a.cols, tuple(tuple(f.reduce(x + y) for x, y in zip(r, s)) for r, s in zip(a.entries, b.entries)), f
    )


def mat_eq(a: ExactMatrix, b: ExactMatrix) -> bool:
    _same_field(a, b)
    return a.shape == b.shape and a.entries == b.entries


def is_upper_triangular(a: ExactMatrix) -> bool:
    return all(a.entries[i][j] == 0 for i in range(a.rows) for j in range(min(i, a.cols)))


def is_idempotent_matrix(a: ExactMatrix) -> bool:
    if a.rows != a.cols:
        raise DimensionMismatch("idempotency needs a square matrix")
    return mat_mul(a, a).entries == a.entries


def diag_idempotent(J: IndexSet, field: Field = QQ) -> ExactMatrix:
    """The diagonal 0/1 matrix with ones exactly at the positions in ``J``."""
    return ExactMatrix.diagonal_matrix([1 if j in J else 0 for j in range(1, J.n + 1)], field)


def inverse_upper(a: ExactMatrix) -> ExactMatrix:
    """Inverse of an invertible upper-triangular matrix by back-substitution."""
    n = a.rows
    if a.cols != n or not is_upper_triangular(a):
        raise DimensionMismatch("inverse_upper needs a square upper-triangular matrix")
    f = a.field
    if any(a.entries[i][i] == 0 for i in range(n)):
        raise NotUnit("zero on the diagonal")
    inv_diag = [f.inv(a.entries[i][i]) for i in range(n)]
    x = [[f.zero] * n for _ in range(n)]
    # solve a @ x = 1 column by column, bottom row first
    for j in range(n):
        x[j][j] = inv_diag[j]
        for i in range(j - 1, -1, -1):
            s = sum((a.entries[i][l] * x[l][j] for l in range(i + 1, j + 1)), f.zero)
            x[i][j] = f.reduce(-s * inv_diag[i])
    return ExactMatrix(n, n, tuple(map(tuple, x)), f)


def block_diagonal(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    if not blocks:
        raise DimensionMismatch("no blocks")
    f = blocks[0].field
    for b in blocks:
        _same_field(blocks[0], b)
    n = sum(b.rows for b in blocks)
    rows = [[f.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b.entries[i][j]
        off += b.rows
    return ExactMatrix(n, n, tuple(map(tuple, rows)), f)


def submatrix(a: ExactMatrix, idx: Sequence[int]) -> ExactMatrix:
    """Principal submatrix on the 0-based indices ``idx``."""
    return ExactMatrix(len(idx), len(idx), tuple(tuple(a.entries[i][j] for j in idx) for i in idx), a.field)
