"""Conjugacy in M and in its unit groups G.

A unit ``g = [[1, B], [0, D]]`` factors as ``t u`` with ``t = diag(1, D)`` and
``u = [[1, B], [0, 1]]``.  Conjugating by ``x = [[1, C], [0, E]]`` gives
``[[1, (B + C(D - 1)) E^-1], [0, D]]``, so two units are conjugate exactly when
their torus parts agree and, in every column ``j`` with ``D_j = 1``, the
B-columns are both zero or nonzero multiples of each other.  Columns with
``D_j != 1`` can be moved anywhere.

Every positive verdict carries a witness that has been rechecked by full
matrix multiplication before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from incmon.errors import DifferentGroups, NotIdempotent, NotUnit, WitnessFailure
from incmon.exact import ExactMatrix, inverse_upper
from incmon.green import (
    BlockElement,
    canonical_inverse,
    h_class_iso,
    h_class_iso_inverse,
    meet_idempotent,
    rho,
    support_set,
)

SEMISIMPLE = "semisimple"
UNIPOTENT = "unipotent"
MIXED = "mixed"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class SemidirectFactorization:
    t: tuple  # D, the torus part diag(1, D)
    u: ExactMatrix  # B, the unipotent part [[1, B], [0, 1]]
    k: int
    m: int

    def torus(self) -> BlockElement:
        f = self.u.field
        return BlockElement(self.k, self.m, ExactMatrix.zeros(self.k, self.m, f), self.t, f)

    def unipotent(self) -> BlockElement:
        return BlockElement(self.k, self.m, self.u, (self.u.field.one,) * self.m, self.u.field)

    def reassemble(self) -> BlockElement:
        return self.torus() @ self.unipotent()

    @property
    def case(self) -> str:
        return case_tag_of(self.t, self.u)


def case_tag_of(D, B: ExactMatrix) -> str:
    if all(v == 0 for v in B.flat()):
        return SEMISIMPLE
    if all(d == 1 for d in D):
        return UNIPOTENT
    return MIXED


@dataclass(frozen=True)
class ConjugacyVerdict:
    related: bool
    case_tag: str
    witness: Optional[tuple] = None  # (z, w), (s, v) or (g,)

    def to_json(self) -> dict:
        out = {"related": self.related, "case": self.case_tag}
        if self.witness is not None:
            out["witness"] = [w.to_matrix().to_json() if isinstance(w, BlockElement) else w.to_json() for w in self.witness]
        return out


def semidirect_factor(g: BlockElement) -> SemidirectFactorization:
    if not g.is_unit():
        raise NotUnit("only units factor as torus times unipotent")
    fac = SemidirectFactorization(g.D, g.B, g.k, g.m)
    if fac.reassemble() != g:
        raise WitnessFailure("t u does not reproduce g")
    return fac


def _column(B: ExactMatrix, j: int) -> list:
    return [B.entries[i][j] for i in range(B.rows)]


def _column_ratio(c: list, c2: list, f):
    """``lam`` with ``c2 = lam c`` and ``lam != 0``; 1 when both are zero; None otherwise."""
    if all(v == 0 for v in c) and all(v == 0 for v in c2):
        return f.one
    piv = next((i for i, v in enumerate(c) if v != 0), None)
    if piv is None or c2[piv] == 0:
        return None
    lam = f.reduce(c2[piv] * f.inv(c[piv]))
    if all(f.reduce(lam * a) == b for a, b in zip(c, c2)):
        return lam
    return None


def _unipotent_block(B: ExactMatrix) -> ExactMatrix:
    f = B.field
    return BlockElement(B.rows, B.cols, B, (f.one,) * B.cols, f).to_matrix()


def _torus_block(k: int, E, f) -> ExactMatrix:
    return ExactMatrix.diagonal_matrix([f.one] * k + list(E), f)


def twisted_class_member(t, u: ExactMatrix, u2: ExactMatrix) -> ConjugacyVerdict:
    """Decide ``u2 in C_t(u)`` with ``t`` the torus diagonal ``D`` and ``u``, ``u2`` B-coordinates.

    The class is ``{ s (t^-1 v t) u v^-1 s^-1 }`` over torus ``s = diag(1, E)`` and
    unipotent ``v = [[1, C], [0, 1]]``; in coordinates that is
    ``(B + C(D - 1)) E^-1``.  The witness is ``(s, v)`` as full matrices.
    """
    f = u.field
    k, m = u.rows, u.cols
    t = tuple(f(d) for d in t)
    if any(d == 0 for d in t):
        raise NotUnit("torus part must be invertible")
    E, C_cols = [], []
    for j in range(m):
        c, c2 = _column(u, j), _column(u2, j)
        if t[j] == 1:
            lam = _column_ratio(c, c2, f)
            if lam is None:
                return ConjugacyVerdict(False, case_tag_of(t, u))
            E.append(f.inv(lam))
            C_cols.append([f.zero] * k)
        else:
            E.append(f.one)
            s = f.inv(f.reduce(t[j] - 1))
            C_cols.append([f.reduce((b2 - b) * s) for b, b2 in zip(c, c2)])
    C = ExactMatrix(k, m, tuple(tuple(C_cols[j][i] for j in range(m)) for i in range(k)), f)
    s_mat = _torus_block(k, E, f)
    v_mat = _unipotent_block(C)
    t_mat = _torus_block(k, t, f)
    lhs = s_mat @ (inverse_upper(t_mat) @ v_mat @ t_mat) @ _unipotent_block(u) @ inverse_upper(v_mat) @ inverse_upper(s_mat)
    if lhs != _unipotent_block(u2):
        raise WitnessFailure("twisted-class witness does not reassemble")
    return ConjugacyVerdict(True, case_tag_of(t, u), (s_mat, v_mat))


def group_class_key(g: BlockElement) -> tuple:
    """Complete conjugacy invariant of a unit: D, and for each column with ``D_j = 1`` its projective class."""
    f = g.field
    key = [tuple(g.D)]
    for j in range(g.m):
        if g.D[j] != 1:
            key.append(None)
            continue
        c = _column(g.B, j)
        piv = next((i for i, v in enumerate(c) if v != 0), None)
        if piv is None:
            key.append(())
        else:
            s = f.inv(c[piv])
            key.append(tuple(f.reduce(v * s) for v in c))
    return tuple(key)


def group_conjugate(g: BlockElement, h: BlockElement) -> ConjugacyVerdict:
    """Is ``h = x g x^-1`` for some unit ``x``?  The witness is ``(x,)``."""
    if (g.k, g.m, g.field) != (h.k, h.m, h.field):
        raise DifferentGroups("units live in different groups")
    fg = semidirect_factor(g)
    semidirect_factor(h)
    case = fg.case
    if g.D != h.D:
        return ConjugacyVerdict(False, case)
    verdict = twisted_class_member(g.D, g.B, h.B)
    if not verdict.related:
        return ConjugacyVerdict(False, case)
    # t and s are diagonal, so t s (t^-1 v t) u v^-1 s^-1 = (s v) g (s v)^-1
    s_mat, v_mat = verdict.witness
    x = s_mat @ v_mat
    if x @ g.to_matrix() @ inverse_upper(x) != h.to_matrix():
        raise WitnessFailure("conjugator does not conjugate g to h")
    return ConjugacyVerdict(True, case, (BlockElement.from_matrix(x, g.k),))


def p_conjugate(x: BlockElement, y: BlockElement) -> ConjugacyVerdict:
    """``X ~p Y``: equal support sets and conjugate images ``X 1_L``, ``Y 1_L`` in H_{1_L}.

    When related, returns ``(z, w)`` with ``z w = X`` and ``w z = Y``.
    """
    if (x.k, x.m, x.field) != (y.k, y.m, y.field):
        raise DifferentGroups("elements of different monoids")
    L = support_set(x)
    if support_set(y) != L:
        return ConjugacyVerdict(False, NOT_APPLICABLE)
    xh, yh = rho(x), rho(y)
    gx, gy = h_class_iso(L, xh), h_class_iso(L, yh)
    case = semidirect_factor(gx).case
    inner = group_conjugate(gy, gx)  # gx = c gy c^-1
    if not inner.related:
        return ConjugacyVerdict(False, case)
    c = h_class_iso_inverse(L, inner.witness[0], x.m)
    c_inv = canonical_inverse(c)
    z = c @ yh @ meet_idempotent(y)
    w = c_inv @ meet_idempotent(x)
    if z @ w != x or w @ z != y:
        raise WitnessFailure("p-conjugacy witnesses fail zw = X, wz = Y")
    return ConjugacyVerdict(True, case, (z, w))


def o_conjugacy_witness(x: BlockElement, y: BlockElement) -> tuple[BlockElement, BlockElement]:
    """``(Z, W)`` with ``X Z = Z Y`` and ``Y W = W X`` for idempotents ``X``, ``Y``."""
    if (x.k, x.m, x.field) != (y.k, y.m, y.field):
        raise DifferentGroups("elements of different monoids")
    for e in (x, y):
        if not e.is_idempotent():
            raise NotIdempotent("o-conjugacy witnesses are built for idempotents")
    zero = (x.field.zero,) * x.m
    z = BlockElement(x.k, x.m, y.B, zero, x.field)
    w = BlockElement(x.k, x.m, x.B, zero, x.field)
    if x @ z != z @ y or y @ w != w @ x:
        raise WitnessFailure("o-conjugacy witness equations fail")
    return z, w
