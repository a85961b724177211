import itertools
import random
from fractions import Fraction

import pytest

from incmon.errors import DimensionMismatch, NotInHClass, WrongContext
from incmon.exact import GF, QQ, ExactMatrix, IndexSet, inverse_upper
from incmon.green import (
    RELATIONS,
    BlockElement,
    canonical_inverse,
    count_h_class_types,
    cross_section_lattice,
    green_related,
    h_class_iso,
    h_class_iso_inverse,
    h_class_order,
    in_h_class,
    is_inverse,
    meet_idempotent,
    rho,
    rho_inverse,
    support_set,
)
from incmon.incidence import contains, maximal_antichain_monoid
from incmon.oracle import green_data, materialize


def blocks(S, k):
    return [BlockElement.from_matrix(x, k) for x in S.elements]


def rand_block(rng, k, m, zero_prob=0.3):
    B = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m)] for _ in range(k)]
    D = [0 if rng.random() < zero_prob else Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3)) for _ in range(m)]
    return BlockElement.make(k, m, B, D)


def test_block_round_trip_and_product():
    rng = random.Random(0)
    for _ in range(100):
        x, y = rand_block(rng, 2, 3), rand_block(rng, 2, 3)
        assert BlockElement.from_matrix(x.to_matrix(), 2) == x
        assert (x @ y).to_matrix() == x.to_matrix() @ y.to_matrix()
        assert contains(maximal_antichain_monoid(2, 3), x.to_matrix())


def test_block_errors():
    with pytest.raises(WrongContext):
        BlockElement.from_matrix(ExactMatrix.from_rows([[2, 0], [0, 1]]), 1)
    with pytest.raises(DimensionMismatch):
        BlockElement.make(1, 2, [[1]], [1, 1])
    with pytest.raises(WrongContext):
        BlockElement.diagonal_idempotent(2, 1, IndexSet.of(3, [1, 3]))


def test_canonical_inverse_examples():
    x = BlockElement.make(1, 1, [[3]], [2])
    assert canonical_inverse(x).to_matrix() == ExactMatrix.from_rows([[1, Fraction(-3, 2)], [0, Fraction(1, 2)]])
    x = BlockElement.make(1, 2, [[4, 7]], [0, 9])
    assert meet_idempotent(x).to_matrix() == ExactMatrix.from_rows([[1, 4, 0], [0, 0, 0], [0, 0, 1]])
    assert support_set(x) == IndexSet.of(3, [1, 3])


def test_canonical_inverse_is_inverse_rational():
    rng = random.Random(1)
    for _ in range(300):
        x = rand_block(rng, rng.randint(1, 3), rng.randint(1, 3))
        xi = canonical_inverse(x)
        assert is_inverse(x, xi)
        assert x @ xi @ x == x and xi @ x @ xi == xi
        e = meet_idempotent(x)
        assert e == x @ xi and e.is_idempotent()


def test_h_group_inverse_lives_in_same_h_class():
    # inverse of X inside its H-class group is X^-1 in the canonical sense
    S = materialize(maximal_antichain_monoid(1, 2), 3)
    g = green_data(S)
    for i, x in enumerate(blocks(S, 1)):
        xi = canonical_inverse(x)
        j = S.index(xi.to_matrix())
        assert g.related(i, j, "R")
        assert g.related(j, S.index((xi @ x).to_matrix()), "R")


ORACLE_CASES = [(1, 1, 2), (1, 2, 2), (2, 1, 2), (2, 2, 2), (1, 1, 3), (1, 2, 3), (2, 1, 3), (2, 2, 3)]


@pytest.mark.parametrize("k, m, q", ORACLE_CASES, ids=[f"{k}{m}_gf{q}" for k, m, q in ORACLE_CASES])
def test_green_related_matches_oracle(k, m, q):
    S = materialize(maximal_antichain_monoid(k, m), q)
    g = green_data(S)
    els = blocks(S, k)
    checked = 0
    for rel in RELATIONS:
        for a, b in itertools.product(range(S.size), repeat=2):
            assert green_related(els[a], els[b], rel) == g.related(a, b, rel), (rel, a, b)
            checked += 1
    assert checked == 5 * S.size**2


def test_unknown_relation():
    x = BlockElement.identity(1, 1)
    with pytest.raises(ValueError):
        green_related(x, x, "X")


def test_j_equals_d_and_r():
    S = materialize(maximal_antichain_monoid(2, 2), 2)
    g = green_data(S)
    assert len(g.classes("J")) == len(g.classes("R")) == 4


@pytest.mark.parametrize("m", range(1, 6))
def test_lattice_is_boolean(m):
    lat = cross_section_lattice(2, m)
    assert len(lat.elements) == 2**m
    subsets = {lat.to_subset(J) for J in lat.elements}
    assert len(subsets) == 2**m
    for a, b in itertools.product(lat.elements, repeat=2):
        sa, sb = lat.to_subset(a), lat.to_subset(b)
        assert lat.from_subset(sa) == a
        assert (set(a) <= set(b)) == (sa <= sb)
        assert lat.to_subset(lat.meet(a, b)) == sa & sb
        assert lat.to_subset(lat.join(a, b)) == sa | sb
    assert lat.to_subset(lat.bottom) == frozenset()
    assert lat.to_subset(lat.top) == frozenset(range(1, m + 1))
    assert len(lat.covers()) == m * 2 ** (m - 1)


def test_lattice_order_matches_j_order():
    S = materialize(maximal_antichain_monoid(1, 2), 3)
    lat = cross_section_lattice(1, 2)
    for a, b in itertools.product(lat.elements, repeat=2):
        ea, eb = lat.idempotent(a, GF(3)), lat.idempotent(b, GF(3))
        # ea <=_J eb iff ea in S eb S
        ia, ib = S.index(ea.to_matrix()), S.index(eb.to_matrix())
        ideal = {S.mul(S.mul(s, ib), t) for s in range(S.size) for t in range(S.size)}
        assert (ia in ideal) == (set(a) <= set(b))


@pytest.mark.parametrize("k, m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_each_j_class_has_one_lattice_idempotent(k, m):
    S = materialize(maximal_antichain_monoid(k, m), 3)
    g = green_data(S)
    lat = cross_section_lattice(k, m)
    hits = [int(g.ids["J"][S.index(lat.idempotent(J, GF(3)).to_matrix())]) for J in lat.elements]
    assert sorted(hits) == sorted(set(hits))
    assert len(hits) == len(g.classes("J"))


def test_lattice_dot():
    dot = cross_section_lattice(1, 2).to_dot()
    assert "rankdir=BT" in dot and '"100" -> "110"' in dot and '"101" -> "111"' in dot
    with pytest.raises(ValueError):
        cross_section_lattice(0, 2)


@pytest.mark.parametrize("members, order", [((1,), 1), ((1, 2), 6), ((1, 3), 6), ((1, 2, 3), 36)])
def test_h_class_orders_gf3(members, order):
    J = IndexSet.of(3, members)
    assert h_class_order(1, 2, J, 3) == order
    S = materialize(maximal_antichain_monoid(1, 2), 3)
    g = green_data(S)
    e = S.index(BlockElement.diagonal_idempotent(1, 2, J, GF(3)).to_matrix())
    cls = [i for i in range(S.size) if g.ids["H"][i] == g.ids["H"][e]]
    assert len(cls) == order
    assert all(in_h_class(J, b) for b in (BlockElement.from_matrix(S.element(i), 1) for i in cls))


def test_h_class_types():
    sizes = {h_class_order(1, 2, IndexSet.of(3, [1] + extra), 3) for extra in ([], [2], [2, 3])}
    assert sizes == {1, 6, 36} and count_h_class_types(1, 2) == 3


def test_psi_is_an_isomorphism_gf3():
    S = materialize(maximal_antichain_monoid(2, 2), 3)
    els = blocks(S, 2)
    for members in ([1, 2], [1, 2, 3], [1, 2, 4], [1, 2, 3, 4]):
        J = IndexSet.of(4, members)
        H = [x for x in els if in_h_class(J, x)]
        assert len(H) == h_class_order(2, 2, J, 3)
        images = [h_class_iso(J, x) for x in H]
        assert len(set(images)) == len(H) and all(y.is_unit() for y in images)
        for x, y in zip(H, images):
            assert h_class_iso_inverse(J, y, 2) == x
        rng = random.Random(len(members))
        for x, y in (rng.choices(list(zip(H, images)), k=2) for _ in range(100)):
            assert in_h_class(J, x[0] @ y[0])
            assert h_class_iso(J, x[0] @ y[0]) == x[1] @ y[1]


def test_psi_errors():
    J = IndexSet.of(3, [1, 2])
    with pytest.raises(NotInHClass):
        h_class_iso(J, BlockElement.make(1, 2, [[0, 1]], [1, 0]))
    with pytest.raises(NotInHClass):
        h_class_iso_inverse(J, BlockElement.make(1, 1, [[0]], [0]), 2)


def test_rho_bijection_onto_group():
    S = materialize(maximal_antichain_monoid(1, 2), 3)
    g = green_data(S)
    els = blocks(S, 1)
    for i, x0 in enumerate(els):
        L = support_set(x0)
        Hx = [j for j in range(S.size) if g.ids["H"][j] == g.ids["H"][i]]
        imgs = [rho(els[j]) for j in Hx]
        assert all(in_h_class(L, y) for y in imgs)
        assert len(set(imgs)) == len(Hx) == h_class_order(1, 2, L, 3)
        for j, y in zip(Hx, imgs):
            assert rho_inverse(y, x0) == els[j]


def test_rho_on_rationals():
    rng = random.Random(5)
    for _ in range(100):
        x = rand_block(rng, 2, 3)
        y = rand_block(rng, 2, 3)
        if support_set(x) != support_set(y):
            continue
        assert in_h_class(support_set(x), rho(x))
        assert rho_inverse(rho(x), x) == x


def test_identity_over_field():
    e = BlockElement.identity(1, 2, GF(5))
    assert e.is_unit() and e.is_idempotent() and e.field == GF(5)
    assert BlockElement.identity(1, 1).field == QQ


def test_green_examples():
    f = GF(3)
    x = BlockElement.make(1, 1, [[1]], [0], f)
    y = BlockElement.make(1, 1, [[2]], [0], f)
    assert green_related(x, y, "J") and not green_related(x, y, "H")
    z = BlockElement.make(1, 2, [[1, 1]], [0, 5])
    assert support_set(z) == IndexSet.of(3, [1, 3])
    assert green_related(z, meet_idempotent(z), "H")
    assert not green_related(z, BlockElement.make(1, 2, [[1, 1]], [5, 0]), "J")
    assert support_set(BlockElement.identity(2, 2)) == IndexSet.full(4)
    assert support_set(BlockElement.make(2, 1, [[1], [2]], [0])) == IndexSet.of(3, [1, 2])


def test_canonical_inverse_fixed_points():
    e = BlockElement.make(2, 2, [[3, 0], [1, 0]], [0, 1])
    assert canonical_inverse(e) == e and meet_idempotent(e) == e
    g = BlockElement.make(2, 2, [[3, 5], [1, 2]], [7, 1])
    assert canonical_inverse(g).to_matrix() == inverse_upper(g.to_matrix())
    assert meet_idempotent(g) == BlockElement.identity(2, 2)
    assert canonical_inverse(canonical_inverse(g)) == g


def test_is_inverse_matches_defining_equations_gf3():
    S = materialize(maximal_antichain_monoid(1, 1), 3)
    els = blocks(S, 1)
    for x, y in itertools.product(els, repeat=2):
        assert is_inverse(x, y) == (x @ y @ x == x and y @ x @ y == y)
        # V(X) = {[[1, B' - B D'], [0, D']] : B' 1~_L = 0, D D' = 1~_L}
        if x.D[0] != 0:
            param = (y.D[0] * x.D[0]) % 3 == 1 and y.B.entries[0][0] == (-x.B.entries[0][0] * y.D[0]) % 3
        else:
            param = y.D[0] == 0
        assert is_inverse(x, y) == param


def test_h_class_of_idempotent_is_group_gf3():
    S = materialize(maximal_antichain_monoid(2, 1), 3)
    els = blocks(S, 2)
    for members in ([1, 2], [1, 2, 3]):
        J = IndexSet.of(3, members)
        one = BlockElement.diagonal_idempotent(2, 1, J, GF(3))
        H = [x for x in els if in_h_class(J, x)]
        assert one in H
        for x in H:
            assert one @ x == x == x @ one
            assert in_h_class(J, canonical_inverse(x))
            assert x @ canonical_inverse(x) == one
            for y in H:
                assert in_h_class(J, x @ y)


def test_rho_is_multiplicative_on_h_groups():
    S = materialize(maximal_antichain_monoid(1, 2), 3)
    g = green_data(S)
    els = blocks(S, 1)
    for cls in g.classes("H"):
        Hx = [els[int(j)] for j in cls]
        e = meet_idempotent(Hx[0])
        assert e in Hx
        for a, b in itertools.product(Hx, repeat=2):
            assert a @ b in Hx
            assert rho(a @ b) == rho(a) @ rho(b)


def test_psi_rational_pairs():
    rng = random.Random(9)
    J = IndexSet.of(5, [1, 2, 4])
    for _ in range(50):
        def h():
            B = [[0, Fraction(rng.randint(-4, 4), rng.randint(1, 3)), 0] for _ in range(2)]
            return BlockElement.make(2, 3, B, [0, rng.choice([1, -2, Fraction(1, 3)]), 0])

        x, y = h(), h()
        assert h_class_iso(J, x @ y) == h_class_iso(J, x) @ h_class_iso(J, y)
    assert h_class_iso(IndexSet.full(3), BlockElement.make(1, 2, [[1, 2]], [3, 4])) == BlockElement.make(1, 2, [[1, 2]], [3, 4])
