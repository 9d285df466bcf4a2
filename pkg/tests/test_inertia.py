import pytest

from hyperchow.boxes import enumerate_box, make_box
from hyperchow.inertia import (
    NotTopDimensional, inertia_components, local_group, quotient_arrangement,
)
from hyperchow.orbring import coarse_series


def fz(*xs):
    return frozenset(i - 1 for i in xs)


def test_identity_quotient(fixture_arrangement):
    A = fixture_arrangement("p122")
    q = quotient_arrangement(A, enumerate_box(A)[0])
    assert q.arrangement is A
    assert q.link == (0, 1, 2, 3)


def test_point_component_p12(fixture_arrangement):
    A = fixture_arrangement("p12")
    q = quotient_arrangement(A, enumerate_box(A)[1])
    assert q.link == ()
    assert q.arrangement.m == 0
    assert coarse_series(q.arrangement) == [1]


def test_p122_quotient(fixture_arrangement):
    A = fixture_arrangement("p122")
    b = make_box(A, (-1, -1), fz(3))
    q = quotient_arrangement(A, b)
    assert (q.group.rank, q.group.torsion) == (1, (2,))
    assert q.link == (0, 1, 3)
    Q = q.arrangement
    # the projections of b1, b2, b4
    assert [q.projection(A.vectors[i]) for i in q.link] == list(Q.vectors)
    assert [Q.group.bar(v) for v in Q.vectors] == [(1,), (-1,), (1,)]
    # b2 = -b4 already in N, while b1 - b4 = (1, 1) is the torsion class
    assert Q.vectors[1] == Q.group.neg(Q.vectors[2])
    diff = Q.group.sub(Q.vectors[0], Q.vectors[2])
    assert Q.group.is_torsion(diff) and diff != Q.group.zero()
    rep = Q.bounded_regions()
    assert len(rep.regions) == 2


def test_inertia_components(fixture_arrangement):
    comps = inertia_components(fixture_arrangement("tp112"))
    assert [age for _, _, age in comps] == [0, 2]
    G = fixture_arrangement("gerbe")
    comps = inertia_components(G)
    assert [age for _, _, age in comps] == [0, 0]
    assert all(q.arrangement.same_data(G) for _, q, _ in comps)
    for n in range(2, 7):
        assert len(inertia_components(fixture_arrangement(f"crepant{n}"))) == 1


def test_local_group(fixture_arrangement):
    T = fixture_arrangement("tp112")
    g = local_group(T, fz(1, 3))
    assert (g.rank, g.torsion) == (0, (2,))
    assert local_group(T, fz(1, 2)).ngens == 0
    G = fixture_arrangement("gerbe")
    g = local_group(G, fz(1))
    assert (g.rank, g.torsion) == (0, (2,))
    with pytest.raises(NotTopDimensional):
        local_group(T, fz(1))


def test_local_group_order_matches_box_count(fixture_arrangement):
    # boxes of faces of a top cone, together with the identity, list the local group
    for name in ("p12", "tp112", "p122", "aprime"):
        A = fixture_arrangement(name)
        boxes = enumerate_box(A)
        for top in A.fan.top_cones:
            inside = [b for b in boxes if b.sigma <= top]
            assert len(inside) == local_group(A, top).torsion_order
