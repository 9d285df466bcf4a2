import pytest

from hyperchow.multifan import MultiFan, NotACone, NotInCone


def fz(*xs):
    return frozenset(i - 1 for i in xs)


P12 = MultiFan(((1,), (-2,)), 1)
TP112 = MultiFan(((1, 0), (0, 1), (-1, -2)), 2)
P122 = MultiFan(((1, 0), (0, 1), (-2, -2), (0, -1)), 2)


def test_is_cone():
    assert TP112.is_cone(fz(1, 2))
    assert not TP112.is_cone(fz(1, 2, 3))
    assert not P12.is_cone(fz(1, 2))


def test_cones_p12():
    assert P12.cones == (frozenset(), fz(1), fz(2))
    assert P12.top_cones == (fz(1), fz(2))


def test_cones_tp112():
    assert len(TP112.cones) == 7
    assert TP112.top_cones == (fz(1, 2), fz(1, 3), fz(2, 3))


def test_top_cones_p122():
    assert set(P122.top_cones) == {fz(1, 2), fz(1, 3), fz(1, 4), fz(2, 3), fz(3, 4)}


def test_link():
    assert P122.link(fz(3)) == fz(1, 2, 4)
    assert P12.link(fz(2)) == frozenset()
    assert P12.link(frozenset()) == fz(1, 2)


def test_minimal_face_containing():
    assert P12.minimal_face_containing(fz(2), (0,)) == frozenset()
    assert P12.minimal_face_containing(fz(2), (-2,)) == fz(2)
    assert TP112.minimal_face_containing(fz(1, 3), (0, -2)) == fz(1, 3)
    with pytest.raises(NotInCone):
        P12.minimal_face_containing(fz(2), (1,))
    with pytest.raises(NotACone):
        P12.minimal_face_containing(fz(1, 2), (0,))


def test_coefficients():
    lam = TP112.coefficients(fz(1, 3), (0, -1))
    assert lam == {0: 0.5, 2: 0.5}


def test_circuits_and_obstructions():
    assert P12.circuits == (fz(1, 2),)
    assert TP112.circuits == (fz(1, 2, 3),)
    assert set(P122.circuits) == {fz(2, 4), fz(1, 2, 3), fz(1, 3, 4)}
    assert set(P122.minimal_obstructions(frozenset())) == set(P122.circuits)
    # over sigma = {3}: minimal S with S + {3} dependent
    assert set(P122.minimal_obstructions(fz(3))) == {fz(1, 2), fz(1, 4), fz(2, 4)}
    assert P12.minimal_obstructions(fz(2)) == (fz(1),)


def test_matroid_axioms():
    cones = set(TP112.cones) | set(P122.cones)
    for fan in (TP112, P122):
        cs = set(fan.cones)
        for c in cs:
            for i in c:
                assert c - {i} in cs  # closed under subsets
        for a in cs:
            for b in cs:
                if len(a) > len(b):
                    assert any(b | {x} in cs for x in a - b)  # exchange
    assert cones
