from fractions import Fraction

import pytest

from hyperchow.arrangement import StackyArrangement
from hyperchow.lawrence import (
    NonGeneric, NotPaired, format_quadric, hypertoric_ideal, lawrence_fan, lawrence_lift,
    project_cone, same_lattice, same_quadric_ideal,
)
from hyperchow.zlattice import FgAbGroup, free_group


def test_lawrence_lift_p12():
    L = lawrence_lift(free_group(1), [(1,), (-2,)])
    assert L.group == free_group(3)
    assert L.vectors == ((1, 1, 0), (-2, 0, 1), (0, 1, 0), (0, 0, 1))


def test_lawrence_lift_single_vector():
    L = lawrence_lift(free_group(1), [(1,)])
    assert L.group == free_group(2)
    assert L.vectors == ((1, 1), (0, 1))


def test_lawrence_lift_gerbe():
    L = lawrence_lift(FgAbGroup(1, (2,)), [(1, 0), (-1, 1), (1, 0)])
    assert (L.group.rank, L.group.torsion) == (4, (2,))


def test_lawrence_fan_p12(fixture_arrangement):
    A = fixture_arrangement("p12")
    LF = lawrence_fan(A)
    assert LF.cobases == ((0,), (1,))
    assert LF.lambdas == ((Fraction(1, 2),), (Fraction(1),))
    assert LF.irrelevant == (("z1",), ("z2",))
    assert lawrence_fan(A.with_sign(-1)).irrelevant == (("w1",), ("w2",))


def test_lawrence_fan_rejects_nongeneric():
    A = StackyArrangement(free_group(1), ((1,), (-2,)), (0, 0), sign=1, check=False)
    with pytest.raises(NonGeneric):
        lawrence_fan(A)


def test_project_cone():
    cone = frozenset({1, 2, 3})  # complement of z1
    assert project_cone(cone, 2) == frozenset({1})
    assert project_cone(frozenset(), 2) == frozenset()
    with pytest.raises(NotPaired):
        project_cone({5}, 2)


@pytest.mark.parametrize("name", ["p12", "gerbe", "p122", "tp112", "aprime", "crepant3", "crepant5"])
def test_projected_cones_lie_in_multifan(fixture_arrangement, name):
    A = fixture_arrangement(name)
    for cone in lawrence_fan(A).maximal_cones:
        assert A.fan.is_cone(project_cone(cone, A.m))


def test_tp112_projections_cover_only_fan_cones(fixture_arrangement):
    A = fixture_arrangement("tp112")
    cones = set(A.fan.cones)
    assert len(cones) == 7
    assert {project_cone(c, A.m) for c in lawrence_fan(A).maximal_cones} <= cones


def test_hypertoric_ideal_crepant3(fixture_arrangement):
    ideal = hypertoric_ideal(fixture_arrangement("crepant3"))
    assert same_lattice(ideal, [(1, 1, 0), (1, 0, -1)])


@pytest.mark.parametrize("n", range(3, 7))
def test_hypertoric_ideal_crepant(fixture_arrangement, n):
    A = fixture_arrangement(f"crepant{n}")
    want = [(1, 1) + (0,) * (n - 2)] + [
        (1,) + tuple(-int(j == i) for j in range(1, n)) for i in range(2, n)]
    assert same_lattice(hypertoric_ideal(A), want)


def test_hypertoric_ideal_relations_gerbe(fixture_arrangement):
    A = fixture_arrangement("gerbe")
    for row in hypertoric_ideal(A):
        assert A.group.combination(list(row), A.vectors) == A.group.zero()


def test_hypertoric_ideal_empty_for_square_case():
    A = StackyArrangement(free_group(1), ((1,),), (0,), check=False)
    assert hypertoric_ideal(A) == []


def test_ideal_comparisons():
    assert same_quadric_ideal([(1, 0, 1), (2, 2, 0)], [(1, 0, 1), (0, 1, -1)])
    assert not same_quadric_ideal([(1, 0, -1)], [(1, 0, 1)])
    assert same_lattice([(1, 0, -1), (0, 1, 1)], [(1, 1, 0), (1, 0, -1)])
    assert not same_lattice([(2, 0)], [(1, 0)])


def test_format_quadric():
    assert format_quadric((1, 0, 1)) == "z1*w1 + z3*w3"
    assert format_quadric((2, 2, 0)) == "2*z1*w1 + 2*z2*w2"
    assert format_quadric((0, -1)) == "-z2*w2"
