"""Quotient arrangements, inertia components and 3-twisted sectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .arrangement import StackyArrangement
from .boxes import BoxElement, enumerate_box, make_box, sum_coefficients, third_box
from .linalg import solve
from .zlattice import FgAbGroup, GroupHom, cokernel, hom_from_columns, solve_integer, as_matrix


class NotTopDimensional(ValueError):
    pass


@dataclass(frozen=True)
class QuotientArrangement:
    box: BoxElement
    group: FgAbGroup
    projection: GroupHom  # N -> N(sigma)
    link: tuple[int, ...]  # original indices, increasing
    arrangement: StackyArrangement


@dataclass(frozen=True)
class SectorTriple:
    boxes: tuple[BoxElement, BoxElement, BoxElement]
    sigma: frozenset
    coefficients: tuple[tuple[int, int], ...]  # sorted (i, a_i)
    I: frozenset
    J: frozenset

    @property
    def a(self) -> dict[int, int]:
        return dict(self.coefficients)


def _restricted_lift(A: StackyArrangement, sigma, link) -> tuple[int, ...]:
    """Offsets of the induced arrangement on the flat cut out by sigma."""
    idx = sorted(sigma)
    if not idx:
        return tuple(A.lift[i] for i in link)
    rows = as_matrix([A.bbar[i] for i in idx])
    rhs = [-A.lift[i] for i in idx]
    e = solve_integer(rows, rhs, A.d)
    if e is None:
        cols = [[A.bbar[i][k] for i in idx] for k in range(A.d)]
        e = solve(cols, rhs)
    shifted = [A.lift[i] + sum(Fraction(x) * y for x, y in zip(e, A.bbar[i])) for i in link]
    scale = 1
    for x in shifted:
        scale = lcm(scale, Fraction(x).denominator)
    return tuple(int(x * scale) for x in shifted)


def quotient_arrangement(A: StackyArrangement, box: BoxElement) -> QuotientArrangement:
    sigma = box.sigma
    make_box(A, box.v, sigma)  # raises NotABox
    if not sigma:
        ident = GroupHom(A.group, A.group, tuple(
            tuple(int(i == j) for j in range(A.group.ngens)) for i in range(A.group.ngens)))
        return QuotientArrangement(box, A.group, ident, tuple(range(A.m)), A)
    idx = sorted(sigma)
    sub = hom_from_columns(len(idx), A.group, [A.vectors[i] for i in idx])
    Nq, proj = cokernel(sub)
    link = tuple(sorted(A.fan.link(sigma)))
    vecs = [proj(A.vectors[i]) for i in link]
    psi = _restricted_lift(A, sigma, link)
    Q = StackyArrangement(Nq, tuple(vecs), psi, A.sign, A.check, A.require_spanning)
    return QuotientArrangement(box, Nq, proj, link, Q)


def inertia_components(A: StackyArrangement) -> list[tuple[BoxElement, QuotientArrangement, int]]:
    return [(b, quotient_arrangement(A, b), b.age) for b in enumerate_box(A)]


def local_group(A: StackyArrangement, sigma) -> FgAbGroup:
    sigma = frozenset(sigma)
    if len(sigma) != A.d or not A.fan.is_cone(sigma):
        raise NotTopDimensional(f"{sorted(i + 1 for i in sigma)} is not a top-dimensional cone")
    idx = sorted(sigma)
    return cokernel(hom_from_columns(len(idx), A.group, [A.vectors[i] for i in idx]))[0]


def sector_triple(A: StackyArrangement, b1: BoxElement, b2: BoxElement,
                  b3: Optional[BoxElement] = None) -> SectorTriple:
    if b3 is None:
        b3 = third_box(A, b1, b2)
    s = b1.sigma | b2.sigma | b3.sigma
    coeffs = sum_coefficients(A, (b1, b2, b3), s)
    a = {}
    for i, x in coeffs.items():
        if x.denominator != 1 or x not in (1, 2):
            raise ArithmeticError(f"coefficient {x} at ray {i + 1} is not 1 or 2")
        a[i] = int(x)
    I = frozenset(i for i in s if a[i] == 1 and all(i in b.sigma for b in (b1, b2, b3)))
    J = frozenset(i for i in s if i not in b3.sigma)
    return SectorTriple((b1, b2, b3), s, tuple(sorted(a.items())), I, J)


def three_twisted_sectors(A: StackyArrangement) -> list[SectorTriple]:
    """All ordered triples summing to zero, indexed by their first two boxes."""
    boxes = enumerate_box(A)
    out = []
    for b1 in boxes:
        for b2 in boxes:
            if A.fan.is_cone(b1.sigma | b2.sigma):
                out.append(sector_triple(A, b1, b2))
    return out


def obstruction_euler_data(t: SectorTriple) -> tuple[frozenset, frozenset]:
    if any(not b.sigma for b in t.boxes):
        return frozenset(), frozenset()
    return frozenset(i for i, x in t.coefficients if x == 2), t.I
