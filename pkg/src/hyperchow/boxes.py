"""Box elements and the ceiling calculus.

A box element is a pair ``(v, sigma)`` with ``v`` in N and
``vbar = sum_{i in sigma} alpha_i bbar_i`` where every ``alpha_i`` lies
strictly between 0 and 1. Pairs with ``sigma`` empty are the torsion
elements of N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor
from typing import Iterable, Mapping

from .arrangement import StackyArrangement
from .linalg import solve
from .multifan import NotACone, NotInCone
from .zlattice import GroupElement, smith_normal_form


class NotRepresentable(ValueError):
    pass


class NotABox(ValueError):
    pass


@dataclass(frozen=True)
class BoxElement:
    v: GroupElement
    sigma: frozenset
    alphas: tuple[tuple[int, Fraction], ...]  # sorted (index, alpha)

    @property
    def age(self) -> int:
        return len(self.sigma)

    @property
    def alpha(self) -> dict[int, Fraction]:
        return dict(self.alphas)

    def is_identity(self) -> bool:
        return not self.sigma and not any(self.v)

    def key(self):
        return (len(self.sigma), sorted(self.sigma), self.v)

    def label(self) -> str:
        return f"({list(self.v)}, {sorted(i + 1 for i in self.sigma)})"


@dataclass(frozen=True)
class FanElement:
    c: GroupElement
    sigma: frozenset
    box: BoxElement
    mults: tuple[tuple[int, int], ...]  # sorted (index, m_i)

    @property
    def degree(self) -> int:
        return len(self.box.sigma) + sum(k for _, k in self.mults)


def _combo(A: StackyArrangement, coeffs: Mapping[int, int]) -> GroupElement:
    items = sorted(coeffs.items())
    return A.group.combination([k for _, k in items], [A.vectors[i] for i, _ in items])


def _unimodular_inverse(U) -> list[list[int]]:
    n = len(U)
    cols = [[U[i][j] for i in range(n)] for j in range(n)]
    inv_cols = []
    for k in range(n):
        e = [int(i == k) for i in range(n)]
        x = solve(cols, e)
        inv_cols.append([int(t) for t in x])
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


def parallelepiped_points(bbar, sigma: Iterable[int], d: int) -> list[tuple[int, ...]]:
    """Lattice points ``sum alpha_i bbar_i`` with all ``0 < alpha_i < 1``."""
    idx = sorted(sigma)
    if not idx:
        return []
    cols = [bbar[i] for i in idx]
    B = [[c[r] for c in cols] for r in range(d)]
    U, D, _ = smith_normal_form(B)
    Uinv = _unimodular_inverse(U)
    k = len(idx)
    diag = [D[j][j] for j in range(k)]
    points = set()
    for y in product(*(range(n) for n in diag)):
        x = [sum(Uinv[r][j] * y[j] for j in range(k)) for r in range(d)]
        lam = solve(cols, x)
        frac = [t - floor(t) for t in lam]
        if all(f > 0 for f in frac):
            p = tuple(int(sum(f * c[r] for f, c in zip(frac, cols))) for r in range(d))
            points.add(p)
    return sorted(points)


def enumerate_box(A: StackyArrangement) -> list[BoxElement]:
    """All box elements, identity first, then by cone and ``v``."""
    cached = A.__dict__.get("_boxes")
    if cached is None:
        cached = tuple(_enumerate_box(A))
        A.__dict__["_boxes"] = cached
    return list(cached)


def _enumerate_box(A: StackyArrangement) -> list[BoxElement]:
    N = A.group
    out = [BoxElement(t, frozenset(), ()) for t in N.torsion_elements()]
    fan = A.fan
    for sigma in fan.cones:
        if not sigma:
            continue
        for p in parallelepiped_points(A.bbar, sigma, A.d):
            lam = fan.coefficients(sigma, p)
            alphas = tuple(sorted(lam.items()))
            for t in N.torsion_elements():
                v = N.normalize(p + t[A.d:])
                out.append(BoxElement(v, sigma, alphas))
    out.sort(key=BoxElement.key)
    return out


def make_box(A: StackyArrangement, v: GroupElement, sigma: Iterable[int]) -> BoxElement:
    sigma = frozenset(sigma)
    v = A.group.normalize(v)
    try:
        lam = A.fan.coefficients(sigma, A.group.bar(v))
    except (NotACone, NotInCone) as exc:
        raise NotABox(str(exc)) from exc
    if any(not (0 < x < 1) for x in lam.values()):
        raise NotABox(f"{list(v)} is not strictly inside the box of {sorted(sigma)}")
    return BoxElement(v, sigma, tuple(sorted(lam.items())))


def fractional_part(A: StackyArrangement, c: GroupElement, sigma: Iterable[int]) -> FanElement:
    sigma = frozenset(sigma)
    c = A.group.normalize(c)
    try:
        lam = A.fan.coefficients(sigma, A.group.bar(c))
    except (NotACone, NotInCone) as exc:
        raise NotRepresentable(str(exc)) from exc
    if any(x < 0 for x in lam.values()):
        raise NotRepresentable(f"{list(c)} has a negative coefficient over {sorted(sigma)}")
    mults = {i: floor(x) for i, x in lam.items()}
    alphas = tuple((i, x - mults[i]) for i, x in sorted(lam.items()) if x != mults[i])
    tau = frozenset(i for i, _ in alphas)
    v = A.group.sub(c, _combo(A, mults))
    return FanElement(c, sigma, BoxElement(v, tau, alphas), tuple(sorted(mults.items())))


def ceiling(A: StackyArrangement, c: GroupElement, sigma: Iterable[int]) -> GroupElement:
    fe = fractional_part(A, c, sigma)
    coeffs = dict(fe.mults)
    for i in fe.box.sigma:
        coeffs[i] += 1
    return _combo(A, coeffs)


def degree(A: StackyArrangement, c: GroupElement, sigma: Iterable[int]) -> int:
    return fractional_part(A, c, sigma).degree


def epsilon(A: StackyArrangement, c1, sigma1, c2, sigma2) -> tuple[GroupElement, frozenset]:
    s1, s2 = frozenset(sigma1), frozenset(sigma2)
    s = s1 | s2
    if not A.fan.is_cone(s):
        raise NotACone(f"{sorted(s)} is not a cone")
    N = A.group
    eps = N.sub(N.add(ceiling(A, c1, s1), ceiling(A, c2, s2)), ceiling(A, N.add(c1, c2), s))
    return eps, A.fan.minimal_face_containing(s, N.bar(eps))


def box_inverse(A: StackyArrangement, box: BoxElement) -> BoxElement:
    v = A.group.sub(_combo(A, {i: 1 for i in box.sigma}), box.v)
    return BoxElement(v, box.sigma, tuple((i, 1 - a) for i, a in box.alphas))


def third_box(A: StackyArrangement, b1: BoxElement, b2: BoxElement) -> BoxElement:
    s = b1.sigma | b2.sigma
    if not A.fan.is_cone(s):
        raise NotACone(f"{sorted(s)} is not a cone")
    N = A.group
    w = N.add(b1.v, b2.v)
    v3 = N.sub(ceiling(A, w, s), w)
    lam = A.fan.coefficients(s, N.bar(v3))
    alphas = tuple((i, x) for i, x in sorted(lam.items()) if x != 0)
    return BoxElement(v3, frozenset(i for i, _ in alphas), alphas)


def sum_coefficients(A: StackyArrangement, boxes: Iterable[BoxElement], sigma) -> dict[int, Fraction]:
    """Coefficients of ``sum vbar`` over the rays of ``sigma``."""
    N = A.group
    total = N.zero()
    for b in boxes:
        total = N.add(total, b.v)
    return A.fan.coefficients(sigma, N.bar(total))
