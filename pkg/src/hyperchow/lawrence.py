"""Lawrence lifting, the Lawrence fan and the hypertoric ideal.

Rays of the Lawrence fan are numbered ``0..m-1`` for ``(b_i, e_i)`` and
``m..2m-1`` for ``(0, e_i)``. Variables ``z_i`` and ``w_i`` belong to these
two families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .arrangement import StackyArrangement
from .linalg import rank, solve
from .zlattice import FgAbGroup, GroupElement, hermite_normal_form


class NonGeneric(ValueError):
    pass


class NotPaired(ValueError):
    pass


@dataclass(frozen=True)
class LawrenceLift:
    group: FgAbGroup
    vectors: tuple[GroupElement, ...]  # (b_i, e_i) then (0, e_i)


@dataclass(frozen=True)
class LawrenceFan:
    lift: LawrenceLift
    cobases: tuple[tuple[int, ...], ...]
    lambdas: tuple[tuple[Fraction, ...], ...]
    maximal_cones: tuple[frozenset, ...]
    irrelevant: tuple[tuple[str, ...], ...]  # variables of each monomial


def lawrence_lift(group: FgAbGroup, vectors) -> LawrenceLift:
    """``beta + id`` into ``N + Z^m``; coordinates are (free N, Z^m, torsion)."""
    m = len(vectors)
    NL = FgAbGroup(group.rank + m, group.torsion)
    d = group.rank
    out = []
    for i, b in enumerate(vectors):
        e = tuple(int(i == j) for j in range(m))
        out.append(NL.normalize(tuple(b[:d]) + e + tuple(b[d:])))
    for i in range(m):
        e = tuple(int(i == j) for j in range(m))
        out.append(NL.normalize((0,) * d + e + (0,) * len(group.torsion)))
    return LawrenceLift(NL, tuple(out))


def lawrence_fan(A: StackyArrangement) -> LawrenceFan:
    m, r = A.m, A.dg.rank
    cols = [A.dg.bar(c) for c in A.beta_dual.columns()]
    theta = A.dg.bar(A.theta)
    cobases, lambdas, cones, monos = [], [], [], []
    for C in combinations(range(m), r):
        sub = [cols[i] for i in C]
        if rank(sub) < r:
            continue
        lam = solve(sub, theta)
        if lam is None or any(x == 0 for x in lam):
            raise NonGeneric(f"cobasis {[i + 1 for i in C]} gives a zero coefficient")
        chosen = {i if x > 0 else m + i for i, x in zip(C, lam)}
        cobases.append(C)
        lambdas.append(tuple(lam))
        cones.append(frozenset(range(2 * m)) - chosen)
        monos.append(tuple(f"z{i + 1}" if x > 0 else f"w{i + 1}" for i, x in zip(C, lam)))
    return LawrenceFan(lawrence_lift(A.group, A.vectors), tuple(cobases), tuple(lambdas),
                       tuple(cones), tuple(monos))


def project_cone(cone: Iterable[int], m: int) -> frozenset:
    """Indices ``i`` whose two Lawrence rays ``i`` and ``m + i`` both lie in the cone."""
    cone = frozenset(cone)
    if any(k < 0 or k >= 2 * m for k in cone):
        raise NotPaired(f"ray index out of range for m = {m}")
    return frozenset(i for i in range(m) if i in cone and m + i in cone)


def hypertoric_ideal(A: StackyArrangement) -> list[tuple[int, ...]]:
    """Coefficient vectors ``c`` of the quadrics ``sum_i c_i z_i w_i``.

    One generator per free coordinate of the Gale dual group.
    """
    r = A.dg.rank
    return [tuple(row) for row in A.beta_dual.matrix[:r]]


def same_quadric_ideal(gens1, gens2) -> bool:
    """Whether two families of ``z_i w_i`` quadrics span the same Q-space."""
    g1 = [list(g) for g in gens1 if any(g)]
    g2 = [list(g) for g in gens2 if any(g)]
    r1 = rank(g1) if g1 else 0
    r2 = rank(g2) if g2 else 0
    return r1 == r2 and (rank(g1 + g2) if g1 + g2 else 0) == r1


def same_lattice(gens1, gens2) -> bool:
    return hermite_normal_form(gens1) == hermite_normal_form(gens2)


def format_quadric(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}z{i + 1}*w{i + 1}"))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {t}" for s, t in terms[1:])
