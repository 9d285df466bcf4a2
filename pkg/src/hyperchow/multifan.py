"""The simplicial multi-fan of a vector configuration, viewed as a matroid.

Cones are frozensets of 0-based ray indices. Repeated vectors are distinct
matroid elements, so parallel rays never share a cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .linalg import rank, rref

Cone = frozenset


class NotACone(ValueError):
    pass


class NotInCone(ValueError):
    pass


@dataclass(frozen=True)
class MultiFan:
    """Independence structure of the vectors ``bbar`` in ``Q^d``."""

    bbar: tuple[tuple[int, ...], ...]
    d: int = field(default=-1)

    def __post_init__(self):
        if self.d < 0:
            dim = len(self.bbar[0]) if self.bbar else 0
            object.__setattr__(self, "d", dim)

    @property
    def m(self) -> int:
        return len(self.bbar)

    def is_cone(self, S: Iterable[int]) -> bool:
        S = sorted(set(S))
        if any(i < 0 or i >= self.m for i in S):
            raise IndexError(f"index out of range in {S}")
        if len(S) > self.d:
            return False
        return frozenset(S) in self._cone_set

    def _independent(self, S: Sequence[int]) -> bool:
        return rank([self.bbar[i] for i in S]) == len(S)

    @cached_property
    def cones(self) -> tuple[frozenset, ...]:
        """All cones sorted by (size, lexicographic)."""
        out = [frozenset()]
        layer = [()]
        for k in range(1, self.d + 1):
            prev = {frozenset(T) for T in layer}
            nxt = []
            for S in layer:
                start = S[-1] + 1 if S else 0
                for i in range(start, self.m):
                    T = S + (i,)
                    if all(frozenset(T[:j] + T[j + 1:]) in prev for j in range(k)) \
                            and self._independent(T):
                        nxt.append(T)
            if not nxt:
                break
            out.extend(frozenset(T) for T in nxt)
            layer = nxt
        return tuple(out)

    @cached_property
    def _cone_set(self) -> frozenset:
        return frozenset(self.cones)

    @cached_property
    def top_cones(self) -> tuple[frozenset, ...]:
        return tuple(c for c in self.cones if len(c) == self.d)

    def cones_of_size(self, k: int) -> tuple[frozenset, ...]:
        return tuple(c for c in self.cones if len(c) == k)

    def link(self, sigma: Iterable[int]) -> frozenset:
        sigma = frozenset(sigma)
        if not self.is_cone(sigma):
            raise NotACone(f"{sorted(sigma)} is not a cone")
        return frozenset(i for i in range(self.m)
                         if i not in sigma and (sigma | {i}) in self._cone_set)

    def _solver(self, cone: frozenset):
        """Integer data ``(idx, P, K, D)``: coefficients are ``P x / D``; x is in the span iff ``K x = 0``."""
        cache = self.__dict__.setdefault("_solvers", {})
        hit = cache.get(cone)
        if hit is None:
            idx = sorted(cone)
            k = len(idx)
            aug = [[self.bbar[i][r] for i in idx] + [int(r == c) for c in range(self.d)]
                   for r in range(self.d)]
            R, _ = rref(aug) if aug else ([], [])
            E = [row[k:] for row in R]
            D = 1
            for row in E[:k]:
                for x in row:
                    D = lcm(D, x.denominator)
            P = [[int(x * D) for x in row] for row in E[:k]]
            K = []
            for row in E[k:]:
                den = 1
                for x in row:
                    den = lcm(den, x.denominator)
                K.append([int(x * den) for x in row])
            hit = (idx, P, K, D)
            cache[cone] = hit
        return hit

    def coefficients(self, sigma: Iterable[int], x: Sequence) -> dict[int, Fraction]:
        """Unique ``lambda`` with ``x = sum lambda_i bbar_i`` over the cone."""
        cone = frozenset(sigma)
        if not self.is_cone(cone):
            raise NotACone(f"{sorted(cone)} is not a cone")
        idx, P, K, D = self._solver(cone)
        if any(sum(a * b for a, b in zip(row, x)) for row in K):
            raise NotInCone(f"{tuple(x)} is not in the span of cone {idx}")
        return {i: Fraction(sum(a * b for a, b in zip(row, x))) / D for i, row in zip(idx, P)}

    def minimal_face_containing(self, sigma: Iterable[int], x: Sequence) -> frozenset:
        lam = self.coefficients(sigma, x)
        if any(v < 0 for v in lam.values()):
            raise NotInCone(f"{tuple(x)} has a negative coefficient in cone {sorted(lam)}")
        return frozenset(i for i, v in lam.items() if v > 0)

    @cached_property
    def circuits(self) -> tuple[frozenset, ...]:
        """Minimal dependent sets, sorted by (size, lexicographic)."""
        out = []
        for k in range(1, self.d + 2):
            for S in combinations(range(self.m), k):
                fs = frozenset(S)
                if fs in self._cone_set:
                    continue
                if all(fs - {i} in self._cone_set for i in S):
                    out.append(fs)
        return tuple(out)

    def minimal_obstructions(self, sigma: Iterable[int]) -> tuple[frozenset, ...]:
        """Minimal ``S`` disjoint from sigma with ``S + sigma`` dependent."""
        sigma = frozenset(sigma)
        rest = [i for i in range(self.m) if i not in sigma]
        out = []
        for k in range(1, self.d - len(sigma) + 2):
            for S in combinations(rest, k):
                fs = frozenset(S)
                if any(o <= fs for o in out):
                    continue
                if (fs | sigma) not in self._cone_set:
                    out.append(fs)
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))


def sorted_cone(c: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(c))


def one_based(c: Iterable[int]) -> list[int]:
    return [i + 1 for i in sorted(c)]
