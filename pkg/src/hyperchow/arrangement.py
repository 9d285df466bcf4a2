"""Stacky hyperplane arrangements ``(N, beta, theta)``.

An arrangement is stored through an integral lift ``psi`` of ``theta`` and a
sign convention, so ``theta = sign * beta_dual(psi)``. The real hyperplanes
are ``<bbar_i, v> + psi_i = 0`` and the half-spaces ``<bbar_i, v> + psi_i >= 0``
cut out the polytope ``Gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Optional, Sequence

from .linalg import nullspace, rank, solve
from .multifan import MultiFan
from .zlattice import (FgAbGroup, GroupElement, GroupHom, NotInImage, cokernel,
                       gale_dual, hom_from_columns, solve_lift)

MAX_REGION_DIM = 3


class InvalidArrangement(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tail = f" ({c.detail})" if c.detail else ""
            out.append(f"{c.name}: {'PASS' if c.ok else 'FAIL'}{tail}")
        return out


@dataclass(frozen=True)
class Hyperplane:
    index: int
    normal: tuple[int, ...]
    offset: int

    def value(self, v: Sequence) -> Fraction:
        return sum((Fraction(a) * b for a, b in zip(self.normal, v)), Fraction(self.offset))


@dataclass(frozen=True)
class BoundedRegion:
    signs: tuple[int, ...]
    vertices: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class RegionReport:
    regions: tuple[BoundedRegion, ...]
    gamma: Optional[BoundedRegion]
    bounding: frozenset  # hyperplanes carrying a facet of gamma


def positively_spans(vectors: Sequence[Sequence[int]], d: int) -> bool:
    """Whether the vectors positively span ``R^d``."""
    vecs = [tuple(v) for v in vectors]
    if d == 0:
        return True
    if rank(vecs) < d:
        return False
    normals = []
    if d == 1:
        normals = [[Fraction(1)]]
    else:
        for S in combinations(range(len(vecs)), d - 1):
            sub = [vecs[i] for i in S]
            if rank(sub) == d - 1:
                normals.append(nullspace(sub)[0])
    for u in normals:
        for s in (1, -1):
            if all(s * sum(a * b for a, b in zip(u, v)) >= 0 for v in vecs):
                return False
    return True


def _genericity(bd_columns, theta_bar, r) -> tuple[bool, str]:
    m = len(bd_columns)
    for C in combinations(range(m), r):
        cols = [bd_columns[i] for i in C]
        if rank(cols) < r:
            continue
        lam = solve(cols, theta_bar)
        if lam is None or any(x == 0 for x in lam):
            return False, f"cobasis {[i + 1 for i in C]} gives lambda {[str(x) for x in lam or []]}"
    return True, ""


def validate_data(group: FgAbGroup, vectors: Sequence[Sequence[int]], *,
                  lift: Optional[Sequence[int]] = None,
                  theta: Optional[Sequence[int]] = None,
                  sign: int = -1) -> ValidationReport:
    """Check raw arrangement data without constructing an arrangement."""
    checks = []
    vecs = [group.normalize(v) for v in vectors]
    m = len(vecs)
    bad = [i + 1 for i, v in enumerate(vecs) if group.is_torsion(v)]
    checks.append(CheckResult("nontorsion", not bad,
                              f"torsion vectors {bad}" if bad else ""))
    beta = hom_from_columns(m, group, vecs)
    coker, _ = cokernel(beta)
    checks.append(CheckResult("finite cokernel", coker.is_finite(),
                              "" if coker.is_finite() else f"cokernel {coker}"))
    bars = [group.bar(v) for v in vecs]
    spans = positively_spans(bars, group.rank)
    checks.append(CheckResult("positive spanning", spans,
                              "" if spans else "vectors lie in a closed half-space"))
    if bad or not coker.is_finite():
        checks.append(CheckResult("theta in image", False, "Gale dual undefined"))
        checks.append(CheckResult("genericity", False, "Gale dual undefined"))
        return ValidationReport(tuple(checks))
    DG, bd = gale_dual(beta)
    if lift is not None:
        if len(lift) != m:
            checks.append(CheckResult("theta in image", False, f"lift has {len(lift)} entries, expected {m}"))
            checks.append(CheckResult("genericity", False, "no theta"))
            return ValidationReport(tuple(checks))
        th = bd([sign * x for x in lift])
        checks.append(CheckResult("theta in image", True, "given by a lift"))
    else:
        th = tuple(theta)
        try:
            solve_lift(bd, th, sign)
            checks.append(CheckResult("theta in image", True))
        except (NotInImage, ValueError) as exc:
            checks.append(CheckResult("theta in image", False, str(exc)))
            checks.append(CheckResult("genericity", False, "theta not in image"))
            return ValidationReport(tuple(checks))
    ok, detail = _genericity([DG.bar(c) for c in bd.columns()],
                             DG.bar(th), DG.rank)
    checks.append(CheckResult("genericity", ok, detail))
    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class StackyArrangement:
    """A stacky hyperplane arrangement stored via an explicit lift of theta."""

    group: FgAbGroup
    vectors: tuple[GroupElement, ...]
    lift: tuple[int, ...]
    sign: int = -1
    check: bool = field(default=True, compare=False, repr=False)
    require_spanning: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(self.group.normalize(v) for v in self.vectors))
        object.__setattr__(self, "lift", tuple(int(x) for x in self.lift))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.lift) != len(self.vectors):
            raise ValueError("lift length must equal the number of vectors")
        if self.check:
            report = self.validate()
            failed = [c for c in report.failures()
                      if self.require_spanning or c.name != "positive spanning"]
            if failed:
                raise InvalidArrangement("; ".join(report.lines()))

    @classmethod
    def from_theta(cls, group: FgAbGroup, vectors, theta, sign: int = -1,
                   check: bool = True) -> "StackyArrangement":
        vecs = tuple(group.normalize(v) for v in vectors)
        beta = hom_from_columns(len(vecs), group, vecs)
        _, bd = gale_dual(beta)
        psi = solve_lift(bd, theta, sign)
        return cls(group, vecs, psi, sign, check)

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        return self.group.rank

    @cached_property
    def beta(self) -> GroupHom:
        return hom_from_columns(self.m, self.group, self.vectors)

    @cached_property
    def _gale(self):
        return gale_dual(self.beta)

    @property
    def dg(self) -> FgAbGroup:
        return self._gale[0]

    @property
    def beta_dual(self) -> GroupHom:
        return self._gale[1]

    @cached_property
    def theta(self) -> GroupElement:
        return self.beta_dual([self.sign * x for x in self.lift])

    @cached_property
    def bbar(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.group.bar(v) for v in self.vectors)

    @cached_property
    def fan(self) -> MultiFan:
        return MultiFan(self.bbar, self.d)

    def validate(self) -> ValidationReport:
        return validate_data(self.group, self.vectors, lift=self.lift, sign=self.sign)

    def hyperplanes(self) -> list[Hyperplane]:
        return [Hyperplane(i, self.bbar[i], self.lift[i]) for i in range(self.m)]

    def with_sign(self, sign: int) -> "StackyArrangement":
        """Same hyperplanes under the other sign convention (theta negated)."""
        return StackyArrangement(self.group, self.vectors, self.lift, sign, self.check,
                                 self.require_spanning)

    def flip_coorientation(self, i: int) -> "StackyArrangement":
        """Negate ``b_i``; the hyperplane stays put with reversed coorientation.

        Positive spanning is not preserved by flips, so the result only
        requires the remaining validity conditions.
        """
        vecs = list(self.vectors)
        vecs[i] = self.group.neg(vecs[i])
        psi = list(self.lift)
        psi[i] = -psi[i]
        return StackyArrangement(self.group, tuple(vecs), tuple(psi), self.sign, self.check,
                                 require_spanning=False)

    def bounded_regions(self) -> RegionReport:
        return bounded_regions(self)

    def same_data(self, other: "StackyArrangement") -> bool:
        return (self.group, self.vectors, self.lift, self.sign) == \
            (other.group, other.vectors, other.lift, other.sign)


def arrangement_vertices(hyperplanes: Sequence[Hyperplane], d: int) -> list[tuple[Fraction, ...]]:
    """Points where d hyperplanes with independent normals meet."""
    pts = set()
    for S in combinations(hyperplanes, d):
        normals = [h.normal for h in S]
        if rank(normals) < d:
            continue
        cols = [[h.normal[k] for h in S] for k in range(d)]
        x = solve(cols, [-h.offset for h in S])
        pts.add(tuple(x))
    return sorted(pts)


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def bounded_regions(A: StackyArrangement) -> RegionReport:
    """Exact enumeration of the bounded full-dimensional cells."""
    d = A.d
    if d > MAX_REGION_DIM:
        raise DimensionTooLarge(f"bounded-region enumeration supports d <= {MAX_REGION_DIM}")
    H = A.hyperplanes()
    verts = arrangement_vertices(H, d)
    values = {v: [h.value(v) for h in H] for v in verts}
    regions = []
    for signs in product((1, -1), repeat=A.m):
        if not positively_spans([[s * x for x in b] for s, b in zip(signs, A.bbar)], d):
            continue
        cell = [v for v in verts if all(s * val >= 0 for s, val in zip(signs, values[v]))]
        if not cell:
            continue
        centre = [sum(p[k] for p in cell) / len(cell) for k in range(d)]
        if all(s * h.value(centre) > 0 for s, h in zip(signs, H)):
            regions.append(BoundedRegion(signs, tuple(cell)))
    gamma = next((r for r in regions if all(s == 1 for s in r.signs)), None)
    bounding = frozenset()
    if gamma is not None:
        bounding = frozenset(
            h.index for h in H
            if _affine_dim([p for p in gamma.vertices if h.value(p) == 0]) == d - 1
        )
    return RegionReport(tuple(regions), gamma, bounding)
