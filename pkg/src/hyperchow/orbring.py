"""The orbifold Chow ring as a finite-dimensional graded algebra.

The ring decomposes over box elements. The component of a box ``(v, tau)``
is the cyclic module ``u * Q[y_1..y_m] / (J_tau + Cir)`` where ``u`` is the
box generator, ``J_tau`` is generated by the square-free monomials ``y^S``
with ``S + tau`` dependent, and ``Cir`` by the linear forms
``sum_i e(b_i) y_i`` for ``e`` in the free dual of N.

A basis monomial is a pair ``(k, e)``: box index ``k`` and an exponent
vector ``e`` that is a standard monomial of component ``k``. It stands for
``y^(c, sigma)`` with ``c = v_k + sum e_i b_i`` and
``sigma = tau_k + supp(e)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .arrangement import StackyArrangement
from .boxes import BoxElement, enumerate_box, epsilon, fractional_part
from .groebner import (MonomialOrder, Poly, format_poly, groebner_basis,
                       normal_form, standard_monomials)
from .inertia import quotient_arrangement, sector_triple
from .multifan import MultiFan

BasisKey = tuple  # (box index, exponent tuple)


class ArrangementMismatch(ValueError):
    pass


def matroid_relations(fan: MultiFan) -> list[frozenset]:
    """Circuits of the matroid; each stands for the monomial ``prod y_i``."""
    return list(fan.circuits)


def circuit_relations(A: StackyArrangement) -> list[tuple[int, ...]]:
    """Coefficient vectors of ``sum_i e(b_i) y_i`` for the coordinate covectors e."""
    return [tuple(A.bbar[i][k] for i in range(A.m)) for k in range(A.d)]


def _monomial(m: int, S: Iterable[int]) -> Poly:
    e = [0] * m
    for i in S:
        e[i] = 1
    return {tuple(e): Fraction(1)}


def _linear(coeffs: Sequence[int]) -> Poly:
    m = len(coeffs)
    return {tuple(int(i == j) for j in range(m)): Fraction(c) for i, c in enumerate(coeffs) if c}


@dataclass(frozen=True)
class Component:
    box: BoxElement
    generators: tuple
    basis_gb: tuple
    leads: tuple
    monomials: tuple  # standard monomials, sorted by the order
    action: tuple  # action[i][s] = normal form of y_i * s


class RingElement:
    """Sparse element ``{(box index, exponents): coefficient}`` of a fixed ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "OrbifoldChowRing", terms: Optional[Mapping] = None):
        self.ring = ring
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return RingElement(self.ring, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c) -> "RingElement":
        return RingElement(self.ring, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self.ring.multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.ring.degree(k) for k in self.terms}

    def _same(self, other):
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            raise ArrangementMismatch("elements belong to different rings")

    def __repr__(self) -> str:
        return f"RingElement({self.ring.format_element(self)})"


class OrbifoldChowRing:
    """Orbifold Chow ring of a stacky hyperplane arrangement."""

    def __init__(self, A: StackyArrangement):
        self.A = A
        self.m = A.m
        self.order = MonomialOrder(A.m)
        self.boxes: list[BoxElement] = enumerate_box(A)
        self.box_index = {(b.v, b.sigma): k for k, b in enumerate(self.boxes)}
        self._cir = [_linear(c) for c in circuit_relations(A)]
        self._by_cone: dict = {}
        self._nf_cache: dict = {}
        self.components = [self._component(b) for b in self.boxes]
        self.basis: list[BasisKey] = [(k, e) for k, comp in enumerate(self.components)
                                      for e in comp.monomials]
        self._raw_cache: dict = {}
        self._pair_cache: dict = {}
        self._triple_cache: dict = {}

    # -- construction ---------------------------------------------------

    def _component(self, box: BoxElement) -> Component:
        hit = self._by_cone.get(box.sigma)
        if hit is None:
            gens = [_monomial(self.m, S) for S in self.A.fan.minimal_obstructions(box.sigma)]
            gens += [f for f in self._cir if f]
            gb = groebner_basis(gens, self.order)
            leads = tuple(self.order.lead(g) for g in gb)
            monos = tuple(standard_monomials(gb, self.order))
            # multiplication by y_i on the standard monomials
            action = tuple({s: normal_form({tuple(x + (j == i) for j, x in enumerate(s)): Fraction(1)},
                                           gb, self.order, leads) for s in monos}
                           for i in range(self.m))
            hit = (tuple(gens), tuple(gb), leads, monos, action)
            self._by_cone[box.sigma] = hit
        return Component(box, *hit)

    # -- basic data -----------------------------------------------------

    def degree(self, key: BasisKey) -> int:
        k, e = key
        return self.boxes[k].age + sum(e)

    def cone_of(self, key: BasisKey) -> frozenset:
        k, e = key
        return self.boxes[k].sigma | frozenset(i for i, x in enumerate(e) if x)

    def lattice_point(self, key: BasisKey):
        k, e = key
        N = self.A.group
        return N.add(self.boxes[k].v, N.combination(list(e), list(self.A.vectors)))

    def element(self, key: BasisKey, coeff=1) -> RingElement:
        return RingElement(self, {key: coeff})

    def one(self) -> RingElement:
        return self.element((0, (0,) * self.m))

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def y(self, i: int) -> RingElement:
        """Degree-one generator ``y^{b_i}`` (0-based index) in normal form."""
        e = tuple(int(i == j) for j in range(self.m))
        return self.reduce(0, e)

    def box_generator(self, k: int) -> RingElement:
        return self.reduce(k, (0,) * self.m)

    def reduce(self, k: int, e: Sequence[int], coeff=1) -> RingElement:
        """Normal form of ``coeff * u_k * y^e``."""
        comp = self.components[k]
        e = tuple(e)
        key = (comp.box.sigma, e)
        nf = self._nf_cache.get(key)
        if nf is None:
            if not self.A.fan.is_cone(comp.box.sigma | {i for i, x in enumerate(e) if x}):
                nf = {}
            elif not any(e):
                nf = {e: Fraction(1)} if comp.monomials else {}
            else:
                i = next(j for j, x in enumerate(e) if x)
                prev = self.reduce(k, e[:i] + (e[i] - 1,) + e[i + 1:])
                nf = {}
                for (_, s), c in prev.terms.items():
                    for t, a in comp.action[i][s].items():
                        v = nf.get(t, Fraction(0)) + c * a
                        if v:
                            nf[t] = v
                        else:
                            nf.pop(t, None)
            self._nf_cache[key] = nf
        return RingElement(self, {(k, ex): coeff * c for ex, c in nf.items()})

    def from_lattice(self, c, sigma, coeff=1) -> RingElement:
        """Normal form of ``coeff * y^(c, sigma)`` via the fractional part."""
        fe = fractional_part(self.A, c, sigma)
        k = self.box_index[(fe.box.v, fe.box.sigma)]
        e = [0] * self.m
        for i, x in fe.mults:
            e[i] = x
        return self.reduce(k, e, coeff)

    # -- products -------------------------------------------------------

    def _box_pair(self, k1: int, k2: int):
        """``(k3, shift, sign)`` describing ``u_k1 * u_k2``.

        With ``v1 + v2 = v3 + sum m_i b_i`` over ``tau1 + tau2``, the product of
        ``u_k1 y^e1`` and ``u_k2 y^e2`` is ``sign * u_k3 y^(e1 + e2 + shift)``
        where ``shift = [tau1] + [tau2] - [tau3]`` and the sign counts the
        support of ``[tau1] + [tau2] - m - [tau3]``.
        """
        key = (k1, k2) if k1 <= k2 else (k2, k1)
        hit = self._pair_cache.get(key)
        if hit is None:
            b1, b2 = self.boxes[k1], self.boxes[k2]
            s = b1.sigma | b2.sigma
            fe = fractional_part(self.A, self.A.group.add(b1.v, b2.v), s)
            k3 = self.box_index[(fe.box.v, fe.box.sigma)]
            tau3 = fe.box.sigma
            mults = dict(fe.mults)
            shift = tuple((i in b1.sigma) + (i in b2.sigma) - (i in tau3) for i in range(self.m))
            eps = [(i in b1.sigma) + (i in b2.sigma) - mults.get(i, 0) - (i in tau3) for i in range(self.m)]
            hit = (k3, shift, (-1) ** sum(1 for x in eps if x))
            self._pair_cache[key] = hit
        return hit

    def _raw_product(self, k1: BasisKey, k2: BasisKey) -> RingElement:
        key = (k1, k2) if k1 <= k2 else (k2, k1)
        hit = self._raw_cache.get(key)
        if hit is not None:
            return hit
        s1, s2 = self.cone_of(k1), self.cone_of(k2)
        if not self.A.fan.is_cone(s1 | s2):
            out = self.zero()
        else:
            k3, shift, sign = self._box_pair(k1[0], k2[0])
            e = tuple(a + b + c for a, b, c in zip(k1[1], k2[1], shift))
            out = self.reduce(k3, e, sign)
        self._raw_cache[key] = out
        return out

    def multiply_via_epsilon(self, k1: BasisKey, k2: BasisKey) -> RingElement:
        """Product of two basis monomials straight from the ceiling function."""
        s1, s2 = self.cone_of(k1), self.cone_of(k2)
        if not self.A.fan.is_cone(s1 | s2):
            return self.zero()
        c1, c2 = self.lattice_point(k1), self.lattice_point(k2)
        eps, s_eps = epsilon(self.A, c1, s1, c2, s2)
        N = self.A.group
        c = N.add(N.add(c1, c2), eps)
        return self.from_lattice(c, s1 | s2, (-1) ** len(s_eps))

    def multiply(self, x: RingElement, y: RingElement) -> RingElement:
        x._same(y)
        acc: dict = {}
        for k1, a in x.terms.items():
            for k2, b in y.terms.items():
                for k, c in self._raw_product(k1, k2).terms.items():
                    acc[k] = acc.get(k, Fraction(0)) + a * b * c
        return RingElement(self, acc)

    def multiply_case_check(self, k1: BasisKey, k2: BasisKey) -> RingElement:
        """Product of two basis monomials through the sector-triple sets I and J."""
        s1, s2 = self.cone_of(k1), self.cone_of(k2)
        if not self.A.fan.is_cone(s1 | s2):
            return self.zero()
        N = self.A.group
        c1, c2 = self.lattice_point(k1), self.lattice_point(k2)
        f1, f2 = fractional_part(self.A, c1, s1), fractional_part(self.A, c2, s2)
        tkey = (f1.box.v, f1.box.sigma, f2.box.v, f2.box.sigma)
        t = self._triple_cache.get(tkey)
        if t is None:
            t = self._triple_cache[tkey] = sector_triple(self.A, f1.box, f2.box)
        extra = N.combination([1] * len(t.I | t.J), [self.A.vectors[i] for i in sorted(t.I | t.J)])
        c = N.add(N.add(c1, c2), extra)
        return self.from_lattice(c, s1 | s2, (-1) ** (len(t.I) + len(t.J)))

    @cached_property
    def structure_constants(self) -> dict:
        """``{(i, j): product of basis[i] and basis[j]}`` for ``i <= j``."""
        table = {}
        for i, a in enumerate(self.basis):
            for j in range(i, len(self.basis)):
                table[(i, j)] = self._raw_product(a, self.basis[j])
        return table

    def coordinates(self, x: RingElement) -> list[Fraction]:
        pos = {k: n for n, k in enumerate(self.basis)}
        out = [Fraction(0)] * len(self.basis)
        for k, c in x.terms.items():
            out[pos[k]] = c
        return out

    # -- gradings -------------------------------------------------------

    def hilbert_series(self, which: str = "orbifold") -> list[int]:
        if which == "orbifold":
            keys = self.basis
        elif which == "coarse":
            keys = [(0, e) for e in self.components[0].monomials]
        else:
            raise ValueError("which must be 'orbifold' or 'coarse'")
        return _series([self.degree(k) for k in keys])

    def decomposition_series(self) -> list[int]:
        """Sum over boxes of the shifted coarse series of the quotient arrangements."""
        total: list[int] = []
        by_cone: dict = {}
        for b in self.boxes:
            series = by_cone.get(b.sigma)
            if series is None:
                q = quotient_arrangement(self.A, b).arrangement
                series = by_cone[b.sigma] = coarse_series(q)
            shifted = [0] * b.age + series
            total = [x + y for x, y in zip(_pad(total, len(shifted)), _pad(shifted, len(total)))]
        return _trim(total)

    # -- display ---------------------------------------------------------

    def variable_names(self) -> list[str]:
        return [f"y{i + 1}" for i in range(self.m)]

    def box_names(self) -> list[str]:
        return ["1"] + [f"u{k}" for k in range(1, len(self.boxes))]

    def format_key(self, key: BasisKey) -> str:
        k, e = key
        parts = [] if k == 0 else [f"u{k}"]
        parts += [n if x == 1 else f"{n}^{x}" for n, x in zip(self.variable_names(), e) if x]
        return "*".join(parts) if parts else "1"

    def format_element(self, x: RingElement) -> str:
        if x.is_zero():
            return "0"
        pos = {k: n for n, k in enumerate(self.basis)}
        items = sorted(x.terms.items(), key=lambda kv: pos.get(kv[0], len(pos)))
        out = []
        for key, c in items:
            mono = self.format_key(key)
            mag = abs(c)
            body = str(mag) if mono == "1" else (mono if mag == 1 else f"{mag}*{mono}")
            out.append(("-" if c < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        return s + "".join(f" {sg} {b}" for sg, b in out[1:])

    def parse_monomial(self, text: str) -> RingElement:
        """Parse ``y2^2*u1`` style products of generators."""
        text = text.strip()
        if text in ("", "1"):
            return self.one()
        e = [0] * self.m
        k = 0
        for factor in text.split("*"):
            factor = factor.strip()
            name, _, power = factor.partition("^")
            p = int(power) if power else 1
            if p < 0:
                raise ValueError(f"negative power in {factor!r}")
            if name.startswith("y") and name[1:].isdigit():
                i = int(name[1:]) - 1
                if not 0 <= i < self.m:
                    raise ValueError(f"unknown variable {name!r}")
                e[i] += p
            elif name.startswith("u") and name[1:].isdigit():
                j = int(name[1:])
                if not 1 <= j < len(self.boxes):
                    raise ValueError(f"unknown box generator {name!r}")
                if p == 0:
                    continue
                if k:
                    raise ValueError("at most one box generator with power 1 per monomial; use multiply")
                if p != 1:
                    raise ValueError("box generators must appear with power 1; use multiply")
                k = j
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
        x = self.box_generator(k) if k else self.one()
        for i, p in enumerate(e):
            for _ in range(p):
                x = self.multiply(x, self.y(i))
        return x


def _series(degrees: Iterable[int]) -> list[int]:
    degrees = list(degrees)
    if not degrees:
        return []
    out = [0] * (max(degrees) + 1)
    for d in degrees:
        out[d] += 1
    return out


def _pad(xs, n):
    return list(xs) + [0] * (n - len(xs))


def _trim(xs):
    xs = list(xs)
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def coarse_series(A: StackyArrangement) -> list[int]:
    """Graded dimensions of ``Q[y]/(matroid monomials + Cir)`` from the fan of A alone."""
    order = MonomialOrder(A.m)
    gens = [_monomial(A.m, S) for S in A.fan.circuits]
    gens += [f for f in (_linear(c) for c in circuit_relations(A)) if f]
    gb = groebner_basis(gens, order)
    return _series(sum(e) for e in standard_monomials(gb, order))


# -- presentations ---------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    relations: tuple[Poly, ...]
    dimensions: tuple[int, ...]

    def format_relations(self) -> list[str]:
        order = MonomialOrder(len(self.names), self.degrees)
        return [format_poly(r, self.names, order) for r in self.relations]

    def quotient_dimensions(self) -> list[int]:
        """Graded dimensions recomputed from the relations by a Groebner basis."""
        order = MonomialOrder(len(self.names), self.degrees)
        gb = groebner_basis(self.relations, order)
        return _series(sum(w * x for w, x in zip(self.degrees, e))
                       for e in standard_monomials(gb, order))

    def to_json(self) -> dict:
        return {
            "generators": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "relations": self.format_relations(),
            "dimensions": list(self.dimensions),
        }


def presentation(R: OrbifoldChowRing, which: str = "orbifold") -> Presentation:
    m = R.m
    A = R.A
    boxes = list(range(1, len(R.boxes))) if which == "orbifold" else []
    nv = m + len(boxes)
    names = tuple(R.variable_names() + [f"u{k}" for k in boxes])
    degrees = tuple([1] * m + [R.boxes[k].age for k in boxes])
    upos = {k: m + n for n, k in enumerate(boxes)}

    def mono(ys: Sequence[int], k: int = 0) -> tuple:
        e = list(ys) + [0] * len(boxes)
        if k:
            e[upos[k]] += 1
        return tuple(e)

    rels: list[Poly] = []
    circuits = set(A.fan.circuits)
    for S in A.fan.circuits:
        rels.append({mono([int(i in S) for i in range(m)]): Fraction(1)})
    for c in circuit_relations(A):
        f = {mono([int(i == j) for j in range(m)]): Fraction(x) for i, x in enumerate(c) if x}
        if f:
            rels.append(f)
    for k in boxes:
        for S in A.fan.minimal_obstructions(R.boxes[k].sigma):
            if S in circuits:
                continue  # already a multiple of a matroid relation
            rels.append({mono([int(i in S) for i in range(m)], k): Fraction(1)})
    for a in boxes:
        for b in boxes:
            if b < a:
                continue
            prod = R.multiply(R.box_generator(a), R.box_generator(b))
            e = [0] * nv
            e[upos[a]] += 1
            e[upos[b]] += 1
            f: Poly = {tuple(e): Fraction(1)}
            for (k, ex), c in prod.terms.items():
                key = mono(ex, k)
                f[key] = f.get(key, Fraction(0)) - c
                if f[key] == 0:
                    del f[key]
            rels.append(f)
    dims = tuple(R.hilbert_series(which))
    return Presentation(names, degrees, tuple(rels), dims)
