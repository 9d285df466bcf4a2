"""Buchberger's algorithm over Q with exact Fractions.

Polynomials are dicts mapping exponent tuples to nonzero Fractions. The
monomial order is graded reverse lexicographic, optionally refined by a
weight vector compared first.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .linalg import rank, rref

Poly = dict


class MonomialOrder:
    """Weighted degree, then total degree, then reverse lexicographic."""

    def __init__(self, nvars: int, weights: Optional[Sequence[int]] = None):
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        self._keys: dict = {}

    def key(self, e):
        k = self._keys.get(e)
        if k is None:
            k = (sum(w * x for w, x in zip(self.weights, e)), sum(e),
                 tuple(-x for x in reversed(e)))
            self._keys[e] = k
        return k

    def lead(self, f: Poly):
        return max(f, key=self.key)


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def poly_from_terms(terms: Iterable[tuple[Sequence[int], object]]) -> Poly:
    out: Poly = {}
    for e, c in terms:
        e = tuple(e)
        out[e] = out.get(e, Fraction(0)) + Fraction(c)
        if out[e] == 0:
            del out[e]
    return out


def add(f: Poly, g: Poly, scale=1) -> Poly:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, Fraction(0)) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mul_term(f: Poly, e, c) -> Poly:
    return {tuple(a + b for a, b in zip(k, e)): v * c for k, v in f.items()}


def mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for e, c in g.items():
        out = add(out, mul_term(f, e, c))
    return out


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monic(f: Poly, order: MonomialOrder) -> Poly:
    c = f[order.lead(f)]
    return {e: v / c for e, v in f.items()}


def normal_form(f: Poly, basis: Sequence[Poly], order: MonomialOrder,
                leads: Optional[Sequence] = None) -> Poly:
    """Full reduction of f modulo the list ``basis``."""
    if leads is None:
        leads = [order.lead(g) for g in basis]
    leads = list(zip(leads, basis))
    f = dict(f)
    rem: Poly = {}
    while f:
        lt = order.lead(f)
        c = f[lt]
        for le, g in leads:
            if divides(le, lt):
                q = tuple(a - b for a, b in zip(lt, le))
                f = add(f, mul_term(g, q, -c / g[le]))
                break
        else:
            rem[lt] = c
            del f[lt]
    return rem


def _substitute(f: Poly, pivots: dict, nvars: int) -> Poly:
    """Replace each pivot variable by its linear expression in smaller variables."""
    out: Poly = {}
    for e, c in f.items():
        term: Poly = {tuple(0 if k in pivots else x for k, x in enumerate(e)): c}
        for k, x in enumerate(e):
            if k in pivots:
                for _ in range(x):
                    term = mul(term, pivots[k])
        out = add(out, term)
    return out


def _split_linear(G: list, order: MonomialOrder):
    """Row-reduce the homogeneous linear generators.

    Returns ``(pivots, linear, rest)`` where ``pivots`` maps each pivot variable
    to the linear form (in smaller variables) it equals modulo the ideal.
    """
    n = order.nvars
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    var_order = sorted(range(n), key=lambda i: order.key(units[i]), reverse=True)
    lin, rest = [], []
    for g in G:
        (lin if all(sum(e) == 1 for e in g) else rest).append(g)
    rows = [[g.get(units[i], Fraction(0)) for i in var_order] for g in lin]
    pivots: dict = {}
    linear = []
    if rows:
        R, piv = rref(rows)
        for row, pc in zip(R, piv):
            p = var_order[pc]
            expr = {units[var_order[c]]: -row[c] for c in range(pc + 1, n) if row[c]}
            pivots[p] = expr
            linear.append(add({units[p]: Fraction(1)}, expr, -1))
    return pivots, linear, rest


def _buchberger(G: list, order: MonomialOrder) -> list:
    G = [monic(g, order) for g in G if g]
    leads = [order.lead(g) for g in G]
    pairs: set = set()
    queue: list = []

    def push(i, j):
        l = tuple(max(a, b) for a, b in zip(leads[i], leads[j]))
        pairs.add((i, j))
        heapq.heappush(queue, (order.key(l), i, j))

    for i, j in combinations(range(len(G)), 2):
        push(i, j)
    while queue:
        _, i, j = heapq.heappop(queue)  # normal strategy: smallest lcm first
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue  # coprime leading terms
        l = tuple(max(a, b) for a, b in zip(li, lj))
        # chain criterion: skip when some third lead divides the lcm and both
        # of its pairs with i and j have already been treated
        if any(k not in (i, j) and divides(leads[k], l)
               and (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue
        s = add(mul_term(G[i], tuple(a - b for a, b in zip(l, li)), 1),
                mul_term(G[j], tuple(a - b for a, b in zip(l, lj)), 1), -1)
        r = normal_form(s, G, order, leads)
        if r:
            G.append(monic(r, order))
            leads.append(order.lead(G[-1]))
            for k in range(len(G) - 1):
                push(k, len(G) - 1)
    return G


def _reduce_basis(G: list, order: MonomialOrder) -> list:
    leads = [order.lead(g) for g in G]
    keep = []
    for k, g in enumerate(G):
        lk = leads[k]
        if any(divides(leads[t], lk) and (leads[t] != lk or t < k) for t in range(len(G)) if t != k):
            continue
        keep.append(g)
    red = []
    for k, g in enumerate(keep):
        others = keep[:k] + keep[k + 1:]
        red.append(monic(normal_form(g, others, order), order))
    return sorted(red, key=lambda g: order.key(order.lead(g)))


def groebner_basis(gens: Iterable[Poly], order: MonomialOrder) -> list[Poly]:
    """Reduced Groebner basis, sorted by leading monomial.

    Homogeneous linear generators are eliminated first: each pivot variable
    is replaced by smaller variables, which never raises a monomial in any
    monomial order, so the linear forms plus a basis of the substituted
    remainder form a basis of the whole ideal.
    """
    G = [dict(g) for g in gens if g]
    pivots, linear, rest = _split_linear(G, order)
    rest = [_substitute(g, pivots, order.nvars) for g in rest] if pivots else rest
    return _reduce_basis(linear + _buchberger([g for g in rest if g], order), order)


def standard_monomials(basis: Sequence[Poly], order: MonomialOrder, limit: int = 100000) -> list[tuple]:
    """Monomials outside the leading-term ideal; raises if the quotient is infinite."""
    n = order.nvars
    leads = [order.lead(g) for g in basis]
    if any(not any(e) for e in leads):
        return []
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for k in range(n):
                f = e[:k] + (e[k] + 1,) + e[k + 1:]
                if f in seen or any(divides(le, f) for le in leads):
                    continue
                seen.add(f)
                nxt.append(f)
        if len(seen) > limit:
            raise ValueError("quotient ring is not finite dimensional")
        frontier = nxt
    return sorted(seen, key=order.key)


def monomials_of_degree(weights: Sequence[int], degree: int) -> list[tuple]:
    """All exponent vectors of the given weighted degree (weights must be positive)."""
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    out = []

    def rec(k, left, acc):
        if k == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for x in range(left // weights[k] + 1):
            acc.append(x)
            rec(k + 1, left - x * weights[k], acc)
            acc.pop()

    rec(0, degree, [])
    return out


def graded_quotient_dimensions(relations: Sequence[Poly], weights: Sequence[int],
                               max_degree: int) -> list[int]:
    """Dimensions of ``Q[x]/I`` in degrees ``0..max_degree`` by linear algebra.

    Independent of Groebner bases: in each degree the ideal is spanned by
    monomial multiples of the homogeneous relations.
    """
    def wdeg(e):
        return sum(w * x for w, x in zip(weights, e))

    rels = []
    for r in relations:
        degs = {wdeg(e) for e in r}
        if len(degs) > 1:
            raise ValueError("relations must be homogeneous")
        if r:
            rels.append((degs.pop(), r))
    dims = []
    for D in range(max_degree + 1):
        monos = monomials_of_degree(weights, D)
        pos = {e: k for k, e in enumerate(monos)}
        rows = []
        for dg, r in rels:
            if dg > D:
                continue
            for mono in monomials_of_degree(weights, D - dg):
                row = [Fraction(0)] * len(monos)
                for e, c in r.items():
                    row[pos[tuple(a + b for a, b in zip(e, mono))]] += c
                rows.append(row)
        dims.append(len(monos) - (rank(rows) if rows else 0))
    return dims


def format_poly(f: Poly, names: Sequence[str], order: Optional[MonomialOrder] = None) -> str:
    if not f:
        return "0"
    order = order or MonomialOrder(len(names))
    parts = []
    for e in sorted(f, key=order.key, reverse=True):
        c = f[e]
        mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return s + "".join(f" {sg} {b}" for sg, b in parts[1:])
