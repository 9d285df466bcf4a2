import random
from fractions import Fraction

import pytest
import sympy

from hyperchow.groebner import (
    MonomialOrder, format_poly, graded_quotient_dimensions, groebner_basis, normal_form,
    poly_from_terms, standard_monomials,
)


def to_sympy(f, gens):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(g ** k for g, k in zip(gens, e))
               for e, c in f.items())


def from_sympy(p, gens):
    P = sympy.Poly(p, *gens)
    return {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in zip(P.monoms(), P.coeffs())}


def test_simple_basis():
    order = MonomialOrder(2)
    x2 = {(2, 0): Fraction(1)}
    xy = {(1, 1): Fraction(1)}
    lin = poly_from_terms([((1, 0), 1), ((0, 1), -2)])
    gb = groebner_basis([x2, xy, lin], order)
    monos = standard_monomials(gb, order)
    assert len(monos) == 2  # 1 and y


def test_normal_form_reduces_to_zero_on_ideal():
    order = MonomialOrder(3)
    gens = [poly_from_terms([((1, 1, 0), 1), ((0, 0, 2), -1)]),
            poly_from_terms([((0, 1, 1), 1), ((1, 0, 0), -1)])]
    gb = groebner_basis(gens, order)
    for g in gens:
        assert normal_form(g, gb, order) == {}


@pytest.mark.parametrize("seed", range(25))
def test_matches_sympy_grevlex(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    gens = []
    for _ in range(rng.randint(2, 4)):
        deg = rng.randint(1, 3)
        terms = []
        for _ in range(rng.randint(1, 3)):
            e = [0] * n
            for _ in range(deg):
                e[rng.randrange(n)] += 1
            terms.append((tuple(e), rng.randint(-3, 3) or 1))
        f = poly_from_terms(terms)
        if f:
            gens.append(f)
    order = MonomialOrder(n)
    gb = groebner_basis(gens, order)
    xs = sympy.symbols(f"x0:{n}")
    ref = sympy.groebner([to_sympy(f, xs) for f in gens], *xs, order="grevlex")
    ours = sorted(tuple(sorted(from_sympy(to_sympy(g, xs), xs).items())) for g in gb)
    theirs = sorted(tuple(sorted(from_sympy(p, xs).items())) for p in ref.exprs)
    # sympy normalises differently; compare monic forms
    def monic(items):
        d = dict(items)
        lead = max(d, key=lambda e: (sum(e), tuple(-x for x in reversed(e))))
        return tuple(sorted((e, c / d[lead]) for e, c in d.items()))
    assert sorted(map(monic, ours)) == sorted(map(monic, theirs))


def test_weighted_order_quotient():
    # Q[x3, x4]/(x4^2, x3^3, x3 x4) with deg x4 = 2
    rels = [{(0, 2): Fraction(1)}, {(3, 0): Fraction(1)}, {(1, 1): Fraction(1)}]
    order = MonomialOrder(2, (1, 2))
    gb = groebner_basis(rels, order)
    degs = [sum(w * x for w, x in zip((1, 2), e)) for e in standard_monomials(gb, order)]
    assert sorted(degs) == [0, 1, 2, 2]
    assert graded_quotient_dimensions(rels, (1, 2), 5) == [1, 1, 2, 0, 0, 0]


def test_graded_quotient_dimensions_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        graded_quotient_dimensions([{(1,): Fraction(1), (0,): Fraction(1)}], (1,), 2)


def test_infinite_quotient_detected():
    order = MonomialOrder(2)
    gb = groebner_basis([{(2, 0): Fraction(1)}], order)
    with pytest.raises(ValueError):
        standard_monomials(gb, order, limit=50)


def test_format_poly():
    f = poly_from_terms([((1, 0), 1), ((0, 1), -2)])
    assert format_poly(f, ["y1", "y2"]) == "y1 - 2*y2"
    assert format_poly({}, ["y1"]) == "0"
