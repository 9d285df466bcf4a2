"""Property checks shared by the test-suite and the ``selftest`` command.

Each ``check_*`` function returns a list of failure messages; an empty list
means the property holds on the given instance.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Optional

from .arrangement import StackyArrangement, validate_data
from .boxes import box_inverse, ceiling, enumerate_box, epsilon, fractional_part, third_box
from .inertia import sector_triple
from .lawrence import lawrence_fan, project_cone
from .orbring import OrbifoldChowRing
from .zlattice import FgAbGroup, determinant, matmul, smith_normal_form


def random_arrangement(rng: random.Random, max_m: int = 7, max_d: int = 3,
                       entry: int = 1, allow_torsion: bool = True,
                       max_dimension: Optional[int] = None,
                       attempts: int = 1000) -> StackyArrangement:
    """A random valid arrangement with entries in ``[-entry, entry]``.

    With ``max_dimension`` set, instances whose orbifold ring has a larger
    total dimension are rejected.
    """
    for _ in range(attempts):
        d = rng.randint(1, max_d)
        m = rng.randint(d + 1, max_m)
        torsion = rng.choice([(), (), (2,), (3,)]) if allow_torsion else ()
        N = FgAbGroup(d, torsion)
        vecs = [tuple(rng.randint(-entry, entry) for _ in range(d))
                + tuple(rng.randrange(n) for n in torsion) for _ in range(m)]
        lift = tuple(rng.randint(-3, 3) for _ in range(m))
        if not validate_data(N, vecs, lift=lift).ok:
            continue
        A = StackyArrangement(N, tuple(vecs), lift, rng.choice((1, -1)))
        if max_dimension is not None and len(OrbifoldChowRing(A).basis) > max_dimension:
            continue
        return A
    raise RuntimeError("no valid arrangement found")


def check_snf(rng: random.Random, trials: int = 1000, max_size: int = 8, bound: int = 50) -> list[str]:
    bad = []
    for t in range(trials):
        r, c = rng.randint(1, max_size), rng.randint(1, max_size)
        M = [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]
        U, D, V = smith_normal_form(M)
        if matmul(matmul(U, tuple(map(tuple, M))), V) != D:
            bad.append(f"trial {t}: U M V != D")
        if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
            bad.append(f"trial {t}: transform not unimodular")
        diag = [D[i][i] for i in range(min(r, c))]
        if any(D[i][j] for i in range(r) for j in range(c) if i != j):
            bad.append(f"trial {t}: off-diagonal entry")
        if any(x < 0 for x in diag):
            bad.append(f"trial {t}: negative diagonal")
        for a, b in zip(diag, diag[1:]):
            if (a == 0 and b != 0) or (a and b % a):
                bad.append(f"trial {t}: divisibility fails for {a}, {b}")
    return bad


def check_commutative_associative(R: OrbifoldChowRing, rng: random.Random,
                                  samples: int = 1000) -> list[str]:
    bad = []
    B = R.basis
    for a in B:
        for b in B:
            if R._raw_product(a, b) != R._raw_product(b, a):
                bad.append(f"{R.format_key(a)} and {R.format_key(b)} do not commute")
    for _ in range(samples):
        a, b, c = (R.element(rng.choice(B)) for _ in range(3))
        left = R.multiply(R.multiply(a, b), c)
        right = R.multiply(a, R.multiply(b, c))
        if left != right:
            bad.append("associativity fails for "
                       + ", ".join(R.format_key(next(iter(x.terms))) for x in (a, b, c)))
    for _ in range(samples):
        a, b = R.element(rng.choice(B)), R.element(rng.choice(B))
        p = R.multiply(a, b)
        if not p.is_zero():
            want = R.degree(next(iter(a.terms))) + R.degree(next(iter(b.terms)))
            if p.degrees() != {want}:
                bad.append(f"degree not additive for {R.format_key(next(iter(a.terms)))}"
                           f" * {R.format_key(next(iter(b.terms)))}")
    return bad


def check_case_oracle(R: OrbifoldChowRing) -> list[str]:
    bad = []
    for a in R.basis:
        for b in R.basis:
            if R._raw_product(a, b) != R.multiply_case_check(a, b):
                bad.append(f"case formula disagrees on {R.format_key(a)} * {R.format_key(b)}")
    return bad


def check_epsilon_product(R: OrbifoldChowRing) -> list[str]:
    """The cached box-pair product agrees with the direct ceiling computation."""
    bad = []
    for a in R.basis:
        for b in R.basis:
            if R._raw_product(a, b) != R.multiply_via_epsilon(a, b):
                bad.append(f"epsilon product disagrees on {R.format_key(a)} * {R.format_key(b)}")
    return bad


def check_decomposition(R: OrbifoldChowRing) -> list[str]:
    direct, summed = R.hilbert_series(), R.decomposition_series()
    return [] if direct == summed else [f"direct series {direct} != decomposition {summed}"]


def check_lawrence(A: StackyArrangement) -> list[str]:
    bad = []
    LF = lawrence_fan(A)
    for cone in LF.maximal_cones:
        pairs = project_cone(cone, A.m)
        if not A.fan.is_cone(pairs):
            bad.append(f"paired indices {sorted(i + 1 for i in pairs)} do not form a cone")
    return bad


def flip_matching(R: OrbifoldChowRing, R2: OrbifoldChowRing, j: int):
    """Basis correspondence ``key -> (sign, key')`` for the flip of ray j."""
    N = R.A.group
    out = {}
    for k, e in R.basis:
        b = R.boxes[k]
        v = N.sub(b.v, R.A.vectors[j]) if j in b.sigma else b.v
        k2 = R2.box_index[(v, b.sigma)]
        out[(k, e)] = ((-1) ** e[j], (k2, e))
    return out


def check_coorientation(A: StackyArrangement, j: int, R: Optional[OrbifoldChowRing] = None) -> list[str]:
    R = R or OrbifoldChowRing(A)
    A2 = A.flip_coorientation(j)
    R2 = OrbifoldChowRing(A2)
    bad = []
    if R.hilbert_series() != R2.hilbert_series():
        bad.append(f"flip {j + 1}: series {R.hilbert_series()} vs {R2.hilbert_series()}")
        return bad
    try:
        phi = flip_matching(R, R2, j)
    except KeyError as exc:
        return [f"flip {j + 1}: box {exc} has no partner"]
    if sorted(k for _, k in phi.values()) != sorted(R2.basis):
        return [f"flip {j + 1}: basis does not match"]

    def image(x):
        return {phi[k][1]: phi[k][0] * c for k, c in x.terms.items()}

    for a in R.basis:
        for b in R.basis:
            lhs = image(R._raw_product(a, b))
            sa, ka = phi[a]
            sb, kb = phi[b]
            rhs = {k: sa * sb * c for k, c in R2._raw_product(ka, kb).terms.items()}
            if lhs != rhs:
                bad.append(f"flip {j + 1}: table differs at {R.format_key(a)} * {R.format_key(b)}")
    return bad


def check_ceiling(A: StackyArrangement, rng: random.Random, shifts: int = 3,
                  shifted_pairs: int = 300) -> list[str]:
    """Ceiling-calculus identities on every box pair.

    Integral-shift invariance of epsilon is tested on a random sample of at
    most ``shifted_pairs`` pairs, ``shifts`` shifts each.
    """
    bad = []
    N = A.group
    boxes = enumerate_box(A)
    for b in boxes:
        inv = box_inverse(A, b)
        if box_inverse(A, inv) != b:
            bad.append(f"inverse of {b.label()} is not an involution")
        if inv.age != b.age or b.age != len(b.sigma):
            bad.append(f"age mismatch for {b.label()}")
        if third_box(A, b, inv).sigma or any(third_box(A, b, inv).v):
            bad.append(f"{b.label()} and its inverse do not complete with the identity")
    pairs = [(b1, b2) for b1, b2 in product(boxes, repeat=2) if A.fan.is_cone(b1.sigma | b2.sigma)]
    sampled = set(rng.sample(range(len(pairs)), min(shifted_pairs, len(pairs))))
    for n, (b1, b2) in enumerate(pairs):
        s = b1.sigma | b2.sigma
        eps, _ = epsilon(A, b1.v, b1.sigma, b2.v, b2.sigma)
        lam = A.fan.coefficients(s, N.bar(eps))
        if any(x not in (0, 1) for x in lam.values()):
            bad.append(f"epsilon of {b1.label()}, {b2.label()} has coefficients {lam}")
        for _ in range(shifts if n in sampled else 0):
            m1 = {i: rng.randint(0, 3) for i in b1.sigma | {rng.randrange(A.m)} if A.fan.is_cone(s | {i})}
            m2 = {i: rng.randint(0, 3) for i in b2.sigma}
            c1 = N.add(b1.v, N.combination(list(m1.values()), [A.vectors[i] for i in m1]))
            c2 = N.add(b2.v, N.combination(list(m2.values()), [A.vectors[i] for i in m2]))
            s1 = b1.sigma | {i for i, x in m1.items() if x}
            s2 = b2.sigma | {i for i, x in m2.items() if x}
            if not A.fan.is_cone(s1 | s2):
                continue
            eps2, _ = epsilon(A, c1, s1, c2, s2)
            if eps2 != eps:
                bad.append(f"epsilon changes under integral shifts of {b1.label()}, {b2.label()}")
        t = sector_triple(A, b1, b2)
        ti = sector_triple(A, box_inverse(A, b1), box_inverse(A, b2))
        a, c = t.a, ti.a
        for i in t.sigma | ti.sigma:
            total = a.get(i, 0) + c.get(i, 0)
            if i in t.sigma and i in ti.sigma and total not in (2, 3):
                bad.append(f"a_i + c_i = {total} at ray {i + 1} for {b1.label()}, {b2.label()}")
    return bad


def check_fractional_part(A: StackyArrangement, rng: random.Random, samples: int = 50) -> list[str]:
    bad = []
    N = A.group
    for _ in range(samples):
        sigma = rng.choice(A.fan.cones)
        coeffs = {i: rng.randint(0, 3) for i in sigma}
        boxes = [b for b in enumerate_box(A) if b.sigma <= sigma]
        b = rng.choice(boxes)
        c = N.add(b.v, N.combination(list(coeffs.values()), [A.vectors[i] for i in coeffs]))
        fe = fractional_part(A, c, sigma)
        back = N.add(fe.box.v, N.combination([k for _, k in fe.mults], [A.vectors[i] for i, _ in fe.mults]))
        if back != c:
            bad.append(f"reconstruction fails for {c} over {sorted(sigma)}")
        ceil = ceiling(A, c, sigma)
        lam = A.fan.coefficients(sigma, N.bar(N.sub(ceil, c)))
        if any(not (0 <= x < 1) for x in lam.values()):
            bad.append(f"ceiling of {c} overshoots")
    return bad


# Expected values for the bundled fixtures:
# (orbifold series, coarse series, number of box elements).
GOLDEN = {
    "p12": ((1, 2), (1, 1), 2),
    "gerbe": ((2, 4), (1, 2), 2),
    "p122": ((1, 3, 4), (1, 2, 2), 2),
    "tp112": ((1, 1, 2), (1, 1, 1), 2),
    "aprime": ((1, 2, 3), (1, 2, 2), 2),
    **{f"crepant{n}": ((1, n - 1), (1, n - 1), 1) for n in range(2, 7)},
}

# The fixtures that the property suites always include.
PROPERTY_FIXTURES = ("p12", "gerbe", "p122", "tp112", "aprime", "crepant4")


def check_golden(name: str, A: StackyArrangement) -> list[str]:
    orb, coarse, nbox = GOLDEN[name]
    R = OrbifoldChowRing(A)
    bad = []
    if tuple(R.hilbert_series()) != orb:
        bad.append(f"{name}: orbifold series {R.hilbert_series()} != {list(orb)}")
    if tuple(R.hilbert_series("coarse")) != coarse:
        bad.append(f"{name}: coarse series {R.hilbert_series('coarse')} != {list(coarse)}")
    if len(R.boxes) != nbox:
        bad.append(f"{name}: {len(R.boxes)} box elements, expected {nbox}")
    return bad


def property_instances(rng: random.Random, count: int = 20,
                       max_dimension: int = 60) -> list[tuple[str, StackyArrangement]]:
    """Fixture arrangements followed by ``count`` random ones."""
    from .io import load_fixture

    out = [(name, load_fixture(name).arrangement()) for name in PROPERTY_FIXTURES]
    for n in range(count):
        out.append((f"random{n + 1}", random_arrangement(rng, max_dimension=max_dimension)))
    return out


def selftest(seed: int = 0, count: int = 20, samples: int = 1000,
             snf_trials: int = 1000) -> dict:
    """Golden fixtures plus every property suite; returns a JSON-ready summary."""
    from .io import load_fixture

    rng = random.Random(seed)
    golden = {}
    for name in GOLDEN:
        golden[name] = check_golden(name, load_fixture(name).arrangement())
    suites: dict[str, dict[str, list[str]]] = {}
    for name, A in property_instances(rng, count):
        for suite, failures in check_all(A, rng, samples).items():
            suites.setdefault(suite, {})[name] = failures
    suites["smith normal form"] = {"random matrices": check_snf(rng, snf_trials)}
    ok = all(not v for v in golden.values()) and all(
        not f for per in suites.values() for f in per.values())
    return {
        "ok": ok,
        "seed": seed,
        "golden": {k: {"ok": not v, "failures": v} for k, v in golden.items()},
        "suites": {s: {"ok": all(not f for f in per.values()),
                       "instances": len(per),
                       "failures": [x for f in per.values() for x in f]}
                   for s, per in suites.items()},
    }


def check_all(A: StackyArrangement, rng: random.Random, samples: int = 1000) -> dict[str, list[str]]:
    """Run every ring-level property on one instance."""
    R = OrbifoldChowRing(A)
    out = {
        "commutative/associative/graded": check_commutative_associative(R, rng, samples),
        "case formula": check_case_oracle(R),
        "epsilon product": check_epsilon_product(R),
        "decomposition": check_decomposition(R),
        "lawrence projection": check_lawrence(A),
        "ceiling calculus": check_ceiling(A, rng) + check_fractional_part(A, rng),
    }
    flips = []
    for j in range(A.m):
        flips += check_coorientation(A, j, R)
    out["coorientation"] = flips
    return out


__all__ = [
    "random_arrangement", "check_snf", "check_commutative_associative",
    "check_case_oracle", "check_epsilon_product", "check_decomposition", "check_lawrence",
    "check_coorientation", "check_ceiling", "check_fractional_part", "check_all",
    "GOLDEN", "PROPERTY_FIXTURES", "check_golden", "property_instances", "selftest",
]
