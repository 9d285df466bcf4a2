"""Command-line interface: ``hyperchow COMMAND FILE [options]``.

Exit codes: 0 on success, 1 when the arrangement fails validation (or a
self-test fails), 2 on usage errors and unreadable input. Ray, cone and
variable indices are printed 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .arrangement import DimensionTooLarge, StackyArrangement
from .boxes import enumerate_box
from .inertia import inertia_components
from .io import InputError, parse
from .lawrence import format_quadric, hypertoric_ideal, lawrence_fan
from .orbring import OrbifoldChowRing, coarse_series, presentation
from .verify import selftest

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _num(x) -> Any:
    """JSON form of an exact number: ints stay ints, other fractions become strings."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _cone(c) -> list[int]:
    return sorted(i + 1 for i in c)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(_num(x)) for x in v) + ")"


# -- command bodies: each returns (json_payload, text_lines) -----------------

def cmd_gale(A: StackyArrangement, args):
    cols = A.beta_dual.columns()
    data = {
        "dg": {"rank": A.dg.rank, "torsion": list(A.dg.torsion), "name": str(A.dg)},
        "beta_dual": [list(c) for c in cols],
        "theta": list(A.theta),
        "lift": list(A.lift),
        "sign": A.sign,
    }
    lines = [f"DG(beta) = {A.dg}"]
    lines += [f"  a{i + 1} = {_fmt_vec(c)}" for i, c in enumerate(cols)]
    lines.append(f"theta = {_fmt_vec(A.theta)}  (lift {_fmt_vec(A.lift)}, sign {A.sign:+d})")
    return data, lines


def cmd_arrangement(A: StackyArrangement, args):
    hs = A.hyperplanes()
    data: dict = {"hyperplanes": [{"index": h.index + 1, "normal": list(h.normal), "offset": h.offset}
                                  for h in hs]}
    lines = [f"H{h.index + 1}: <{_fmt_vec(h.normal)}, v> {'-' if h.offset < 0 else '+'} {abs(h.offset)} = 0"
             for h in hs]
    try:
        rep = A.bounded_regions()
    except DimensionTooLarge as exc:
        data["bounded_regions"] = None
        lines.append(f"bounded regions: not computed ({exc})")
        return data, lines
    data["bounded_regions"] = [
        {"signs": list(r.signs), "vertices": [[_num(x) for x in p] for p in r.vertices]}
        for r in rep.regions
    ]
    data["gamma"] = None if rep.gamma is None else [[_num(x) for x in p] for p in rep.gamma.vertices]
    data["bounding"] = _cone(rep.bounding)
    lines.append(f"bounded regions: {len(rep.regions)}")
    for r in rep.regions:
        signs = "".join("+" if s > 0 else "-" for s in r.signs)
        lines.append(f"  [{signs}] vertices " + ", ".join(_fmt_vec(p) for p in r.vertices))
    if rep.gamma is not None:
        lines.append(f"Gamma bounded by hyperplanes {_cone(rep.bounding)}")
    return data, lines


def cmd_multifan(A: StackyArrangement, args):
    fan = A.fan
    data = {
        "cones": [_cone(c) for c in fan.cones],
        "top_cones": [_cone(c) for c in fan.top_cones],
        "circuits": [_cone(c) for c in fan.circuits],
    }
    lines = ["rays: " + ", ".join(f"b{i + 1} = {_fmt_vec(b)}" for i, b in enumerate(A.bbar))]
    for k in range(A.d + 1):
        cs = fan.cones_of_size(k)
        lines.append(f"cones of size {k}: " + " ".join(str(_cone(c)) for c in cs))
    lines.append("circuits: " + " ".join(str(_cone(c)) for c in fan.circuits))
    return data, lines


def cmd_lawrence(A: StackyArrangement, args):
    LF = lawrence_fan(A)
    m = A.m

    def ray(i):
        return f"z{i + 1}" if i < m else f"w{i - m + 1}"

    ideal = hypertoric_ideal(A)
    data = {
        "maximal_cones": [[ray(i) for i in sorted(c)] for c in LF.maximal_cones],
        "irrelevant": [list(g) for g in LF.irrelevant],
        "hypertoric_ideal": [format_quadric(g) for g in ideal],
    }
    lines = ["maximal cones:"]
    lines += ["  " + " ".join(ray(i) for i in sorted(c)) for c in LF.maximal_cones]
    lines.append("irrelevant ideal: (" + ", ".join("*".join(g) for g in LF.irrelevant) + ")")
    lines.append("hypertoric ideal: (" + ", ".join(format_quadric(g) for g in ideal) + ")")
    return data, lines


def _box_record(b) -> dict:
    return {
        "v": list(b.v),
        "sigma": _cone(b.sigma),
        "alpha": {str(i + 1): _num(a) for i, a in b.alphas},
        "age": b.age,
    }


def cmd_box(A: StackyArrangement, args):
    boxes = enumerate_box(A)
    data = {"boxes": [_box_record(b) for b in boxes]}
    lines = []
    for k, b in enumerate(boxes):
        alpha = " + ".join(f"{a}*b{i + 1}" for i, a in b.alphas) or "0"
        lines.append(f"u{k}: v = {_fmt_vec(b.v)}, sigma = {_cone(b.sigma)}, vbar = {alpha}, age {b.age}")
    return data, lines


def cmd_inertia(A: StackyArrangement, args):
    records, lines = [], []
    for k, (b, q, age) in enumerate(inertia_components(A)):
        Q = q.arrangement
        series = coarse_series(Q)
        records.append({
            "box": _box_record(b),
            "group": {"rank": q.group.rank, "torsion": list(q.group.torsion)},
            "link": _cone(q.link),
            "vectors": [list(v) for v in Q.vectors],
            "lift": list(Q.lift),
            "age": age,
            "coarse_series": series,
        })
        vecs = ", ".join(_fmt_vec(v) for v in Q.vectors)
        lines.append(f"component {k} (box {b.label()}, age {age}): N(sigma) = {q.group}, "
                     f"link {_cone(q.link)}, vectors {vecs}, lift {_fmt_vec(Q.lift)}, "
                     f"coarse series {' '.join(map(str, series))}")
    return {"components": records}, lines


def _which(args) -> str:
    return "coarse" if args.coarse else "orbifold"


def cmd_chow(A: StackyArrangement, args):
    R = OrbifoldChowRing(A)
    P = presentation(R, _which(args))
    lines = ["generators: " + ", ".join(f"{n} (degree {d})" for n, d in zip(P.names, P.degrees))]
    lines.append("relations:")
    lines += [f"  {r}" for r in P.format_relations()]
    lines.append("graded dimensions: " + " ".join(map(str, P.dimensions)))
    data = P.to_json()
    data["which"] = _which(args)
    return data, lines


def cmd_hilbert(A: StackyArrangement, args):
    series = OrbifoldChowRing(A).hilbert_series(_which(args))
    return {"which": _which(args), "series": series}, [" ".join(map(str, series))]


def cmd_multiply(A: StackyArrangement, args):
    R = OrbifoldChowRing(A)
    try:
        x, y = R.parse_monomial(args.left), R.parse_monomial(args.right)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    p = R.multiply(x, y)
    text = R.format_element(p)
    data = {
        "left": R.format_element(x),
        "right": R.format_element(y),
        "product": text,
        "terms": [{"monomial": R.format_key(k), "coefficient": _num(c)}
                  for k, c in sorted(p.terms.items())],
    }
    return data, [text]


COMMANDS = {
    "gale": (cmd_gale, "Gale dual group, the vectors of beta-dual and theta"),
    "arrangement": (cmd_arrangement, "hyperplanes and bounded regions"),
    "multifan": (cmd_multifan, "cones and circuits of the multi-fan"),
    "lawrence": (cmd_lawrence, "Lawrence fan and hypertoric ideal"),
    "box": (cmd_box, "box elements (twisted sectors)"),
    "inertia": (cmd_inertia, "inertia components and their quotient arrangements"),
    "chow": (cmd_chow, "presentation of the Chow ring"),
    "hilbert": (cmd_hilbert, "graded dimensions of the Chow ring"),
    "multiply": (cmd_multiply, "normal form of a product of two monomials"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperchow",
                                description="Orbifold Chow rings of stacky hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("validate", "check the arrangement data")
    sp.add_argument("file")
    for name, (_, help_) in COMMANDS.items():
        sp = add(name, help_)
        sp.add_argument("file")
        if name in ("chow", "hilbert"):
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--orbifold", action="store_true", help="orbifold ring (default)")
            g.add_argument("--coarse", action="store_true", help="coarse ring")
        if name == "multiply":
            sp.add_argument("--left", required=True, help="monomial such as u1*y2^2")
            sp.add_argument("--right", required=True, help="monomial such as y1")
    sp = add("selftest", "golden fixtures and property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random", type=int, default=20, help="number of random instances")
    sp.add_argument("--samples", type=int, default=1000, help="associativity samples per instance")
    return p


def _emit(args, data, lines, out) -> None:
    if args.json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + ("\n" if lines else ""))


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "selftest":
        report = selftest(args.seed, args.random, args.samples)
        lines = [f"{k}: {'PASS' if v['ok'] else 'FAIL'}" for k, v in report["golden"].items()]
        for k, v in report["suites"].items():
            lines.append(f"{k}: {'PASS' if v['ok'] else 'FAIL'} ({v['instances']} instances)")
            lines += [f"  {f}" for f in v["failures"][:5]]
        _emit(args, report, lines, out)
        return EXIT_OK if report["ok"] else EXIT_INVALID

    try:
        doc = parse(args.file)
    except OSError as exc:
        err.write(f"hyperchow: cannot read {args.file}: {exc.strerror or exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        err.write(f"hyperchow: {args.file}: {exc}\n")
        return EXIT_USAGE

    report = doc.validate()
    if args.command == "validate":
        data = {"ok": report.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks]}
        _emit(args, data, report.lines(), out)
        return EXIT_OK if report.ok else EXIT_INVALID
    if not report.ok:
        for line in report.lines():
            if ": FAIL" in line:
                err.write(f"hyperchow: {line}\n")
        return EXIT_INVALID

    A = doc.arrangement()
    fn = COMMANDS[args.command][0]
    try:
        data, lines = fn(A, args)
    except UsageError as exc:
        err.write(f"hyperchow: {exc}\n")
        return EXIT_USAGE
    _emit(args, data, lines, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
