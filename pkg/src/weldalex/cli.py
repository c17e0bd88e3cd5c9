"""Command line front end.

Subcommands:
    compute   invariant tensor of a tangle file
    alexpoly  Alexander polynomial of a (1-1)-tangle file
    burau     graded decomposition / Burau-Gassner matrix
    compose   glue tangles through a circuit, then compute
    compare   decide equality up to unit of two tensor files
    selftest  built-in fixture and property checks
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .ring import LaurentPoly, RingError, parse_poly
from .exterior import BasisSpec, ExteriorError, Tensor, equal_up_to_unit
from .diagram import DiagramError, apply_move, close_braid_11, parse_diagram
from .alexander import (AlexanderError, ColoredTangle, SplitSpec, alpha,
                        alexander_poly_11, build_matrix, burau_check,
                        burau_matrix, split_hom, strand_permutation)
from .circuit import (CircuitError, gamma, glue_tangles, parse_circuit)
from .randomgen import random_circuit, random_move, random_tangle, \
    random_tensor
from .textform import (format_matrix, format_tensor, matrix_to_json,
                       parse_tensor, tensor_from_json, tensor_to_json)

__all__ = ["main"]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_tangle(path: str, mu: int) -> ColoredTangle:
    d = parse_diagram(_read(path))
    d.require_valid()
    return ColoredTangle.of(d, mu)


def _emit_tensor(t: ColoredTangle, a: Tensor, fmt: str) -> None:
    normal, unit = a.normalize_unit()
    if fmt == "json":
        obj = tensor_to_json(normal)
        obj["name"] = t.diagram.name
        obj["unit_dropped"] = str(unit)
        print(json.dumps(obj, indent=2))
    else:
        print(format_tensor(normal))


def _cmd_compute(args) -> int:
    t = _load_tangle(args.file, args.mu)
    if args.matrix:
        m = build_matrix(t)
        if args.format == "json":
            print(json.dumps(matrix_to_json(m), indent=2))
        else:
            print(format_matrix(m))
        return 0
    _emit_tensor(t, alpha(t, fast=not args.slow), args.format)
    return 0


def _cmd_alexpoly(args) -> int:
    t = _load_tangle(args.file, args.mu)
    delta, _ = alexander_poly_11(t).normalize_unit()
    if args.format == "json":
        print(json.dumps({"name": t.diagram.name, "delta": str(delta)}))
    else:
        print(delta)
    return 0


def _parse_split(text: str) -> SplitSpec:
    try:
        n0, n1 = (int(x) for x in text.split(","))
    except ValueError:
        raise AlexanderError(f"--split wants n0,n1 — got {text!r}")
    return SplitSpec(n0, n1)


def _cmd_burau(args) -> int:
    if args.word is not None:
        word = [int(x) for x in args.word.split(",") if x.strip()]
        colors = [int(x) for x in args.colors.split(",")] \
            if args.colors else None
        m = burau_matrix(word, args.strands, colors, args.mu)
        if args.format == "json":
            print(json.dumps({
                "matrix": matrix_to_json(m),
                "permutation": list(strand_permutation(word, args.strands)),
            }, indent=2))
        else:
            print(format_matrix(m))
        return 0
    t = _load_tangle(args.file, args.mu)
    a = alpha(t)
    n = t.diagram.n
    spec = _parse_split(args.split) if args.split else SplitSpec(n, n)
    fam = split_hom(a, spec)
    if args.format == "json":
        out = {"name": t.diagram.name, "n0": spec.n0, "n1": spec.n1,
               "pieces": [{
                   "k": pc.k, "sign": pc.sign,
                   "rows": [list(s) for s in pc.rows],
                   "cols": [list(s) for s in pc.cols],
                   "entries": [[str(e) for e in row] for row in pc.matrix],
               } for pc in fam.pieces]}
        print(json.dumps(out, indent=2))
        return 0
    for pc in fam.pieces:
        print(f"k={pc.k}  sign={pc.sign:+d}")
        for r, s in enumerate(pc.rows):
            terms = ", ".join(f"({_subsets(T)}, {pc.matrix[r][c]})"
                              for c, T in enumerate(pc.cols)
                              if not pc.matrix[r][c].is_zero())
            print(f"  {_subsets(s)} -> {terms or '0'}")
    if spec.n0 == a.grade:
        print("rho1:")
        print(format_matrix(fam.rho1()))
    return 0


def _subsets(s) -> str:
    return "^".join(f"x{i}" for i in s) if s else "1"


def _cmd_compose(args) -> int:
    c = parse_circuit(_read(args.circuit))
    c.require_valid()
    tangles = [parse_diagram(_read(p)) for p in args.tangles]
    glued = glue_tangles(c, tangles)
    t = ColoredTangle.of(glued, args.mu or c.mu)
    _emit_tensor(t, alpha(t), args.format)
    return 0


def _lift(t: Tensor, rank: int, nvars: int) -> Tensor:
    coeffs = {}
    for s, c in t.coeffs.items():
        coeffs[s] = LaurentPoly(nvars, {
            tuple(e) + (0,) * (nvars - t.nvars): v
            for e, v in c.terms.items()})
    return Tensor(BasisSpec(rank), t.grade, nvars, coeffs)


def _load_tensor(path: str) -> Tensor:
    text = _read(path).strip()
    if text.startswith("{"):
        return tensor_from_json(json.loads(text))
    return parse_tensor(text)


def _cmd_compare(args) -> int:
    a, b = _load_tensor(args.a), _load_tensor(args.b)
    if a.grade != b.grade:
        print(f"not equal: grades {a.grade} vs {b.grade}")
        return 1
    rank = max(a.basis.rank, b.basis.rank)
    nvars = max(a.nvars, b.nvars)
    a, b = _lift(a, rank, nvars), _lift(b, rank, nvars)
    ok, witness = equal_up_to_unit(a, b)
    if ok:
        print(f"equal up to unit: {witness}")
        return 0
    print("not equal")
    return 1


# ---------------------------------------------------------------------------
# selftest


_SIGMA = """
tangle sigma boundary=4
color a 1
color b 1
arc a from=b1 to=p1
arc e from=p1 to=b4
arc b from=b2 to=X
arc f from=X to=b3
xing X sign=+ over=e in=b out=f
point p1 in=a out=e
"""

_SIGMA_ALPHA = ("(x1^x2, 1), (x1^x3, -t), (x1^x4, t - 1), "
                "(x2^x4, 1), (x3^x4, -t)")

_TAU = """
tangle tau boundary=6
color a 1
color b 1
color c 1
arc a from=b1 to=p2
arc e from=p2 to=b4
arc b from=b2 to=X
arc f from=X to=b3
arc c from=b5 to=p1
arc d from=p1 to=b6
xing X sign=+ over=a in=b out=f
point p1 in=c out=d
point p2 in=a out=e
vxing v1 a=d b=e
"""


def _selftest_fixtures(report) -> None:
    t = ColoredTangle.of(parse_diagram(_SIGMA), 1)
    want = parse_tensor(_SIGMA_ALPHA, rank=4, nvars=1)
    report("sigma alpha", equal_up_to_unit(alpha(t), want)[0])
    report("sigma slow path", alpha(t, fast=False).coeffs == alpha(t).coeffs)

    tau = ColoredTangle.of(parse_diagram(_TAU), 1)
    a = alpha(tau)
    report("tau grade", a.grade == 3 and a.basis.rank == 6)

    trefoil = ColoredTangle.of(close_braid_11([1, 1, 1], 2, [1, 1], mu=1), 1)
    delta, _ = alexander_poly_11(trefoil).normalize_unit()
    report("trefoil delta", str(delta) == "t^2 - t + 1")

    fig8 = ColoredTangle.of(
        close_braid_11([1, -2, 1, -2], 3, [1, 1, 1], mu=1), 1)
    delta, _ = alexander_poly_11(fig8).normalize_unit()
    report("figure-eight delta", str(delta) == "t^2 - 3*t + 1")

    rep = burau_check([1, -2], [2, 1, 1], 3, mu=1)
    report("burau multiplicative", rep.ok)


def _selftest_invariance(report, rng, trials: int) -> None:
    good = 0
    for _ in range(trials):
        d = random_tangle(rng)
        t = ColoredTangle.of(d)
        before = alpha(t)
        move, site = random_move(rng, d)
        after = alpha(ColoredTangle.of(apply_move(d, move, site), d.mu))
        if equal_up_to_unit(before, after)[0]:
            good += 1
    report(f"move invariance {good}/{trials}", good == trials)


def _selftest_operadicity(report, rng, trials: int) -> None:
    good = done = 0
    while done < trials:
        p1 = random_circuit(rng, name="L")
        disk = p1.disks[rng.randrange(len(p1.disks))]
        p2 = None
        for _ in range(50):
            cand = random_circuit(rng, name="R")
            if 2 * cand.n == disk.arity:
                p2 = cand
                break
        if p2 is None:
            continue
        try:
            from .circuit import compose_circuits
            comp = compose_circuits(p1, disk.id, p2)
        except CircuitError:
            continue
        tensors = {d.id: random_tensor(rng, BasisSpec(d.arity),
                                       d.arity // 2, 1)
                   for d in p1.disks if d.id != disk.id}
        tensors.update({d.id: random_tensor(rng, BasisSpec(d.arity),
                                            d.arity // 2, 1)
                        for d in p2.disks})
        lhs = gamma(comp, [tensors[d.id] for d in comp.disks])
        inner = gamma(p2, [tensors[d.id] for d in p2.disks])
        rhs = gamma(p1, [inner if d.id == disk.id else tensors[d.id]
                         for d in p1.disks])
        done += 1
        if equal_up_to_unit(lhs, rhs)[0]:
            good += 1
    report(f"operadicity {good}/{trials}", good == trials)


def _cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    results = []

    def report(name, ok):
        results.append((name, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {name}")

    _selftest_fixtures(report)
    _selftest_invariance(report, rng, args.trials)
    _selftest_operadicity(report, rng, max(1, args.trials // 5))
    failed = [n for n, ok in results if not ok]
    print(f"{len(results) - len(failed)} passed, {len(failed)} failed "
          f"(seed {args.seed})")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weldalex",
                                 description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--mu", type=int, default=0,
                       help="number of colors (default: from the file)")

    p = sub.add_parser("compute", help="invariant tensor of a tangle")
    p.add_argument("file")
    p.add_argument("--matrix", action="store_true",
                   help="print the presentation matrix instead")
    p.add_argument("--slow", action="store_true",
                   help="per-minor determinants (no shared elimination)")
    common(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("alexpoly",
                       help="Alexander polynomial of a (1-1)-tangle")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_alexpoly)

    p = sub.add_parser("burau", help="graded pieces / Burau-Gassner matrix")
    p.add_argument("file", nargs="?",
                   help="tangle file (omit when using --word)")
    p.add_argument("--split", help="n0,n1 boundary split (default n,n)")
    p.add_argument("--word", help="braid word, e.g. 1,-2,1")
    p.add_argument("--strands", type=int, default=2)
    p.add_argument("--colors", help="strand colors for --word, e.g. 1,1,2")
    common(p)
    p.set_defaults(func=_cmd_burau)

    p = sub.add_parser("compose",
                       help="glue tangles through a circuit and compute")
    p.add_argument("circuit")
    p.add_argument("tangles", nargs="+",
                   help="tangle files, one per disk in declaration order")
    common(p)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("compare",
                       help="equality up to unit of two tensor files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("selftest", help="built-in checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "burau" and args.file is None and args.word is None:
        print("burau: need a tangle file or --word", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (RingError, ExteriorError, DiagramError, AlexanderError,
            CircuitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
