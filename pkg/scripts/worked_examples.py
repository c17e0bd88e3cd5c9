#!/usr/bin/env python3
"""Walk through the worked fixtures: the one-crossing tangles, their
composition through circuits, and the Burau extraction.

Run from the repository root:  python3 scripts/worked_examples.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from weldalex import (ColoredTangle, SplitSpec, alexander_function, alpha,
                      build_matrix, equal_up_to_unit, format_matrix,
                      format_tensor, gamma, glue_tangles, parse_circuit,
                      parse_diagram, split_hom)

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def load(name):
    if name.endswith(".circuit"):
        return parse_circuit((FIXTURES / name).read_text())
    return ColoredTangle.of(parse_diagram((FIXTURES / name).read_text()))


def banner(title):
    print(f"\n=== {title} " + "=" * max(0, 60 - len(title)))


def main():
    sigma = load("sigma.tangle")
    tau = load("tau.tangle")
    beta = load("beta.tangle")

    banner("presentation matrices")
    for t in (sigma, tau):
        print(f"{t.diagram.name}:")
        print(format_matrix(build_matrix(t)))

    banner("invariant tensors")
    a_sigma, a_tau, a_beta = alpha(sigma), alpha(tau), alpha(beta)
    for t, a in ((sigma, a_sigma), (tau, a_tau), (beta, a_beta)):
        print(f"alpha({t.diagram.name}) = {format_tensor(a)}")

    banner("composition through circuits")
    p = load("P.circuit")
    q = load("Q.circuit")
    for name, out in (("gamma_P(alpha(sigma))", gamma(p, [a_sigma])),
                      ("gamma_Q(alpha(sigma) (x) alpha(beta))",
                       gamma(q, [a_sigma, a_beta]))):
        ok, unit = equal_up_to_unit(out, a_tau)
        print(f"{name} == alpha(tau) up to unit: {ok} (unit {unit})")

    banner("gluing tangles into the circuits")
    for c, parts in ((p, [sigma]), (q, [sigma, beta])):
        glued = glue_tangles(c, [t.diagram for t in parts])
        got = alpha(ColoredTangle.of(glued, 1))
        ok, unit = equal_up_to_unit(got, a_tau)
        print(f"alpha(glue({c.name}, ...)) == alpha(tau): {ok} "
              f"(unit {unit})")

    banner("Burau extraction from sigma")
    fam = split_hom(a_sigma, SplitSpec(2, 2))
    for pc in fam.pieces:
        print(f"k={pc.k} sign={pc.sign:+d} entries="
              + str([[str(e) for e in row] for row in pc.matrix]))
    print("rho1:")
    print(format_matrix(fam.rho1()))

    banner("two-variable Alexander function (one colored crossing)")
    ex22 = load("ex22.tangle")
    import itertools
    for s in itertools.combinations(range(1, 5), 2):
        print(f"A(x{s[0]} ^ x{s[1]}) = {alexander_function(ex22, s)}")


if __name__ == "__main__":
    main()
