"""Random diagrams, moves, circuits and tensors for the property suites.

Everything takes an explicit random.Random so runs are reproducible from
a seed.  Diagrams are built valid-by-construction: a random braid
(possibly closed to a (1-1)-tangle) warmed up with a few random moves.
"""

from __future__ import annotations

import itertools
import random

from .ring import LaurentPoly
from .exterior import BasisSpec, Tensor
from .diagram import (WeldedDiagram, apply_move, braid_diagram,
                      close_braid_11)
from .circuit import CircuitDiagram, Curve, Disk

__all__ = [
    "random_tangle", "applicable_moves", "random_move", "random_circuit",
    "random_tensor", "random_poly",
]


def random_poly(rng: random.Random, nvars: int, terms: int = 2,
                degree: int = 2) -> LaurentPoly:
    t = {}
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(-degree, degree) for _ in range(nvars))
        t[exps] = t.get(exps, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPoly(nvars, t)


def random_tensor(rng: random.Random, basis: BasisSpec, grade: int,
                  nvars: int, density: float = 0.5) -> Tensor:
    coeffs = {}
    for subset in itertools.combinations(range(1, basis.rank + 1), grade):
        if rng.random() < density:
            coeffs[subset] = random_poly(rng, nvars)
    if not coeffs:  # keep the suite away from trivial zero instances
        subset = tuple(sorted(rng.sample(range(1, basis.rank + 1), grade)))
        coeffs[subset] = LaurentPoly.one(nvars)
    return Tensor(basis, grade, nvars, coeffs)


def random_tangle(rng: random.Random, max_strands: int = 3,
                  max_word: int = 4, max_colors: int = 2,
                  warmup_moves: int = 2,
                  max_crossings: int = 8) -> WeldedDiagram:
    m = rng.randint(1, max_strands)
    word = [rng.choice([1, -1]) * rng.randint(1, m - 1)
            for _ in range(rng.randint(0, max_word))] if m > 1 else []
    mu = rng.randint(1, max_colors)
    colors = [rng.randint(1, mu) for _ in range(m)]
    if m > 1 and rng.random() < 0.3:
        # closing identifies all strand colors
        colors = [colors[0]] * m
        d = close_braid_11(word, m, colors, mu=mu)
    else:
        d = braid_diagram(word, m, colors, mu=mu)
    for _ in range(rng.randint(0, warmup_moves)):
        if len(d.crossings) >= max_crossings:
            break
        move, site = random_move(rng, d, grow_only=True)
        d = apply_move(d, move, site)
    return d


def applicable_moves(d: WeldedDiagram) -> list:
    """All (move, site) pairs applicable to the diagram."""
    out = []
    arc_ids = [a.id for a in d.arcs]
    for a in arc_ids:
        for sign in (1, -1):
            for over_first in (True, False):
                out.append(("R1", (a, sign, over_first)))
    for a in arc_ids:
        for b in arc_ids:
            if a != b:
                out.append(("R2", (a, b, 1)))
                out.append(("R2", (a, b, -1)))
    for x in d.crossings:
        if x.over in (x.under_in, x.under_out) \
                and x.under_in != x.under_out:
            out.append(("R1-", (x.id,)))
    cmap = {x.id: x for x in d.crossings}
    for x1, x2 in itertools.permutations(d.crossings, 2):
        if (x1.over == x2.over and x1.sign == -x2.sign
                and x1.under_out == x2.under_in
                and len({x1.under_in, x1.under_out, x2.under_out}) == 3):
            out.append(("R2-", (x1.id, x2.id)))
    for tm in d.crossings:
        before = tm.under_in if tm.sign > 0 else tm.under_out
        for tb in d.crossings:
            if tb is tm or tb.over != tm.over:
                continue
            for mb in d.crossings:
                if mb is tm or mb is tb:
                    continue
                if mb.over == before and mb.under_out == tb.under_in:
                    out.append(("R3", (tm.id, tb.id, mb.id)))
    for a in arc_ids:
        out.append(("V1", (a,)))
    for a, b in itertools.combinations(arc_ids, 2):
        out.append(("V2", (a, b)))
    for w in d.vxings:
        out.append(("V-", (w.id,)))
    for x1, x2 in itertools.combinations(d.crossings, 2):
        if x1.over == x2.over:
            out.append(("OC", (x1.id, x2.id)))
    out.append(("V3", ()))
    out.append(("mixed", ()))
    return out


def random_move(rng: random.Random, d: WeldedDiagram,
                grow_only: bool = False):
    moves = applicable_moves(d)
    if grow_only:
        moves = [m for m in moves if m[0] in ("R1", "R2", "V1", "V2")]
    # choose the move family first so rare patterns (R3, cancellations)
    # are exercised despite the huge number of R1/R2 sites
    families = sorted({m[0] for m in moves})
    fam = families[rng.randrange(len(families))]
    sites = [m for m in moves if m[0] == fam]
    return sites[rng.randrange(len(sites))]


def random_circuit(rng: random.Random, max_disks: int = 2,
                   max_n: int = 3, ncolors: int = 1,
                   name: str = "rand") -> CircuitDiagram:
    """A random perfect matching of marked points over 1..max_disks disks.

    Colors are constant per curve; a single color keeps glued diagrams
    automatically color-consistent.
    """
    while True:
        ndisks = rng.randint(1, max_disks)
        disks = [Disk(f"{name}_d{i}", 2 * rng.randint(1, max_n))
                 for i in range(1, ndisks + 1)]
        inner_pts = sum(d.arity for d in disks)
        # outer arity: even, at least keeping total matched and the
        # resulting grade non-negative
        n_low = max(1, sum(d.arity // 2 for d in disks) - inner_pts // 2)
        n = rng.randint(max(1, n_low), max_n + ndisks)
        total = inner_pts + 2 * n
        if total % 2 == 0:
            break
    pts = [("outer", k) for k in range(1, 2 * n + 1)]
    for d in disks:
        pts += [(d.id, k) for k in range(1, d.arity + 1)]
    rng.shuffle(pts)
    curves = []
    for i in range(0, len(pts), 2):
        (o1, k1), (o2, k2) = pts[i], pts[i + 1]
        color = rng.randint(1, ncolors)
        curves.append(Curve(f"c{i // 2 + 1}", color,
                            f"{o1}.p{k1}", f"{o2}.p{k2}"))
    return CircuitDiagram(name, 2 * n, tuple(disks), tuple(curves))
