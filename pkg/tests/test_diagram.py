import random

import pytest

from weldalex import (ColoredTangle, DiagramValidationError,
                      MovePatternError, alpha, apply_move, braid_diagram,
                      close_braid_11, diagram_from_json, diagram_to_json,
                      equal_up_to_unit, parse_diagram, serialize_diagram,
                      trivial_strand)
from weldalex.randomgen import applicable_moves, random_move, random_tangle
from conftest import FIXTURES
from oracles import braid_permutation


def test_parse_serialize_roundtrip():
    for f in FIXTURES.glob("*.tangle"):
        d = parse_diagram(f.read_text())
        d.require_valid()
        d2 = parse_diagram(serialize_diagram(d))
        assert d2 == d
        assert diagram_from_json(diagram_to_json(d)) == d


def test_parse_json_sniffing():
    import json
    d = parse_diagram((FIXTURES / "sigma.tangle").read_text())
    assert parse_diagram(json.dumps(diagram_to_json(d))) == d


def test_validation_rejects_broken_diagrams():
    good = (FIXTURES / "sigma.tangle").read_text()
    bad_cases = [
        good.replace("arc f from=X to=b3\n", ""),          # dangling xing
        good.replace("to=b4", "to=b3"),                    # boundary reused
        good.replace("color b 1\n", ""),                   # uncolored strand
        good.replace("over=e", "over=zzz"),                # unknown arc
    ]
    for text in bad_cases:
        with pytest.raises(DiagramValidationError):
            parse_diagram(text).require_valid()


def test_strand_color_propagation():
    d = parse_diagram((FIXTURES / "tau.tangle").read_text())
    cmap = d.color_map()
    # arcs a and e form one strand through the division point p2
    assert cmap["a"] == cmap["e"]
    assert cmap["c"] == cmap["d"]


def test_braid_builder_permutation():
    rng = random.Random(0)
    for _ in range(20):
        m = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, m - 1)
                for _ in range(rng.randint(0, 5))]
        d = braid_diagram(word, m, [1] * m, mu=1)
        d.require_valid()
        assert d.n == m
        from weldalex import strand_permutation
        assert strand_permutation(word, m) == \
            tuple(i + 1 for i in braid_permutation(word, m))


def test_trivial_strand():
    d = trivial_strand(1, mu=1)
    d.require_valid()
    assert d.n == 1 and not d.crossings


def test_close_braid_requires_cycle():
    # closure keeps strand 1 open; [1] on 2 strands is a full cycle
    d = close_braid_11([1], 2, [1, 1], mu=1)
    d.require_valid()
    assert d.n == 1


MOVED = [
    ("R1", lambda d: ("s1a0", 1, True)),
    ("V1", lambda d: ("s1a0",)),
]


def _alpha_of(d):
    return alpha(ColoredTangle.of(d))


def test_each_move_family_preserves_alpha():
    rng = random.Random(7)
    seen = set()
    for _ in range(150):
        d = random_tangle(rng)
        before = _alpha_of(d)
        move, site = random_move(rng, d)
        d2 = apply_move(d, move, site)
        d2.require_valid()
        assert equal_up_to_unit(before, _alpha_of(d2))[0], (move, site)
        seen.add(move)
    assert {"R1", "R2", "V1", "V2", "OC"} <= seen


def test_r3_slide_deterministic_site():
    d = braid_diagram([-1, 2, 1], 3, [1, 1, 1], mu=1)
    sites = [s for m, s in applicable_moves(d) if m == "R3"]
    assert ("x1", "x3", "x2") in sites
    before = _alpha_of(d)
    d2 = apply_move(d, "R3", ("x1", "x3", "x2"))
    d2.require_valid()
    assert equal_up_to_unit(before, _alpha_of(d2))[0]
    assert len(d2.crossings) == len(d.crossings)


def test_r2_insert_then_cancel():
    d = parse_diagram((FIXTURES / "sigma.tangle").read_text())
    before = _alpha_of(d)
    d2 = apply_move(d, "R2", ("a", "b", 1))
    new = [x.id for x in d2.crossings if x.id not in
           {x.id for x in d.crossings}]
    assert len(new) == 2
    sites = [s for m, s in applicable_moves(d2) if m == "R2-"
             and set(s) == set(new)]
    assert sites
    d3 = apply_move(d2, "R2-", sites[0])
    assert equal_up_to_unit(before, _alpha_of(d3))[0]


def test_move_pattern_errors():
    d = parse_diagram((FIXTURES / "sigma.tangle").read_text())
    with pytest.raises(MovePatternError):
        apply_move(d, "R1-", ("X",))  # X is not a kink
    with pytest.raises(MovePatternError):
        apply_move(d, "V-", ("nope",))


def test_virtual_moves_are_invisible_to_wirtinger():
    from weldalex.diagram import wirtinger
    d = parse_diagram((FIXTURES / "tau.tangle").read_text())
    d2 = apply_move(d, "V-", ("v1",))
    w1, w2 = wirtinger(d), wirtinger(d2)
    assert w1.relations == w2.relations
