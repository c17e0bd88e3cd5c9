"""Colored welded tangle diagrams: data model, parser, validator, moves.

A diagram is stored combinatorially: arcs with their begin/end anchors,
classical crossings (sign, over arc, under-in/under-out arcs), virtual
crossings (recorded but inert), and division points.  No planar embedding
is kept, and no ordering of crossings along an arc: two diagrams related
by over-commutation or detour rerouting are literally equal data.

Conventions:
  * every boundary anchor b1..b2n lies on its own arc, so a crossing-free
    strand is two arcs joined by a division point;
  * crossing-free closed circles are two arcs joined by two points;
  * virtual crossings do not divide arcs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

__all__ = [
    "Arc", "Crossing", "VirtualCrossing", "Point", "WeldedDiagram",
    "WirtingerPresentation", "DiagramError", "DiagramSyntaxError",
    "DiagramValidationError", "MovePatternError",
    "parse_diagram", "serialize_diagram", "wirtinger", "apply_move",
    "braid_diagram", "close_braid_11", "trivial_strand",
]


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class DiagramValidationError(DiagramError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class MovePatternError(DiagramError):
    pass


@dataclass(frozen=True)
class Arc:
    id: str
    start: str  # "bN", crossing id, or point id
    end: str


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int  # +1 or -1
    over: str
    under_in: str
    under_out: str


@dataclass(frozen=True)
class VirtualCrossing:
    id: str
    a: str
    b: str


@dataclass(frozen=True)
class Point:
    id: str
    in_arc: str
    out_arc: str


_BOUNDARY_RE = re.compile(r"^b(\d+)$")


def is_boundary_ref(ref: str) -> bool:
    return bool(_BOUNDARY_RE.match(ref))


def boundary_index(ref: str) -> int:
    m = _BOUNDARY_RE.match(ref)
    if not m:
        raise DiagramError(f"{ref!r} is not a boundary anchor")
    return int(m.group(1))


@dataclass(frozen=True)
class WeldedDiagram:
    name: str
    boundary_count: int  # 2n
    arcs: tuple = ()
    crossings: tuple = ()
    vxings: tuple = ()
    points: tuple = ()
    colors: tuple = ()  # pairs (arc id, variable index 1..mu)
    mu: int = 0  # 0 means "max color used"

    # -- indexed access ----------------------------------------------

    def arc_map(self) -> dict:
        return {a.id: a for a in self.arcs}

    def color_map(self) -> dict:
        return dict(self.colors)

    @property
    def n(self) -> int:
        return self.boundary_count // 2

    @property
    def num_vars(self) -> int:
        if self.mu:
            return self.mu
        return max((c for _, c in self.colors), default=1)

    def boundary_arcs(self) -> list:
        """Arc ids indexed by boundary anchor, position i-1 holds bi's arc."""
        out = [None] * self.boundary_count
        for a in self.arcs:
            for ref in (a.start, a.end):
                if is_boundary_ref(ref):
                    i = boundary_index(ref)
                    if 1 <= i <= self.boundary_count and out[i - 1] is None:
                        out[i - 1] = a.id
        return out

    def internal_arcs(self) -> list:
        """Internal arc ids in canonical (lexicographic) order."""
        boundary = set(a for a in self.boundary_arcs() if a)
        return sorted(a.id for a in self.arcs if a.id not in boundary)

    @property
    def p(self) -> int:
        return len(self.internal_arcs())

    def column_order(self) -> list:
        """Canonical column order: internal arcs (lex), then boundary arcs
        by boundary index."""
        return self.internal_arcs() + [a for a in self.boundary_arcs() if a]

    # -- strand structure --------------------------------------------

    def successor(self, arc_id: str):
        """The arc following `arc_id` along its strand, or None at the
        boundary."""
        arcs = self.arc_map()
        end = arcs[arc_id].end
        if is_boundary_ref(end):
            return None
        for x in self.crossings:
            if x.id == end and x.under_in == arc_id:
                return x.under_out
        for pt in self.points:
            if pt.id == end and pt.in_arc == arc_id:
                return pt.out_arc
        return None

    def strands(self) -> list:
        """Connected components as lists of arc ids.

        Open strands are listed from their boundary-in arc; circles start
        at their lexicographically least arc.
        """
        arcs = self.arc_map()
        succ = {a: self.successor(a) for a in arcs}
        pred = {}
        for a, s in succ.items():
            if s is not None:
                pred[s] = a
        seen = set()
        components = []
        starts = sorted(a.id for a in self.arcs
                        if is_boundary_ref(a.start) or a.id not in pred)
        for start in starts:
            if start in seen:
                continue
            chain = []
            cur = start
            while cur is not None and cur not in seen:
                chain.append(cur)
                seen.add(cur)
                cur = succ.get(cur)  # missing arcs caught by validate()
            components.append(chain)
        # remaining arcs belong to circles
        for a in sorted(arcs):
            if a in seen:
                continue
            chain = []
            cur = a
            while cur is not None and cur not in seen:
                chain.append(cur)
                seen.add(cur)
                cur = succ.get(cur)
            components.append(chain)
        return components

    # -- validation --------------------------------------------------

    def validate(self) -> list:
        v = []
        arcs = self.arc_map()
        if self.boundary_count % 2:
            v.append(f"odd boundary count {self.boundary_count}")
        if len(arcs) != len(self.arcs):
            v.append("duplicate arc ids")
        node_ids = [x.id for x in self.crossings] + \
            [p.id for p in self.points] + [w.id for w in self.vxings]
        if len(set(node_ids)) != len(node_ids):
            v.append("crossing/point/vxing ids are not pairwise distinct")

        # boundary anchors each used exactly once, as the right role
        uses: dict[int, list] = {}
        for a in self.arcs:
            for ref, role in ((a.start, "start"), (a.end, "end")):
                if is_boundary_ref(ref):
                    uses.setdefault(boundary_index(ref), []).append(
                        (a.id, role))
        for i in range(1, self.boundary_count + 1):
            got = uses.get(i, [])
            if len(got) != 1:
                v.append(f"boundary anchor b{i} used {len(got)} times")
        for i in uses:
            if not 1 <= i <= self.boundary_count:
                v.append(f"boundary anchor b{i} out of range")
        for a in self.arcs:
            if is_boundary_ref(a.start) and is_boundary_ref(a.end):
                v.append(f"arc {a.id} spans two boundary anchors")

        # arc begin/end anchors consistent with node records
        begin_of = {}
        end_of = {}
        for x in self.crossings:
            begin_of[x.id] = x.under_out
            end_of[x.id] = x.under_in
            for aid, what in ((x.over, "over"), (x.under_in, "under-in"),
                              (x.under_out, "under-out")):
                if aid not in arcs:
                    v.append(f"crossing {x.id}: unknown {what} arc {aid}")
            if abs(x.sign) != 1:
                v.append(f"crossing {x.id}: bad sign {x.sign}")
        for pt in self.points:
            begin_of[pt.id] = pt.out_arc
            end_of[pt.id] = pt.in_arc
            for aid in (pt.in_arc, pt.out_arc):
                if aid not in arcs:
                    v.append(f"point {pt.id}: unknown arc {aid}")
        for w in self.vxings:
            for aid in (w.a, w.b):
                if aid not in arcs:
                    v.append(f"vxing {w.id}: unknown arc {aid}")
        for a in self.arcs:
            if not is_boundary_ref(a.start):
                if begin_of.get(a.start) != a.id:
                    v.append(f"arc {a.id}: start anchor {a.start} does not "
                             f"emit it")
            if not is_boundary_ref(a.end):
                if end_of.get(a.end) != a.id:
                    v.append(f"arc {a.id}: end anchor {a.end} does not "
                             f"absorb it")

        # colors: defined, in range, constant along strands
        cmap = self.color_map()
        mu = self.num_vars
        for a in arcs:
            if a not in cmap:
                v.append(f"arc {a} has no color")
            elif not 1 <= cmap[a] <= mu:
                v.append(f"arc {a}: color {cmap[a]} out of range 1..{mu}")
        if not v:
            for chain in self.strands():
                cols = {cmap[a] for a in chain}
                if len(cols) > 1:
                    v.append(f"strand through {chain[0]} has mixed colors "
                             f"{sorted(cols)}")
        return v

    def require_valid(self) -> "WeldedDiagram":
        v = self.validate()
        if v:
            raise DiagramValidationError(v)
        return self


# ---------------------------------------------------------------------------
# text and JSON formats


def parse_diagram(text: str) -> WeldedDiagram:
    text = text.strip()
    if text.startswith("{"):
        return diagram_from_json(json.loads(text))
    name = None
    boundary = None
    mu = 0
    arcs, crossings, vxings, points, colors = [], [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            attrs = dict(f.split("=", 1) for f in fields[2:] if "=" in f)
            if kind == "tangle":
                name = fields[1]
                boundary = int(attrs["boundary"])
                mu = int(attrs.get("mu", 0))
            elif kind == "arc":
                arcs.append(Arc(fields[1], attrs["from"], attrs["to"]))
            elif kind == "xing":
                sign = {"+": 1, "-": -1}[attrs["sign"]]
                crossings.append(Crossing(fields[1], sign, attrs["over"],
                                          attrs["in"], attrs["out"]))
            elif kind == "vxing":
                vxings.append(VirtualCrossing(fields[1], attrs["a"],
                                              attrs["b"]))
            elif kind == "point":
                points.append(Point(fields[1], attrs["in"], attrs["out"]))
            elif kind == "color":
                colors.append((fields[1], int(fields[2])))
            else:
                raise DiagramSyntaxError(f"unknown directive {kind!r}",
                                         lineno)
        except (KeyError, IndexError, ValueError) as exc:
            if isinstance(exc, DiagramSyntaxError):
                raise
            raise DiagramSyntaxError(f"malformed {kind!r} line: {exc}",
                                     lineno) from exc
    if name is None or boundary is None:
        raise DiagramSyntaxError("missing 'tangle <name> boundary=2n' header")
    d = WeldedDiagram(name, boundary, tuple(arcs), tuple(crossings),
                      tuple(vxings), tuple(points), (), mu)
    d = replace(d, colors=tuple(_propagate_colors(d, colors)))
    return d


def _propagate_colors(d: WeldedDiagram, seeds) -> list:
    """Extend per-arc color seeds along strands; conflicts surface later in
    validate()."""
    cmap = {}
    chains = d.strands()
    chain_of = {}
    for chain in chains:
        for a in chain:
            chain_of[a] = tuple(chain)
    for arc_id, col in seeds:
        for member in chain_of.get(arc_id, (arc_id,)):
            if member in cmap and cmap[member] != col:
                cmap[member] = col  # conflict kept; validate() reports it
            else:
                cmap.setdefault(member, col)
    # direct seeds win over propagation
    for arc_id, col in seeds:
        cmap[arc_id] = col
    return sorted(cmap.items())


def serialize_diagram(d: WeldedDiagram) -> str:
    lines = [f"tangle {d.name} boundary={d.boundary_count}"
             + (f" mu={d.mu}" if d.mu else "")]
    for aid, col in sorted(d.colors):
        lines.append(f"color {aid} {col}")
    for a in d.arcs:
        lines.append(f"arc {a.id} from={a.start} to={a.end}")
    for x in d.crossings:
        s = "+" if x.sign > 0 else "-"
        lines.append(f"xing {x.id} sign={s} over={x.over} "
                     f"in={x.under_in} out={x.under_out}")
    for w in d.vxings:
        lines.append(f"vxing {w.id} a={w.a} b={w.b}")
    for pt in d.points:
        lines.append(f"point {pt.id} in={pt.in_arc} out={pt.out_arc}")
    return "\n".join(lines) + "\n"


def diagram_to_json(d: WeldedDiagram) -> dict:
    return {
        "tangle": d.name,
        "boundary": d.boundary_count,
        "mu": d.mu,
        "colors": [[a, c] for a, c in d.colors],
        "arcs": [{"id": a.id, "from": a.start, "to": a.end} for a in d.arcs],
        "xings": [{"id": x.id, "sign": x.sign, "over": x.over,
                   "in": x.under_in, "out": x.under_out}
                  for x in d.crossings],
        "vxings": [{"id": w.id, "a": w.a, "b": w.b} for w in d.vxings],
        "points": [{"id": p.id, "in": p.in_arc, "out": p.out_arc}
                   for p in d.points],
    }


def diagram_from_json(obj: dict) -> WeldedDiagram:
    try:
        d = WeldedDiagram(
            obj["tangle"], int(obj["boundary"]),
            tuple(Arc(a["id"], a["from"], a["to"]) for a in obj.get("arcs", [])),
            tuple(Crossing(x["id"], int(x["sign"]), x["over"], x["in"],
                           x["out"]) for x in obj.get("xings", [])),
            tuple(VirtualCrossing(w["id"], w["a"], w["b"])
                  for w in obj.get("vxings", [])),
            tuple(Point(p["id"], p["in"], p["out"])
                  for p in obj.get("points", [])),
            (), int(obj.get("mu", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramSyntaxError(f"malformed JSON diagram: {exc}") from exc
    seeds = [(a, int(c)) for a, c in obj.get("colors", [])]
    return replace(d, colors=tuple(_propagate_colors(d, seeds)))


# ---------------------------------------------------------------------------
# Wirtinger presentation


@dataclass(frozen=True)
class WirtingerPresentation:
    """Group presentation: generators are arcs, relation words are tuples
    of (generator, exponent) pairs, each word representing the identity."""

    generators: tuple
    relations: tuple  # of (label, word) pairs


def wirtinger(d: WeldedDiagram) -> WirtingerPresentation:
    d.require_valid()
    gens = tuple(d.column_order())
    rels = []
    for x in d.crossings:
        b, a, c = x.over, x.under_in, x.under_out
        if x.sign > 0:
            # c = b^-1 a b
            word = ((b, -1), (a, 1), (b, 1), (c, -1))
        else:
            # c = b a b^-1
            word = ((b, 1), (a, 1), (b, -1), (c, -1))
        rels.append((x.id, word))
    for pt in d.points:
        rels.append((pt.id, ((pt.in_arc, 1), (pt.out_arc, -1))))
    return WirtingerPresentation(gens, tuple(rels))


# ---------------------------------------------------------------------------
# generalized Reidemeister moves


def _fresh(prefix: str, taken: set) -> str:
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    taken.add(f"{prefix}{i}")
    return f"{prefix}{i}"


def _all_ids(d: WeldedDiagram) -> set:
    ids = {a.id for a in d.arcs}
    ids |= {x.id for x in d.crossings}
    ids |= {p.id for p in d.points}
    ids |= {w.id for w in d.vxings}
    return ids


def _repoint_end_consumer(d: WeldedDiagram, old_arc: str, new_arc: str):
    """Retarget whatever consumed old_arc's end so it consumes new_arc.
    Returns updated (crossings, points) tuples."""
    crossings = []
    for x in d.crossings:
        if x.under_in == old_arc:
            x = replace(x, under_in=new_arc)
        crossings.append(x)
    points = []
    for pt in d.points:
        if pt.in_arc == old_arc:
            pt = replace(pt, in_arc=new_arc)
        points.append(pt)
    return tuple(crossings), tuple(points)


def _split_if_boundary_spanning(d: WeldedDiagram,
                                arc_id: str) -> WeldedDiagram:
    """Re-divide an arc that ended up touching the boundary at both ends
    (removal moves can merge a whole uncrossed strand into one arc)."""
    arcs = d.arc_map()
    a = arcs[arc_id]
    if not (is_boundary_ref(a.start) and is_boundary_ref(a.end)):
        return d
    taken = _all_ids(d)
    pid = _fresh("p", taken)
    tail = _fresh(arc_id + "_s", taken)
    new_arcs = tuple(x for x in d.arcs if x.id != arc_id) + (
        Arc(arc_id, a.start, pid), Arc(tail, pid, a.end))
    col = d.color_map()[arc_id]
    return replace(d, arcs=new_arcs,
                   points=d.points + (Point(pid, arc_id, tail),),
                   colors=tuple(sorted(dict(d.colors,
                                            **{tail: col}).items())))


def r1_insert(d: WeldedDiagram, arc_id: str, sign: int = 1,
              over_first: bool = True) -> WeldedDiagram:
    """Insert a kink at the end of `arc_id`.

    over_first=True makes the existing arc the over strand of the new
    crossing; otherwise the freshly created arc is over.
    """
    arcs = d.arc_map()
    if arc_id not in arcs:
        raise MovePatternError(f"no arc {arc_id}")
    taken = _all_ids(d)
    xid = _fresh("rx", taken)
    new_arc = _fresh(arc_id + "_k", taken)
    old = arcs[arc_id]
    crossings, points = _repoint_end_consumer(d, arc_id, new_arc)
    new_arcs = tuple(a for a in d.arcs if a.id != arc_id) + (
        Arc(arc_id, old.start, xid), Arc(new_arc, xid, old.end))
    over = arc_id if over_first else new_arc
    crossings = crossings + (
        Crossing(xid, 1 if sign >= 0 else -1, over, arc_id, new_arc),)
    col = d.color_map()[arc_id]
    return replace(d, arcs=new_arcs, crossings=crossings, points=points,
                   colors=tuple(sorted(dict(d.colors, **{new_arc: col})
                                       .items())))


def r1_remove(d: WeldedDiagram, xing_id: str) -> WeldedDiagram:
    """Remove a kink: a crossing whose over arc is its own under arc."""
    x = next((x for x in d.crossings if x.id == xing_id), None)
    if x is None:
        raise MovePatternError(f"no crossing {xing_id}")
    if x.over not in (x.under_in, x.under_out):
        raise MovePatternError(f"crossing {xing_id} is not a kink")
    if x.under_in == x.under_out:
        raise MovePatternError(f"crossing {xing_id} closes a 1-arc circle")
    a_in, a_out = x.under_in, x.under_out
    arcs = d.arc_map()
    # merge a_out into a_in
    merged = Arc(a_in, arcs[a_in].start, arcs[a_out].end)
    crossings = tuple(c for c in d.crossings if c.id != xing_id)
    new_crossings = []
    for c in crossings:
        upd = {}
        if c.over == a_out:
            upd["over"] = a_in
        if c.under_in == a_out:
            upd["under_in"] = a_in
        new_crossings.append(replace(c, **upd) if upd else c)
    points = []
    for pt in d.points:
        if pt.in_arc == a_out:
            pt = replace(pt, in_arc=a_in)
        points.append(pt)
    vxings = []
    for w in d.vxings:
        w = replace(w, a=a_in if w.a == a_out else w.a,
                    b=a_in if w.b == a_out else w.b)
        vxings.append(w)
    new_arcs = tuple(a for a in d.arcs if a.id not in (a_in, a_out)) + (merged,)
    colors = {a: c for a, c in d.colors if a != a_out}
    out = replace(d, arcs=new_arcs, crossings=tuple(new_crossings),
                  points=tuple(points), vxings=tuple(vxings),
                  colors=tuple(sorted(colors.items())))
    return _split_if_boundary_spanning(out, a_in)


def r2_insert(d: WeldedDiagram, over_arc: str, under_arc: str,
              sign: int = 1) -> WeldedDiagram:
    """Slide `over_arc` across `under_arc`: two cancelling crossings.

    Any pair of distinct arcs is allowed; in the welded category the two
    arcs can always be brought together by detour moves, which this data
    model does not record.
    """
    arcs = d.arc_map()
    if over_arc not in arcs or under_arc not in arcs:
        raise MovePatternError("unknown arc")
    if over_arc == under_arc:
        raise MovePatternError("R2 needs two distinct arcs")
    taken = _all_ids(d)
    x1 = _fresh("rx", taken)
    x2 = _fresh("rx", taken)
    b2 = _fresh(under_arc + "_r", taken)
    b3 = _fresh(under_arc + "_r", taken)
    old = arcs[under_arc]
    s = 1 if sign >= 0 else -1
    crossings, points = _repoint_end_consumer(d, under_arc, b3)
    new_arcs = tuple(a for a in d.arcs if a.id != under_arc) + (
        Arc(under_arc, old.start, x1), Arc(b2, x1, x2), Arc(b3, x2, old.end))
    crossings = crossings + (
        Crossing(x1, s, over_arc, under_arc, b2),
        Crossing(x2, -s, over_arc, b2, b3))
    col = d.color_map()[under_arc]
    colors = dict(d.colors)
    colors[b2] = col
    colors[b3] = col
    return replace(d, arcs=new_arcs, crossings=crossings, points=points,
                   colors=tuple(sorted(colors.items())))


def r2_remove(d: WeldedDiagram, x1_id: str, x2_id: str) -> WeldedDiagram:
    """Cancel two crossings forming an R2 pair (same over arc, opposite
    signs, consecutive on the under strand)."""
    cmap = {x.id: x for x in d.crossings}
    if x1_id not in cmap or x2_id not in cmap:
        raise MovePatternError("unknown crossing")
    x1, x2 = cmap[x1_id], cmap[x2_id]
    if (x1.over != x2.over or x1.sign != -x2.sign
            or x1.under_out != x2.under_in):
        raise MovePatternError(
            f"crossings {x1_id},{x2_id} do not form an R2 pair")
    arcs = d.arc_map()
    b1, b2, b3 = x1.under_in, x1.under_out, x2.under_out
    if len({b1, b2, b3}) != 3:
        raise MovePatternError("degenerate R2 pattern")
    merged = Arc(b1, arcs[b1].start, arcs[b3].end)
    crossings = [c for c in d.crossings if c.id not in (x1_id, x2_id)]
    out = []
    for c in crossings:
        upd = {}
        if c.over in (b2, b3):
            upd["over"] = b1
        if c.under_in == b3:
            upd["under_in"] = b1
        out.append(replace(c, **upd) if upd else c)
    points = []
    for pt in d.points:
        if pt.in_arc == b3:
            pt = replace(pt, in_arc=b1)
        points.append(pt)
    vxings = []
    for w in d.vxings:
        w = replace(w, a=b1 if w.a in (b2, b3) else w.a,
                    b=b1 if w.b in (b2, b3) else w.b)
        vxings.append(w)
    new_arcs = tuple(a for a in d.arcs if a.id not in (b1, b2, b3)) + (merged,)
    colors = {a: c for a, c in d.colors if a not in (b2, b3)}
    res = replace(d, arcs=new_arcs, crossings=tuple(out),
                  points=tuple(points), vxings=tuple(vxings),
                  colors=tuple(sorted(colors.items())))
    return _split_if_boundary_spanning(res, b1)


def r3_slide(d: WeldedDiagram, x_tm: str, x_tb: str, x_mb: str) -> WeldedDiagram:
    """Slide the bottom strand across the top-middle crossing.

    Pattern: x_tm crosses strand T over strand M (arcs m1 -> m2); strand B
    passes under M at x_mb then under T at x_tb.  For a positive x_tm the
    B strand meets M on the m1 side before the move and the m2 side after;
    for a negative x_tm the sides are exchanged.
    """
    cmap = {x.id: x for x in d.crossings}
    try:
        tm, tb, mb = cmap[x_tm], cmap[x_tb], cmap[x_mb]
    except KeyError as exc:
        raise MovePatternError(f"unknown crossing {exc}") from exc
    t_arc = tm.over
    m1, m2 = tm.under_in, tm.under_out
    if tb.over != t_arc:
        raise MovePatternError("x_tb is not an undercrossing of the T strand")
    before_side = m1 if tm.sign > 0 else m2
    after_side = m2 if tm.sign > 0 else m1
    if mb.over != before_side:
        raise MovePatternError(
            f"x_mb over arc {mb.over} is not on the expected side "
            f"({before_side}) of the T/M crossing")
    if mb.under_out != tb.under_in:
        raise MovePatternError("B strand does not pass under M then T")
    b1, b2, b3 = mb.under_in, mb.under_out, tb.under_out
    crossings = []
    for c in d.crossings:
        if c.id == x_tb:
            crossings.append(replace(c, under_in=b1, under_out=b2))
        elif c.id == x_mb:
            crossings.append(replace(c, over=after_side, under_in=b2,
                                     under_out=b3))
        else:
            crossings.append(c)
    # the B arcs now thread through the two crossings in the other order
    arcs = {a.id: a for a in d.arcs}
    arcs[b1] = replace(arcs[b1], end=x_tb)
    arcs[b2] = replace(arcs[b2], start=x_tb, end=x_mb)
    arcs[b3] = replace(arcs[b3], start=x_mb)
    return replace(d, crossings=tuple(crossings),
                   arcs=tuple(arcs.values()))


def v_insert(d: WeldedDiagram, arc_a: str, arc_b: str) -> WeldedDiagram:
    """Insert a virtual crossing record (V-moves are invisible to the
    algebra; this covers V1 with arc_a == arc_b)."""
    arcs = d.arc_map()
    if arc_a not in arcs or arc_b not in arcs:
        raise MovePatternError("unknown arc")
    taken = _all_ids(d)
    wid = _fresh("v", taken)
    return replace(d, vxings=d.vxings + (VirtualCrossing(wid, arc_a, arc_b),))


def v_remove(d: WeldedDiagram, vxing_id: str) -> WeldedDiagram:
    if all(w.id != vxing_id for w in d.vxings):
        raise MovePatternError(f"no virtual crossing {vxing_id}")
    return replace(d, vxings=tuple(w for w in d.vxings if w.id != vxing_id))


def oc_swap(d: WeldedDiagram, x1_id: str, x2_id: str) -> WeldedDiagram:
    """Over-commutation: reorder two crossings sharing their over arc.

    The data model keeps no ordering along arcs, so this only permutes
    the stored crossing list.
    """
    cmap = {x.id: x for x in d.crossings}
    if x1_id not in cmap or x2_id not in cmap:
        raise MovePatternError("unknown crossing")
    if cmap[x1_id].over != cmap[x2_id].over:
        raise MovePatternError("crossings do not share an over arc")
    order = [x.id for x in d.crossings]
    i, j = order.index(x1_id), order.index(x2_id)
    order[i], order[j] = order[j], order[i]
    return replace(d, crossings=tuple(cmap[k] for k in order))


_MOVES = {
    "R1": lambda d, site: r1_insert(d, *site),
    "R1-": lambda d, site: r1_remove(d, *site),
    "R2": lambda d, site: r2_insert(d, *site),
    "R2-": lambda d, site: r2_remove(d, *site),
    "R3": lambda d, site: r3_slide(d, *site),
    "V1": lambda d, site: v_insert(d, site[0], site[0]),
    "V2": lambda d, site: v_insert(d, *site),
    "V3": lambda d, site: oc_like_noop(d),
    "mixed": lambda d, site: oc_like_noop(d),
    "V-": lambda d, site: v_remove(d, *site),
    "OC": lambda d, site: oc_swap(d, *site),
}


def oc_like_noop(d: WeldedDiagram) -> WeldedDiagram:
    """V3 and the mixed move permute virtual-crossing data that this model
    does not order; they return the diagram unchanged."""
    return replace(d)


def apply_move(d: WeldedDiagram, move: str, site=()) -> WeldedDiagram:
    if move not in _MOVES:
        raise MovePatternError(f"unknown move {move!r}")
    out = _MOVES[move](d, tuple(site))
    return out.require_valid()


# ---------------------------------------------------------------------------
# programmatic builders


def trivial_strand(color: int = 1, mu: int = 0,
                   name: str = "strand") -> WeldedDiagram:
    d = WeldedDiagram(
        name, 2,
        arcs=(Arc("a", "b1", "p1"), Arc("b", "p1", "b2")),
        points=(Point("p1", "a", "b"),),
        colors=(("a", color), ("b", color)),
        mu=mu)
    return d.require_valid()


def braid_diagram(word, strands: int, colors=None, mu: int = 0,
                  name: str = "braid") -> WeldedDiagram:
    """Welded braid diagram for a word in generators 1..strands-1.

    Entry +j is the positive generator (the strand entering at position j
    passes over its neighbour), -j its inverse.  Bottom boundary anchors
    are b1..bm, top anchors b(m+1)..b(2m) in position order.
    """
    m = strands
    if colors is None:
        colors = [1] * m
    if len(colors) != m:
        raise DiagramError("one color per strand required")
    arcs = {}
    crossings = []
    points = []
    colmap = {}
    # current arc occupying each position, and that arc's strand index
    cur = []
    for pos in range(1, m + 1):
        aid = f"s{pos}a0"
        arcs[aid] = ["b" + str(pos), None]  # start, end filled later
        colmap[aid] = colors[pos - 1]
        cur.append(aid)
    counts = [0] * m
    strand_of = {cur[i]: i for i in range(m)}
    for step, g in enumerate(word, start=1):
        j = abs(g)
        if not 1 <= j <= m - 1:
            raise DiagramError(f"generator {g} out of range")
        xid = f"x{step}"
        if g > 0:  # the strand entering at position j passes over
            over_arc, under_arc = cur[j - 1], cur[j]
        else:
            over_arc, under_arc = cur[j], cur[j - 1]
        si = strand_of[under_arc]
        counts[si] += 1
        new_under = f"s{si + 1}a{counts[si]}"
        arcs[under_arc][1] = xid
        arcs[new_under] = [xid, None]
        colmap[new_under] = colmap[under_arc]
        strand_of[new_under] = si
        crossings.append(Crossing(xid, 1 if g > 0 else -1, over_arc,
                                  under_arc, new_under))
        # the two strands trade positions
        if g > 0:
            cur[j - 1], cur[j] = new_under, over_arc
        else:
            cur[j - 1], cur[j] = over_arc, new_under
    # close off top boundary; strands that are still a single arc get a
    # division point so every boundary anchor has its own arc
    for pos in range(1, m + 1):
        aid = cur[pos - 1]
        si = strand_of[aid]
        if arcs[aid][0].startswith("b"):
            pid = f"p{pos}"
            counts[si] += 1
            new_arc = f"s{si + 1}a{counts[si]}"
            arcs[aid][1] = pid
            arcs[new_arc] = [pid, f"b{m + pos}"]
            colmap[new_arc] = colmap[aid]
            points.append(Point(pid, aid, new_arc))
        else:
            arcs[aid][1] = f"b{m + pos}"
    d = WeldedDiagram(
        name, 2 * m,
        arcs=tuple(Arc(a, s, e) for a, (s, e) in arcs.items()),
        crossings=tuple(crossings),
        points=tuple(points),
        colors=tuple(sorted(colmap.items())),
        mu=mu)
    return d.require_valid()


def close_braid_11(word, strands: int, colors=None, mu: int = 0,
                   name: str = "closure") -> WeldedDiagram:
    """Close all strands but the first of a braid, producing a
    (1-1)-tangle whose open strand runs bottom position 1 to top
    position 1."""
    d = braid_diagram(word, strands, colors, mu, name)
    m = strands
    arcs = {a.id: a for a in d.arcs}
    points = list(d.points)
    bmap = d.boundary_arcs()
    taken = _all_ids(d)
    for pos in range(2, m + 1):
        top_arc = bmap[m + pos - 1]
        bot_arc = bmap[pos - 1]
        pid = _fresh("cl", taken)
        arcs[top_arc] = replace(arcs[top_arc], end=pid)
        arcs[bot_arc] = replace(arcs[bot_arc], start=pid)
        points.append(Point(pid, top_arc, bot_arc))
    # renumber the two remaining anchors to b1, b2
    open_bot = bmap[0]
    open_top = bmap[m]
    arcs[open_bot] = replace(arcs[open_bot], start="b1")
    arcs[open_top] = replace(arcs[open_top], end="b2")
    d = replace(d, boundary_count=2, arcs=tuple(arcs.values()),
                points=tuple(points))
    return d.require_valid()
