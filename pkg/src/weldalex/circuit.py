"""Circuit diagrams: marked-point matchings, composition, the induced
map on invariant tensors, and gluing of tangle diagrams.

A circuit is stored purely combinatorially: an outer disk with 2n marked
points, inner disks with their arities, and colored curves giving a
perfect matching of all marked points.  Marked-point signs are recorded
and validated when declared, but the contraction treats every sign as +1;
the single global convention is pinned by the worked examples in the
test suite (invariants are compared up to unit anyway).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, replace

from .ring import LaurentPoly
from .exterior import BasisSpec, Matching, Tensor, contract_matched
from .diagram import (Arc, Point, WeldedDiagram, boundary_index,
                      is_boundary_ref)

__all__ = [
    "CircuitError", "CircuitSyntaxError", "CircuitValidationError",
    "CompositionError", "GluingError",
    "Disk", "Curve", "CircuitDiagram", "parse_circuit", "serialize_circuit",
    "circuit_to_json", "circuit_from_json", "identity_circuit",
    "compose_circuits", "wiring", "gamma", "glue_tangles", "canonical_form",
]


class CircuitError(ValueError):
    pass


class CircuitSyntaxError(CircuitError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class CircuitValidationError(CircuitError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CompositionError(CircuitError):
    pass


class GluingError(CircuitError):
    pass


@dataclass(frozen=True)
class Disk:
    id: str
    arity: int
    signs: tuple = ()  # optional, one ±1 per marked point


@dataclass(frozen=True)
class Curve:
    id: str
    color: int
    start: str  # endpoint ref: "outer.pK" or "<disk>.pK"
    end: str


_REF_RE = re.compile(r"^([A-Za-z0-9_]+)\.p(\d+)$")


def parse_ref(ref: str) -> tuple:
    m = _REF_RE.match(ref)
    if not m:
        raise CircuitError(f"bad endpoint reference {ref!r}")
    return m.group(1), int(m.group(2))


@dataclass(frozen=True)
class CircuitDiagram:
    name: str
    outer: int  # 2n marked points on the outer disk
    disks: tuple = ()
    curves: tuple = ()
    outer_signs: tuple = ()
    mu: int = 0

    @property
    def n(self) -> int:
        return self.outer // 2

    @property
    def num_vars(self) -> int:
        if self.mu:
            return self.mu
        return max((c.color for c in self.curves), default=1)

    def disk_map(self) -> dict:
        return {d.id: d for d in self.disks}

    def endpoint_curves(self) -> dict:
        """Map (owner, point) -> curve id; owner 'outer' or a disk id."""
        out = {}
        for c in self.curves:
            for ref in (c.start, c.end):
                key = parse_ref(ref)
                out.setdefault(key, []).append(c.id)
        return out

    def validate(self) -> list:
        v = []
        disks = self.disk_map()
        if len(disks) != len(self.disks):
            v.append("duplicate disk ids")
        if "outer" in disks:
            v.append("'outer' is a reserved disk name")
        if self.outer % 2:
            v.append(f"odd outer arity {self.outer}")
        for d in self.disks:
            if d.arity % 2:
                v.append(f"disk {d.id}: odd arity {d.arity}")
            if d.signs and len(d.signs) != d.arity:
                v.append(f"disk {d.id}: {len(d.signs)} signs for arity "
                         f"{d.arity}")
        if self.outer_signs and len(self.outer_signs) != self.outer:
            v.append("outer sign count does not match arity")
        cids = [c.id for c in self.curves]
        if len(set(cids)) != len(cids):
            v.append("duplicate curve ids")

        seen = {}
        for c in self.curves:
            if not 1 <= c.color:
                v.append(f"curve {c.id}: bad color {c.color}")
            for ref in (c.start, c.end):
                try:
                    owner, k = parse_ref(ref)
                except CircuitError as exc:
                    v.append(f"curve {c.id}: {exc}")
                    continue
                arity = self.outer if owner == "outer" else \
                    disks[owner].arity if owner in disks else None
                if arity is None:
                    v.append(f"curve {c.id}: unknown disk {owner!r}")
                elif not 1 <= k <= arity:
                    v.append(f"curve {c.id}: point {ref} out of range")
                else:
                    seen.setdefault((owner, k), []).append(c.id)
        points = [("outer", k) for k in range(1, self.outer + 1)]
        for d in self.disks:
            points += [(d.id, k) for k in range(1, d.arity + 1)]
        for ptk in points:
            got = seen.get(ptk, [])
            if len(got) != 1:
                v.append(f"marked point {ptk[0]}.p{ptk[1]} used "
                         f"{len(got)} times")

        # declared signs: a curve runs from a +(outgoing) to a -(incoming)
        def sign_at(owner, k):
            if owner == "outer":
                return self.outer_signs[k - 1] if self.outer_signs else None
            d = disks.get(owner)
            return d.signs[k - 1] if d and d.signs else None

        for c in self.curves:
            try:
                s0 = sign_at(*parse_ref(c.start))
                s1 = sign_at(*parse_ref(c.end))
            except CircuitError:
                continue
            if s0 == -1 or s1 == 1:
                v.append(f"curve {c.id}: orientation disagrees with "
                         f"declared marked-point signs")
        return v

    def require_valid(self) -> "CircuitDiagram":
        v = self.validate()
        if v:
            raise CircuitValidationError(v)
        return self


# ---------------------------------------------------------------------------
# text and JSON formats


def _parse_signs(text: str) -> tuple:
    if not set(text) <= {"+", "-"}:
        raise CircuitError(f"bad sign string {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def _fmt_signs(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def parse_circuit(text: str) -> CircuitDiagram:
    text = text.strip()
    if text.startswith("{"):
        return circuit_from_json(json.loads(text))
    name = None
    outer = None
    outer_signs = ()
    mu = 0
    disks, curves = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            attrs = dict(f.split("=", 1) for f in fields[2:] if "=" in f)
            if kind == "circuit":
                name = fields[1]
                outer = int(attrs["outer"])
                mu = int(attrs.get("mu", 0))
                if "signs" in attrs:
                    outer_signs = _parse_signs(attrs["signs"])
            elif kind == "disk":
                signs = _parse_signs(attrs["signs"]) if "signs" in attrs \
                    else ()
                disks.append(Disk(fields[1], int(attrs["arity"]), signs))
            elif kind == "curve":
                curves.append(Curve(fields[1], int(attrs["color"]),
                                    attrs["from"], attrs["to"]))
            else:
                raise CircuitSyntaxError(f"unknown directive {kind!r}",
                                         lineno)
        except (KeyError, IndexError, ValueError, CircuitError) as exc:
            if isinstance(exc, CircuitSyntaxError):
                raise
            raise CircuitSyntaxError(f"malformed {kind!r} line: {exc}",
                                     lineno) from exc
    if name is None or outer is None:
        raise CircuitSyntaxError("missing 'circuit <name> outer=2n' header")
    return CircuitDiagram(name, outer, tuple(disks), tuple(curves),
                          outer_signs, mu)


def serialize_circuit(c: CircuitDiagram) -> str:
    head = f"circuit {c.name} outer={c.outer}"
    if c.mu:
        head += f" mu={c.mu}"
    if c.outer_signs:
        head += f" signs={_fmt_signs(c.outer_signs)}"
    lines = [head]
    for d in c.disks:
        line = f"disk {d.id} arity={d.arity}"
        if d.signs:
            line += f" signs={_fmt_signs(d.signs)}"
        lines.append(line)
    for cv in c.curves:
        lines.append(f"curve {cv.id} color={cv.color} from={cv.start} "
                     f"to={cv.end}")
    return "\n".join(lines) + "\n"


def circuit_to_json(c: CircuitDiagram) -> dict:
    return {
        "circuit": c.name,
        "outer": c.outer,
        "mu": c.mu,
        "outer_signs": list(c.outer_signs),
        "disks": [{"id": d.id, "arity": d.arity, "signs": list(d.signs)}
                  for d in c.disks],
        "curves": [{"id": cv.id, "color": cv.color, "from": cv.start,
                    "to": cv.end} for cv in c.curves],
    }


def circuit_from_json(obj: dict) -> CircuitDiagram:
    try:
        return CircuitDiagram(
            obj["circuit"], int(obj["outer"]),
            tuple(Disk(d["id"], int(d["arity"]),
                       tuple(d.get("signs", ()))) for d in
                  obj.get("disks", [])),
            tuple(Curve(c["id"], int(c["color"]), c["from"], c["to"])
                  for c in obj.get("curves", [])),
            tuple(obj.get("outer_signs", ())),
            int(obj.get("mu", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise CircuitSyntaxError(f"malformed JSON circuit: {exc}") from exc


def identity_circuit(n: int, color: int = 1,
                     name: str = "identity") -> CircuitDiagram:
    """One disk of arity 2n, each point wired straight to the outer."""
    curves = tuple(Curve(f"c{k}", color, f"d.p{k}", f"outer.p{k}")
                   for k in range(1, 2 * n + 1))
    return CircuitDiagram(name, 2 * n, (Disk("d", 2 * n),), curves)


# ---------------------------------------------------------------------------
# composition


def compose_circuits(p1: CircuitDiagram, disk_id: str,
                     p2: CircuitDiagram) -> CircuitDiagram:
    """Plug circuit p2 into the named disk of p1.

    Outer point k of p2 is identified with point k of the disk; curves
    meeting there are concatenated.  A concatenation that closes up into
    a loop has no marked points left and cannot be represented: it
    raises CompositionError.
    """
    p1.require_valid()
    p2.require_valid()
    disks1 = p1.disk_map()
    if disk_id not in disks1:
        raise CompositionError(f"no disk {disk_id!r} in {p1.name}")
    hole = disks1[disk_id]
    if hole.arity != p2.outer:
        raise CompositionError(
            f"arity mismatch: disk {disk_id} has {hole.arity}, "
            f"{p2.name} has outer {p2.outer}")
    if hole.signs and p2.outer_signs and hole.signs != p2.outer_signs:
        raise CompositionError("marked-point signs disagree at the seam")

    # keep disk ids stable; rename only p2 disks that would collide
    kept = {d.id for d in p1.disks if d.id != disk_id}
    rename2 = {}
    for d in p2.disks:
        nid = d.id
        serial = 1
        while nid in kept or nid == disk_id:
            nid = f"{d.id}_{serial}"
            serial += 1
        rename2[d.id] = nid
        kept.add(nid)

    # seam connector: (seam, k) joins the hole's point k with p2's outer k
    edges = {}  # temp edge key -> (orig id, color, endpoint, endpoint)
    for c in p1.curves:
        ends = []
        for ref in (c.start, c.end):
            owner, k = parse_ref(ref)
            ends.append(("seam", k) if owner == disk_id else (owner, k))
        edges[f"L {c.id}"] = (c.id, c.color, ends[0], ends[1])
    for c in p2.curves:
        ends = []
        for ref in (c.start, c.end):
            owner, k = parse_ref(ref)
            ends.append(("seam", k) if owner == "outer"
                        else (rename2[owner], k))
        edges[f"R {c.id}"] = (c.id, c.color, ends[0], ends[1])

    # walk curve chains through seam points
    at_seam: dict[int, list] = {}
    for eid, (_, _, a, b) in edges.items():
        for side, pt in ((0, a), (1, b)):
            if pt[0] == "seam":
                at_seam.setdefault(pt[1], []).append((eid, side))
    for k, lst in at_seam.items():
        if len(lst) != 2:
            raise CompositionError(f"seam point p{k} matched {len(lst)} "
                                   f"times")

    merged = []
    used = set()
    for eid in edges:
        if eid in used:
            continue
        oid, color, a, b = edges[eid]
        chain = [oid]
        used.add(eid)
        # extend from both free ends across seam points
        endpoints = []
        for pt in (a, b):
            cur_edge, cur_pt = eid, pt
            while cur_pt[0] == "seam":
                nxt, side = next(e for e in at_seam[cur_pt[1]]
                                 if e[0] != cur_edge)
                if nxt in used:
                    raise CompositionError(
                        "composition closes a curve into a loop")
                used.add(nxt)
                noid, ncolor, na, nb = edges[nxt]
                chain.append(noid)
                if ncolor != color:
                    raise CompositionError(
                        f"color mismatch along glued curve ({color} vs "
                        f"{ncolor})")
                cur_edge = nxt
                cur_pt = nb if side == 0 else na
            endpoints.append(cur_pt)
        merged.append((chain, color, endpoints[0], endpoints[1]))

    new_disks = [d for d in p1.disks if d.id != disk_id]
    new_disks += [replace(d, id=rename2[d.id]) for d in p2.disks]
    new_curves = []
    taken_curve_ids = set()
    for chain, color, a, b in merged:
        cid = "~".join(chain)
        serial = 1
        while cid in taken_curve_ids:
            cid = "~".join(chain) + f"_{serial}"
            serial += 1
        taken_curve_ids.add(cid)
        new_curves.append(Curve(cid, color, f"{a[0]}.p{a[1]}",
                                f"{b[0]}.p{b[1]}"))
    out = CircuitDiagram(f"{p1.name}o{p2.name}", p1.outer,
                         tuple(new_disks), tuple(new_curves),
                         p1.outer_signs, max(p1.mu, p2.mu))
    return out.require_valid()


def canonical_form(c: CircuitDiagram):
    """Hashable structural normal form, independent of ids and of curve
    or disk declaration order.

    Disks are ordered by a connectivity signature (arity, then where each
    of their points leads); ambiguity between structurally identical
    disks is resolved arbitrarily but deterministically, which is exact
    for circuits whose disks are pairwise distinguishable.
    """
    c.require_valid()
    ends = {}
    for cv in c.curves:
        a = parse_ref(cv.start)
        b = parse_ref(cv.end)
        ends[a] = (b, cv.color, 1)
        ends[b] = (a, cv.color, -1)

    # initial disk keys by what their points connect to, coarsely
    def coarse(owner):
        return ("outer",) if owner == "outer" else \
            ("disk", c.disk_map()[owner].arity)

    keys = {}
    for d in c.disks:
        sig = []
        for k in range(1, d.arity + 1):
            (o2, k2), col, orient = ends[(d.id, k)]
            sig.append((coarse(o2), k2 if o2 == "outer" else 0, col, orient))
        keys[d.id] = (d.arity, tuple(sig))
    order = sorted(c.disks, key=lambda d: (keys[d.id], d.id))
    index = {d.id: i + 1 for i, d in enumerate(order)}

    def canon(owner, k):
        # the outer disk sorts as index 0, inner disks from 1
        return (0, k) if owner == "outer" else (index[owner], k)

    curves = []
    for cv in c.curves:
        a = canon(*parse_ref(cv.start))
        b = canon(*parse_ref(cv.end))
        curves.append((min(a, b), max(a, b), cv.color,
                       1 if a <= b else -1))
    return (c.outer, tuple(sorted((d.arity for d in order))),
            tuple(sorted(curves)))


# ---------------------------------------------------------------------------
# the induced map on tensors


def wiring(c: CircuitDiagram) -> Matching:
    """Index-level matching for exterior.contract_matched: curves are
    numbered in declaration order."""
    c.require_valid()
    cindex = {cv.id: i + 1 for i, cv in enumerate(c.curves)}
    epc = {k: v[0] for k, v in c.endpoint_curves().items()}
    inner = tuple(tuple(cindex[epc[(d.id, k)]]
                        for k in range(1, d.arity + 1)) for d in c.disks)
    outer = tuple(cindex[epc[("outer", k)]]
                  for k in range(1, c.outer + 1))
    return Matching(len(c.curves), inner, outer)


def gamma(c: CircuitDiagram, inputs) -> Tensor:
    """Contract input tensors (one per disk, in declaration order)
    through the circuit's matching."""
    inputs = list(inputs)
    if len(inputs) != len(c.disks):
        raise CircuitError(f"{len(c.disks)} input tensors required, got "
                           f"{len(inputs)}")
    nvars = max([c.num_vars] + [x.nvars for x in inputs])
    lifted = []
    for x, d in zip(inputs, c.disks):
        if x.basis.rank != d.arity:
            raise CircuitError(
                f"input for disk {d.id} has rank {x.basis.rank}, "
                f"expected {d.arity}")
        if x.nvars != nvars:
            x = Tensor(x.basis, x.grade, nvars,
                       {s: LaurentPoly(nvars,
                                       {e + (0,) * (nvars - x.nvars): co
                                        for e, co in p.terms.items()})
                        for s, p in x.coeffs.items()})
        lifted.append(x)
    return contract_matched(lifted, wiring(c), BasisSpec(c.outer), nvars)


# ---------------------------------------------------------------------------
# gluing tangle diagrams into a circuit


def glue_tangles(c: CircuitDiagram, tangles) -> WeldedDiagram:
    """Insert welded diagrams into the disks; the curves extend or join
    their boundary arcs.

    No virtual crossings are emitted for curve/curve intersections: this
    data model keeps no embedding, and virtual crossings are inert in all
    algebra anyway.
    """
    c.require_valid()
    tangles = list(tangles)
    if len(tangles) != len(c.disks):
        raise GluingError(f"{len(c.disks)} tangles required, got "
                          f"{len(tangles)}")
    arcs = {}
    crossings = []
    vxings = []
    points = []
    colors = {}
    boundary_role = {}  # (disk id, k) -> ("start"|"end", arc id)
    for d, t in zip(c.disks, tangles):
        t.require_valid()
        if t.boundary_count != d.arity:
            raise GluingError(f"disk {d.id}: arity {d.arity} vs tangle "
                              f"boundary {t.boundary_count}")
        pre = f"{d.id}_"
        cmap = t.color_map()
        for a in t.arcs:
            start, end = a.start, a.end
            if is_boundary_ref(start):
                boundary_role[(d.id, boundary_index(start))] = \
                    ("start", pre + a.id)
                start = f"OPEN"
            else:
                start = pre + start
            if is_boundary_ref(end):
                boundary_role[(d.id, boundary_index(end))] = \
                    ("end", pre + a.id)
                end = f"OPEN"
            else:
                end = pre + end
            arcs[pre + a.id] = Arc(pre + a.id, start, end)
            colors[pre + a.id] = cmap[a.id]
        for x in t.crossings:
            crossings.append(replace(x, id=pre + x.id, over=pre + x.over,
                                     under_in=pre + x.under_in,
                                     under_out=pre + x.under_out))
        for w in t.vxings:
            vxings.append(replace(w, id=pre + w.id, a=pre + w.a,
                                  b=pre + w.b))
        for pt in t.points:
            points.append(replace(pt, id=pre + pt.id,
                                  in_arc=pre + pt.in_arc,
                                  out_arc=pre + pt.out_arc))

    def set_anchor(arc_id, role, anchor):
        a = arcs[arc_id]
        arcs[arc_id] = replace(a, **{role: anchor})

    fresh = itertools.count(1)
    for cv in c.curves:
        o1, k1 = parse_ref(cv.start)
        o2, k2 = parse_ref(cv.end)
        if o1 == "outer" and o2 == "outer":
            # new strand: two arcs joined by a division point
            pid = f"glue{next(fresh)}"
            a1, a2 = f"{cv.id}_1", f"{cv.id}_2"
            arcs[a1] = Arc(a1, f"b{k1}", pid)
            arcs[a2] = Arc(a2, pid, f"b{k2}")
            points.append(Point(pid, a1, a2))
            colors[a1] = colors[a2] = cv.color
        elif o1 == "outer" or o2 == "outer":
            outer_k = k1 if o1 == "outer" else k2
            disk_end = (o2, k2) if o1 == "outer" else (o1, k1)
            role, arc_id = boundary_role[disk_end]
            if colors[arc_id] != cv.color:
                raise GluingError(
                    f"curve {cv.id} color {cv.color} differs from arc "
                    f"{arc_id} color {colors[arc_id]}")
            set_anchor(arc_id, role, f"b{outer_k}")
        else:
            role1, arc1 = boundary_role[(o1, k1)]
            role2, arc2 = boundary_role[(o2, k2)]
            if role1 == role2:
                raise GluingError(
                    f"curve {cv.id} joins two strand {role1}s; "
                    f"orientations do not match")
            if colors[arc1] != cv.color or colors[arc2] != cv.color:
                raise GluingError(f"curve {cv.id}: color mismatch at an "
                                  f"inner-inner joint")
            pid = f"glue{next(fresh)}"
            if role1 == "end":  # arc1 flows into arc2
                points.append(Point(pid, arc1, arc2))
                set_anchor(arc1, "end", pid)
                set_anchor(arc2, "start", pid)
            else:
                points.append(Point(pid, arc2, arc1))
                set_anchor(arc2, "end", pid)
                set_anchor(arc1, "start", pid)

    mu = max([c.mu] + [t.mu for t in tangles])
    out = WeldedDiagram(
        f"{c.name}[{','.join(t.name for t in tangles)}]", c.outer,
        tuple(arcs.values()), tuple(crossings), tuple(vxings),
        tuple(points), tuple(sorted(colors.items())), mu)
    return out.require_valid()
