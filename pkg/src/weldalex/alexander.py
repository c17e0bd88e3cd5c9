"""Alexander invariant of colored welded tangles and its specializations.

Pipeline: Wirtinger presentation -> abelianized Fox calculus -> the
(p+n) x (p+2n) presentation matrix -> minor determinants packaged as a
grade-n exterior tensor over the boundary module.  On top of that:
the Alexander polynomial of (1-1)-tangles, the hom-decomposition of the
invariant along a boundary split, and Burau/Gassner checks for braids.

Sign conventions (pinned by the worked fixtures in the test suite):
the coefficient of x_J is  sgn(J||Jbar) * s(Jbar) * det M[:, internal+J]
with s(I) = (-1)^(n^2 + n(n+1)/2 + sum(I)), which is the Laplace sign of
stacking unit rows at the boundary columns Jbar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ring import (DivisibilityError, LaurentPoly, PolyMatrix, det_bareiss)
from .exterior import BasisSpec, Tensor, subset_signature
from .diagram import WeldedDiagram, boundary_index, braid_diagram, \
    close_braid_11, is_boundary_ref, wirtinger

__all__ = [
    "AlexanderError", "ConsistencyError", "ShapeError",
    "ColoredTangle", "build_matrix", "alpha", "alexander_function",
    "alexander_poly_11", "SplitSpec", "GradedPiece", "GradedMapFamily",
    "split_hom", "burau_matrix", "burau_check", "BurauReport",
    "strand_permutation",
]


class AlexanderError(ValueError):
    pass


class ConsistencyError(AlexanderError):
    """A structural theorem failed to hold: signals a bug, not bad data."""


class ShapeError(AlexanderError):
    pass


@dataclass(frozen=True)
class ColoredTangle:
    """A welded diagram together with an ambient variable count.

    mu == 0 defers to the largest color index used by the diagram.
    """

    diagram: WeldedDiagram
    mu: int = 0

    @property
    def nvars(self) -> int:
        return self.mu or self.diagram.num_vars

    @classmethod
    def of(cls, diagram: WeldedDiagram, mu: int = 0) -> "ColoredTangle":
        return cls(diagram, mu or diagram.mu)


# ---------------------------------------------------------------------------
# presentation matrix


def _fox_row(word, colors, colidx, nvars) -> list:
    """Abelianized Fox derivative of a relation word (list of (gen, ±1))."""
    row = [LaurentPoly.zero(nvars)] * len(colidx)
    prefix = LaurentPoly.one(nvars)
    for gen, exp in word:
        tg = LaurentPoly.var(colors[gen], nvars)
        j = colidx[gen]
        if exp == 1:
            row[j] = row[j] + prefix
            prefix = prefix * tg
        elif exp == -1:
            prefix = prefix * tg ** -1
            row[j] = row[j] - prefix
        else:
            raise AlexanderError(f"relation exponent {exp} not in {{1,-1}}")
    return row


def _normalize_row(row: list, nvars: int) -> list:
    """Scale a row by a unit: joint minimum exponent 0 in every variable,
    and the first nonzero entry's lex-least coefficient negative.

    (Any per-row unit rescales every minor, hence alpha, by one global
    unit; this convention reproduces the fixture matrices.)
    """
    support = [e for e in row if not e.is_zero()]
    if not support:
        return row
    mins = [min(exps[i] for e in support for exps in e.terms)
            for i in range(nvars)]
    unit = LaurentPoly.monomial(1, tuple(-m for m in mins))
    row = [e * unit for e in row]
    first = next(e for e in row if not e.is_zero())
    least = min(first.terms)
    if first.terms[least] > 0:
        row = [-e for e in row]
    return row


def build_matrix(t: ColoredTangle) -> PolyMatrix:
    """The (p+n) x (p+2n) abelianized Fox matrix of the tangle.

    Columns follow the canonical arc order (internal lex-sorted, then
    boundary arcs by boundary index); rows are division points first,
    then classical crossings, each rescaled by _normalize_row.
    """
    d = t.diagram.require_valid()
    nvars = t.nvars
    colors = d.color_map()
    cols = d.column_order()
    colidx = {a: i for i, a in enumerate(cols)}
    pres = wirtinger(d)
    words = dict(pres.relations)
    row_order = [pt.id for pt in d.points] + [x.id for x in d.crossings]
    rows, labels = [], []
    for label in row_order:
        rows.append(_normalize_row(_fox_row(words[label], colors, colidx,
                                            nvars), nvars))
        labels.append(label)
    return PolyMatrix.from_rows(rows, row_labels=labels, col_labels=cols)


# ---------------------------------------------------------------------------
# the invariant tensor


def _stack_sign(n: int, subset) -> int:
    """Laplace sign of appending unit rows at boundary columns `subset`."""
    exp = n * n + n * (n + 1) // 2 + sum(subset)
    return -1 if exp % 2 else 1


def _minors_per_subset(m: PolyMatrix, p: int, n: int, nvars: int) -> dict:
    out = {}
    internal = list(range(p))
    for J in itertools.combinations(range(1, 2 * n + 1), n):
        cols = internal + [p + j - 1 for j in J]
        out[J] = m.submatrix(range(m.nrows), cols).determinant()
    return out


def _minors_shared(m: PolyMatrix, p: int, n: int, nvars: int) -> dict:
    """All boundary minors via one shared elimination of the internal
    columns (Sylvester identity); must agree with the per-subset route."""
    subsets = list(itertools.combinations(range(1, 2 * n + 1), n))
    if p == 0:
        return _minors_per_subset(m, p, n, nvars)
    rows = [list(r) for r in m.entries]
    nrows, ncols = len(rows), len(rows[0])
    sign = 1
    prev = LaurentPoly.one(nvars)
    for k in range(p):
        piv = next((i for i in range(k, nrows)
                    if not rows[i][k].is_zero()), None)
        if piv is None:
            # internal columns are dependent: every minor vanishes
            zero = LaurentPoly.zero(nvars)
            return {J: zero for J in subsets}
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                num = pk * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = num.exact_div(prev)
            rows[i][k] = LaurentPoly.zero(nvars)
        prev = pk
    denom = prev ** (n - 1)
    out = {}
    for J in subsets:
        block = [[rows[p + i][p + j - 1] for j in J] for i in range(n)]
        det = det_bareiss(block, nvars) if n > 1 else block[0][0]
        out[J] = det.exact_div(denom) * sign
    return out


def alpha(t: ColoredTangle, fast: bool = True) -> Tensor:
    """The invariant tensor in grade n over the boundary basis x1..x2n."""
    m = build_matrix(t)
    d = t.diagram
    n, p, nvars = d.n, d.p, t.nvars
    if m.nrows != p + n or m.ncols != p + 2 * n:
        raise ConsistencyError(
            f"matrix is {m.nrows}x{m.ncols}, expected {p + n}x{p + 2 * n}")
    minors = (_minors_shared if fast else _minors_per_subset)(m, p, n, nvars)
    basis = BasisSpec(2 * n)
    full = range(1, 2 * n + 1)
    coeffs = {}
    for J, det in minors.items():
        if det.is_zero():
            continue
        Jbar = tuple(i for i in full if i not in J)
        coeffs[J] = det * (subset_signature(J, Jbar) * _stack_sign(n, Jbar))
    return Tensor(basis, n, nvars, coeffs)


def alexander_function(t: ColoredTangle, subset) -> LaurentPoly:
    """Value of the Alexander function on the wedge of boundary
    generators `subset`: the alpha-coefficient of the complement."""
    a = alpha(t)
    n = t.diagram.n
    subset = tuple(sorted(subset))
    if len(subset) != n:
        raise ShapeError(f"need an n-subset, got {subset}")
    comp = tuple(i for i in range(1, 2 * n + 1) if i not in subset)
    return a.coeffs.get(comp, LaurentPoly.zero(t.nvars))


# ---------------------------------------------------------------------------
# (1-1)-tangles


def alexander_poly_11(t: ColoredTangle) -> LaurentPoly:
    """Alexander polynomial of a (1-1)-tangle, up to unit.

    alpha must be an R-multiple c*(x1 - x2); with r = number of distinct
    colors in play, Delta = c/(t-1) when r >= 2 (t the open-strand
    variable), and Delta = c when r = 1.
    """
    d = t.diagram
    if d.n != 1:
        raise ShapeError(f"(1-1)-tangle needed, diagram has n={d.n}")
    a = alpha(t)
    nvars = t.nvars
    zero = LaurentPoly.zero(nvars)
    c1 = a.coeffs.get((1,), zero)
    c2 = a.coeffs.get((2,), zero)
    if c1 + c2 != zero:
        raise ConsistencyError(
            f"alpha = {c1}*x1 + {c2}*x2 is not a multiple of (x1 - x2)")
    colors = d.color_map()
    r = len(set(colors.values()))
    if r < 2:
        return c1
    open_arc = d.boundary_arcs()[0]
    tvar = LaurentPoly.var(colors[open_arc], nvars)
    try:
        return c1.exact_div(tvar - 1)
    except DivisibilityError as exc:
        raise ConsistencyError(
            f"(t-1) does not divide {c1} despite {r} colors") from exc


# ---------------------------------------------------------------------------
# hom-decomposition along a boundary split


@dataclass(frozen=True)
class SplitSpec:
    """Boundary split: indices 1..n0 span M0, n0+1..n0+n1 span M1."""

    n0: int
    n1: int

    def __post_init__(self):
        if self.n0 < 0 or self.n1 < 0:
            raise ShapeError("negative split sizes")


@dataclass(frozen=True)
class GradedPiece:
    """The k-th graded component as a map Λ^{n0-k} M0 -> Λ^{n-k} M1.

    `matrix[r][c]` is the coefficient of `cols[c]` in the image of
    `rows[r]`; the sign (-1)^{k(n0-k)} is carried separately.
    """

    k: int
    sign: int
    rows: tuple  # input subsets of M0 indices, size n0-k
    cols: tuple  # output subsets of M1 indices, size n-k
    matrix: tuple


@dataclass(frozen=True)
class GradedMapFamily:
    spec: SplitSpec
    grade: int
    nvars: int
    pieces: tuple

    def piece(self, k: int) -> GradedPiece:
        for pc in self.pieces:
            if pc.k == k:
                return pc
        raise ShapeError(f"no graded piece k={k}")

    def rho1(self) -> PolyMatrix:
        """The generator-to-generator component (Burau/Gassner matrix).

        Requires n0 = grade, so that inputs and outputs are both grade 1.
        Entry (i, j) is the coefficient of x_{n0+i} in the image of x_j.
        """
        if self.spec.n0 != self.grade:
            raise ShapeError("rho1 needs n0 = n (braid-like split)")
        pc = self.piece(self.spec.n0 - 1)
        m = self.spec.n0
        entries = [[pc.matrix[j][i] for j in range(m)] for i in range(m)]
        return PolyMatrix.from_rows(
            entries,
            row_labels=[f"x{m + i}" for i in range(1, m + 1)],
            col_labels=[f"x{j}" for j in range(1, m + 1)])


def split_hom(a: Tensor, spec: SplitSpec) -> GradedMapFamily:
    """Decompose a grade-n tensor into maps Λ^{n0-k} M0 -> Λ^{n-k} M1.

    Image of x_S is  sum_T coeff[(M0 \\ S) ∪ T] * sgn(S || M0 \\ S) * x_T,
    following the contraction against the M0 volume form.
    """
    n = a.grade
    rank = a.basis.rank
    if spec.n0 + spec.n1 != rank:
        raise ShapeError(f"split {spec.n0}+{spec.n1} != rank {rank}")
    m0 = tuple(range(1, spec.n0 + 1))
    m1 = tuple(range(spec.n0 + 1, rank + 1))
    pieces = []
    for k in range(max(0, n - spec.n1), min(n, spec.n0) + 1):
        in_subsets = list(itertools.combinations(m0, spec.n0 - k))
        out_subsets = list(itertools.combinations(m1, n - k))
        matrix = []
        for S in in_subsets:
            u0 = tuple(i for i in m0 if i not in S)
            sgn = subset_signature(S, u0)
            row = []
            for T in out_subsets:
                c = a.coeffs.get(tuple(sorted(u0 + T)),
                                 LaurentPoly.zero(a.nvars))
                row.append(c * sgn)
            matrix.append(tuple(row))
        sign = -1 if (k * (spec.n0 - k)) % 2 else 1
        pieces.append(GradedPiece(k, sign, tuple(in_subsets),
                                  tuple(out_subsets), tuple(matrix)))
    return GradedMapFamily(spec, n, a.nvars, tuple(pieces))


def family_to_tensor(fam: GradedMapFamily, basis: BasisSpec) -> Tensor:
    """Inverse of split_hom: rebuild the tensor from its graded pieces."""
    m0 = tuple(range(1, fam.spec.n0 + 1))
    coeffs = {}
    for pc in fam.pieces:
        for r, S in enumerate(pc.rows):
            u0 = tuple(i for i in m0 if i not in S)
            sgn = subset_signature(S, u0)
            for c, T in enumerate(pc.cols):
                val = pc.matrix[r][c] * sgn
                if val.is_zero():
                    continue
                subset = tuple(sorted(u0 + T))
                prev = coeffs.get(subset)
                coeffs[subset] = val if prev is None else prev + val
    # every subset is hit once per its own (u0, T) split, so no averaging
    return Tensor(basis, fam.grade, fam.nvars, coeffs)


# ---------------------------------------------------------------------------
# Burau / Gassner checks for braids


def burau_matrix(word, strands: int, colors=None, mu: int = 0) -> PolyMatrix:
    """rho1 of the braid on `strands` strands given by the generator word."""
    d = braid_diagram(word, strands, colors, mu)
    t = ColoredTangle.of(d, mu)
    fam = split_hom(alpha(t), SplitSpec(strands, strands))
    return fam.rho1()


def strand_permutation(word, strands: int) -> tuple:
    """perm[i-1] = final position of the strand entering at position i."""
    pos = list(range(1, strands + 1))  # pos[slot] = strand at that slot
    for g in word:
        j = abs(g)
        pos[j - 1], pos[j] = pos[j], pos[j - 1]
    perm = [0] * strands
    for slot, strand in enumerate(pos, start=1):
        perm[strand - 1] = slot
    return tuple(perm)


def _mat_mul(a: PolyMatrix, b: PolyMatrix) -> tuple:
    n, m, k = a.nrows, b.ncols, a.ncols
    nvars = a.entries[0][0].nvars
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = LaurentPoly.zero(nvars)
            for l in range(k):
                s = s + a.entries[i][l] * b.entries[l][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _grid_equal_up_to_unit(a, b, nvars):
    """a = u*b entrywise for one unit u; returns (ok, witness)."""
    fa = next(((i, j) for i, r in enumerate(a) for j, e in enumerate(r)
               if not e.is_zero()), None)
    fb = next(((i, j) for i, r in enumerate(b) for j, e in enumerate(r)
               if not e.is_zero()), None)
    if fa is None and fb is None:
        return True, LaurentPoly.one(nvars)
    if fa is None or fb is None or fa != fb:
        return False, None
    na, ua = a[fa[0]][fa[1]].normalize_unit()
    nb, ub = b[fb[0]][fb[1]].normalize_unit()
    if na != nb:
        return False, None
    witness = ua * (ub ** -1)
    for ra, rb in zip(a, b):
        for ea, eb in zip(ra, rb):
            if ea != eb * witness:
                return False, None
    return True, witness


@dataclass(frozen=True)
class BurauReport:
    strands: int
    word1: tuple
    word2: tuple
    rho_combined: PolyMatrix
    multiplicative: bool
    order: str  # which composition order matched
    witness: LaurentPoly | None
    permutation: tuple
    permutation_ok: bool

    @property
    def ok(self) -> bool:
        return self.multiplicative and self.permutation_ok


def burau_check(word1, word2, strands: int, colors=None,
                mu: int = 0) -> BurauReport:
    """Multiplicativity (up to unit) and t=1 permutation check."""
    word1, word2 = tuple(word1), tuple(word2)
    b1 = burau_matrix(word1, strands, colors, mu)
    b2 = burau_matrix(word2, strands, colors, mu)
    bc = burau_matrix(word1 + word2, strands, colors, mu)
    nvars = bc.entries[0][0].nvars
    ok, wit = _grid_equal_up_to_unit(bc.entries, _mat_mul(b2, b1), nvars)
    order = "second*first"
    if not ok:
        ok, wit = _grid_equal_up_to_unit(bc.entries, _mat_mul(b1, b2), nvars)
        order = "first*second" if ok else ""

    perm = strand_permutation(word1 + word2, strands)
    at_one = {i: 1 for i in range(1, nvars + 1)}
    perm_ok = True
    signs = set()
    for i in range(strands):
        for j in range(strands):
            v = bc.entries[i][j].specialize(at_one)
            expected_nonzero = (perm[j] == i + 1)
            if v.is_zero():
                if expected_nonzero:
                    perm_ok = False
            else:
                c = v.terms.get((0,) * nvars, 0)
                if not expected_nonzero or abs(c) != 1:
                    perm_ok = False
                signs.add(1 if c > 0 else -1)
    if len(signs) > 1:
        perm_ok = False
    return BurauReport(strands, word1, word2, bc, ok, order, wit,
                       perm, perm_ok)
