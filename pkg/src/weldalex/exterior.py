"""Sparse exterior-algebra tensors over a free Laurent-polynomial module.

A tensor of grade k over a rank-r basis is a map from strictly increasing
k-subsets of {1..r} to nonzero polynomials.  The volume form is always the
one attached to the declared basis order, so all pairings and contractions
are reproducible bit-exactly; invariants themselves are compared up to a
unit with :func:`equal_up_to_unit`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .ring import LaurentPoly


class ExteriorError(ValueError):
    pass


class GradeError(ExteriorError):
    pass


class DisjointnessError(ExteriorError):
    pass


class WiringError(ExteriorError):
    pass


def subset_signature(I: Sequence[int], J: Sequence[int]) -> int:
    """Sign (-1)^inv of the concatenation I || J, for disjoint index sets."""
    if set(I) & set(J):
        raise DisjointnessError(f"subsets {I} and {J} overlap")
    seq = list(I) + list(J)
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def sort_with_sign(indices: Sequence[int]) -> tuple[tuple, int]:
    """Sort a repetition-free index sequence, returning (sorted, sign)."""
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return tuple(sorted(seq)), 0
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return tuple(sorted(seq)), (-1 if inv % 2 else 1)


@dataclass(frozen=True)
class BasisSpec:
    rank: int
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(f"x{i}" for i in range(1, self.rank + 1)))
        if len(self.labels) != self.rank or len(set(self.labels)) != self.rank:
            raise ExteriorError("labels must be unique and match the rank")


class Tensor:
    """Element of an exterior power; immutable, sparsely stored."""

    __slots__ = ("basis", "grade", "nvars", "coeffs")

    def __init__(self, basis: BasisSpec, grade: int, nvars: int,
                 coeffs: Mapping[tuple, LaurentPoly] | None = None):
        self.basis = basis
        self.grade = grade
        self.nvars = nvars
        clean = {}
        if coeffs:
            for subset, c in coeffs.items():
                subset = tuple(subset)
                if len(subset) != grade or list(subset) != sorted(set(subset)):
                    raise GradeError(
                        f"subset {subset} is not an increasing {grade}-subset")
                if subset and not (1 <= subset[0] and subset[-1] <= basis.rank):
                    raise GradeError(f"subset {subset} out of basis range")
                if not c.is_zero():
                    clean[subset] = c
        self.coeffs = clean

    # -- construction ------------------------------------------------

    @classmethod
    def zero(cls, basis: BasisSpec, grade: int, nvars: int) -> "Tensor":
        return cls(basis, grade, nvars)

    @classmethod
    def generator(cls, basis: BasisSpec, i: int, nvars: int) -> "Tensor":
        return cls(basis, 1, nvars, {(i,): LaurentPoly.one(nvars)})

    @classmethod
    def scalar(cls, basis: BasisSpec, value: LaurentPoly) -> "Tensor":
        return cls(basis, 0, value.nvars, {(): value})

    @classmethod
    def from_indices(cls, basis: BasisSpec, indices: Sequence[int],
                     coeff: LaurentPoly) -> "Tensor":
        subset, sign = sort_with_sign(indices)
        if sign == 0:
            return cls.zero(basis, len(indices), coeff.nvars)
        return cls(basis, len(indices), coeff.nvars, {subset: coeff * sign})

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- linear structure --------------------------------------------

    def _like(self, coeffs) -> "Tensor":
        out = Tensor.__new__(Tensor)
        out.basis = self.basis
        out.grade = self.grade
        out.nvars = self.nvars
        out.coeffs = {s: c for s, c in coeffs.items() if not c.is_zero()}
        return out

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other)
        coeffs = dict(self.coeffs)
        for s, c in other.coeffs.items():
            v = coeffs.get(s)
            coeffs[s] = c if v is None else v + c
        return self._like(coeffs)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other * LaurentPoly.const(-1, self.nvars)

    def __mul__(self, scalar) -> "Tensor":
        if isinstance(scalar, int):
            scalar = LaurentPoly.const(scalar, self.nvars)
        return self._like({s: c * scalar for s, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "Tensor":
        return self * -1

    def _check_compatible(self, other: "Tensor", same_grade=True):
        if self.basis != other.basis or self.nvars != other.nvars:
            raise ExteriorError("tensors over different bases or rings")
        if same_grade and self.grade != other.grade:
            raise GradeError(f"grade mismatch: {self.grade} vs {other.grade}")

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.basis == other.basis and self.grade == other.grade
                and self.nvars == other.nvars and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.basis, self.grade,
                     frozenset(self.coeffs.items())))

    # -- multiplicative structure ------------------------------------

    def wedge(self, other: "Tensor") -> "Tensor":
        self._check_compatible(other, same_grade=False)
        grade = self.grade + other.grade
        if grade > self.basis.rank:
            return Tensor.zero(self.basis, grade, self.nvars)
        coeffs: dict[tuple, LaurentPoly] = {}
        for s1, c1 in self.coeffs.items():
            for s2, c2 in other.coeffs.items():
                if set(s1) & set(s2):
                    continue
                subset, sign = sort_with_sign(s1 + s2)
                c = c1 * c2 * sign
                v = coeffs.get(subset)
                coeffs[subset] = c if v is None else v + c
        out = Tensor.__new__(Tensor)
        out.basis, out.grade, out.nvars = self.basis, grade, self.nvars
        out.coeffs = {s: c for s, c in coeffs.items() if not c.is_zero()}
        return out

    def volume_pairing(self, other: "Tensor") -> LaurentPoly:
        """Coefficient of the full basis wedge in self ∧ other."""
        self._check_compatible(other, same_grade=False)
        if self.grade + other.grade != self.basis.rank:
            raise GradeError(
                f"grades {self.grade}+{other.grade} do not fill rank "
                f"{self.basis.rank}")
        total = LaurentPoly.zero(self.nvars)
        for s1, c1 in self.coeffs.items():
            s2 = tuple(i for i in range(1, self.basis.rank + 1)
                       if i not in s1)
            c2 = other.coeffs.get(s2)
            if c2 is None:
                continue
            total = total + c1 * c2 * subset_signature(s1, s2)
        return total

    # -- unit bookkeeping --------------------------------------------

    def first_coeff(self) -> tuple[tuple, LaurentPoly] | None:
        """First nonzero coefficient in subset-lex order, or None."""
        if not self.coeffs:
            return None
        s = min(self.coeffs)
        return s, self.coeffs[s]

    def normalize_unit(self) -> tuple["Tensor", LaurentPoly]:
        """Global form: self = unit * normal, pivoting on the first
        nonzero coefficient in subset-lex order."""
        first = self.first_coeff()
        if first is None:
            return self, LaurentPoly.one(self.nvars)
        _, pivot = first
        _, unit = pivot.normalize_unit()
        inv = unit ** -1
        return self * inv, unit

    def to_pairs(self):
        return sorted(self.coeffs.items())


def equal_up_to_unit(a: Tensor, b: Tensor) -> tuple[bool, LaurentPoly | None]:
    """Decide a = u*b for a unit u = ±monomial; return (truth, witness)."""
    a._check_compatible(b)
    fa, fb = a.first_coeff(), b.first_coeff()
    if fa is None and fb is None:
        return True, LaurentPoly.one(a.nvars)
    if fa is None or fb is None:
        return False, None
    sa, ca = fa
    sb, cb = fb
    if sa != sb:
        return False, None
    na, ua = ca.normalize_unit()
    nb, ub = cb.normalize_unit()
    if na != nb:
        return False, None
    witness = ua * (ub ** -1)
    if a == b * witness:
        return True, witness
    return False, None


# ---------------------------------------------------------------------------
# contraction along a marked-point matching


@dataclass(frozen=True)
class Matching:
    """Index-level matching: every curve is hit by exactly two endpoints.

    ``inner[i][k-1]`` is the (1-based) curve carrying basis index k of the
    i-th input module; ``outer[j-1]`` the curve at outer index j.
    """

    ncurves: int
    inner: tuple
    outer: tuple

    def __post_init__(self):
        counts = [0] * (self.ncurves + 1)
        for slot in self.inner:
            for c in slot:
                counts[c] += 1
        for c in self.outer:
            counts[c] += 1
        if any(v != 2 for v in counts[1:]):
            bad = [c for c in range(1, self.ncurves + 1) if counts[c] != 2]
            raise WiringError(f"curves {bad} are not matched exactly twice")


def contract_matched(inputs: Sequence[Tensor], matching: Matching,
                     outer_basis: BasisSpec, nvars: int) -> Tensor:
    """The map induced by a matching, via volume-form duality.

    Characterized by  omega_C(m(x) ∧ m_outer(y)) = omega_outer(gamma(x) ∧ y)
    for all y; computed by expanding gamma(x) over outer n-subsets.
    """
    if len(inputs) != len(matching.inner):
        raise WiringError("input count does not match wiring slots")
    for x, slot in zip(inputs, matching.inner):
        if x.basis.rank != len(slot):
            raise WiringError("input basis rank does not match disk arity")
    rank = outer_basis.rank
    grades = [x.grade for x in inputs]
    n = matching.ncurves - sum(grades)
    if n < 0 or n > rank:
        raise GradeError("input grades incompatible with curve count")

    curve_basis = BasisSpec(matching.ncurves)
    # m(x): wedge of the slot images inside the curve module
    mx = Tensor.scalar(curve_basis, LaurentPoly.one(nvars))
    for x, slot in zip(inputs, matching.inner):
        image = Tensor.zero(curve_basis, x.grade, nvars)
        for subset, c in x.coeffs.items():
            image = image + Tensor.from_indices(
                curve_basis, [slot[k - 1] for k in subset], c)
        mx = mx.wedge(image)

    coeffs: dict[tuple, LaurentPoly] = {}
    all_outer = range(1, rank + 1)
    for J in itertools.combinations(all_outer, n):
        Jbar = tuple(i for i in all_outer if i not in J)
        curves = [matching.outer[i - 1] for i in Jbar]
        image = Tensor.from_indices(curve_basis, curves,
                                    LaurentPoly.one(nvars))
        val = _full_wedge_coeff(mx.wedge(image), curve_basis, nvars)
        if val.is_zero():
            continue
        coeffs[J] = val * subset_signature(J, Jbar)
    return Tensor(outer_basis, n, nvars, coeffs)


def _full_wedge_coeff(t: Tensor, basis: BasisSpec,
                      nvars: int) -> LaurentPoly:
    if t.grade != basis.rank:
        return LaurentPoly.zero(nvars)
    full = tuple(range(1, basis.rank + 1))
    return t.coeffs.get(full, LaurentPoly.zero(nvars))
