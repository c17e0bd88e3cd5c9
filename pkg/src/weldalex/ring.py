"""Exact arithmetic in Z[t1^{±1}, ..., tmu^{±1}] and determinants over it.

Polynomials are stored as a map from exponent vectors (length-mu tuples of
ints, possibly negative) to nonzero integer coefficients.  The canonical
term order used for printing and normalization is lexicographic on the
exponent vectors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class RingError(ValueError):
    pass


class DimensionError(RingError):
    pass


class DivisibilityError(RingError):
    pass


class DomainError(RingError):
    pass


def _check_same_nvars(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.nvars != b.nvars:
        raise DimensionError(
            f"variable count mismatch: {a.nvars} vs {b.nvars}")


class LaurentPoly:
    """Immutable multivariate Laurent polynomial over Z."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise DimensionError(
                        f"exponent vector {exps} has length {len(exps)}, "
                        f"expected {nvars}")
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_i^power, with i in 1..nvars."""
        if not 1 <= i <= nvars:
            raise DimensionError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coeff: int, exps: Iterable[int]) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """True iff self = ±(monomial)."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def lead(self) -> tuple[tuple, int]:
        """Lex-greatest term as (exponents, coefficient)."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        _check_same_nvars(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", terms)
        object.__setattr__(out, "_hash", None)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", {e: -c for e, c in self.terms.items()})
        object.__setattr__(out, "_hash", None)
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            out = LaurentPoly.__new__(LaurentPoly)
            object.__setattr__(out, "nvars", self.nvars)
            object.__setattr__(
                out, "terms", {e: c * other for e, c in self.terms.items()})
            object.__setattr__(out, "_hash", None)
            return out
        _check_same_nvars(self, other)
        terms: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "nvars", self.nvars)
        object.__setattr__(out, "terms", terms)
        object.__setattr__(out, "_hash", None)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise DomainError("negative power of a non-unit")
            (e, c), = self.terms.items()
            coeff = c if k % 2 else 1
            return LaurentPoly.monomial(coeff, tuple(x * k for x in e))
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / other in the Laurent ring.

        Raises DivisibilityError if other does not divide self.
        """
        _check_same_nvars(self, other)
        if other.is_zero():
            raise DivisibilityError("division by zero")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        if other.is_monomial():
            (de, dc), = other.terms.items()
            terms = {}
            for e, c in self.terms.items():
                if c % dc:
                    raise DivisibilityError(f"{self} not divisible by {other}")
                terms[tuple(a - b for a, b in zip(e, de))] = c // dc
            return LaurentPoly(self.nvars, terms)
        # reduce to ordinary polynomials so leading-term division
        # terminates, and restore the monomial shift afterwards
        sn, su = self.normalize_unit()
        on, ou = other.normalize_unit()
        rem = sn
        quot: dict[tuple, int] = {}
        de, dc = on.lead()
        while not rem.is_zero():
            re_, rc = rem.lead()
            if rc % dc or any(b > a for a, b in zip(re_, de)):
                raise DivisibilityError(f"{self} not divisible by {other}")
            qe = tuple(a - b for a, b in zip(re_, de))
            qc = rc // dc
            quot[qe] = quot.get(qe, 0) + qc
            rem = rem - on * LaurentPoly.monomial(qc, qe)
        return LaurentPoly(self.nvars, quot) * su * (ou ** -1)

    def normalize_unit(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Split self = unit * normal, with unit = ±monomial.

        The normal form has minimum exponent 0 in every variable and a
        positive coefficient on its lex-least term.  Zero normalizes to
        (0, +1).
        """
        if self.is_zero():
            return self, LaurentPoly.one(self.nvars)
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        shifted = {tuple(a - m for a, m in zip(e, mins)): c
                   for e, c in self.terms.items()}
        least = min(shifted)
        sign = 1 if shifted[least] > 0 else -1
        normal = LaurentPoly(self.nvars,
                             {e: sign * c for e, c in shifted.items()})
        unit = LaurentPoly.monomial(sign, mins)
        return normal, unit

    def specialize(self, values: Mapping[int, int]) -> "LaurentPoly":
        """Substitute integer units for variables (1-based indices).

        Unassigned variables stay symbolic; the variable count is kept so
        results remain comparable.
        """
        for i, v in values.items():
            if not 1 <= i <= self.nvars:
                raise DimensionError(f"variable index {i} out of range")
            if v == 0:
                raise DomainError("0 is not a unit of the Laurent ring")
        terms: dict[tuple, int] = {}
        for e, c in self.terms.items():
            coeff = c
            new_e = list(e)
            for i, v in values.items():
                k = e[i - 1]
                if k >= 0:
                    coeff *= v ** k
                else:
                    # negative powers only work for v = ±1
                    if abs(v) != 1:
                        raise DomainError(
                            f"cannot invert {v} over Z (exponent {k})")
                    coeff *= v ** (-k)
                new_e[i - 1] = 0
            key = tuple(new_e)
            s = terms.get(key, 0) + coeff
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return LaurentPoly(self.nvars, terms)

    # -- comparison, hashing, printing -------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.nvars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def _var_name(self, i: int) -> str:
        return "t" if self.nvars == 1 else f"t{i + 1}"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                factors.append(self._var_name(i) if k == 1
                               else f"{self._var_name(i)}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


_FACTOR_RE = re.compile(r"^t(\d*)(?:\^(-?\d+))?$")


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Parse the textual polynomial grammar, e.g. '-t1^2*t2 + 3 - t2^-1'.

    For nvars == 1 the bare name 't' is accepted (and produced).
    """
    text = text.strip()
    if text in ("", "0"):
        return LaurentPoly.zero(nvars)
    # a '-' right after '^' belongs to the exponent, not a term separator
    marked = re.sub(r"\^\s*-", "^~", text)
    out = LaurentPoly.zero(nvars)
    i, n, sign = 0, len(marked), 1
    while i < n:
        ch = marked[i]
        if ch in "+- \t":
            if ch == "-":
                sign = -sign
            i += 1
            continue
        j = i
        while j < n and marked[j] not in "+-":
            j += 1
        term = marked[i:j].strip().replace("^~", "^-")
        out = out + _parse_term(term, nvars) * sign
        sign = 1
        i = j
    return out


def _parse_term(term: str, nvars: int) -> LaurentPoly:
    coeff = 1
    exps = [0] * nvars
    for factor in term.split("*"):
        factor = factor.strip()
        if not factor:
            raise RingError(f"empty factor in term {term!r}")
        if factor.isdigit():
            coeff *= int(factor)
            continue
        m = _FACTOR_RE.match(factor)
        if not m:
            raise RingError(f"cannot parse factor {factor!r}")
        idx = int(m.group(1)) if m.group(1) else 1
        if not 1 <= idx <= nvars:
            raise DimensionError(
                f"variable t{idx} out of range for {nvars} variable(s)")
        exps[idx - 1] += int(m.group(2)) if m.group(2) else 1
    return LaurentPoly.monomial(coeff, exps)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class PolyMatrix:
    """Dense matrix of LaurentPoly entries with labelled rows/columns."""

    entries: tuple  # tuple of row tuples
    row_labels: tuple = field(default=())
    col_labels: tuple = field(default=())

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None) -> "PolyMatrix":
        rows = tuple(tuple(r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
        rl = tuple(row_labels) if row_labels else tuple(range(len(rows)))
        cl = tuple(col_labels) if col_labels else tuple(range(ncols))
        if len(set(rl)) != len(rl) or len(set(cl)) != len(cl):
            raise DimensionError("duplicate row or column labels")
        if len(rl) != len(rows) or (rows and len(cl) != ncols):
            raise DimensionError("label count does not match dimensions")
        return cls(rows, rl, cl)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def submatrix(self, rows, cols) -> "PolyMatrix":
        rows = list(rows)
        cols = list(cols)
        ent = tuple(tuple(self.entries[i][j] for j in cols) for i in rows)
        return PolyMatrix(ent,
                          tuple(self.row_labels[i] for i in rows),
                          tuple(self.col_labels[j] for j in cols))

    def col_index(self, label) -> int:
        return self.col_labels.index(label)

    def determinant(self) -> LaurentPoly:
        if self.nrows != self.ncols:
            raise DimensionError(
                f"determinant of non-square {self.nrows}x{self.ncols} matrix")
        if self.nrows == 0:
            raise DimensionError("determinant of empty matrix is ambiguous")
        nvars = self.entries[0][0].nvars
        if self.nrows <= 4:
            return _det_cofactor([list(r) for r in self.entries], nvars)
        return det_bareiss([list(r) for r in self.entries], nvars)


def _det_cofactor(rows: list, nvars: int) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = LaurentPoly.zero(nvars)
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sub = _det_cofactor(minor, nvars)
        total = total + a * sub if j % 2 == 0 else total - a * sub
    return total


def det_bareiss(rows: list, nvars: int) -> LaurentPoly:
    """Fraction-free Bareiss determinant; exact over the Laurent ring."""
    n = len(rows)
    if n == 0:
        raise DimensionError("empty matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.one(nvars)
    for k in range(n - 1):
        # pivot search
        piv = None
        for i in range(k, n):
            if not m[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return LaurentPoly.zero(nvars)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pk * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = LaurentPoly.zero(nvars)
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
