"""Independent reference implementations used only by the tests.

Everything here goes through sympy or brute force, sharing no code with
the package under test.
"""

from __future__ import annotations

import itertools

import sympy

from weldalex import LaurentPoly

_SYMS = [sympy.Symbol(f"t{i}") for i in range(1, 9)]


def to_sympy(p: LaurentPoly):
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Integer(c)
        for i, e in enumerate(exps):
            term *= _SYMS[i] ** e
        expr += term
    return sympy.expand(expr)


def sympy_equal(p: LaurentPoly, expr) -> bool:
    return sympy.simplify(to_sympy(p) - expr) == 0


def det_oracle(rows):
    """Determinant via sympy of a square grid of LaurentPoly."""
    m = sympy.Matrix([[to_sympy(e) for e in row] for row in rows])
    return sympy.expand(m.det(method="berkowitz"))


def inversions(seq) -> int:
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


def braid_permutation(word, strands: int) -> tuple:
    """perm[i] = output position of the strand starting at position i."""
    pos = list(range(strands))
    for g in word:
        j = abs(g)
        pos[j - 1], pos[j] = pos[j], pos[j - 1]
    out = [0] * strands
    for start, p in enumerate(pos):
        out[p] = start
    # pos maps current position -> starting strand; invert for start -> end
    res = [0] * strands
    for end_pos, start in enumerate(pos):
        res[start] = end_pos
    return tuple(res)


def _reduced_burau(word, strands: int):
    t = _SYMS[0]
    n = strands
    mat = sympy.eye(n - 1)
    for g in word:
        i = abs(g)
        # sigma_i is identity outside the 3x3 block
        # [[1,0,0],[t,-t,1],[0,0,1]] on indices i-2..i (0-based)
        m = sympy.eye(n - 1)
        if i - 2 >= 0:
            m[i - 1, i - 2] = t
        m[i - 1, i - 1] = -t
        if i < n - 1:
            m[i - 1, i] = 1
        if g < 0:
            m = m.inv()
        mat = m * mat
    return sympy.simplify(mat)


def alexander_closure_oracle(word, strands: int):
    """Alexander polynomial (up to unit) of the closure of a braid,
    via the reduced Burau representation."""
    t = _SYMS[0]
    n = strands
    b = _reduced_burau(word, strands)
    num = sympy.expand((b - sympy.eye(n - 1)).det(method="berkowitz"))
    den = sum(t ** k for k in range(n))
    delta = sympy.cancel(num / den)
    return normalize_sympy_poly(delta)


def normalize_sympy_poly(expr):
    """Kill the ±t^k unit: lowest degree 0, positive trailing coeff."""
    t = _SYMS[0]
    expr = sympy.cancel(sympy.together(expr))
    if expr == 0:
        return sympy.Integer(0)
    p = sympy.Poly(sympy.expand(expr * t ** 64), t)
    monoms = [m[0] for m in p.monoms()]
    expr = sympy.expand(p.as_expr() / t ** min(monoms))
    p = sympy.Poly(expr, t)
    if p.coeffs()[-1] < 0:
        expr = sympy.expand(-expr)
    return expr
