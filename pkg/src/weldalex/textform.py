"""Textual and JSON forms of invariant tensors and matrices.

Tensor text form: comma-separated `(subset, polynomial)` pairs with
subsets like `x1^x2^x4`; the empty wedge prints as `1` and the zero
tensor as `0`.  Example: `(x1^x2, 1), (x1^x4, t - 1)`.
"""

from __future__ import annotations

import re

from .ring import PolyMatrix, RingError, parse_poly
from .exterior import BasisSpec, ExteriorError, Tensor

__all__ = [
    "format_tensor", "parse_tensor", "tensor_to_json", "tensor_from_json",
    "format_matrix", "matrix_to_json",
]


def _subset_label(subset) -> str:
    return "^".join(f"x{i}" for i in subset) if subset else "1"


def format_tensor(t: Tensor) -> str:
    if t.is_zero():
        return "0"
    return ", ".join(f"({_subset_label(s)}, {c})" for s, c in t.to_pairs())


_PAIR_SPLIT = re.compile(r"\)\s*,\s*\(")
_GEN_RE = re.compile(r"^x(\d+)$")


def parse_tensor(text: str, rank: int | None = None,
                 nvars: int | None = None, grade: int | None = None) -> Tensor:
    """Parse the tensor text form.

    rank/nvars default to the largest generator and variable index seen;
    pass them explicitly to compare tensors from different sources over
    a common basis.
    """
    text = text.strip()
    if text in ("", "0"):
        return Tensor.zero(BasisSpec(rank or 0), grade or 0, nvars or 1)
    if not (text.startswith("(") and text.endswith(")")):
        raise ExteriorError(f"tensor text must be (subset, poly) pairs: "
                            f"{text[:40]!r}")
    pairs = []
    for chunk in _PAIR_SPLIT.split(text[1:-1]):
        if "," not in chunk:
            raise ExteriorError(f"malformed tensor pair {chunk!r}")
        head, coeff = chunk.split(",", 1)
        head = head.strip()
        if head == "1":
            subset = ()
        else:
            subset = []
            for gen in head.split("^"):
                m = _GEN_RE.match(gen.strip())
                if not m:
                    raise ExteriorError(f"bad generator {gen!r}")
                subset.append(int(m.group(1)))
            subset = tuple(subset)
        pairs.append((subset, coeff.strip()))
    if rank is None:
        rank = max((i for s, _ in pairs for i in s), default=0)
    if nvars is None:
        nvars = max([1] + [int(m) if m else 1
                           for _, c in pairs
                           for m in re.findall(r"t(\d*)", c)])
    grades = {len(s) for s, _ in pairs}
    if len(grades) != 1:
        raise ExteriorError(f"mixed grades {sorted(grades)} in tensor text")
    basis = BasisSpec(rank)
    coeffs = {}
    for subset, ctext in pairs:
        c = parse_poly(ctext, nvars)
        if subset in coeffs:
            raise ExteriorError(f"repeated subset {subset}")
        coeffs[subset] = c
    return Tensor(basis, grades.pop(), nvars, coeffs)


def tensor_to_json(t: Tensor) -> dict:
    return {
        "rank": t.basis.rank,
        "grade": t.grade,
        "nvars": t.nvars,
        "terms": [{"subset": list(s), "coeff": str(c)}
                  for s, c in t.to_pairs()],
    }


def tensor_from_json(obj: dict) -> Tensor:
    try:
        basis = BasisSpec(int(obj["rank"]))
        nvars = int(obj["nvars"])
        coeffs = {tuple(term["subset"]): parse_poly(term["coeff"], nvars)
                  for term in obj["terms"]}
        return Tensor(basis, int(obj["grade"]), nvars, coeffs)
    except (KeyError, TypeError, ValueError, RingError) as exc:
        raise ExteriorError(f"malformed JSON tensor: {exc}") from exc


def format_matrix(m: PolyMatrix) -> str:
    cells = [[f"[{e}]" for e in row] for row in m.entries]
    heads = [str(c) for c in m.col_labels]
    widths = [max([len(h)] + [len(r[j]) for r in cells])
              for j, h in enumerate(heads)]
    rw = max((len(str(lbl)) for lbl in m.row_labels), default=0)
    lines = [" " * (rw + 2)
             + "  ".join(h.center(w) for h, w in zip(heads, widths))]
    for lbl, row in zip(m.row_labels, cells):
        lines.append(f"{str(lbl):>{rw}}  "
                     + "  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(line.rstrip() for line in lines)


def matrix_to_json(m: PolyMatrix) -> dict:
    return {
        "rows": [str(lbl) for lbl in m.row_labels],
        "cols": [str(lbl) for lbl in m.col_labels],
        "entries": [[str(e) for e in row] for row in m.entries],
    }
