import random

import pytest

from weldalex import (BasisSpec, ExteriorError, PolyMatrix, Tensor,
                      format_matrix, format_tensor, parse_poly,
                      parse_tensor, tensor_from_json, tensor_to_json)
from weldalex.randomgen import random_tensor


def test_text_roundtrip_random():
    rng = random.Random(41)
    for _ in range(40):
        rank = rng.randint(2, 6)
        grade = rng.randint(0, rank)
        nvars = rng.randint(1, 3)
        t = random_tensor(rng, BasisSpec(rank), grade, nvars)
        back = parse_tensor(format_tensor(t), rank=rank, nvars=nvars,
                            grade=grade)
        assert back.coeffs == t.coeffs


def test_json_roundtrip_random():
    rng = random.Random(43)
    for _ in range(20):
        t = random_tensor(rng, BasisSpec(5), rng.randint(0, 4),
                          rng.randint(1, 2))
        back = tensor_from_json(tensor_to_json(t))
        assert back.coeffs == t.coeffs and back.basis == t.basis


def test_zero_and_scalar_forms():
    z = Tensor.zero(BasisSpec(4), 2, 1)
    assert format_tensor(z) == "0"
    assert parse_tensor("0", rank=4, nvars=1, grade=2).is_zero()
    s = Tensor.scalar(BasisSpec(4), parse_poly("t-1", 1))
    assert format_tensor(s) == "(1, t - 1)"
    assert parse_tensor("(1, t - 1)", rank=4).coeffs == s.coeffs


def test_parse_infers_rank_and_nvars():
    t = parse_tensor("(x1^x4, t2 - 1), (x2^x3, 1)")
    assert t.basis.rank == 4 and t.nvars == 2 and t.grade == 2


def test_parse_rejects_garbage():
    for bad in ["x1^x2", "(x1^x2)", "(y1, 1)", "(x1^x2, 1), (x3, 1)"]:
        with pytest.raises(ExteriorError):
            parse_tensor(bad)


def test_format_matrix_alignment():
    m = PolyMatrix.from_rows(
        [[parse_poly("-1", 1), parse_poly("t", 1)]],
        row_labels=["r"], col_labels=["a", "b"])
    out = format_matrix(m)
    lines = out.splitlines()
    assert len(lines) == 2
    assert "[-1]" in lines[1] and "[t]" in lines[1]
