import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from weldalex import (BasisSpec, DisjointnessError, GradeError, LaurentPoly,
                      Matching, Tensor, WiringError, contract_matched,
                      equal_up_to_unit, subset_signature)
from weldalex.exterior import sort_with_sign
from weldalex.randomgen import random_tensor
from oracles import inversions


subsets = st.lists(st.integers(1, 8), unique=True).map(tuple)


@given(subsets, subsets)
def test_subset_signature_is_inversion_parity(a, b):
    if set(a) & set(b):
        return
    assert subset_signature(a, b) == (-1) ** inversions(a + b)


@given(st.permutations(list(range(1, 7))))
def test_sort_with_sign(perm):
    sorted_, sign = sort_with_sign(tuple(perm))
    assert sorted_ == tuple(range(1, 7))
    assert sign == (-1) ** inversions(perm)


def rng_tensors(rank, grade, seed=0, n=3, nvars=1):
    rng = random.Random(seed)
    basis = BasisSpec(rank)
    return [random_tensor(rng, basis, grade, nvars) for _ in range(n)]


def test_wedge_bilinear_and_anticommutative():
    rng = random.Random(1)
    basis = BasisSpec(6)
    for _ in range(20):
        g1, g2 = rng.randint(0, 3), rng.randint(0, 3)
        a = random_tensor(rng, basis, g1, 1)
        b = random_tensor(rng, basis, g2, 1)
        c = random_tensor(rng, basis, g2, 1)
        assert a.wedge(b + c).coeffs == (a.wedge(b) + a.wedge(c)).coeffs
        sign = (-1) ** (g1 * g2)
        assert a.wedge(b).coeffs == (b.wedge(a) * sign).coeffs


def test_wedge_associative():
    rng = random.Random(2)
    basis = BasisSpec(6)
    for _ in range(10):
        a = random_tensor(rng, basis, 1, 1)
        b = random_tensor(rng, basis, 2, 1)
        c = random_tensor(rng, basis, 1, 1)
        assert a.wedge(b.wedge(c)).coeffs == a.wedge(b).wedge(c).coeffs


def test_generator_squares_to_zero():
    basis = BasisSpec(4)
    x1 = Tensor.generator(basis, 1, 1)
    assert x1.wedge(x1).is_zero()


def test_volume_pairing_duality():
    # pairing a grade-k basis wedge against its complement gives the
    # permutation sign, anything else gives zero
    one = LaurentPoly.one(1)
    for rank in (2, 4, 6, 8):
        basis = BasisSpec(rank)
        for k in range(rank + 1):
            for sub in itertools.combinations(range(1, rank + 1), k):
                a = Tensor.from_indices(basis, sub, one)
                comp = tuple(i for i in range(1, rank + 1)
                             if i not in sub)
                b = Tensor.from_indices(basis, comp, one)
                val = a.volume_pairing(b)
                assert val == LaurentPoly.const(
                    subset_signature(sub, comp), 1)
                for other in itertools.combinations(range(1, rank + 1),
                                                    rank - k):
                    if other != comp:
                        c = Tensor.from_indices(basis, other, one)
                        assert a.volume_pairing(c).is_zero()


def test_grade_errors():
    basis = BasisSpec(4)
    one = LaurentPoly.one(1)
    a = Tensor.from_indices(basis, (1,), one)
    b = Tensor.from_indices(basis, (2,), one)
    with pytest.raises(GradeError):
        a.volume_pairing(b)
    # repeated indices wedge to zero rather than raising
    assert Tensor.from_indices(basis, (1, 1), one).is_zero()


def test_equal_up_to_unit():
    basis = BasisSpec(4)
    rng = random.Random(3)
    a = random_tensor(rng, basis, 2, 1)
    t = LaurentPoly.var(1, 1)
    ok, unit = equal_up_to_unit(a * (t ** -2) * -1, a)
    assert ok and unit == LaurentPoly.monomial(-1, (-2,))
    b = a + Tensor.from_indices(basis, (1, 2),
                                LaurentPoly.const(17, 1))
    assert not equal_up_to_unit(a, b)[0]


def test_matching_validation():
    with pytest.raises(WiringError):
        Matching(2, inner=((1, 2),), outer=(1,))  # curve 2 only once
    Matching(2, inner=((1, 2),), outer=(1, 2))


def test_contract_matched_identity():
    # wiring disk generators straight to outer points is the identity
    basis = BasisSpec(4)
    rng = random.Random(4)
    a = random_tensor(rng, basis, 2, 1)
    matching = Matching(4, inner=((1, 2, 3, 4),), outer=(1, 2, 3, 4))
    out = contract_matched([a], matching, BasisSpec(4), 1)
    ok, unit = equal_up_to_unit(out, a)
    assert ok and unit.specialize({1: 1}).terms in \
        ({(0,): 1}, {(0,): -1})
