from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burchkit import FieldSpec, Matrix, kernel_basis, membership, rref
from burchkit.errors import InputError
from burchkit import exactla as la


def test_rref_small_prime():
    F = FieldSpec.prime(7)
    R, piv, r = rref(Matrix(F, [[2, 4, 1], [1, 2, 3]]))
    assert r == 2
    assert piv == [0, 2]
    assert R.entries() == ((1, 2, 0), (0, 0, 1))


def test_rref_rational_keeps_fractions():
    F = FieldSpec.rational()
    R, piv, r = rref(Matrix(F, [[2, 1], [4, 3]]))
    assert r == 2 and R.entries() == ((1, 0), (0, 1))
    K = kernel_basis(Matrix(F, [[3, 1]]))
    assert K.entries() == ((Fraction(-1, 3),), (1,))


def test_membership(field):
    A = Matrix(field, [[1, 0], [0, 1], [1, 1]])
    c = membership(A, (2, 3, 5))
    assert c == (2, 3)
    assert membership(A, (1, 1, 0)) is None
    with pytest.raises(InputError):
        membership(A, (1, 2))


def test_ragged_matrix_rejected(field):
    with pytest.raises(InputError):
        Matrix(field, [[1, 2], [3]])


def test_bad_characteristic():
    with pytest.raises(InputError):
        FieldSpec.prime(32004)


def test_intersection_and_containment(field):
    A = la.row_space(field, field.array([[1, 0, 0], [0, 1, 0]]), 3)
    B = la.row_space(field, field.array([[0, 1, 0], [0, 0, 1]]), 3)
    I = la.intersect(field, A, B, 3)
    assert I.shape[0] == 1
    assert la.subspace_le(field, I, A) and la.subspace_le(field, I, B)
    assert not la.subspace_le(field, A, B)


def test_left_kernel_row_convention(field):
    a = field.array([[1, 2], [2, 4], [0, 1]])
    K = la.left_kernel(field, a)
    assert K.shape[0] == 1
    assert not np.any(field.matmul(K, a))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([32003, 0]))
def test_kernel_and_rank_nullity(rows, char):
    F = FieldSpec.from_char(char)
    A = Matrix(F, rows)
    K = kernel_basis(A)
    assert (A @ K).is_zero() if K.cols else True
    _, _, r = rref(A)
    assert r + K.cols == A.cols


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([32003, 0]))
def test_rref_idempotent(rows, char):
    F = FieldSpec.from_char(char)
    R, piv, r = rref(Matrix(F, rows))
    R2, piv2, r2 = rref(R)
    assert R2 == R and piv2 == piv and r2 == r
