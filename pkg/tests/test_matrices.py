import pytest

from virtual_knot_lab.core.exceptions import NonInvertibleError, ParamsMismatchError
from virtual_knot_lab.modules.algebra.exactalg import function_field
from virtual_knot_lab.modules.algebra.matrices import (
    RingDescriptor,
    block,
    format_matrix,
    hermitian,
    identity,
    mat_equal,
    mat_inverse,
    mat_mul,
    minor,
    transpose,
    vec_mat,
)
from virtual_knot_lab.modules.algebra.quat import Quaternion, classical_params, conj, matrix_params

F = function_field(("t",))
H = RingDescriptor(F, classical_params(F))
M2 = RingDescriptor(F, matrix_params(F))
K = RingDescriptor(F)


def q(ring, *coords):
    return Quaternion.from_coords(ring.params, *coords)


def test_identity_is_neutral():
    M = ((q(H, 1, 2, 0, 0), q(H, 0, 0, 1, 0)), (q(H, 0, 0, 0, 1), q(H, 3, 0, 0, 0)))
    assert mat_equal(mat_mul(identity(2, H), M), M)
    assert mat_equal(mat_mul(M, identity(2, H)), M)


def test_shape_mismatch():
    with pytest.raises(ParamsMismatchError):
        mat_mul(identity(2, K), identity(3, K))


def test_inverse_over_the_quaternions():
    i, j = q(H, 0, 1, 0, 0), q(H, 0, 0, 1, 0)
    M = ((q(H, 1, 1, 0, 0), j), (-j, q(H, 1, 1, 0, 0)))
    assert mat_equal(mat_mul(M, mat_inverse(M, H)), identity(2, H))
    assert mat_equal(mat_mul(mat_inverse(M, H), M), identity(2, H))
    assert i * j != j * i


def test_inverse_with_zero_divisor_columns():
    # both entries of the first column are isotropic in the split algebra
    e = q(M2, 1, 0, 1, 0)
    f = q(M2, 1, 0, -1, 0)
    M = ((e, f), (f, e))
    inv = mat_inverse(M, M2)
    assert mat_equal(mat_mul(M, inv), identity(2, M2))


def test_singular_matrix():
    one = K.one()
    with pytest.raises(NonInvertibleError):
        mat_inverse(((one, one), (one, one)), K)


def test_block_embedding():
    S = ((K.coerce(2), K.coerce(3)), (K.coerce(5), K.coerce(7)))
    B = block(S, 1, 3, K)
    assert format_matrix(B) == [["1", "0", "0"], ["0", "2", "3"], ["0", "5", "7"]]
    with pytest.raises(ParamsMismatchError):
        block(S, 2, 3, K)


def test_minor_transpose_hermitian():
    M = ((q(H, 1, 1, 0, 0), q(H, 0, 0, 1, 0)), (q(H, 2, 0, 0, 0), q(H, 0, 0, 0, 1)))
    assert minor(M, 0, 1) == ((q(H, 2, 0, 0, 0),),)
    assert transpose(M)[0][1] == M[1][0]
    assert hermitian(M)[0][1] == conj(M[1][0])
    assert hermitian(M)[1][0] == conj(M[0][1])


def test_row_vector_product():
    M = ((K.coerce(1), K.coerce(2)), (K.coerce(3), K.coerce(4)))
    assert vec_mat((K.coerce(1), K.coerce(1)), M) == (K.coerce(4), K.coerce(6))


def test_describe_and_extend():
    assert H.describe() == "quaternions (-1, -1) over QQ(i)(t)"
    wider = H.extend("t", "s")
    assert wider.field.names == ("t", "s")
    assert wider.lift(q(H, 1, 2, 0, 0)).field == wider.field
