import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtet.scalar import ONE, Q, T, DegenerateError, Scalar, q_bracket, q_pochhammer, as_scalar
from qtet.qmatrix import (SqMatrix, SingularMatrixError, MatrixName, TAGS, band_shape, build,
                          commutator, is_irreducible_tridiagonal, mat_inverse, qcomm, zconj,
                          nullspace, commuting_solutions)

from oracle import ORACLES, load_golden, mat_to_sympy, same_matrix
from strategies import scalars

DS = (1, 2, 3, 4)


def B(tag, d, qdir=1, t=None):
    return build(tag, d, qdir=qdir, t=t)


# closed forms against the independent sympy definitions

@pytest.mark.parametrize("tag", sorted(ORACLES))
@pytest.mark.parametrize("d", DS)
def test_builders_match_oracle(tag, d):
    assert same_matrix(mat_to_sympy(B(tag, d)), ORACLES[tag](d))


@pytest.mark.parametrize("tag", sorted(ORACLES))
def test_builders_match_d3_golden(tag):
    assert same_matrix(mat_to_sympy(B(tag, 3)), load_golden(tag))


def test_examples():
    z = B("Z", 3)
    assert [[int(x == ONE) for x in r] for r in z.rows] == [[0, 0, 0, 1], [0, 0, 1, 0],
                                                           [0, 1, 0, 0], [1, 0, 0, 0]]
    assert B("K", 3).diagonal() == (Q ** 3, Q, Q ** -1, Q ** -3)
    t3 = B("T", 3)
    assert t3.rows[3] == (ONE, -Q ** -2 * q_bracket(3), Q ** -4 * q_bracket(3), -Q ** -6)


def test_q_orientation_substitutes_q():
    for tag in TAGS:
        m = B(tag, 3)
        assert B(tag, 3, qdir=-1) == m.map(lambda x: x.invert_vars("q"))


# identities among the families

@pytest.mark.parametrize("d", DS)
def test_inverse_identities(d):
    Z, I = B("Z", d), SqMatrix.identity(d + 1)
    assert mat_inverse(Z) == Z
    assert Z.matmul(Z) == I
    assert mat_inverse(B("E", d)) == B("Einv", d)
    assert mat_inverse(B("L", d)) == B("Linv", d)
    assert mat_inverse(B("T", d)) == B("T", d, -1)
    K = B("K", d)
    assert mat_inverse(K) == B("K", d, -1) == zconj(K)
    poch = q_pochhammer(T * Q ** (1 - d), Q ** 2, d)
    assert mat_inverse(B("D", d)) == zconj(B("D", d, -1)).scale(poch.inv())
    cal = B("CalD", d)
    assert mat_inverse(cal) == B("CalD", d, -1, T.inv())
    assert mat_inverse(cal) == zconj(cal).scale(T ** -d * Q ** (d * (1 - d)))


@pytest.mark.parametrize("d", DS)
def test_conjugation_identities(d):
    E, K, T_ = B("E", d), B("K", d), B("T", d)
    X = T_.matmul(B("Z", d))
    assert mat_inverse(X).matmul(K).matmul(X) == E
    Dc = B("CalD", d, t=T.inv())
    assert B("F", d) == Dc.matmul(E).matmul(mat_inverse(Dc))
    Dq = B("D", d)
    assert B("G", d) == mat_inverse(Dq).matmul(E).matmul(Dq)
    assert B("L", d) == Dq.matmul(E).matmul(mat_inverse(Dq))
    assert B("S", d) == T_.matmul(B("G", d, -1)).matmul(B("T", d, -1))
    assert B("M", d) == B("T", d, -1).matmul(B("Linv", d)).matmul(T_)


@pytest.mark.parametrize("d", DS)
def test_commutator_forms(d):
    Ei, Ki = B("E", d, -1), B("K", d, -1)
    assert B("F", d) == Ki - qcomm(Ei, Ki).scale(T)
    assert B("G", d) == B("E", d) - B("K", d) + B("F", d, -1)
    E = B("E", d)
    assert B("S", d) == E - qcomm(E, zconj(Ei)).scale(T)


@pytest.mark.parametrize("d", DS)
def test_m_and_z_identity(d):
    Z = B("Z", d)
    m = B("M", d).matmul(Z).matmul(B("M", d, -1, T.inv())).matmul(Z)
    assert m == SqMatrix.identity(d + 1)


@pytest.mark.parametrize("d", DS)
def test_row_sums(d):
    for tag in ("E", "S"):
        assert set(B(tag, d).row_sums()) == {Q ** d}


def test_zbz_entries():
    m = B("M", 3)
    z = zconj(m)
    assert all(z[i, j] == m[3 - i, 3 - j] for i in range(4) for j in range(4))


# shapes

def test_shapes():
    assert band_shape(B("K", 3)).kind == "diagonal"
    assert band_shape(B("Z", 3)).kind == "anti-diagonal"
    assert band_shape(B("E", 3)).kind == "upper bidiagonal"
    s = band_shape(B("S", 3))
    assert s.kind == "tridiagonal" and s.irreducible
    tr = band_shape(B("T", 3))
    assert tr.kind == "lower triangular"
    assert tr.diagonal == (ONE, -ONE, Q ** -2, -Q ** -6)
    assert band_shape(B("Einv", 3)).kind == "upper triangular"
    assert band_shape(B("M", 3)).kind == "upper Hessenberg"
    assert not is_irreducible_tridiagonal(B("E", 3))


# degeneracy and errors

def test_degenerate_specialization():
    with pytest.raises(DegenerateError):
        build("L", 2, t=Fraction(3, 2), q=Fraction(3, 2))
    with pytest.raises(DegenerateError):
        build("F", 2, t=0)
    with pytest.raises(ValueError):
        MatrixName("X")


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        SqMatrix.zero(3).inverse()


def test_commutator_with_self_is_zero():
    m = B("S", 3)
    assert commutator(m, m).is_zero()


# serialization

@pytest.mark.parametrize("tag", TAGS)
def test_json_round_trip(tag):
    m = B(tag, 3)
    assert SqMatrix.from_json(m.to_json()) == m
    obj = json.loads(m.to_json())
    assert obj["dim"] == 4


def test_json_rejects_non_canonical():
    with pytest.raises(ValueError):
        SqMatrix.from_json_obj({"dim": 1, "entries": [["q^1+1 / 1"]]})
    with pytest.raises(ValueError):
        SqMatrix.from_json_obj({"dim": 2, "entries": [["1 / 1"]]})


# linear algebra helpers

def test_nullspace_and_commutant():
    sols = commuting_solutions([(B("S", 2), B("S", 2))], 3)
    assert len(sols) == 3
    ns = nullspace([[ONE, -ONE, 0], [0, ONE, -ONE]], 3)
    assert len(ns) == 1
    assert ns[0][0] == ns[0][1] == ns[0][2]


@st.composite
def matrices(draw, n=2):
    return SqMatrix.from_function(n, lambda i, j: draw(scalars()))


@given(matrices(), matrices())
@settings(max_examples=12, deadline=None)
def test_matrix_ring_properties(x, y):
    assert (x + y) - y == x
    assert commutator(x, y) == -commutator(y, x)
    assert x.matmul(y).transpose() == y.transpose().matmul(x.transpose())
    try:
        xi = x.inverse()
    except SingularMatrixError:
        return
    assert xi.matmul(x) == SqMatrix.identity(2)
