from fractions import Fraction

import pytest
import sympy as sp

from qtet.scalar import ONE, A, B, C, Q, as_scalar
from qtet.qmatrix import SqMatrix, build, has_pattern, qcomm
from qtet.algebra import extract_t, verify_equitable
from qtet.leonard import (FeasibleSeq, InfeasibleError, NotMultiplicityFreeError, aw_triple,
                          boxtimes_realization, build_leonard_on_Vd, compact_basis, dagger_check,
                          eigenbasis, is_feasible_array, parameter_array, relatives, split_form,
                          vd_triple, verify_aw, verify_boxtimes_realization, verify_compact,
                          verify_completions, verify_leonard_shape, verify_relatives,
                          verify_split, z3_completions, ROW_BASES)

import oracle as o
from oracle import mat_to_sympy, same, same_matrix, to_sympy

POINT = dict(a=Fraction(2, 7), b=Fraction(5, 2), c=Fraction(7, 4), q=Fraction(3, 2))


def sym(d):
    return FeasibleSeq(d=d)


def num(d):
    return FeasibleSeq(d=d, **POINT)


# feasibility and parameter arrays

def test_feasibility_clauses():
    with pytest.raises(InfeasibleError, match=r"\(i\) a\^2"):
        FeasibleSeq(a=Fraction(2, 3), b=Fraction(5, 2), c=Fraction(7, 4), d=3, q=Fraction(3, 2))
    with pytest.raises(InfeasibleError, match=r"\(ii\) abc"):
        FeasibleSeq(a=Fraction(1, 2), b=Fraction(1, 2), c=4, d=1, q=Fraction(3, 2))
    with pytest.raises(InfeasibleError):
        FeasibleSeq(a=0, d=1)
    assert FeasibleSeq(a=Fraction(2, 3), b=Fraction(5, 2), c=Fraction(7, 4), d=1,
                       q=Fraction(3, 2)).violation() is None
    assert sym(3).violation() is None


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_parameter_array_oracle(d):
    p = parameter_array(sym(d))
    for n in range(d + 1):
        assert same(to_sympy(p.theta[n]), o.theta(n, d))
        assert same(to_sympy(p.theta_star[n]), o.theta(n, d, o.b))
    for n in range(1, d + 1):
        assert same(to_sympy(p.phi[n - 1]), o.phi(n, d))
        assert same(to_sympy(p.phi_flat[n - 1]), o.phi_flat(n, d))
    assert is_feasible_array(p)


def test_theta_zero():
    d = 3
    assert parameter_array(sym(d)).theta[0] == A * Q ** -d + A.inv() * Q ** d


def test_relatives_rows():
    s = sym(3)
    p = parameter_array(s)
    pa = parameter_array(s.with_(a=A.inv()))
    assert pa.theta == tuple(reversed(p.theta))
    assert pa.theta_star == p.theta_star
    assert (pa.phi, pa.phi_flat) == (p.phi_flat, p.phi)
    assert parameter_array(s.with_(c=C.inv())) == p
    rel = relatives(s)
    assert all(row["matches"] for row in rel["table"])
    assert len(rel["orbit"]) == 8
    assert verify_relatives(s).passed
    assert verify_relatives(num(2)).passed


# Askey-Wilson triples

@pytest.mark.parametrize("basis", sorted(ROW_BASES))
def test_row_bases_are_equitable(basis):
    assert verify_equitable(vd_triple(3, basis)).passed


@pytest.mark.parametrize("d", [1, 2])
def test_aw_relations_symbolic(d):
    s = sym(d)
    assert verify_aw(s, vd_triple(d, "y-inv")).passed


def test_aw_triple_identity_example():
    one = SqMatrix.identity(2)
    from qtet.algebra import UqTriple
    s = FeasibleSeq(a=1, b=1, c=1, d=1, q=Fraction(3, 2), check=False)
    big_a, _, _ = aw_triple(s, UqTriple.from_xyz(one, one, one))
    assert big_a == SqMatrix.identity(2, as_scalar(2))


# split forms

@pytest.mark.parametrize("d", [1, 2, 3])
def test_split_forms_oracle(d):
    s = sym(d)
    for kind in ("aas", "aas2"):
        want_a, want_b = o.split_pair(d, kind)
        real = build_leonard_on_Vd(s, form=kind)
        assert same_matrix(mat_to_sympy(real.A), want_a)
        assert same_matrix(mat_to_sympy(real.B), want_b)
        sa, sb = split_form(parameter_array(s), kind)
        assert (sa, sb) == (real.A, real.B)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_verify_split(d):
    assert verify_split(sym(d)).passed
    assert verify_split(sym(d), dual=True).passed


# completions

@pytest.mark.parametrize("d", [1, 2])
def test_completions_symbolic(d):
    real = build_leonard_on_Vd(sym(d))
    rep = verify_completions(real)
    assert rep.passed
    c, cp = z3_completions(real)
    assert cp - c == qcomm(real.A, real.B)


def test_dagger():
    assert dagger_check(build_leonard_on_Vd(sym(1))).passed
    assert dagger_check(build_leonard_on_Vd(num(3))).passed


# compact basis and the evaluation-module realization

def test_compact_example_d3():
    real = compact_basis(sym(3))
    assert same_matrix(mat_to_sympy(real.A), o.EXAMPLE_A)
    assert same_matrix(mat_to_sympy(real.B), o.EXAMPLE_B)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_compact_completions_oracle(d):
    real = compact_basis(sym(d))
    c, cp = z3_completions(real)
    assert same_matrix(mat_to_sympy(c), o.compact_c(d))
    assert same_matrix(mat_to_sympy(cp), o.compact_c_dual(d))
    assert has_pattern(c, "upper triangular") and has_pattern(cp, "lower triangular")


def test_compact_c_entry_formula():
    d = 4
    c, _ = z3_completions(compact_basis(sym(d)))
    for n in range(2, d + 1):
        want = (C * Q ** (d + 1) * (Q ** (d - n + 1) - Q ** (n - d - 1))
                * (Q ** (d - n + 2) - Q ** (n - d - 2)))
        assert c[n - 2, n] == want


@pytest.mark.parametrize("d", [1, 2])
def test_verify_compact(d):
    assert verify_compact(sym(d)).passed


def test_boxtimes_realization_t():
    s = sym(1)
    real = boxtimes_realization(s)
    assert extract_t(real.extra["rep"]) == A * B / C


@pytest.mark.parametrize("d", [1, 2])
def test_verify_boxtimes_realization(d):
    assert verify_boxtimes_realization(sym(d)).passed


def test_verify_boxtimes_realization_numeric():
    assert verify_boxtimes_realization(num(4)).passed


# Leonard pair shape

def test_shape_split_pair_numeric():
    s = num(2)
    p = parameter_array(s)
    real = build_leonard_on_Vd(s, form="aas")
    assert verify_leonard_shape(real.A, real.B, p.theta, p.theta_star).passed


def test_shape_compact_numeric():
    s = num(3)
    p = parameter_array(s)
    real = compact_basis(s)
    assert verify_leonard_shape(real.A, real.B, p.theta, p.theta_star).passed


def test_shape_negative_control():
    k = build("K", 2, q=Fraction(3, 2))
    assert not verify_leonard_shape(k, k).passed


def test_not_multiplicity_free():
    with pytest.raises(NotMultiplicityFreeError):
        eigenbasis(SqMatrix.identity(2), [ONE, ONE])
