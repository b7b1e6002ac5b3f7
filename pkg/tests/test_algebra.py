from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtet.scalar import Q, T, as_scalar
from qtet.qmatrix import SqMatrix, build, zconj
from qtet.algebra import (GENERATORS, GeneratorAssignment, NotAModuleError, UqTriple, apply_rho,
                          apply_sigma, apply_theta, casimir, dual_assignment, extract_t, gen_name,
                          kappa_pullback, parse_gen, shift, upsilon, verify_boxtimes,
                          verify_equitable, verify_upsilon, weyl_consequences)
from qtet.evalmodule import EvalModule


def vd_triple(d):
    return UqTriple.from_xyz(build("E", d), build("K", d), zconj(build("E", d, qdir=-1)))


def identity_triple(n=2):
    one = SqMatrix.identity(n)
    return UqTriple.from_xyz(one, one, one)


def vd(d, **kw):
    return EvalModule(d, **kw).full_representation()


def test_generator_names():
    assert [gen_name(g) for g in GENERATORS] == ["x01", "x12", "x23", "x30", "x02", "x13", "x20", "x31"]
    assert parse_gen("x30") == (3, 0) == parse_gen("30")
    assert shift((3, 1), 2) == (1, 3)
    with pytest.raises(ValueError):
        parse_gen("11")


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_equitable_vd_triple(d):
    assert verify_equitable(vd_triple(d)).passed


def test_equitable_identity_and_negative_control():
    assert verify_equitable(identity_triple()).passed
    k = build("K", 2)
    assert not verify_equitable(UqTriple.from_xyz(k, k, k)).passed


@pytest.mark.parametrize("d", [1, 2, 3])
def test_casimir_on_vd(d):
    assert casimir(vd_triple(d)) == SqMatrix.identity(d + 1, Q ** (d + 1) + Q ** (-d - 1))


def test_casimir_examples():
    assert casimir(identity_triple()) == SqMatrix.identity(2, Q + Q.inv())
    q = Fraction(3, 2)
    tr = UqTriple.from_xyz(build("E", 1, q=q), build("K", 1, q=q),
                           zconj(build("E", 1, qdir=-1, q=q)))
    assert casimir(tr, q) == SqMatrix.identity(2, as_scalar(Fraction(97, 36)))


def test_weyl_consequences():
    assert weyl_consequences(build("E", 3), build("K", 3)).passed
    g = vd(3)
    assert weyl_consequences(g["01"], g["12"], g["23"]).passed
    one = SqMatrix.identity(3)
    assert weyl_consequences(one, one).passed
    k = build("K", 2)
    r = weyl_consequences(k, k)
    assert not r.passed
    assert r.failures()[0].witness == "hypothesis not satisfied"


@pytest.mark.parametrize("d", [1, 2])
def test_boxtimes_vd_and_trivial(d):
    assert verify_boxtimes(vd(d)).passed
    assert verify_boxtimes(GeneratorAssignment.trivial(3)).passed


def test_boxtimes_negative_control():
    g = vd(2)
    mats = dict(g.mats)
    mats[(0, 1)], mats[(2, 3)] = mats[(2, 3)], mats[(0, 1)]
    assert not verify_boxtimes(g.replace(mats)).passed


def test_assignment_validation():
    one = SqMatrix.identity(2)
    with pytest.raises(ValueError, match="missing"):
        GeneratorAssignment({(0, 1): one})
    mats = {g: one for g in GENERATORS}
    mats[(0, 1)] = SqMatrix.identity(3)
    with pytest.raises(ValueError, match="sizes"):
        GeneratorAssignment(mats)


def test_kappa_pullback():
    g = vd(3)
    tr = kappa_pullback(g, 0)
    assert (tr.x, tr.y, tr.z) == (g["23"], g["31"], g["12"])
    triv = kappa_pullback(GeneratorAssignment.trivial(2), 1)
    one = SqMatrix.identity(2)
    assert (triv.x, triv.y, triv.z) == (one, one, one)
    assert verify_equitable(kappa_pullback(g, 2)).passed


@pytest.mark.parametrize("i", range(4))
def test_upsilon_scalar(i):
    assert upsilon(vd(2), i) == SqMatrix.identity(3, Q ** 3 + Q ** -3)
    assert upsilon(GeneratorAssignment.trivial(1), i) == SqMatrix.identity(1, Q + Q.inv())


def test_verify_upsilon():
    assert verify_upsilon(vd(2), 2).passed


@pytest.mark.parametrize("d", [1, 2, 3])
def test_twists_and_extract_t(d):
    g = vd(d)
    assert extract_t(g) == T
    assert extract_t(apply_rho(g)) == T.inv()
    assert extract_t(apply_rho(g, 2)) == T
    assert verify_boxtimes(apply_rho(g)).passed
    assert verify_boxtimes(apply_sigma(g)).passed
    dual = dual_assignment(g)
    assert dual.qdir == -1
    assert verify_boxtimes(dual).passed
    assert extract_t(dual) == T
    th = apply_theta(g)
    assert verify_boxtimes(th).passed
    assert apply_theta(th) == g


def test_extract_t_specialized():
    assert extract_t(vd(1, q=Fraction(3, 2), t=Fraction(5, 7))) == as_scalar(Fraction(5, 7))


def test_extract_t_errors():
    with pytest.raises(NotAModuleError, match="not distinct"):
        extract_t(GeneratorAssignment.trivial(2))
    g = vd(2)
    mats = dict(g.mats)
    mats[(3, 0)] = build("K", 2)
    with pytest.raises(NotAModuleError):
        extract_t(g.replace(mats))


@given(st.integers(0, 7))
def test_rho_order_four(k):
    g = vd(1)
    assert apply_rho(g, k) == apply_rho(g, k % 4)
    assert apply_rho(apply_rho(g, k), 4 - k % 4) == g


@given(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool))
@settings(max_examples=25, deadline=None)
def test_boxtimes_at_random_t(t):
    q = Fraction(3, 2)
    try:
        m = EvalModule(2, t=t, q=q)
    except ValueError:
        return
    g = m.full_representation()
    assert verify_boxtimes(g).passed
    assert extract_t(g) == as_scalar(t)
