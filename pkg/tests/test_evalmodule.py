import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from qtet.scalar import ONE, Q, T, DegenerateError, as_scalar, binom2
from qtet.qmatrix import SqMatrix, build, zconj
from qtet.algebra import GENERATORS, extract_t, verify_boxtimes
from qtet.evalmodule import (ALL_BASES, EXCHANGER_TABLE, FREE7, RESOLVE, EvalModule, basis_name,
                             basis_shift, derive_pairing, family_identities, loop_identities,
                             parse_basis, shape_check, verify_all_bases, verify_basis_coherence,
                             verify_eta, verify_eval_identities, verify_exchanger,
                             verify_path_independence, verify_transition_consistency,
                             verify_twists)

from oracle import BasisOracle, mat_to_sympy, same, same_matrix, to_sympy

QV, TV = Fraction(3, 2), Fraction(5, 7)


def sym(d):
    return EvalModule(d)


def num(d, **kw):
    return EvalModule(d, t=TV, q=QV, **kw)


# bases

def test_basis_parsing():
    assert len(ALL_BASES) == 24 == len(RESOLVE)
    assert parse_basis("[1,0,2,3]") == (1, 0, 2, 3) == parse_basis("1023")
    assert basis_name((0, 2, 1, 3)) == "[0,2,1,3]"
    assert basis_shift((0, 1, 2, 3), 1) == (1, 2, 3, 0)
    with pytest.raises(ValueError):
        parse_basis("0012")


def test_rep_matrix_examples():
    m = sym(3)
    assert m.rep_matrix((0, 1, 2, 3), (1, 2)) == build("E", 3)
    assert m.rep_matrix((1, 0, 2, 3), (0, 2)) == build("E", 3)
    assert m.rep_matrix((1, 0, 2, 3), (2, 0)) == build("Einv", 3)
    assert m.rep_matrix((1, 2, 3, 0), (1, 2)) == zconj(build("S", 3, qdir=-1))
    assert m.rep_matrix((0, 2, 1, 3), (2, 0)) == build("M", 3)


def test_full_representation_examples():
    m = sym(2)
    assert verify_boxtimes(m.full_representation((0, 1, 2, 3))).passed
    assert extract_t(m.full_representation((2, 3, 0, 1))) == T
    assert verify_boxtimes(num(3).full_representation((1, 0, 2, 3))).passed


# independent oracle: bases built from eigenvector solves

@pytest.mark.parametrize("d", [1])
def test_rep_tables_symbolic_oracle(d):
    o, m = BasisOracle(d), sym(d)
    for b in ALL_BASES:
        for g in GENERATORS:
            assert same_matrix(mat_to_sympy(m.rep_matrix(b, g)), o.rep(b, g)), (b, g)


def _oracle_module(d, tv, qv):
    o = BasisOracle(d, sp.Rational(tv.numerator, tv.denominator),
                    sp.Rational(qv.numerator, qv.denominator))
    free = [Fraction(int(sp.numer(o.pairing[k])), int(sp.denom(o.pairing[k]))) for k in FREE7]
    return o, EvalModule(d, t=tv, q=qv, free7=free)


def _check_against_oracle(o, m):
    for k, v in o.pairing.items():
        assert same(to_sympy(m.pairing[k]), v), k
    for b in ALL_BASES:
        for g in GENERATORS:
            assert same_matrix(mat_to_sympy(m.rep_matrix(b, g)), o.rep(b, g)), (b, g)
        for c in m.neighbors(b):
            assert same_matrix(mat_to_sympy(m.transition(b, c)), o.transition(b, c)), (b, c)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_bases_transitions_pairings_numeric_oracle(d):
    _check_against_oracle(*_oracle_module(d, TV, QV))


@given(st.sampled_from([Fraction(2), Fraction(-3, 5), Fraction(7, 3)]),
       st.sampled_from([Fraction(-2, 3), Fraction(9, 4), Fraction(1, 5)]))
@settings(max_examples=6, deadline=None)
def test_oracle_at_other_points(qv, tv):
    try:
        o, m = _oracle_module(2, tv, qv)
    except (DegenerateError, AssertionError):
        return
    _check_against_oracle(o, m)


@pytest.mark.parametrize("d", [1, 2])
def test_pairing_cross_ratios_symbolic(d):
    """Cross ratios are independent of how the eta vectors are scaled."""
    o, pr = BasisOracle(d), sym(d).pairing
    for (i, k), (j, l) in itertools.product(itertools.permutations(range(4), 2), repeat=2):
        if len({i, j}) < 2 or len({k, l}) < 2 or i == l or k == j:
            continue
        want = o.pairing[i, j] * o.pairing[k, l] / (o.pairing[i, l] * o.pairing[k, j])
        got = pr[i, j] * pr[k, l] / (pr[i, l] * pr[k, j])
        assert same(to_sympy(got), want)


def test_eta_diagonal_pairings_vanish():
    o = BasisOracle(1)
    assert all(sp.simplify((o.eta[i].T * o.eta_star[i])[0]) == 0 for i in range(4))


# pairing table

@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_pairing_relations_symbolic(d):
    assert derive_pairing(None, d).verify().passed


@pytest.mark.parametrize("d", range(1, 13))
def test_pairing_relations_numeric(d):
    assert derive_pairing(None, d, TV, QV).verify().passed


@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool),
                min_size=7, max_size=7))
@settings(max_examples=30, deadline=None)
def test_pairing_relations_random_free7(free):
    table = derive_pairing(free, 3, TV, QV)
    assert table.verify().passed
    assert table.free7 == tuple(as_scalar(v) for v in free)


def test_pairing_errors():
    with pytest.raises(ValueError):
        derive_pairing([1] * 6, 1)
    with pytest.raises(ValueError):
        derive_pairing([1, 1, 1, 0, 1, 1, 1], 1)


# transitions

def test_transition_examples():
    m = sym(3)
    pr = m.pairing
    assert m.transition((0, 1, 2, 3), (0, 1, 3, 2)) == build("Z", 3)
    assert m.transition((2, 0, 3, 1), (2, 0, 1, 3)) == build("Z", 3)
    assert m.transition((0, 1, 2, 3), (1, 0, 2, 3)) == build("D", 3).scale(pr[0, 3] / pr[1, 3])
    assert m.transition((0, 1, 2, 3), (0, 2, 1, 3)) == build("T", 3).scale(pr[2, 3] / pr[1, 3])
    rt = m.transition((0, 1, 2, 3), (1, 0, 2, 3)).matmul(m.transition((1, 0, 2, 3), (0, 1, 2, 3)))
    assert rt == SqMatrix.identity(4)


def test_loop_value_d2():
    t_, z = build("T", 2), build("Z", 2)
    loop = t_.matmul(z).matmul(t_).matmul(z).matmul(t_).matmul(z)
    assert loop == SqMatrix.identity(3, Q ** -2)


@pytest.mark.parametrize("d", [1, 2])
def test_transition_consistency_symbolic(d):
    m = sym(d)
    assert verify_transition_consistency(m).passed
    assert loop_identities(m).passed


def test_transition_consistency_numeric():
    m = num(3)
    assert verify_transition_consistency(m).passed
    assert verify_path_independence(m).passed


def test_path_independence_symbolic():
    assert verify_path_independence(sym(1)).passed


def test_arbitrary_transition_intertwines():
    m = num(3)
    for src, dst in [((0, 1, 2, 3), (3, 2, 1, 0)), ((1, 3, 0, 2), (2, 0, 3, 1))]:
        s = m.transition(src, dst)
        for g in GENERATORS:
            assert s.inverse().matmul(m.rep_matrix(src, g)).matmul(s) == m.rep_matrix(dst, g)


# eta and exchanger

@pytest.mark.parametrize("d", [1, 2])
def test_eta(d):
    m = sym(d)
    for b in ALL_BASES[:6]:
        assert verify_eta(m, b).passed


def test_exchanger_examples():
    d = 3
    m = sym(d)
    c = binom2(d)
    x = m.exchanger_tabulated((0, 2, 1, 3))
    y = m.exchanger_tabulated((1, 3, 2, 0))
    for i in range(d + 1):
        for j in range(d + 1):
            if i + j == d:
                assert x[i, j] == T ** i * Q ** (i * (d - 1) - c)
                assert y[i, j] == -(T ** (d - i)) * Q ** (i * (d - 1) - c)
            else:
                assert x[i, j].is_zero() and y[i, j].is_zero()
    assert x.matmul(x) == SqMatrix.identity(4, T ** 3)
    pr = m.pairing
    assert m.exchanger_scalar((0, 1, 2, 3)) == -(Q ** c) * pr[1, 0] / pr[3, 0]


def test_exchanger_by_conjugation_d1():
    x = sym(1).exchanger_matrix((0, 1, 2, 3))
    assert x.matmul(x) == SqMatrix.identity(2, T)


@pytest.mark.parametrize("d", [1, 2])
def test_verify_exchanger(d):
    assert verify_exchanger(sym(d)).passed


def test_exchanger_table_covers_eight_bases():
    assert len(EXCHANGER_TABLE) == 8


# identity families, coherence, twists, shapes

def test_family_identities_d1():
    assert family_identities(sym(1)).passed


def test_m_z_identity_d3():
    z = build("Z", 3)
    m = build("M", 3).matmul(z).matmul(build("M", 3, qdir=-1, t=T.inv())).matmul(z)
    assert m == SqMatrix.identity(4)


@pytest.mark.parametrize("d", [1, 2])
def test_eval_identities_and_coherence(d):
    m = sym(d)
    assert verify_eval_identities(m).passed
    assert verify_basis_coherence(m).passed


def test_all_bases_numeric():
    assert verify_all_bases(num(4)).passed


@pytest.mark.parametrize("d", [1, 2])
def test_twists(d):
    assert verify_twists(sym(d)).passed


def test_shape_check_d3():
    m = sym(3)
    for b in ALL_BASES:
        assert shape_check(m, b).passed, b


def test_shift_symmetries():
    m = sym(2)
    for b in ALL_BASES:
        for g in GENERATORS:
            g2 = ((g[0] + 2) % 4, (g[1] + 2) % 4)
            g1 = ((g[0] + 1) % 4, (g[1] + 1) % 4)
            assert m.rep_matrix(basis_shift(b, 2), g2) == m.rep_matrix(b, g)
            assert m.rep_matrix(basis_shift(b, 1), g1) == \
                m.rep_matrix(b, g).map(lambda x: x.invert_vars("t"))


def test_degenerate_t_rejected():
    with pytest.raises(DegenerateError):
        EvalModule(2, t=Fraction(3, 2), q=Fraction(3, 2))
    with pytest.raises(ValueError):
        EvalModule(0)
