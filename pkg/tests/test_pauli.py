import numpy as np
import pytest
from hypothesis import given, strategies as st

from isgcodes.pauli import (DimensionError, PauliOperator, commutes, from_vec, multiply, parse_pauli, product,
                            solve_membership)

import oracle


@st.composite
def paulis(draw, n=None):
    n = n if n is not None else draw(st.integers(1, 4))
    return PauliOperator(n, draw(st.integers(0, 3)), draw(st.integers(0, 2 ** n - 1)),
                         draw(st.integers(0, 2 ** n - 1)))


@st.composite
def pauli_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(paulis(n)), draw(paulis(n))


def L(s):
    return PauliOperator.from_string(s)


@given(pauli_pairs())
def test_multiply_matches_matrices(pq):
    p, q = pq
    assert np.allclose(oracle.matrix(multiply(p, q)), oracle.matrix(p) @ oracle.matrix(q))


@given(pauli_pairs())
def test_commutes_matches_matrices(pq):
    p, q = pq
    a, b = oracle.matrix(p), oracle.matrix(q)
    assert commutes(p, q) == np.allclose(a @ b, b @ a)


@given(paulis())
def test_hermitian_predicate_matches_matrix(p):
    m = oracle.matrix(p)
    assert p.is_hermitian() == np.allclose(m, m.conj().T)


@given(paulis())
def test_weight_ignores_phase(p):
    assert p.weight() == PauliOperator(p.n, (p.phase + 1) % 4, p.x, p.z).weight()


def test_involution():
    assert multiply(L("XI"), L("XI")) == PauliOperator.identity(2)


def test_x_times_z_normal_order():
    r = multiply(L("XI"), L("ZI"))
    assert (r.phase, r.x, r.z) == (0, 0b01, 0b01)
    assert np.allclose(oracle.matrix(r), -1j * oracle.single_qubit(2, 0, "Y"))


def test_product_of_bacon_shor_x_checks():
    assert multiply(L("XXII"), L("XXXX")) == L("IIXX")


def test_commutation_examples():
    assert not commutes(L("XXII"), L("ZIZI"))
    assert commutes(L("XXXX"), L("ZIZI"))
    assert commutes(L("XYZI"), PauliOperator.identity(4))


def test_solve_membership_examples():
    gens = [L("XXII"), L("XXXX")]
    assert solve_membership(L("IIXX"), gens) == (0b11, 0)
    assert solve_membership(PauliOperator.identity(4), gens) == (0, 0)
    assert solve_membership(L("ZIII"), [L("XXII")]) is None


def test_solve_membership_reports_sign():
    assert solve_membership(L("-IIXX"), [L("XXII"), L("XXXX")]) == (0b11, 2)


def test_string_round_trip_and_parse_forms():
    for s in ("+XYZI", "-IIZZ", "+iXZ"):
        assert str(L(s)) == s
    assert parse_pauli("XX", 2) == L("XX")
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2}
    assert parse_pauli("X(0,0) Z(1,0)", 3, idx) == L("XIZ")
    assert parse_pauli("-Y(0,1)", 3, idx) == L("-IYI")
    assert L("ZZI").to_labels([(0, 0), (0, 1), (1, 0)]) == "Z(0,0) Z(0,1)"


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        multiply(L("X"), L("XX"))
    with pytest.raises(ValueError):
        parse_pauli("XQ", 2)


def test_from_vec_and_product():
    p = from_vec(L("YZ").vec, 2)
    assert p.is_hermitian() and p.unsigned() == L("YZ").unsigned()
    assert product([L("XI"), L("IX")], 2) == L("XX")
    assert L("XIY").weight() == 2 and L("XIY").y_count == 1
