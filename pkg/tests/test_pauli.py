"""Pauli group arithmetic against a dense Kronecker-product oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhombuscode.pauli import (
    PauliOperator,
    apply,
    commutes,
    from_symplectic_vector,
    identity,
    multiply,
    parse_pauli,
    symplectic_vector,
    to_string,
    weight,
)
from rhombuscode.states import PureState

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense_matrix(op: PauliOperator) -> np.ndarray:
    """Oracle: build the full 2^n matrix from the masks and phase.

    Qubit 1 is bit 0 of the basis index, so it is the *last* Kronecker
    factor under numpy's row-major ordering.
    """
    mat = np.eye(1, dtype=complex)
    for q in range(op.n - 1, -1, -1):
        fx = _X if (op.x_mask >> q) & 1 else _I
        fz = _Z if (op.z_mask >> q) & 1 else _I
        mat = np.kron(mat, fx @ fz)
    return (1j) ** op.phase * mat


def random_op(rng: np.random.Generator, n: int) -> PauliOperator:
    full = (1 << n) - 1
    return PauliOperator(
        n,
        int(rng.integers(0, full + 1)),
        int(rng.integers(0, full + 1)),
        int(rng.integers(0, 4)),
    )


# --- parsing and serialization -------------------------------------------


def test_parse_examples():
    op = parse_pauli("X1X2X3X4", 6)
    assert (op.x_mask, op.z_mask, op.phase) == (0b1111, 0, 0)
    op = parse_pauli("Z1Z3Z5", 6)
    assert (op.x_mask, op.z_mask, op.phase) == (0, 0b10101, 0)
    assert parse_pauli("", 3) == identity(3)


def test_parse_y_carries_phase():
    op = parse_pauli("Y2", 3)
    assert (op.x_mask, op.z_mask, op.phase) == (0b010, 0b010, 1)
    assert np.allclose(
        dense_matrix(op), np.kron(_I, np.kron(np.array([[0, -1j], [1j, 0]]), _I))
    )


@pytest.mark.parametrize(
    "bad", ["X0", "X7", "X1X1", "Q1", "X1 Z2", "x1", "X", "X1Z"]
)
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_pauli(bad, 6)


def test_to_string_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(300):
        n = int(rng.integers(1, 9))
        op = random_op(rng, n)
        text = to_string(op)
        for prefix in ("+i", "-i", "-"):
            if text.startswith(prefix):
                text = text[len(prefix):]
                break
        parsed = parse_pauli(text, n)
        assert (parsed.x_mask, parsed.z_mask) == (op.x_mask, op.z_mask)


def test_x_times_z_is_minus_i_y():
    prod = multiply(parse_pauli("X1", 1), parse_pauli("Z1", 1))
    assert to_string(prod) == "-iY1"
    assert np.allclose(dense_matrix(prod), _X @ _Z)


# --- multiply / commutes / apply against the dense oracle -----------------


def test_multiply_matches_dense():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        a, b = random_op(rng, n), random_op(rng, n)
        assert np.allclose(
            dense_matrix(multiply(a, b)), dense_matrix(a) @ dense_matrix(b)
        )


def test_commutes_exhaustive_small():
    for n in (1, 2):
        full = (1 << n) - 1
        ops = [
            PauliOperator(n, x, z)
            for x in range(full + 1)
            for z in range(full + 1)
        ]
        for a in ops:
            for b in ops:
                ma, mb = dense_matrix(a), dense_matrix(b)
                assert commutes(a, b) == bool(
                    np.allclose(ma @ mb, mb @ ma)
                )


def test_apply_matches_dense():
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(1, 6))
        op = random_op(rng, n)
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        state = PureState(n, amps)
        got = apply(op, state).amplitudes
        want = dense_matrix(op) @ amps
        assert np.allclose(got, want)


def test_weight_and_symplectic_round_trip():
    op = parse_pauli("X1Y3Z5", 6)
    assert weight(op) == 3
    back = from_symplectic_vector(symplectic_vector(op), 6)
    assert (back.x_mask, back.z_mask) == (op.x_mask, op.z_mask)


# --- hypothesis properties -------------------------------------------------

masks = st.integers(min_value=0, max_value=(1 << 8) - 1)
phases = st.integers(min_value=0, max_value=3)
ops8 = st.builds(lambda x, z, p: PauliOperator(8, x, z, p), masks, masks, phases)


@settings(max_examples=400, deadline=None)
@given(ops8, ops8, ops8)
def test_multiply_associative(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@settings(max_examples=400, deadline=None)
@given(ops8)
def test_square_is_plus_minus_identity(a):
    sq = multiply(a, a)
    assert sq.x_mask == 0 and sq.z_mask == 0
    assert sq.phase in (0, 2)


@settings(max_examples=400, deadline=None)
@given(ops8, ops8)
def test_commutation_from_product_order(a, b):
    ab, ba = multiply(a, b), multiply(b, a)
    assert (ab == ba) == commutes(a, b)
    # anticommuting pairs differ by exactly a sign
    assert ab.phase % 2 == ba.phase % 2


@settings(max_examples=200, deadline=None)
@given(ops8, ops8)
def test_weight_subadditive(a, b):
    assert weight(multiply(a, b)) <= weight(a) + weight(b)


@settings(max_examples=100, deadline=None)
@given(
    st.builds(
        lambda x, z, p: PauliOperator(5, x, z, p),
        st.integers(0, 31),
        st.integers(0, 31),
        phases,
    ),
    st.builds(
        lambda x, z, p: PauliOperator(5, x, z, p),
        st.integers(0, 31),
        st.integers(0, 31),
        phases,
    ),
)
def test_apply_is_group_homomorphism(a, b):
    state = PureState.basis(5, 13)
    via_product = apply(multiply(a, b), state)
    via_sequence = apply(a, apply(b, state))
    assert via_product.isclose(via_sequence)
