"""Codewords, logical sets, and the two independent distance methods."""

import numpy as np
import pytest

from rhombuscode.engine import (
    LogicalSet,
    codeword_zero,
    distance_kl_oracle,
    distance_symplectic,
    find_logical_set,
    logical_basis_state,
    require_independent,
    stabilizer_rank,
    verify_code,
    verify_logical_set,
)
from rhombuscode.lattice import CodeSpec, build_named, build_unit, stack_grid
from rhombuscode.pauli import commutes, parse_pauli, to_string, weight

# basis indices of the four-term unit codewords; bit i of the index is
# the value of qubit i+1, so e.g. |110011> (qubits 1..6) is 0b110011.
ZERO_L_SUPPORT = {0b000000, 0b001111, 0b110011, 0b111100}
ONE_L_SUPPORT = {0b000101, 0b001010, 0b110110, 0b111001}


# --- codewords ---------------------------------------------------------------


def test_codeword_zero_unit_exact():
    state = codeword_zero(build_unit()).amplitudes
    for idx in range(64):
        want = 0.5 if idx in ZERO_L_SUPPORT else 0.0
        assert state[idx] == want  # exact dyadic equality


def test_codeword_one_unit_exact():
    code = build_unit()
    logicals = LogicalSet(code.logical_pairs)
    state = logical_basis_state(code, logicals, "10").amplitudes
    for idx in range(64):
        want = 0.5 if idx in ONE_L_SUPPORT else 0.0
        assert state[idx] == want


def test_logical_basis_orthonormal():
    code = build_unit()
    logicals = LogicalSet(code.logical_pairs)
    states = [
        logical_basis_state(code, logicals, bits)
        for bits in ("00", "01", "10", "11")
    ]
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            assert a.inner(b) == pytest.approx(1.0 if i == j else 0.0, abs=1e-14)


def test_codeword_requires_independent_generators():
    base = build_unit()
    doubled = CodeSpec(base.n, base.stabilizers + base.stabilizers[:1])
    assert stabilizer_rank(doubled) == 4
    with pytest.raises(ValueError):
        require_independent(doubled)


# --- logical-set verification -------------------------------------------------


@pytest.mark.parametrize("name", ["unit", "two_vertical", "grid_2x2"])
def test_transcribed_logicals_verify(name):
    code = build_named(name)
    report = verify_logical_set(code, LogicalSet(code.logical_pairs))
    assert report.logicals_ok, report.logical_violations + report.degenerate


def test_two_horizontal_transcribed_logicals_fail():
    """The fifth transcribed pair is inconsistent with the stabilizer set:
    its Z part is itself a stabilizer generator and its X part anticommutes
    with that generator."""
    code = build_named("two_horizontal")
    report = verify_logical_set(code, LogicalSet(code.logical_pairs))
    assert not report.logicals_ok
    assert any("Z2Z4Z6" in v for v in report.degenerate)
    assert any("X2X7" in v for v in report.logical_violations)


@pytest.mark.parametrize(
    "name", ["unit", "two_horizontal", "two_vertical", "grid_2x2"]
)
def test_find_logical_set_properties(name):
    code = build_named(name)
    logicals = find_logical_set(code)
    assert logicals.k == code.n - stabilizer_rank(code)
    report = verify_logical_set(code, logicals)
    assert report.logicals_ok
    for i, (xi, zi) in enumerate(logicals.pairs):
        assert xi.is_x_type() and zi.is_z_type()
        for j, (xj, zj) in enumerate(logicals.pairs):
            assert commutes(xi, zj) == (i != j)
            assert commutes(xi, xj) and commutes(zi, zj)


def test_find_logical_set_minimizes_unit():
    logicals = find_logical_set(build_unit())
    assert logicals.certified_minimal
    assert {weight(x) for x, _ in logicals.pairs} == {2}
    assert {weight(z) for _, z in logicals.pairs} == {2}


# --- distance ------------------------------------------------------------------


@pytest.mark.parametrize(
    "name,d,witness",
    [
        ("unit", 2, "Z1Z2"),
        ("two_horizontal", 1, "X7"),
        ("two_vertical", 2, "Z1Z2"),
        ("grid_2x2", 2, "Z1Z2"),
    ],
)
def test_distance_symplectic_named(name, d, witness):
    code = build_named(name)
    got_d, got_w = distance_symplectic(code, w_max=4)
    assert got_d == d
    assert to_string(got_w) == witness


@pytest.mark.parametrize(
    "name", ["unit", "two_horizontal", "two_vertical", "grid_2x2"]
)
def test_distance_methods_agree(name):
    code = build_named(name)
    d_sym, w_sym = distance_symplectic(code, w_max=4)
    d_kl, w_kl = distance_kl_oracle(code, find_logical_set(code), w_max=4)
    assert d_sym == d_kl
    assert weight(w_sym) == weight(w_kl)


def test_distance_thread_invariance():
    for name in ("two_vertical", "grid_2x2"):
        code = build_named(name)
        results = {
            distance_symplectic(code, w_max=4, threads=t) for t in (1, 2, 5)
        }
        assert len(results) == 1


def test_distance_not_found_below_cutoff():
    d, w = distance_symplectic(build_unit(), w_max=1)
    assert d is None and w is None


def test_distance_witness_is_undetectable_logical():
    code = build_unit()
    _, w = distance_symplectic(code, w_max=4)
    assert all(commutes(w, s) for s in code.stabilizers)
    logicals = LogicalSet(code.logical_pairs)
    sparse_violation = distance_kl_oracle(code, logicals, w_max=2)
    assert sparse_violation[0] == 2


# --- full report ----------------------------------------------------------------


def test_verify_code_unit_report():
    report = verify_code(build_unit(), w_max=4, use_kl=True)
    assert report.commuting
    assert (report.rank, report.k, report.distance) == (4, 2, 2)
    assert report.logicals_ok
    doc = report.to_json()
    for key in ('"commuting"', '"rank"', '"k"', '"distance"', '"witness"'):
        assert key in doc


def test_verify_code_kl_guard():
    code = stack_grid(3)  # n = 42
    with pytest.raises(ValueError):
        verify_code(code, w_max=2, use_kl=True)


def test_noncss_logical_pair_rejected_by_verify():
    code = build_unit()
    weird = LogicalSet(
        ((parse_pauli("X1X2", 6), parse_pauli("Z1Z3Z5", 6)),)
    )
    report = verify_logical_set(code, weird)
    assert not report.logicals_ok
