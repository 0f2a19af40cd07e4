import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfteigen.core import (Convention, DftSpec, InvalidOrder, NumericalCorruption,
                           build_dft, build_projection, build_projection_set, dft_power,
                           get_v, matveev_multiplicities, multiplicities,
                           projection_brute_force, projection_entry, select_columns)

CONVENTIONS = list(Convention)
S2 = 1 / math.sqrt(2)
S6 = 1 / math.sqrt(6)


def eig_count_oracle(spec):
    """Multiplicities by counting numerical eigenvalues of phi near 1, i, -1, -i."""
    vals = np.linalg.eigvals(build_dft(spec))
    return tuple(int(np.sum(np.abs(vals - 1j ** k) < 1e-6)) for k in range(4))


def test_dft_order_one():
    np.testing.assert_allclose(build_dft(DftSpec(1)), [[1.0]])


def test_dft_order_four_plus():
    expected = 0.5 * np.array([[1, 1, 1, 1],
                               [1, 1j, -1, -1j],
                               [1, -1, 1, -1],
                               [1, -1j, -1, 1j]])
    np.testing.assert_allclose(build_dft(DftSpec(4)), expected, atol=1e-15)


def test_dft_order_two_minus():
    np.testing.assert_allclose(build_dft(DftSpec(2, Convention.MINUS)),
                               S2 * np.array([[1, 1], [1, -1]]), atol=1e-15)


def test_minus_convention_is_conjugate():
    for n in (3, 5, 8):
        np.testing.assert_allclose(build_dft(DftSpec(n, "minus")),
                                   build_dft(DftSpec(n)).conj(), atol=1e-15)


@pytest.mark.parametrize("n", [0, -3])
def test_invalid_order(n):
    with pytest.raises(InvalidOrder):
        DftSpec(n)


def test_default_convention_is_plus():
    assert DftSpec(5).convention is Convention.PLUS


@pytest.mark.parametrize("conv", CONVENTIONS)
@pytest.mark.parametrize("n", range(1, 25))
def test_unitary_and_fourth_power(n, conv):
    phi = build_dft(DftSpec(n, conv))
    assert np.max(np.abs(phi.conj().T @ phi - np.eye(n))) <= 1e-12
    phi4 = dft_power(phi, 2) @ dft_power(phi, 2)
    assert np.max(np.abs(phi4 - np.eye(n))) <= 1e-11


def test_dft_power_zero_is_identity():
    np.testing.assert_array_equal(dft_power(build_dft(DftSpec(5)), 0), np.eye(5))


def test_dft_power_two_order_two():
    np.testing.assert_allclose(dft_power(build_dft(DftSpec(2)), 2), np.eye(2), atol=1e-15)


def test_dft_power_two_is_reversal():
    expected = np.zeros((4, 4))
    for r, c in [(0, 0), (1, 3), (2, 2), (3, 1)]:
        expected[r, c] = 1
    np.testing.assert_allclose(dft_power(build_dft(DftSpec(4)), 2), expected, atol=1e-15)


def test_dft_power_rejects_bad_input():
    with pytest.raises(ValueError):
        dft_power(build_dft(DftSpec(3)), 4)
    with pytest.raises(ValueError):
        dft_power(np.ones((2, 3)), 1)


def test_projection_entry_examples():
    assert projection_entry(DftSpec(6), 0, 0, 0) == pytest.approx((2 + 2 * S6) / 4, abs=1e-15)
    assert projection_entry(DftSpec(6), 0, 0, 0) == pytest.approx(0.70412, abs=1e-5)
    assert projection_entry(DftSpec(2), 0, 0, 1) == pytest.approx(S2 / 2, abs=1e-15)
    for n in (2, 5, 9):
        for j in range(n):
            assert abs(projection_entry(DftSpec(n), 1, j, 0)) <= 1e-15


def test_projection_entry_range_checks():
    with pytest.raises(IndexError):
        projection_entry(DftSpec(3), 0, 3, 0)
    with pytest.raises(ValueError):
        projection_entry(DftSpec(3), 4, 0, 0)


def test_projection_order_two():
    np.testing.assert_allclose(build_projection(DftSpec(2), 1), np.zeros((2, 2)), atol=1e-15)
    expected = np.array([[(1 + S2) / 2, S2 / 2], [S2 / 2, (1 - S2) / 2]])
    np.testing.assert_allclose(build_projection(DftSpec(2), 0), expected, atol=1e-15)


def test_projection_order_six_first_column():
    col = build_projection(DftSpec(6), 0)[:, 0]
    np.testing.assert_allclose(col, [(2 + 2 * S6) / 4] + [2 * S6 / 4] * 5, atol=1e-15)
    # normalising gives the first published basis vector
    np.testing.assert_allclose(col / np.linalg.norm(col), [0.8391] + [0.2433] * 5, atol=1e-4)


@pytest.mark.parametrize("conv", CONVENTIONS)
@pytest.mark.parametrize("n", range(1, 25))
def test_entrywise_matches_matrix_powers(n, conv):
    spec = DftSpec(n, conv)
    for k in range(4):
        brute = projection_brute_force(spec, k)
        assert np.max(np.abs(build_projection(spec, k) - brute)) <= 1e-12


@pytest.mark.parametrize("conv", CONVENTIONS)
@pytest.mark.parametrize("n", range(1, 25))
def test_projection_set_invariants(n, conv):
    spec = DftSpec(n, conv)
    ps = build_projection_set(spec)
    phi = build_dft(spec)
    for k, pk in enumerate(ps.p):
        assert np.max(np.abs(pk - pk.T)) <= 1e-12
        assert abs(np.trace(pk) - ps.mult[k]) <= 1e-9
        assert np.max(np.abs(pk @ pk - pk)) <= 1e-10
        assert np.max(np.abs(phi @ pk - 1j ** k * pk)) <= 1e-10
        for l in range(4):
            if l != k:
                assert np.max(np.abs(pk @ ps.p[l])) <= 1e-10
        if k % 2 and n >= 2:
            assert np.max(np.abs(pk[:, 0])) <= 1e-12
            assert np.max(np.abs(pk[0, :])) <= 1e-12
    assert np.max(np.abs(sum(ps.p) - np.eye(n))) <= 1e-10
    assert sum(ps.mult) == n


@pytest.mark.parametrize("n", range(2, 13))
def test_gramian_identity_double_loop(n):
    spec = DftSpec(n)
    for k in range(4):
        pk = build_projection(spec, k)
        for j in range(n):
            for m in range(n):
                inner = np.dot(get_v(spec, k, j), get_v(spec, k, m))
                assert abs(pk[j, m] - inner) <= 1e-10


def test_multiplicity_examples():
    assert multiplicities(DftSpec(6)) == (2, 1, 2, 1)
    assert multiplicities(DftSpec(1)) == (1, 0, 0, 0)
    assert multiplicities(DftSpec(4)) == (2, 1, 1, 0)


@pytest.mark.parametrize("conv", CONVENTIONS)
@pytest.mark.parametrize("n", range(1, 41))
def test_multiplicities_match_eigenvalue_count(n, conv):
    spec = DftSpec(n, conv)
    m = multiplicities(spec)
    assert m == eig_count_oracle(spec)
    assert sum(m) == n
    assert max(m) - min(m) <= 2


def test_minus_convention_swaps_i_and_minus_i():
    for n in range(1, 20):
        a = multiplicities(DftSpec(n))
        b = multiplicities(DftSpec(n, "minus"))
        assert b == (a[0], a[3], a[2], a[1])


def test_non_integral_trace_is_rejected():
    from dfteigen.core import _round_trace
    with pytest.raises(NumericalCorruption):
        _round_trace(1.4, 1e-6)


def test_formula_multiplicities_as_printed():
    assert matveev_multiplicities(6) == (1, 2, 1, 2)
    assert matveev_multiplicities(4) == (1, 1, 0, 2)
    assert sum(matveev_multiplicities(6)) == 6
    with pytest.raises(InvalidOrder):
        matveev_multiplicities(0)


@given(st.integers(min_value=1, max_value=200))
def test_formula_multiplicities_sum(n):
    assert sum(matveev_multiplicities(n)) == n


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=128))
def test_formula_and_trace_agree_as_multisets(n):
    assert Counter(matveev_multiplicities(n)) == Counter(multiplicities(DftSpec(n)))


def test_get_v_examples():
    np.testing.assert_array_equal(get_v(DftSpec(5), 1, 0), np.zeros(5))
    np.testing.assert_allclose(get_v(DftSpec(6), 0, 0), [(2 + 2 * S6) / 4] + [2 * S6 / 4] * 5,
                               atol=1e-15)
    np.testing.assert_allclose(get_v(DftSpec(2), 0, 1), [S2 / 2, (1 - S2) / 2], atol=1e-15)


def test_get_v_is_row_too():
    spec = DftSpec(7)
    pk = build_projection(spec, 2)
    for m in range(7):
        np.testing.assert_array_equal(get_v(spec, 2, m), pk[m, :])


def test_select_columns_examples():
    assert select_columns(DftSpec(6), 0) == (0, 1)
    assert select_columns(DftSpec(6), 3) == (1,)
    assert select_columns(DftSpec(4), 3) == ()


@pytest.mark.parametrize("n", range(1, 25))
def test_select_columns_total(n):
    spec = DftSpec(n)
    cols = [select_columns(spec, k) for k in range(4)]
    assert sum(len(c) for c in cols) == n
    for k in (1, 3):
        assert 0 not in cols[k]
