import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpac.bitlinalg import (
    InvalidLengthError,
    as_bits,
    generator_matrix,
    index_info,
    min_support,
    polar_transform,
    row,
    row_weight,
    row_weights,
    support,
    unit,
    weight,
)


def kron_generator(N):
    """Independent construction by repeated Kronecker products."""
    F = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    G = np.ones((1, 1), dtype=np.uint8)
    while G.shape[0] < N:
        G = np.kron(G, F) % 2
    return G


def bits(N):
    return st.lists(st.integers(0, 1), min_size=N, max_size=N).map(lambda b: np.array(b, dtype=np.uint8))


def test_two_point_transform():
    assert polar_transform([0, 1]).tolist() == [1, 1]
    assert polar_transform([1, 0]).tolist() == [1, 0]


def test_zero_maps_to_zero():
    assert not polar_transform(np.zeros(64, dtype=np.uint8)).any()


def test_last_row_is_all_ones():
    assert polar_transform(unit(64, 63)).tolist() == [1] * 64


@pytest.mark.parametrize("N", [2, 4, 8, 16, 32, 64, 128])
def test_transform_matches_kronecker_matrix(N):
    G = kron_generator(N)
    assert np.array_equal(generator_matrix(N), G)
    u = np.random.default_rng(N).integers(0, 2, (50, N), dtype=np.uint8)
    assert np.array_equal(polar_transform(u), (u.astype(int) @ G) % 2)


@pytest.mark.parametrize("N", [3, 6, 0, 1])
def test_rejects_bad_lengths(N):
    with pytest.raises(InvalidLengthError):
        polar_transform(np.zeros(N, dtype=np.uint8))


def test_rejects_non_binary():
    with pytest.raises(ValueError):
        as_bits([0, 2, 1, 0])


@given(st.integers(1, 8).flatmap(lambda n: bits(2**n)))
def test_involution(u):
    assert np.array_equal(polar_transform(polar_transform(u)), u)


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(bits(2**n), bits(2**n))))
def test_linearity(ab):
    a, b = ab
    assert np.array_equal(polar_transform(a ^ b), polar_transform(a) ^ polar_transform(b))


def test_row_weight_examples():
    assert row_weight(0, 6) == 1
    assert row_weight(63, 6) == 64
    assert row_weight(54, 6) == 16
    assert len(support(row(54, 64))) == 16


@pytest.mark.parametrize("N", [2, 4, 8, 16, 32, 64, 128, 256])
def test_row_weight_formula_matches_expansion(N):
    n = N.bit_length() - 1
    G = kron_generator(N)
    expanded = G.sum(axis=1)
    assert [row_weight(i, n) for i in range(N)] == expanded.tolist()
    assert row_weights(N).tolist() == expanded.tolist()


def test_support_helpers():
    assert support([0, 0, 1, 1]) == {2, 3}
    assert support([0, 0, 0, 0]) == set()
    assert min_support([0, 0, 0, 0]) is None
    assert min_support([0, 1, 1, 0]) == 1
    assert weight([1, 0, 1, 1]) == 3


def test_index_info():
    info = index_info(54, 6)
    assert info.binary_support == frozenset({1, 2, 4, 5})
    assert info.row_weight == 16
    with pytest.raises(ValueError):
        index_info(64, 6)


@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(2**n), st.integers(0, 2**n - 1), st.data())))
def test_coset_weight_lower_bound(args):
    N, i, data = args
    H = data.draw(st.sets(st.integers(i + 1, N - 1), max_size=N - i - 1) if i < N - 1 else st.just(set()))
    u = unit(N, i)
    for h in H:
        u[h] ^= 1
    assert weight(polar_transform(u)) >= row_weight(i, N.bit_length() - 1)
