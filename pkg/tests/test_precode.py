import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import WORKED_INFO
from rpac.bitlinalg import generator_matrix, min_support, polar_transform, unit, weight
from rpac.construction import profile_from_info_set
from rpac.precode import (
    POLY_10,
    PrecoderError,
    PrecoderSpec,
    apply,
    demap,
    forward_map,
    format_poly,
    parse_poly,
    precoder_matrix,
    preset,
    profile_wmin,
    reverse_map,
)


def _bits(N):
    return st.lists(st.integers(0, 1), min_size=N, max_size=N).map(lambda b: np.array(b, dtype=np.uint8))


def test_spec_validation():
    with pytest.raises(PrecoderError):
        PrecoderSpec("forward", (1, 1, 0))
    with pytest.raises(PrecoderError):
        PrecoderSpec("forward", (0, 1))
    with pytest.raises(PrecoderError):
        PrecoderSpec("identity", (1, 1))
    with pytest.raises(PrecoderError):
        PrecoderSpec("reverse", (1, 1))
    with pytest.raises(PrecoderError):
        PrecoderSpec("sideways", (1,))
    assert PrecoderSpec.identity().s == 0
    assert PrecoderSpec.forward().s == 9


def test_poly_text():
    assert parse_poly("1, 1,0,1") == (1, 1, 0, 1)
    assert format_poly(POLY_10) == "1,1,0,1,1,0,1,1,0,1"
    for bad in ("", "1,2", "a,b"):
        with pytest.raises(PrecoderError):
            parse_poly(bad)


def test_preset_lookup(worked_profile):
    assert preset("rpac10", worked_profile).wmin_threshold == 16
    assert preset("pac7", worked_profile).p == (1, 1, 0, 1, 1, 0, 1)
    with pytest.raises(PrecoderError):
        preset("nope", worked_profile)


def test_forward_examples():
    v = np.array([1, 0, 1, 1, 0, 0, 1, 0], dtype=np.uint8)
    assert np.array_equal(forward_map(v, PrecoderSpec.forward((1,))), v)
    assert forward_map(unit(4, 0), PrecoderSpec.forward((1, 1))).tolist() == [1, 1, 0, 0]
    u = forward_map(unit(64, 54), PrecoderSpec.forward(POLY_10))
    assert set(np.flatnonzero(u)) == {54, 55, 57, 58, 60, 61, 63}


def test_reverse_examples(worked_profile):
    spec = PrecoderSpec.reverse(POLY_10, worked_profile)
    assert not reverse_map(np.zeros(64, np.uint8), spec, worked_profile).any()
    v = np.random.default_rng(1).integers(0, 2, 64).astype(np.uint8)
    assert np.array_equal(reverse_map(v, PrecoderSpec.reverse((1,), worked_profile)), v)


def test_worked_example_rpac_codeword(worked_profile):
    spec = PrecoderSpec.reverse(POLY_10, worked_profile)
    u = reverse_map(unit(64, 54), spec, worked_profile)
    # taps reach 54 - l for l in {0,1,3,4,6,7,9}; 50 and 48 fail the weight test
    assert set(np.flatnonzero(u)) == {45, 47, 51, 53, 54}
    assert weight(polar_transform(u)) == 24
    assert min_support(u) == 45 < 54


def test_threshold_is_checked(worked_profile):
    spec = PrecoderSpec("reverse", POLY_10, 8)
    with pytest.raises(PrecoderError):
        reverse_map(unit(64, 3), spec, worked_profile)
    with pytest.raises(PrecoderError):
        demap(unit(64, 3), spec, worked_profile)
    with pytest.raises(PrecoderError):
        forward_map(unit(64, 3), spec)


def test_forward_matrix_small():
    M = precoder_matrix(PrecoderSpec.forward((1, 1)), 3)
    assert M.tolist() == [[1, 1, 0], [0, 1, 1], [0, 0, 1]]


def test_reverse_matrix_is_transpose_when_all_rows_qualify():
    # index 0 in the information set puts the threshold at 1
    prof = profile_from_info_set(32, [0, 5, 9, 31])
    rev = PrecoderSpec.reverse(POLY_10, prof)
    assert rev.wmin_threshold == 1
    P = precoder_matrix(PrecoderSpec.forward(POLY_10), 32)
    assert np.array_equal(precoder_matrix(rev, 32, prof), P.T)


@pytest.mark.parametrize("poly", [POLY_10, (1, 1, 0, 1, 1, 0, 1), (1, 1)])
def test_reverse_times_generator_is_lower_triangular(worked_profile, poly):
    spec = PrecoderSpec.reverse(poly, worked_profile)
    M = precoder_matrix(spec, 64, worked_profile)
    prod = (M.astype(np.int64) @ generator_matrix(64)) & 1
    assert not np.triu(prod, 1).any()
    assert np.all(np.diag(prod) == 1)
    assert np.all(np.diag(M) == 1)


@given(_bits(128))
def test_matrix_matches_streaming(v):
    N = v.size
    prof = profile_from_info_set(N, list(range(60, N)))
    for spec in (PrecoderSpec.forward(POLY_10), PrecoderSpec.reverse(POLY_10, prof), PrecoderSpec.identity()):
        M = precoder_matrix(spec, N, prof)
        assert np.array_equal((v.astype(np.int64) @ M) & 1, apply(v, spec, prof))


@given(_bits(64))
def test_forward_preserves_leader(v):
    u = forward_map(v, PrecoderSpec.forward(POLY_10))
    assert min_support(u) == min_support(v)


@given(_bits(64))
def test_reverse_leader_moves_down_at_most_s(v):
    prof = profile_from_info_set(64, WORKED_INFO)
    u = reverse_map(v, PrecoderSpec.reverse(POLY_10, prof), prof)
    if v.any():
        assert min_support(u) >= min_support(v) - (len(POLY_10) - 1)
    else:
        assert not u.any()


def test_reverse_leader_can_move_up():
    # the taps cancel v at its own leader: u_5 = v_5 + v_6 = 0
    prof = profile_from_info_set(8, [3, 5, 6, 7])
    spec = PrecoderSpec.reverse((1, 1), prof)
    v = unit(8, 5) ^ unit(8, 6)
    u = reverse_map(v, spec, prof)
    assert min_support(u) == 6 > min_support(v)


def test_round_trips_batch(worked_profile):
    rng = np.random.default_rng(7)
    V = rng.integers(0, 2, (1000, 64)).astype(np.uint8)
    fwd = PrecoderSpec.forward(POLY_10)
    rev = PrecoderSpec.reverse(POLY_10, worked_profile)
    assert np.array_equal(demap(forward_map(V, fwd), fwd), V)
    assert np.array_equal(demap(reverse_map(V, rev, worked_profile), rev, worked_profile), V)
    assert not demap(np.zeros(64, np.uint8), fwd).any()


@given(_bits(16), st.sampled_from([(1, 1), (1, 0, 1), (1, 1, 0, 1), POLY_10]))
def test_round_trip_any_polynomial(v, poly):
    prof = profile_from_info_set(16, [3, 7, 11, 13, 14, 15])
    for spec in (PrecoderSpec.forward(poly), PrecoderSpec.reverse(poly, prof)):
        assert np.array_equal(demap(apply(v, spec, prof), spec, prof), v)


def test_profile_wmin(worked_profile, profile_64_50):
    assert profile_wmin(worked_profile) == 16
    assert profile_wmin(profile_64_50) == 4
