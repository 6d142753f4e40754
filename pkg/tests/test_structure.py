import itertools
import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpac.bitlinalg import generator_matrix, row_weight
from rpac.construction import construct_profile, profile_from_info_set
from rpac.precode import POLY_10, PrecoderSpec, forward_map
from rpac.structure import (
    CAPABLE,
    INCAPABLE_ALL_SINGLETON,
    INCAPABLE_NO_FROZEN,
    InvalidProfileError,
    classify_coset,
    compute_Ki,
    compute_wmin,
    coset_reports,
    format_coset_table,
    polar_Awmin_formula,
    qfunc,
    qfunc_series,
    union_bound,
)

# 944 * Q(sqrt(2 * 4 * 50/64 * 10^0.5)), 30 digits with mpmath
UB_944_5DB = 0.0041350378647814363836


def _all_codewords(profile, forward=None):
    """(leader, weight) for every nonzero message, by brute force."""
    N = profile.N
    G = generator_matrix(N).astype(np.int64)
    info = list(profile.info_set)
    K = len(info)
    msgs = np.array(list(itertools.product((0, 1), repeat=K))[1:], dtype=np.uint8)
    v = np.zeros((msgs.shape[0], N), dtype=np.uint8)
    v[:, info] = msgs
    u = v if forward is None else forward_map(v, forward)
    x = (u.astype(np.int64) @ G) & 1
    return u.argmax(axis=1), x.sum(axis=1)


def test_wmin_examples(worked_profile, profile_64_50):
    assert compute_wmin(worked_profile) == 16
    assert compute_wmin(profile_64_50) == 4
    assert compute_wmin(profile_from_info_set(2, [1])) == 2
    with pytest.raises(InvalidProfileError):
        compute_wmin(SimpleNamespace(info_set=(), n=3))


def test_ki_examples(rm16_profile):
    assert compute_Ki(7, rm16_profile) == {11, 13, 14, 15}
    assert compute_Ki(14, rm16_profile) == {15}
    assert compute_Ki(15, rm16_profile) == set()
    with pytest.raises(ValueError):
        compute_Ki(3, rm16_profile)


def test_rm16_formula(rm16_profile):
    s = polar_Awmin_formula(rm16_profile)
    assert (s.wmin, s.A_wmin_formula) == (8, 30)
    assert s.B == (7, 11, 13, 14)
    lead, w = _all_codewords(rm16_profile)
    assert int((w == 8).sum()) == 30


def test_table_polar_coefficients(profile_64_50, profile_128_110):
    assert polar_Awmin_formula(profile_64_50).A_wmin_formula == 944
    assert polar_Awmin_formula(profile_128_110).A_wmin_formula == 4448


def test_classification_examples(worked_profile):
    assert classify_coset(63, worked_profile) == INCAPABLE_NO_FROZEN
    assert classify_coset(57, worked_profile) == INCAPABLE_NO_FROZEN
    # every frozen index above 31 = 0b011111 adds only bit 5
    assert classify_coset(31, worked_profile) == INCAPABLE_ALL_SINGLETON
    # 49 = 0b110001 adds bits 0 and 4 to 46 = 0b101110
    assert classify_coset(46, worked_profile) == CAPABLE
    # frozen above 55 is only 56 = 55 + one new support bit
    assert classify_coset(55, worked_profile) == INCAPABLE_ALL_SINGLETON
    with pytest.raises(ValueError):
        classify_coset(0, worked_profile)


def test_coset_table(rm16_profile):
    reps = coset_reports(rm16_profile)
    assert [r.leader_index for r in reps] == [7, 11, 13, 14, 15]
    assert sum(r.A_i_wmin for r in reps) == 30
    assert reps[-1].A_i_wmin == 0 and not reps[-1].in_B
    text = format_coset_table(reps)
    assert text.splitlines()[1] == "7,1,4,incapable_all_singleton,16,16"


def _new_bits(j, i):
    return bin(j & ~i).count("1")


def test_classification_brute_force(worked_profile):
    frozen = set(range(64)) - set(worked_profile.info_set)
    for i in worked_profile.info_set:
        above = [f for f in frozen if f > i]
        if not above:
            want = INCAPABLE_NO_FROZEN
        elif all(_new_bits(f, i) == 1 for f in above):
            want = INCAPABLE_ALL_SINGLETON
        else:
            want = CAPABLE
        assert classify_coset(i, worked_profile) == want


def _up(i, n):
    """Indices directly above ``i`` in the polar partial order."""
    out = set()
    for b in range(n):
        if not i >> b & 1:
            out.add(i | 1 << b)
        else:
            out.update(i & ~(1 << b) | 1 << c for c in range(b + 1, n) if not i >> c & 1)
    return out


def _decreasing(seeds, n):
    """Smallest set containing ``seeds`` that is closed upward in the order."""
    out, todo = set(seeds), list(seeds)
    while todo:
        for j in _up(todo.pop(), n):
            if j not in out:
                out.add(j)
                todo.append(j)
    return sorted(out)


info_sets = st.integers(3, 5).flatmap(
    lambda n: st.sets(st.integers(0, 2**n - 1), min_size=1, max_size=min(12, 2**n)).map(
        lambda s: profile_from_info_set(2**n, sorted(s))
    )
)


decreasing_sets = st.integers(3, 5).flatmap(
    lambda n: st.sets(st.integers(0, 2**n - 1), min_size=1, max_size=2)
    .map(lambda seeds: _decreasing(seeds, n))
    .filter(lambda s: len(s) <= 14)
    .map(lambda s: profile_from_info_set(2**n, s))
)


@given(decreasing_sets)
def test_formula_exact_on_decreasing_sets(profile):
    s = polar_Awmin_formula(profile)
    lead, w = _all_codewords(profile)
    assert w.min() == s.wmin
    assert int((w == s.wmin).sum()) == s.A_wmin_formula


@pytest.mark.parametrize("N", [16, 32])
def test_formula_exact_on_constructed_profiles(N):
    for K in range(1, 15):
        prof = construct_profile(N, K, 2.0)
        assert prof.info_set == tuple(_decreasing(prof.info_set, prof.n))
        lead, w = _all_codewords(prof)
        assert int((w == w.min()).sum()) == polar_Awmin_formula(prof).A_wmin_formula


def test_formula_overcounts_off_the_order():
    # g0 + g1 + g2 would need the frozen g3 to come back to weight 1
    prof = profile_from_info_set(8, [0, 1, 2])
    lead, w = _all_codewords(prof)
    assert polar_Awmin_formula(prof).A_wmin_formula == 4
    assert int((w == 1).sum()) == 3


@given(info_sets)
def test_formula_bounds_enumeration(profile):
    s = polar_Awmin_formula(profile)
    lead, w = _all_codewords(profile)
    assert w.min() == s.wmin
    assert 0 < int((w == s.wmin).sum()) <= s.A_wmin_formula
    assert s.A_wmin_formula >= len(s.B)
    # minimum-weight words only sit in cosets led by B
    assert set(lead[w == s.wmin].tolist()) <= set(s.B)
    for r in coset_reports(profile):
        assert r.K_i <= set(profile.info_set) and all(j > r.leader_index for j in r.K_i)


@given(info_sets, st.sampled_from([(1, 1), (1, 0, 1), (1, 1, 0, 1), POLY_10]))
def test_incapable_cosets_keep_polar_count(profile, poly):
    s = polar_Awmin_formula(profile)
    lead, w = _all_codewords(profile, PrecoderSpec.forward(poly))
    lead0, w0 = _all_codewords(profile)
    for i in s.B:
        if classify_coset(i, profile) != CAPABLE:
            pac = int(((lead == i) & (w == s.wmin)).sum())
            assert pac == s.per_coset[i] == int(((lead0 == i) & (w0 == s.wmin)).sum())


def test_union_bound_values():
    assert union_bound(0, 4, 0.5, 3.0) == 0.0
    assert union_bound(1, 4, 0.5, -math.inf) == 0.5
    assert qfunc(0.0) == 0.5
    assert union_bound(944, 4, 50 / 64, 5.0) == pytest.approx(UB_944_5DB, rel=1e-12)
    assert union_bound(944, 4, 50 / 64, 5.0, q=qfunc_series) == pytest.approx(UB_944_5DB, rel=1e-12)
    with pytest.raises(ValueError):
        union_bound(-1, 4, 0.5, 1.0)


@given(st.floats(-3.0, 12.0))
def test_two_q_implementations_agree(x):
    assert qfunc_series(x) == pytest.approx(qfunc(x), rel=1e-12, abs=1e-300)


def test_row_weight_matches_support():
    for i in range(64):
        assert row_weight(i, 6) == 2 ** bin(i).count("1")
