import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpac.crc import CRC11, crc_attach, crc_check, degree, parse_crc, poly_bits, remainder


def _int_crc(bits, poly):
    """Long division on Python integers; independent of the numpy version."""
    r = max(poly)
    g = sum(1 << e for e in poly)
    reg = int("".join(map(str, bits)) or "0", 2) << r
    for top in range(reg.bit_length() - 1, r - 1, -1):
        if reg >> top & 1:
            reg ^= g << (top - r)
    return [int(c) for c in format(reg, f"0{r}b")]


def test_poly_parsing():
    assert parse_crc("crc11") == CRC11
    assert parse_crc("0,3,1") == (3, 1, 0)
    assert degree(CRC11) == 11
    assert poly_bits((3, 1, 0)).tolist() == [1, 0, 1, 1]
    for bad in ("x", "3,1", "0"):
        with pytest.raises(ValueError):
            parse_crc(bad)


def test_small_division():
    # 1101 x^3 mod x^3 + x + 1 = 001
    assert remainder([1, 1, 0, 1], (3, 1, 0)).tolist() == [0, 0, 1]


@given(st.lists(st.integers(0, 1), min_size=1, max_size=80),
       st.sampled_from([CRC11, (3, 1, 0), (8, 2, 1, 0), (16, 12, 5, 0)]))
def test_matches_integer_division(bits, poly):
    assert remainder(bits, poly).tolist() == _int_crc(bits, poly)
    assert crc_attach(bits, poly)[len(bits):].tolist() == _int_crc(bits, poly)


def test_attach_and_check_batch():
    rng = np.random.default_rng(3)
    m = rng.integers(0, 2, (200, 39)).astype(np.uint8)
    c = crc_attach(m)
    assert c.shape == (200, 50)
    assert crc_check(c).all()
    c[:, 5] ^= 1
    assert not crc_check(c).any()
    assert crc_check(crc_attach(m[0])) is True


def test_single_bit_errors_detected():
    m = np.random.default_rng(4).integers(0, 2, 39).astype(np.uint8)
    c = crc_attach(m)
    for j in range(c.size):
        e = c.copy()
        e[j] ^= 1
        assert not crc_check(e)
