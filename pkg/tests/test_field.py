"""Field arithmetic and MDS parity construction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burstmux import FieldError, FieldSizeError, check_mds, field_new, mds_parity
from burstmux.field import GF, field_inv, field_mul, mat_det

from conftest import clmul_reduce, oracle_check_mds_columns


def test_field_new_standard_constructions():
    f = field_new(256, 0x11D)
    assert f.order == 256 and f.degree == 8
    f2 = field_new(2, 2)
    assert f2.order == 2 and f2.char == 2


def test_field_new_rejects_non_prime_power():
    with pytest.raises(FieldError):
        field_new(6, 7)


def test_field_new_rejects_reducible_polynomial():
    # x^8 + 1 = (x+1)^8 over GF(2)
    with pytest.raises(FieldError):
        field_new(256, 0x101)


def test_field_new_rejects_wrong_degree():
    with pytest.raises(FieldError):
        field_new(256, 0b1011)


def test_field_new_rejects_odd_extension():
    with pytest.raises(FieldError):
        field_new(9, 3)


def test_field_new_rejects_oversized():
    with pytest.raises(FieldError):
        field_new(1 << 17, (1 << 17) + 0b1001)


def test_mul_matches_carryless_oracle(gf256):
    assert field_mul(gf256, 0x02, 0x80) == 0x1D
    for a in range(0, 256, 7):
        for b in range(0, 256, 11):
            assert gf256.mul(a, b) == clmul_reduce(a, b, 0x11D, 8)


def test_mul_identity_and_annihilator(gf256):
    for a in (0, 1, 2, 0x53, 0xFF):
        assert gf256.mul(a, 1) == a
        assert gf256.mul(a, 0) == 0


def test_inv_exhaustive_scan_oracle(gf256):
    """inv(a) must be the unique y with a*y == 1, found by scanning."""
    for a in (1, 2, 3, 0x1D, 0xFE):
        expected = next(y for y in range(1, 256) if gf256.mul(a, y) == 1)
        assert field_inv(gf256, a) == expected
    assert gf256.inv(1) == 1


def test_inv_zero_is_error(gf256, gf2):
    with pytest.raises(ZeroDivisionError):
        gf256.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf2.inv(0)


def test_prime_field_arithmetic():
    f = field_new(7, 7)
    assert f.add(5, 4) == 2
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    assert f.sub(1, 5) == 3


def test_field_axioms_exhaustive_pairs(gf16):
    elems = list(gf16.elements())
    for a in elems:
        for b in elems:
            assert gf16.add(a, b) == gf16.add(b, a)
            assert gf16.mul(a, b) == gf16.mul(b, a)
            if b:
                assert gf16.mul(gf16.div(a, b), b) == a


@settings(max_examples=300)
@given(
    a=st.integers(min_value=0, max_value=255),
    b=st.integers(min_value=0, max_value=255),
    c=st.integers(min_value=0, max_value=255),
)
def test_field_axioms_sampled_triples(a, b, c):
    f = GF(256, 0x11D)
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))


def test_mds_parity_repetition_row(gf256):
    v = mds_parity(gf256, 1, 2)
    assert v.entries == ((1, 1),)


def test_mds_parity_single_column(gf256):
    v = mds_parity(gf256, 2, 1)
    assert v.rows == 2 and v.cols == 1
    assert oracle_check_mds_columns(gf256, v)


def test_mds_parity_empty_blocks(gf256):
    assert mds_parity(gf256, 0, 3).entries == ()
    v = mds_parity(gf256, 3, 0)
    assert v.rows == 3 and all(row == () for row in v.entries)


def test_mds_parity_field_too_small(gf2):
    with pytest.raises(FieldSizeError, match="field size insufficient"):
        mds_parity(gf2, 2, 1)


def test_mds_parity_deterministic(gf256):
    assert mds_parity(gf256, 5, 4) == mds_parity(gf256, 5, 4)
    assert mds_parity(GF(256, 0x11D), 5, 4) == mds_parity(gf256, 5, 4)


def test_check_mds_known_cases(gf256, gf2):
    from burstmux.field import ParityMatrix

    assert check_mds(gf256, ParityMatrix(1, 2, ((1, 1),)))
    assert not check_mds(gf256, ParityMatrix(1, 1, ((0,),)))
    assert check_mds(gf2, ParityMatrix(2, 1, ((1,), (1,))))


def test_check_mds_agrees_with_column_oracle(gf256, gf16):
    """The square-submatrix criterion equals the direct column definition."""
    for field in (gf256, gf16):
        for l in range(0, 5):
            for b in range(0, 5):
                if l + b > field.order:
                    continue
                v = mds_parity(field, l, b)
                assert check_mds(field, v) == oracle_check_mds_columns(field, v)
    # and on a deliberately broken matrix
    from burstmux.field import ParityMatrix

    bad = ParityMatrix(2, 2, ((1, 1), (1, 1)))
    assert check_mds(gf256, bad) == oracle_check_mds_columns(gf256, bad) == False


def test_mds_parity_passes_check_small_grid(gf256):
    for l in range(0, 11):
        for b in range(0, 11 - l):
            assert check_mds(gf256, mds_parity(gf256, l, b))


def test_check_mds_sampling_path(gf256):
    v = mds_parity(gf256, 12, 10)
    assert check_mds(gf256, v, max_exhaustive=20, samples=500, seed=1)


def test_mat_det_matches_oracle(gf256):
    from conftest import oracle_det

    rows = [[1, 2, 3], [4, 5, 6], [7, 9, 8]]
    assert mat_det(gf256, rows) == oracle_det(gf256, rows)
