from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpscount.series import (
    BridgeDirection,
    InvariantSequence,
    KindMismatchError,
    SequenceKind,
    bridge_gw,
    degree_sign_factor,
    local_bps_to_gw,
    local_gw_to_bps,
    pipeline_local_bps_to_relative_bps,
    pipeline_relative_bps_to_local_bps,
    relative_bps_to_gw,
    relative_gw_to_bps,
    relative_multiple_cover,
)

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=64
)
sequences = st.lists(rationals, min_size=0, max_size=16)


def seq(kind, w, values):
    return InvariantSequence(kind, w, tuple(values))


# ------------------------------------------------------------ construction


def test_sequence_rejects_bad_w():
    for w in (0, -1):
        with pytest.raises(ValueError):
            seq(SequenceKind.LOCAL_BPS, w, [1])


def test_sequence_rejects_floats():
    with pytest.raises(TypeError):
        seq(SequenceKind.LOCAL_BPS, 1, [0.5])


def test_sequence_accepts_mixed_exact_inputs():
    s = seq(SequenceKind.LOCAL_BPS, 2, [1, "3/4", Fraction(-2, 5)])
    assert s.values == (Fraction(1), Fraction(3, 4), Fraction(-2, 5))


def test_empty_sequence_maps_to_empty():
    empty = seq(SequenceKind.LOCAL_BPS, 3, [])
    assert len(local_bps_to_gw(empty)) == 0
    assert len(pipeline_local_bps_to_relative_bps(empty)) == 0


# ------------------------------------------------------------- local pair


def test_local_bps_to_gw_examples():
    out = local_bps_to_gw(seq(SequenceKind.LOCAL_BPS, 1, [1, 1]))
    assert out.kind is SequenceKind.LOCAL_GW
    assert out.values == (Fraction(1), Fraction(9, 8))

    x = Fraction(7, 3)
    assert local_bps_to_gw(seq(SequenceKind.LOCAL_BPS, 2, [x])).values == (x,)

    out = local_bps_to_gw(seq(SequenceKind.LOCAL_BPS, 1, [0, 0, 5]))
    assert out.values == (Fraction(0), Fraction(0), Fraction(5))


def test_local_gw_to_bps_inverts_example():
    out = local_gw_to_bps(seq(SequenceKind.LOCAL_GW, 1, ["1", "9/8"]))
    assert out.kind is SequenceKind.LOCAL_BPS
    assert out.values == (Fraction(1), Fraction(1))


@settings(max_examples=60, deadline=None)
@given(sequences, st.integers(min_value=1, max_value=12))
def test_local_round_trip(values, w):
    bps = seq(SequenceKind.LOCAL_BPS, w, values)
    assert local_gw_to_bps(local_bps_to_gw(bps)) == bps
    gw = seq(SequenceKind.LOCAL_GW, w, values)
    assert local_bps_to_gw(local_gw_to_bps(gw)) == gw


# ---------------------------------------------------------- relative pair


def test_relative_multiple_cover_examples():
    for w in range(1, 10):
        assert relative_multiple_cover(1, w) == 1
    # (1/4) * binomial(3, 1) and (1/9) * binomial(2, 2)
    assert relative_multiple_cover(2, 3) == Fraction(3, 4)
    assert relative_multiple_cover(3, 2) == Fraction(1, 9)


def test_relative_multiple_cover_rejects_nonpositive():
    with pytest.raises(ValueError):
        relative_multiple_cover(0, 3)
    with pytest.raises(ValueError):
        relative_multiple_cover(2, 0)


def test_relative_bps_to_gw_expansion_at_degree_two():
    a, b = Fraction(2, 7), Fraction(-5, 3)
    out = relative_bps_to_gw(seq(SequenceKind.RELATIVE_BPS, 3, [a, b]))
    assert out.values == (a, b + Fraction(3, 4) * a)


def test_relative_gw_to_bps_inverts_expansion():
    a, b = Fraction(2, 7), Fraction(-5, 3)
    out = relative_gw_to_bps(seq(SequenceKind.RELATIVE_GW, 3, [a, b]))
    assert out.values == (a, b - Fraction(3, 4) * a)


def test_relative_transforms_preserve_zero():
    zeros = seq(SequenceKind.RELATIVE_BPS, 5, [0, 0, 0, 0])
    assert relative_bps_to_gw(zeros).values == (Fraction(0),) * 4


def test_relative_first_entry_passes_through():
    for w in range(1, 8):
        x = Fraction(11, 4)
        assert relative_bps_to_gw(seq(SequenceKind.RELATIVE_BPS, w, [x])).values == (x,)


@settings(max_examples=60, deadline=None)
@given(sequences, st.integers(min_value=1, max_value=12))
def test_relative_round_trip(values, w):
    bps = seq(SequenceKind.RELATIVE_BPS, w, values)
    assert relative_gw_to_bps(relative_bps_to_gw(bps)) == bps
    gw = seq(SequenceKind.RELATIVE_GW, w, values)
    assert relative_bps_to_gw(relative_gw_to_bps(gw)) == gw


# ----------------------------------------------------------------- bridge


def test_degree_sign_factor_values():
    assert degree_sign_factor(1, 3) == 3
    assert degree_sign_factor(1, 2) == -2
    assert degree_sign_factor(2, 2) == -4


def test_bridge_examples():
    x = Fraction(5, 9)
    out = bridge_gw(
        seq(SequenceKind.LOCAL_GW, 3, [x]), BridgeDirection.LOCAL_GW_TO_RELATIVE_GW
    )
    assert out.kind is SequenceKind.RELATIVE_GW
    assert out.values == (3 * x,)

    y = Fraction(-1, 2)
    out = bridge_gw(
        seq(SequenceKind.LOCAL_GW, 2, [x, y]), BridgeDirection.LOCAL_GW_TO_RELATIVE_GW
    )
    assert out.values == (-2 * x, -4 * y)


@settings(max_examples=50, deadline=None)
@given(sequences, st.integers(min_value=1, max_value=12))
def test_bridge_round_trip(values, w):
    gw = seq(SequenceKind.LOCAL_GW, w, values)
    there = bridge_gw(gw, BridgeDirection.LOCAL_GW_TO_RELATIVE_GW)
    assert bridge_gw(there, BridgeDirection.RELATIVE_GW_TO_LOCAL_GW) == gw


# ---------------------------------------------------------------- pipeline


def test_pipeline_scalar_case():
    n1 = Fraction(4, 11)
    out = pipeline_local_bps_to_relative_bps(seq(SequenceKind.LOCAL_BPS, 3, [n1]))
    assert out.kind is SequenceKind.RELATIVE_BPS
    assert out.values == (3 * n1,)


def test_pipeline_is_linear():
    w = 4
    u = seq(SequenceKind.LOCAL_BPS, w, [1, -2, 3, 5])
    v = seq(SequenceKind.LOCAL_BPS, w, ["1/2", 0, "7/3", -1])
    c = Fraction(5, 6)
    combined = seq(
        SequenceKind.LOCAL_BPS, w, [a + c * b for a, b in zip(u.values, v.values)]
    )
    out_u = pipeline_local_bps_to_relative_bps(u).values
    out_v = pipeline_local_bps_to_relative_bps(v).values
    out_combined = pipeline_local_bps_to_relative_bps(combined).values
    assert out_combined == tuple(a + c * b for a, b in zip(out_u, out_v))


@settings(max_examples=40, deadline=None)
@given(sequences, st.integers(min_value=1, max_value=9))
def test_pipeline_round_trip(values, w):
    bps = seq(SequenceKind.LOCAL_BPS, w, values)
    assert pipeline_relative_bps_to_local_bps(
        pipeline_local_bps_to_relative_bps(bps)
    ) == bps


def test_pipeline_integer_preservation_spot_check():
    # integer local BPS counts give integer relative BPS counts at w >= 2
    bps = seq(SequenceKind.LOCAL_BPS, 3, [3, -6, 27, 14, -1, 8])
    out = pipeline_local_bps_to_relative_bps(bps)
    assert all(v.denominator == 1 for v in out.values)


# ------------------------------------------------------------- kind checks


def test_kind_mismatch_raised_everywhere():
    wrong = seq(SequenceKind.RELATIVE_GW, 2, [1])
    with pytest.raises(KindMismatchError):
        local_bps_to_gw(wrong)
    with pytest.raises(KindMismatchError):
        local_gw_to_bps(wrong)
    with pytest.raises(KindMismatchError):
        relative_bps_to_gw(wrong)
    with pytest.raises(KindMismatchError):
        relative_gw_to_bps(seq(SequenceKind.LOCAL_GW, 2, [1]))
    with pytest.raises(KindMismatchError):
        bridge_gw(wrong, BridgeDirection.LOCAL_GW_TO_RELATIVE_GW)
    with pytest.raises(KindMismatchError):
        pipeline_local_bps_to_relative_bps(wrong)
