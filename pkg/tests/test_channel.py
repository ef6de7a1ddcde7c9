"""Airtime, loss, backoff and retransmission behaviour of the radio link."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqeap.channel import (
    BAND_2_4_GHZ,
    BAND_5_GHZ,
    DEFAULT_ATTEMPT_CAP,
    EXCELLENT,
    GOOD,
    RETRY_BACKOFF_CAP_US,
    VERY_WEAK,
    Band,
    SignalSituation,
    Situation,
    WiredLink,
    band_profile,
    frame_airtime,
    retry_backoff_us,
    situation_profile,
    transmit,
    wired_transit,
)
from pqeap.errors import DeliveryFailed


def _rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


def test_airtime_is_overhead_plus_serialization():
    # 1398 bytes at 1 Mbps: 11184 us on air plus 300 us fixed overhead
    assert frame_airtime(1398, BAND_2_4_GHZ) == pytest.approx(300 + 11184)
    # the 5 GHz profile is six times faster on the serialization part
    assert frame_airtime(1398, BAND_5_GHZ) == pytest.approx(300 + 11184 / 6)


def test_airtime_of_empty_frame_is_pure_overhead():
    assert frame_airtime(0, BAND_2_4_GHZ) == pytest.approx(300)


@given(small=st.integers(min_value=0, max_value=10_000),
       extra=st.integers(min_value=1, max_value=10_000))
def test_airtime_is_monotone_in_size(small, extra):
    assert frame_airtime(small + extra, BAND_2_4_GHZ) > frame_airtime(small, BAND_2_4_GHZ)


def test_band_profiles():
    assert BAND_2_4_GHZ.band is Band.GHZ_2_4
    assert BAND_2_4_GHZ.data_rate_bps == 1e6
    assert BAND_5_GHZ.data_rate_bps == 6e6
    assert band_profile("2.4GHz") is BAND_2_4_GHZ
    assert band_profile(Band.GHZ_5) is BAND_5_GHZ


def test_situation_profiles():
    assert EXCELLENT.frame_loss_probability == pytest.approx(0.01)
    assert GOOD.frame_loss_probability == pytest.approx(0.05)
    assert VERY_WEAK.frame_loss_probability == pytest.approx(0.50)
    assert situation_profile("very-weak") is VERY_WEAK
    assert situation_profile(Situation.GOOD) is GOOD


def test_loss_probability_must_leave_room_for_success():
    with pytest.raises(ValueError):
        SignalSituation(Situation.GOOD, frame_loss_probability=1.0)
    with pytest.raises(ValueError):
        SignalSituation(Situation.GOOD, frame_loss_probability=-0.1)


def test_backoff_doubles_then_caps():
    waits = [retry_backoff_us(EXCELLENT, i) for i in range(1, 8)]
    assert waits == [500.0, 1000.0, 2000.0, 4000.0, 8000.0, 8000.0, 8000.0]
    assert max(waits) == RETRY_BACKOFF_CAP_US


def test_transmit_without_loss_is_a_single_attempt():
    lossless = SignalSituation(Situation.EXCELLENT, frame_loss_probability=0.0)
    elapsed, attempts = transmit(1398, BAND_2_4_GHZ, lossless, _rng())
    assert attempts == 1
    assert elapsed == pytest.approx(frame_airtime(1398, BAND_2_4_GHZ))


def test_transmit_is_deterministic_for_a_seeded_rng():
    a = transmit(1398, BAND_2_4_GHZ, VERY_WEAK, _rng(42))
    b = transmit(1398, BAND_2_4_GHZ, VERY_WEAK, _rng(42))
    assert a == b


def test_retransmission_adds_airtime_and_backoff():
    # walk seeds until one produces a first-attempt loss, then check accounting
    for seed in range(200):
        rng = np.random.Generator(np.random.PCG64(seed))
        elapsed, attempts = transmit(100, BAND_2_4_GHZ, VERY_WEAK, rng)
        if attempts == 2:
            expected = 2 * frame_airtime(100, BAND_2_4_GHZ) + 500.0
            assert elapsed == pytest.approx(expected)
            return
    pytest.fail("no 2-attempt sample found in 200 seeds")


def test_elapsed_matches_attempts_exactly():
    for seed in range(50):
        rng = np.random.Generator(np.random.PCG64(seed))
        elapsed, attempts = transmit(700, BAND_5_GHZ, VERY_WEAK, rng)
        expected = attempts * frame_airtime(700, BAND_5_GHZ) + sum(
            retry_backoff_us(VERY_WEAK, i) for i in range(1, attempts))
        assert elapsed == pytest.approx(expected)
        assert 1 <= attempts <= DEFAULT_ATTEMPT_CAP


def test_delivery_fails_after_the_attempt_cap():
    hopeless = SignalSituation(Situation.VERY_WEAK, frame_loss_probability=0.999999)
    with pytest.raises(DeliveryFailed):
        transmit(1398, BAND_2_4_GHZ, hopeless, _rng())


def test_attempt_cap_is_configurable():
    hopeless = SignalSituation(Situation.VERY_WEAK, frame_loss_probability=0.999999)
    with pytest.raises(DeliveryFailed):
        transmit(1398, BAND_2_4_GHZ, hopeless, _rng(), attempt_cap=3)


@pytest.mark.parametrize("p", [0.01, 0.05, 0.20])
def test_mean_attempts_match_geometric_expectation(p):
    situation = SignalSituation(Situation.GOOD, frame_loss_probability=p)
    rng = _rng(123)
    n = 10_000
    total = sum(transmit(500, BAND_5_GHZ, situation, rng)[1] for _ in range(n))
    assert total / n == pytest.approx(1.0 / (1.0 - p), rel=0.05)


def test_wired_transit_is_fixed_latency():
    link = WiredLink()
    assert wired_transit(0, link) == pytest.approx(200.0)
    assert wired_transit(100_000, link) == pytest.approx(200.0)
    assert wired_transit(1, WiredLink(one_way_latency_us=350.0)) == pytest.approx(350.0)
