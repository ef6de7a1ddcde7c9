"""Link models: Wi-Fi airtime with lossy retransmission, and the wired
AP-to-RADIUS hop.

Frames ride at the band's configured minimum data rate, the rate
management points at when the link budget is poor and the rate every
station must decode. Loss is a per-attempt Bernoulli event; a lost
frame is retried after an exponential backoff until it gets through or
the retry budget runs out. Signal situations are calibration presets,
not measurements: they are tuned so that the relative cost of chatty
versus compute-heavy handshakes behaves the way real deployments do,
and they claim no fidelity to any particular radio environment.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DeliveryFailed

DEFAULT_ATTEMPT_CAP = 10        # transmissions of one frame before giving up
RETRY_BACKOFF_CAP_US = 8_000.0  # exponential backoff ceiling


class Band(str, Enum):
    GHZ_2_4 = "2.4GHz"
    GHZ_5 = "5GHz"


class Situation(str, Enum):
    EXCELLENT = "excellent"
    GOOD = "good"
    VERY_WEAK = "very-weak"


@dataclass(frozen=True)
class BandProfile:
    """Physical-layer parameters of one Wi-Fi band."""

    band: Band
    data_rate_bps: float
    phy_mac_overhead_us: float = 300.0  # preamble, IFS and MAC ACK, lumped

    def __post_init__(self) -> None:
        if self.data_rate_bps <= 0:
            raise ValueError("data_rate_bps must be positive")
        if self.phy_mac_overhead_us < 0:
            raise ValueError("phy_mac_overhead_us cannot be negative")


@dataclass(frozen=True)
class SignalSituation:
    """Loss and backoff behaviour of one signal quality preset."""

    situation: Situation
    frame_loss_probability: float
    retry_backoff_us: float = 500.0  # first retry waits this long, then doubles

    def __post_init__(self) -> None:
        if not 0.0 <= self.frame_loss_probability < 1.0:
            raise ValueError("frame_loss_probability must be in [0, 1)")
        if self.retry_backoff_us < 0:
            raise ValueError("retry_backoff_us cannot be negative")


@dataclass(frozen=True)
class WiredLink:
    """AP-to-authentication-server hop. Loss is reserved for future use;
    the transit model treats the wired segment as reliable."""

    one_way_latency_us: float = 200.0
    loss: float = 0.0

    def __post_init__(self) -> None:
        if self.one_way_latency_us < 0:
            raise ValueError("one_way_latency_us cannot be negative")
        if not 0.0 <= self.loss < 1.0:
            raise ValueError("loss must be in [0, 1)")


BAND_2_4_GHZ = BandProfile(Band.GHZ_2_4, 1_000_000.0)
BAND_5_GHZ = BandProfile(Band.GHZ_5, 6_000_000.0)

EXCELLENT = SignalSituation(Situation.EXCELLENT, 0.01)
GOOD = SignalSituation(Situation.GOOD, 0.05)
# High enough that retransmissions roughly double airtime: at the weak
# edge of coverage the chatty handshakes lose their race against the
# compute-heavy ones, which matches observed behaviour.
VERY_WEAK = SignalSituation(Situation.VERY_WEAK, 0.50)

_BAND_PROFILES = {Band.GHZ_2_4: BAND_2_4_GHZ, Band.GHZ_5: BAND_5_GHZ}
_SITUATION_PROFILES = {
    Situation.EXCELLENT: EXCELLENT,
    Situation.GOOD: GOOD,
    Situation.VERY_WEAK: VERY_WEAK,
}


def band_profile(band: Band | str) -> BandProfile:
    """Default profile for a band given as enum or name."""
    return _BAND_PROFILES[Band(band)]


def situation_profile(situation: Situation | str) -> SignalSituation:
    """Default preset for a signal situation given as enum or name."""
    return _SITUATION_PROFILES[Situation(situation)]


def frame_airtime(size_bytes: int, profile: BandProfile) -> float:
    """Microseconds one transmission attempt of a frame occupies the air."""
    if size_bytes < 0:
        raise ValueError("size_bytes cannot be negative")
    return profile.phy_mac_overhead_us + size_bytes * 8 / profile.data_rate_bps * 1e6


def retry_backoff_us(situation: SignalSituation, retry_index: int) -> float:
    """Backoff before retry number retry_index (1-based), doubling and capped."""
    return min(situation.retry_backoff_us * 2 ** (retry_index - 1), RETRY_BACKOFF_CAP_US)


def transmit(
    size_bytes: int,
    profile: BandProfile,
    situation: SignalSituation,
    rng,
    attempt_cap: int = DEFAULT_ATTEMPT_CAP,
) -> tuple[float, int]:
    """Deliver one frame over the lossy wireless hop.

    Repeats Bernoulli loss trials until a transmission succeeds, adding
    a doubling backoff between attempts. Returns (elapsed microseconds,
    attempts used). Raises DeliveryFailed when attempt_cap transmissions
    all fail; rng is consumed once per attempt.
    """
    airtime = frame_airtime(size_bytes, profile)
    p = situation.frame_loss_probability
    elapsed = 0.0
    for attempt in range(1, attempt_cap + 1):
        elapsed += airtime
        if rng.random() >= p:
            return elapsed, attempt
        if attempt < attempt_cap:
            elapsed += retry_backoff_us(situation, attempt)
    raise DeliveryFailed(
        f"frame of {size_bytes} bytes lost {attempt_cap} times in a row "
        f"({situation.situation.value}, loss {p})")


def wired_transit(size_bytes: int, link: WiredLink) -> float:
    """Microseconds to move one fragment across the wired hop."""
    del size_bytes  # a LAN hop is latency-bound at these sizes
    return link.one_way_latency_us
