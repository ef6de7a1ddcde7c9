"""Deterministic authentication simulator.

One simulated authentication walks the handshake flights in order:
crypto executes on the entity that owns it, every EAP fragment crosses
the lossy wireless hop between client and AP and the wired hop between
AP and authentication server, and all elapsed time lands in exactly one
of three buckets (client, AP, server), so the buckets always add up to
the total.

Randomness only enters through wireless loss. Every fragment draws from
its own generator, derived from (seed, run, flight, fragment), so runs
are reproducible bit for bit, repetitions are order-independent, and
two scenarios that share a seed see identical channel luck wherever
their transmission schedules line up. That last property turns A/B
comparisons (bands, methods, hybrid versus pure) into matched pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import ceil

import numpy as np

from . import channel, handshake
from .channel import BandProfile, SignalSituation, WiredLink
from .errors import AllRunsAborted, AuthAborted, DeliveryFailed, PqeapError, RoundTripLimitExceeded
from .handshake import ChainShape, Direction, EapMethod, Entity, Flight
from .registry import DEFAULT_REGISTRY, KemSpec, Registry, SecurityLevel, SignatureSpec

DEFAULT_SEED = 0xC0FFEE


def crypto_time(cycles: int, cpu_hz: float) -> float:
    """Microseconds one operation takes on a core of the given speed."""
    if cpu_hz <= 0:
        raise ValueError("cpu_hz must be positive")
    return cycles / cpu_hz * 1e6


def nearest_rank_percentile(values, pct: float) -> float:
    """Nearest-rank percentile: the smallest element covering pct of the data."""
    if not 0 < pct <= 100:
        raise ValueError("pct must be in (0, 100]")
    ordered = sorted(values)
    if not ordered:
        raise ValueError("no values")
    rank = max(1, ceil(pct / 100 * len(ordered)))
    return ordered[rank - 1]


@dataclass(frozen=True)
class Scenario:
    """Full configuration of one simulated authentication setup."""

    signature: str
    kem: str = "auto"
    method: EapMethod = EapMethod.EAP_TLS
    band: BandProfile = channel.BAND_2_4_GHZ
    situation: SignalSituation = channel.EXCELLENT
    wired: WiredLink = field(default_factory=WiredLink)
    shape: ChainShape = field(default_factory=ChainShape)
    fragment_size: int = handshake.DEFAULT_FRAGMENT_SIZE
    client_cpu_hz: float = 2.1e9
    ap_cpu_hz: float = 2.0e9
    server_cpu_hz: float = 2.0e9
    resumption: bool = False
    repetitions: int = 100
    seed: int = DEFAULT_SEED
    round_trip_limit: int = handshake.DEFAULT_ROUND_TRIP_LIMIT
    ap_frame_processing_us: float = 50.0
    attempt_cap: int = channel.DEFAULT_ATTEMPT_CAP
    label: str | None = None

    def __post_init__(self) -> None:
        if self.fragment_size < 1:
            raise ValueError("fragment_size must be at least 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if self.seed < 0:
            raise ValueError("seed cannot be negative")
        if self.round_trip_limit < 1:
            raise ValueError("round_trip_limit must be at least 1")
        if self.attempt_cap < 1:
            raise ValueError("attempt_cap must be at least 1")
        if self.ap_frame_processing_us < 0:
            raise ValueError("ap_frame_processing_us cannot be negative")
        for name in ("client_cpu_hz", "ap_cpu_hz", "server_cpu_hz"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def scenario_id(self) -> str:
        if self.label:
            return self.label
        mode = "resume" if self.resumption else "full"
        return "/".join((
            self.method.value, self.signature.lower(), self.kem.lower(),
            self.band.band.value.lower(), self.situation.situation.value, mode))


@dataclass(frozen=True)
class AuthReport:
    """Outcome of one simulated authentication.

    total_us is exactly client_us + ap_us + server_us; the three buckets
    partition the elapsed time by who spent it.
    """

    total_us: float
    client_us: float
    ap_us: float
    server_us: float
    logical_eap_messages: int
    transmitted_frames: int
    aborted: bool = False
    abort_reason: str | None = None


@dataclass(frozen=True)
class BatchStats:
    """Aggregates over the non-aborted repetitions of one scenario."""

    median_us: float
    p95_us: float
    client_median_us: float
    ap_median_us: float
    server_median_us: float
    abort_rate: float
    logical_eap_messages: int
    median_frames: int
    repetitions: int
    completed: int


@dataclass(frozen=True)
class MatrixRow:
    """One scenario's result inside a comparison matrix."""

    scenario: Scenario
    stats: BatchStats | None
    error: str | None = None


def resolve_algorithms(scenario: Scenario, registry: Registry = DEFAULT_REGISTRY) -> tuple[SignatureSpec, KemSpec]:
    """Resolve the scenario's signature and KEM identifiers.

    kem="auto" picks the conventional partner: the ML-KEM of the
    signature's security level, the matching named hybrid group when the
    signature itself is a hybrid, and plain X25519 for the all-classical
    baseline.
    """
    sig = registry.lookup_signature(scenario.signature)
    if scenario.kem != "auto":
        return sig, registry.lookup_kem(scenario.kem)
    if sig.level is SecurityLevel.CLASSICAL:
        return sig, registry.lookup_kem("X25519")
    if registry.is_hybrid_name(scenario.signature):
        return sig, registry.hybrid_kem_for_level(sig.level)
    return sig, registry.kem_for_level(sig.level)


@dataclass(frozen=True)
class _FlightPlan:
    direction: Direction
    fragment_sizes: tuple[int, ...]
    pre_us: tuple[tuple[Entity, float], ...]   # crypto before the flight departs
    post_us: tuple[tuple[Entity, float], ...]  # crypto after it arrives


@dataclass(frozen=True)
class _RunPlan:
    flights: tuple[_FlightPlan, ...]
    round_trips: int
    eap_messages: int


def _cpu_hz(scenario: Scenario, entity: Entity) -> float:
    if entity is Entity.CLIENT:
        return scenario.client_cpu_hz
    if entity is Entity.SERVER:
        return scenario.server_cpu_hz
    return scenario.ap_cpu_hz


def build_flights_for(scenario: Scenario, registry: Registry = DEFAULT_REGISTRY) -> tuple[Flight, ...]:
    """Flight sequence the scenario will execute (full or resumption)."""
    sig, kem = resolve_algorithms(scenario, registry)
    if scenario.resumption:
        return handshake.resumption_flights(
            sig, kem, handshake_overhead=scenario.shape.handshake_overhead)
    return handshake.build_flights(scenario.method, sig, kem, scenario.shape)


def _build_plan(scenario: Scenario, registry: Registry) -> _RunPlan:
    flights = build_flights_for(scenario, registry)
    plans = []
    total_fragments = 0
    for flight in flights:
        sender = (Entity.CLIENT if flight.direction is Direction.CLIENT_TO_SERVER
                  else Entity.SERVER)
        pre, post = [], []
        for op in flight.crypto_ops:
            us = crypto_time(op.cycles, _cpu_hz(scenario, op.entity))
            (pre if op.entity is sender or op.entity is Entity.AP else post).append(
                (op.entity, us))
        sizes = tuple(f.size_bytes for f in
                      handshake.fragment_flight(flight, scenario.fragment_size))
        total_fragments += len(sizes)
        plans.append(_FlightPlan(flight.direction, sizes, tuple(pre), tuple(post)))
    return _RunPlan(tuple(plans), total_fragments, 2 * total_fragments)


def _fragment_rng(seed: int, run_index: int, flight_index: int, fragment_index: int):
    entropy = (seed, run_index, flight_index, fragment_index)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


class _Clock:
    """Per-entity time buckets for one run."""

    __slots__ = ("client", "ap", "server")

    def __init__(self):
        self.client = self.ap = self.server = 0.0

    def add(self, entity: Entity, us: float) -> None:
        if entity is Entity.CLIENT:
            self.client += us
        elif entity is Entity.SERVER:
            self.server += us
        else:
            self.ap += us


def run_auth(
    scenario: Scenario,
    run_index: int = 0,
    registry: Registry = DEFAULT_REGISTRY,
    _plan: _RunPlan | None = None,
) -> AuthReport:
    """Simulate one authentication; returns the timing report.

    Raises AuthAborted (with the partial report attached) when the
    handshake exceeds the round-trip cap or a frame exhausts its retry
    budget.
    """
    plan = _plan if _plan is not None else _build_plan(scenario, registry)
    clock = _Clock()
    frames = 0

    def abort(reason: str, cause: Exception) -> AuthAborted:
        report = AuthReport(
            total_us=clock.client + clock.ap + clock.server,
            client_us=clock.client, ap_us=clock.ap, server_us=clock.server,
            logical_eap_messages=plan.eap_messages, transmitted_frames=frames,
            aborted=True, abort_reason=reason)
        return AuthAborted(reason, report)

    if plan.round_trips > scenario.round_trip_limit:
        cause = RoundTripLimitExceeded(
            f"handshake needs {plan.round_trips} EAP round trips, "
            f"limit is {scenario.round_trip_limit}")
        raise abort(str(cause), cause) from cause

    for flight_index, fp in enumerate(plan.flights):
        for entity, us in fp.pre_us:
            clock.add(entity, us)
        for fragment_index, size in enumerate(fp.fragment_sizes):
            rng = _fragment_rng(scenario.seed, run_index, flight_index, fragment_index)
            try:
                elapsed, attempts = channel.transmit(
                    size, scenario.band, scenario.situation, rng, scenario.attempt_cap)
            except DeliveryFailed as exc:
                frames += scenario.attempt_cap
                raise abort(str(exc), exc) from exc
            clock.client += elapsed
            frames += attempts
            clock.ap += scenario.ap_frame_processing_us
            clock.server += channel.wired_transit(size, scenario.wired)
        for entity, us in fp.post_us:
            clock.add(entity, us)

    return AuthReport(
        total_us=clock.client + clock.ap + clock.server,
        client_us=clock.client, ap_us=clock.ap, server_us=clock.server,
        logical_eap_messages=plan.eap_messages, transmitted_frames=frames)


def run_batch(scenario: Scenario, registry: Registry = DEFAULT_REGISTRY) -> BatchStats:
    """Run all repetitions of a scenario and aggregate the survivors.

    Raises AllRunsAborted when not a single repetition completes.
    """
    plan = _build_plan(scenario, registry)
    reports = []
    for run_index in range(scenario.repetitions):
        try:
            reports.append(run_auth(scenario, run_index, registry, plan))
        except AuthAborted as exc:
            reports.append(exc.report)
    completed = [r for r in reports if not r.aborted]
    if not completed:
        raise AllRunsAborted(
            f"all {scenario.repetitions} runs of {scenario.scenario_id} aborted "
            f"({reports[0].abort_reason})")
    return BatchStats(
        median_us=nearest_rank_percentile([r.total_us for r in completed], 50),
        p95_us=nearest_rank_percentile([r.total_us for r in completed], 95),
        client_median_us=nearest_rank_percentile([r.client_us for r in completed], 50),
        ap_median_us=nearest_rank_percentile([r.ap_us for r in completed], 50),
        server_median_us=nearest_rank_percentile([r.server_us for r in completed], 50),
        abort_rate=1 - len(completed) / scenario.repetitions,
        logical_eap_messages=completed[0].logical_eap_messages,
        median_frames=nearest_rank_percentile([r.transmitted_frames for r in completed], 50),
        repetitions=scenario.repetitions,
        completed=len(completed))


def compare_matrix(scenarios, registry: Registry = DEFAULT_REGISTRY) -> list[MatrixRow]:
    """Run a list of scenarios; failures stay on their row."""
    rows = []
    for scenario in scenarios:
        try:
            rows.append(MatrixRow(scenario, run_batch(scenario, registry)))
        except PqeapError as exc:
            rows.append(MatrixRow(scenario, None, f"{type(exc).__name__}: {exc}"))
    return rows


def standard_matrix(
    registry: Registry = DEFAULT_REGISTRY,
    repetitions: int = 100,
    seed: int = DEFAULT_SEED,
    method: EapMethod = EapMethod.EAP_TLS,
    resumption: bool = False,
) -> list[Scenario]:
    """The full comparison grid: every core signature scheme on both
    bands in all three signal situations."""
    bands = (channel.BAND_2_4_GHZ, channel.BAND_5_GHZ)
    situations = (channel.EXCELLENT, channel.GOOD, channel.VERY_WEAK)
    return [
        Scenario(signature=sig.name, method=method, band=band, situation=situation,
                 repetitions=repetitions, seed=seed, resumption=resumption)
        for sig in registry.signature_table
        for band in bands
        for situation in situations
    ]


def with_seed(scenario: Scenario, seed: int) -> Scenario:
    """Copy of a scenario with a different seed."""
    return replace(scenario, seed=seed)
