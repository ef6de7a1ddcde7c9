"""Deterministic simulator for post-quantum WPA-Enterprise authentication.

The package models EAP-TLS and EAP-TTLS handshakes carried over RADIUS
and Wi-Fi: message counts, fragmentation, airtime under lossy channels,
per-entity latency, session resumption cost, and how annoying a future
quantum adversary would find each part of the deployment.
"""

from .annoyance import (
    AnnoyanceLevel,
    AnnoyanceRating,
    AttackTarget,
    AuditEntry,
    DeploymentAudit,
    Impact,
    evaluate_deployment,
    rate_target,
)
from .channel import (
    BAND_2_4_GHZ,
    BAND_5_GHZ,
    EXCELLENT,
    GOOD,
    VERY_WEAK,
    Band,
    BandProfile,
    SignalSituation,
    Situation,
    WiredLink,
    band_profile,
    frame_airtime,
    situation_profile,
    transmit,
)
from .engine import (
    DEFAULT_SEED,
    AuthReport,
    BatchStats,
    MatrixRow,
    Scenario,
    compare_matrix,
    crypto_time,
    resolve_algorithms,
    run_auth,
    run_batch,
    standard_matrix,
    with_seed,
)
from .errors import (
    AllRunsAborted,
    AuthAborted,
    DeliveryFailed,
    EmptyResults,
    IncompatibleConfig,
    InvalidHybrid,
    NoMatchingKem,
    ParseError,
    PqeapError,
    RoundTripLimitExceeded,
    UnknownAlgorithm,
)
from .handshake import (
    ChainShape,
    CryptoOp,
    Direction,
    EapMethod,
    Entity,
    Flight,
    FlightLabel,
    Fragment,
    OpKind,
    build_flights,
    certificate_chain_bytes,
    count_eap_messages,
    flight_table_csv,
    fragment_flight,
    resumption_flights,
    session_cache_entry_bytes,
)
from .recommend import (
    RecommendationVerdict,
    classify_recommended,
    handshake_cycles,
)
from .registry import (
    DEFAULT_REGISTRY,
    HybridSpec,
    KemSpec,
    Registry,
    SecurityLevel,
    SignatureSpec,
    make_hybrid_kem,
    make_hybrid_signature,
)
from .scenariofile import ScenarioFile, parse_scenario, parse_scenario_text

__version__ = "0.1.0"

__all__ = [
    "AllRunsAborted",
    "AnnoyanceLevel",
    "AnnoyanceRating",
    "AttackTarget",
    "AuditEntry",
    "AuthAborted",
    "AuthReport",
    "BAND_2_4_GHZ",
    "BAND_5_GHZ",
    "Band",
    "BandProfile",
    "BatchStats",
    "ChainShape",
    "CryptoOp",
    "DEFAULT_REGISTRY",
    "DEFAULT_SEED",
    "DeliveryFailed",
    "DeploymentAudit",
    "Direction",
    "EXCELLENT",
    "EapMethod",
    "EmptyResults",
    "Entity",
    "Flight",
    "FlightLabel",
    "Fragment",
    "GOOD",
    "HybridSpec",
    "Impact",
    "IncompatibleConfig",
    "InvalidHybrid",
    "KemSpec",
    "MatrixRow",
    "NoMatchingKem",
    "OpKind",
    "ParseError",
    "PqeapError",
    "RecommendationVerdict",
    "Registry",
    "RoundTripLimitExceeded",
    "Scenario",
    "ScenarioFile",
    "SecurityLevel",
    "SignalSituation",
    "SignatureSpec",
    "Situation",
    "UnknownAlgorithm",
    "VERY_WEAK",
    "WiredLink",
    "band_profile",
    "build_flights",
    "certificate_chain_bytes",
    "classify_recommended",
    "compare_matrix",
    "count_eap_messages",
    "crypto_time",
    "evaluate_deployment",
    "flight_table_csv",
    "fragment_flight",
    "frame_airtime",
    "handshake_cycles",
    "make_hybrid_kem",
    "make_hybrid_signature",
    "parse_scenario",
    "parse_scenario_text",
    "rate_target",
    "resolve_algorithms",
    "resumption_flights",
    "run_auth",
    "run_batch",
    "session_cache_entry_bytes",
    "situation_profile",
    "standard_matrix",
    "with_seed",
]
