"""Deployment recommendation rule.

A scheme is recommended for WPA-Enterprise only when it stays below the
EAP chattiness limit and its total asymmetric compute does not regress
past the classical baseline it would replace. Chattiness is the binding
constraint in practice: many RADIUS deployments cap EAP round trips
well below what a huge certificate chain needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import handshake
from .engine import Scenario, build_flights_for, resolve_algorithms
from .handshake import ChainShape, EapMethod
from .registry import DEFAULT_REGISTRY, Registry

RECOMMENDED_MESSAGE_LIMIT = 100  # logical EAP messages for one authentication
BASELINE_SIGNATURE = "RSA-2048"


def handshake_cycles(
    signature: str,
    kem: str = "auto",
    method: EapMethod = EapMethod.EAP_TLS,
    shape: ChainShape = ChainShape(),
    registry: Registry = DEFAULT_REGISTRY,
) -> int:
    """Total asymmetric cycles both peers spend in one full handshake."""
    scenario = Scenario(signature=signature, kem=kem, method=method, shape=shape)
    flights = build_flights_for(scenario, registry)
    return sum(op.cycles for flight in flights for op in flight.crypto_ops)


@dataclass(frozen=True)
class RecommendationVerdict:
    """Outcome of the recommendation rule for one configuration."""

    algorithm: str
    kem: str
    eap_messages: int
    total_handshake_cycles: int
    baseline_cycles: int
    recommended: bool
    reasons: tuple[str, ...]


def classify_recommended(
    signature: str,
    kem: str = "auto",
    method: EapMethod = EapMethod.EAP_TLS,
    shape: ChainShape = ChainShape(),
    fragment_size: int = handshake.DEFAULT_FRAGMENT_SIZE,
    registry: Registry = DEFAULT_REGISTRY,
    message_limit: int = RECOMMENDED_MESSAGE_LIMIT,
) -> RecommendationVerdict:
    """Apply the recommendation rule to one signature/KEM configuration.

    Recommended means: fewer than message_limit logical EAP messages for
    a full handshake, and total asymmetric compute no worse than the
    classical RSA baseline under the same method and chain shape.
    """
    scenario = Scenario(signature=signature, kem=kem, method=method, shape=shape,
                        fragment_size=fragment_size)
    _, kem_spec = resolve_algorithms(scenario, registry)
    flights = build_flights_for(scenario, registry)
    messages = handshake.count_eap_messages(flights, fragment_size)
    cycles = sum(op.cycles for flight in flights for op in flight.crypto_ops)
    baseline = handshake_cycles(BASELINE_SIGNATURE, "auto", method, shape, registry)

    reasons = []
    if messages >= message_limit:
        reasons.append(
            f"needs {messages} EAP messages, at or over the {message_limit} limit")
    if cycles > baseline:
        reasons.append(
            f"handshake costs {cycles:,} cycles vs {baseline:,} for the classical baseline")
    return RecommendationVerdict(
        algorithm=signature, kem=kem_spec.name, eap_messages=messages,
        total_handshake_cycles=cycles, baseline_cycles=baseline,
        recommended=not reasons, reasons=tuple(reasons))
