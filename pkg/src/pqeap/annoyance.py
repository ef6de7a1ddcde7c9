"""Quantum exposure audit for a WPA-Enterprise deployment.

Grades the three places quantum-breakable asymmetric crypto shows up in
an EAP-TLS network: the client certificate, the server certificate, and
the ephemeral key share protecting the session keys. The annoyance
rating is ordinal and attacker-centric: it says how much work a
cryptographically relevant quantum computer has to repeat to keep
exploiting that target. Low annoyance means one break pays off across
victims and sessions, so low-rated exposed targets are the most urgent
to migrate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .registry import DEFAULT_REGISTRY, Registry, SecurityLevel


class AttackTarget(str, Enum):
    CLIENT_CERTIFICATE = "client-certificate"
    SERVER_CERTIFICATE = "server-certificate"
    KEY_SHARE_SESSION_KEY = "key-share-session-key"


class AnnoyanceLevel(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def rank(self) -> int:
        return {"low": 0, "medium": 1, "high": 2}[self.value]


@dataclass(frozen=True)
class Impact:
    """Which security goals fall when the target's crypto breaks."""

    confidentiality: bool
    integrity: bool
    availability: bool

    def letters(self) -> str:
        out = "".join(flag for flag, on in (
            ("C", self.confidentiality), ("I", self.integrity), ("A", self.availability)) if on)
        return out or "-"


@dataclass(frozen=True)
class AnnoyanceRating:
    target: AttackTarget
    level: AnnoyanceLevel
    impact: Impact
    rationale: str


_RATINGS = {
    # Forging one server certificate lets a rogue AP impersonate the whole
    # network to every client: full MITM, and it can also deny service.
    AttackTarget.SERVER_CERTIFICATE: AnnoyanceRating(
        AttackTarget.SERVER_CERTIFICATE, AnnoyanceLevel.LOW,
        Impact(confidentiality=True, integrity=True, availability=True),
        "one forged server identity impersonates the network to every client"),
    # A forged client certificate admits one fake client; the attacker
    # repeats the work per client identity it wants to fake.
    AttackTarget.CLIENT_CERTIFICATE: AnnoyanceRating(
        AttackTarget.CLIENT_CERTIFICATE, AnnoyanceLevel.MEDIUM,
        Impact(confidentiality=False, integrity=True, availability=False),
        "each forged client identity takes a separate key recovery"),
    # Breaking a key share recovers one session's keys; recorded traffic
    # decrypts and its integrity protection falls with it, session by
    # session.
    AttackTarget.KEY_SHARE_SESSION_KEY: AnnoyanceRating(
        AttackTarget.KEY_SHARE_SESSION_KEY, AnnoyanceLevel.HIGH,
        Impact(confidentiality=True, integrity=True, availability=False),
        "every session needs its own key-share break"),
}


def rate_target(target: AttackTarget) -> AnnoyanceRating:
    """Fixed rating of one attack target."""
    return _RATINGS[target]


@dataclass(frozen=True)
class AuditEntry:
    target: AttackTarget
    scheme: str
    exposed: bool
    rating: AnnoyanceRating
    harvest_now_decrypt_later: bool


@dataclass(frozen=True)
class DeploymentAudit:
    """Exposure verdicts for all three targets, most urgent first."""

    entries: tuple[AuditEntry, ...]

    @property
    def exposed(self) -> tuple[AuditEntry, ...]:
        return tuple(e for e in self.entries if e.exposed)

    def to_json(self) -> str:
        doc = [
            {
                "target": e.target.value,
                "scheme": e.scheme,
                "status": "EXPOSED" if e.exposed else "PROTECTED",
                "annoyance": e.rating.level.value,
                "impact": e.rating.impact.letters(),
                "rationale": e.rating.rationale,
                "harvest_now_decrypt_later": e.harvest_now_decrypt_later,
            }
            for e in self.entries
        ]
        return json.dumps(doc, indent=2) + "\n"

    def to_table(self) -> str:
        header = f"{'target':<24} {'scheme':<28} {'status':<10} {'annoyance':<10} {'impact':<7} note"
        lines = [header, "-" * len(header)]
        for e in self.entries:
            note = e.rating.rationale
            if e.harvest_now_decrypt_later:
                note = "harvest-now-decrypt-later: recorded sessions break retroactively"
            lines.append(
                f"{e.target.value:<24} {e.scheme:<28} "
                f"{'EXPOSED' if e.exposed else 'PROTECTED':<10} "
                f"{e.rating.level.value:<10} {e.rating.impact.letters():<7} {note}")
        return "\n".join(lines) + "\n"


def evaluate_deployment(
    client_signature: str,
    server_signature: str,
    kem: str,
    registry: Registry = DEFAULT_REGISTRY,
) -> DeploymentAudit:
    """Audit which targets a quantum adversary can still attack.

    A target is exposed exactly when the scheme protecting it is purely
    classical; hybrids inherit the level of their PQ half and count as
    protected. An exposed key share additionally raises the
    harvest-now-decrypt-later flag: traffic recorded today falls as soon
    as the adversary exists, no matter when the network migrates.
    """
    client_sig = registry.lookup_signature(client_signature)
    server_sig = registry.lookup_signature(server_signature)
    kem_spec = registry.lookup_kem(kem)

    def entry(target: AttackTarget, name: str, level: SecurityLevel) -> AuditEntry:
        exposed = level is SecurityLevel.CLASSICAL
        return AuditEntry(
            target=target, scheme=name, exposed=exposed, rating=rate_target(target),
            harvest_now_decrypt_later=(
                exposed and target is AttackTarget.KEY_SHARE_SESSION_KEY))

    entries = [
        entry(AttackTarget.CLIENT_CERTIFICATE, client_sig.name, client_sig.level),
        entry(AttackTarget.SERVER_CERTIFICATE, server_sig.name, server_sig.level),
        entry(AttackTarget.KEY_SHARE_SESSION_KEY, kem_spec.name, kem_spec.level),
    ]
    # exposed targets first, easiest attacks (lowest annoyance) on top
    entries.sort(key=lambda e: (not e.exposed, e.rating.level.rank, e.target.value))
    return DeploymentAudit(tuple(entries))
