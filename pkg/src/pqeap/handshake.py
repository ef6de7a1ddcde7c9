"""EAP-TLS / EAP-TTLS handshake structure.

Builds the ordered list of TLS flights for one authentication, sizes
each flight from the negotiated signature scheme and KEM, and slices
flights into EAP fragments. EAP runs over RADIUS without guaranteed
delivery, so every fragment is a request that needs its own
acknowledging response; that is why one fragment costs two EAP
messages and why oversized certificate chains translate directly into
chatty authentications.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from math import ceil

from .errors import IncompatibleConfig
from .registry import KemSpec, SecurityLevel, SignatureSpec

DEFAULT_FRAGMENT_SIZE = 1398       # bytes of TLS payload per EAP packet
DEFAULT_ROUND_TRIP_LIMIT = 500     # server-side cap on EAP round trips

# Fixed payload models for the pieces the type tables do not size:
# a TTLS inner authentication (one password-style exchange inside the
# tunnel), the EAP-Success packet, and the PSK extension added to a
# resuming ClientHello.
TTLS_INNER_AUTH_BYTES = 200
EAP_SUCCESS_BYTES = 4
PSK_EXTENSION_BYTES = 200

# Fixed per-session overhead of a server-side resumption cache entry
# (session metadata, keys, timestamps) on top of the stored client
# public key and certificate signature.
SESSION_CACHE_BASE_BYTES = 654


class EapMethod(str, Enum):
    EAP_TLS = "eap-tls"
    EAP_TTLS = "eap-ttls"


class Entity(str, Enum):
    CLIENT = "client"
    AP = "ap"
    SERVER = "server"


class OpKind(str, Enum):
    KEYGEN = "keygen"
    ENCAPS = "encaps"
    DECAPS = "decaps"
    SIGN = "sign"
    VERIFY = "verify"


class Direction(str, Enum):
    CLIENT_TO_SERVER = "client-to-server"
    SERVER_TO_CLIENT = "server-to-client"


class FlightLabel(str, Enum):
    IDENTITY_REQUEST = "IdentityRequest"
    IDENTITY_RESPONSE = "IdentityResponse"
    TLS_START = "TlsStart"
    CLIENT_HELLO = "ClientHello"
    SERVER_FLIGHT = "ServerFlight"
    CLIENT_FLIGHT = "ClientFlight"
    SERVER_FINISH = "ServerFinish"


@dataclass(frozen=True)
class CryptoOp:
    """One asymmetric operation tied to a flight."""

    entity: Entity
    kind: OpKind
    cycles: int


@dataclass(frozen=True)
class Flight:
    """One logical TLS flight before EAP fragmentation."""

    label: FlightLabel
    direction: Direction
    payload_bytes: int
    crypto_ops: tuple[CryptoOp, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class Fragment:
    """One EAP-sized slice of a flight's payload."""

    flight_label: FlightLabel
    index: int
    size_bytes: int


@dataclass(frozen=True)
class ChainShape:
    """Certificate chain geometry shared by both peers."""

    chain_length: int = 1
    cert_encoding_overhead: int = 600   # X.509 framing, extensions, names
    handshake_overhead: int = 170       # hello headers, nonces, Finished MAC

    def __post_init__(self) -> None:
        if self.chain_length < 1:
            raise ValueError("chain_length must be at least 1")
        if self.cert_encoding_overhead < 0 or self.handshake_overhead < 0:
            raise ValueError("overheads cannot be negative")


def certificate_chain_bytes(sig: SignatureSpec, shape: ChainShape) -> int:
    """Wire size of a certificate chain built from one signature scheme.

    Every certificate carries the subject public key, the issuer
    signature, and a fixed encoding overhead.
    """
    per_cert = shape.cert_encoding_overhead + sig.public_key_bytes + sig.signature_bytes
    return shape.chain_length * per_cert


def session_cache_entry_bytes(sig: SignatureSpec) -> int:
    """Server-side cache cost of one resumable session.

    Stateless resumption moves the same bytes into a client-held ticket;
    the entry size is identical, only who stores it changes.
    """
    return SESSION_CACHE_BASE_BYTES + sig.public_key_bytes + sig.signature_bytes


def build_flights(
    method: EapMethod,
    sig: SignatureSpec,
    kem: KemSpec,
    shape: ChainShape = ChainShape(),
) -> tuple[Flight, ...]:
    """Full handshake flight sequence for one authentication.

    Both peers authenticate with the same signature scheme. Under
    EAP-TTLS the client presents no certificate; its flight shrinks to
    the fixed inner-authentication exchange, which removes one sign at
    the client and the matching verifies at the server.
    """
    if kem.level is SecurityLevel.CLASSICAL and sig.level is not SecurityLevel.CLASSICAL:
        raise IncompatibleConfig(
            f"classical key exchange {kem.name} is only meaningful in the "
            f"all-classical baseline, not with {sig.name}")

    client, server = Entity.CLIENT, Entity.SERVER
    chain = certificate_chain_bytes(sig, shape)
    # the +1 verify covers the CertificateVerify on top of the chain itself
    chain_verifies = shape.chain_length + 1

    flights = [
        Flight(FlightLabel.IDENTITY_REQUEST, Direction.SERVER_TO_CLIENT, 0),
        Flight(FlightLabel.IDENTITY_RESPONSE, Direction.CLIENT_TO_SERVER, 0),
        Flight(FlightLabel.TLS_START, Direction.SERVER_TO_CLIENT, 0),
        Flight(
            FlightLabel.CLIENT_HELLO, Direction.CLIENT_TO_SERVER,
            kem.public_key_bytes + shape.handshake_overhead,
            (CryptoOp(client, OpKind.KEYGEN, kem.keygen_cycles),),
        ),
        Flight(
            FlightLabel.SERVER_FLIGHT, Direction.SERVER_TO_CLIENT,
            kem.ciphertext_bytes + chain + sig.signature_bytes + shape.handshake_overhead,
            (
                CryptoOp(server, OpKind.ENCAPS, kem.encaps_cycles),
                CryptoOp(server, OpKind.SIGN, sig.sign_cycles),
                CryptoOp(client, OpKind.DECAPS, kem.decaps_cycles),
            )
            + tuple(CryptoOp(client, OpKind.VERIFY, sig.verify_cycles)
                    for _ in range(chain_verifies)),
        ),
    ]
    if method is EapMethod.EAP_TLS:
        flights.append(Flight(
            FlightLabel.CLIENT_FLIGHT, Direction.CLIENT_TO_SERVER,
            chain + sig.signature_bytes + shape.handshake_overhead,
            (CryptoOp(client, OpKind.SIGN, sig.sign_cycles),)
            + tuple(CryptoOp(server, OpKind.VERIFY, sig.verify_cycles)
                    for _ in range(chain_verifies)),
        ))
    else:
        flights.append(Flight(
            FlightLabel.CLIENT_FLIGHT, Direction.CLIENT_TO_SERVER,
            TTLS_INNER_AUTH_BYTES,
        ))
    flights.append(Flight(
        FlightLabel.SERVER_FINISH, Direction.SERVER_TO_CLIENT, EAP_SUCCESS_BYTES))
    return tuple(flights)


def resumption_flights(
    sig: SignatureSpec,
    kem: KemSpec,
    handshake_overhead: int = ChainShape().handshake_overhead,
    psk_extension_bytes: int = PSK_EXTENSION_BYTES,
) -> tuple[Flight, ...]:
    """Flight sequence for a PSK resumption with a fresh key share.

    No certificates travel and nobody signs or verifies; the signature
    scheme only sized the cached session this handshake resumes. Forward
    secrecy still costs one KEM exchange.
    """
    del sig  # cache sizing is reported separately; see session_cache_entry_bytes
    client, server = Entity.CLIENT, Entity.SERVER
    return (
        Flight(FlightLabel.IDENTITY_REQUEST, Direction.SERVER_TO_CLIENT, 0),
        Flight(FlightLabel.IDENTITY_RESPONSE, Direction.CLIENT_TO_SERVER, 0),
        Flight(
            FlightLabel.CLIENT_HELLO, Direction.CLIENT_TO_SERVER,
            kem.public_key_bytes + psk_extension_bytes,
            (CryptoOp(client, OpKind.KEYGEN, kem.keygen_cycles),),
        ),
        Flight(
            FlightLabel.SERVER_FLIGHT, Direction.SERVER_TO_CLIENT,
            kem.ciphertext_bytes + handshake_overhead,
            (
                CryptoOp(server, OpKind.ENCAPS, kem.encaps_cycles),
                CryptoOp(client, OpKind.DECAPS, kem.decaps_cycles),
            ),
        ),
        Flight(FlightLabel.SERVER_FINISH, Direction.SERVER_TO_CLIENT, EAP_SUCCESS_BYTES),
    )


def fragment_flight(flight: Flight, fragment_size: int = DEFAULT_FRAGMENT_SIZE) -> tuple[Fragment, ...]:
    """Slice a flight into EAP fragments of at most fragment_size bytes.

    An empty flight still occupies one EAP packet.
    """
    if fragment_size < 1:
        raise ValueError("fragment_size must be at least 1 byte")
    payload = flight.payload_bytes
    if payload == 0:
        return (Fragment(flight.label, 0, 0),)
    count = ceil(payload / fragment_size)
    sizes = [fragment_size] * (count - 1)
    sizes.append(payload - fragment_size * (count - 1))
    return tuple(Fragment(flight.label, i, s) for i, s in enumerate(sizes))


def count_eap_messages(flights: tuple[Flight, ...], fragment_size: int = DEFAULT_FRAGMENT_SIZE) -> int:
    """Logical EAP messages for a handshake: two per fragment.

    Each fragment goes out as an EAP request and is confirmed by an EAP
    response, because RADIUS gives no delivery guarantee of its own.
    """
    return 2 * sum(len(fragment_flight(f, fragment_size)) for f in flights)


def flight_table_csv(flights: tuple[Flight, ...], fragment_size: int = DEFAULT_FRAGMENT_SIZE) -> str:
    """Flight list as CSV: label, direction, payload bytes, fragments."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "direction", "payload_bytes", "fragments"])
    for flight in flights:
        writer.writerow([flight.label.value, flight.direction.value,
                         flight.payload_bytes,
                         len(fragment_flight(flight, fragment_size))])
    return buf.getvalue()
