"""Registry of signature and KEM parameter sets used by the simulator.

Sizes are in bytes, costs in CPU cycles on a reference x86-64 core. The
post-quantum entries mirror the public benchmark tables for the NIST
final standards (ML-KEM, ML-DSA, SLH-DSA) and Falcon; the classical
entries (RSA-2048, ECDSA, ECDH) are calibration constants chosen to sit
in the right order of magnitude and are configurable per registry
instance. Registries are immutable once constructed and safe to share
between threads.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidHybrid, NoMatchingKem, UnknownAlgorithm

# A security level names the NIST category a parameter set targets.
# CLASSICAL marks pre-quantum schemes with no category at all.


class SecurityLevel(str, Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L5 = "L5"
    CLASSICAL = "classical"

    @property
    def rank(self) -> int:
        """Position on the L1 < L2 < L3 < L5 ladder; classical sits below L1."""
        return _LEVEL_RANK[self]


_LEVEL_RANK = {
    SecurityLevel.CLASSICAL: 0,
    SecurityLevel.L1: 1,
    SecurityLevel.L2: 2,
    SecurityLevel.L3: 3,
    SecurityLevel.L5: 5,
}


@dataclass(frozen=True)
class SignatureSpec:
    """Parameter set of one digital signature scheme."""

    name: str
    problem_type: str
    public_key_bytes: int
    secret_key_bytes: int
    signature_bytes: int
    sign_cycles: int
    verify_cycles: int
    level: SecurityLevel

    def __post_init__(self) -> None:
        for field in ("public_key_bytes", "secret_key_bytes", "signature_bytes",
                      "sign_cycles", "verify_cycles"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{self.name}: {field} must be positive")


@dataclass(frozen=True)
class KemSpec:
    """Parameter set of one key encapsulation mechanism."""

    name: str
    public_key_bytes: int
    secret_key_bytes: int
    ciphertext_bytes: int
    keygen_cycles: int
    encaps_cycles: int
    decaps_cycles: int
    level: SecurityLevel

    def __post_init__(self) -> None:
        for field in ("public_key_bytes", "secret_key_bytes", "ciphertext_bytes",
                      "keygen_cycles", "encaps_cycles", "decaps_cycles"):
            if getattr(self, field) <= 0:
                raise ValueError(f"{self.name}: {field} must be positive")


@dataclass(frozen=True)
class HybridSpec:
    """A classical scheme and a PQ scheme combined by concatenation.

    The combined spec carries field-wise sums of sizes and costs and the
    security level of the PQ component alone: the classical half adds no
    post-quantum security, it only hedges against breaks in the new math.
    """

    classical: SignatureSpec | KemSpec
    pq: SignatureSpec | KemSpec
    combined: SignatureSpec | KemSpec


def _canonical(name: str) -> str:
    """Case-, hyphen- and space-insensitive key for registry lookups."""
    out = name.lower()
    for ch in ("-", "_", " ", "."):
        out = out.replace(ch, "")
    return out


def make_hybrid_signature(classical: SignatureSpec, pq: SignatureSpec) -> SignatureSpec:
    """Concatenation combiner for signatures: sizes and costs add up.

    Exactly one classical component is allowed, and it must come first.
    """
    if classical.level is not SecurityLevel.CLASSICAL:
        raise InvalidHybrid(f"{classical.name} is not a classical scheme")
    if pq.level is SecurityLevel.CLASSICAL:
        raise InvalidHybrid(f"{pq.name} is not a post-quantum scheme")
    return SignatureSpec(
        name=f"{classical.name}+{pq.name}",
        problem_type=f"{classical.problem_type} + {pq.problem_type}",
        public_key_bytes=classical.public_key_bytes + pq.public_key_bytes,
        secret_key_bytes=classical.secret_key_bytes + pq.secret_key_bytes,
        signature_bytes=classical.signature_bytes + pq.signature_bytes,
        sign_cycles=classical.sign_cycles + pq.sign_cycles,
        verify_cycles=classical.verify_cycles + pq.verify_cycles,
        level=pq.level,
    )


def make_hybrid_kem(classical: KemSpec, pq: KemSpec) -> KemSpec:
    """Concatenation combiner for KEMs; both key shares travel on the wire."""
    if classical.level is not SecurityLevel.CLASSICAL:
        raise InvalidHybrid(f"{classical.name} is not a classical scheme")
    if pq.level is SecurityLevel.CLASSICAL:
        raise InvalidHybrid(f"{pq.name} is not a post-quantum scheme")
    return KemSpec(
        name=f"{classical.name}+{pq.name}",
        public_key_bytes=classical.public_key_bytes + pq.public_key_bytes,
        secret_key_bytes=classical.secret_key_bytes + pq.secret_key_bytes,
        ciphertext_bytes=classical.ciphertext_bytes + pq.ciphertext_bytes,
        keygen_cycles=classical.keygen_cycles + pq.keygen_cycles,
        encaps_cycles=classical.encaps_cycles + pq.encaps_cycles,
        decaps_cycles=classical.decaps_cycles + pq.decaps_cycles,
        level=pq.level,
    )


def hybrid_signature(classical: SignatureSpec, pq: SignatureSpec) -> HybridSpec:
    return HybridSpec(classical, pq, make_hybrid_signature(classical, pq))


def hybrid_kem(classical: KemSpec, pq: KemSpec) -> HybridSpec:
    return HybridSpec(classical, pq, make_hybrid_kem(classical, pq))


_KEM_FOR_LEVEL = {
    SecurityLevel.L1: "ML-KEM-512",
    SecurityLevel.L2: "ML-KEM-512",  # no level-2 ML-KEM exists; round down
    SecurityLevel.L3: "ML-KEM-768",
    SecurityLevel.L5: "ML-KEM-1024",
}

# Hybrid groups as deployed by TLS stacks: X25519 alongside ML-KEM at the
# low and middle levels, secp384r1 alongside ML-KEM-1024 at the top.
_HYBRID_KEM_FOR_LEVEL = {
    SecurityLevel.L1: "X25519MLKEM512",
    SecurityLevel.L2: "X25519MLKEM512",
    SecurityLevel.L3: "X25519MLKEM768",
    SecurityLevel.L5: "SecP384r1MLKEM1024",
}

_ECDSA_FOR_LEVEL = {
    SecurityLevel.L1: "ECDSA-p256",
    SecurityLevel.L2: "ECDSA-p256",
    SecurityLevel.L3: "ECDSA-p384",
    SecurityLevel.L5: "ECDSA-p521",
}


class Registry:
    """Immutable catalogue of signature schemes, KEMs and named hybrids.

    The exportable core tables hold the twelve signature schemes and four
    KEMs the simulator compares. Classical helper schemes (ECDSA curves,
    the secp384r1 ECDH) exist only as hybrid building blocks and for the
    classical baseline; they are resolvable by name but not exported.
    """

    def __init__(
        self,
        *,
        rsa_public_key_bytes: int = 270,
        rsa_secret_key_bytes: int = 270,
        x25519_share_bytes: int = 64,
        ecdh_cycles: int = 100_000,
        secp384r1_share_bytes: int = 97,
        secp384r1_cycles: int = 200_000,
        ecdsa_sign_cycles: int = 300_000,
        ecdsa_verify_cycles: int = 900_000,
    ):
        L = SecurityLevel
        self._signature_table: tuple[SignatureSpec, ...] = (
            SignatureSpec("RSA-2048", "integer factorization",
                          rsa_public_key_bytes, rsa_secret_key_bytes, 256,
                          27_000_000, 45_000, L.CLASSICAL),
            SignatureSpec("Falcon-512", "NTRU SIS", 897, 1_281, 666,
                          1_009_764, 81_036, L.L1),
            # upstream benchmark table prints the sign cost as "205 308 0";
            # read as 2 053 080, in line with the rest of the Falcon family
            SignatureSpec("Falcon-1024", "NTRU SIS", 1_793, 2_305, 1_280,
                          2_053_080, 160_596, L.L5),
            SignatureSpec("ML-DSA-44", "module LWE / SIS", 1_312, 2_560, 2_420,
                          333_013, 118_412, L.L2),
            SignatureSpec("ML-DSA-65", "module LWE / SIS", 1_952, 4_032, 3_309,
                          529_106, 179_424, L.L3),
            SignatureSpec("ML-DSA-87", "module LWE / SIS", 2_592, 4_896, 4_627,
                          642_192, 279_936, L.L5),
            SignatureSpec("SLH-DSA-SHA2-128f", "hash functions", 32, 64, 17_088,
                          33_651_546, 2_150_290, L.L1),
            SignatureSpec("SLH-DSA-SHA2-192f", "hash functions", 48, 96, 35_664,
                          55_320_742, 3_492_210, L.L3),
            SignatureSpec("SLH-DSA-SHA2-256f", "hash functions", 64, 128, 49_856,
                          109_104_452, 3_559_052, L.L5),
            SignatureSpec("SLH-DSA-SHA2-128s", "hash functions", 32, 64, 7_856,
                          644_740_090, 861_478, L.L1),
            SignatureSpec("SLH-DSA-SHA2-192s", "hash functions", 48, 96, 16_224,
                          1_246_378_060, 1_444_030, L.L3),
            SignatureSpec("SLH-DSA-SHA2-256s", "hash functions", 64, 128, 29_792,
                          1_025_721_040, 1_986_974, L.L5),
        )
        self._kem_table: tuple[KemSpec, ...] = (
            # the X25519 row models plain ECDHE: both directions carry a
            # 64-byte uncompressed share, so ciphertext equals public key
            KemSpec("X25519", x25519_share_bytes, 32, x25519_share_bytes,
                    ecdh_cycles, ecdh_cycles, ecdh_cycles, L.CLASSICAL),
            KemSpec("ML-KEM-512", 800, 1_632, 768,
                    122_684, 154_524, 187_960, L.L1),
            KemSpec("ML-KEM-768", 1_184, 2_400, 1_088,
                    199_408, 235_260, 274_900, L.L3),
            KemSpec("ML-KEM-1024", 1_568, 3_168, 1_568,
                    307_148, 346_648, 396_584, L.L5),
        )
        self._helper_signatures: tuple[SignatureSpec, ...] = (
            SignatureSpec("ECDSA-p256", "elliptic curve discrete logarithm",
                          65, 32, 72, ecdsa_sign_cycles, ecdsa_verify_cycles,
                          L.CLASSICAL),
            SignatureSpec("ECDSA-p384", "elliptic curve discrete logarithm",
                          97, 48, 104, 2 * ecdsa_sign_cycles, 2 * ecdsa_verify_cycles,
                          L.CLASSICAL),
            SignatureSpec("ECDSA-p521", "elliptic curve discrete logarithm",
                          133, 66, 139, 4 * ecdsa_sign_cycles, 4 * ecdsa_verify_cycles,
                          L.CLASSICAL),
        )
        self._helper_kems: tuple[KemSpec, ...] = (
            KemSpec("ECDH-secp384r1", secp384r1_share_bytes, 48, secp384r1_share_bytes,
                    secp384r1_cycles, secp384r1_cycles, secp384r1_cycles, L.CLASSICAL),
        )

        self._signatures: dict[str, SignatureSpec] = {}
        for spec in self._signature_table + self._helper_signatures:
            self._signatures[_canonical(spec.name)] = spec
        # the SHA2 infix is often dropped in prose and config files
        for spec in self._signature_table:
            if "SHA2-" in spec.name:
                self._signatures[_canonical(spec.name.replace("SHA2-", ""))] = spec

        self._kems: dict[str, KemSpec] = {}
        for spec in self._kem_table + self._helper_kems:
            self._kems[_canonical(spec.name)] = spec
        for alias in ("ECDH", "ECDH-X25519", "ECDHKE-with-X25519"):
            self._kems[_canonical(alias)] = self._kems["x25519"]
        self._kems[_canonical("secp384r1")] = self._kems["ecdhsecp384r1"]

        # named hybrid groups, resolvable like any other KEM
        for label, classical, pq in (
            ("X25519MLKEM512", "X25519", "ML-KEM-512"),
            ("X25519MLKEM768", "X25519", "ML-KEM-768"),
            ("SecP384r1MLKEM1024", "ECDH-secp384r1", "ML-KEM-1024"),
        ):
            combined = make_hybrid_kem(self._kems[_canonical(classical)],
                                       self._kems[_canonical(pq)])
            self._kems[_canonical(label)] = KemSpec(
                label, combined.public_key_bytes, combined.secret_key_bytes,
                combined.ciphertext_bytes, combined.keygen_cycles,
                combined.encaps_cycles, combined.decaps_cycles, combined.level)

    # -- lookups ---------------------------------------------------------

    def lookup_signature(self, name: str) -> SignatureSpec:
        """Resolve a signature identifier; "classical+pq" builds a hybrid."""
        key = _canonical(name)
        if "+" in key:
            left, right = self._split_hybrid(name)
            a = self.lookup_signature(left)
            b = self.lookup_signature(right)
            if b.level is SecurityLevel.CLASSICAL and a.level is not SecurityLevel.CLASSICAL:
                a, b = b, a
            return make_hybrid_signature(a, b)
        try:
            return self._signatures[key]
        except KeyError:
            raise UnknownAlgorithm(f"unknown signature scheme: {name!r}") from None

    def lookup_kem(self, name: str) -> KemSpec:
        """Resolve a KEM identifier; "classical+pq" builds a hybrid."""
        key = _canonical(name)
        if "+" in key:
            left, right = self._split_hybrid(name)
            a = self.lookup_kem(left)
            b = self.lookup_kem(right)
            if b.level is SecurityLevel.CLASSICAL and a.level is not SecurityLevel.CLASSICAL:
                a, b = b, a
            return make_hybrid_kem(a, b)
        try:
            return self._kems[key]
        except KeyError:
            raise UnknownAlgorithm(f"unknown KEM: {name!r}") from None

    @staticmethod
    def _split_hybrid(name: str) -> tuple[str, str]:
        parts = [p for p in name.split("+") if p.strip()]
        if len(parts) != 2:
            raise InvalidHybrid(f"hybrid names take exactly two components: {name!r}")
        return parts[0], parts[1]

    def kem_for_level(self, level: SecurityLevel) -> KemSpec:
        """Smallest registered ML-KEM meeting the given level."""
        try:
            return self.lookup_kem(_KEM_FOR_LEVEL[level])
        except KeyError:
            raise NoMatchingKem(f"no KEM registered for level {level.value}") from None

    def hybrid_kem_for_level(self, level: SecurityLevel) -> KemSpec:
        """Named hybrid group conventionally paired with the given level."""
        try:
            return self.lookup_kem(_HYBRID_KEM_FOR_LEVEL[level])
        except KeyError:
            raise NoMatchingKem(f"no hybrid group registered for level {level.value}") from None

    def ecdsa_for_level(self, level: SecurityLevel) -> SignatureSpec:
        """ECDSA curve conventionally hybridised with PQ schemes of that level."""
        try:
            return self.lookup_signature(_ECDSA_FOR_LEVEL[level])
        except KeyError:
            raise UnknownAlgorithm(f"no ECDSA curve registered for level {level.value}") from None

    def is_hybrid_name(self, name: str) -> bool:
        return "+" in _canonical(name)

    # -- enumeration and export ------------------------------------------

    @property
    def signature_table(self) -> tuple[SignatureSpec, ...]:
        """The twelve signature schemes of the core comparison set."""
        return self._signature_table

    @property
    def kem_table(self) -> tuple[KemSpec, ...]:
        """The four key exchange schemes of the core comparison set."""
        return self._kem_table

    def signature_table_csv(self) -> str:
        """Core signature table as CSV, one row per scheme."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "problem_type", "public_key_bytes", "secret_key_bytes",
                         "signature_bytes", "sign_cycles", "verify_cycles", "level"])
        for s in self._signature_table:
            writer.writerow([s.name, s.problem_type, s.public_key_bytes,
                             s.secret_key_bytes, s.signature_bytes,
                             s.sign_cycles, s.verify_cycles, s.level.value])
        return buf.getvalue()

    def kem_table_csv(self) -> str:
        """Core KEM table as CSV, one row per scheme."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "public_key_bytes", "secret_key_bytes",
                         "ciphertext_bytes", "keygen_cycles", "encaps_cycles",
                         "decaps_cycles", "level"])
        for k in self._kem_table:
            writer.writerow([k.name, k.public_key_bytes, k.secret_key_bytes,
                             k.ciphertext_bytes, k.keygen_cycles, k.encaps_cycles,
                             k.decaps_cycles, k.level.value])
        return buf.getvalue()


DEFAULT_REGISTRY = Registry()
