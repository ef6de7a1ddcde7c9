"""Registry lookups, hybrid combination, and parameter table integrity."""

import dataclasses

import pytest

from pqeap.errors import InvalidHybrid, NoMatchingKem, UnknownAlgorithm
from pqeap.registry import (
    DEFAULT_REGISTRY,
    KemSpec,
    Registry,
    SecurityLevel,
    SignatureSpec,
    make_hybrid_kem,
    make_hybrid_signature,
)

REG = DEFAULT_REGISTRY


def test_core_tables_have_expected_sizes():
    assert len(REG.signature_table) == 12
    assert len(REG.kem_table) == 4


@pytest.mark.parametrize("name", [
    "ML-DSA-44", "ml-dsa-44", "ML_DSA_44", "mldsa44", "ML dsa 44",
])
def test_signature_lookup_ignores_case_and_separators(name):
    assert REG.lookup_signature(name).name == "ML-DSA-44"


def test_slh_lookup_accepts_dropped_hash_infix():
    with_infix = REG.lookup_signature("SLH-DSA-SHA2-128f")
    assert REG.lookup_signature("SLH-DSA-128f") is with_infix
    assert REG.lookup_signature("slh-dsa-192s") is REG.lookup_signature("SLH-DSA-SHA2-192s")


@pytest.mark.parametrize("name,canonical", [
    ("ml-kem-768", "ML-KEM-768"),
    ("MLKEM512", "ML-KEM-512"),
    ("x25519", "X25519"),
    ("ECDH", "X25519"),
    ("ECDHKE-with-X25519", "X25519"),
    ("secp384r1", "ECDH-secp384r1"),
])
def test_kem_lookup_aliases(name, canonical):
    assert REG.lookup_kem(name).name == canonical


def test_unknown_names_raise_with_the_offending_name():
    with pytest.raises(UnknownAlgorithm, match="ML-DSA-99"):
        REG.lookup_signature("ML-DSA-99")
    with pytest.raises(UnknownAlgorithm, match="frodo"):
        REG.lookup_kem("frodo")


def test_specs_are_immutable():
    spec = REG.lookup_signature("Falcon-512")
    with pytest.raises(dataclasses.FrozenInstanceError):
        spec.signature_bytes = 0


def test_spec_validation_rejects_nonpositive_fields():
    with pytest.raises(ValueError):
        SignatureSpec("bad", "x", 0, 1, 1, 1, 1, SecurityLevel.L1)
    with pytest.raises(ValueError):
        KemSpec("bad", 1, 1, 1, 0, 1, 1, SecurityLevel.L1)


def test_level_rank_ladder():
    ranks = [SecurityLevel.CLASSICAL.rank, SecurityLevel.L1.rank,
             SecurityLevel.L2.rank, SecurityLevel.L3.rank, SecurityLevel.L5.rank]
    assert ranks == sorted(ranks)
    assert len(set(ranks)) == len(ranks)


def test_fast_variants_trade_size_for_signing_speed():
    # within each SLH-DSA level the f variant signs faster but is larger
    for level in ("128", "192", "256"):
        fast = REG.lookup_signature(f"SLH-DSA-SHA2-{level}f")
        small = REG.lookup_signature(f"SLH-DSA-SHA2-{level}s")
        assert fast.sign_cycles < small.sign_cycles
        assert fast.signature_bytes > small.signature_bytes
        assert fast.level is small.level


def test_ml_kem_grows_with_level():
    kems = [REG.lookup_kem(n) for n in ("ML-KEM-512", "ML-KEM-768", "ML-KEM-1024")]
    for small, large in zip(kems, kems[1:]):
        assert small.level.rank < large.level.rank
        assert small.public_key_bytes < large.public_key_bytes
        assert small.ciphertext_bytes < large.ciphertext_bytes


# -- hybrids ---------------------------------------------------------------


def _classical_sigs():
    return [REG.lookup_signature(n) for n in ("ECDSA-p256", "ECDSA-p384", "ECDSA-p521")]


def _pq_sigs():
    return [s for s in REG.signature_table if s.level is not SecurityLevel.CLASSICAL]


def test_hybrid_signature_is_fieldwise_sum_for_every_pair():
    for classical in _classical_sigs():
        for pq in _pq_sigs():
            combined = make_hybrid_signature(classical, pq)
            assert combined.public_key_bytes == classical.public_key_bytes + pq.public_key_bytes
            assert combined.secret_key_bytes == classical.secret_key_bytes + pq.secret_key_bytes
            assert combined.signature_bytes == classical.signature_bytes + pq.signature_bytes
            assert combined.sign_cycles == classical.sign_cycles + pq.sign_cycles
            assert combined.verify_cycles == classical.verify_cycles + pq.verify_cycles
            assert combined.level is pq.level
            assert combined.name == f"{classical.name}+{pq.name}"


def test_hybrid_kem_is_fieldwise_sum():
    x = REG.lookup_kem("X25519")
    for pq_name in ("ML-KEM-512", "ML-KEM-768", "ML-KEM-1024"):
        pq = REG.lookup_kem(pq_name)
        combined = make_hybrid_kem(x, pq)
        assert combined.public_key_bytes == x.public_key_bytes + pq.public_key_bytes
        assert combined.ciphertext_bytes == x.ciphertext_bytes + pq.ciphertext_bytes
        assert combined.keygen_cycles == x.keygen_cycles + pq.keygen_cycles
        assert combined.encaps_cycles == x.encaps_cycles + pq.encaps_cycles
        assert combined.decaps_cycles == x.decaps_cycles + pq.decaps_cycles
        assert combined.level is pq.level


def test_hybrid_rejects_wrong_component_classes():
    rsa = REG.lookup_signature("RSA-2048")
    ecdsa = REG.lookup_signature("ECDSA-p256")
    mldsa = REG.lookup_signature("ML-DSA-44")
    falcon = REG.lookup_signature("Falcon-512")
    with pytest.raises(InvalidHybrid):
        make_hybrid_signature(mldsa, falcon)  # two PQ components
    with pytest.raises(InvalidHybrid):
        make_hybrid_signature(rsa, ecdsa)  # two classical components
    with pytest.raises(InvalidHybrid):
        make_hybrid_signature(mldsa, ecdsa)  # PQ in the classical slot


def test_hybrid_name_lookup_and_reordering():
    forward = REG.lookup_kem("X25519+ML-KEM-768")
    swapped = REG.lookup_kem("ML-KEM-768+X25519")
    assert forward == swapped
    named = REG.lookup_kem("X25519MLKEM768")
    assert named.public_key_bytes == forward.public_key_bytes
    assert named.ciphertext_bytes == forward.ciphertext_bytes
    sig = REG.lookup_signature("ECDSA-p256+ML-DSA-44")
    assert sig.name == "ECDSA-p256+ML-DSA-44"


def test_hybrid_name_needs_exactly_two_components():
    with pytest.raises(InvalidHybrid):
        REG.lookup_kem("X25519+ML-KEM-512+ML-KEM-768")
    with pytest.raises(InvalidHybrid):
        REG.lookup_kem("X25519+")


def test_named_hybrid_groups_match_their_components():
    cases = [
        ("X25519MLKEM512", "X25519", "ML-KEM-512"),
        ("X25519MLKEM768", "X25519", "ML-KEM-768"),
        ("SecP384r1MLKEM1024", "secp384r1", "ML-KEM-1024"),
    ]
    for label, classical, pq in cases:
        named = REG.lookup_kem(label)
        built = make_hybrid_kem(REG.lookup_kem(classical), REG.lookup_kem(pq))
        assert named.public_key_bytes == built.public_key_bytes
        assert named.ciphertext_bytes == built.ciphertext_bytes
        assert named.keygen_cycles == built.keygen_cycles
        assert named.level is built.level


# -- level driven selection -------------------------------------------------


@pytest.mark.parametrize("level,kem", [
    (SecurityLevel.L1, "ML-KEM-512"),
    (SecurityLevel.L2, "ML-KEM-512"),
    (SecurityLevel.L3, "ML-KEM-768"),
    (SecurityLevel.L5, "ML-KEM-1024"),
])
def test_kem_for_level(level, kem):
    assert REG.kem_for_level(level).name == kem


def test_kem_for_level_rejects_classical():
    with pytest.raises(NoMatchingKem):
        REG.kem_for_level(SecurityLevel.CLASSICAL)


@pytest.mark.parametrize("level,group", [
    (SecurityLevel.L1, "X25519MLKEM512"),
    (SecurityLevel.L2, "X25519MLKEM512"),
    (SecurityLevel.L3, "X25519MLKEM768"),
    (SecurityLevel.L5, "SecP384r1MLKEM1024"),
])
def test_hybrid_kem_for_level(level, group):
    assert REG.hybrid_kem_for_level(level).name == group


# -- calibration overrides ---------------------------------------------------


def test_registry_overrides_reach_the_classical_rows():
    reg = Registry(rsa_public_key_bytes=384, ecdh_cycles=50_000)
    assert reg.lookup_signature("RSA-2048").public_key_bytes == 384
    assert reg.lookup_kem("X25519").keygen_cycles == 50_000
    # PQ rows are benchmark data, not calibration, so they never move
    assert reg.lookup_signature("ML-DSA-44") == REG.lookup_signature("ML-DSA-44")


def test_csv_export_round_trips_through_the_table():
    text = REG.signature_table_csv()
    lines = text.strip().split("\n")
    assert lines[0].startswith("name,problem_type,")
    assert len(lines) == 1 + len(REG.signature_table)
    assert lines[1].split(",")[0] == "RSA-2048"
    kem_lines = REG.kem_table_csv().strip().split("\n")
    assert len(kem_lines) == 1 + len(REG.kem_table)
