"""Scenario files: TOML documents describing one or more simulations.

Parsing is strict. Unknown keys anywhere are rejected by name (with the
line when it can be found) instead of being silently ignored, because a
misspelled calibration knob that falls back to its default produces
plausible-looking nonsense. Plural keys (signatures, bands, situations,
kems, methods) expand into the cartesian product of their values, so a
single entry can describe a whole comparison matrix.

Precedence for every scenario field: the [[scenario]] entry, then
[defaults], then the file's top level (seed and repetitions only), then
the package defaults listed by defaults_reference().
"""

from __future__ import annotations

import inspect
import re
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import handshake
from .channel import (
    Band,
    BandProfile,
    SignalSituation,
    Situation,
    band_profile,
    situation_profile,
)
from .engine import DEFAULT_SEED, Scenario, build_flights_for
from .errors import ParseError
from .handshake import ChainShape, EapMethod
from .registry import Registry
from .channel import WiredLink

_DEFAULT_REPETITIONS = 100

# One row per scenario key: (toml type, default shown in the reference,
# what it means). This table is the single source for validation and for
# the generated reference text.
_SCENARIO_KEYS: dict[str, tuple[type | tuple[type, ...], str, str]] = {
    "label": (str, "derived", "row identifier shown in reports (single scenario only)"),
    "signature": (str, "required", "signature scheme, e.g. ML-DSA-65 or ECDSA-p256+ML-DSA-44"),
    "kem": (str, "auto", "KEM, hybrid group, classical+pq, or auto to match the signature"),
    "method": (str, "eap-tls", "eap-tls or eap-ttls"),
    "band": (str, "2.4GHz", "2.4GHz or 5GHz"),
    "situation": (str, "excellent", "excellent, good or very-weak"),
    "resumption": (bool, "false", "simulate PSK session resumption instead of a full handshake"),
    "fragment_size": (int, str(handshake.DEFAULT_FRAGMENT_SIZE), "TLS payload bytes per EAP packet"),
    "chain_length": (int, "1", "certificates in each peer's chain"),
    "cert_encoding_overhead": (int, "600", "encoding bytes added per certificate"),
    "handshake_overhead": (int, "170", "fixed hello and Finished bytes per sized flight"),
    "client_cpu_hz": ((int, float), "2.1e9", "client core speed in Hz"),
    "ap_cpu_hz": ((int, float), "2.0e9", "access point core speed in Hz"),
    "server_cpu_hz": ((int, float), "2.0e9", "authentication server core speed in Hz"),
    "wired_latency_us": ((int, float), "200", "one-way AP to server latency in microseconds"),
    "ap_frame_processing_us": ((int, float), "50", "AP forwarding cost per frame in microseconds"),
    "round_trip_limit": (int, str(handshake.DEFAULT_ROUND_TRIP_LIMIT), "EAP round trips before the server gives up"),
    "attempt_cap": (int, "10", "wireless transmissions per frame before aborting"),
    "repetitions": (int, str(_DEFAULT_REPETITIONS), "simulation runs for this scenario"),
    "seed": (int, str(DEFAULT_SEED), "base RNG seed for this scenario"),
}

_PLURAL_KEYS = {
    "signatures": "signature",
    "kems": "kem",
    "methods": "method",
    "bands": "band",
    "situations": "situation",
}

_BAND_PROFILE_KEYS = {
    "data_rate_bps": "minimum data rate in bits per second",
    "phy_mac_overhead_us": "fixed per-frame overhead in microseconds",
}

_SITUATION_PROFILE_KEYS = {
    "frame_loss_probability": "per-attempt Bernoulli loss",
    "retry_backoff_us": "first retry backoff in microseconds (doubles, capped)",
}

_BAND_NAMES = {
    "2.4ghz": Band.GHZ_2_4,
    "5ghz": Band.GHZ_5,
}

_TOP_LEVEL_KEYS = ("seed", "repetitions", "defaults", "registry", "bands",
                   "situations", "scenario")


def _registry_keys() -> dict[str, str]:
    params = inspect.signature(Registry.__init__).parameters
    return {name: "registry calibration constant"
            for name in params if name != "self"}


@dataclass(frozen=True)
class ScenarioFile:
    """A parsed scenario document: fully expanded and resolvable."""

    scenarios: tuple[Scenario, ...]
    registry: Registry
    seed: int
    repetitions: int


def _line_of(text: str, key: str) -> str:
    pattern = re.compile(rf'^\s*"?{re.escape(key)}"?\s*=')
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.match(line):
            return f" (line {number})"
    return ""


def _reject_unknown(table: dict, allowed, section: str, text: str) -> None:
    for key in table:
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} in {section}{_line_of(text, key)}")


def _typecheck(key: str, value, expected, section: str) -> None:
    if expected is float:
        expected = (int, float)
    if not isinstance(value, expected) or isinstance(value, bool) and expected is not bool:
        raise ParseError(f"{section}: key {key!r} has the wrong type "
                         f"({type(value).__name__})")


def _parse_band(raw: str, profiles: dict[Band, BandProfile], section: str) -> BandProfile:
    key = raw.replace(" ", "").lower()
    if key not in _BAND_NAMES:
        raise ParseError(f"{section}: unknown band {raw!r} (use 2.4GHz or 5GHz)")
    return profiles[_BAND_NAMES[key]]


def _parse_situation(raw: str, profiles: dict[Situation, SignalSituation], section: str) -> SignalSituation:
    key = raw.replace("_", "-").lower()
    try:
        return profiles[Situation(key)]
    except ValueError:
        raise ParseError(f"{section}: unknown situation {raw!r} "
                         f"(use excellent, good or very-weak)") from None


def _parse_method(raw: str, section: str) -> EapMethod:
    try:
        return EapMethod(raw.replace("_", "-").lower())
    except ValueError:
        raise ParseError(f"{section}: unknown method {raw!r} "
                         f"(use eap-tls or eap-ttls)") from None


def _scenario_values(entry: dict, section: str, text: str) -> dict:
    allowed = set(_SCENARIO_KEYS) | set(_PLURAL_KEYS)
    _reject_unknown(entry, allowed, section, text)
    for key, value in entry.items():
        if key in _PLURAL_KEYS:
            if not isinstance(value, list) or not value or \
                    not all(isinstance(v, str) for v in value):
                raise ParseError(f"{section}: key {key!r} must be a non-empty "
                                 f"list of strings")
            if _PLURAL_KEYS[key] in entry:
                raise ParseError(f"{section}: give {_PLURAL_KEYS[key]!r} or "
                                 f"{key!r}, not both")
        else:
            _typecheck(key, value, _SCENARIO_KEYS[key][0], section)
    return entry


def _expand(merged: dict, section: str) -> list[dict]:
    def options(singular: str, fallback) -> list:
        plural = next(p for p, s in _PLURAL_KEYS.items() if s == singular)
        if plural in merged:
            return list(merged[plural])
        if singular in merged:
            return [merged[singular]]
        return [fallback]

    if "signature" not in merged and "signatures" not in merged:
        raise ParseError(f"{section}: every scenario needs a signature")
    rows = []
    for signature in options("signature", None):
        for kem in options("kem", "auto"):
            for method in options("method", "eap-tls"):
                for band in options("band", "2.4GHz"):
                    for situation in options("situation", "excellent"):
                        row = {k: v for k, v in merged.items()
                               if k not in _PLURAL_KEYS and k not in
                               ("signature", "kem", "method", "band", "situation")}
                        row.update(signature=signature, kem=kem, method=method,
                                   band=band, situation=situation)
                        rows.append(row)
    if len(rows) > 1 and merged.get("label"):
        raise ParseError(f"{section}: label only applies to a single scenario, "
                         f"this entry expands to {len(rows)}")
    return rows


def _build_scenario(
    row: dict,
    section: str,
    band_profiles: dict[Band, BandProfile],
    situation_profiles: dict[Situation, SignalSituation],
    file_seed: int,
    file_repetitions: int,
) -> Scenario:
    shape = ChainShape(
        chain_length=row.get("chain_length", 1),
        cert_encoding_overhead=row.get("cert_encoding_overhead", 600),
        handshake_overhead=row.get("handshake_overhead", 170))
    try:
        return Scenario(
            signature=row["signature"],
            kem=row["kem"],
            method=_parse_method(row["method"], section),
            band=_parse_band(row["band"], band_profiles, section),
            situation=_parse_situation(row["situation"], situation_profiles, section),
            wired=WiredLink(one_way_latency_us=float(row.get("wired_latency_us", 200.0))),
            shape=shape,
            fragment_size=row.get("fragment_size", handshake.DEFAULT_FRAGMENT_SIZE),
            client_cpu_hz=float(row.get("client_cpu_hz", 2.1e9)),
            ap_cpu_hz=float(row.get("ap_cpu_hz", 2.0e9)),
            server_cpu_hz=float(row.get("server_cpu_hz", 2.0e9)),
            resumption=row.get("resumption", False),
            repetitions=row.get("repetitions", file_repetitions),
            seed=row.get("seed", file_seed),
            round_trip_limit=row.get("round_trip_limit", handshake.DEFAULT_ROUND_TRIP_LIMIT),
            ap_frame_processing_us=float(row.get("ap_frame_processing_us", 50.0)),
            attempt_cap=row.get("attempt_cap", 10),
            label=row.get("label"))
    except ValueError as exc:
        raise ParseError(f"{section}: {exc}") from exc


def parse_scenario_text(text: str) -> ScenarioFile:
    """Parse a scenario document from a string. See parse_scenario."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"not valid TOML: {exc}") from exc

    _reject_unknown(doc, _TOP_LEVEL_KEYS, "the top level", text)
    for key in ("seed", "repetitions"):
        if key in doc:
            _typecheck(key, doc[key], int, "the top level")
    file_seed = doc.get("seed", DEFAULT_SEED)
    file_repetitions = doc.get("repetitions", _DEFAULT_REPETITIONS)

    registry_overrides = doc.get("registry", {})
    if not isinstance(registry_overrides, dict):
        raise ParseError("[registry] must be a table")
    _reject_unknown(registry_overrides, _registry_keys(), "[registry]", text)
    for key, value in registry_overrides.items():
        _typecheck(key, value, int, "[registry]")
    registry = Registry(**registry_overrides)

    band_profiles = {band: band_profile(band) for band in Band}
    for name, table in doc.get("bands", {}).items():
        key = name.replace(" ", "").lower()
        if key not in _BAND_NAMES:
            raise ParseError(f"[bands]: unknown band {name!r}")
        if not isinstance(table, dict):
            raise ParseError(f"[bands.{name}] must be a table")
        _reject_unknown(table, _BAND_PROFILE_KEYS, f"[bands.{name}]", text)
        band = _BAND_NAMES[key]
        base = band_profiles[band]
        try:
            band_profiles[band] = BandProfile(
                band,
                float(table.get("data_rate_bps", base.data_rate_bps)),
                float(table.get("phy_mac_overhead_us", base.phy_mac_overhead_us)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"[bands.{name}]: {exc}") from exc

    situation_profiles = {s: situation_profile(s) for s in Situation}
    for name, table in doc.get("situations", {}).items():
        key = name.replace("_", "-").lower()
        try:
            situation = Situation(key)
        except ValueError:
            raise ParseError(f"[situations]: unknown situation {name!r}") from None
        if not isinstance(table, dict):
            raise ParseError(f"[situations.{name}] must be a table")
        _reject_unknown(table, _SITUATION_PROFILE_KEYS, f"[situations.{name}]", text)
        base = situation_profiles[situation]
        try:
            situation_profiles[situation] = SignalSituation(
                situation,
                float(table.get("frame_loss_probability", base.frame_loss_probability)),
                float(table.get("retry_backoff_us", base.retry_backoff_us)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"[situations.{name}]: {exc}") from exc

    defaults = doc.get("defaults", {})
    if not isinstance(defaults, dict):
        raise ParseError("[defaults] must be a table")
    _scenario_values(defaults, "[defaults]", text)
    if "label" in defaults:
        raise ParseError("[defaults]: label names a single row, it cannot be a default")

    entries = doc.get("scenario", [])
    if not isinstance(entries, list) or not entries:
        raise ParseError("a scenario file needs at least one [[scenario]] entry")

    scenarios: list[Scenario] = []
    for position, entry in enumerate(entries, start=1):
        section = f"[[scenario]] entry {position}"
        if not isinstance(entry, dict):
            raise ParseError(f"{section} must be a table")
        _scenario_values(entry, section, text)
        merged = {**defaults, **entry}
        # a plural key in the entry replaces the singular default and
        # vice versa, otherwise both forms would survive the merge
        for plural, singular in _PLURAL_KEYS.items():
            if plural in entry and singular not in entry:
                merged.pop(singular, None)
            if singular in entry and plural not in entry:
                merged.pop(plural, None)
        for row in _expand(merged, section):
            scenarios.append(_build_scenario(
                row, section, band_profiles, situation_profiles,
                file_seed, file_repetitions))

    for scenario in scenarios:
        build_flights_for(scenario, registry)  # resolve names, check pairing

    return ScenarioFile(tuple(scenarios), registry, file_seed, file_repetitions)


def parse_scenario(path: str) -> ScenarioFile:
    """Parse and fully validate the scenario file at path.

    Raises ParseError for malformed documents and unknown keys, and
    UnknownAlgorithm / IncompatibleConfig when a scenario references
    schemes the registry cannot resolve into a runnable handshake.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_scenario_text(text)


def defaults_reference() -> str:
    """Generated reference of every scenario-file key and its default."""
    lines = ["scenario file reference (TOML)", "",
             "top level:",
             f"  seed                      int    default {DEFAULT_SEED}",
             f"  repetitions               int    default {_DEFAULT_REPETITIONS}",
             "  [defaults]                table  defaults for every [[scenario]]",
             "  [registry]                table  registry calibration overrides",
             "  [bands.<name>]            table  band profile overrides",
             "  [situations.<name>]       table  signal situation overrides",
             "  [[scenario]]              array  one table per scenario", "",
             "scenario keys (also usable under [defaults]):"]
    for key, (kind, default, description) in _SCENARIO_KEYS.items():
        kind_name = "number" if isinstance(kind, tuple) else kind.__name__
        lines.append(f"  {key:<25} {kind_name:<6} default {default:<10} {description}")
    lines.append("")
    lines.append("plural scenario keys (lists, expand the matrix): "
                 + ", ".join(sorted(_PLURAL_KEYS)))
    lines.append("")
    lines.append("[registry] keys: " + ", ".join(_registry_keys()))
    lines.append("[bands.<name>] keys: " + ", ".join(_BAND_PROFILE_KEYS))
    lines.append("[situations.<name>] keys: " + ", ".join(_SITUATION_PROFILE_KEYS))
    return "\n".join(lines) + "\n"
