"""Key-value configuration files.

The grammar is one directive per line::

    // comment
    -Associativity: 16
    -Vdd (V): 0.7
    -MemoryCellInputFile: cell_sram_7nm.cfg

Every known key has a fixed unit tag and value type (see KEY_SPECS); a
missing or mismatched unit is an error, as is an unknown key unless the
document sets ``-AllowUnknown: true``.  Duplicate keys are rejected with
both source locations.  Each entry remembers its file and line so errors
can point at the offending directive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path


class ConfigError(ValueError):
    """Raised for syntax, unit, type, or key errors in a config document."""


# value types: int, float, bool, str, fraction (e.g. "17/64" -> 0.265625)
KEY_SPECS: dict[str, tuple[str | None, str]] = {
    # document control
    "AllowUnknown": (None, "bool"),
    "MemoryCellInputFile": (None, "str"),
    "TagCellInputFile": (None, "str"),
    "TechInputFile": (None, "str"),
    # technology node
    "NodeName": (None, "str"),
    "NodeNm": ("nm", "int"),
    "DeviceClass": (None, "str"),
    "Vdd": ("V", "float"),
    "Temperature": ("C", "float"),
    "TemperatureRef": ("C", "float"),
    "ArrheniusEa": ("eV", "float"),
    "FinOrSheetPitch": ("nm", "float"),
    "GatePitch": ("nm", "float"),
    "StdCellHeightTracks": (None, "int"),
    "MinInverterWidthN": ("um", "float"),
    "MinInverterWidthP": ("um", "float"),
    "InverterGamma": (None, "float"),
    "EconomicalFanout": (None, "float"),
    "SenseVoltage": ("V", "float"),
    "SenseAmpAreaVoltage": ("um^2", "float"),
    "SenseAmpAreaCurrent": ("um^2", "float"),
    "SenseAmpLatencyVoltage": ("s", "float"),
    "SenseAmpLatencyCurrent": ("s", "float"),
    "SenseAmpEnergyVoltage": ("J", "float"),
    "SenseAmpEnergyCurrent": ("J", "float"),
    "SenseAmpLeakageVoltage": ("W", "float"),
    "SenseAmpLeakageCurrent": ("W", "float"),
    # wire layers (Local / Intermediate / Global)
    "WireResistancePerUm_Local": ("ohm/um", "float"),
    "WireCapacitancePerUm_Local": ("fF/um", "float"),
    "WirePitch_Local": ("nm", "float"),
    "WireResistancePerUm_Intermediate": ("ohm/um", "float"),
    "WireCapacitancePerUm_Intermediate": ("fF/um", "float"),
    "WirePitch_Intermediate": ("nm", "float"),
    "WireResistancePerUm_Global": ("ohm/um", "float"),
    "WireCapacitancePerUm_Global": ("fF/um", "float"),
    "WirePitch_Global": ("nm", "float"),
    # inter-tier vias
    "MIVResistancePerVia": ("ohm", "float"),
    "MIVCapacitancePerUmHeight": ("fF/um", "float"),
    "MIVDiameter": ("nm", "float"),
    "MIVPitch": ("nm", "float"),
    "TierHeight": ("um", "float"),
    # memory cell
    "CellName": (None, "str"),
    "CellKind": (None, "str"),
    "CellArea": ("um^2", "float"),
    "CellAspectRatio": (None, "float"),
    "CellIsBEOL": (None, "bool"),
    "TiersPerCell": (None, "int"),
    "NeedsRefresh": (None, "bool"),
    "DestructiveRead": (None, "bool"),
    "VBoost": ("V", "float"),
    "VHold": ("V", "float"),
    "VStored": ("V", "float"),
    "SenseMarginFraction": (None, "float"),
    "SNCapacitance": ("fF", "float"),
    "Retention": ("s", "float"),
    "RetentionDerate": (None, "float"),
    "WritePulseWidth": ("ns", "float"),
    "ResistanceOn": ("ohm", "float"),
    "ResistanceOff": ("ohm", "float"),
    "WriteDeviceWidth": ("um", "float"),
    "ReadDeviceWidth": ("um", "float"),
    "WriteDeviceRole": (None, "str"),
    "ReadDeviceRole": (None, "str"),
    "CellStandbyLeakage": ("W", "float"),
    "ReadCurrent": ("A", "float"),
    "CellWriteTime": ("s", "float"),
    # bank organization
    "Capacity": ("MB", "float"),
    "LineSize": ("B", "int"),
    "Associativity": (None, "int"),
    "WordWidth": (None, "int"),
    "AccessMode": (None, "str"),
    "BankKind": (None, "str"),
    "SubarrayRows": (None, "int"),
    "SubarrayCols": (None, "int"),
    "ActiveSubarrayRows": (None, "int"),
    "ActiveSubarrayCols": (None, "int"),
    "MatsPerSubarrayRows": (None, "int"),
    "MatsPerSubarrayCols": (None, "int"),
    "ActiveMatsRows": (None, "int"),
    "ActiveMatsCols": (None, "int"),
    "MatRows": (None, "int"),
    "MatCols": (None, "int"),
    "BLMux": (None, "int"),
    "SAMux": (None, "int"),
    "WLSegmentation": (None, "int"),
    "ReferenceRows": (None, "int"),
    "ECCRatio": (None, "fraction"),
    "Folds": (None, "int"),
    "TagBits": (None, "int"),
    "TAUVariant": (None, "str"),
    "TAUCentralFraction": (None, "float"),
    "SenseLeakageBudget": (None, "float"),
    "SliceCount": (None, "int"),
    "SliceHopLatency": ("s", "float"),
    # optimizer
    "OptimizationTarget": (None, "str"),
    "MaxAreaConstraint": ("mm^2", "float"),
    "MaxLatencyConstraint": ("s", "float"),
    "MaxTiers": (None, "int"),
    "MinMatRows": (None, "int"),
    "MaxMatRows": (None, "int"),
    "MinMatCols": (None, "int"),
    "MaxMatCols": (None, "int"),
    "TopK": (None, "int"),
    # simulator
    "ClockFrequency": ("GHz", "float"),
    "HitCycles": (None, "int"),
    "MissDetectCycles": (None, "int"),
    "WriteCycles": (None, "int"),
    "TagAccessCycles": (None, "int"),
    "TagBroadcastCycles": (None, "int"),
    "RefreshRowCycles": (None, "int"),
    "SubarrayBusyCycles": (None, "int"),
    "OffChipFillCycles": (None, "int"),
    "RefreshEnabled": (None, "bool"),
    "RefreshBlockingScope": (None, "str"),
    "SimSubarrays": (None, "int"),
    "SimMatsPerSubarray": (None, "int"),
    "EnergyHit": ("J", "float"),
    "EnergyMiss": ("J", "float"),
    "EnergyWrite": ("J", "float"),
    "EnergyRefreshRow": ("J", "float"),
    "StaticPower": ("W", "float"),
    "MissOffchipMultiplier": (None, "float"),
}

_LINE_RE = re.compile(
    r"^-(?P<key>[A-Za-z0-9_]+)\s*(?:\((?P<unit>[^)]*)\))?\s*:\s*(?P<value>.*)$"
)


@dataclass(frozen=True)
class ConfigEntry:
    key: str
    unit: str | None
    value: object
    raw: str
    source: str = "<string>"
    line: int = 0

    def same_directive(self, other: "ConfigEntry") -> bool:
        return (
            self.key == other.key
            and self.unit == other.unit
            and self.value == other.value
        )


@dataclass
class ConfigDocument:
    """Ordered key/value document with per-entry provenance."""

    entries: list[ConfigEntry] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __contains__(self, key: str) -> bool:
        return any(e.key == key for e in self.entries)

    def get(self, key: str, default=None):
        for e in self.entries:
            if e.key == key:
                return e.value
        return default

    def require(self, key: str):
        for e in self.entries:
            if e.key == key:
                return e.value
        raise ConfigError(f"missing required key -{key}")

    def entry(self, key: str) -> ConfigEntry | None:
        for e in self.entries:
            if e.key == key:
                return e
        return None

    def emit(self) -> str:
        """Render back to config text; re-parsing yields an equal document."""
        lines = []
        for e in self.entries:
            unit = f" ({e.unit})" if e.unit else ""
            lines.append(f"-{e.key}{unit}: {e.raw}")
        return "\n".join(lines) + ("\n" if lines else "")

    def same_directives(self, other: "ConfigDocument") -> bool:
        return len(self.entries) == len(other.entries) and all(
            a.same_directive(b) for a, b in zip(self.entries, other.entries)
        )


def _coerce(raw: str, kind: str, where: str):
    raw = raw.strip()
    try:
        if kind == "int":
            return int(raw, 0)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            low = raw.lower()
            if low in ("true", "yes", "1"):
                return True
            if low in ("false", "no", "0"):
                return False
            raise ValueError(raw)
        if kind == "fraction":
            if "/" in raw:
                num, den = raw.split("/", 1)
                return float(num) / float(den)
            return float(raw)
        return raw
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: cannot parse {raw!r} as {kind}") from None


def parse_config(text: str, source: str = "<string>") -> ConfigDocument:
    """Parse config text into a ConfigDocument.

    Raises ConfigError with the offending line number for syntax errors,
    unit mismatches, bad values, duplicates, and unknown keys.
    """
    doc = ConfigDocument()
    seen: dict[str, ConfigEntry] = {}
    allow_unknown = False
    # AllowUnknown may appear anywhere; scan for it first.
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("//", 1)[0].strip()
        if stripped.startswith("-AllowUnknown"):
            m = _LINE_RE.match(stripped)
            if m and m.group("key") == "AllowUnknown":
                allow_unknown = bool(_coerce(m.group("value"), "bool",
                                             f"{source}:{lineno}"))
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("//", 1)[0].strip()
        if not stripped:
            continue
        where = f"{source}:{lineno}"
        m = _LINE_RE.match(stripped)
        if m is None:
            raise ConfigError(f"{where}: malformed directive {stripped!r}")
        key, unit, raw = m.group("key"), m.group("unit"), m.group("value").strip()
        if key not in KEY_SPECS:
            if allow_unknown:
                doc.warnings.append(f"{where}: unknown key -{key} ignored")
                continue
            raise ConfigError(f"{where}: unknown key -{key}")
        want_unit, kind = KEY_SPECS[key]
        if unit != want_unit and not (unit is None and want_unit is None):
            raise ConfigError(
                f"{where}: key -{key} expects unit "
                f"{'(' + want_unit + ')' if want_unit else 'none'}, got "
                f"{'(' + unit + ')' if unit else 'none'}"
            )
        if key in seen:
            first = seen[key]
            raise ConfigError(
                f"{where}: duplicate key -{key} (first at "
                f"{first.source}:{first.line})"
            )
        value = _coerce(raw, kind, where)
        entry = ConfigEntry(key=key, unit=unit, value=value, raw=raw,
                            source=source, line=lineno)
        seen[key] = entry
        doc.entries.append(entry)
    return doc


def parse_config_file(path: str | Path) -> ConfigDocument:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), source=str(path))
