"""Technology-node parameters and interconnect RC.

Ships editable defaults for a 7 nm FinFET node and a 3 nm nanosheet node
(``load_tech("7nm")`` / ``load_tech("3nm")``); any other node is loaded
from a user-supplied parameter file in the same grammar.  The default data
files also carry the BEOL oxide-semiconductor access devices used by gain
cells, the inter-tier via geometry, and the standard-cell constants that
the circuit models consume.

All temperature-dependent values are stored at the file's reference
temperature; loading at a different ``-Temperature`` rescales leakage with
an Arrhenius factor and subthreshold slope linearly in absolute T.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, replace
from pathlib import Path

from .config import ConfigDocument, ConfigError, parse_config_file

_K_BOLTZMANN_EV = 8.617333262e-5  # eV/K


class TechError(ValueError):
    """Raised for unknown nodes or non-physical technology parameters."""


class DeviceClass(enum.Enum):
    FINFET = "FinFET"
    NANOSHEET = "Nanosheet"
    BEOL_AOS_DG = "BEOL_AOS_DG"
    BEOL_AOS_CAA = "BEOL_AOS_CAA"


@dataclass(frozen=True)
class DeviceParams:
    """Per-role transistor parameters, all normalized to device width.

    i_floor_per_um is the bias-independent leakage floor (junction/GIDL
    scale); the subthreshold term rides on top of it.  v_on_ref is the
    gate-source voltage at which i_on_per_um is rated.
    """

    i_on_per_um: float          # A/um at v_on_ref
    i_off_per_um: float         # A/um at v_gs = 0
    ss_mv_per_dec: float        # mV/decade
    vth: float                  # V
    c_gate_per_um: float        # F/um
    c_parasitic_gs_per_um: float  # F/um
    c_parasitic_gd_per_um: float  # F/um
    r_on_per_um: float          # ohm*um
    i_floor_per_um: float = 0.0  # A/um
    v_on_ref: float = 0.7       # V
    alpha: float = 1.3          # saturation power-law exponent

    def validate(self, temperature_c: float = 25.0) -> None:
        if not (self.i_on_per_um > self.i_off_per_um > 0):
            raise TechError("device requires i_on > i_off > 0")
        ss_floor = 59.6 * (temperature_c + 273.15) / 298.15
        if self.ss_mv_per_dec < ss_floor - 1e-9:
            raise TechError(
                f"ss {self.ss_mv_per_dec} mV/dec below thermal floor "
                f"{ss_floor:.1f} mV/dec at {temperature_c} C"
            )
        for c in (self.c_gate_per_um, self.c_parasitic_gs_per_um,
                  self.c_parasitic_gd_per_um):
            if c < 0:
                raise TechError("capacitances must be >= 0")
        if self.i_floor_per_um < 0:
            raise TechError("i_floor must be >= 0")
        if self.r_on_per_um <= 0:
            raise TechError("r_on must be > 0")


@dataclass(frozen=True)
class WireLayer:
    name: str
    r_per_um: float   # ohm/um
    c_per_um: float   # F/um
    pitch_nm: float

    def validate(self) -> None:
        if self.r_per_um <= 0 or self.c_per_um <= 0 or self.pitch_nm <= 0:
            raise TechError(f"wire layer {self.name}: r, c, pitch must be > 0")


@dataclass(frozen=True)
class MIVParams:
    """Inter-tier via parasitics and geometry."""

    r_per_via: float          # ohm per tier crossed
    c_per_um_height: float    # F/um of via height
    diameter_nm: float
    pitch_nm: float
    tier_height_um: float

    def validate(self) -> None:
        if min(self.r_per_via, self.c_per_um_height, self.diameter_nm,
               self.pitch_nm, self.tier_height_um) <= 0:
            raise TechError("MIV parameters must be > 0")


@dataclass(frozen=True)
class TechNode:
    """Immutable technology node; safe to share across evaluations."""

    node_nm: int
    device_class: DeviceClass
    vdd: float
    devices: dict  # role -> DeviceParams for logic_n/logic_p/access_aos_write/access_aos_read
    fin_or_sheet_pitch_nm: float
    gate_pitch_nm: float
    metal_layers: tuple  # ordered (local, intermediate, global)
    std_cell_height_tracks: int
    temperature_c: float = 85.0
    miv: MIVParams | None = None
    inv_gamma: float = 1.0
    min_inv_width_n_um: float = 0.105
    min_inv_width_p_um: float = 0.105
    economical_fanout: float = 8.0
    sense_voltage: float = 0.08
    sa_constants: dict | None = None  # kind -> (area_um2, delay_s, energy_j, leak_w)

    def validate(self) -> None:
        if self.node_nm <= 0:
            raise TechError("node_nm must be > 0")
        if self.vdd <= 0:
            raise TechError("vdd must be > 0")
        if not self.metal_layers:
            raise TechError("at least one metal layer required")
        if self.fin_or_sheet_pitch_nm <= 0 or self.gate_pitch_nm <= 0:
            raise TechError("pitches must be > 0")
        for layer in self.metal_layers:
            layer.validate()
        for role, dev in self.devices.items():
            try:
                dev.validate(self.temperature_c)
            except TechError as exc:
                raise TechError(f"device {role}: {exc}") from None
        if self.miv is not None:
            self.miv.validate()

    # --- convenience views used throughout the circuit models ---

    def device(self, role: str) -> DeviceParams:
        return self.devices[role]

    def layer(self, name: str) -> WireLayer:
        for lyr in self.metal_layers:
            if lyr.name == name:
                return lyr
        raise TechError(f"no wire layer named {name!r}")

    @property
    def unit_input_cap(self) -> float:
        """Input capacitance of the minimum inverter (F)."""
        n, p = self.device("logic_n"), self.device("logic_p")
        return (n.c_gate_per_um * self.min_inv_width_n_um
                + p.c_gate_per_um * self.min_inv_width_p_um)

    @property
    def unit_drive_res(self) -> float:
        """Switching resistance of the minimum inverter (ohm)."""
        n, p = self.device("logic_n"), self.device("logic_p")
        return 0.5 * (n.r_on_per_um / self.min_inv_width_n_um
                      + p.r_on_per_um / self.min_inv_width_p_um)

    @property
    def unit_leak_w(self) -> float:
        """Standby leakage power of the minimum inverter (W)."""
        n, p = self.device("logic_n"), self.device("logic_p")
        return 0.5 * self.vdd * (n.i_off_per_um * self.min_inv_width_n_um
                                 + p.i_off_per_um * self.min_inv_width_p_um)

    @property
    def unit_area_um2(self) -> float:
        """Footprint of the minimum inverter from layout rules (um^2)."""
        height_um = self.std_cell_height_tracks * self.layer("local").pitch_nm / 1000.0
        return height_um * (self.gate_pitch_nm / 1000.0)


def wire_rc(layer: WireLayer, length_um: float) -> tuple[float, float]:
    """R and C of a wire segment; linear in length."""
    if length_um < 0:
        raise TechError("wire length must be >= 0")
    return layer.r_per_um * length_um, layer.c_per_um * length_um


def device_caps(d: DeviceParams, width_um: float) -> tuple[float, float, float]:
    """(c_gate, c_gs, c_gd) of a device of the given width."""
    if width_um <= 0:
        raise TechError("device width must be > 0")
    return (d.c_gate_per_um * width_um,
            d.c_parasitic_gs_per_um * width_um,
            d.c_parasitic_gd_per_um * width_um)


_BUILTIN_NODES = {"7nm": "tech_7nm.cfg", "3nm": "tech_3nm.cfg"}


def data_dir() -> Path:
    """Default data directory, overridable via NSCACHE_DATA_DIR."""
    override = os.environ.get("NSCACHE_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def _device_from_doc(doc: ConfigDocument, prefix: str, vdd: float) -> DeviceParams:
    def req(suffix):
        value = doc.get(f"{prefix}_{suffix}")
        if value is None:
            raise ConfigError(f"missing required key -{prefix}_{suffix}")
        return value

    return DeviceParams(
        i_on_per_um=req("OnCurrentPerUm"),
        i_off_per_um=req("OffCurrentPerUm"),
        ss_mv_per_dec=req("SS"),
        vth=req("Vth"),
        c_gate_per_um=req("GateCapPerUm") * 1e-15,
        c_parasitic_gs_per_um=req("ParasiticGsCapPerUm") * 1e-15,
        c_parasitic_gd_per_um=req("ParasiticGdCapPerUm") * 1e-15,
        r_on_per_um=req("OnResistancePerUm"),
        i_floor_per_um=doc.get(f"{prefix}_FloorCurrentPerUm", 0.0),
        v_on_ref=doc.get(f"{prefix}_OnRefVoltage", vdd),
        alpha=doc.get(f"{prefix}_Alpha", 1.3),
    )


# device-role keys are generated from the role prefixes; register them
from .config import KEY_SPECS as _KEYS  # noqa: E402

for _prefix in ("LogicN", "LogicP", "AOSWrite", "AOSRead"):
    _KEYS[f"{_prefix}_OnCurrentPerUm"] = ("A/um", "float")
    _KEYS[f"{_prefix}_OffCurrentPerUm"] = ("A/um", "float")
    _KEYS[f"{_prefix}_FloorCurrentPerUm"] = ("A/um", "float")
    _KEYS[f"{_prefix}_SS"] = ("mV/dec", "float")
    _KEYS[f"{_prefix}_Vth"] = ("V", "float")
    _KEYS[f"{_prefix}_GateCapPerUm"] = ("fF/um", "float")
    _KEYS[f"{_prefix}_ParasiticGsCapPerUm"] = ("fF/um", "float")
    _KEYS[f"{_prefix}_ParasiticGdCapPerUm"] = ("fF/um", "float")
    _KEYS[f"{_prefix}_OnResistancePerUm"] = ("ohm*um", "float")
    _KEYS[f"{_prefix}_OnRefVoltage"] = ("V", "float")
    _KEYS[f"{_prefix}_Alpha"] = (None, "float")

_ROLE_MAP = {
    "logic_n": "LogicN",
    "logic_p": "LogicP",
    "access_aos_write": "AOSWrite",
    "access_aos_read": "AOSRead",
}


def _arrhenius_rescale(dev: DeviceParams, ea_ev: float,
                       t_ref_c: float, t_c: float) -> DeviceParams:
    if abs(t_c - t_ref_c) < 1e-12:
        return dev
    t_ref_k, t_k = t_ref_c + 273.15, t_c + 273.15
    factor = pow(2.718281828459045,
                 ea_ev / _K_BOLTZMANN_EV * (1.0 / t_ref_k - 1.0 / t_k))
    return replace(
        dev,
        i_off_per_um=dev.i_off_per_um * factor,
        i_floor_per_um=dev.i_floor_per_um * factor,
        ss_mv_per_dec=dev.ss_mv_per_dec * t_k / t_ref_k,
    )


def load_tech(source: str | Path, temperature_c: float | None = None) -> TechNode:
    """Load a technology node by id ("7nm"/"3nm") or parameter file path.

    Loading the same source twice yields an identical TechNode.
    """
    if isinstance(source, str) and source in _BUILTIN_NODES:
        path = data_dir() / _BUILTIN_NODES[source]
    else:
        path = Path(source)
        if not path.exists():
            raise TechError(f"unknown node id or missing file: {source!r}")
    doc = parse_config_file(path)

    vdd = doc.require("Vdd")
    t_ref = doc.get("TemperatureRef", doc.get("Temperature", 85.0))
    t_now = temperature_c if temperature_c is not None else doc.get("Temperature", 85.0)
    ea = doc.get("ArrheniusEa", 0.45)

    devices = {}
    for role, prefix in _ROLE_MAP.items():
        if f"{prefix}_OnCurrentPerUm" in doc:
            dev = _device_from_doc(doc, prefix, vdd)
            devices[role] = _arrhenius_rescale(dev, ea, t_ref, t_now)
    if "logic_n" not in devices or "logic_p" not in devices:
        raise ConfigError(f"{path}: logic_n/logic_p devices are required")

    layers = []
    for name in ("Local", "Intermediate", "Global"):
        r = doc.get(f"WireResistancePerUm_{name}")
        c = doc.get(f"WireCapacitancePerUm_{name}")
        p = doc.get(f"WirePitch_{name}")
        if r is None or c is None or p is None:
            raise ConfigError(f"{path}: missing wire layer {name}")
        layers.append(WireLayer(name=name.lower(), r_per_um=r,
                                c_per_um=c * 1e-15, pitch_nm=p))

    miv = None
    if "MIVResistancePerVia" in doc:
        miv = MIVParams(
            r_per_via=doc.require("MIVResistancePerVia"),
            c_per_um_height=doc.require("MIVCapacitancePerUmHeight") * 1e-15,
            diameter_nm=doc.get("MIVDiameter", 40.0),
            pitch_nm=doc.get("MIVPitch", 100.0),
            tier_height_um=doc.get("TierHeight", 0.2),
        )

    sa_constants = {}
    for kind, suffix in (("voltage", "Voltage"), ("current", "Current")):
        if f"SenseAmpArea{suffix}" in doc:
            sa_constants[kind] = (
                doc.require(f"SenseAmpArea{suffix}"),
                doc.require(f"SenseAmpLatency{suffix}"),
                doc.require(f"SenseAmpEnergy{suffix}"),
                doc.require(f"SenseAmpLeakage{suffix}"),
            )

    try:
        device_class = DeviceClass(doc.require("DeviceClass"))
    except ValueError:
        raise ConfigError(f"{path}: unknown device class") from None

    node = TechNode(
        node_nm=doc.require("NodeNm"),
        device_class=device_class,
        vdd=vdd,
        devices=devices,
        fin_or_sheet_pitch_nm=doc.require("FinOrSheetPitch"),
        gate_pitch_nm=doc.require("GatePitch"),
        metal_layers=tuple(layers),
        std_cell_height_tracks=doc.require("StdCellHeightTracks"),
        temperature_c=t_now,
        miv=miv,
        inv_gamma=doc.get("InverterGamma", 1.0),
        min_inv_width_n_um=doc.get("MinInverterWidthN", 0.105),
        min_inv_width_p_um=doc.get("MinInverterWidthP", 0.105),
        economical_fanout=doc.get("EconomicalFanout", 8.0),
        sense_voltage=doc.get("SenseVoltage", 0.08),
        sa_constants=sa_constants or None,
    )
    node.validate()
    return node
