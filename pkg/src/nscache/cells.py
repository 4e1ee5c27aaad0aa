"""Memory bit-cell variants and charge-cell access/retention times.

Charge-storage cells (1T1C eDRAM and the two-transistor gain cells) get
their write-access and retention times by integrating storage-node charge
against the access device's current:

    t = integral c_sn(v) / I(v_bias, v) dv

evaluated with an adaptive trapezoid rule at 1e-6 relative tolerance.
The device current comes from a piecewise compact model: a subthreshold
exponential riding on a bias-independent leakage floor, blended into an
alpha-power-law saturation region that tops out at the rated on-current.

SRAM flips are circuit-limited and STT-MRAM writes are pulse-limited, so
both bypass the integral.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

from .config import ConfigDocument, ConfigError, parse_config_file
from .tech import DeviceParams, TechNode

_CURRENT_FLOOR_A = 1e-30  # below this the charge-up is considered stalled


class CellError(ValueError):
    """Raised for invalid cell definitions or non-convergent integrals."""


class ChargeStallError(CellError):
    """Access/retention integrand current vanished inside the range."""


class CellKind(enum.Enum):
    SRAM6T = "SRAM6T"
    EDRAM1T1C = "EDRAM1T1C"
    STTMRAM = "STTMRAM"
    GC2T_DG = "GC2T_DG"
    GC2T_CAA = "GC2T_CAA"


CHARGE_KINDS = (CellKind.EDRAM1T1C, CellKind.GC2T_DG, CellKind.GC2T_CAA)
GC2T_KINDS = (CellKind.GC2T_DG, CellKind.GC2T_CAA)


@dataclass(frozen=True)
class StoredLevelPair:
    """Written "1" level and the minimum still-sensable level (V)."""

    v1: float
    v2: float

    def __post_init__(self):
        if not (self.v1 > self.v2 >= 0):
            raise CellError(f"levels require v1 > v2 >= 0, got ({self.v1}, {self.v2})")


@dataclass(frozen=True)
class CellModel:
    kind: CellKind
    area_um2: float
    is_beol: bool
    tiers_per_cell: int
    needs_refresh: bool
    destructive_read: bool
    v_boost: float
    v_hold: float
    c_sn: float                    # F; storage-node capacitance
    write_device: DeviceParams | None
    read_device: DeviceParams | None
    retention_s: float = float("inf")
    write_pulse_ns: float = 0.0    # STT-MRAM
    r_on_r_off: tuple[float, float] | None = None
    # geometry / calibration extras carried by the cell file
    name: str = ""
    aspect_ratio: float = 1.0      # cell width / height
    w_write_um: float = 0.03
    w_read_um: float = 0.03
    v_stored: float = 0.7          # "1" level written into the cell
    sense_margin_fraction: float = 0.7
    retention_derate: float = 1.0
    standby_leak_w: float = 0.0
    read_current_a: float | None = None
    cell_write_time_s: float = 0.0
    write_current_a: float = 0.0
    c_sn_table: tuple = ()         # optional ((v, c_F), ...) for c_sn(v)

    def validate(self, vdd: float | None = None) -> None:
        if self.area_um2 <= 0:
            raise CellError("cell area must be > 0")
        if vdd is not None and self.kind in CHARGE_KINDS and self.v_boost < vdd:
            raise CellError("v_boost must be >= vdd for charge cells")
        if self.kind in CHARGE_KINDS and self.v_hold > 0:
            raise CellError("v_hold must be <= 0 where used")
        if self.needs_refresh and not (0 < self.retention_s < float("inf")):
            raise CellError("refreshing cells need finite positive retention")
        if self.destructive_read and self.kind is not CellKind.EDRAM1T1C:
            raise CellError("destructive read applies to EDRAM1T1C only")
        if self.tiers_per_cell < 1:
            raise CellError("tiers_per_cell must be >= 1")

    # geometry helpers -----------------------------------------------------

    @property
    def width_um(self) -> float:
        return (self.area_um2 * self.aspect_ratio) ** 0.5

    @property
    def height_um(self) -> float:
        return (self.area_um2 / self.aspect_ratio) ** 0.5

    def c_sn_at(self, v: float) -> float:
        if not self.c_sn_table:
            return self.c_sn
        pts = self.c_sn_table
        if v <= pts[0][0]:
            return pts[0][1]
        for (v0, c0), (v1, c1) in zip(pts, pts[1:]):
            if v <= v1:
                frac = (v - v0) / (v1 - v0)
                return c0 + frac * (c1 - c0)
        return pts[-1][1]

    def levels(self) -> StoredLevelPair:
        return StoredLevelPair(self.v_stored,
                               self.sense_margin_fraction * self.v_stored)

    def read_current(self) -> float:
        """Cell read current onto the bitline at a stored "1" (A)."""
        if self.read_current_a is not None:
            return self.read_current_a
        if self.kind in GC2T_KINDS:
            return compact_current(self.read_device, self.v_stored, 0.0,
                                   self.w_read_um)
        raise CellError(f"{self.kind.value} needs an explicit -ReadCurrent")


def compact_current(d: DeviceParams, v_gs: float, v_sn: float,
                    width_um: float = 1.0) -> float:
    """Drain current (A) of a width_um device at gate v_gs, source node v_sn.

    Subthreshold: i_floor + i_off * 10^(v_eff/SS), capped at the threshold
    value; above threshold an alpha-power law rises continuously from the
    seam and saturates at i_on once v_eff reaches v_on_ref.
    """
    ss_v = d.ss_mv_per_dec / 1000.0
    v_eff = v_gs - v_sn
    i_th = d.i_off_per_um * 10.0 ** (d.vth / ss_v)
    i_th = min(i_th, d.i_on_per_um)
    if v_eff <= d.vth:
        i = d.i_floor_per_um + d.i_off_per_um * 10.0 ** (v_eff / ss_v)
        return width_um * min(i, i_th + d.i_floor_per_um)
    span = max(d.v_on_ref - d.vth, 1e-9)
    x = (v_eff - d.vth) / span
    if x >= 1.0:
        return width_um * (d.i_floor_per_um + d.i_on_per_um)
    i = i_th + (d.i_on_per_um - i_th) * x ** d.alpha
    return width_um * (d.i_floor_per_um + i)


def _adaptive_trapezoid(f, a: float, b: float, rtol: float = 1e-6) -> float:
    """Adaptive trapezoid quadrature of f over [a, b]."""
    fa, fb = f(a), f(b)
    whole = 0.5 * (fa + fb) * (b - a)
    # seed tolerance from a coarse 8-panel estimate so the split criterion scales
    n = 8
    xs = [a + (b - a) * i / n for i in range(n + 1)]
    vals = [f(x) for x in xs]
    coarse = sum(0.5 * (v0 + v1) * (b - a) / n
                 for v0, v1 in zip(vals, vals[1:]))
    tol = rtol * abs(coarse)

    def recurse(x0, x1, f0, f1, est, budget, depth):
        xm = 0.5 * (x0 + x1)
        fm = f(xm)
        left = 0.5 * (f0 + fm) * (xm - x0)
        right = 0.5 * (fm + f1) * (x1 - xm)
        if depth >= 48 or abs(left + right - est) <= budget:
            return left + right
        return (recurse(x0, xm, f0, fm, left, budget / 2, depth + 1)
                + recurse(xm, x1, fm, f1, right, budget / 2, depth + 1))

    return recurse(a, b, fa, fb, whole, tol, 0)


def _charge_integral(cell: CellModel, device: DeviceParams, width_um: float,
                     v_gate: float, v_lo: float, v_hi: float) -> float:
    def integrand(v):
        i = compact_current(device, v_gate, v, width_um)
        if not (i > _CURRENT_FLOOR_A):
            raise ChargeStallError(
                f"current reached 0 at v_sn={v:.3f} V (gate {v_gate} V)")
        return cell.c_sn_at(v) / i

    if v_hi <= v_lo:
        return 0.0
    return _adaptive_trapezoid(integrand, v_lo, v_hi)


def access_time(cell: CellModel, levels: StoredLevelPair | None = None) -> float:
    """Charge-up time of the storage node from the "0" level to v1 (s)."""
    if cell.kind not in CHARGE_KINDS:
        raise CellError(f"access_time applies to charge cells, not {cell.kind.value}")
    levels = levels or cell.levels()
    return _charge_integral(cell, cell.write_device, cell.w_write_um,
                            cell.v_boost, 0.0, levels.v1)


def retention_time(cell: CellModel, levels: StoredLevelPair | None = None) -> float:
    """Time for the stored "1" to droop from v1 to the sense floor v2 (s)."""
    if cell.kind not in CHARGE_KINDS:
        raise CellError(f"retention_time applies to charge cells, not {cell.kind.value}")
    levels = levels or cell.levels()
    return _charge_integral(cell, cell.write_device, cell.w_write_um,
                            cell.v_hold, levels.v2, levels.v1)


def onoff_decades(delta_vg: float, ss_mv_per_dec: float) -> float:
    """Available on/off-current decades for a gate swing delta_vg."""
    if ss_mv_per_dec <= 0:
        raise CellError("ss must be > 0")
    return delta_vg / (ss_mv_per_dec / 1000.0)


_KIND_DEFAULTS = {
    CellKind.SRAM6T: dict(is_beol=False, tiers=1, refresh=False, destructive=False),
    CellKind.EDRAM1T1C: dict(is_beol=False, tiers=1, refresh=True, destructive=True),
    CellKind.STTMRAM: dict(is_beol=False, tiers=1, refresh=False, destructive=False),
    CellKind.GC2T_DG: dict(is_beol=True, tiers=2, refresh=True, destructive=False),
    CellKind.GC2T_CAA: dict(is_beol=True, tiers=2, refresh=True, destructive=False),
}

_DEFAULT_ROLES = {
    CellKind.SRAM6T: ("logic_n", "logic_n"),
    CellKind.EDRAM1T1C: ("logic_n", "logic_n"),
    CellKind.STTMRAM: ("logic_n", "logic_n"),
    CellKind.GC2T_DG: ("access_aos_write", "access_aos_read"),
    CellKind.GC2T_CAA: ("access_aos_write", "access_aos_read"),
}


def load_cell(source: str | Path | ConfigDocument, tech: TechNode) -> CellModel:
    """Load a cell definition file and finish derived quantities.

    For gain cells the storage-node capacitance is derived from the read
    device's gate geometry; retention is integrated for every charge cell
    unless the file pins -Retention explicitly.
    """
    if isinstance(source, ConfigDocument):
        doc = source
    else:
        doc = parse_config_file(source)
    try:
        kind = CellKind(doc.require("CellKind"))
    except ValueError:
        raise ConfigError(f"unknown cell kind {doc.get('CellKind')!r}") from None
    defaults = _KIND_DEFAULTS[kind]

    write_role = doc.get("WriteDeviceRole", _DEFAULT_ROLES[kind][0])
    read_role = doc.get("ReadDeviceRole", _DEFAULT_ROLES[kind][1])
    write_dev = tech.devices.get(write_role)
    read_dev = tech.devices.get(read_role)
    if kind in CHARGE_KINDS and write_dev is None:
        raise ConfigError(f"tech node lacks device role {write_role!r}")

    w_read = doc.get("ReadDeviceWidth", 0.03)
    if kind in GC2T_KINDS:
        if read_dev is None:
            raise ConfigError(f"tech node lacks device role {read_role!r}")
        c_sn = (read_dev.c_gate_per_um + read_dev.c_parasitic_gs_per_um
                + read_dev.c_parasitic_gd_per_um) * w_read
    else:
        c_sn = doc.get("SNCapacitance", 0.0) * 1e-15

    cell = CellModel(
        kind=kind,
        area_um2=doc.require("CellArea"),
        is_beol=doc.get("CellIsBEOL", defaults["is_beol"]),
        tiers_per_cell=doc.get("TiersPerCell", defaults["tiers"]),
        needs_refresh=doc.get("NeedsRefresh", defaults["refresh"]),
        destructive_read=doc.get("DestructiveRead", defaults["destructive"]),
        v_boost=doc.get("VBoost", tech.vdd),
        v_hold=doc.get("VHold", 0.0),
        c_sn=c_sn,
        write_device=write_dev,
        read_device=read_dev,
        write_pulse_ns=doc.get("WritePulseWidth", 0.0),
        r_on_r_off=((doc.require("ResistanceOn"), doc.require("ResistanceOff"))
                    if "ResistanceOn" in doc else None),
        name=doc.get("CellName", kind.value),
        aspect_ratio=doc.get("CellAspectRatio", 1.0),
        w_write_um=doc.get("WriteDeviceWidth", 0.03),
        w_read_um=w_read,
        v_stored=doc.get("VStored", tech.vdd),
        sense_margin_fraction=doc.get("SenseMarginFraction", 0.7),
        retention_derate=doc.get("RetentionDerate", 1.0),
        standby_leak_w=doc.get("CellStandbyLeakage", 0.0),
        read_current_a=doc.get("ReadCurrent"),
        cell_write_time_s=doc.get("CellWriteTime", 0.0),
        write_current_a=doc.get("WriteCurrent", 0.0),
    )

    retention = doc.get("Retention")
    if retention is None and kind in CHARGE_KINDS:
        retention = retention_time(cell)
    if retention is not None:
        cell = _with(cell, retention_s=retention)
    cell.validate(tech.vdd)
    return cell


def _with(cell: CellModel, **kw) -> CellModel:
    from dataclasses import replace
    return replace(cell, **kw)


# -WriteCurrent is cell-file only; register its key spec here
from .config import KEY_SPECS as _KEYS  # noqa: E402

_KEYS.setdefault("WriteCurrent", ("A", "float"))
