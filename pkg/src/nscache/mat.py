"""One mat: memory array plus its dedicated peripherals.

The electrical model builds word-line and bit-line RC from cell pitch and
attached device capacitances, drives them through decoder/driver chains,
and closes the read path with the kind-specific bit-line swing and a sense
amplifier.  Gain-cell mats split read and write row paths (tri-stated read
word-line drivers; level-shifted boost-domain write word-lines), use
folded bit lines with reference rows, dual-sided prechargers, and
unmuxed block-wide sense amplifiers.

`_compose` accepts line-parasitic adjustments so the 3D assembly can rerun
the same model with folded line RC, extension wires, and via parasitics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import circuits
from .cells import CHARGE_KINDS, GC2T_KINDS, CellKind, CellModel, access_time
from .circuits import ZERO_PPA
from .tech import TechNode


class MatError(ValueError):
    pass


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


MIN_DIM, MAX_DIM = 32, 1024


@dataclass(frozen=True)
class RefreshSpec:
    needs: bool
    t_retention_s: float
    n_rows: int


@dataclass(frozen=True)
class LineAdjust:
    """Parasitic overrides applied by the 3D assembly."""

    wl_r_scale: float = 1.0
    bl_r_scale: float = 1.0
    wl_extra_r: float = 0.0
    wl_extra_c: float = 0.0
    bl_extra_r: float = 0.0
    bl_extra_c: float = 0.0


@dataclass(frozen=True)
class MatDesign:
    cell: CellModel
    n_rows: int
    n_cols: int
    tech: TechNode
    bl_mux: int = 1
    sa_mux: int = 1
    wl_segmentation: int = 1
    folded_bitline: bool = False
    reference_rows: int = 1
    ecc_cols_factor: float = 1.0
    latency_optimized_periphery: bool | None = None
    sense_leakage_budget: float = 0.10

    def validate(self) -> None:
        for name, n in (("n_rows", self.n_rows), ("n_cols", self.n_cols)):
            if not _is_pow2(n):
                raise MatError(f"{name} must be a power of two, got {n}")
            if not (MIN_DIM <= n <= MAX_DIM):
                raise MatError(f"{name}={n} outside [{MIN_DIM}, {MAX_DIM}]")
        if self.bl_mux < 1 or self.sa_mux < 1 or self.wl_segmentation < 1:
            raise MatError("mux/segmentation degrees must be >= 1")
        if self.cell.kind in GC2T_KINDS and self.sa_mux != 1:
            raise MatError("gain-cell mats use fully connected SAs (sa_mux = 1)")
        if (self.folded_bitline and self.cell.kind in CHARGE_KINDS
                and self.reference_rows < 1):
            raise MatError("folded bit lines need >= 1 reference row")

    @property
    def latency_opt(self) -> bool:
        if self.latency_optimized_periphery is None:
            return self.cell.is_beol
        return self.latency_optimized_periphery


@dataclass(frozen=True)
class MatPPA:
    area_feol_um2: float
    area_beol_um2: float
    tier_dims: tuple                 # ((w_um, h_um), ...) one entry per tier
    footprint_w_um: float
    footprint_h_um: float
    t_read_s: float
    t_write_s: float
    e_read_j: float
    e_write_j: float
    e_refresh_row_j: float
    leakage_w: float
    refresh: RefreshSpec
    busy_s: float
    array_w_um: float
    array_h_um: float
    components: tuple = ()           # ((name, area_um2, leakage_w), ...)
    n_rows: int = 0
    n_cols: int = 0

    @property
    def footprint_area_um2(self) -> float:
        return self.footprint_w_um * self.footprint_h_um

    @property
    def total_area_um2(self) -> float:
        return self.area_feol_um2 + self.area_beol_um2


def _cell_line_caps(cell: CellModel) -> dict:
    """Per-attached-cell capacitance each line sees (F)."""
    w_acc, w_r = cell.w_write_um, cell.w_read_um
    wd, rd = cell.write_device, cell.read_device
    if cell.kind is CellKind.SRAM6T:
        return {"wl": 2 * w_acc * wd.c_gate_per_um,
                "bl": w_acc * wd.c_parasitic_gd_per_um}
    if cell.kind is CellKind.EDRAM1T1C:
        gate = w_acc * (wd.c_gate_per_um + wd.c_parasitic_gs_per_um
                        + wd.c_parasitic_gd_per_um)
        return {"wl": gate, "bl": w_acc * wd.c_parasitic_gd_per_um}
    if cell.kind is CellKind.STTMRAM:
        return {"wl": w_acc * wd.c_gate_per_um,
                "bl": w_acc * wd.c_parasitic_gd_per_um}
    # gain cells: split read/write lines
    return {
        "wl": w_r * rd.c_parasitic_gs_per_um,          # read word line
        "bl": w_r * rd.c_parasitic_gd_per_um,          # read bit line
        "wwl": w_acc * (wd.c_gate_per_um + wd.c_parasitic_gs_per_um
                        + wd.c_parasitic_gd_per_um),
        "wbl": w_acc * wd.c_parasitic_gd_per_um,
    }


def build_mat(design: MatDesign) -> MatPPA:
    """Planar (single-tier) mat PPA."""
    return _compose(design, LineAdjust())


def refresh_params(mat: MatPPA, derate: float = 1.0) -> tuple[float, int]:
    """(engine step interval, rows): one row refresh fires every
    derate * t_retention / n_rows so a full sweep fits in one window."""
    if not mat.refresh.needs:
        raise MatError("mat does not refresh")
    if not (0 < derate <= 1.0):
        raise MatError("derate must be in (0, 1]")
    interval = derate * mat.refresh.t_retention_s / mat.refresh.n_rows
    return interval, mat.refresh.n_rows


def _compose(design: MatDesign, adj: LineAdjust) -> MatPPA:
    design.validate()
    tech, cell = design.tech, design.cell
    local = tech.layer("local")
    vdd = tech.vdd
    lat = design.latency_opt
    is_gc = cell.kind in GC2T_KINDS
    charge = cell.kind in CHARGE_KINDS

    partitions = 2 if design.folded_bitline else 1
    ref_rows = design.reference_rows * partitions if design.folded_bitline else 0
    phys_rows = design.n_rows + ref_rows
    phys_cols = int(round(design.n_cols * design.ecc_cols_factor))

    cw, ch = cell.width_um, cell.height_um
    array_w, array_h = phys_cols * cw, phys_rows * ch
    array_area = array_w * array_h
    caps = _cell_line_caps(cell)

    # ----- read word line ---------------------------------------------------
    seg = design.wl_segmentation
    wl_len = array_w / seg
    cells_per_seg = phys_cols / seg
    c_wl = (local.c_per_um * wl_len + cells_per_seg * caps["wl"]
            + adj.wl_extra_c / seg)
    r_wl = local.r_per_um * wl_len * adj.wl_r_scale

    dec_bits = max(1, int(math.log2(design.n_rows)))
    read_dec = circuits.row_decoder(tech, dec_bits, tech.unit_input_cap)
    if is_gc:
        wl_drv = circuits.tristate_wl_driver(tech, c_wl, latency_opt=False)
    else:
        wl_drv = circuits.driver_chain(tech, c_wl, latency_opt=False)
    wl_line_c = c_wl - adj.wl_extra_c / seg
    wl_wire = circuits.elmore_delay(circuits.RCLadder(
        ((adj.wl_extra_r, adj.wl_extra_c / seg), (r_wl, wl_line_c))))
    t_wl = read_dec.delay_s + wl_drv.delay_s + wl_wire

    # ----- read bit line ----------------------------------------------------
    n_attach = phys_rows // (2 if design.folded_bitline else 1)
    bl_len = array_h
    c_bl = (local.c_per_um * bl_len + n_attach * caps["bl"]
            + adj.bl_extra_c + 2.0 * tech.unit_input_cap)
    r_bl = local.r_per_um * bl_len * adj.bl_r_scale
    if is_gc:
        r_bl *= 0.5  # dual-sided prechargers drive the line from both ends
    t_bl_rc = adj.bl_extra_r * c_bl + r_bl * c_bl / 2.0

    sa_kind = "current" if cell.kind is CellKind.STTMRAM else "voltage"
    sa = circuits.sense_amp(tech, sa_kind)
    v_sense = tech.sense_voltage

    if cell.kind is CellKind.EDRAM1T1C:
        dv = 0.5 * cell.v_stored * cell.c_sn / (cell.c_sn + c_bl)
        if dv < v_sense:
            raise MatError(
                f"charge-share swing {dv*1e3:.1f} mV below sense "
                f"threshold {v_sense*1e3:.1f} mV; reduce n_rows")
        r_acc = cell.write_device.r_on_per_um / cell.w_write_um
        c_ser = cell.c_sn * c_bl / (cell.c_sn + c_bl)
        t_swing = 2.2 * r_acc * c_ser
    elif cell.kind is CellKind.STTMRAM:
        r_on, _ = cell.r_on_r_off
        r_acc = cell.write_device.r_on_per_um / cell.w_write_um
        t_swing = 2.2 * c_bl * (r_on + r_acc)
    else:
        i_read = cell.read_current()
        if is_gc:
            rdev = cell.read_device
            i_leak = (n_attach - 1) * cell.w_read_um * (
                rdev.i_off_per_um + rdev.i_floor_per_um)
            if i_leak > design.sense_leakage_budget * i_read:
                raise MatError(
                    f"unselected-cell bit-line leakage {i_leak:.2e} A exceeds "
                    f"{design.sense_leakage_budget:.0%} of read current "
                    f"{i_read:.2e} A; reduce n_rows")
        t_swing = c_bl * v_sense / i_read

    mux_bl = circuits.mux(tech, design.bl_mux, c_bl / max(design.bl_mux, 1))
    mux_sa = circuits.mux(tech, design.sa_mux, 2.0 * tech.unit_input_cap)
    t_read = (t_wl + t_bl_rc + t_swing + sa.delay_s
              + mux_bl.delay_s + mux_sa.delay_s)

    # ----- write path -------------------------------------------------------
    n_sa = phys_cols // design.sa_mux
    cols_written = max(phys_cols // design.bl_mux, 1)
    v_wr = cell.v_stored
    if is_gc:
        c_wwl = (local.c_per_um * wl_len + cells_per_seg * caps["wwl"]
                 + adj.wl_extra_c / seg)
        write_dec = circuits.row_decoder(tech, dec_bits, tech.unit_input_cap)
        ls = circuits.level_shifter(tech, c_wwl, cell.v_boost, cell.v_hold)
        wwl_wire = circuits.elmore_delay(circuits.RCLadder(
            ((adj.wl_extra_r, adj.wl_extra_c / seg),
             (r_wl, c_wwl - adj.wl_extra_c / seg))))
        wbl_cap = (local.c_per_um * bl_len + n_attach * caps["wbl"]
                   + adj.bl_extra_c)
        wbl_drv = circuits.precharger_write_driver(
            tech, wbl_cap, latency_opt=lat, v_swing=v_wr)
        t_cell_write = access_time(cell)
        t_write = (write_dec.delay_s + ls.delay_s + wwl_wire
                   + adj.bl_extra_r * wbl_cap + 0.5 * r_bl * wbl_cap
                   + wbl_drv.delay_s + t_cell_write)
    else:
        wbl_drv = circuits.precharger_write_driver(
            tech, c_bl, latency_opt=lat, v_swing=v_wr)
        if cell.kind is CellKind.EDRAM1T1C:
            t_cell_write = access_time(cell)
        elif cell.kind is CellKind.STTMRAM:
            t_cell_write = cell.write_pulse_ns * 1e-9
        else:
            t_cell_write = cell.cell_write_time_s
        t_write = t_wl + t_bl_rc + wbl_drv.delay_s + t_cell_write
        write_dec = ZERO_PPA
        ls = ZERO_PPA

    # ----- energies ---------------------------------------------------------
    boost_sq = ((cell.v_boost - cell.v_hold) ** 2 if charge else vdd ** 2)
    e_wl_read = read_dec.dynamic_energy_j + wl_drv.dynamic_energy_j
    if design.folded_bitline and charge:
        e_wl_read += wl_drv.dynamic_energy_j  # reference row fires alongside
    e_bl_read = phys_cols * c_bl * v_sense * vdd
    e_sa = n_sa * sa.dynamic_energy_j
    e_restore = 0.0
    if cell.destructive_read:
        e_restore = phys_cols * (c_bl + cell.c_sn) * v_wr * v_wr
    e_read = (e_wl_read + e_bl_read + e_sa + e_restore
              + mux_bl.dynamic_energy_j * n_sa + mux_sa.dynamic_energy_j * n_sa)

    if is_gc:
        e_wwl = (write_dec.dynamic_energy_j
                 + ls.dynamic_energy_j)  # shifter chain already at boost swing
        e_wbl = cols_written * (local.c_per_um * bl_len
                                + n_attach * caps["wbl"]) * v_wr * v_wr
        e_write = e_wwl + e_wbl + wbl_drv.dynamic_energy_j * cols_written
    elif cell.kind is CellKind.STTMRAM:
        e_wbl = cols_written * (c_bl * vdd * vdd
                                + cell.write_current_a * vdd
                                * cell.write_pulse_ns * 1e-9)
        e_write = e_wl_read + e_wbl
    else:
        scale = boost_sq / (vdd * vdd) if charge else 1.0
        e_wbl = cols_written * (c_bl + cell.c_sn) * v_wr * v_wr
        e_write = e_wl_read * scale + e_wbl + wbl_drv.dynamic_energy_j

    e_refresh_row = 0.0
    if cell.needs_refresh:
        e_refresh_row = (e_wl_read + e_bl_read + e_sa
                         + phys_cols * (c_bl + cell.c_sn) * v_wr * v_wr)
        if is_gc:
            e_refresh_row += ls.dynamic_energy_j

    # ----- leakage and area accounting --------------------------------------
    comp = []
    array_leak = phys_rows * phys_cols * cell.standby_leak_w
    comp.append(("array", array_area, array_leak))

    per_row = wl_drv.scaled(seg)
    row_area = phys_rows * per_row.area_um2 + read_dec.area_um2
    row_leak = phys_rows * per_row.leakage_w + read_dec.leakage_w
    comp.append(("row_decode_drive", row_area, row_leak))
    wr_area = wr_leak = 0.0
    if is_gc:
        wr_area = phys_rows * (ls.area_um2 * seg) + write_dec.area_um2
        wr_leak = phys_rows * (ls.leakage_w * seg) + write_dec.leakage_w
        comp.append(("write_decode_shift", wr_area, wr_leak))

    n_bl_drv = phys_cols * (2 if is_gc else 1)   # dual-sided for gain cells
    drv_scale = 0.6 if is_gc else 1.0            # each side carries half the line
    bl_area = n_bl_drv * wbl_drv.area_um2 * drv_scale
    bl_leak = n_bl_drv * wbl_drv.leakage_w * drv_scale
    comp.append(("bl_drivers", bl_area, bl_leak))

    sa_area = n_sa * sa.area_um2 + n_sa * (mux_bl.area_um2 + mux_sa.area_um2)
    sa_leak = n_sa * sa.leakage_w + n_sa * (mux_bl.leakage_w + mux_sa.leakage_w)
    comp.append(("sense_amps", sa_area, sa_leak))

    periph_area = row_area + wr_area + bl_area + sa_area
    control_area = 0.02 * (array_area + periph_area)
    control_leak = 0.02 * (row_leak + wr_leak + bl_leak + sa_leak)
    comp.append(("control", control_area, control_leak))
    periph_area += control_area

    leakage = array_leak + row_leak + wr_leak + bl_leak + sa_leak + control_leak

    # ----- packing ----------------------------------------------------------
    row_strip_w = (row_area + wr_area) / array_h
    col_strip_h = (bl_area + sa_area + control_area) / array_w
    mat_w = array_w + row_strip_w
    mat_h = array_h + col_strip_h
    if cell.is_beol:
        area_feol = periph_area
        area_beol = array_area
    else:
        area_feol = array_area + periph_area
        area_beol = 0.0

    return MatPPA(
        area_feol_um2=area_feol,
        area_beol_um2=area_beol,
        tier_dims=((array_w, array_h),),
        footprint_w_um=mat_w,
        footprint_h_um=mat_h,
        t_read_s=t_read,
        t_write_s=t_write,
        e_read_j=e_read,
        e_write_j=e_write,
        e_refresh_row_j=e_refresh_row,
        leakage_w=leakage,
        refresh=RefreshSpec(cell.needs_refresh,
                            cell.retention_s * cell.retention_derate,
                            design.n_rows),
        busy_s=t_read,
        array_w_um=array_w,
        array_h_um=array_h,
        components=tuple(comp),
        n_rows=design.n_rows,
        n_cols=design.n_cols,
    )
