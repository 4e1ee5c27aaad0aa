"""Monolithic-3D assembly: elevate a BEOL array over its periphery.

The array is folded lateral to its largest planar dimension (at most two
folds, so 1/2/4 memory tiers), the FEOL frame is reshaped to the folded
array's aspect ratio, and the dimension mismatch becomes xWL/xBL extension
wires.  Stacked line halves are driven in parallel, so line resistance
along the folded axis halves per fold; inter-tier via R/C scale with the
tallest via run and are added to the extension wires before the electrical
model reruns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mat import LineAdjust, MatDesign, MatPPA, _compose
from .tech import MIVParams, TechNode  # noqa: F401  (MIVParams re-exported here)


class M3DError(ValueError):
    pass


MAX_FOLDS = 2


@dataclass(frozen=True)
class TierStack:
    n_memory_tiers: int
    footprint_w_um: float
    footprint_h_um: float
    tier_dims: tuple              # per-tier (w, h)
    xwl_extension_um: float = 0.0
    xbl_extension_um: float = 0.0
    miv_count: int = 0
    miv_max_height_um: float = 0.0
    wl_r_scale: float = 1.0
    bl_r_scale: float = 1.0

    @property
    def aspect(self) -> float:
        return self.footprint_w_um / self.footprint_h_um


def fold_array(array_w_um: float, array_h_um: float, n_folds: int) -> TierStack:
    """Fold the array n_folds times, halving the larger dimension each time.

    Word lines run along the width, bit lines along the height; halving a
    dimension halves that line family's resistance (parallel-driven tiers).
    """
    if array_w_um <= 0 or array_h_um <= 0:
        raise M3DError("array dimensions must be > 0")
    if n_folds not in (0, 1, 2):
        raise M3DError(f"n_folds must be 0, 1, or 2, got {n_folds}")
    w, h = array_w_um, array_h_um
    wl_scale = bl_scale = 1.0
    tiers = 1
    for _ in range(n_folds):
        if w >= h:
            w /= 2.0
            wl_scale *= 0.5
        else:
            h /= 2.0
            bl_scale *= 0.5
        tiers *= 2
    return TierStack(
        n_memory_tiers=tiers,
        footprint_w_um=w,
        footprint_h_um=h,
        tier_dims=tuple((w, h) for _ in range(tiers)),
        wl_r_scale=wl_scale,
        bl_r_scale=bl_scale,
    )


def reshape_feol(periph_area_um2: float, target_aspect: float) -> tuple[float, float]:
    """FEOL frame (w, h) at the given area matching target w/h aspect."""
    if periph_area_um2 <= 0:
        raise M3DError("peripheral area must be > 0")
    if target_aspect <= 0:
        raise M3DError("aspect ratio must be > 0")
    w = math.sqrt(periph_area_um2 * target_aspect)
    return w, periph_area_um2 / w


def miv_parasitics(stack: TierStack, mivs: MIVParams,
                   signals: int) -> tuple[float, float, float]:
    """(per-signal R, per-signal C, total array area) of the via field.

    C scales with the tallest via run; R with the tiers crossed; the via
    field occupies signals * pitch^2 at the FEOL boundary.
    """
    if signals < 0:
        raise M3DError("signal count must be >= 0")
    if signals == 0:
        return 0.0, 0.0, 0.0
    height = stack.miv_max_height_um or (mivs.tier_height_um
                                         * stack.n_memory_tiers)
    r = mivs.r_per_via * stack.n_memory_tiers
    c = mivs.c_per_um_height * height
    pitch_um = mivs.pitch_nm / 1000.0
    return r, c, signals * pitch_um * pitch_um


def assemble_m3d_mat(design: MatDesign, n_folds: int,
                     extra_feol_area_um2: float = 0.0) -> MatPPA:
    """Stacked mat: BEOL array folded over the reshaped FEOL frame.

    extra_feol_area_um2 adds co-integrated FEOL blocks (tag mats under the
    data array) to the frame before reshaping.
    """
    if not design.cell.is_beol:
        raise M3DError(f"{design.cell.kind.value} is not a BEOL cell")
    tech: TechNode = design.tech
    if tech.miv is None:
        raise M3DError("technology file carries no MIV parameters")

    base = _compose(design, LineAdjust())
    periph_area = base.area_feol_um2 + extra_feol_area_um2

    stack = fold_array(base.array_w_um, base.array_h_um, n_folds)
    device_tiers = stack.n_memory_tiers * design.cell.tiers_per_cell
    miv_height = tech.miv.tier_height_um * device_tiers
    signals = int(base.n_rows + round(design.n_cols * design.ecc_cols_factor))
    stack = TierStack(
        n_memory_tiers=stack.n_memory_tiers,
        footprint_w_um=stack.footprint_w_um,
        footprint_h_um=stack.footprint_h_um,
        tier_dims=stack.tier_dims,
        miv_count=signals,
        miv_max_height_um=miv_height,
        wl_r_scale=stack.wl_r_scale,
        bl_r_scale=stack.bl_r_scale,
    )
    miv_r, miv_c, miv_area = miv_parasitics(stack, tech.miv, signals)

    frame_w, frame_h = reshape_feol(periph_area + miv_area, stack.aspect)
    ext_x = abs(frame_w - stack.footprint_w_um)
    ext_y = abs(frame_h - stack.footprint_h_um)

    inter = tech.layer("intermediate")
    adj = LineAdjust(
        wl_r_scale=stack.wl_r_scale,
        bl_r_scale=stack.bl_r_scale,
        wl_extra_r=inter.r_per_um * ext_x + miv_r,
        wl_extra_c=inter.c_per_um * ext_x + miv_c,
        bl_extra_r=inter.r_per_um * ext_y + miv_r,
        bl_extra_c=inter.c_per_um * ext_y + miv_c,
    )
    ppa = _compose(design, adj)

    foot_w = max(frame_w, stack.footprint_w_um)
    foot_h = max(frame_h, stack.footprint_h_um)
    stack = TierStack(
        n_memory_tiers=stack.n_memory_tiers,
        footprint_w_um=stack.footprint_w_um,
        footprint_h_um=stack.footprint_h_um,
        tier_dims=stack.tier_dims,
        xwl_extension_um=ext_x,
        xbl_extension_um=ext_y,
        miv_count=signals,
        miv_max_height_um=miv_height,
        wl_r_scale=stack.wl_r_scale,
        bl_r_scale=stack.bl_r_scale,
    )

    comps = tuple(c for c in ppa.components) + (("miv_array", miv_area, 0.0),)
    return MatPPA(
        area_feol_um2=ppa.area_feol_um2 + miv_area,
        area_beol_um2=ppa.area_beol_um2,
        tier_dims=stack.tier_dims,
        footprint_w_um=foot_w,
        footprint_h_um=foot_h,
        t_read_s=ppa.t_read_s,
        t_write_s=ppa.t_write_s,
        e_read_j=ppa.e_read_j,
        e_write_j=ppa.e_write_j,
        e_refresh_row_j=ppa.e_refresh_row_j,
        leakage_w=ppa.leakage_w,
        refresh=ppa.refresh,
        busy_s=ppa.busy_s,
        array_w_um=ppa.array_w_um,
        array_h_um=ppa.array_h_um,
        components=comps,
        n_rows=ppa.n_rows,
        n_cols=ppa.n_cols,
    )
