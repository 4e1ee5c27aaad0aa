"""Banks: mats tiled into subarrays, subarrays tiled under an H-tree.

A transaction enters through IO/control, crosses the H-tree to the active
subarrays, is pre-decoded, crosses the intra-subarray mat routing, and
lands in the mats.  Hit/miss/write latencies depend on the access mode:
sequential waits for the tag before touching data, normal overlaps them
and holds the data row buffer until the tag broadcast confirms, fast ships
data speculatively.

Tag-under-data (TAU) banks fold SRAM tag mats into the FEOL frame beneath
the BEOL data arrays: homogeneous TAU mirrors the data organization and
confirms hits locally through an on-mat one-hot encoder; heterogeneous TAU
concentrates tags under the central subarrays behind a two-stage forward
tree, trading a two-cycle write penalty for a shorter miss loop.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from . import circuits
from .cells import CellKind
from .circuits import PeripheralPPA
from .m3d import assemble_m3d_mat
from .mat import MatDesign, MatPPA, RefreshSpec, build_mat
from .tech import TechNode


class BankError(ValueError):
    pass


class BankKind(enum.Enum):
    DATA = "Data"
    TAG = "Tag"
    TAU_HM = "TAU_HM"
    TAU_HT = "TAU_HT"


class AccessMode(enum.Enum):
    NORMAL = "Normal"
    SEQUENTIAL = "Sequential"
    FAST = "Fast"


def _log2_exact(n: int, what: str) -> int:
    if n < 1 or (n & (n - 1)) != 0:
        raise BankError(f"{what} must be a power of two, got {n}")
    return n.bit_length() - 1


@dataclass(frozen=True)
class BankOrg:
    """Organizational genome of one bank."""

    bank_kind: BankKind
    n_sr: int
    n_sc: int
    n_asr: int
    n_asc: int
    mats_rows: int
    mats_cols: int
    n_amr: int
    n_amc: int
    associativity: int
    n_block: int
    w_block_data: int
    w_block_tag: int
    access_mode: AccessMode
    capacity_bytes: int
    ecc_ratio: float = 0.0

    def validate(self) -> None:
        if not (1 <= self.n_asr <= self.n_sr and 1 <= self.n_asc <= self.n_sc):
            raise BankError("active subarray counts must fit in the grid")
        if not (1 <= self.n_amr <= self.mats_rows
                and 1 <= self.n_amc <= self.mats_cols):
            raise BankError("active mat counts must fit in the subarray")
        _log2_exact(self.associativity, "associativity")
        _log2_exact(self.n_block, "n_block")
        if self.capacity_bytes <= 0:
            raise BankError("capacity must be > 0")
        if self.bank_kind is not BankKind.TAG:
            if self.n_block * self.w_block_data != self.capacity_bytes * 8:
                raise BankError(
                    "capacity inconsistent: n_block * w_block_data must equal "
                    f"{self.capacity_bytes * 8} bits")
        if self.ecc_ratio < 0:
            raise BankError("ecc_ratio must be >= 0")

    @property
    def n_subarrays(self) -> int:
        return self.n_sr * self.n_sc

    @property
    def mats_per_subarray(self) -> int:
        return self.mats_rows * self.mats_cols

    @property
    def active_subarrays(self) -> int:
        return self.n_asr * self.n_asc

    @property
    def active_mats(self) -> int:
        return self.active_subarrays * self.n_amr * self.n_amc


def gdl_widths(org: BankOrg) -> tuple[int, int, int]:
    """Routing bus widths (address, broadcast, distributed) in bits.

    Data banks broadcast the encoded way select in normal mode and return
    the retrieved word on the distributed wires; tag banks receive the
    query tag on the broadcast wires and return the one-hot way vector;
    TAU banks receive the tag plus two control bits and return either the
    word (normal/sequential) or, in fast mode, every candidate way plus
    the way vector.
    """
    nb = org.n_block
    a = org.associativity
    wd, wt = org.w_block_data, org.w_block_tag
    l2_nb = _log2_exact(nb, "n_block")
    l2_set = _log2_exact(nb // a, "n_block/associativity")
    l2_a = _log2_exact(a, "associativity")
    mode, kind = org.access_mode, org.bank_kind

    if kind is BankKind.DATA:
        if mode is AccessMode.NORMAL:
            return l2_set, l2_a, wd
        return l2_nb, 0, wd
    if kind is BankKind.TAG:
        return l2_set, wt, a
    # TAU variants share the combined-bank widths
    if mode is AccessMode.NORMAL:
        return l2_set, wt + 2, wd
    if mode is AccessMode.SEQUENTIAL:
        return l2_nb, wt + 2, wd
    return l2_set, 0, wd * a + a


@dataclass(frozen=True)
class HTreePPA:
    delay_s: float
    energy_j: float
    wire_area_um2: float
    repeater_area_um2: float = 0.0
    leakage_w: float = 0.0
    total_wire_um: float = 0.0


def route_htree(org: BankOrg, sub_w_um: float, sub_h_um: float,
                bits_per_leg: int, tech: TechNode) -> HTreePPA:
    """Recursive H-tree over the subarray grid.

    Delay follows the deepest path; energy charges only legs on routes to
    active subarrays; wire area covers the full tree at the global pitch.
    """
    layer = tech.layer("intermediate")
    pitch_um = layer.pitch_nm / 1000.0

    def rec(w, h, rows, cols, act_r, act_c):
        if rows == 1 and cols == 1:
            return 0.0, 0.0, 0.0, 0.0, 0.0
        if cols >= rows:
            leg = w / 4.0
            nxt = (w / 2.0, h, rows, cols // 2)
            split_active = act_c > 1
            nxt_act = (act_r, max(1, act_c // 2))
        else:
            leg = h / 4.0
            nxt = (w, h / 2.0, rows // 2, cols)
            split_active = act_r > 1
            nxt_act = (max(1, act_r // 2), act_c)
        ppa = circuits.repeated_wire(layer, leg, tech)
        d, e, length, rep_a, leak = rec(*nxt, *nxt_act)
        active_legs = 2 if split_active else 1
        children = 2 if split_active else 1
        delay = ppa.delay_s + d
        energy = (active_legs * ppa.dynamic_energy_j * bits_per_leg
                  + children * e)
        total_len = 2 * leg + 2 * length
        rep_area = 2 * ppa.area_um2 * bits_per_leg + 2 * rep_a
        leakage = 2 * ppa.leakage_w * bits_per_leg + 2 * leak
        return delay, energy, total_len, rep_area, leakage

    d, e, length, rep_a, leak = rec(sub_w_um * org.n_sc, sub_h_um * org.n_sr,
                                    org.n_sr, org.n_sc, org.n_asr, org.n_asc)
    return HTreePPA(d, e, length * bits_per_leg * pitch_um, rep_a, leak,
                    length)


@dataclass(frozen=True)
class BankPPA:
    area_total_mm2: float
    area_feol_mm2: float
    area_beol_mm2: float
    t_hit_s: float
    t_miss_detect_s: float
    t_write_s: float
    t_tag_s: float
    t_data_s: float
    t_bcast_s: float
    t_routing_s: float
    t_subarray_s: float
    subarray_busy_s: float
    e_hit_j: float
    e_miss_j: float
    e_write_j: float
    e_refresh_row_j: float
    leakage_w: float
    refresh: RefreshSpec
    capacity_bytes: int
    access_mode: AccessMode
    bank_kind: BankKind
    n_subarrays: int
    n_mats_per_subarray: int
    extra_write_cycles: int = 0
    components: tuple = ()
    wire_area_mm2: float = 0.0

    @property
    def bit_density_mb_per_mm2(self) -> float:
        return (self.capacity_bytes / (1 << 20)) / self.area_total_mm2

    def timing_latencies(self) -> dict:
        """Latency set the cycle quantizer consumes."""
        return {
            "tag_access": self.t_tag_s,
            "hit": self.t_data_s,
            "tag_broadcast": self.t_bcast_s,
            "miss_detect": max(self.t_miss_detect_s - self.t_tag_s, 0.0),
            "write": self.t_write_s,
            "subarray_busy": self.subarray_busy_s,
        }


def _mat_grid_geometry(org: BankOrg, mat: MatPPA) -> tuple[float, float]:
    # 2% intra-subarray routing margin around the mat tiles
    sub_w = org.mats_cols * mat.footprint_w_um * 1.01
    sub_h = org.mats_rows * mat.footprint_h_um * 1.01
    return sub_w, sub_h


def _check_capacity(org: BankOrg, mat: MatPPA) -> None:
    bits = org.n_subarrays * org.mats_per_subarray * mat.n_rows * mat.n_cols
    if bits != org.capacity_bytes * 8:
        raise BankError(
            f"inconsistent capacity: organization stores {bits} data bits "
            f"but the bank declares {org.capacity_bytes * 8}")


def _intra_subarray_route(org: BankOrg, mat: MatPPA, bits: int,
                          tech: TechNode) -> HTreePPA:
    sub_org = replace(org, n_sr=org.mats_rows, n_sc=org.mats_cols,
                      n_asr=org.n_amr, n_asc=org.n_amc)
    layer_tree = route_htree(sub_org, mat.footprint_w_um, mat.footprint_h_um,
                             bits, tech)
    return layer_tree


def _control_block(tech: TechNode, bank_w_um: float) -> PeripheralPPA:
    # fixed IO/control: one decoder stage plus half a bank-edge crossing
    dec = circuits.row_decoder(tech, 4, tech.unit_input_cap)
    wire = circuits.repeated_wire(tech.layer("intermediate"), bank_w_um / 2.0, tech)
    return dec + wire


def build_bank(org: BankOrg, mat_ppa: MatPPA, tech: TechNode,
               tag_bank: "BankPPA | None" = None,
               slice_count: int = 1, slice_hop_s: float = 0.0) -> BankPPA:
    """Compose a data or tag bank from its mat PPA.

    For a data bank, passing the matching tag bank's PPA produces full
    cache hit/miss timing per the access mode; without it the bank is
    reported as a plain RAM (t_tag = 0).
    """
    org.validate()
    if org.bank_kind in (BankKind.TAU_HM, BankKind.TAU_HT):
        raise BankError("TAU banks are built by build_tau_bank")
    if org.bank_kind is not BankKind.TAG:
        _check_capacity(org, mat_ppa)

    naw, nbw, ndw = gdl_widths(org)
    bits_leg = naw + nbw + ndw
    sub_w, sub_h = _mat_grid_geometry(org, mat_ppa)
    bank_w, bank_h = sub_w * org.n_sc, sub_h * org.n_sr

    htree = route_htree(org, sub_w, sub_h, bits_leg, tech)
    predec = circuits.row_decoder(
        tech, max(1, _log2_exact(org.n_subarrays, "subarray count")),
        tech.unit_input_cap)
    bits_mat = naw + max(1, ndw // org.active_subarrays)
    matroute = _intra_subarray_route(org, mat_ppa, bits_mat, tech)
    control = _control_block(tech, bank_w)

    t_route_in = control.delay_s + htree.delay_s
    t_return = htree.delay_s + matroute.delay_s   # read data retraces the tree
    t_sub_read = predec.delay_s + matroute.delay_s + mat_ppa.t_read_s
    t_data = t_route_in + t_sub_read + t_return
    t_data_write = t_route_in + predec.delay_s + matroute.delay_s + mat_ppa.t_write_s
    t_bcast = control.delay_s + htree.delay_s  # confirm retraces the tree

    active = org.active_mats
    e_route = control.dynamic_energy_j + htree.energy_j
    e_sub = (predec.dynamic_energy_j + matroute.energy_j) * org.active_subarrays
    e_data_read = e_route + e_sub + active * mat_ppa.e_read_j
    e_data_write = e_route + e_sub + active * mat_ppa.e_write_j

    mats_total = org.n_subarrays * org.mats_per_subarray
    leakage = (mats_total * mat_ppa.leakage_w
               + org.n_subarrays * predec.leakage_w
               + org.n_subarrays * matroute.leakage_w
               + htree.leakage_w + control.leakage_w)

    mats_area = mats_total * mat_ppa.footprint_w_um * mat_ppa.footprint_h_um
    sub_area = sub_w * sub_h * org.n_subarrays
    control_area = control.area_um2 + htree.repeater_area_um2
    area_um2 = sub_area + control_area
    feol_um2 = (mats_total * mat_ppa.area_feol_um2 + control_area
                + (sub_area - mats_area))
    beol_um2 = mats_total * mat_ppa.area_beol_um2

    comps = [
        ("mats", mats_area, mats_total * mat_ppa.leakage_w),
        ("predecoders", 0.0, org.n_subarrays * predec.leakage_w),
        ("mat_routing", 0.0, org.n_subarrays * matroute.leakage_w),
        ("htree", htree.repeater_area_um2, htree.leakage_w),
        ("control", control.area_um2, control.leakage_w),
        ("subarray_margin", sub_area - mats_area, 0.0),
    ]

    mode = org.access_mode
    if org.bank_kind is BankKind.TAG:
        t_tag = t_data
        t_hit = t_data
        t_miss = t_data
        t_write = t_data_write
        e_hit = e_miss = e_data_read
        e_write = e_data_write
        busy = predec.delay_s + matroute.delay_s + mat_ppa.busy_s
    elif tag_bank is None:
        t_tag = 0.0
        t_hit = t_data
        t_miss = t_data
        t_write = t_data_write
        e_hit = e_miss = e_data_read
        e_write = e_data_write
        busy = predec.delay_s + matroute.delay_s + mat_ppa.busy_s
    else:
        link = circuits.repeated_wire(tech.layer("intermediate"), bank_w / 2.0, tech)
        t_tag = tag_bank.t_tag_s + link.delay_s
        e_tag = tag_bank.e_hit_j + link.dynamic_energy_j * org.w_block_tag
        e_bcast_w = link.dynamic_energy_j * max(nbw, 1)
        if mode is AccessMode.SEQUENTIAL:
            t_hit = t_tag + t_data
            e_hit = e_tag + e_data_read
            e_miss = e_tag
            busy = predec.delay_s + matroute.delay_s + mat_ppa.busy_s
        elif mode is AccessMode.NORMAL:
            t_hit = max(t_data, t_tag + t_bcast)
            e_hit = e_tag + e_data_read + e_bcast_w
            e_miss = e_tag + e_data_read  # speculative row read is wasted
            # row buffer holds through the confirm: the broadcast way select
            # rides the subarray routing in, is re-decoded to one-hot, and
            # the chosen way retraverses the routing toward the tree root
            way_dec = circuits.row_decoder(
                tech, max(1, _log2_exact(org.associativity, "associativity")),
                tech.unit_input_cap)
            busy = (predec.delay_s + matroute.delay_s + mat_ppa.busy_s
                    + 2.0 * matroute.delay_s + way_dec.delay_s)
        else:  # FAST
            t_hit = t_data
            e_hit = e_tag + e_data_read + link.dynamic_energy_j * ndw
            e_miss = e_tag + e_data_read
            busy = predec.delay_s + matroute.delay_s + mat_ppa.busy_s
        t_miss = t_tag + t_bcast
        t_write = t_data_write
        e_write = e_data_write

    ppa = BankPPA(
        area_total_mm2=area_um2 * 1e-6 * slice_count,
        area_feol_mm2=feol_um2 * 1e-6 * slice_count,
        area_beol_mm2=beol_um2 * 1e-6 * slice_count,
        t_hit_s=t_hit + (slice_hop_s if slice_count > 1 else 0.0),
        t_miss_detect_s=t_miss + (slice_hop_s if slice_count > 1 else 0.0),
        t_write_s=t_write + (slice_hop_s if slice_count > 1 else 0.0),
        t_tag_s=t_tag,
        t_data_s=t_data,
        t_bcast_s=t_bcast,
        t_routing_s=t_route_in,
        t_subarray_s=t_sub_read,
        subarray_busy_s=busy,
        e_hit_j=e_hit,
        e_miss_j=e_miss,
        e_write_j=e_write,
        e_refresh_row_j=mat_ppa.e_refresh_row_j,
        leakage_w=leakage,
        refresh=mat_ppa.refresh,
        capacity_bytes=org.capacity_bytes * slice_count,
        access_mode=mode,
        bank_kind=org.bank_kind,
        n_subarrays=org.n_subarrays,
        n_mats_per_subarray=org.mats_per_subarray,
        components=tuple(comps),
        wire_area_mm2=htree.wire_area_um2 * 1e-6,
    )
    return ppa


def matching_tag_org(data_org: BankOrg, address_bits: int = 48,
                     line_bytes: int = 64) -> BankOrg:
    """Tag bank organization mirroring a data bank (HM discipline)."""
    sets = data_org.n_block // data_org.associativity
    tag_bits = address_bits - _log2_exact(sets, "sets") \
        - _log2_exact(line_bytes, "line bytes")
    w_tag = data_org.associativity * (tag_bits + 2)  # valid + dirty
    cap_bits = data_org.n_block * (tag_bits + 2)
    return replace(
        data_org,
        bank_kind=BankKind.TAG,
        w_block_tag=w_tag,
        capacity_bytes=max(cap_bits // 8, 1),
        ecc_ratio=0.0,
    )


def tag_mat_dims(tag_org: BankOrg, min_dim: int = 32) -> tuple[int, int]:
    """Smallest power-of-two mat that holds the per-mat tag slice."""
    bits_per_mat = (tag_org.capacity_bytes * 8) / (
        tag_org.n_subarrays * tag_org.mats_per_subarray)
    rows = min_dim
    while rows * rows < bits_per_mat:
        rows *= 2
    cols = rows
    while rows * (cols // 2) >= bits_per_mat and cols // 2 >= min_dim:
        cols //= 2
    return rows, cols


def _pow2_dims(bits_needed: float, min_dim: int = 32,
               max_dim: int = 1024) -> tuple[int, int]:
    rows = cols = min_dim
    while rows * cols < bits_needed:
        if cols <= rows and cols < max_dim:
            cols *= 2
        elif rows < max_dim:
            rows *= 2
        else:
            raise BankError("tag slice exceeds the maximum mat size")
    return rows, cols


def build_tau_bank(data_org: BankOrg, tag_org: BankOrg, variant: BankKind,
                   data_design: MatDesign, tag_design: MatDesign,
                   n_folds: int = 1,
                   central_fraction: float = 0.25) -> BankPPA:
    """Combined bank with SRAM tag mats under the BEOL data arrays."""
    if variant not in (BankKind.TAU_HM, BankKind.TAU_HT):
        raise BankError("variant must be TAU_HM or TAU_HT")
    if not data_design.cell.is_beol:
        raise BankError("TAU requires a BEOL data cell")
    if tag_design.cell.kind is not CellKind.SRAM6T:
        raise BankError("TAU tags are SRAM")
    hm = variant is BankKind.TAU_HM
    if hm and (data_org.n_sr, data_org.n_sc, data_org.mats_rows,
               data_org.mats_cols) != (tag_org.n_sr, tag_org.n_sc,
                                       tag_org.mats_rows, tag_org.mats_cols):
        raise BankError("HM-TAU requires identical tag/data organization")

    tech = data_design.tech
    org = replace(data_org, bank_kind=variant)
    mats_total = org.n_subarrays * org.mats_per_subarray
    tag_bits = max(org.w_block_tag // max(org.associativity, 1) - 2, 1)
    comp = circuits.comparator(tech, tag_bits)
    enc = circuits.onehot_encoder(tech, max(org.associativity, 2))
    mode = org.access_mode

    if hm:
        tag_mat = build_mat(tag_design)
        combined = assemble_m3d_mat(data_design, n_folds,
                                    extra_feol_area_um2=tag_mat.area_feol_um2)
        base = build_bank(replace(org, bank_kind=BankKind.DATA), combined, tech)
        # tags ride the same tree and pre-decode as the data mats
        t_tag = (base.t_routing_s
                 + (base.t_subarray_s - combined.t_read_s)  # predec + routing
                 + tag_mat.t_read_s + comp.delay_s)
        confirm = enc.delay_s
        if mode is AccessMode.SEQUENTIAL:
            t_hit = t_tag + confirm + (base.t_data_s - base.t_routing_s)
        elif mode is AccessMode.NORMAL:
            t_hit = max(base.t_data_s, t_tag + confirm)
        else:
            t_hit = base.t_data_s
        t_miss = t_tag + base.t_bcast_s        # miss still reports centrally
        busy = base.subarray_busy_s + confirm  # local confirm, no tree wait
        extra_write = 0
        tag_area = mats_total * tag_mat.area_feol_um2
        tag_leak = mats_total * (tag_mat.leakage_w + comp.leakage_w
                                 + enc.leakage_w)
        tag_energy = (tag_mat.e_read_j * org.active_mats
                      + (comp.dynamic_energy_j + enc.dynamic_energy_j)
                      * org.active_subarrays)
        area = base.area_total_mm2
        feol = base.area_feol_mm2 + tag_area * 1e-6
        e_hit = base.e_hit_j + tag_energy
        e_miss = base.e_miss_j + tag_energy
        e_write = base.e_write_j + tag_mat.e_write_j * org.active_mats
        t_write = base.t_write_s
        refresh, e_refresh = combined.refresh, combined.e_refresh_row_j
        comps = base.components + (("tau_tags", tag_area, tag_leak),)
    else:
        # HT: tags concentrated under the central subarrays behind a
        # two-stage forward tree.
        data_mat = assemble_m3d_mat(data_design, n_folds)
        base = build_bank(replace(org, bank_kind=BankKind.DATA), data_mat, tech)
        n_central = max(1, int(round(org.n_subarrays * central_fraction)))
        central_mats = n_central * org.mats_per_subarray
        bits_per_central_mat = (tag_org.capacity_bytes * 8) / central_mats
        rows, cols = _pow2_dims(bits_per_central_mat)
        central_tag_mat = build_mat(replace(tag_design, n_rows=rows,
                                            n_cols=cols))
        central_mat = assemble_m3d_mat(
            data_design, n_folds,
            extra_feol_area_um2=central_tag_mat.area_feol_um2)
        sub_w, sub_h = _mat_grid_geometry(org, central_mat)
        stage1 = route_htree(
            replace(org, bank_kind=BankKind.DATA,
                    n_sr=max(org.n_sr // 2, 1), n_sc=max(org.n_sc // 2, 1),
                    n_asr=1, n_asc=1),
            sub_w, sub_h, org.w_block_tag + 2, tech)
        # stage 1 reaches the central tags; stage 2 fans out to the rest
        t_tag = (_control_block(tech, sub_w * org.n_sc).delay_s
                 + stage1.delay_s + central_tag_mat.t_read_s + comp.delay_s)
        if mode is AccessMode.SEQUENTIAL:
            t_hit = t_tag + enc.delay_s + (base.t_data_s - base.t_routing_s)
        elif mode is AccessMode.NORMAL:
            t_hit = max(base.t_data_s, t_tag + enc.delay_s) + stage1.delay_s
        else:
            t_hit = base.t_data_s + stage1.delay_s
        t_miss = t_tag + stage1.delay_s        # short central return loop
        busy = base.subarray_busy_s + enc.delay_s + stage1.delay_s
        extra_write = 2
        area_extra = (central_mats
                      * (central_mat.footprint_w_um * central_mat.footprint_h_um
                         - data_mat.footprint_w_um * data_mat.footprint_h_um))
        area = base.area_total_mm2 + max(area_extra, 0.0) * 1e-6
        feol = (base.area_feol_mm2
                + central_mats * central_tag_mat.area_feol_um2 * 1e-6)
        tag_leak = central_mats * (central_tag_mat.leakage_w
                                   + comp.leakage_w + enc.leakage_w)
        e_tag = (central_tag_mat.e_read_j * org.n_amr * org.n_amc
                 + comp.dynamic_energy_j + enc.dynamic_energy_j)
        e_hit = base.e_hit_j + e_tag + stage1.energy_j
        e_miss = base.e_miss_j + e_tag
        e_write = base.e_write_j + central_tag_mat.e_write_j
        t_write = base.t_write_s
        refresh, e_refresh = data_mat.refresh, data_mat.e_refresh_row_j
        comps = base.components + (
            ("tau_tags_central",
             central_mats * central_tag_mat.area_feol_um2, tag_leak),)
    beol = base.area_beol_mm2
    leakage = base.leakage_w + tag_leak

    return BankPPA(
        area_total_mm2=area,
        area_feol_mm2=feol,
        area_beol_mm2=beol,
        t_hit_s=t_hit,
        t_miss_detect_s=t_miss,
        t_write_s=t_write,
        t_tag_s=t_tag,
        t_data_s=base.t_data_s,
        t_bcast_s=base.t_bcast_s,
        t_routing_s=base.t_routing_s,
        t_subarray_s=base.t_subarray_s,
        subarray_busy_s=busy,
        e_hit_j=e_hit,
        e_miss_j=e_miss,
        e_write_j=e_write,
        e_refresh_row_j=e_refresh,
        leakage_w=leakage,
        refresh=refresh,
        capacity_bytes=org.capacity_bytes,
        access_mode=org.access_mode,
        bank_kind=variant,
        n_subarrays=org.n_subarrays,
        n_mats_per_subarray=org.mats_per_subarray,
        extra_write_cycles=extra_write,
        components=comps,
        wire_area_mm2=base.wire_area_mm2,
    )
