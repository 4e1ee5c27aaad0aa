"""Circuit-primitive PPA: buffer chains, RC lines, and peripheral blocks.

Buffer chains follow the geometric sizing rule s_k = (C_L/C_in)^((k-1)/(N-1))
spanning input to load inclusive; the stage count that minimizes the
normalized chain delay N*(gamma + F^(1/N)) is found in closed form for
gamma = 0 (N = ln F) and by root bisection plus integer-neighbor comparison
otherwise.

Line delays use the first-moment (Elmore) sum of the pi-discretized ladder:

    delay = R_drv*(sum C + C_load) + sum_i r_i*(c_i/2 + downstream C + C_load)

which upper-bounds the true 50% step response of the ladder.  Long wires
get classic sqrt-RC uniform repeater insertion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .tech import TechNode, WireLayer

LN2 = math.log(2.0)


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class PeripheralPPA:
    area_um2: float
    delay_s: float
    dynamic_energy_j: float
    leakage_w: float

    def __add__(self, other: "PeripheralPPA") -> "PeripheralPPA":
        # serial composition: delays add, everything else sums
        return PeripheralPPA(
            self.area_um2 + other.area_um2,
            self.delay_s + other.delay_s,
            self.dynamic_energy_j + other.dynamic_energy_j,
            self.leakage_w + other.leakage_w,
        )

    def scaled(self, count: float, delay_too: bool = False) -> "PeripheralPPA":
        return PeripheralPPA(
            self.area_um2 * count,
            self.delay_s * (count if delay_too else 1.0),
            self.dynamic_energy_j * count,
            self.leakage_w * count,
        )


ZERO_PPA = PeripheralPPA(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class BufferChain:
    n_stages: int
    sizes: tuple          # stage widths in multiples of the input stage
    c_in: float           # F
    c_load: float         # F
    gamma: float = 1.0


@dataclass(frozen=True)
class RCLadder:
    segments: tuple       # ((r_ohm, c_F), ...)
    driver_r: float = 0.0
    load_c: float = 0.0

    def __post_init__(self):
        for r, c in self.segments:
            if r < 0 or c < 0:
                raise CircuitError("ladder r and c must be >= 0")
        if self.driver_r < 0 or self.load_c < 0:
            raise CircuitError("driver_r and load_c must be >= 0")


def chain_delay_model(n: int, f: float, gamma: float) -> float:
    """Normalized chain delay N*(gamma + F^(1/N)) used for stage-count picks."""
    return n * (gamma + f ** (1.0 / n))


def optimal_stage_count(f: float, gamma: float) -> int:
    """Stage count minimizing chain delay for effective fanout f.

    gamma = 0 has the closed form N = ln(f); otherwise the real root of
    d(delay)/dN = gamma + F^(1/N) - F^(1/N) ln(F)/N is bracketed by
    bisection and the two neighboring integers are compared.
    """
    if f < 1.0:
        raise CircuitError(f"effective fanout must be >= 1, got {f}")
    if gamma < 0:
        raise CircuitError("gamma must be >= 0")
    if f == 1.0:
        return 1
    if gamma == 0.0:
        return max(1, round(math.log(f)))

    lnf = math.log(f)

    def dtp_dn(n: float) -> float:
        expo = lnf / n
        if expo > 500.0:      # F^(1/N) astronomically large, slope term wins
            return -1.0 if n < lnf else 1.0
        fn = math.exp(expo)
        return gamma + fn - fn * lnf / n

    lo, hi = 1e-3, max(lnf, 1.0)
    if dtp_dn(lo) > 0:          # derivative positive everywhere: shrink to 1
        return 1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if dtp_dn(mid) <= 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    candidates = {max(1, math.floor(root)), max(1, math.ceil(root))}
    return min(sorted(candidates), key=lambda n: (chain_delay_model(n, f, gamma), n))


def size_chain(c_in: float, c_load: float, n: int) -> BufferChain:
    """Geometric buffer chain spanning c_in to c_load inclusive.

    A load smaller than the input needs no amplification and returns a
    single minimum stage.
    """
    if c_in <= 0:
        raise CircuitError("c_in must be > 0")
    if n < 1:
        raise CircuitError("n must be >= 1")
    if c_load < c_in or n == 1:
        return BufferChain(1, (1.0,), c_in, max(c_load, 0.0))
    f = c_load / c_in
    sizes = tuple(f ** (k / (n - 1)) for k in range(n))
    return BufferChain(n, sizes, c_in, c_load)


def fanout_chain(c_in: float, c_load: float, fanout: float) -> BufferChain:
    """Economical chain with stage effort capped at `fanout`."""
    if c_load <= c_in:
        return BufferChain(1, (1.0,), c_in, max(c_load, 0.0))
    f = c_load / c_in
    n = max(1, math.ceil(math.log(f) / math.log(fanout)))
    step = f ** (1.0 / n)
    sizes = tuple(step ** k for k in range(n))
    return BufferChain(n, sizes, c_in, c_load)


def chain_metrics(chain: BufferChain, tech: TechNode,
                  v_swing: float | None = None) -> PeripheralPPA:
    """PPA of a buffer chain: Horowitz-style stage delays, C*V^2 energy,
    width-proportional leakage, and standard-cell footprints."""
    v = tech.vdd if v_swing is None else v_swing
    c_u, r_u = tech.unit_input_cap, tech.unit_drive_res
    gamma = tech.inv_gamma
    delay = energy = leak = area = 0.0
    caps = [chain.c_in * s for s in chain.sizes]
    for k, c_k in enumerate(caps):
        load = caps[k + 1] if k + 1 < len(caps) else chain.c_load
        size_units = c_k / c_u
        r_k = r_u / size_units
        delay += LN2 * r_k * (gamma * c_k + load)
        energy += (gamma * c_k + load) * v * v
        leak += size_units * tech.unit_leak_w
        area += size_units * tech.unit_area_um2
    return PeripheralPPA(area, delay, energy, leak)


def elmore_delay(ladder: RCLadder) -> float:
    """First-moment delay estimate of the ladder (s).

    This is the exact Elmore delay of the pi-discretized line, which is a
    guaranteed upper bound on the 50% step-response delay.
    """
    total_c = sum(c for _, c in ladder.segments) + ladder.load_c
    delay = ladder.driver_r * total_c
    downstream = total_c
    for r, c in ladder.segments:
        delay += r * (downstream - c / 2.0)
        downstream -= c
    return delay


def repeated_wire(layer: WireLayer, length_um: float, tech: TechNode,
                  force_repeaters: int | None = None) -> PeripheralPPA:
    """Uniform repeater insertion over a wire.

    The wire is split into n driven segments (head driver included); the
    classic sqrt(RC) rule sets the optimal segment length and driver size.
    force_repeaters = 0 keeps only the head driver.
    """
    if length_um < 0:
        raise CircuitError("length must be >= 0")
    if length_um == 0:
        return ZERO_PPA
    r_w, c_w = layer.r_per_um, layer.c_per_um
    c_u, r_u = tech.unit_input_cap, tech.unit_drive_res
    gamma = tech.inv_gamma
    seg_opt = math.sqrt(2.0 * r_u * c_u * (1.0 + gamma) / (r_w * c_w))
    size = max(1.0, math.sqrt(r_u * c_w / (r_w * c_u)))
    if force_repeaters is None:
        n_seg = max(1, round(length_um / seg_opt))
    else:
        n_seg = max(1, int(force_repeaters) + 1)   # head driver + inserted
    seg_len = length_um / n_seg
    c_seg = c_w * seg_len
    r_seg = r_w * seg_len
    c_drv = size * c_u
    # per segment: driver charging its own load plus the distributed wire
    stage_delay = (LN2 * (r_u / size) * ((1.0 + gamma) * c_drv + c_seg)
                   + r_seg * (c_seg / 2.0 + c_drv))
    delay = n_seg * stage_delay
    energy = (c_w * length_um + n_seg * (1.0 + gamma) * c_drv) * tech.vdd ** 2
    leak = n_seg * size * tech.unit_leak_w
    area = n_seg * size * tech.unit_area_um2
    return PeripheralPPA(area, delay, energy, leak)


# ---------------------------------------------------------------------------
# peripheral block catalog
# ---------------------------------------------------------------------------

PERIPHERAL_KINDS = (
    "row_decoder", "tristate_wl_driver", "level_shifter",
    "sense_amp_voltage", "sense_amp_current", "precharger_write_driver",
    "comparator", "onehot_encoder", "mux",
)

_LS_MAX_STAGES = 10
_DRIVER_MAX_STAGES = 10

# boost-domain stages use wider thick-oxide devices with rail keepers:
# extra footprint and static draw per shifted line (estimate, see data files)
_BOOST_AREA_FACTOR = 1.8
_BOOST_LEAK_FACTOR = 1.2

_DEFAULT_SA = {
    # (area_um2, delay_s, energy_j, leakage_w)
    "voltage": (0.35, 6.0e-11, 4.0e-16, 2.0e-10),
    "current": (0.90, 5.0e-11, 1.2e-15, 1.6e-9),
}


_FINAL_EFFORT = math.e  # latency chains let the output stage work at ~e


def driver_chain(tech: TechNode, c_load: float, latency_opt: bool,
                 v_swing: float | None = None,
                 max_stages: int = _DRIVER_MAX_STAGES) -> PeripheralPPA:
    """Buffer chain from a minimum stage into c_load.

    latency_opt sizes the chain geometrically up to c_load/e with the
    delay-optimal stage count (capped at max_stages) and lets the output
    stage drive the line at effort ~e; otherwise stage effort is capped at
    the node's economical fanout.  The true line load is charged to the
    final stage either way.
    """
    c_in = tech.unit_input_cap
    if latency_opt:
        c_top = max(c_load / _FINAL_EFFORT, c_in)
        f = max(c_top / c_in, 1.0)
        n = min(optimal_stage_count(f, tech.inv_gamma), max_stages)
        chain = size_chain(c_in, c_top, max(n, 1))
        chain = BufferChain(chain.n_stages, chain.sizes, chain.c_in, c_load,
                            chain.gamma)
    else:
        chain = fanout_chain(c_in, c_load, tech.economical_fanout)
    return chain_metrics(chain, tech, v_swing)


def _gate_stage(tech: TechNode, fan_in: int, load_c: float,
                v: float | None = None) -> PeripheralPPA:
    """One static gate stage (NAND/NOR-like) treated as a widened inverter."""
    v = tech.vdd if v is None else v
    c_u, r_u = tech.unit_input_cap, tech.unit_drive_res
    width = 1.0 + 0.5 * (fan_in - 1)
    c_self = tech.inv_gamma * width * c_u
    delay = LN2 * (r_u * (1.0 + 0.3 * (fan_in - 1)) / width) * (c_self + load_c)
    energy = (c_self + load_c) * v * v
    return PeripheralPPA(width * tech.unit_area_um2, delay, energy,
                         width * tech.unit_leak_w)


def row_decoder(tech: TechNode, n_bits: int, c_load: float,
                latency_opt: bool = False) -> PeripheralPPA:
    """Address decoder: predecode, per-row AND, and the output driver.

    One address bit degenerates to a complementary pair of buffered
    drivers (two 2-stage chains, one on the active path).
    """
    if n_bits < 1:
        raise CircuitError("decoder needs >= 1 address bit")
    if n_bits == 1:
        pair = chain_metrics(size_chain(tech.unit_input_cap, c_load, 2), tech)
        return PeripheralPPA(2 * pair.area_um2, pair.delay_s,
                             pair.dynamic_energy_j, 2 * pair.leakage_w)
    n_rows = 2 ** n_bits
    group_bits = 2
    n_groups = math.ceil(n_bits / group_bits)
    predecode_outputs = n_groups * (2 ** group_bits)
    # active path: one predecode gate driving its output line, one row AND
    and_in = _gate_stage(tech, group_bits, (n_rows / predecode_outputs)
                         * 0.5 * tech.unit_input_cap)
    row_and = _gate_stage(tech, n_groups, tech.unit_input_cap)
    driver = driver_chain(tech, c_load, latency_opt)
    active = and_in + row_and + driver
    # all predecode gates and row ANDs leak and occupy area
    idle_gates = predecode_outputs + n_rows * (0.5 + 0.25 * n_groups)
    idle = PeripheralPPA(idle_gates * tech.unit_area_um2, 0.0, 0.0,
                         idle_gates * tech.unit_leak_w)
    return active + idle


def tristate_wl_driver(tech: TechNode, c_load: float,
                       latency_opt: bool = False) -> PeripheralPPA:
    """Word-line driver whose final stage is tri-stated to float idle lines."""
    base = driver_chain(tech, c_load, latency_opt)
    final_units = max(c_load / tech.unit_input_cap, 1.0)
    # series device in the output stage: extra footprint, leak, and delay
    extra_area = 0.5 * final_units * tech.unit_area_um2
    extra_leak = 0.2 * final_units * tech.unit_leak_w
    return PeripheralPPA(base.area_um2 + extra_area,
                         base.delay_s * 1.15,
                         base.dynamic_energy_j,
                         base.leakage_w + extra_leak)


def level_shifter(tech: TechNode, c_load: float, v_boost: float,
                  v_hold: float) -> PeripheralPPA:
    """Cross-coupled shifter into the boost/hold domain plus output chain.

    The output chain is latency-optimized and capped at 10 stages; its
    switched energy is charged at the shifted swing.
    """
    swing = v_boost - v_hold
    if swing <= 0:
        raise CircuitError("level shifter needs v_boost > v_hold")
    c_u, r_u = tech.unit_input_cap, tech.unit_drive_res
    # fixed cross-coupled pair: 4 devices at twice minimum width, plus the
    # hold-rail keeper that pins unselected lines at v_hold
    fixed = PeripheralPPA(10.0 * tech.unit_area_um2,
                          2.0 * LN2 * r_u * (tech.inv_gamma + 2.0) * c_u,
                          2.0 * c_u * swing * swing,
                          2.0 * _BOOST_LEAK_FACTOR * tech.unit_leak_w)
    chain = driver_chain(tech, c_load, latency_opt=True,
                         v_swing=swing, max_stages=_LS_MAX_STAGES)
    chain = PeripheralPPA(chain.area_um2 * _BOOST_AREA_FACTOR,
                          chain.delay_s * 2.0,
                          chain.dynamic_energy_j,
                          chain.leakage_w * _BOOST_LEAK_FACTOR)
    return fixed + chain


def level_shifter_stage_count(tech: TechNode, c_load: float) -> int:
    f = max(c_load / tech.unit_input_cap, 1.0)
    return min(optimal_stage_count(f, tech.inv_gamma), _LS_MAX_STAGES)


def sense_amp(tech: TechNode, kind: str = "voltage") -> PeripheralPPA:
    consts = (tech.sa_constants or _DEFAULT_SA).get(kind) or _DEFAULT_SA[kind]
    area, delay, energy, leak = consts
    return PeripheralPPA(area, delay, energy, leak)


def precharger_write_driver(tech: TechNode, c_load: float,
                            latency_opt: bool = False,
                            v_swing: float | None = None) -> PeripheralPPA:
    chain = driver_chain(tech, c_load, latency_opt, v_swing=v_swing)
    passgate = PeripheralPPA(2.0 * tech.unit_area_um2, 0.0, 0.0,
                             0.5 * tech.unit_leak_w)
    return chain + passgate


def comparator(tech: TechNode, n_bits: int, c_load: float = 0.0) -> PeripheralPPA:
    """Bitwise XOR plus an AND reduction tree over n_bits."""
    if n_bits < 1:
        raise CircuitError("comparator needs >= 1 bit")
    xor = _gate_stage(tech, 2, 2.0 * tech.unit_input_cap)
    depth = max(1, math.ceil(math.log2(n_bits)))
    tree = ZERO_PPA
    for _ in range(depth):
        tree = tree + _gate_stage(tech, 2, tech.unit_input_cap)
    out = driver_chain(tech, max(c_load, tech.unit_input_cap), False)
    idle_gates = 2.0 * n_bits
    idle = PeripheralPPA(idle_gates * tech.unit_area_um2, 0.0,
                         0.3 * idle_gates * tech.unit_input_cap * tech.vdd ** 2,
                         idle_gates * tech.unit_leak_w)
    return xor + tree + out + idle


def onehot_encoder(tech: TechNode, n_inputs: int,
                   c_load: float = 0.0) -> PeripheralPPA:
    """n-input one-hot to binary encoder (OR trees per output bit)."""
    if n_inputs < 2:
        raise CircuitError("encoder needs >= 2 inputs")
    n_out = max(1, math.ceil(math.log2(n_inputs)))
    depth = max(1, math.ceil(math.log2(n_inputs / 2)))
    path = ZERO_PPA
    for _ in range(depth):
        path = path + _gate_stage(tech, 2, tech.unit_input_cap)
    path = path + driver_chain(tech, max(c_load, tech.unit_input_cap), False)
    idle_gates = n_out * (n_inputs / 2.0)
    idle = PeripheralPPA(idle_gates * tech.unit_area_um2, 0.0,
                         0.2 * idle_gates * tech.unit_input_cap * tech.vdd ** 2,
                         idle_gates * tech.unit_leak_w)
    return path + idle


def mux(tech: TechNode, degree: int, c_load: float) -> PeripheralPPA:
    """Pass-gate column mux of the given degree (per output bit)."""
    if degree < 1:
        raise CircuitError("mux degree must be >= 1")
    if degree == 1:
        return ZERO_PPA
    c_u, r_u = tech.unit_input_cap, tech.unit_drive_res
    c_junction = 0.5 * degree * c_u
    delay = LN2 * (2.0 * r_u) * (c_junction + c_load)
    energy = (c_junction + c_load) * tech.vdd ** 2
    return PeripheralPPA(degree * tech.unit_area_um2, delay, energy,
                         0.25 * degree * tech.unit_leak_w)


def peripheral_ppa(kind: str, tech: TechNode, **params) -> PeripheralPPA:
    """Dispatch for the peripheral catalog; see PERIPHERAL_KINDS."""
    try:
        if kind == "row_decoder":
            return row_decoder(tech, params["n_bits"], params["c_load"],
                               params.get("latency_opt", False))
        if kind == "tristate_wl_driver":
            return tristate_wl_driver(tech, params["c_load"],
                                      params.get("latency_opt", False))
        if kind == "level_shifter":
            return level_shifter(tech, params["c_load"], params["v_boost"],
                                 params["v_hold"])
        if kind == "sense_amp_voltage":
            return sense_amp(tech, "voltage")
        if kind == "sense_amp_current":
            return sense_amp(tech, "current")
        if kind == "precharger_write_driver":
            return precharger_write_driver(tech, params["c_load"],
                                           params.get("latency_opt", False),
                                           params.get("v_swing"))
        if kind == "comparator":
            return comparator(tech, params["n_bits"], params.get("c_load", 0.0))
        if kind == "onehot_encoder":
            return onehot_encoder(tech, params["n_inputs"],
                                  params.get("c_load", 0.0))
        if kind == "mux":
            return mux(tech, params["degree"], params["c_load"])
    except KeyError as exc:
        raise CircuitError(f"{kind}: missing parameter {exc}") from None
    raise CircuitError(f"unsupported peripheral kind {kind!r}")
