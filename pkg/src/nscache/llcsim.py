"""Trace-driven set-associative LLC simulator with rolling refresh.

Latencies are quantized to clock cycles (always rounding up, never down).
Accesses occupy their subarray for the subarray-busy window, so requests
to distinct subarrays proceed in parallel while a busy subarray serializes.
Refresh regions (mats by default, whole subarrays for pessimism studies)
follow a staggered rolling schedule with reserved windows: an access may
neither overlap a refresh window nor push one back, which keeps every
row's inter-refresh gap at exactly the row period.

Program energy follows the hit/miss/write counts plus the refresh and
static terms; when a simulation supplies its actual refresh-event count
the refresh term uses it exactly, otherwise the continuous
t_run * N_row / t_retention approximation applies.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class SimError(ValueError):
    pass


class TraceError(SimError):
    pass


class Mode(enum.Enum):
    NORMAL = "Normal"
    SEQUENTIAL = "Sequential"
    FAST = "Fast"


class BlockingScope(enum.Enum):
    MAT = "Mat"
    SUBARRAY = "Subarray"


@dataclass(frozen=True)
class RefreshTiming:
    enabled: bool = False
    row_period_s: float = 0.0
    n_rows: int = 0

    def validate(self):
        if self.enabled and self.row_period_s <= 0:
            raise SimError("enabled refresh needs row_period > 0")
        if self.enabled and self.n_rows < 1:
            raise SimError("enabled refresh needs n_rows >= 1")


@dataclass(frozen=True)
class TimingParams:
    f_clk_hz: float
    cycles: dict                      # hit, miss_detect, write, tag_access,
                                      # tag_broadcast, refresh_row,
                                      # subarray_busy, offchip_fill
    mode: Mode = Mode.SEQUENTIAL
    refresh: RefreshTiming = field(default_factory=RefreshTiming)
    blocking_scope: BlockingScope = BlockingScope.MAT
    n_subarrays: int = 1
    n_mats_per_subarray: int = 1

    def validate(self):
        if self.f_clk_hz <= 0:
            raise SimError("f_clk must be > 0")
        for key, v in self.cycles.items():
            if v < 0:
                raise SimError(f"cycle count {key} must be >= 0")
        self.refresh.validate()

    def cyc(self, key: str, default: int = 0) -> int:
        return int(self.cycles.get(key, default))

    @property
    def n_regions(self) -> int:
        if self.blocking_scope is BlockingScope.SUBARRAY:
            return self.n_subarrays
        return self.n_subarrays * self.n_mats_per_subarray


@dataclass(frozen=True)
class CacheConfig:
    capacity_bytes: int
    line_bytes: int = 64
    ways: int = 16
    address_bits: int = 64

    def validate(self):
        if self.capacity_bytes <= 0 or self.line_bytes <= 0 or self.ways <= 0:
            raise SimError("cache geometry must be positive")
        sets = self.capacity_bytes // (self.line_bytes * self.ways)
        if sets < 1 or (sets & (sets - 1)) != 0:
            raise SimError(f"set count {sets} must be a power of two")

    @property
    def n_sets(self) -> int:
        return self.capacity_bytes // (self.line_bytes * self.ways)


@dataclass(frozen=True)
class TraceEvent:
    tick: int
    op: str          # "R" or "W"
    address: int


@dataclass
class SimStats:
    n_hits: int = 0
    n_misses: int = 0
    n_writes: int = 0
    runtime_cycles: int = 0
    refresh_stall_cycles: int = 0
    load_to_use: dict = field(default_factory=dict)   # cycles -> count
    refresh_count: int | None = None
    event_log: list | None = None     # (tick, op, addr, hit, start, done)
    hit_miss_labels: list | None = None
    n_reads: int = 0
    n_dirty_evictions: int = 0

    def load_to_use_cdf(self) -> list:
        total = sum(self.load_to_use.values())
        out, acc = [], 0
        for cyc in sorted(self.load_to_use):
            acc += self.load_to_use[cyc]
            out.append((cyc, acc / total if total else 0.0))
        return out


@dataclass(frozen=True)
class EnergyParams:
    e_hit: float
    e_miss: float
    e_write: float
    e_refresh_row: float = 0.0
    p_static: float = 0.0
    t_retention: float = float("inf")
    n_row: int = 0
    miss_offchip_multiplier: float = 92.0

    def validate(self):
        for name in ("e_hit", "e_miss", "e_write", "e_refresh_row", "p_static"):
            if getattr(self, name) < 0:
                raise SimError(f"{name} must be >= 0")
        if self.miss_offchip_multiplier < 1:
            raise SimError("miss_offchip_multiplier must be >= 1")


@dataclass(frozen=True)
class EnergyReport:
    hit_j: float
    miss_onchip_j: float
    write_j: float
    refresh_j: float
    static_j: float
    total_onchip_j: float
    offchip_miss_j: float

    def breakdown(self) -> dict:
        return {
            "hit": self.hit_j,
            "miss_onchip": self.miss_onchip_j,
            "write": self.write_j,
            "refresh": self.refresh_j,
            "static": self.static_j,
        }


def quantize_cycles(latency_s: float, f_clk_hz: float) -> int:
    """ceil(latency * f_clk) with a 1-ulp guard at integer boundaries."""
    if latency_s < 0:
        raise SimError("latency must be >= 0")
    if f_clk_hz <= 0:
        raise SimError("f_clk must be > 0")
    if latency_s == 0:
        return 0
    q = latency_s * f_clk_hz
    nearest = round(q)
    if nearest > 0 and abs(q - nearest) <= 4 * math.ulp(q):
        return int(nearest)
    return int(math.ceil(q))


def parse_trace(text: str) -> list:
    """Trace format: `<tick> <R|W> <hex address>` per line, `#` comments."""
    events = []
    last_tick = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise TraceError(f"line {lineno}: expected '<tick> <R|W> <addr>'")
        try:
            tick = int(parts[0])
        except ValueError:
            raise TraceError(f"line {lineno}: bad tick {parts[0]!r}") from None
        op = parts[1].upper()
        if op not in ("R", "W"):
            raise TraceError(f"line {lineno}: bad op {parts[1]!r}")
        try:
            addr = int(parts[2], 16)
        except ValueError:
            raise TraceError(f"line {lineno}: bad address {parts[2]!r}") from None
        if tick < last_tick:
            raise TraceError(f"line {lineno}: ticks decrease ({tick} < {last_tick})")
        if tick < 0:
            raise TraceError(f"line {lineno}: negative tick")
        last_tick = tick
        events.append(TraceEvent(tick, op, addr))
    return events


def format_trace(events) -> str:
    return "".join(f"{e.tick} {e.op} {e.address:x}\n" for e in events)


class _RefreshPlan:
    """Analytic reserved-window schedule for one refresh domain.

    Region r refreshes row i at phase (i * n_regions + r) * step within
    each period, where step = period / (n_rows * n_regions); every row of
    every region recurs exactly once per period.
    """

    def __init__(self, timing: TimingParams):
        ref = timing.refresh
        self.enabled = ref.enabled
        if not self.enabled:
            return
        self.period = ref.row_period_s * timing.f_clk_hz   # cycles, float
        self.n_rows = ref.n_rows
        self.n_regions = timing.n_regions
        self.slots = self.n_rows * self.n_regions
        self.step = self.period / self.slots
        self.dur = max(timing.cyc("refresh_row"), 1)
        if self.dur > self.step:
            raise SimError(
                f"refresh_row={self.dur} cycles oversubscribes the "
                f"{self.step:.1f}-cycle refresh slot spacing")

    def window_at_or_after(self, region: int, t: int) -> tuple[int, int]:
        """Start/end of region's first refresh window ending after t."""
        # slots for this region fire at ceil((region + j*n_regions) * step)
        stride = self.n_regions * self.step
        j = max(0, math.floor((t - self.dur - region * self.step) / stride) - 1)
        for _ in range(8):
            start = math.ceil((region + j * self.n_regions) * self.step)
            if start + self.dur > t:
                return int(start), int(start) + self.dur
            j += 1
        raise AssertionError("refresh window search failed")


def _plan_windows(plan: _RefreshPlan, region: int, start: int,
                  occupancy: int) -> tuple[int, int]:
    """Reserved-window scheduling for one region."""
    stall = 0
    t = start
    for _ in range(1 << 20):
        w0, w1 = plan.window_at_or_after(region, t)
        if w0 <= t < w1:                       # inside a window
            stall += w1 - t
            t = w1
            continue
        if t < w0 and t + occupancy > w0:      # would straddle the window
            stall += w1 - t
            t = w1
            continue
        return t, stall
    raise SimError("access could not be scheduled around refresh")


def simulate(trace, cache: CacheConfig, timing: TimingParams,
             record_events: bool = False) -> SimStats:
    """Run the trace through an LRU write-allocate write-back cache."""
    cache.validate()
    timing.validate()
    stats = SimStats()
    if record_events:
        stats.event_log = []
        stats.hit_miss_labels = []
    sets = cache.n_sets
    line_shift = cache.line_bytes.bit_length() - 1
    tags: list[list[int]] = [[] for _ in range(sets)]       # MRU last
    dirty: list[set] = [set() for _ in range(sets)]

    c_hit = timing.cyc("hit")
    c_missd = timing.cyc("miss_detect")
    c_write = timing.cyc("write")
    c_tag = timing.cyc("tag_access")
    c_bcast = timing.cyc("tag_broadcast")
    c_busy = timing.cyc("subarray_busy", max(c_hit, 1))
    c_fill = timing.cyc("offchip_fill", 100)
    mode = timing.mode

    n_sub = timing.n_subarrays
    n_mat = timing.n_mats_per_subarray
    scope_mat = timing.blocking_scope is BlockingScope.MAT
    sub_free = [0] * n_sub
    plan = _RefreshPlan(timing)
    refresh_effective = plan.enabled

    last_tick = -1
    runtime = 0
    for ev in trace:
        tick, op, addr = ev.tick, ev.op, ev.address
        if tick < last_tick:
            raise TraceError(f"ticks decrease at {tick}")
        if op not in ("R", "W"):
            raise TraceError(f"bad op {op!r}")
        last_tick = tick

        line = addr >> line_shift
        set_idx = line & (sets - 1)
        tag = line >> (sets.bit_length() - 1)
        sub = set_idx % n_sub
        region = sub if not scope_mat else (sub * n_mat
                                            + (set_idx // n_sub) % n_mat)

        ways = tags[set_idx]
        hit = tag in ways
        if hit:
            ways.remove(tag)
            ways.append(tag)
        else:
            if len(ways) >= cache.ways:
                victim = ways.pop(0)
                if victim in dirty[set_idx]:
                    dirty[set_idx].discard(victim)
                    stats.n_writes += 1
                    stats.n_dirty_evictions += 1
            ways.append(tag)
        if op == "W":
            dirty[set_idx].add(tag)

        if op == "R":
            stats.n_reads += 1
            if hit:
                stats.n_hits += 1
            else:
                stats.n_misses += 1

        if op == "R":
            if mode is Mode.SEQUENTIAL:
                service = c_tag + (c_hit if hit else c_missd)
            elif mode is Mode.NORMAL:
                service = max(c_tag, c_hit) + c_bcast
            else:  # FAST
                service = c_hit if hit else max(c_hit, c_tag + c_bcast)
            if not hit:
                service += c_fill
            occupancy = c_busy
        else:
            service = c_write if hit else c_fill + c_write
            occupancy = max(c_busy, c_write)

        start = max(tick, sub_free[sub])
        if refresh_effective:
            start, stall = _plan_windows(plan, region, start, occupancy)
            stats.refresh_stall_cycles += stall
        done = start + service
        sub_free[sub] = start + occupancy
        runtime = max(runtime, done)

        if op == "R":
            lat = done - tick
            stats.load_to_use[lat] = stats.load_to_use.get(lat, 0) + 1
        if op == "W":
            stats.n_writes += 1
        if record_events:
            stats.event_log.append((tick, op, addr, hit, start, done))
            stats.hit_miss_labels.append(hit)

    stats.runtime_cycles = runtime
    if refresh_effective:
        stats.refresh_count = _count_refreshes(plan, runtime)
    return stats


def _count_refreshes(plan: _RefreshPlan, horizon_cycles: int) -> int:
    """Number of refresh windows starting before the horizon.

    Must agree exactly with refresh_schedule: slot s fires at
    ceil(s * step) and counts when that start is < horizon.
    """
    if plan.step <= 0 or horizon_cycles <= 0:
        return 0
    s_max = math.floor((horizon_cycles - 1) / plan.step)
    while math.ceil((s_max + 1) * plan.step) < horizon_cycles:
        s_max += 1
    while s_max >= 0 and math.ceil(s_max * plan.step) >= horizon_cycles:
        s_max -= 1
    return s_max + 1


def refresh_schedule(timing: TimingParams, horizon_s: float) -> list:
    """Reserved refresh windows as (start_cycle, region, row) tuples."""
    if not timing.refresh.enabled:
        raise SimError("refresh is disabled")
    plan = _RefreshPlan(timing)
    horizon = int(horizon_s * timing.f_clk_hz)
    events = []
    slot = 0
    while True:
        start = math.ceil(slot * plan.step)
        if start >= horizon:
            break
        region = slot % plan.n_regions
        row = (slot // plan.n_regions) % plan.n_rows
        events.append((int(start), region, row))
        slot += 1
    return events


def energy_program(stats: SimStats, ep: EnergyParams,
                   t_run_s: float) -> EnergyReport:
    """Program energy: hit/miss/write counts, refresh, and static power."""
    ep.validate()
    if t_run_s < 0:
        raise SimError("t_run must be >= 0")
    hit_j = stats.n_hits * ep.e_hit
    miss_j = stats.n_misses * ep.e_miss
    write_j = stats.n_writes * ep.e_write
    if stats.refresh_count is not None:
        refresh_j = stats.refresh_count * ep.e_refresh_row
    elif ep.n_row and ep.t_retention and math.isfinite(ep.t_retention) \
            and ep.t_retention > 0:
        refresh_j = t_run_s * ep.n_row * ep.e_refresh_row / ep.t_retention
    else:
        refresh_j = 0.0
    static_j = ep.p_static * t_run_s
    total = hit_j + miss_j + write_j + refresh_j + static_j
    offchip = stats.n_misses * ep.e_hit * ep.miss_offchip_multiplier
    return EnergyReport(hit_j, miss_j, write_j, refresh_j, static_j,
                        total, offchip)
