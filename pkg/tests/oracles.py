"""Independent reference implementations used to check the models.

These deliberately share no code with the package: the cache oracle keeps
per-line timestamps instead of recency lists, the RC oracle solves the
ladder's modal decomposition instead of summing moments, and the chain
oracle enumerates stage counts exhaustively.
"""

from __future__ import annotations

import numpy as np


def step_response_t50(segments, driver_r=0.0, load_c=0.0):
    """50% step-response delay of a pi-discretized RC ladder.

    Each (r, c) segment hangs c/2 at both ends; the far node carries the
    load.  Solved exactly through the eigendecomposition of the state
    matrix, then bisection on the monotone output voltage.
    """
    segs = [(r, c) for r, c in segments]
    n = len(segs)
    if n == 0:
        return 0.0
    # node 0 exists only behind a nonzero driver resistance
    has_drv = driver_r > 0
    n_nodes = n + (1 if has_drv else 0)
    caps = np.zeros(n_nodes)
    if has_drv:
        caps[0] += segs[0][1] / 2.0
        for i, (r, c) in enumerate(segs):
            caps[i + 1] += c / 2.0
            if i + 1 < n:
                caps[i + 1] += segs[i + 1][1] / 2.0
    else:
        for i, (r, c) in enumerate(segs):
            caps[i] += c / 2.0
            if i + 1 < n:
                caps[i] += segs[i + 1][1] / 2.0
    caps[-1] += load_c
    caps = np.maximum(caps, 1e-24)

    G = np.zeros((n_nodes, n_nodes))
    b = np.zeros(n_nodes)
    conds = []
    if has_drv:
        conds.append((None, 0, 1.0 / driver_r))
        for i, (r, c) in enumerate(segs):
            conds.append((i, i + 1, 1.0 / max(r, 1e-12)))
    else:
        conds.append((None, 0, 1.0 / max(segs[0][0], 1e-12)))
        for i, (r, c) in enumerate(segs[1:], start=0):
            conds.append((i, i + 1, 1.0 / max(segs[i + 1][0], 1e-12)))
    for a, bnode, g in conds:
        if a is None:
            G[bnode, bnode] += g
            b[bnode] += g
        else:
            G[a, a] += g
            G[bnode, bnode] += g
            G[a, bnode] -= g
            G[bnode, a] -= g

    A = -np.diag(1.0 / caps) @ G
    forcing = b / caps
    lam, V = np.linalg.eig(A)
    v_inf = np.linalg.solve(G, b)          # steady state (all ones)
    coeff = np.linalg.solve(V, -v_inf)     # v(t) = v_inf + V e^{lam t} coeff

    out = n_nodes - 1

    def v_out(t):
        return float(np.real(v_inf[out]
                             + V[out] @ (np.exp(lam * t) * coeff)))

    tau_max = float(np.max(-1.0 / np.real(lam)))
    hi = 200.0 * tau_max
    lo = 0.0
    if v_out(hi) < 0.5:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if v_out(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def best_stage_count(f, gamma, n_max=24):
    """Exhaustive argmin of the normalized chain delay N*(gamma+F^(1/N))."""
    best_n, best_t = 1, None
    for n in range(1, n_max + 1):
        t = n * (gamma + f ** (1.0 / n))
        if best_t is None or t < best_t - 1e-15:
            best_n, best_t = n, t
    return best_n


class FunctionalCache:
    """Reference set-associative LRU cache tracking per-line timestamps."""

    def __init__(self, capacity_bytes, line_bytes, ways):
        self.sets = capacity_bytes // (line_bytes * ways)
        self.ways = ways
        self.line_shift = line_bytes.bit_length() - 1
        self.set_mask = self.sets - 1
        self.store = [dict() for _ in range(self.sets)]  # tag -> last use
        self.clock = 0

    def access(self, address):
        """Returns True on hit; allocates on miss (LRU victim)."""
        self.clock += 1
        line = address >> self.line_shift
        idx = line & self.set_mask
        tag = line >> (self.sets.bit_length() - 1)
        entry = self.store[idx]
        if tag in entry:
            entry[tag] = self.clock
            return True
        if len(entry) >= self.ways:
            victim = min(entry, key=entry.get)
            del entry[victim]
        entry[tag] = self.clock
        return False
