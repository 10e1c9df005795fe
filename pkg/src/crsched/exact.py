"""Exact solvers for the four period-scheduling objectives.

All four programs share one feasible set over binary assignment tensors
X[i, f, t]: every SU receives at least one (frequency, slot) pair, a pair
carries at most one SU, and an SU occupies at most antennas[i] frequencies
within a slot.

Because rates are constant across the slots of one period, every objective
depends only on the usage counts n[i, f] = sum_t X[i, f, t].  A count matrix
is realizable as a slot layout iff

    n[i, f] <= T,   sum_i n[i, f] <= T,   sum_f n[i, f] <= antennas[i] * T,

the classic timetabling condition; a concrete layout is recovered with a
bipartite edge coloring (Koenig: bipartite chromatic index equals max
degree).  Throughput maximization over counts is an integral min-cost flow;
the fair objectives run a depth-first branch and bound over count variables
seeded with the greedy schedule.  brute_force enumerates raw X tensors and
is deliberately independent of the count reduction so it can vouch for it.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace

import numpy as np

from .channel import _as_rates
from .fairness import FairnessState, effective_objective_offsets
from .heuristic import HeuristicMode, greedy_fair_schedule
from .metrics import jain_index
from .params import Schedule, SimParams

OBJECTIVE_KINDS = ("thrmax", "maxmin", "wmaxmin", "propfair")

DEFAULT_NODE_BUDGET = 10_000_000
ORACLE_CANDIDATE_LIMIT = 10_000_000

_EPS = 1e-12
_INF = math.inf


class Infeasible(ValueError):
    """No assignment can give every SU a pair (more SUs than pairs)."""


class TooLarge(ValueError):
    """Instance exceeds the enumeration oracle's candidate budget."""


class NoFeasiblePhi(ValueError):
    """No window candidate satisfies the side constraint."""


@dataclass(frozen=True, eq=False)
class SolveResult:
    schedule: Schedule
    objective: float
    nodes_explored: int
    proven_optimal: bool


def _better_key(key, best) -> bool:
    """Strict lexicographic improvement; eps applies to the value component only."""
    if best is None:
        return True
    if len(key) == 1:
        return key[0] > best[0] + _EPS
    return key[0] > best[0] or (key[0] == best[0] and key[1] > best[1] + _EPS)


# ---------------------------------------------------------------------------
# count matrix -> slot layout (bipartite edge coloring)
# ---------------------------------------------------------------------------

def realize_counts(counts: np.ndarray, antennas: np.ndarray, t_cnt: int) -> np.ndarray:
    """Lay integer (SU, frequency) usage counts out over t_cnt slots.

    Each SU is expanded into one vertex per antenna and its count units are
    dealt round-robin across those clones, keeping every clone degree at or
    below t_cnt; a proper t_cnt-edge-coloring of the resulting bipartite
    multigraph then names the slot of every unit.
    """
    n, f_cnt = counts.shape
    clone0 = np.concatenate([[0], np.cumsum(antennas)])
    n_clones = int(clone0[-1])
    ends = []          # (clone_vertex, freq_vertex)
    owner = []         # (su, freq) per edge
    for i in range(n):
        k = 0
        a = int(antennas[i])
        for f in range(f_cnt):
            for _ in range(int(counts[i, f])):
                ends.append((int(clone0[i]) + k % a, n_clones + f))
                owner.append((i, f))
                k += 1
    n_vertices = n_clones + f_cnt
    color_at = np.full((n_vertices, t_cnt), -1, dtype=np.int64)
    edge_color = np.full(len(ends), -1, dtype=np.int64)

    def first_free(v):
        row = color_at[v]
        for c in range(t_cnt):
            if row[c] < 0:
                return c
        raise AssertionError("vertex degree exceeds the slot count")

    for e, (x, y) in enumerate(ends):
        common = -1
        for c in range(t_cnt):
            if color_at[x, c] < 0 and color_at[y, c] < 0:
                common = c
                break
        if common < 0:
            a_col = first_free(x)
            b_col = first_free(y)
            # flip the maximal a/b alternating path starting from y; it cannot
            # reach x (parity), after which a is free at both endpoints
            path = []
            v, col = y, a_col
            while color_at[v, col] >= 0:
                e2 = int(color_at[v, col])
                path.append(e2)
                x2, y2 = ends[e2]
                v = y2 if v == x2 else x2
                col = b_col if col == a_col else a_col
            olds = [int(edge_color[e2]) for e2 in path]
            for e2, old in zip(path, olds):
                for w in ends[e2]:
                    if color_at[w, old] == e2:
                        color_at[w, old] = -1
            for e2, old in zip(path, olds):
                new = b_col if old == a_col else a_col
                edge_color[e2] = new
                for w in ends[e2]:
                    color_at[w, new] = e2
            common = a_col
        color_at[x, common] = e
        color_at[y, common] = e
        edge_color[e] = common

    assign = np.zeros((n, f_cnt, t_cnt), dtype=np.int8)
    for e, (i, f) in enumerate(owner):
        assign[i, f, int(edge_color[e])] = 1
    if not np.array_equal(assign.sum(axis=2), counts):
        raise AssertionError("slot layout does not reproduce the count matrix")
    return assign


# ---------------------------------------------------------------------------
# throughput maximization: successive-shortest-path min-cost flow over counts
# ---------------------------------------------------------------------------

def _max_profit_counts(values: np.ndarray, row_caps: np.ndarray, col_cap: int) -> np.ndarray:
    """Max sum(values * n) over counts with column caps, row caps and row minimum 1.

    Min-cost flow on source -> SU -> frequency -> sink with profit edges; the
    per-SU coverage unit is forced through a side source, remaining flow is
    augmented along negative-cost shortest paths only.  The layered graph is
    acyclic so successive shortest paths with potentials stay exact.
    """
    n, f_cnt = values.shape
    src = 0
    row0 = 1
    col0 = 1 + n
    snk = 1 + n + f_cnt
    cover = 2 + n + f_cnt
    n_nodes = 3 + n + f_cnt

    to, cap, cost = [], [], []
    adj = [[] for _ in range(n_nodes)]

    def add(u, v, c, w):
        adj[u].append(len(to)); to.append(v); cap.append(c); cost.append(w)
        adj[v].append(len(to)); to.append(u); cap.append(0); cost.append(-w)

    for i in range(n):
        add(cover, row0 + i, 1, 0.0)
        if row_caps[i] > 1:
            add(src, row0 + i, int(row_caps[i]) - 1, 0.0)
    profit_edge = np.empty((n, f_cnt), dtype=np.int64)
    for i in range(n):
        for f in range(f_cnt):
            profit_edge[i, f] = len(to)
            add(row0 + i, col0 + f, col_cap, -float(values[i, f]))
    for f in range(f_cnt):
        add(col0 + f, snk, col_cap, 0.0)

    colmax = values.max(axis=0).astype(float) if n else np.zeros(f_cnt)
    pi = [0.0] * n_nodes
    for f in range(f_cnt):
        pi[col0 + f] = -float(colmax[f])
    pi[snk] = -float(colmax.max()) if f_cnt else 0.0

    def dijkstra(start):
        dist = [_INF] * n_nodes
        par = [-1] * n_nodes
        dist[start] = 0.0
        heap = [(0.0, start)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v] + 1e-12:
                continue
            for e in adj[v]:
                if cap[e] <= 0:
                    continue
                w = to[e]
                nd = d + cost[e] + pi[v] - pi[w]
                if nd < dist[w] - 1e-12:
                    dist[w] = nd
                    par[w] = e
                    heapq.heappush(heap, (nd, w))
        return dist, par

    def settle(start):
        dist, par = dijkstra(start)
        if dist[snk] == _INF:
            return None
        true_cost = dist[snk] + pi[snk] - pi[start]
        lim = dist[snk]
        for v in range(n_nodes):
            pi[v] += min(dist[v], lim) if dist[v] != _INF else lim
        # bottleneck augmentation along the parent chain
        bottleneck = _INF
        v = snk
        while v != start:
            e = par[v]
            bottleneck = min(bottleneck, cap[e])
            v = to[e ^ 1]
        v = snk
        while v != start:
            e = par[v]
            cap[e] -= bottleneck
            cap[e ^ 1] += bottleneck
            v = to[e ^ 1]
        return true_cost

    for _ in range(n):            # coverage units, one per SU
        if settle(cover) is None:
            raise Infeasible("cannot give every SU a (frequency, slot) pair")
    while True:                   # profitable flow only
        dist, _ = dijkstra(src)
        if dist[snk] == _INF or dist[snk] + pi[snk] - pi[src] >= -1e-9:
            break
        settle(src)

    counts = np.empty((n, f_cnt), dtype=np.int64)
    for i in range(n):
        for f in range(f_cnt):
            counts[i, f] = cap[int(profit_edge[i, f]) ^ 1]
    return counts


def solve_throughput_max(u, p: SimParams) -> SolveResult:
    """Maximize total throughput subject to coverage, collision and antenna limits."""
    rates = np.asarray(_as_rates(u))
    n, f_cnt = rates.shape
    t_cnt = p.slots_per_period
    if n > f_cnt * t_cnt:
        raise Infeasible(f"{n} SUs exceed {f_cnt}x{t_cnt} available pairs")
    antennas = np.asarray(p.antennas)
    counts = _max_profit_counts(rates.astype(float), antennas * t_cnt, t_cnt)
    sched = Schedule.from_assign(realize_counts(counts, antennas, t_cnt), rates)
    return SolveResult(schedule=sched, objective=float(sched.per_su_throughput.sum()),
                       nodes_explored=0, proven_optimal=True)


# ---------------------------------------------------------------------------
# fair objectives: branch and bound over count variables
# ---------------------------------------------------------------------------

class _Budget(Exception):
    pass


class _CountsBnB:
    """Depth-first search over n[i, f] with per-SU relaxation bounds.

    An SU's objective term is offsets[i] + scales[i] * sum_f u[i, f] n[i, f].
    Bounds combine the per-SU best case (fill the SU's best frequencies
    alone) with a shared-capacity waterfill; children are value-ordered so
    the first dive lifts the bottleneck SU to the waterfill level and then
    fills residual capacity by rate, which also fixes the reported schedule
    among ties deterministically.
    """

    def __init__(self, u, offsets, scales, p, kind):
        self.u = np.asarray(u, dtype=float)
        self.n, self.f_cnt = self.u.shape
        self.t_cnt = p.slots_per_period
        self.off = np.asarray(offsets, dtype=float)
        self.sc = np.asarray(scales, dtype=float)
        self.kind = kind
        self.row_order = np.argsort(-self.u, axis=1, kind="stable")
        self.col_avail = np.full(self.f_cnt, self.t_cnt, dtype=np.int64)
        self.rem_row = np.asarray(p.antennas) * self.t_cnt
        self.raw = np.zeros(self.n)
        self.units = np.zeros(self.n, dtype=np.int64)
        self.undecided = np.ones((self.n, self.f_cnt), dtype=bool)
        self.counts = np.zeros((self.n, self.f_cnt), dtype=np.int64)
        self.nodes = 0
        self.budget = DEFAULT_NODE_BUDGET
        self.best_key = None
        self.best_counts = None

    # -- objective keys ----------------------------------------------------
    def _leaf_key(self):
        blend = self.off + self.sc * self.raw
        if self.kind == "maxmin":
            return (float(blend.min()),)
        pos = blend > 0
        logsum = float(np.log(blend[pos]).sum()) if pos.any() else 0.0
        return (int(pos.sum()), logsum)

    @staticmethod
    def _beats(a, b):
        return _better_key(a, b)

    def seed(self, counts, raw):
        blend = self.off + self.sc * raw
        if self.kind == "maxmin":
            key = (float(blend.min()),)
        else:
            pos = blend > 0
            key = (int(pos.sum()), float(np.log(blend[pos]).sum()) if pos.any() else 0.0)
        if self._beats(key, self.best_key):
            self.best_key = key
            self.best_counts = counts.copy()

    # -- bounding ----------------------------------------------------------
    def _per_su_maxadd(self):
        maxadd = np.zeros(self.n)
        for i in range(self.n):
            rem = int(self.rem_row[i])
            if rem <= 0:
                continue
            row_u = self.u[i]
            und = self.undecided[i]
            acc = 0.0
            for f in self.row_order[i]:
                if rem <= 0 or row_u[f] <= 0:
                    break
                if not und[f]:
                    continue
                take = min(int(self.col_avail[f]), rem)
                if take > 0:
                    acc += row_u[f] * take
                    rem -= take
            maxadd[i] = acc
        return maxadd

    def _x_total(self):
        mask = self.undecided & (self.rem_row > 0)[:, None]
        colmax = np.where(mask, self.u, 0.0).max(axis=0, initial=0.0)
        return float((self.col_avail * colmax).sum())

    def _waterfill_min(self, base, maxadd, x_total):
        # max of min(base + sc * x) with x <= maxadd and sum x <= x_total
        hi = float((base + self.sc * maxadd).min())
        lo = float(base.min())
        if hi <= lo:
            return hi, lo
        def need(z):
            return float(np.minimum(maxadd, np.maximum(0.0, (z - base) / self.sc)).sum())
        if need(hi) <= x_total + 1e-9:
            return hi, hi
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            if need(mid) <= x_total:
                lo = mid
            else:
                hi = mid
        return hi, lo

    def _waterfill_logsum(self, levels, maxadd, x_total, pos_mask):
        # max sum log(sc * y), y in [levels, levels + maxadd], sum(y - levels) <= x_total
        caps = levels + maxadd
        if float(maxadd[pos_mask].sum()) <= x_total + 1e-9:
            y = caps
            w = float(caps.max(initial=0.0))
        else:
            lo, hi = float(levels.min(initial=0.0)), float(caps.max(initial=0.0))
            for _ in range(40):
                mid = 0.5 * (lo + hi)
                used = float(np.minimum(np.maximum(mid - levels, 0.0), maxadd).sum())
                if used <= x_total:
                    lo = mid
                else:
                    hi = mid
            w = hi
            y = np.minimum(np.maximum(w, levels), caps)
        vals = self.sc * y
        safe = np.maximum(vals[pos_mask], 1e-300)
        return float(np.log(safe).sum()), w

    # -- search ------------------------------------------------------------
    def run(self, node_budget):
        self.budget = node_budget
        try:
            self._dfs()
            return True
        except _Budget:
            return False

    def _dfs(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        open_row = (self.rem_row > 0) & (self.undecided & (self.col_avail > 0)[None, :]).any(axis=1)
        uncovered = self.units == 0
        if (uncovered & ~open_row).any():
            return  # an uncovered SU has no pair left to take
        if int(uncovered.sum()) > int(self.col_avail.sum()):
            return
        maxadd = self._per_su_maxadd()
        base = self.off + self.sc * self.raw
        bestblend = base + self.sc * maxadd

        if self.kind == "maxmin":
            cheap = float(bestblend.min())
            if self.best_key is not None and cheap <= self.best_key[0] + _EPS:
                return
            x_total = self._x_total()
            bound, target = self._waterfill_min(base, maxadd, x_total)
            if self.best_key is not None and bound <= self.best_key[0] + _EPS:
                return
        else:
            pos_mask = bestblend > 0
            npos_bound = int(pos_mask.sum())
            if self.best_key is not None and npos_bound < self.best_key[0]:
                return
            cheap = float(np.log(np.maximum(bestblend[pos_mask], 1e-300)).sum()) if npos_bound else 0.0
            if (self.best_key is not None and npos_bound == self.best_key[0]
                    and cheap <= self.best_key[1] + _EPS):
                return
            x_total = self._x_total()
            levels = base / self.sc
            logsum_bound, target = self._waterfill_logsum(levels, maxadd, x_total, pos_mask)
            if (self.best_key is not None and npos_bound == self.best_key[0]
                    and logsum_bound <= self.best_key[1] + _EPS):
                return

        if not open_row.any():
            if uncovered.any():
                return
            key = self._leaf_key()
            if self._beats(key, self.best_key):
                self.best_key = key
                self.best_counts = self.counts.copy()
            return

        # pick the SU to serve: uncovered first (hardest-first), else the
        # one whose term sits lowest
        if (uncovered & open_row).any():
            cand = np.nonzero(uncovered & open_row)[0]
            j = int(cand[np.argmin(bestblend[cand])])
        else:
            cand = np.nonzero(open_row)[0]
            if self.kind == "maxmin":
                j = int(cand[np.argmin(base[cand])])
            else:
                j = int(cand[np.argmin((base / self.sc)[cand])])
        f = -1
        for fc in self.row_order[j]:
            if self.undecided[j, fc] and self.col_avail[fc] > 0:
                f = int(fc)
                break
        if f < 0:
            return

        v_max = int(min(self.t_cnt, self.col_avail[f], self.rem_row[j]))
        ujf = self.u[j, f]
        if ujf <= 0:
            values = [1, 0] if self.units[j] == 0 else [0]
        else:
            if self.kind == "maxmin":
                gap = (target - base[j]) / (self.sc[j] * ujf)
            else:
                gap = (target - base[j] / self.sc[j]) / ujf
            if gap > 0:
                primary = min(v_max, int(math.ceil(gap - 1e-9)))
            else:
                primary = v_max
            values = [primary] + [v for v in range(v_max, -1, -1) if v != primary]

        for v in values:
            if v > v_max:
                continue
            self.undecided[j, f] = False
            if v:
                self.counts[j, f] = v
                self.col_avail[f] -= v
                self.rem_row[j] -= v
                self.raw[j] += ujf * v
                self.units[j] += v
            self._dfs()
            if v:
                self.counts[j, f] = 0
                self.col_avail[f] += v
                self.rem_row[j] += v
                self.raw[j] -= ujf * v
                self.units[j] -= v
            self.undecided[j, f] = True


def _solve_blend(u, offsets, scales, p, kind, heuristic_mode, node_budget):
    rates = np.asarray(_as_rates(u))
    n, f_cnt = rates.shape
    t_cnt = p.slots_per_period
    if n > f_cnt * t_cnt:
        raise Infeasible(f"{n} SUs exceed {f_cnt}x{t_cnt} available pairs")
    engine = _CountsBnB(rates, offsets, scales, p, kind)
    seed_sched = greedy_fair_schedule(rates, p, heuristic_mode)
    seed_counts = seed_sched.assign.sum(axis=2).astype(np.int64)
    engine.seed(seed_counts, (seed_counts * rates).sum(axis=1).astype(float))
    proven = engine.run(node_budget)
    counts = engine.best_counts
    sched = Schedule.from_assign(realize_counts(counts, np.asarray(p.antennas), t_cnt), rates)
    key = engine.best_key
    if kind == "maxmin":
        objective = key[0]
    else:
        objective = key[1] if key[0] == n else float("-inf")
    return SolveResult(schedule=sched, objective=float(objective),
                       nodes_explored=engine.nodes, proven_optimal=proven)


def solve_maxmin(u, fs: FairnessState, p: SimParams,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Maximize the minimum windowed per-SU throughput term."""
    off, sc = effective_objective_offsets(fs, p)
    return _solve_blend(u, off, sc, p, "maxmin", HeuristicMode.MAXMIN, node_budget)


def solve_weighted_maxmin(u, fs: FairnessState, p: SimParams,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Maximize the minimum share-normalized windowed throughput term."""
    off, sc = effective_objective_offsets(fs, p, weighted=True)
    return _solve_blend(u, off, sc, p, "maxmin", HeuristicMode.WEIGHTED_MAXMIN, node_budget)


def solve_propfair(u, fs: FairnessState, p: SimParams,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Maximize the sum of logs of the windowed per-SU throughput terms.

    When some SU's argument is zero in every feasible schedule the objective
    is reported as -inf and the returned schedule maximizes first the number
    of positive terms, then the sum of their logs.
    """
    off, sc = effective_objective_offsets(fs, p)
    return _solve_blend(u, off, sc, p, "propfair", HeuristicMode.PROPFAIR, node_budget)


def solve_exact(kind: str, u, fs: FairnessState, p: SimParams,
                node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Dispatch an exact solve by objective kind."""
    if kind == "thrmax":
        return solve_throughput_max(u, p)
    if kind == "maxmin":
        return solve_maxmin(u, fs, p, node_budget)
    if kind == "wmaxmin":
        return solve_weighted_maxmin(u, fs, p, node_budget)
    if kind == "propfair":
        return solve_propfair(u, fs, p, node_budget)
    raise ValueError(f"unknown objective kind {kind!r}")


# ---------------------------------------------------------------------------
# enumeration oracle over raw assignment tensors
# ---------------------------------------------------------------------------

def brute_force(u, fs: FairnessState, p: SimParams, objective_kind: str,
                chunk: int = 65536) -> SolveResult:
    """Exhaustively enumerate feasible X tensors and return the exact optimum.

    Judges feasibility and objectives directly on the tensor, independent of
    the count reduction and the search code above.  The candidate space
    (N+1)^(F*T) must stay below the 1e7 oracle budget.
    """
    if objective_kind not in OBJECTIVE_KINDS:
        raise ValueError(f"unknown objective kind {objective_kind!r}")
    rates = np.asarray(_as_rates(u))
    n, f_cnt = rates.shape
    t_cnt = p.slots_per_period
    pairs = f_cnt * t_cnt
    if n > pairs:
        raise Infeasible(f"{n} SUs exceed {pairs} available pairs")
    space = (n + 1) ** pairs
    if space > ORACLE_CANDIDATE_LIMIT:
        raise TooLarge(f"{space} candidates exceed the {ORACLE_CANDIDATE_LIMIT} oracle budget")

    m = min(fs.k, p.window)
    w_old, w_new = 1.0 - 1.0 / m, 1.0 / m
    pair_f = np.arange(pairs) // t_cnt
    uvec = rates[:, pair_f].astype(float)
    antennas = np.asarray(p.antennas)
    radix = (n + 1) ** np.arange(pairs - 1, -1, -1, dtype=np.int64)

    best_key = None
    best_choice = None
    n_feasible = 0
    for start in range(0, space, chunk):
        g = np.arange(start, min(start + chunk, space), dtype=np.int64)
        digits = (g[:, None] // radix) % (n + 1)
        oh = digits[:, :, None] == np.arange(n)[None, None, :]
        covered = (oh.sum(axis=1) >= 1).all(axis=1)
        slot_load = oh.reshape(len(g), f_cnt, t_cnt, n).sum(axis=1)
        within_ant = (slot_load <= antennas[None, None, :]).all(axis=(1, 2))
        feas = covered & within_ant
        if not feas.any():
            continue
        n_feasible += int(feas.sum())
        raw = np.einsum("bpn,np->bn", oh[feas].astype(float), uvec)
        blend = w_old * fs.r[None, :] + w_new * (raw / t_cnt)
        if objective_kind == "propfair":
            pos = blend > 0
            n_pos = pos.sum(axis=1)
            logs = np.where(pos, np.log(np.maximum(blend, 1e-300)), 0.0).sum(axis=1)
            top = int(n_pos.max())
            sub = np.nonzero(n_pos == top)[0]
            row = int(sub[np.argmax(logs[sub])])
            key = (top, float(logs[row]))
        else:
            if objective_kind == "thrmax":
                vals = raw.sum(axis=1) / t_cnt
            elif objective_kind == "maxmin":
                vals = blend.min(axis=1)
            else:
                vals = (blend / p.weights[None, :]).min(axis=1)
            row = int(np.argmax(vals))
            key = (float(vals[row]),)
        if _better_key(key, best_key):
            best_key = key
            best_choice = digits[np.nonzero(feas)[0][row]].copy()
    if best_choice is None:
        raise Infeasible("no feasible assignment exists")

    assign = np.zeros((n, f_cnt, t_cnt), dtype=np.int8)
    for pair, who in enumerate(best_choice):
        if who < n:
            assign[int(who), pair // t_cnt, pair % t_cnt] = 1
    sched = Schedule.from_assign(assign, rates)
    if objective_kind == "propfair":
        objective = best_key[1] if best_key[0] == n else float("-inf")
    else:
        objective = best_key[0]
    return SolveResult(schedule=sched, objective=float(objective),
                       nodes_explored=n_feasible, proven_optimal=True)


# ---------------------------------------------------------------------------
# window grid search for the side-constrained variants
# ---------------------------------------------------------------------------

def solve_phi_search(u, fs: FairnessState, p: SimParams, mode: str, threshold: float,
                     candidates, node_budget: int = DEFAULT_NODE_BUDGET):
    """Grid search over window candidates for the side-constrained programs.

    Solves the weighted max-min program once per candidate window (the
    accumulated history is held fixed; only the current blend weight moves)
    and keeps the best objective among candidates whose schedule meets the
    side constraint: current-period total throughput >= threshold
    (mode "min_total") or fairness index >= threshold (mode "min_jain").
    """
    if mode not in ("min_total", "min_jain"):
        raise ValueError(f"unknown side-constraint mode {mode!r}")
    candidates = list(candidates)
    if not candidates:
        raise NoFeasiblePhi("empty window candidate list")
    best = None
    for phi in candidates:
        res = solve_weighted_maxmin(u, fs, replace(p, window=int(phi)), node_budget)
        thr = res.schedule.per_su_throughput
        if mode == "min_total":
            ok = float(thr.sum()) >= threshold - 1e-9
        else:
            j = jain_index(thr)
            ok = j is not None and j >= threshold - 1e-9
        if ok and (best is None or res.objective > best[1].objective + _EPS):
            best = (int(phi), res)
    if best is None:
        raise NoFeasiblePhi(f"no window candidate satisfies {mode} >= {threshold}")
    return best
