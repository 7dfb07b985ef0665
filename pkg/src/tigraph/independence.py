"""Exact and greedy maximum independent set computation on UGraphs.

The exact solver is branch-and-bound on bit-packed candidate masks: branch
on a maximum-degree vertex (exclude it, or include it and delete its closed
neighborhood), prune with a greedy clique-cover upper bound, and apply
degree-0/degree-1/domination reductions.  All tie-breaking is by lowest
vertex index, so witnesses are reproducible.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import SizeCapExceeded
from .graph import UGraph, bits_of

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class IndependenceResult:
    size: int
    witness: tuple[int, ...]
    exact: bool


class _BudgetExhausted(Exception):
    pass


class _Solver:
    def __init__(self, adj: tuple[int, ...], budget: int):
        self.adj = adj
        self.closed = tuple(a | (1 << v) for v, a in enumerate(adj))
        self.budget = budget
        self.nodes = 0
        self.best_size = 0
        self.best_mask = 0

    def _cover_bound(self, p: int) -> int:
        # Greedy clique cover: each class is a clique, so any independent
        # set meets it at most once.
        adj = self.adj
        joints: list[int] = []
        bound = 0
        m = p
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            for k, joint in enumerate(joints):
                if joint >> v & 1:
                    joints[k] = joint & adj[v]
                    break
            else:
                joints.append(adj[v])
                bound += 1
        return bound

    def _greedy(self, p: int) -> int:
        adj = self.adj
        chosen = 0
        while p:
            best_v = -1
            best_d = 1 << 62
            m = p
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                d = (adj[v] & p).bit_count()
                if d < best_d:
                    best_d = d
                    best_v = v
            chosen |= 1 << best_v
            p &= ~self.closed[best_v]
        return chosen

    def _reduce(self, p: int, chosen: int) -> tuple[int, int]:
        adj = self.adj
        changed = True
        while changed:
            changed = False
            m = p
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                if not p & low:  # removed earlier in this sweep
                    continue
                nb = adj[v] & p
                if nb == 0:
                    chosen |= low
                    p ^= low
                    changed = True
                elif nb & (nb - 1) == 0:
                    # single neighbor: taking v is never worse
                    chosen |= low
                    p &= ~(nb | low)
                    changed = True
        return p, chosen

    def solve(self, p: int, chosen: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        p, chosen = self._reduce(p, chosen)
        size = chosen.bit_count()
        if size > self.best_size:
            self.best_size = size
            self.best_mask = chosen
        if not p:
            return
        if size + self._cover_bound(p) <= self.best_size:
            return
        # branch vertex: maximum degree within p, lowest index on ties
        adj = self.adj
        best_v = -1
        best_d = -1
        m = p
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (adj[v] & p).bit_count()
            if d > best_d:
                best_d = d
                best_v = v
        self.solve(p & ~self.closed[best_v], chosen | (1 << best_v))
        self.solve(p & ~(1 << best_v), chosen)


def _dominated_pruned(adj: tuple[int, ...], closed: tuple[int, ...], p: int) -> int:
    # If u, v are adjacent and N[u] subset of N[v], some maximum independent
    # set avoids v; drop the higher-indexed vertex on exact ties.
    removed = True
    while removed:
        removed = False
        m = p
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            cu = closed[u] & p
            nb = adj[u] & p
            while nb:
                nlow = nb & -nb
                v = nlow.bit_length() - 1
                nb ^= nlow
                cv = closed[v] & p
                if cu & ~cv == 0 and (cu != cv or u < v):
                    p ^= nlow
                    removed = True
            if removed:
                break
    return p


def max_independent_set(g: UGraph, budget: int = DEFAULT_BUDGET) -> IndependenceResult:
    """Maximum independent set with witness; exact unless the budget runs out.

    Budget counts branch-and-bound node expansions.  On exhaustion the best
    set found so far is returned with ``exact=False`` (still a valid
    independent set, hence still usable as a certificate).
    """
    try:
        adj = g.adj
    except SizeCapExceeded:
        # too large for bitset search: fall back to the sparse greedy
        res = greedy_independent_set(g)
        return IndependenceResult(res.size, res.witness, False)
    n = g.n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * n + 100))
    solver = _Solver(adj, budget)
    full = (1 << n) - 1

    # independent components can be solved separately
    chosen_total = 0
    exact = True
    seen = 0
    for v in range(n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            fm = frontier
            while fm:
                low = fm & -fm
                u = low.bit_length() - 1
                fm ^= low
                nxt |= adj[u] & ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        comp = _dominated_pruned(adj, solver.closed, comp)
        solver.best_size = 0
        solver.best_mask = 0
        greedy_mask = solver._greedy(comp)
        solver.best_size = greedy_mask.bit_count()
        solver.best_mask = greedy_mask
        try:
            solver.solve(comp, 0)
        except _BudgetExhausted:
            exact = False
        chosen_total |= solver.best_mask
        if not exact:
            # budget gone: greedily finish the remaining components
            rest = full & ~seen
            if rest:
                rest_chosen = solver._greedy(rest)
                chosen_total |= rest_chosen
                seen = full
            break

    witness = tuple(v + 1 for v in bits_of(chosen_total))
    w_set = set(witness)
    for a, b in g.edges:
        assert not (a in w_set and b in w_set), "witness is not independent"
    return IndependenceResult(len(witness), witness, exact)


def greedy_independent_set(g: UGraph) -> IndependenceResult:
    """Minimum-degree greedy independent set (lowest index on ties).

    Works on sparse adjacency with a lazy heap, so it remains usable on
    graphs far too large for the exact search.  ``exact`` is set only when
    every vertex was taken.
    """
    import heapq

    degrees = {v: g.degree(v) for v in range(1, g.n + 1)}
    alive = set(degrees)
    heap = [(d, v) for v, d in degrees.items()]
    heapq.heapify(heap)
    chosen: list[int] = []
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or degrees[v] != d:  # stale entry
            continue
        chosen.append(v)
        dropped = (g.adj_sets[v - 1] & alive) | {v}
        alive -= dropped
        for u in dropped:
            for w in g.adj_sets[u - 1]:
                if w in alive:
                    degrees[w] -= 1
                    heapq.heappush(heap, (degrees[w], w))
    chosen.sort()
    c_set = set(chosen)
    for a, b in g.edges:
        assert not (a in c_set and b in c_set), "witness is not independent"
    return IndependenceResult(len(chosen), tuple(chosen), len(chosen) == g.n)
