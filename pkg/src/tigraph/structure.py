"""Irreducible decomposition, periods, primitive components, primitivity index."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .errors import NotPrimitiveError, SizeCapExceeded, ValidationError
from .graph import Digraph

# Direct primitivity search needs n^2-bit scratch matrices; refuse beyond this.
MAX_PRIMITIVITY_VERTICES = 16_384


def wielandt_cap(n: int) -> int:
    """Largest possible primitivity index of a primitive graph on n vertices."""
    return n * n - 2 * n + 2


def scc_decompose(t: Digraph) -> list[tuple[int, ...]]:
    """Strongly connected components, topologically ordered.

    The condensation order is made canonical by breaking ties toward the
    component containing the smallest vertex; vertices inside each component
    are sorted ascending.
    """
    comps = _tarjan(t.n, t.succ)
    comp_of = {}
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    out_edges: list[set[int]] = [set() for _ in comps]
    in_deg = [0] * len(comps)
    for i, row in enumerate(t.succ, start=1):
        for j in row:
            a, b = comp_of[i], comp_of[j]
            if a != b and b not in out_edges[a]:
                out_edges[a].add(b)
                in_deg[b] += 1
    heap = [(min(comp), k) for k, comp in enumerate(comps) if in_deg[k] == 0]
    heapq.heapify(heap)
    order: list[tuple[int, ...]] = []
    while heap:
        _, k = heapq.heappop(heap)
        order.append(tuple(sorted(comps[k])))
        for b in out_edges[k]:
            in_deg[b] -= 1
            if in_deg[b] == 0:
                heapq.heappush(heap, (min(comps[b]), b))
    return order


def _tarjan(n: int, succ: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    index = [0] * (n + 1)  # 0 = unvisited
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 1
    for root in range(1, n + 1):
        if index[root]:
            continue
        work = [(root, iter(succ[root - 1]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w - 1])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def period(t: Digraph, scc: Iterable[int]) -> int:
    """gcd of the lengths of all cycles through the given component.

    Cycle length counts edge steps.  Computed as the gcd of
    level(u) + 1 - level(v) over the component's edges, with levels from a
    BFS layering.
    """
    comp = sorted(set(scc))
    members = set(comp)
    root = comp[0]
    level = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in t.succ[u - 1]:
                if w in members and w not in level:
                    level[w] = level[u] + 1
                    nxt.append(w)
        frontier = nxt
    if len(level) != len(members):
        raise ValidationError("vertex set is not a single strongly connected component")
    g = 0
    for u in comp:
        for w in t.succ[u - 1]:
            if w in members:
                g = gcd(g, level[u] + 1 - level[w])
    if g == 0:
        raise ValidationError("component contains no cycle; period undefined")
    return abs(g)


def primitive_components(t: Digraph, scc: Iterable[int]) -> list[tuple[tuple[int, ...], Digraph]]:
    """Split one SCC of period p into its p cyclic classes.

    Returns, for each class in cyclic order starting at the class of the
    smallest vertex, the class vertex tuple and the class-transition digraph
    (reindexed onto 1..|class|): edges are the length-p paths of T that stay
    inside the SCC.  Each returned digraph is primitive.
    """
    comp = sorted(set(scc))
    members = set(comp)
    p = period(t, comp)
    root = comp[0]
    level = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in t.succ[u - 1]:
                if w in members and w not in level:
                    level[w] = level[u] + 1
                    nxt.append(w)
        frontier = nxt

    classes: list[list[int]] = [[] for _ in range(p)]
    for v in comp:
        classes[level[v] % p].append(v)
    for cls in classes:
        cls.sort()

    # p-th boolean power restricted to the SCC, via local bitset rows.
    local = {v: k for k, v in enumerate(comp)}
    rows = [0] * len(comp)
    for v in comp:
        for w in t.succ[v - 1]:
            if w in members:
                rows[local[v]] |= 1 << local[w]
    power = rows
    for _ in range(p - 1):
        power = _bool_mul(power, rows)

    out = []
    for cls in classes:
        pos = {v: k for k, v in enumerate(cls)}
        edges = []
        for v in cls:
            reach = power[local[v]]
            for w in cls:
                if reach >> local[w] & 1:
                    edges.append((pos[v] + 1, pos[w] + 1))
        out.append((tuple(cls), Digraph.from_edges(len(cls), edges)))
    return out


def _bool_mul(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...]) -> list[int]:
    """Boolean matrix product on bit-packed rows: out[i] = OR of b[j] for j in a[i]."""
    out = []
    for ra in a:
        acc = 0
        m = ra
        while m:
            low = m & -m
            acc |= b[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return out


def primitivity_index(t: Digraph, cap: int | None = None) -> int:
    """Least k with the k-th boolean power of the adjacency matrix all-positive.

    Searches incrementally up to ``cap`` (default: the Wielandt bound
    n^2 - 2n + 2) and raises NotPrimitiveError beyond it, which signals a
    period > 1 or a non-irreducible input.
    """
    n = t.n
    if n > MAX_PRIMITIVITY_VERTICES:
        raise SizeCapExceeded(f"primitivity search unavailable for n={n}")
    if cap is None:
        cap = wielandt_cap(n)
    full = (1 << n) - 1
    rows = list(t.rows)
    power = rows
    k = 1
    while k <= cap:
        if all(r == full for r in power):
            return k
        power = _bool_mul(power, rows)
        k += 1
    raise NotPrimitiveError(f"no all-positive power up to cap {cap}")


def is_primitive(t: Digraph) -> bool:
    """True iff t is strongly connected with period 1 (and has a cycle)."""
    comps = scc_decompose(t)
    if len(comps) != 1:
        return False
    comp = comps[0]
    if len(comp) == 1 and not t.has_edge(comp[0], comp[0]):
        return False
    return period(t, comp) == 1


@dataclass(frozen=True)
class StructureReport:
    """Per-SCC decomposition data.

    ``periods[k]`` is None for a singleton SCC without a self-loop (no
    recurrent dynamics); ``components[k]`` lists that SCC's cyclic classes
    with their class-transition digraphs, and ``gammas[k]`` the matching
    primitivity indices (None where the search cap was hit).
    """

    sccs: tuple[tuple[int, ...], ...]
    periods: tuple[int | None, ...]
    components: tuple[tuple[tuple[tuple[int, ...], Digraph], ...] | None, ...]
    gammas: tuple[tuple[int | None, ...] | None, ...]


def analyze_structure(t: Digraph) -> StructureReport:
    sccs = tuple(scc_decompose(t))
    periods: list[int | None] = []
    components: list[tuple[tuple[tuple[int, ...], Digraph], ...] | None] = []
    gammas: list[tuple[int | None, ...] | None] = []
    for comp in sccs:
        if len(comp) == 1 and not t.has_edge(comp[0], comp[0]):
            periods.append(None)
            components.append(None)
            gammas.append(None)
            continue
        periods.append(period(t, comp))
        comps = tuple(primitive_components(t, comp))
        components.append(comps)
        row: list[int | None] = []
        for _, block in comps:
            try:
                row.append(primitivity_index(block))
            except (NotPrimitiveError, SizeCapExceeded):
                row.append(None)
        gammas.append(tuple(row))
    return StructureReport(sccs, tuple(periods), tuple(components), tuple(gammas))
