"""The I-component shift: relabel by connected components of I, determinize.

Merging each connected component of the intersection graph into one label
turns the vertex shift of T into a sofic shift whose entropy is a lower
bound for the overlap entropy.  Entropy of a sofic shift is the log Perron
eigenvalue of any right-resolving presentation, which the subset
construction below produces: states are label-homogeneous sets of original
vertices; from state S and label L the successor is the set of L-labeled
T-successors of S.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateCapExceeded
from .graph import Digraph, TIGraph, bits_of, prune_digraph
from .spectral import DEFAULT_TOL, perron_eigenvalue

DEFAULT_STATE_CAP = 100_000


@dataclass(frozen=True)
class LabeledGraph:
    """Transition graph with a vertex labeling onto 1..r."""

    t: Digraph
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        r = max(self.labels)
        assert sorted(set(self.labels)) == list(range(1, r + 1)), "labels must be surjective onto 1..r"

    @property
    def num_labels(self) -> int:
        return max(self.labels)


@dataclass(frozen=True)
class RightResolvingPresentation:
    """Determinized presentation: states are sets of original vertices.

    Right-resolving by construction: all out-neighbors of a state carry
    distinct labels.  ``state_sets[k]`` lists the original vertices merged
    into state k+1.
    """

    t: Digraph
    labels: tuple[int, ...]
    state_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for s in range(1, self.t.n + 1):
            out_labels = [self.labels[q - 1] for q in self.t.succ[s - 1]]
            assert len(out_labels) == len(set(out_labels)), "presentation is not right-resolving"


def component_labeling(g: TIGraph) -> LabeledGraph:
    """Label each vertex by its I-connected component (singletons included).

    Components are numbered 1..r in order of their smallest vertex, so the
    labeling is deterministic.
    """
    parent = list(range(g.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.i.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    roots: dict[int, int] = {}
    labels = []
    for v in range(1, g.n + 1):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots) + 1
        labels.append(roots[r])
    return LabeledGraph(g.t, tuple(labels))


def right_resolve(lg: LabeledGraph, state_cap: int = DEFAULT_STATE_CAP) -> RightResolvingPresentation:
    """Subset construction producing a right-resolving presentation.

    Initial states are the full per-label vertex sets; from state S and
    label L the successor state is the set of L-labeled T-successors of S.
    All reachable states are retained.  The presentation generates the same
    label-sequence language as the input.
    """
    n = lg.t.n
    r = lg.num_labels
    label_mask = [0] * (r + 1)
    for v, lab in enumerate(lg.labels, start=1):
        label_mask[lab] |= 1 << (v - 1)
    succ_mask = [sum(1 << (j - 1) for j in row) for row in lg.t.succ]

    initials = [(label_mask[lab], lab) for lab in range(1, r + 1) if label_mask[lab]]
    state_id: dict[int, int] = {}
    states: list[tuple[int, int]] = []  # (vertex mask, label)
    for mask, lab in initials:
        if mask not in state_id:
            state_id[mask] = len(states)
            states.append((mask, lab))
    edges: list[tuple[int, int]] = []
    head = 0
    while head < len(states):
        mask, _ = states[head]
        out = 0
        m = mask
        while m:
            low = m & -m
            out |= succ_mask[low.bit_length() - 1]
            m ^= low
        for lab in range(1, r + 1):
            nxt = out & label_mask[lab]
            if not nxt:
                continue
            if nxt not in state_id:
                if len(states) >= state_cap:
                    raise StateCapExceeded(f"more than {state_cap} subset states")
                state_id[nxt] = len(states)
                states.append((nxt, lab))
            edges.append((head + 1, state_id[nxt] + 1))
        head += 1

    t = Digraph.from_edges(len(states), edges)
    labels = tuple(lab for _, lab in states)
    state_sets = tuple(tuple(v + 1 for v in bits_of(mask)) for mask, _ in states)
    return RightResolvingPresentation(t, labels, state_sets)


def _prune_presentation(p: RightResolvingPresentation) -> RightResolvingPresentation:
    # Non-essential states (e.g. unreachable-from-cycles initials) do not
    # affect the spectral radius but are dropped so reports stay minimal.
    pruned, index_map = prune_digraph(p.t)
    keep = sorted(index_map, key=index_map.get)
    return RightResolvingPresentation(
        pruned,
        tuple(p.labels[v - 1] for v in keep),
        tuple(p.state_sets[v - 1] for v in keep),
    )


def sofic_entropy(
    g: TIGraph, tol: float = DEFAULT_TOL, state_cap: int = DEFAULT_STATE_CAP
) -> tuple[float, RightResolvingPresentation]:
    """Entropy of the I-component shift plus the presentation that attains it.

    The value is log of the Perron eigenvalue of the pruned right-resolving
    presentation; it is always a lower bound for the overlap entropy, and
    equals it exactly when every I-component is a clique.
    """
    presentation = right_resolve(component_labeling(g), state_cap=state_cap)
    essential = _prune_presentation(presentation)
    res = perron_eigenvalue(essential.t, tol=tol)
    return float(np.log(max(res.value, 1.0))), essential


def clique_components_check(g: TIGraph) -> bool:
    """True iff every connected component of I is a clique.

    In that case the I-component shift has exactly the same separated word
    counts as the original, so the sofic value is exact, not just a bound.
    """
    labels = component_labeling(g).labels
    members: dict[int, list[int]] = {}
    for v, lab in enumerate(labels, start=1):
        members.setdefault(lab, []).append(v)
    for comp in members.values():
        for v in comp:
            need = len(comp) - 1
            if len(g.i.adj_sets[v - 1]) < need:
                return False
    return True


def export_presentation_dot(p: RightResolvingPresentation) -> str:
    """DOT rendering with states annotated by label and merged vertex set."""
    lines = ["digraph presentation {"]
    for s in range(1, p.t.n + 1):
        vset = ",".join(str(v) for v in p.state_sets[s - 1])
        lines.append(f'  {s} [label="L{p.labels[s - 1]}:{{{vset}}}"];')
    for i, j in p.t.edges():
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
