"""Higher vertex graphs: lift a TI-graph to words of a fixed length.

The m-th higher vertex graph has one vertex per length-m vertex path of T;
two word-vertices are joined in the lifted T when the second word extends
the first by one step (overlap in m-1 symbols), and in the lifted I when the
words are indistinguishable: at every position the symbols are equal or
I-adjacent.  Lifted vertices are ordered lexicographically by their words.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LengthMismatchError, SizeCapExceeded
from .graph import Digraph, TIGraph, UGraph, Word

DEFAULT_SIZE_CAP = 2_000_000


@dataclass(frozen=True)
class HigherGraph:
    m: int
    base: TIGraph
    lifted: TIGraph
    vertex_words: tuple[Word, ...]

    def word_of(self, v: int) -> Word:
        """Base word of lifted vertex v (1-indexed)."""
        return self.vertex_words[v - 1]


def words_indistinguishable(g: TIGraph, a: Word, b: Word) -> bool:
    """True iff at every position the symbols are equal or I-adjacent.

    Equal symbols count as indistinguishable (a symbol always overlaps
    itself), so every word is indistinguishable from itself.
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"word lengths differ: {len(a)} vs {len(b)}")
    adj = g.i.adj_sets
    return all(x == y or y in adj[x - 1] for x, y in zip(a, b))


def count_paths(t: Digraph, m: int) -> int:
    """Number of vertex paths of length m (m vertices, m-1 edge steps)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    counts = [1] * t.n
    for _ in range(m - 1):
        counts = [sum(counts[j - 1] for j in t.succ[v]) for v in range(t.n)]
    return sum(counts)


def _enumerate_words(t: Digraph, m: int) -> list[Word]:
    words: list[Word] = []
    succ = t.succ
    for start in range(1, t.n + 1):
        stack: list[tuple[Word, int]] = [((start,), 1)]
        while stack:
            word, length = stack.pop()
            if length == m:
                words.append(word)
                continue
            for j in reversed(succ[word[-1] - 1]):
                stack.append((word + (j,), length + 1))
    return words


def higher_graph(g: TIGraph, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> HigherGraph:
    """Build the m-th higher vertex graph of g.

    Raises SizeCapExceeded before enumeration when the path count at length
    m exceeds ``size_cap``.  For m = 1 the lift is an isomorphic copy of g.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    total = count_paths(g.t, m)
    if total > size_cap:
        raise SizeCapExceeded(f"{total} words of length {m} exceed the cap {size_cap}")

    words = _enumerate_words(g.t, m)  # already lexicographic
    index = {w: k for k, w in enumerate(words)}
    succ_base = g.t.succ

    t_edges: list[tuple[int, int]] = []
    for k, w in enumerate(words):
        tail = w[1:]
        for s in succ_base[w[-1] - 1]:
            t_edges.append((k + 1, index[tail + (s,)] + 1))

    # Indistinguishable partners of each word, found by walking T while
    # staying positionwise inside the closed I-neighborhood of the word.
    compat = tuple(
        tuple(sorted(g.i.adj_sets[v - 1] | {v})) for v in range(1, g.n + 1)
    )
    succ_sets = g.t.succ_sets
    i_edges: set[tuple[int, int]] = set()
    for k, w in enumerate(words):
        partial: list[Word] = [(c,) for c in compat[w[0] - 1]]
        for pos in range(1, m):
            allowed = compat[w[pos] - 1]
            nxt: list[Word] = []
            for p in partial:
                prev_succ = succ_sets[p[-1] - 1]
                for c in allowed:
                    if c in prev_succ:
                        nxt.append(p + (c,))
            partial = nxt
        for u in partial:
            if u == w:
                continue
            j = index[u]
            i_edges.add((k + 1, j + 1) if k < j else (j + 1, k + 1))

    lifted = TIGraph(
        Digraph.from_edges(len(words), t_edges),
        UGraph(len(words), tuple(sorted(i_edges))),
    )
    return HigherGraph(m, g, lifted, tuple(words))
