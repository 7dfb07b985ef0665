"""Entropy lower bounds for TI-graphs, the limit sequence, and the oracle.

Every bound carries a machine-checkable certificate and two flags:

``certified``
    the value is a proven lower bound for the overlap entropy (an
    independent set of any size certifies one; so does a sofic relabeling
    or a primitive-component estimate).  Per-m values of the higher-shift
    sequence normalized by m are only certified when T is primitive; for
    reducible or periodic T they are reported as estimates.

``exact``
    the value equals the overlap entropy, which the engine can only prove
    when I is edgeless or every I-component is a clique.

The brute-force oracle enumerates all length-n words, builds their
indistinguishability graph by direct pairwise comparison, and takes its
exact independence number; this equals the independence number of the
lifted intersection graph, giving the dual route used by the test suite.
Raw per-m sequence values need not be monotone; only the running supremum
of the gamma-normalized values is.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .config import Config
from .errors import EmptyGraphError, NotPrimitiveError, SizeCapExceeded, TigraphError
from .graph import TIGraph, Word, induced_subgraph, prune_stranded, serialize_tigraph
from .higher import DEFAULT_SIZE_CAP, higher_graph
from .independence import DEFAULT_BUDGET, max_independent_set
from .sofic import DEFAULT_STATE_CAP, clique_components_check, sofic_entropy
from .spectral import DEFAULT_TOL, perron_eigenvalue, sft_entropy
from .structure import analyze_structure, is_primitive, primitivity_index

METHOD_ORDER = (
    "independent_subshift",
    "complete_digraph",
    "primitive",
    "component",
    "sofic",
    "higher_limit",
    "oracle_exact",
)

# Direct recomputation of the lifted primitivity index is used to confirm
# the shift formula gamma(T_[m]) = gamma(T) - 1 + m at small m.
GAMMA_CROSSCHECK_M = 3
GAMMA_CROSSCHECK_MAX_VERTICES = 4096


@dataclass(frozen=True)
class Bound:
    method: str
    value: float
    certified: bool
    exact: bool
    certificate: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.method in METHOD_ORDER, f"unknown method {self.method!r}"
        assert self.value >= 0.0


@dataclass(frozen=True)
class SeparatedCount:
    """Maximum number of pairwise-distinguishable words of one length."""

    n: int
    count: int
    witness: tuple[Word, ...]


@dataclass(frozen=True)
class LimitEntry:
    m: int
    ind: int
    ind_exact: bool
    gamma: int | None
    bound_via_gamma: float | None
    bound_via_m: float


@dataclass(frozen=True)
class LimitSequence:
    entries: tuple[LimitEntry, ...]
    truncated: bool
    primitive: bool

    def best(self) -> tuple[float, int]:
        """(value, m) of the best certified bound (primitive T) or estimate."""
        if self.primitive:
            scored = [(e.bound_via_gamma, e.m) for e in self.entries]
        else:
            scored = [(e.bound_via_m, e.m) for e in self.entries]
        value, m = max(scored, key=lambda vm: (vm[0], -vm[1]))
        return value, m


def _prune_checked(g: TIGraph) -> TIGraph:
    from .errors import ValidationError

    if not g.t.is_pruned():
        raise ValidationError("graph must be pruned first (use prune_stranded)")
    return g


def graph_digest(g: TIGraph) -> str:
    return hashlib.sha256(serialize_tigraph(g).encode()).hexdigest()[:16]


def independent_subshift_bound(
    g: TIGraph, tol: float = DEFAULT_TOL, mis_budget: int = DEFAULT_BUDGET
) -> Bound:
    """Best entropy among subshifts induced on an independent set of I.

    The largest independent set need not induce the most entropy, so after
    the exact search a deterministic family of maximal independent sets
    (one greedily grown from each seed vertex) is also scored.  Returns a
    zero bound with an empty certificate when no candidate induces a
    recurrent subgraph.
    """
    _prune_checked(g)
    candidates: list[tuple[int, ...]] = []
    mis = max_independent_set(g.i, budget=mis_budget)
    candidates.append(mis.witness)

    adj = g.i.adj_sets
    seeds = range(1, g.n + 1) if g.n <= 128 else range(1, g.n + 1, max(1, g.n // 128))
    for seed in seeds:
        chosen = [seed]
        excluded = set(adj[seed - 1]) | {seed}
        for v in range(1, g.n + 1):
            if v not in excluded:
                chosen.append(v)
                excluded |= adj[v - 1] | {v}
        candidates.append(tuple(sorted(chosen)))

    best_value = -1.0
    best_set: tuple[int, ...] = ()
    best_lambda = 0.0
    for cand in dict.fromkeys(candidates):
        sub, _ = induced_subgraph(g, cand)
        try:
            pruned_sub, _ = prune_stranded(sub)
        except EmptyGraphError:
            continue
        lam = perron_eigenvalue(pruned_sub.t, tol=tol).value
        value = math.log(max(lam, 1.0))
        if value > best_value + tol:
            best_value = value
            best_set = cand
            best_lambda = lam
    if not best_set:
        # no candidate induces any recurrent dynamics
        return Bound("independent_subshift", 0.0, True, False, {})
    best_value = max(best_value, 0.0)
    exact = g.i.num_edges() == 0  # no overlaps at all: this IS the entropy
    return Bound(
        "independent_subshift",
        best_value,
        True,
        exact,
        {
            "independent_set": list(best_set),
            "lambda": best_lambda,
            "mis_exact": mis.exact,
        },
    )


def complete_digraph_bound(g: TIGraph, mis_budget: int = DEFAULT_BUDGET) -> Bound:
    """log(ind(I)) when T is the complete digraph (all n^2 edges); else 0."""
    n = g.n
    if g.t.num_edges() != n * n:
        return Bound("complete_digraph", 0.0, True, False, {"applicable": False})
    mis = max_independent_set(g.i, budget=mis_budget)
    return Bound(
        "complete_digraph",
        math.log(mis.size),
        True,
        False,
        {"applicable": True, "independent_set": list(mis.witness), "mis_exact": mis.exact},
    )


def primitive_bound(
    g: TIGraph, tol: float = DEFAULT_TOL, mis_budget: int = DEFAULT_BUDGET
) -> Bound:
    """log(ind(I)) / gamma(T) for primitive T.

    Any choice of one vertex per independent-set slot every gamma steps
    yields separated words, so the value is always certified.  Raises
    NotPrimitiveError when T is not primitive.
    """
    _prune_checked(g)
    if not is_primitive(g.t):
        raise NotPrimitiveError("transition graph is not primitive")
    gamma = primitivity_index(g.t)
    mis = max_independent_set(g.i, budget=mis_budget)
    value = math.log(mis.size) / gamma
    return Bound(
        "primitive",
        value,
        True,
        False,
        {"independent_set": list(mis.witness), "gamma": gamma, "mis_exact": mis.exact},
    )


def component_bound(
    g: TIGraph, tol: float = DEFAULT_TOL, mis_budget: int = DEFAULT_BUDGET
) -> Bound:
    """Best log(ind(I_C)) / (p * gamma) over all primitive components.

    C runs over the cyclic classes of each irreducible component of period
    p; gamma is the primitivity index of the class-transition graph.  A
    fast pre-check: if some class contains two vertices not joined by an
    I-edge, a positive bound exists; if no class does, the answer is 0.
    """
    _prune_checked(g)
    report = analyze_structure(g.t)

    some_positive = False
    for k, comps in enumerate(report.components):
        if comps is None:
            continue
        for cls, _ in comps:
            for a_i, a in enumerate(cls):
                if any(b not in g.i.adj_sets[a - 1] for b in cls[a_i + 1 :]):
                    some_positive = True
                    break
            if some_positive:
                break
        if some_positive:
            break
    if not some_positive:
        return Bound("component", 0.0, True, False, {})

    best = None
    for k, comps in enumerate(report.components):
        if comps is None:
            continue
        p = report.periods[k]
        for c_idx, (cls, block) in enumerate(comps):
            gamma = report.gammas[k][c_idx]
            if gamma is None:
                continue
            sub_i, idx_map = _restrict_ugraph(g, cls)
            mis = max_independent_set(sub_i, budget=mis_budget)
            value = math.log(mis.size) / (p * gamma)
            back = {v: old for old, v in idx_map.items()}
            witness = sorted(back[v] for v in mis.witness)
            cert = {
                "scc": list(report.sccs[k]),
                "class": list(cls),
                "period": p,
                "gamma": gamma,
                "independent_set": witness,
                "mis_exact": mis.exact,
            }
            if best is None or value > best[0]:
                best = (value, cert)
    if best is None:
        return Bound("component", 0.0, True, False, {})
    return Bound("component", best[0], True, False, best[1])


def _restrict_ugraph(g: TIGraph, vertices: tuple[int, ...]):
    from .graph import UGraph

    idx_map = {old: new for new, old in enumerate(sorted(vertices), start=1)}
    edges = [
        (idx_map[a], idx_map[b]) for a, b in g.i.edges if a in idx_map and b in idx_map
    ]
    return UGraph.from_edges(len(vertices), edges), idx_map


def sofic_bound(
    g: TIGraph, tol: float = DEFAULT_TOL, state_cap: int = DEFAULT_STATE_CAP
) -> Bound:
    """Entropy of the I-component shift; exact when all I-components are cliques."""
    _prune_checked(g)
    value, presentation = sofic_entropy(g, tol=tol, state_cap=state_cap)
    cliques = clique_components_check(g)
    return Bound(
        "sofic",
        max(value, 0.0),
        True,
        cliques,
        {
            "num_states": presentation.t.n,
            "num_labels": max(presentation.labels),
            "clique_components": cliques,
        },
    )


def limit_sequence(
    g: TIGraph,
    m_max: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    mis_budget: int = DEFAULT_BUDGET,
    tol: float = DEFAULT_TOL,
) -> LimitSequence:
    """Per-m data of the higher-shift sequence for m = 1..m_max.

    For primitive T the lifted primitivity index follows
    gamma(T_[m]) = gamma(T) - 1 + m, recomputed directly for small m as a
    consistency check, and the running supremum of log(ind)/gamma is a
    certified bound.  Otherwise only log(ind)/m is reported, as an
    estimate.  The sequence is truncated (with a flag) when the word count
    passes ``size_cap``.  Raw values need not be monotone in m.
    """
    _prune_checked(g)
    primitive = is_primitive(g.t)
    gamma_base = primitivity_index(g.t) if primitive else None

    entries: list[LimitEntry] = []
    truncated = False
    for m in range(1, m_max + 1):
        try:
            lift = higher_graph(g, m, size_cap=size_cap)
        except SizeCapExceeded:
            truncated = True
            break
        mis = max_independent_set(lift.lifted.i, budget=mis_budget)
        gamma = None
        if primitive:
            gamma = gamma_base if g.n == 1 else gamma_base - 1 + m
            if m <= GAMMA_CROSSCHECK_M and lift.lifted.n <= GAMMA_CROSSCHECK_MAX_VERTICES:
                direct = primitivity_index(lift.lifted.t)
                assert direct == gamma, f"lifted primitivity index {direct} != {gamma}"
        entries.append(
            LimitEntry(
                m=m,
                ind=mis.size,
                ind_exact=mis.exact,
                gamma=gamma,
                bound_via_gamma=(math.log(mis.size) / gamma) if gamma else None,
                bound_via_m=math.log(mis.size) / m,
            )
        )
    if not entries:
        raise SizeCapExceeded("size cap too small for m = 1")
    return LimitSequence(tuple(entries), truncated, primitive)


def _limit_bound(
    g: TIGraph,
    seq: LimitSequence,
    size_cap: int = DEFAULT_SIZE_CAP,
    mis_budget: int = DEFAULT_BUDGET,
) -> Bound:
    value, best_m = seq.best()
    clamped = False
    if not seq.primitive:
        # finite-m estimates of the limsup may overshoot; the overlap
        # entropy never exceeds the classical entropy, so cap there
        ceiling = sft_entropy(g.t)
        if value > ceiling:
            value = ceiling
            clamped = True
    # store the separated word family for the best m so the certificate
    # re-verifies without rebuilding the whole sequence
    lift = higher_graph(g, best_m, size_cap=size_cap)
    mis = max_independent_set(lift.lifted.i, budget=mis_budget)
    witness_words = [list(lift.vertex_words[v - 1]) for v in mis.witness]
    cert = {
        "sequence": [
            {
                "m": e.m,
                "ind": e.ind,
                "ind_exact": e.ind_exact,
                "gamma": e.gamma,
                "bound_via_gamma": e.bound_via_gamma,
                "bound_via_m": e.bound_via_m,
            }
            for e in seq.entries
        ],
        "best_m": best_m,
        "witness_words": witness_words,
        "truncated": seq.truncated,
        "primitive": seq.primitive,
        "clamped_to_classical": clamped,
    }
    return Bound("higher_limit", max(value, 0.0), seq.primitive, False, cert)


def oracle_separated_count(
    g: TIGraph, n: int, size_cap: int = DEFAULT_SIZE_CAP, mis_budget: int = DEFAULT_BUDGET
) -> SeparatedCount:
    """Exact maximum n-separated word family, by brute force.

    Enumerates every length-n vertex path, compares all pairs positionwise
    (equal or I-adjacent at every slot means indistinguishable), and solves
    the resulting graph exactly.  Independent of the higher-shift
    construction; used to cross-check it.
    """
    from .graph import UGraph
    from .higher import count_paths, _enumerate_words

    _prune_checked(g)
    if n < 1:
        raise ValueError("word length must be >= 1")
    total = count_paths(g.t, n)
    if total > size_cap:
        raise SizeCapExceeded(f"{total} words of length {n} exceed the cap {size_cap}")
    words = _enumerate_words(g.t, n)

    compat = np.zeros((g.n + 1, g.n + 1), dtype=bool)
    for v in range(1, g.n + 1):
        compat[v, v] = True
    for a, b in g.i.edges:
        compat[a, b] = True
        compat[b, a] = True
    arr = np.array(words, dtype=np.int64)
    pairwise = compat[arr[:, None, :], arr[None, :, :]].all(axis=2)
    np.fill_diagonal(pairwise, False)

    edges = [
        (int(a) + 1, int(b) + 1)
        for a, b in zip(*np.nonzero(np.triu(pairwise)))
    ]
    graph = UGraph(len(words), tuple(edges))
    mis = max_independent_set(graph, budget=mis_budget)
    if not mis.exact:
        raise SizeCapExceeded("independent-set budget exhausted inside the oracle")
    witness = tuple(words[v - 1] for v in mis.witness)
    return SeparatedCount(n, mis.size, witness)


def oracle_bound(g: TIGraph, n: int, **kwargs) -> Bound:
    """Bound built from the brute-force separated count at one length.

    Certified (normalized by the lifted primitivity index) when T is
    primitive; otherwise an estimate normalized by n.
    """
    _prune_checked(g)
    sep = oracle_separated_count(g, n, **kwargs)
    primitive = is_primitive(g.t)
    if primitive:
        gamma = primitivity_index(g.t) if g.n == 1 else primitivity_index(g.t) - 1 + n
        value = math.log(sep.count) / gamma
    else:
        gamma = None
        value = math.log(sep.count) / n
    return Bound(
        "oracle_exact",
        max(value, 0.0),
        primitive,
        False,
        {"n": n, "count": sep.count, "gamma": gamma, "witness_words": [list(w) for w in sep.witness]},
    )


@dataclass(frozen=True)
class BoundReport:
    graph_digest: str
    bounds: tuple[Bound, ...]
    best: int
    parameters: dict

    def best_bound(self) -> Bound:
        return self.bounds[self.best]

    def to_json_dict(self) -> dict:
        return {
            "graph_digest": self.graph_digest,
            "bounds": [
                {
                    "method": b.method,
                    "value": b.value,
                    "certified": b.certified,
                    "exact": b.exact,
                    "certificate": b.certificate,
                }
                for b in self.bounds
            ],
            "best": self.best,
            "config": self.parameters,
        }


def best_bound(g: TIGraph, config: Config | None = None) -> BoundReport:
    """Run every applicable bound method and aggregate.

    Individual method failures never abort the report; they are recorded as
    zero-value entries whose certificate explains the error.  The report is
    deterministic for a fixed graph and configuration: methods appear in a
    fixed order and ``best`` is the first index attaining the maximum.
    """
    cfg = config or Config()
    _prune_checked(g)
    bounds: list[Bound] = []

    def run(method: str, fn):
        try:
            bounds.append(fn())
        except TigraphError as exc:
            bounds.append(
                Bound(method, 0.0, False, False, {"error": f"{type(exc).__name__}: {exc}"})
            )

    run(
        "independent_subshift",
        lambda: independent_subshift_bound(g, tol=cfg.tol, mis_budget=cfg.mis_budget),
    )
    if g.t.num_edges() == g.n * g.n:
        run("complete_digraph", lambda: complete_digraph_bound(g, mis_budget=cfg.mis_budget))
    if is_primitive(g.t):
        run("primitive", lambda: primitive_bound(g, tol=cfg.tol, mis_budget=cfg.mis_budget))
    run("component", lambda: component_bound(g, tol=cfg.tol, mis_budget=cfg.mis_budget))
    run("sofic", lambda: sofic_bound(g, tol=cfg.tol, state_cap=cfg.state_cap))
    run(
        "higher_limit",
        lambda: _limit_bound(
            g,
            limit_sequence(
                g, cfg.m_max, size_cap=cfg.size_cap, mis_budget=cfg.mis_budget, tol=cfg.tol
            ),
            size_cap=cfg.size_cap,
            mis_budget=cfg.mis_budget,
        ),
    )

    # ties: prefer provably exact, then certified, then method order
    best = max(
        range(len(bounds)),
        key=lambda k: (bounds[k].value, bounds[k].exact, bounds[k].certified, -k),
    )
    return BoundReport(graph_digest(g), tuple(bounds), best, cfg.to_dict())


def verify_bound(g: TIGraph, bound: Bound, tol: float = 1e-9) -> bool:
    """Re-check a bound's certificate against the graph it came from.

    Returns False when any certified claim fails to reproduce: a witness
    set that is not independent, a wrong induced eigenvalue, a wrong
    primitivity index, or separated witness words that are not pairwise
    distinguishable vertex paths.
    """
    cert = bound.certificate
    if "error" in cert:
        return bound.value == 0.0
    method = bound.method

    def independent(vertices) -> bool:
        vs = set(vertices)
        return all(not (a in vs and b in vs) for a, b in g.i.edges)

    if method == "independent_subshift":
        if not cert:
            return bound.value == 0.0
        if not independent(cert["independent_set"]):
            return False
        sub, _ = induced_subgraph(g, cert["independent_set"])
        try:
            pruned_sub, _ = prune_stranded(sub)
        except EmptyGraphError:
            return bound.value == 0.0
        lam = perron_eigenvalue(pruned_sub.t).value
        return abs(math.log(max(lam, 1.0)) - bound.value) <= tol

    if method == "complete_digraph":
        if not cert.get("applicable"):
            return bound.value == 0.0
        if g.t.num_edges() != g.n * g.n or not independent(cert["independent_set"]):
            return False
        return abs(math.log(len(cert["independent_set"])) - bound.value) <= tol

    if method == "primitive":
        if not independent(cert["independent_set"]):
            return False
        if primitivity_index(g.t) != cert["gamma"]:
            return False
        return abs(math.log(len(cert["independent_set"])) / cert["gamma"] - bound.value) <= tol

    if method == "component":
        if not cert:
            return bound.value == 0.0
        cls = cert["class"]
        if not independent(cert["independent_set"]):
            return False
        if not set(cert["independent_set"]) <= set(cls):
            return False
        comps = {frozenset(c): (p, gs) for c, p, gs in _class_table(g)}
        key = frozenset(cls)
        if key not in comps:
            return False
        p, gamma = comps[key]
        if p != cert["period"] or gamma != cert["gamma"]:
            return False
        expect = math.log(len(cert["independent_set"])) / (p * gamma)
        return abs(expect - bound.value) <= tol

    if method == "sofic":
        value, presentation = sofic_entropy(g)
        if presentation.t.n != cert["num_states"]:
            return False
        return abs(value - bound.value) <= tol

    if method in ("higher_limit", "oracle_exact"):
        words = [tuple(w) for w in cert["witness_words"]]
        if not words:
            return bound.value == 0.0
        from .graph import is_vertex_path
        from .higher import words_indistinguishable

        if any(not is_vertex_path(g.t, w) for w in words):
            return False
        for i, a in enumerate(words):
            for b in words[i + 1 :]:
                if words_indistinguishable(g, a, b):
                    return False
        m = len(words[0])
        if bound.certified and is_primitive(g.t):
            gamma = primitivity_index(g.t) if g.n == 1 else primitivity_index(g.t) - 1 + m
            floor = math.log(len(words)) / gamma
        else:
            floor = math.log(len(words)) / m
        # the stored family certifies at least this much; the reported value
        # may not exceed what the witness supports
        return bound.value <= floor + tol

    return False


def _class_table(g: TIGraph):
    report = analyze_structure(g.t)
    for k, comps in enumerate(report.components):
        if comps is None:
            continue
        for c_idx, (cls, _) in enumerate(comps):
            yield cls, report.periods[k], report.gammas[k][c_idx]
