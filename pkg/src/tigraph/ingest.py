"""Generate TI-graphs from piecewise-affine circle maps and interval covers.

A cover arc N_i gets a T-edge to N_j when some monotone continuous stretch
of the image f(N_i) contains N_j with the requested slack on both ends;
it gets an I-edge to N_j when the closed arcs intersect.  All endpoint
arithmetic is exact (fractions built from the decimal literals of the
input), so covering and intersection tests cannot suffer float ties.  A
comparison whose outcome would flip under a perturbation of at most 1e-12
raises DegenerateCoverError: the caller must move the offending endpoint.
Exact ties are allowed and resolved by the closed-arc reading (touching
arcs intersect; a cover with zero slack satisfies margin 0).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateCoverError, ParseError, ValidationError
from .graph import Digraph, TIGraph, UGraph

TIE_WIDTH = Fraction(1, 10**12)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # decimal reading of the literal, not the binary float
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise ParseError(f"cannot interpret {x!r} as an exact number")


def _guarded_ge(x: Fraction, y: Fraction, what: str) -> bool:
    """x >= y, closed; raises when 0 < |x - y| <= 1e-12 (ambiguous input)."""
    d = x - y
    if d == 0:
        return True
    if abs(d) <= TIE_WIDTH:
        raise DegenerateCoverError(f"{what} decided by {float(d):+.2e}; perturb the input")
    return d > 0


@dataclass(frozen=True)
class AffinePiece:
    lo: Fraction
    hi: Fraction
    slope: Fraction
    intercept: Fraction

    def value(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class CircleMap:
    """Piecewise-affine map of the circle R/Z; pieces tile [0, 1)."""

    pieces: tuple[AffinePiece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValidationError("circle map needs at least one piece")
        expect = Fraction(0)
        for p in self.pieces:
            if p.lo != expect:
                raise ValidationError(f"pieces do not tile [0,1): gap or overlap at {float(p.lo)}")
            if p.hi <= p.lo:
                raise ValidationError("piece has nonpositive width")
            if p.slope == 0:
                raise ValidationError("pieces must be monotone (nonzero slope)")
            expect = p.hi
        if expect != 1:
            raise ValidationError("pieces must end exactly at 1")

    def piece_at(self, x: Fraction) -> AffinePiece:
        """Piece owning the fractional part of x (domains are [lo, hi))."""
        frac_x = x - math.floor(x)
        for p in self.pieces:
            if p.lo <= frac_x < p.hi:
                return p
        raise AssertionError("pieces tile [0,1)")


@dataclass(frozen=True)
class Arc:
    """Closed circle arc [start, start + length] with 0 < length < 1."""

    start: Fraction
    length: Fraction

    def __post_init__(self) -> None:
        if not 0 < self.length < 1:
            raise ValidationError("arc length must lie strictly between 0 and 1")

    @classmethod
    def from_endpoints(cls, a, b) -> "Arc":
        a, b = _frac(a), _frac(b)
        return cls(a - math.floor(a), b - a)


@dataclass(frozen=True)
class IntervalCover:
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        if not self.arcs:
            raise ValidationError("cover needs at least one arc")


def _arcs_intersect(a: Arc, b: Arc) -> bool:
    # Closed arcs on the circle: lift b's start next to a's and compare.
    # A clean hit on either side decides; a near-tie only surfaces when the
    # other side cannot settle the question.
    d = (b.start - a.start) % 1
    tie: DegenerateCoverError | None = None
    try:
        if _guarded_ge(a.length, d, "arc intersection"):
            return True
    except DegenerateCoverError as exc:
        tie = exc
    try:
        if _guarded_ge(d, 1 - b.length, "arc intersection"):
            return True
    except DegenerateCoverError as exc:
        tie = exc
    if tie is not None:
        raise tie
    return False


def _image_runs(cmap: CircleMap, arc: Arc) -> list[tuple[Fraction, Fraction]]:
    """Maximal monotone continuous stretches of f(arc), as lift intervals.

    The arc is cut at every piece boundary; consecutive segment images are
    merged when the map is continuous across the junction (values agree
    mod 1) and the slope keeps its sign, tracking one consistent lift.
    """
    lo, hi = arc.start, arc.start + arc.length
    segments: list[tuple[Fraction, Fraction, AffinePiece, int]] = []
    k = math.floor(lo)
    while Fraction(k) < hi:
        for p in cmap.pieces:
            u = max(lo, p.lo + k)
            v = min(hi, p.hi + k)
            if u < v:
                segments.append((u, v, p, k))
        k += 1

    runs: list[tuple[Fraction, Fraction]] = []
    cur_lo = cur_hi = None
    prev = None
    offset = Fraction(0)
    for u, v, p, k in segments:
        y_u = p.value(u - k)
        y_v = p.value(v - k)
        if prev is not None:
            pv, pp, pk = prev
            left_limit = pp.value(pv - pk) + offset
            delta = left_limit - y_u
            if pv == u and delta.denominator == 1 and (p.slope > 0) == (pp.slope > 0):
                offset = delta  # continuous junction: keep extending the lift
            else:
                runs.append((cur_lo, cur_hi))
                cur_lo = cur_hi = None
                offset = Fraction(0)
        a, b = sorted((y_u + offset, y_v + offset))
        if cur_lo is None:
            cur_lo, cur_hi = a, b
        else:
            cur_lo, cur_hi = min(cur_lo, a), max(cur_hi, b)
        prev = (v, p, k)
    if cur_lo is not None:
        runs.append((cur_lo, cur_hi))
    return runs


def _run_covers(run: tuple[Fraction, Fraction], target: Arc, margin: Fraction) -> bool:
    ylo, yhi = run
    # smallest lift of the target start that clears the lower margin
    k = math.ceil(ylo + margin - target.start)
    lo_ok = _guarded_ge(target.start + k, ylo + margin, "covering (lower end)")
    if not lo_ok:  # pragma: no cover - ceil guarantees the inequality
        return False
    return _guarded_ge(yhi - margin, target.start + k + target.length, "covering (upper end)")


def ti_from_circle(cmap: CircleMap, cover: IntervalCover, margin=0) -> TIGraph:
    """Build the TI-graph of a circle map over an interval cover.

    T-edge i -> j when a monotone stretch of f(N_i) contains N_j with slack
    at least ``margin`` at both ends (so every finite itinerary through the
    interiors is realized by an actual orbit); I-edge {i, j} when the
    closed arcs N_i and N_j intersect.  The output is not pruned.
    """
    margin = _frac(margin)
    if margin < 0:
        raise ValidationError("margin must be >= 0")
    arcs = cover.arcs
    n = len(arcs)
    t_edges = []
    for i, src in enumerate(arcs, start=1):
        runs = _image_runs(cmap, src)
        for j, dst in enumerate(arcs, start=1):
            covered = False
            tie: DegenerateCoverError | None = None
            for run in runs:
                try:
                    if _run_covers(run, dst, margin):
                        covered = True
                        break
                except DegenerateCoverError as exc:
                    tie = exc
            if not covered and tie is not None:
                raise tie
            if covered:
                t_edges.append((i, j))
    i_edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if _arcs_intersect(arcs[i - 1], arcs[j - 1]):
                i_edges.append((i, j))
    return TIGraph(Digraph.from_edges(n, t_edges), UGraph.from_edges(n, i_edges))


def load_map_spec(data: str | bytes) -> tuple[CircleMap, IntervalCover, Fraction]:
    """Parse the JSON map/cover format.

    ``{"pieces": [{"from": [a, b], "slope": s, "intercept": c}, ...],
       "intervals": [[a, b], ...], "margin": m?}``

    Decimal literals are read exactly (no float rounding).
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "pieces" not in obj or "intervals" not in obj:
        raise ParseError("expected an object with 'pieces' and 'intervals'")
    pieces = []
    for k, item in enumerate(obj["pieces"]):
        try:
            lo, hi = item["from"]
            pieces.append(
                AffinePiece(_frac(lo), _frac(hi), _frac(item["slope"]), _frac(item["intercept"]))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"piece {k}: {exc}") from exc
    arcs = []
    for k, pair in enumerate(obj["intervals"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"interval {k}: expected [a, b]")
        arcs.append(Arc.from_endpoints(pair[0], pair[1]))
    pieces.sort(key=lambda p: p.lo)
    margin = _frac(obj.get("margin", 0))
    return CircleMap(tuple(pieces)), IntervalCover(tuple(arcs)), margin


def doubling_map() -> CircleMap:
    """The angle-doubling map x -> 2x on R/Z as a single affine piece."""
    return CircleMap((AffinePiece(Fraction(0), Fraction(1), Fraction(2), Fraction(0)),))
