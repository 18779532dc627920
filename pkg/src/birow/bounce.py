"""The color-swapping bijection behind the Plucker-like phi identities.

A colored overlay superimposes a blue path family of order k based at
(i-k, j-k) and a red family of order k-1 based at (i-k+1, j-k+1).  Bounce
paths traverse blue edges upward and red edges downward, reversing whenever
possible and consuming each colored edge instance at most once.  Swapping
colors along the horizontal bounce path and the twigs, exchanging the
bottom endpoints, and truncating the vertical path by its bottommost edge
produces a pair of families with bases skewed left or right; the procedure
is reversible.

The boundary-hugging variant runs the same machinery on an enlarged grid
whose extreme paths are pinned to the leftmost/rightmost routes; weights
only see uncovered points of the original rectangle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from .avar import shift_poly
from .errors import MalformedOverlay, PreconditionViolated
from .exactnum import Polynomial
from .grid_poset import GridPoint, RectPoset, Region
from .nilp import LatticePath, NilpFamily, enum_paths, phi, uncovered_monomial
from .report import Report

Edge = Tuple[GridPoint, GridPoint]  # (lower vertex, upper vertex)
ColoredEdge = Tuple[str, GridPoint, GridPoint]


@dataclass(frozen=True)
class ColoredOverlay:
    blue: NilpFamily
    red: NilpFamily

    @property
    def blue_region(self) -> Region:
        return self.blue.region

    @property
    def red_region(self) -> Region:
        return self.red.region

    def edge_colors(self) -> List[ColoredEdge]:
        out: List[ColoredEdge] = []
        for color, fam in (("blue", self.blue), ("red", self.red)):
            for p in fam.paths:
                out.extend((color, a, b) for a, b in p.edges())
        return out

    def key(self):
        return (tuple(p.vertices for p in self.blue.paths),
                tuple(p.vertices for p in self.red.paths))


@dataclass(frozen=True)
class BounceDecomposition:
    vertical: Tuple[ColoredEdge, ...]
    horizontal: Tuple[ColoredEdge, ...]
    twigs: Tuple[Edge, ...]
    side: str  # "left" or "right"


def _validate_family(region: Region, paths: Tuple[LatticePath, ...]) -> NilpFamily:
    if len(paths) != region.k:
        raise MalformedOverlay(f"expected {region.k} paths, got {len(paths)}")
    seen: Set[GridPoint] = set()
    for l, p in enumerate(paths):
        if p.vertices[0] != region.sources[l] or p.vertices[-1] != region.sinks[l]:
            raise MalformedOverlay(f"path {l} endpoints {p.vertices[0]}..{p.vertices[-1]} "
                                   f"do not match {region.sources[l]}..{region.sinks[l]}")
        for v in p.vertices:
            if v not in region.members:
                raise MalformedOverlay(f"vertex {v} outside region")
            if v in seen:
                raise MalformedOverlay(f"vertex {v} shared between paths")
            seen.add(v)
    return NilpFamily(region, paths)


def make_overlay(blue: NilpFamily, red: NilpFamily) -> ColoredOverlay:
    br, rr = blue.region, red.region
    if (rr.m, rr.n, rr.k) != (br.m + 1, br.n + 1, br.k - 1) or rr.poset != br.poset:
        raise MalformedOverlay("red region is not the (+1,+1) companion of the blue region")
    _validate_family(br, blue.paths)
    _validate_family(rr, red.paths)
    return ColoredOverlay(blue, red)


def _edge_maps(paths: Tuple[LatticePath, ...]) -> Tuple[Dict[GridPoint, GridPoint],
                                                        Dict[GridPoint, GridPoint]]:
    up: Dict[GridPoint, GridPoint] = {}
    down: Dict[GridPoint, GridPoint] = {}
    for p in paths:
        for a, b in p.edges():
            up[a] = b
            down[b] = a
    return up, down


def _traverse(start: GridPoint, up_map, down_map, up_color: str, down_color: str,
              used: Set[ColoredEdge]) -> Tuple[GridPoint, List[ColoredEdge]]:
    """Bounce traversal: up_color edges upward, down_color edges downward,
    reversing whenever an unused edge of the other kind is available."""
    v = start
    going_up = True
    edges: List[ColoredEdge] = []
    while True:
        if going_up:
            u = down_map.get(v)
            if u is not None and (down_color, u, v) not in used:
                e = (down_color, u, v)
                used.add(e)
                edges.append(e)
                v = u
                going_up = False
                continue
            w = up_map.get(v)
            if w is not None and (up_color, v, w) not in used:
                e = (up_color, v, w)
                used.add(e)
                edges.append(e)
                v = w
                continue
            return v, edges
        else:
            w = up_map.get(v)
            if w is not None and (up_color, v, w) not in used:
                e = (up_color, v, w)
                used.add(e)
                edges.append(e)
                v = w
                going_up = True
                continue
            u = down_map.get(v)
            if u is not None and (down_color, u, v) not in used:
                e = (down_color, u, v)
                used.add(e)
                edges.append(e)
                v = u
                continue
            return v, edges


def _attempt_decompose(o: ColoredOverlay, starts) -> BounceDecomposition:
    br = o.blue_region
    blue_up, _ = _edge_maps(o.blue.paths)
    _, red_down = _edge_maps(o.red.paths)
    used: Set[ColoredEdge] = set()
    runs = []
    for start in starts:
        term, edges = _traverse(start, blue_up, red_down, "blue", "red", used)
        runs.append((start, term, edges))

    sinks = set(br.sinks)
    bottom_rank = br.m + br.n + br.k  # the red-source rank
    vertical = horizontal = v_start = None
    for start, term, edges in runs:
        if edges and term in sinks:
            if vertical is not None:
                raise MalformedOverlay("two vertical bounce paths")
            vertical, v_start = edges, start
        elif not edges or term[0] + term[1] == bottom_rank:
            if horizontal is not None:
                raise MalformedOverlay("two horizontal bounce paths")
            horizontal = edges
        else:
            raise MalformedOverlay(f"bounce path ends at internal vertex {term}")
    if vertical is None or horizontal is None:
        raise MalformedOverlay("missing vertical or horizontal bounce path")

    c0, u0, w0 = vertical[0]
    if c0 != "blue" or u0 != v_start:
        raise MalformedOverlay("vertical bounce path does not start upward from its source")
    step = (w0[0] - u0[0], w0[1] - u0[1])
    # The truncated vertical must supply the one new blue source of the
    # skewed base: leftmost start stepping northeast, or rightmost stepping
    # northwest.  The other pairing cannot be completed consistently.
    if v_start == br.sources[0] and step == (1, 0):
        side = "left"
    elif v_start == br.sources[-1] and step == (0, 1):
        side = "right"
    else:
        raise MalformedOverlay("vertical bounce path start and direction disagree")

    twigs = tuple((p.vertices[0], p.vertices[1]) for p in o.blue.paths[1:-1])
    return BounceDecomposition(tuple(vertical), tuple(horizontal), twigs, side)


def decompose(o: ColoredOverlay) -> BounceDecomposition:
    """Run the two bounce traversals; the traversal order (leftmost or
    rightmost source first) is fixed by requiring a consistent vertical."""
    br = o.blue_region
    try:
        return _attempt_decompose(o, (br.sources[0], br.sources[-1]))
    except MalformedOverlay:
        if br.k == 1:
            raise
        return _attempt_decompose(o, (br.sources[-1], br.sources[0]))


def _family_from_edges(edges: Set[Edge], region: Region) -> NilpFamily:
    up: Dict[GridPoint, GridPoint] = {}
    indeg: Dict[GridPoint, int] = {}
    for u, w in edges:
        if u in up:
            raise MalformedOverlay(f"two edges leave {u}")
        up[u] = w
        indeg[w] = indeg.get(w, 0) + 1
        if indeg[w] > 1:
            raise MalformedOverlay(f"two edges enter {w}")
    paths = []
    consumed = 0
    for l, src in enumerate(region.sources):
        verts = [src]
        while verts[-1] in up:
            verts.append(up[verts[-1]])
            consumed += 1
        if verts[-1] != region.sinks[l]:
            raise MalformedOverlay(f"path from {src} ends at {verts[-1]}, "
                                   f"expected {region.sinks[l]}")
        paths.append(LatticePath(tuple(verts)))
    if consumed != len(edges):
        raise MalformedOverlay("leftover edges after path reconstruction")
    return _validate_family(region, tuple(paths))


def _edge_counts(fam: NilpFamily) -> Counter:
    return Counter((a, b) for p in fam.paths for a, b in p.edges())


def _flip(counts: Tuple[Counter, Counter], edge: Edge, frm_color: str):
    """Move one instance of the edge from one color to the other.  A single
    geometric edge may carry both colors (a doubled edge), so the bookkeeping
    is per instance."""
    blue, red = counts
    frm, to = (blue, red) if frm_color == "blue" else (red, blue)
    if frm[edge] <= 0:
        raise MalformedOverlay(f"edge {edge} carries no {frm_color} instance to flip")
    frm[edge] -= 1
    to[edge] += 1


def _counts_to_set(counts: Counter) -> Set[Edge]:
    for e, c in counts.items():
        if c > 1:
            raise MalformedOverlay(f"edge {e} carries a color twice after the swap")
    return {e for e, c in counts.items() if c == 1}


def swap(o: ColoredOverlay) -> Tuple[str, ColoredOverlay]:
    dec = decompose(o)
    blue_edges = _edge_counts(o.blue)
    red_edges = _edge_counts(o.red)

    for color, u, w in dec.horizontal:
        _flip((blue_edges, red_edges), (u, w), color)
    for e in dec.twigs:
        _flip((blue_edges, red_edges), e, "blue")

    c0, u0, w0 = dec.vertical[0]
    if c0 != "blue":
        raise MalformedOverlay("vertical bounce path does not start with a blue edge")
    if blue_edges[(u0, w0)] <= 0:
        raise MalformedOverlay("truncation target edge is not blue")
    blue_edges[(u0, w0)] -= 1

    g = o.blue_region.poset
    m, n, k = o.blue_region.m, o.blue_region.n, o.blue_region.k
    if dec.side == "left":
        br2, rr2 = g.hexagon(m + 1, n, k), g.hexagon(m, n + 1, k - 1)
    else:
        br2, rr2 = g.hexagon(m, n + 1, k), g.hexagon(m + 1, n, k - 1)
    blue2 = _family_from_edges(_counts_to_set(blue_edges), br2)
    red2 = _family_from_edges(_counts_to_set(red_edges), rr2)
    return dec.side, ColoredOverlay(blue2, red2)


def unswap(side: str, o2: ColoredOverlay) -> ColoredOverlay:
    g = o2.blue_region.poset
    k = o2.blue_region.k
    if side == "left":
        m, n = o2.blue_region.m - 1, o2.blue_region.n
        expect_red = (m, n + 1)
        v_start = o2.blue_region.sources[0]
        h_start = o2.red_region.sources[-1] if k >= 2 else None
    elif side == "right":
        m, n = o2.blue_region.m, o2.blue_region.n - 1
        expect_red = (m + 1, n)
        v_start = o2.blue_region.sources[-1]
        h_start = o2.red_region.sources[0] if k >= 2 else None
    else:
        raise PreconditionViolated(f"bad side {side!r}")
    if (o2.red_region.m, o2.red_region.n, o2.red_region.k) != (*expect_red, k - 1):
        raise MalformedOverlay("red region base does not match the given side")

    blue_up, blue_down = _edge_maps(o2.blue.paths)
    red_up, red_down = _edge_maps(o2.red.paths)
    twigs = [(p.vertices[0], p.vertices[1])
             for p, src in zip(o2.red.paths, o2.red_region.sources) if src != h_start]
    # Twig edges hang below the blue sources; reserve them so neither bounce
    # path can descend one and terminate at the wrong rank.
    used: Set[ColoredEdge] = {("red", u, w) for u, w in twigs}
    vterm, vedges = _traverse(v_start, blue_up, red_down, "blue", "red", used)
    if not vedges or vterm not in set(o2.blue_region.sinks):
        raise MalformedOverlay("vertical bounce path does not reach the top")
    if h_start is not None:
        hterm, hedges = _traverse(h_start, red_up, blue_down, "red", "blue", used)
        if hterm not in set(o2.blue_region.sources):
            raise MalformedOverlay(f"mirror bounce path ends at {hterm}")
    else:
        hedges = []

    blue_edges = _edge_counts(o2.blue)
    red_edges = _edge_counts(o2.red)

    for color, u, w in hedges:
        _flip((blue_edges, red_edges), (u, w), color)
    for e in twigs:
        _flip((blue_edges, red_edges), e, "red")

    blue_target = g.hexagon(m, n, k)
    missing = [p for p in blue_target.sources if p not in set(o2.red_region.sources)]
    if len(missing) != 1:
        raise MalformedOverlay("cannot locate the truncated source position")
    p0 = missing[0]
    if (v_start[0] - p0[0], v_start[1] - p0[1]) not in ((1, 0), (0, 1)):
        raise MalformedOverlay(f"{p0} is not adjacent below {v_start}")
    blue_edges[(p0, v_start)] += 1

    blue1 = _family_from_edges(_counts_to_set(blue_edges), blue_target)
    red1 = _family_from_edges(_counts_to_set(red_edges), g.hexagon(m + 1, n + 1, k - 1))
    return ColoredOverlay(blue1, red1)


def _phi_poly(poset: RectPoset, m: int, n: int, k: int) -> Polynomial:
    """phi with the conventions needed by the shifted identity: negative
    order gives 0; a base above the grid gives 1 for order 0 (empty filter)
    and 0 otherwise."""
    if k < 0:
        return Polynomial(())
    if m > poset.r or n > poset.s:
        return Polynomial.const(1) if k == 0 else Polynomial(())
    return phi(poset.hexagon(m, n, k)).value


def mu_phi(poset: RectPoset, i: int, j: int, k: int, eps_i: int, eps_j: int,
           delta: int) -> Polynomial:
    """One factor of the shifted identity: the mu-shifted phi attached to the
    corner (eps_i, eps_j), of order k - delta - M_eps."""
    c = max(k - j - eps_j, 0)
    d = max(k - i - eps_i, 0)
    m_eps = c + d
    order = k - delta - m_eps
    base = (i - k + eps_i + m_eps, j - k + eps_j + m_eps)
    return shift_poly(_phi_poly(poset, base[0], base[1], order), c, d)


def _forced_path(region: Region, l: int, leftmost: bool) -> LatticePath:
    src, snk = region.sources[l], region.sinks[l]
    verts = [src]
    if leftmost:
        while verts[-1][0] < snk[0]:
            verts.append((verts[-1][0] + 1, verts[-1][1]))
        while verts[-1][1] < snk[1]:
            verts.append((verts[-1][0], verts[-1][1] + 1))
    else:
        while verts[-1][1] < snk[1]:
            verts.append((verts[-1][0], verts[-1][1] + 1))
        while verts[-1][0] < snk[0]:
            verts.append((verts[-1][0] + 1, verts[-1][1]))
    for v in verts:
        if v not in region.members:
            raise MalformedOverlay(f"forced route leaves the region at {v}")
    return LatticePath(tuple(verts))


def hugging_families(grid: RectPoset, m: int, n: int, k: int, c: int, d: int
                     ) -> List[NilpFamily]:
    """All (c,d)-boundary-hugging families: the first c paths pinned to the
    leftmost routes, the last d to the rightmost; empty when c + d > k or
    k < 0."""
    if k < 0 or c + d > k:
        return []
    region = grid.hexagon(m, n, k)
    forced: Dict[int, LatticePath] = {}
    for l in range(c):
        forced[l] = _forced_path(region, l, leftmost=True)
    for l in range(k - d, k):
        forced[l] = _forced_path(region, l, leftmost=False)
    out: List[NilpFamily] = []

    def extend(l: int, chosen: List[LatticePath], occupied: Set[GridPoint]):
        if l == k:
            out.append(NilpFamily(region, tuple(chosen)))
            return
        if l in forced:
            options = [forced[l]]
        else:
            options = enum_paths(region, region.sources[l], region.sinks[l])
        for path in options:
            verts = set(path.vertices)
            if verts & occupied:
                continue
            chosen.append(path)
            extend(l + 1, chosen, occupied | verts)
            chosen.pop()

    extend(0, [], set())
    return out


def family_weight(fam: NilpFamily, ambient: RectPoset) -> Polynomial:
    """Monomial of A-variables over region members inside the ambient
    rectangle left uncovered by the family."""
    members = [p for p in fam.region.members
               if 0 <= p[0] <= ambient.r and 0 <= p[1] <= ambient.s
               and p[0] >= 0 and p[1] >= 0]
    return uncovered_monomial(members, fam.covered())


def plucker_check(poset: RectPoset, i: int, j: int, k: int) -> Report:
    """Verify the Plucker-like phi identity for the query (i, j, k), both as
    a symbolic polynomial identity and via the color-swapping bijection."""
    M = max(k - i, 0) + max(k - j, 0)
    if not (1 <= k <= poset.r + poset.s + 1 and M <= k):
        raise PreconditionViolated(f"need M <= k <= r+s+1, got M={M}, k={k}")
    rep = Report(name=f"plucker r={poset.r} s={poset.s} i={i} j={j} k={k}")

    lhs = mu_phi(poset, i, j, k, 0, 0, 0) * mu_phi(poset, i, j, k, 1, 1, 1)
    rhs = (mu_phi(poset, i, j, k, 1, 0, 0) * mu_phi(poset, i, j, k, 0, 1, 1)
           + mu_phi(poset, i, j, k, 0, 1, 0) * mu_phi(poset, i, j, k, 1, 0, 1))
    rep.check(lhs == rhs, {"stage": "symbolic", "lhs": str(lhs), "rhs": str(rhs)})

    grid = poset if M == 0 else poset.extended()
    cj, ci = max(k - j, 0), max(k - i, 0)
    cj1, ci1 = max(k - j - 1, 0), max(k - i - 1, 0)
    B = hugging_families(grid, i - k, j - k, k, cj, ci)
    R = hugging_families(grid, i - k + 1, j - k + 1, k - 1, cj1, ci1)
    L1 = hugging_families(grid, i - k + 1, j - k, k, cj, ci1)
    L2 = hugging_families(grid, i - k, j - k + 1, k - 1, cj1, ci)
    R1 = hugging_families(grid, i - k, j - k + 1, k, cj1, ci)
    R2 = hugging_families(grid, i - k + 1, j - k, k - 1, cj, ci1)

    gf_expect = [
        (B, (0, 0, 0)), (R, (1, 1, 1)), (L1, (1, 0, 0)),
        (L2, (0, 1, 1)), (R1, (0, 1, 0)), (R2, (1, 0, 1)),
    ]
    for fams, (ei, ej, delta) in gf_expect:
        total = Polynomial(())
        for f in fams:
            total = total + family_weight(f, poset)
        expect = mu_phi(poset, i, j, k, ei, ej, delta)
        rep.check(total == expect,
                  {"stage": "generating-function", "eps": [ei, ej], "delta": delta,
                   "observed": str(total), "expected": str(expect)})

    rep.check(len(B) * len(R) == len(L1) * len(L2) + len(R1) * len(R2),
              {"stage": "cardinality", "lhs": len(B) * len(R),
               "rhs": [len(L1) * len(L2), len(R1) * len(R2)]})

    left_keys = {(b.key(), r.key()) for b in L1 for r in L2}
    right_keys = {(b.key(), r.key()) for b in R1 for r in R2}
    images = set()
    for b in B:
        for rfam in R:
            o = make_overlay(b, rfam)
            try:
                side, o2 = swap(o)
            except MalformedOverlay as e:
                rep.fail({"stage": "swap", "overlay": o.edge_colors(), "error": str(e)})
                continue
            rep.trials += 1
            key = (o2.blue.key(), o2.red.key())
            target = left_keys if side == "left" else right_keys
            rep.check(key in target,
                      {"stage": "membership", "side": side, "overlay": o.edge_colors()})
            rep.check(key not in images,
                      {"stage": "injectivity", "overlay": o.edge_colors()})
            images.add(key)
            w_in = family_weight(b, poset) * family_weight(rfam, poset)
            w_out = family_weight(o2.blue, poset) * family_weight(o2.red, poset)
            rep.check(w_in == w_out,
                      {"stage": "weight", "overlay": o.edge_colors(),
                       "observed": str(w_out), "expected": str(w_in)})
            try:
                back = unswap(side, o2)
                rep.check(back.key() == o.key(),
                          {"stage": "round-trip", "overlay": o.edge_colors()})
            except MalformedOverlay as e:
                rep.fail({"stage": "unswap", "overlay": o.edge_colors(), "error": str(e)})
    return rep
