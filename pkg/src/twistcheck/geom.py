"""Exact planar chains on a cylinder with antipodal square walls.

Curves live on a strip with x identified modulo a period, decorated with a row
of square walls centered on the equator.  Each wall glues its boundary to
itself by the point reflection through its own center, so a chain that ends on
a wall continues from the antipodal boundary point.  All coordinates are
rational and every predicate is exact.  Touching or collinear contact between
distinct pieces is rejected as a degeneracy, never resolved by tolerance.

A local side marker transported along a chain is preserved by the x-period
gluing and flipped by every wall passage (the antipodal gluing reverses
orientation, the cylinder gluing does not).  Signed crossing counts against a
chain carrying such a marker are therefore well defined whenever the marked
chain is open or passes through an even number of walls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

Point = tuple[Fraction, Fraction]


class GeometryError(ValueError):
    """A chain breaks the layout rules or a contact is degenerate."""


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def _orient(a: Point, b: Point, c: Point) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _between(a: Point, b: Point, p: Point) -> bool:
    # assumes a, b, p collinear; closed interval test
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_point(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


@dataclass(frozen=True)
class Layout:
    """Row of `ncaps` unit-spaced square walls on a cylinder of that period."""

    ncaps: int
    half: Fraction = Fraction(1, 4)

    @property
    def period(self) -> Fraction:
        return Fraction(self.ncaps)

    def center(self, wall: int, copy: int = 0) -> Point:
        return (Fraction(wall + copy * self.ncaps), Fraction(0))

    def on_boundary(self, wall: int, copy: int, p: Point) -> bool:
        cx, cy = self.center(wall, copy)
        return max(abs(p[0] - cx), abs(p[1] - cy)) == self.half

    def strictly_inside(self, wall: int, copy: int, p: Point) -> bool:
        cx, cy = self.center(wall, copy)
        return max(abs(p[0] - cx), abs(p[1] - cy)) < self.half

    def copy_for(self, wall: int, p: Point) -> int | None:
        """The copy index whose square boundary contains p, if any."""
        k0 = math.floor((p[0] - wall) / self.period)
        for k in (k0 - 1, k0, k0 + 1):
            if self.on_boundary(wall, k, p):
                return k
        return None

    def antipode(self, wall: int, copy: int, p: Point) -> Point:
        cx, cy = self.center(wall, copy)
        return (2 * cx - p[0], 2 * cy - p[1])

    def sides(self, wall: int, copy: int) -> list[tuple[Point, Point]]:
        cx, cy = self.center(wall, copy)
        h = self.half
        ne = (cx + h, cy + h)
        nw = (cx - h, cy + h)
        sw = (cx - h, cy - h)
        se = (cx + h, cy - h)
        return [(ne, nw), (nw, sw), (sw, se), (se, ne)]

    def is_corner(self, wall: int, copy: int, p: Point) -> bool:
        cx, cy = self.center(wall, copy)
        return abs(p[0] - cx) == self.half and abs(p[1] - cy) == self.half

    def core_key(self, wall: int, copy: int, p: Point) -> tuple:
        """Canonical key of the glued boundary point (p and its antipode agree)."""
        q = self.antipode(wall, copy, p)
        red = lambda v: (v[0] - self.period * (v[0] // self.period), v[1])
        return min(red(p), red(q))


@dataclass
class Chain:
    """A directed path of straight segments, possibly passing through walls.

    runs[i] is a polyline with at least two points.  jumps[i] names the wall
    through which the end of runs[i] is glued to the start of the next run,
    wrapping around when the chain is closed.  A closed chain with no jumps is
    a plain polygon whose single run starts and ends at the same point.
    """

    runs: list[list[Point]]
    jumps: list[int]
    closed: bool

    @property
    def njumps(self) -> int:
        return len(self.jumps)

    def segments(self) -> Iterator[tuple[int, int, Point, Point, int]]:
        """Yield (run, seg, a, b, side_marker); the marker flips per jump."""
        for ri, run in enumerate(self.runs):
            h = -1 if ri % 2 else 1
            for si in range(len(run) - 1):
                yield ri, si, run[si], run[si + 1], h

    def map_points(self, f: Callable[[Point], Point],
                   wall_map: Callable[[int], int]) -> "Chain":
        return Chain(runs=[[f(p) for p in run] for run in self.runs],
                     jumps=[wall_map(j) for j in self.jumps],
                     closed=self.closed)

    def reversed_chain(self) -> "Chain":
        runs = [list(reversed(run)) for run in reversed(self.runs)]
        if not self.jumps:
            return Chain(runs=runs, jumps=[], closed=self.closed)
        if self.closed:
            n = len(self.runs)
            jumps = [self.jumps[n - 2 - i] for i in range(n - 1)]
            jumps.append(self.jumps[-1])
        else:
            jumps = list(reversed(self.jumps))
        return Chain(runs=runs, jumps=jumps, closed=self.closed)


def _jump_links(chain: Chain) -> list[tuple[int, Point, Point]]:
    """(wall, leaving point, entering point) for each glued junction."""
    links = []
    for i, wall in enumerate(chain.jumps):
        end = chain.runs[i][-1]
        nxt = chain.runs[(i + 1) % len(chain.runs)] if chain.closed else chain.runs[i + 1]
        links.append((wall, end, nxt[0]))
    return links


def chain_boundary_points(chain: Chain, layout: Layout) -> list[tuple[int, int, Point]]:
    """Resolved (wall, copy, point) for every wall contact the chain declares."""
    out = []
    for wall, end, start in _jump_links(chain):
        k = layout.copy_for(wall, end)
        if k is None:
            raise GeometryError(f"jump point {end} not on wall {wall}")
        out.append((wall, k, end))
        out.append((wall, k, start))
    return out


def validate_chain(chain: Chain, layout: Layout) -> None:
    """Check structure, jump gluing, and absence of undeclared wall contact."""
    if not chain.runs or any(len(run) < 2 for run in chain.runs):
        raise GeometryError("each run needs at least two points")
    for run in chain.runs:
        for a, b in zip(run, run[1:]):
            if a == b:
                raise GeometryError("repeated consecutive point")
    nruns = len(chain.runs)
    if chain.closed:
        if nruns == 1 and not chain.jumps:
            if chain.runs[0][0] != chain.runs[0][-1]:
                raise GeometryError("closed polygon must end where it starts")
        elif len(chain.jumps) != nruns:
            raise GeometryError("closed chain needs one jump per run")
    else:
        if len(chain.jumps) != nruns - 1:
            raise GeometryError("open chain needs one jump between runs")

    # no doubling back within a run
    for run in chain.runs:
        for i in range(len(run) - 2):
            d1 = (run[i + 1][0] - run[i][0], run[i + 1][1] - run[i][1])
            d2 = (run[i + 2][0] - run[i + 1][0], run[i + 2][1] - run[i + 1][1])
            if d1[0] * d2[1] - d1[1] * d2[0] == 0 and d1[0] * d2[0] + d1[1] * d2[1] < 0:
                raise GeometryError("chain doubles back on itself")

    # jump gluing: leave on a side interior, re-enter at the exact antipode
    seen_cores = set()
    for wall, end, start in _jump_links(chain):
        k = layout.copy_for(wall, end)
        if k is None:
            raise GeometryError(f"jump point {end} not on wall {wall}")
        if layout.is_corner(wall, k, end):
            raise GeometryError(f"jump at a wall corner {end}")
        if layout.antipode(wall, k, end) != start:
            raise GeometryError(
                f"jump through wall {wall} must re-enter antipodally: "
                f"{end} -> {start}")
        core = layout.core_key(wall, k, end)
        if core in seen_cores:
            raise GeometryError(f"two passages share wall point {end}")
        seen_cores.add(core)

    declared = set()
    for wall, k, p in chain_boundary_points(chain, layout):
        declared.add((wall, k, p))

    # every wall contact of every segment must be one of the declared points
    for _, _, a, b, _ in chain.segments():
        lo = min(a[0], b[0]) - layout.half
        hi = max(a[0], b[0]) + layout.half
        for wall in range(layout.ncaps):
            kmin = math.ceil((lo - wall) / layout.period)
            kmax = math.floor((hi - wall) / layout.period)
            for k in range(kmin, kmax + 1):
                _check_segment_against_wall(chain, layout, a, b, wall, k, declared)


def _check_segment_against_wall(chain: Chain, layout: Layout, a: Point, b: Point,
                                wall: int, k: int, declared: set) -> None:
    for p in (a, b):
        if layout.strictly_inside(wall, k, p):
            raise GeometryError(f"point {p} inside wall {wall}")
    a_on = layout.on_boundary(wall, k, a)
    b_on = layout.on_boundary(wall, k, b)
    if a_on and b_on:
        raise GeometryError(f"segment {a}-{b} lies along wall {wall}")
    for p, on in ((a, a_on), (b, b_on)):
        if on and (wall, k, p) not in declared:
            raise GeometryError(f"undeclared wall contact at {p} on wall {wall}")
    for c, d in layout.sides(wall, k):
        kind = _classify(a, b, c, d)
        if kind[0] == "proper":
            raise GeometryError(f"segment {a}-{b} crosses wall {wall} undeclared")
        if kind[0] == "overlap":
            raise GeometryError(f"segment {a}-{b} runs along wall {wall}")
        if kind[0] == "touch":
            for p in kind[1]:
                if not ((p == a and a_on) or (p == b and b_on)):
                    raise GeometryError(
                        f"segment {a}-{b} touches wall {wall} at {p}")


def _classify(a: Point, b: Point, c: Point, d: Point):
    """Classify contact of segments ab and cd.

    Returns ("none",), ("proper", t) with the crossing parameter along ab,
    ("touch", points) for endpoint or corner contact, or ("overlap",).
    """
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if o1 == 0 and o2 == 0:
        touches = [p for p in (c, d) if _between(a, b, p)]
        touches += [p for p in (a, b) if _between(c, d, p)]
        uniq = sorted(set(touches))
        if not uniq:
            return ("none",)
        if len(uniq) == 1:
            return ("touch", uniq)
        return ("overlap",)
    if o1 * o2 < 0 and o3 * o4 < 0:
        t = o3 / (o3 - o4)
        return ("proper", t)
    touches = []
    if o1 == 0 and _between(a, b, c):
        touches.append(c)
    if o2 == 0 and _between(a, b, d):
        touches.append(d)
    if o3 == 0 and _between(c, d, a):
        touches.append(a)
    if o4 == 0 and _between(c, d, b):
        touches.append(b)
    if touches:
        return ("touch", sorted(set(touches)))
    return ("none",)


@dataclass(frozen=True)
class Crossing:
    """A transversal crossing, located along the directed chain."""

    run: int
    seg: int
    t: Fraction
    point: Point
    c_run: int
    c_seg: int
    sign: int


def _shift_range(xlo, xhi, clo, chi, period) -> range:
    kmin = math.ceil((xlo - chi) / period)
    kmax = math.floor((xhi - clo) / period)
    return range(kmin, kmax + 1)


def crossing_events(x: Chain, c: Chain, layout: Layout) -> list[Crossing]:
    """All crossings of directed chain x with side-marked chain c.

    Signs are taken against c's transported side marker; any touching or
    collinear contact between the two chains is an error.
    """
    if c.closed and c.njumps % 2:
        raise GeometryError("side-marked chain passes an odd number of walls")
    period = layout.period
    c_segs = list(c.segments())
    events = []
    for run, seg, a, b, _ in x.segments():
        xlo, xhi = min(a[0], b[0]), max(a[0], b[0])
        for c_run, c_seg, p, q, h in c_segs:
            clo, chi = min(p[0], q[0]), max(p[0], q[0])
            for k in _shift_range(xlo, xhi, clo, chi, period):
                dx = k * period
                ps = (p[0] + dx, p[1])
                qs = (q[0] + dx, q[1])
                kind = _classify(a, b, ps, qs)
                if kind[0] == "none":
                    continue
                if kind[0] != "proper":
                    raise GeometryError(
                        f"degenerate contact between chains near {kind[1:]}"
                        if len(kind) > 1 else "collinear overlap between chains")
                t = kind[1]
                d_x = (b[0] - a[0], b[1] - a[1])
                d_c = (qs[0] - ps[0], qs[1] - ps[1])
                dot = d_x[0] * (-h * d_c[1]) + d_x[1] * (h * d_c[0])
                if dot == 0:
                    raise GeometryError("tangential crossing")
                events.append(Crossing(run=run, seg=seg, t=t,
                                       point=segment_point(a, b, t),
                                       c_run=c_run, c_seg=c_seg,
                                       sign=1 if dot > 0 else -1))
    events.sort(key=lambda e: (e.run, e.seg, e.t))
    for e1, e2 in zip(events, events[1:]):
        if (e1.run, e1.seg, e1.t) == (e2.run, e2.seg, e2.t):
            raise GeometryError(f"two crossings coincide at {e1.point}")
    return events


def signed_crossings(x: Chain, c: Chain, layout: Layout) -> int:
    return sum(e.sign for e in crossing_events(x, c, layout))


def validate_system(chains: dict[str, Chain], layout: Layout) -> None:
    """Validate each chain and reject any degeneracy between distinct chains.

    Proper self crossings and proper crossings between chains are fine; shared
    wall points, touching contact, and collinear overlap are errors.
    """
    cores: dict[tuple, str] = {}
    for name, chain in chains.items():
        validate_chain(chain, layout)
        for wall, end, _ in _jump_links(chain):
            k = layout.copy_for(wall, end)
            core = layout.core_key(wall, k, end)
            if core in cores and cores[core] != name:
                raise GeometryError(
                    f"chains {cores[core]} and {name} share wall point {end}")
            cores[core] = name
    named = list(chains.items())
    for i, (name_a, ca) in enumerate(named):
        segs_a = list(ca.segments())
        for name_b, cb in named[i:]:
            same = name_b == name_a
            segs_b = segs_a if same else list(cb.segments())
            _scan_pair(segs_a, segs_b, layout, same, name_a, name_b,
                       nruns=len(ca.runs), closed=ca.closed)


def _scan_pair(segs_a, segs_b, layout, same, name_a, name_b, nruns, closed):
    period = layout.period
    for ia, (run_a, seg_a, a, b, _) in enumerate(segs_a):
        xlo, xhi = min(a[0], b[0]), max(a[0], b[0])
        for ib, (run_b, seg_b, p, q, _) in enumerate(segs_b):
            if same and ib <= ia:
                continue
            clo, chi = min(p[0], q[0]), max(p[0], q[0])
            for k in _shift_range(xlo, xhi, clo, chi, period):
                if same and k == 0 and _adjacent(segs_a, ia, ib, nruns, closed):
                    continue
                dx = k * period
                kind = _classify(a, b, (p[0] + dx, p[1]), (q[0] + dx, q[1]))
                if kind[0] in ("touch", "overlap"):
                    raise GeometryError(
                        f"degenerate contact between {name_a} and {name_b} "
                        f"near {a}-{b}")


def _adjacent(segs, ia, ib, nruns, closed) -> bool:
    # consecutive segments within one run share a vertex legitimately; so do
    # the two ends of a closed single-run polygon
    ra, sa = segs[ia][0], segs[ia][1]
    rb, sb = segs[ib][0], segs[ib][1]
    if ra == rb and abs(sa - sb) == 1:
        return True
    if closed and nruns == 1 and {ia, ib} == {0, len(segs) - 1}:
        return True
    return False
