"""Level curves of wedge loads, curve intervals, and canonical positions.

Everything runs in a sheared coordinate frame per (polygon, vertex): the two
cone rays of the wedge become the positive axes, so "point p lies in the
wedge with apex a" turns into componentwise dominance  u(p) >= u(a) and
v(p) >= v(a).  Coordinates are scaled to integers (cross products against the
integer cone rays, doubled so that midpoints stay integral) and carry a
symbolic epsilon term that realizes the deterministic general-position rule:
point with id t behaves as if shifted by t*eps*delta for an infinitesimal
eps > 0 and a fixed generic integer direction delta.

A coordinate is a pair (main, eps_coefficient); comparison is lexicographic.
Infinite ray positions use float infinities in the main slot, which compare
correctly against ints.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .geometry import ConvexPolygon, cross, perturbation_direction

NEG_INF = (float("-inf"), 0)
POS_INF = (float("inf"), 0)


class EmptyLevelCurveError(ValueError):
    """Raised when the requested level exceeds the total available load."""


def _int_vec(v):
    fx, fy = Fraction(v[0]), Fraction(v[1])
    den = fx.denominator * fy.denominator // _gcd(fx.denominator, fy.denominator)
    return (int(fx * den), int(fy * den))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


class WedgeFrame:
    """Shear frame mapping the cone at vertex i onto the dominance quadrant."""

    def __init__(self, poly: ConvexPolygon, i: int, delta=None):
        self.poly = poly
        self.i = i % poly.n
        d1, d2 = poly.cone_dirs(i)
        self.e1 = _int_vec(d1)
        self.e2 = _int_vec(d2)
        c = cross(self.e1, self.e2)
        if c == 0:
            raise ValueError("degenerate cone at vertex %d" % i)
        self.sigma = 1 if c > 0 else -1
        self.absc = abs(c)
        self.delta = delta if delta is not None else perturbation_direction(poly)
        # doubled scale keeps midpoints of point coordinates integral
        self._u_eps = 2 * self.sigma * cross(self.delta, self.e2)
        self._v_eps = 2 * self.sigma * cross(self.e1, self.delta)

    def ucoord(self, p, pid=0):
        return (2 * self.sigma * (p[0] * self.e2[1] - p[1] * self.e2[0]),
                self._u_eps * pid)

    def vcoord(self, p, pid=0):
        return (2 * self.sigma * (self.e1[0] * p[1] - self.e1[1] * p[0]),
                self._v_eps * pid)

    def to_real(self, u_main, v_main):
        """Real-plane point for sheared coords, epsilon term dropped."""
        u = Fraction(u_main, 2 * self.absc)
        v = Fraction(v_main, 2 * self.absc)
        return (u * self.e1[0] + v * self.e2[0],
                u * self.e1[1] + v * self.e2[1])

    def items(self, points, weights=None, ids=None):
        """Sheared (U, V, pid, w) records for a point collection."""
        out = []
        for idx, p in enumerate(points):
            pid = ids[idx] if ids is not None else idx
            w = 1 if weights is None else weights[idx]
            out.append((self.ucoord(p, pid + 1), self.vcoord(p, pid + 1), pid, w))
        return out


def walk_key(pos):
    """Total order of curve positions from head (small u, large v) to tail."""
    (u, v) = pos
    return (u[0], u[1], -v[0], -v[1])


@dataclass(frozen=True)
class CurveInterval:
    lo: tuple
    hi: tuple


class LevelCurve:
    """Monotone staircase bounding the apex region of wedge load >= level.

    ``drops`` lists the vertical edges head-to-tail as (u, v_above, v_below);
    the head ray sits at level drops[0][1], the tail ray is the last drop,
    whose v_below is -infinity.
    """

    def __init__(self, frame: WedgeFrame, level, items):
        if level <= 0:
            raise ValueError("level must be positive")
        total = sum(w for (_, _, _, w) in items)
        if total < level:
            raise EmptyLevelCurveError(
                "total load %s below level %s" % (total, level))
        self.frame = frame
        self.level = level
        self.items = sorted(items, key=lambda it: it[0])

        n = len(self.items)
        # thr[j]: staircase level over apex u in (U_{j-1}, U_j], i.e. the
        # largest v such that weight{p in items[j:] : V_p >= v} >= level;
        # None once the suffix is too light.  Scanned right to left with the
        # minimal "top set" kept in a min-heap on V.
        thr = [None] * n
        heap = []
        top_w = 0
        for j in range(n - 1, -1, -1):
            _, V, _, w = self.items[j]
            if top_w < level or V > heap[0][0]:
                heapq.heappush(heap, (V, w))
                top_w += w
                while top_w - heap[0][1] >= level:
                    top_w -= heap[0][1]
                    heapq.heappop(heap)
            if top_w >= level:
                thr[j] = heap[0][0]
        last_j = max(j for j in range(n) if thr[j] is not None)
        us = [it[0] for it in self.items]
        drops = []
        prev = thr[0]
        for j in range(1, last_j + 1):
            if thr[j] != prev:
                drops.append((us[j - 1], prev, thr[j]))
                prev = thr[j]
        drops.append((us[last_j], prev, NEG_INF))
        self.drops = drops
        self._drop_us = [d[0] for d in drops]
        self._drop_vlos = [d[2] for d in drops]
        self.head = (drops[0][0], drops[0][1])
        tail_candidates = [self.items[j][1] for j in range(last_j, n)]
        self.tail = (us[last_j], min([thr[last_j]] + tail_candidates))

    # -- queries ---------------------------------------------------------

    def level_at(self, u):
        """Staircase level for positions with the given u, None past tail."""
        idx = bisect_left(self._drop_us, u)
        if idx == len(self.drops):
            return None
        return self.drops[idx][1]

    def interval_of(self, U_q, V_q):
        """Closed range of curve positions whose wedge contains the point
        with sheared coords (U_q, V_q); None when empty."""
        drops = self.drops
        # latest position with u <= U_q
        idx = bisect_left(self._drop_us, U_q)
        if idx == len(drops):
            hi = (drops[-1][0], NEG_INF)  # the whole tail ray qualifies
        elif drops[idx][0] == U_q:
            hi = (U_q, drops[idx][2])
        else:
            hi = (U_q, drops[idx][1])
        if V_q < hi[1]:
            return None
        # earliest position with v <= V_q
        head_level = drops[0][1]
        if V_q >= head_level:
            lo = (NEG_INF, head_level)
        else:
            # v_below is strictly decreasing over drops; find the first <= V_q
            a, b = 0, len(drops) - 1
            while a < b:
                m = (a + b) // 2
                if self._drop_vlos[m] <= V_q:
                    b = m
                else:
                    a = m + 1
            lo = (drops[a][0], V_q)
        if lo[0] > U_q:
            return None
        return CurveInterval(lo=lo, hi=hi)

    def interval_of_point(self, p, pid=0):
        f = self.frame
        return self.interval_of(f.ucoord(p, pid), f.vcoord(p, pid))

    def chain_real(self):
        """Finite staircase vertices in the real plane, head to tail."""
        pts = []
        f = self.frame
        for (du, v_hi, v_lo) in self.drops:
            pts.append(f.to_real(du[0], v_hi[0]))
            if v_lo != NEG_INF:
                pts.append(f.to_real(du[0], v_lo[0]))
        return pts


def build_level_curve(poly, i, points, level, weights=None, frame=None):
    frame = frame or WedgeFrame(poly, i)
    return LevelCurve(frame, level, frame.items(points, weights))


def canonical_positions(curve: LevelCurve, q_items):
    """Finitely many curve positions such that the wedge content from the
    given points is constant strictly between consecutive ones.

    Includes every interval endpoint, every staircase corner, head and tail,
    one representative out on each infinite ray, and one representative
    strictly inside each remaining gap.
    """
    seen = {}

    def add(pos):
        seen.setdefault(walk_key(pos), pos)

    drops = curve.drops
    head_u, head_level = curve.head
    add(((head_u[0] - 2, head_u[1]), head_level))  # head-ray representative
    add(curve.head)
    for (du, v_hi, v_lo) in drops:
        add((du, v_hi))
        if v_lo != NEG_INF:
            add((du, v_lo))
    add(curve.tail)
    tail_u, tail_v = curve.tail
    add((tail_u, (tail_v[0] - 2, tail_v[1])))  # tail-ray representative
    for (U, V, _pid, _w) in q_items:
        iv = curve.interval_of(U, V)
        if iv is None:
            continue
        if iv.lo[0] != NEG_INF:
            add(iv.lo)
        if iv.hi[1] != NEG_INF:
            add(iv.hi)
    ordered = [seen[k] for k in sorted(seen)]
    # gap representatives; all base positions have even coordinates, so the
    # integer midpoint is exact and strictly inside
    out = []
    for a, b in zip(ordered, ordered[1:]):
        out.append(a)
        if a[0] == b[0]:
            mid = (a[0], ((a[1][0] + b[1][0]) // 2, (a[1][1] + b[1][1]) // 2))
        elif a[1] == b[1]:
            mid = (((a[0][0] + b[0][0]) // 2, (a[0][1] + b[0][1]) // 2), a[1])
        else:
            raise AssertionError("gap straddles a staircase corner")
        if walk_key(a) < walk_key(mid) < walk_key(b):
            out.append(mid)
    out.append(ordered[-1])
    return out


def position_index_ranges(curve: LevelCurve, items):
    """Canonical positions of the curve plus, per item, the closed index
    range of positions whose wedge contains it (None when empty).

    Interval endpoints are themselves canonical, so the snapping is exact;
    infinite ray endpoints snap to the ray representatives at the ends.
    """
    positions = canonical_positions(curve, items)
    keys = [walk_key(p) for p in positions]
    ranges = {}
    for (U, V, pid, _w) in items:
        iv = curve.interval_of(U, V)
        if iv is None:
            ranges[pid] = None
            continue
        lo_idx = bisect_left(keys, walk_key(iv.lo))
        hi_idx = bisect_right(keys, walk_key(iv.hi)) - 1
        ranges[pid] = (lo_idx, hi_idx)
    return positions, ranges


class _Fenwick:
    def __init__(self, n):
        self.n = n
        self.t = [0] * (n + 1)

    def add(self, i, w):
        i += 1
        while i <= self.n:
            self.t[i] += w
            i += i & -i

    def prefix(self, i):
        s = 0
        while i > 0:
            s += self.t[i]
            i -= i & -i
        return s


def dominance_loads(positions, items):
    """Load (weight of dominating points) at each position, via one sweep.

    positions: list of ((u),(v)) pairs; items: (U, V, pid, w).  Returns a
    list parallel to positions.
    """
    vs = sorted(it[1] for it in items)
    fw = _Fenwick(len(vs))
    by_u = sorted(range(len(items)), key=lambda k: items[k][0], reverse=True)
    order = sorted(range(len(positions)), key=lambda k: positions[k][0],
                   reverse=True)
    loads = [0] * len(positions)
    ptr = 0
    total = 0
    for k in order:
        u, v = positions[k]
        while ptr < len(by_u) and items[by_u[ptr]][0] >= u:
            it = items[by_u[ptr]]
            fw.add(bisect_left(vs, it[1]), it[3])
            total += it[3]
            ptr += 1
        lo_rank = bisect_left(vs, v)
        loads[k] = total - fw.prefix(lo_rank)
    return loads


def wedge_load(poly, i, apex, points, weights=None, symbolic=True, frame=None):
    """Count (or weighted sum) of points inside the wedge at vertex i with
    the given apex; the apex itself carries no symbolic shift."""
    frame = frame or WedgeFrame(poly, i)
    ua, va = frame.ucoord(apex), frame.vcoord(apex)
    total = 0
    for idx, p in enumerate(points):
        pu, pv = frame.ucoord(p, idx + 1), frame.vcoord(p, idx + 1)
        if symbolic:
            inside = pu >= ua and pv >= va
        else:
            inside = pu[0] >= ua[0] and pv[0] >= va[0]
        if inside:
            total += 1 if weights is None else weights[idx]
    return total


def min_load_on_curve(curve: LevelCurve, q_items, return_witness=False):
    """Minimum load over the canonical positions of the curve with respect to
    the given items; correct because the load is piecewise constant between
    canonical positions."""
    positions = canonical_positions(curve, q_items)
    if not q_items:
        return (0, positions[0]) if return_witness else 0
    loads = dominance_loads(positions, q_items)
    best = min(range(len(loads)), key=lambda k: loads[k])
    if return_witness:
        return loads[best], positions[best]
    return loads[best]
