"""Partial interval covers of a level curve and the full point-set
decomposition built from them.

``compute_cover`` colors a small set of points per round so that every wedge
with apex on the curve sees every round's color while no curve position is
covered by more than two chosen intervals per round.  ``decompose_points``
iterates it over all polygon vertices, reserving extreme points so that later
iterations keep enough load.  ``decompose_translates`` lifts the point
decomposition to translate collections through the reflection duality and the
grid reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import (ConvexPolygon, cell_partition, dot, grid_spec,
                       perturbation_direction, reflect, strict_support_edges)
from .levelcurve import (LevelCurve, WedgeFrame, min_load_on_curve,
                         position_index_ranges)

_NEG = (float("-inf"), 0)


class CoverPreconditionError(ValueError):
    """Some curve position has fewer than 2t candidate points."""

    def __init__(self, position, have, need):
        self.position = position
        self.have = have
        self.need = need
        super().__init__(
            "curve position %r has %d candidates, need %d"
            % (position, have, need))


@dataclass
class ColorAssignment:
    """Partial coloring of points.  ``colors`` maps point id to a color
    number; colors 1..T are common to every vertex iteration, higher numbers
    were produced by some iterations only.  ``tags`` records which vertex
    iteration assigned each point."""

    colors: dict = field(default_factory=dict)
    T: int = 0
    tags: dict = field(default_factory=dict)


@dataclass
class IterationRecord:
    i: int
    L: int
    t: int
    x_size: int
    colored: int


@dataclass
class DecompositionTrace:
    records: list = field(default_factory=list)
    below_threshold: bool = False


class _NextFree:
    """Union-find over position indices: next uncovered index >= i."""

    def __init__(self, n):
        self.p = list(range(n + 1))

    def find(self, i):
        r = i
        while self.p[r] != r:
            r = self.p[r]
        while self.p[i] != r:
            self.p[i], i = r, self.p[i]
        return r

    def mark(self, i):
        self.p[i] = i + 1


def compute_cover(curve: LevelCurve, items, t: int):
    """Color generating points of curve intervals with rounds 1..t.

    Every canonical curve position must be contained in at least 2t of the
    items' wedges.  Each round sorts the remaining intervals with containing
    intervals first, keeps an interval iff it covers a still-uncovered
    position, prunes redundant kept intervals, and colors the survivors'
    points with the round number.  Returns {point id: round}.
    """
    if t <= 0:
        return {}
    positions, ranges = position_index_ranges(curve, items)
    K = len(positions)
    intervals = [(lo_hi[0], lo_hi[1], pid)
                 for (_, _, pid, _w) in items
                 if (lo_hi := ranges[pid]) is not None]

    depth = [0] * (K + 1)
    for lo, hi, _ in intervals:
        depth[lo] += 1
        depth[hi + 1] -= 1
    run = 0
    for idx in range(K):
        run += depth[idx]
        if run < 2 * t:
            raise CoverPreconditionError(positions[idx], run, 2 * t)

    colors = {}
    remaining = intervals
    for round_no in range(1, t + 1):
        remaining.sort(key=lambda iv: (iv[0], -iv[1], iv[2]))
        nxt = _NextFree(K)
        kept = []
        for lo, hi, pid in remaining:
            u = nxt.find(lo)
            if u > hi:
                continue
            kept.append((lo, hi, pid))
            while u <= hi:
                nxt.mark(u)
                u = nxt.find(u + 1)
        # prune redundant intervals, contained-before-containing: while a
        # container is present its contained intervals are redundant, so
        # scanning in reverse kept order removes them first and a contained
        # interval can never outlive its container.  Removals only lower
        # coverage counts, so a single pass reaches a redundancy-free set,
        # which in turn covers no position more than twice.
        cnt = [0] * K
        for lo, hi, _ in kept:
            for idx in range(lo, hi + 1):
                cnt[idx] += 1
        pruned = []
        for lo, hi, pid in reversed(kept):
            if min(cnt[lo:hi + 1]) >= 2:
                for idx in range(lo, hi + 1):
                    cnt[idx] -= 1
            else:
                pruned.append((lo, hi, pid))
        assert min(cnt) >= 1 and max(cnt) <= 2
        for _, _, pid in pruned:
            colors[pid] = round_no
        remaining = [iv for iv in remaining if iv[2] not in colors]
    return colors


def _order_keys(poly, j, delta, points, ids):
    """Symbolic sort keys along the inward normal of edge j; the epsilon term
    applies the same general-position shift the wedge frames use."""
    nj = poly.inward_normal(j)
    shift = dot(delta, nj)
    return {pid: (dot(points[idx], nj), (pid + 1) * shift)
            for idx, pid in enumerate(ids)}


def _reserved_filter(poly, i, delta, curve, items, points, target):
    """Point ids that survive the extreme-prefix reservation.

    At each canonical curve position, the minimal prefix of current wedge
    members in decreasing order along every reserved direction whose total
    weight reaches ``target`` is reserved; a point survives if some position
    has it as a non-reserved member.  With unit weights the prefix is simply
    the first ``target`` points.
    """
    support = sorted(strict_support_edges(poly, i))
    positions, ranges = position_index_ranges(curve, items)
    K = len(positions)
    ids = [pid for (_, _, pid, _w) in items]
    weight = {pid: w for (_, _, pid, w) in items}
    pts = {pid: points[idx] for idx, pid in enumerate(ids)}
    if not support or target <= 0:
        return {pid for pid in ids if ranges[pid] is not None}
    keymaps = [_order_keys(poly, j, delta, [pts[pid] for pid in ids], ids)
               for j in support]
    add_at = [[] for _ in range(K)]
    rem_after = [[] for _ in range(K)]
    for pid in ids:
        rng = ranges[pid]
        if rng is None:
            continue
        add_at[rng[0]].append(pid)
        rem_after[rng[1]].append(pid)

    def thresholds(km):
        """Per position: smallest key of the reserved top group, or None when
        the whole membership is reserved.  A member is reserved at c iff its
        key >= thresholds[c]."""
        rank = {key: idx + 1 for idx, key in
                enumerate(sorted(km[pid] for pid in ids))}
        by_rank = sorted(rank, key=rank.get)
        R = len(rank)
        tree = [0] * (R + 1)

        def upd(r, w):
            while r <= R:
                tree[r] += w
                r += r & -r

        total = 0
        thr = [None] * K
        for c in range(K):
            for pid in add_at[c]:
                upd(rank[km[pid]], weight[pid])
                total += weight[pid]
            if total >= target:
                # largest rank x with prefix(x) <= total - target; the
                # threshold member is rank x + 1
                rem = total - target
                pos = 0
                step = 1 << (R.bit_length())
                while step:
                    nxt = pos + step
                    if nxt <= R and tree[nxt] <= rem:
                        rem -= tree[nxt]
                        pos = nxt
                    step >>= 1
                thr[c] = by_rank[pos]  # key at rank pos + 1
            for pid in rem_after[c]:
                upd(rank[km[pid]], -weight[pid])
                total -= weight[pid]
        return thr

    all_thr = [thresholds(km) for km in keymaps]
    if len(support) == 1:
        km = keymaps[0]
        # sparse table for range maxima over thresholds
        vals = [v if v is not None else _NEG for v in all_thr[0]]
        table = [vals]
        span = 1
        while span * 2 <= K:
            prev = table[-1]
            table.append([max(prev[x], prev[x + span])
                          for x in range(K - 2 * span + 1)])
            span *= 2

        def range_max(lo, hi):
            lev = (hi - lo + 1).bit_length() - 1
            row = table[lev]
            return max(row[lo], row[hi - (1 << lev) + 1])

        out = set()
        for pid in ids:
            rng = ranges[pid]
            if rng is None:
                continue
            if km[pid] < range_max(rng[0], rng[1]):
                out.add(pid)
        return out

    # several reserved directions: check positions one by one
    members = set()
    out = set()
    for c in range(K):
        members.update(add_at[c])
        thrs = [thr[c] for thr in all_thr]
        if all(th is not None for th in thrs):
            for pid in members:
                if pid not in out and all(
                        km[pid] < th for km, th in zip(keymaps, thrs)):
                    out.add(pid)
        for pid in rem_after[c]:
            members.discard(pid)
    return out


def decompose_points(poly: ConvexPolygon, points, k: int):
    """Color points so that every wedge with apex on a level-k curve contains
    all common colors 1..T; returns (ColorAssignment, DecompositionTrace).

    Wedges are the cones at the vertices of ``poly`` itself; callers working
    with translates reflect first.
    """
    if k < 1:
        raise ValueError("level must be at least 1")
    n = poly.n
    delta = perturbation_direction(poly)
    frames = [WedgeFrame(poly, i, delta) for i in range(n)]
    all_items = [f.items(points) for f in frames]
    curves = [LevelCurve(frames[i], k, all_items[i]) for i in range(n)]

    assignment = ColorAssignment()
    trace = DecompositionTrace()
    uncolored = set(range(len(points)))
    t_values = []
    for i in range(n):
        L = min(
            min_load_on_curve(
                curves[z],
                [it for it in all_items[z] if it[2] in uncolored])
            for z in range(i, n))
        t_i = L // (64 * n)
        t_values.append(t_i)
        if t_i == 0:
            trace.records.append(IterationRecord(i=i, L=L, t=0, x_size=0,
                                                 colored=0))
            continue
        live_items = [it for it in all_items[i] if it[2] in uncolored]
        keep = _reserved_filter(poly, i, delta, curves[i], live_items,
                                [points[it[2]] for it in live_items],
                                L // (2 * n))
        x_items = [it for it in live_items if it[2] in keep]
        round_colors = compute_cover(curves[i], x_items, t_i)
        for pid, c in round_colors.items():
            assignment.colors[pid] = c
            assignment.tags[pid] = (i, c)
            uncolored.discard(pid)
        trace.records.append(IterationRecord(
            i=i, L=L, t=t_i, x_size=len(x_items),
            colored=len(round_colors)))
    if any(t == 0 for t in t_values):
        assignment.T = 0
        trace.below_threshold = True
    else:
        assignment.T = min(t_values)
    return assignment, trace


def decompose_translates(poly: ConvexPolygon, centers, k: int,
                         max_workers=1):
    """Split a collection of translates (given by centers) into classes such
    that every point of the plane covered at least k times is covered by each
    class.  Returns (classes, info dict).

    Works in the dual: translate centers become points against the reflected
    polygon; each grid cell is decomposed independently at level k // beta.
    Uncolored centers and colors above the common count fall into class 1.
    """
    if k < 1:
        raise ValueError("coverage level must be at least 1")
    refl = reflect(poly)
    grid = grid_spec(refl)
    k_cell = k // grid.beta
    info = {"beta": grid.beta, "k_cell": k_cell, "cells": {}}
    if k_cell < 1:
        info["trivial"] = True
        return [list(range(len(centers)))], info
    info["trivial"] = False
    cells = cell_partition(centers, grid)
    color_of = {}
    t_cells = []

    def run_cell(idxs):
        pts = [centers[idx] for idx in idxs]
        if len(pts) < k_cell:
            return {"skipped": True, "size": len(pts)}, None, {}
        asg, trace = decompose_points(refl, pts, k_cell)
        cell_info = {"skipped": False, "size": len(pts), "T": asg.T,
                     "trace": [vars(r) for r in trace.records]}
        colors = {idx: asg.colors[local]
                  for local, idx in enumerate(idxs) if local in asg.colors}
        return cell_info, asg.T, colors

    ordered = sorted(cells.items())
    workers = min(max_workers, len(ordered)) if ordered else 1
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_cell,
                                    [idxs for _, idxs in ordered]))
    else:
        results = [run_cell(idxs) for _, idxs in ordered]
    for (cell, _), (cell_info, t_cell, colors) in zip(ordered, results):
        info["cells"][cell] = cell_info
        if t_cell is not None:
            t_cells.append(t_cell)
        color_of.update(colors)
    T = min(t_cells) if t_cells else 0
    info["T"] = T
    if T < 2:
        return [list(range(len(centers)))], info
    classes = [[] for _ in range(T)]
    for idx in range(len(centers)):
        c = color_of.get(idx)
        if c is None or c > T:
            classes[0].append(idx)
        else:
            classes[c - 1].append(idx)
    return classes, info
