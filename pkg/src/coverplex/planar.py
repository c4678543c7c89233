"""Scheduling translates of a convex polygon to keep a planar point set
covered for as long as possible.

The planar problem reduces to the 1-D interval scheduler: translate centers
become points against the reflected polygon, each grid cell is handled
independently, and for each polygon vertex a duration-weighted level curve
turns the cell's sensors into 1-D sensors over the curve's canonical
positions.  All blocks share one global timeline; the achieved duration is
certified only by full simulation (verify_planar), never assumed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cover import _reserved_filter
from .geometry import (ConvexPolygon, cell_partition, grid_spec,
                       perturbation_direction, reflect)
from .levelcurve import (LevelCurve, WedgeFrame, min_load_on_curve,
                         position_index_ranges)
from .rsc import RscInstance, greedy_schedule
from .verify import VerificationReport


@dataclass(frozen=True)
class PlanarSensor:
    id: int
    center: tuple
    d: int


@dataclass
class PlanarInstance:
    polygon: ConvexPolygon
    sensors: list
    universe: list

    def __post_init__(self):
        self.sensors = [s if isinstance(s, PlanarSensor) else PlanarSensor(*s)
                        for s in self.sensors]
        ids = [s.id for s in self.sensors]
        if len(set(ids)) != len(ids):
            raise ValueError("sensor ids must be unique")
        for s in self.sensors:
            if s.d < 1:
                raise ValueError("sensor %d needs positive duration" % s.id)


@dataclass
class PlanarSchedule:
    start: dict = field(default_factory=dict)
    trivial: bool = False
    info: dict = field(default_factory=dict)


def planar_load(instance: PlanarInstance):
    """Per-universe-point total durations and their minimum L, by direct
    point-in-translate tests."""
    poly = instance.polygon
    loads = []
    for u in instance.universe:
        total = sum(s.d for s in instance.sensors
                    if poly.contains(u, center=s.center))
        loads.append(total)
    return loads, (min(loads) if loads else 0)


def curve_rsc_instance(curve: LevelCurve, items):
    """1-D scheduling instance over the curve's canonical positions.

    Each item (a sensor's center in sheared coordinates, weight = duration)
    becomes a 1-D sensor whose range is the index range of positions whose
    wedge contains it.  Items outside every curve wedge are dropped.  The
    back-map ties 1-D sensor ids to the original ids (they coincide).
    """
    positions, ranges = position_index_ranges(curve, items)
    K = len(positions)
    sensors = []
    back = {}
    for (_, _, pid, w) in items:
        rng = ranges[pid]
        if rng is None:
            continue
        sensors.append((pid, rng[0] + 1, rng[1] + 1, w))
        back[pid] = pid
    return RscInstance(K, sensors), back


def plan_schedule(instance: PlanarInstance, max_workers=1) -> PlanarSchedule:
    """Assign start times to (a subset of) the sensors.

    Per grid cell, per polygon vertex: compute the weighted load floor over
    the remaining curves, reserve the extreme-duration prefixes, and run the
    greedy 1-D scheduler on the curve instance, stopped at the per-iteration
    target.  Every block schedules into the shared global timeline, so a
    universe point is protected during times 1..t_i by whichever block is
    responsible for it.
    """
    poly = instance.polygon
    refl = reflect(poly)
    n = refl.n
    delta = perturbation_direction(refl)
    grid = grid_spec(refl)
    _, L = planar_load(instance)
    k_cell = L // grid.beta
    sched = PlanarSchedule()
    sched.info = {"L": L, "beta": grid.beta, "k_cell": k_cell, "cells": {}}
    if k_cell < 1:
        sched.trivial = True
        sched.start = {s.id: 1 for s in instance.sensors}
        return sched

    centers = [s.center for s in instance.sensors]
    cells = cell_partition(centers, grid)
    frames = [WedgeFrame(refl, i, delta) for i in range(n)]

    def run_cell(cell_sensors):
        cell_info = {"size": len(cell_sensors), "iterations": []}
        starts = {}
        if sum(s.d for s in cell_sensors) < k_cell:
            cell_info["skipped"] = True
            return cell_info, starts
        cell_info["skipped"] = False
        pts = [s.center for s in cell_sensors]
        durs = [s.d for s in cell_sensors]
        ids = [s.id for s in cell_sensors]
        all_items = [f.items(pts, weights=durs, ids=ids) for f in frames]
        curves = [LevelCurve(frames[i], k_cell, all_items[i])
                  for i in range(n)]
        center_of = {s.id: s.center for s in cell_sensors}
        unassigned = set(ids)
        for i in range(n):
            live = [[it for it in all_items[z] if it[2] in unassigned]
                    for z in range(n)]
            lw = min(min_load_on_curve(curves[z], live[z])
                     for z in range(i, n))
            t_i = lw // (64 * n)
            if t_i == 0:
                cell_info["iterations"].append(
                    {"i": i, "L": lw, "t": 0, "x_size": 0, "assigned": 0})
                continue
            keep = _reserved_filter(
                refl, i, delta, curves[i], live[i],
                [center_of[it[2]] for it in live[i]], lw // (2 * n))
            x_items = [it for it in live[i] if it[2] in keep]
            rinst, back = curve_rsc_instance(curves[i], x_items)
            block = greedy_schedule(rinst, stop_at=t_i)
            for sid, t in block.start.items():
                starts[back[sid]] = t
                unassigned.discard(back[sid])
            cell_info["iterations"].append(
                {"i": i, "L": lw, "t": t_i, "x_size": len(x_items),
                 "assigned": len(block.start)})
        return cell_info, starts

    ordered = sorted(cells.items())
    workers = min(max_workers, len(ordered)) if ordered else 1
    groups = [[instance.sensors[idx] for idx in idxs]
              for _, idxs in ordered]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_cell, groups))
    else:
        results = [run_cell(g) for g in groups]
    for (cell, _), (cell_info, starts) in zip(ordered, results):
        sched.info["cells"][cell] = cell_info
        sched.start.update(starts)
    return sched


def verify_planar(instance: PlanarInstance,
                  schedule: PlanarSchedule) -> VerificationReport:
    """Ground-truth check by full simulation: for every universe point, the
    longest prefix of time steps during which some assigned sensor's
    translate contains it.  Reports M_achieved and the ratio to the load."""
    report = VerificationReport()
    poly = instance.polygon
    known = {s.id for s in instance.sensors}
    bad = [sid for sid in schedule.start
           if sid not in known or schedule.start[sid] < 1]
    report.add("assignments-valid", not bad, bad or None)

    loads, L = planar_load(instance)
    m_achieved = None
    witness = None
    for uidx, u in enumerate(instance.universe):
        spans = []
        for s in instance.sensors:
            t0 = schedule.start.get(s.id)
            if t0 is None or not poly.contains(u, center=s.center):
                continue
            spans.append((t0, t0 + s.d - 1))
        spans.sort()
        reach = 0
        for (a, b) in spans:
            if a > reach + 1:
                break
            reach = max(reach, b)
        if m_achieved is None or reach < m_achieved:
            m_achieved = reach
            witness = {"point": list(u), "covered_until": reach}
    m_achieved = m_achieved or 0
    report.stats["M_achieved"] = m_achieved
    report.stats["L"] = L
    report.stats["floor_point"] = witness
    report.ratio = (m_achieved / L) if L else None
    report.add("simulated", True, None)
    return report
