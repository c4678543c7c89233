"""JSON serialization for every instance and result type.

Rational numbers are serialized as "p/q" strings so round-trips stay exact;
plain integers stay integers.  All dumps use sorted keys and a fixed
separator style, so identical values serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import ConvexPolygon
from .planar import PlanarInstance, PlanarSchedule
from .rsc import RscInstance, Schedule, Sensor


class InputError(ValueError):
    """Malformed or semantically invalid input document."""


def num_to_json(v):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return "%d/%d" % (v.numerator, v.denominator)
    return v


def num_from_json(v):
    if isinstance(v, str):
        p, _, q = v.partition("/")
        return Fraction(int(p), int(q or 1))
    return v


def point_to_json(p):
    return [num_to_json(p[0]), num_to_json(p[1])]


def point_from_json(v):
    if not (isinstance(v, list) and len(v) == 2):
        raise InputError("point must be a [x, y] pair, got %r" % (v,))
    return (num_from_json(v[0]), num_from_json(v[1]))


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ": "),
                      indent=1) + "\n"


def loads(text):
    return json.loads(text)


# -- polygons ---------------------------------------------------------------

def polygon_to_json(poly: ConvexPolygon):
    return {"vertices": [point_to_json(v) for v in poly.vertices]}


def polygon_from_json(doc):
    try:
        return ConvexPolygon([point_from_json(v) for v in doc["vertices"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad polygon: %s" % exc) from exc


# -- 1-D scheduling ---------------------------------------------------------

def rsc_instance_to_json(inst: RscInstance):
    return {"m": inst.m,
            "sensors": [{"id": s.id, "l": s.l, "r": s.r, "d": s.d}
                        for s in inst.sensors]}


def rsc_instance_from_json(doc):
    try:
        return RscInstance(doc["m"],
                           [Sensor(s["id"], s["l"], s["r"], s["d"])
                            for s in doc["sensors"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad scheduling instance: %s" % exc) from exc


def schedule_to_json(sched: Schedule, M=None, L=None):
    doc = {"assignments": [{"id": sid, "t": t}
                           for sid, t in sorted(sched.start.items())]}
    if M is not None:
        doc["M"] = M
    if L is not None:
        doc["L"] = L
    return doc


def schedule_from_json(doc, stop_at=None):
    try:
        sched = Schedule(stop_at=stop_at)
        for a in doc["assignments"]:
            sched.start[a["id"]] = a["t"]
        return sched
    except (KeyError, TypeError) as exc:
        raise InputError("bad schedule: %s" % exc) from exc


# -- decomposition ----------------------------------------------------------

def decomp_instance_to_json(poly, points, k):
    return {"polygon": polygon_to_json(poly),
            "points": [point_to_json(p) for p in points],
            "k": k}


def decomp_instance_from_json(doc):
    try:
        poly = polygon_from_json(doc["polygon"])
        points = [point_from_json(p) for p in doc["points"]]
        k = int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad decomposition instance: %s" % exc) from exc
    return poly, points, k


def coloring_to_json(assignment, n_points, trace=None):
    colors = [assignment.colors.get(pid) for pid in range(n_points)]
    doc = {"colors": colors, "T": assignment.T}
    if trace is not None:
        doc["trace"] = [{"i": r.i, "L": r.L, "t": r.t, "x_size": r.x_size,
                         "colored": r.colored} for r in trace.records]
    return doc


def coloring_from_json(doc):
    from .cover import ColorAssignment
    try:
        asg = ColorAssignment(T=int(doc["T"]))
        for pid, c in enumerate(doc["colors"]):
            if c is not None:
                asg.colors[pid] = c
        return asg
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad coloring: %s" % exc) from exc


# -- planar -----------------------------------------------------------------

def planar_instance_to_json(inst: PlanarInstance):
    return {"polygon": polygon_to_json(inst.polygon),
            "sensors": [{"id": s.id, "center": point_to_json(s.center),
                         "d": s.d} for s in inst.sensors],
            "universe": [point_to_json(u) for u in inst.universe]}


def planar_instance_from_json(doc):
    try:
        return PlanarInstance(
            polygon_from_json(doc["polygon"]),
            [(s["id"], point_from_json(s["center"]), s["d"])
             for s in doc["sensors"]],
            [point_from_json(u) for u in doc["universe"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad planar instance: %s" % exc) from exc


def planar_schedule_to_json(sched: PlanarSchedule):
    return {"assignments": [{"id": sid, "t": t}
                            for sid, t in sorted(sched.start.items())],
            "trivial": sched.trivial}


def planar_schedule_from_json(doc):
    try:
        sched = PlanarSchedule(trivial=bool(doc.get("trivial", False)))
        for a in doc["assignments"]:
            sched.start[a["id"]] = a["t"]
        return sched
    except (KeyError, TypeError) as exc:
        raise InputError("bad planar schedule: %s" % exc) from exc


# -- level curves -----------------------------------------------------------

def curve_to_json(curve, i, r):
    f = curve.frame
    head = f.to_real(*[c[0] for c in curve.head])
    tail = f.to_real(*[c[0] for c in curve.tail])
    return {"i": i, "r": num_to_json(r),
            "chain": [point_to_json(p) for p in curve.chain_real()],
            "head": point_to_json(head), "tail": point_to_json(tail)}
