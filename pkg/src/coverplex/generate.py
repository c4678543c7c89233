"""Seeded instance generators.

Every generator takes an integer seed and drives its own random.Random, so
identical parameters and seed give identical instances on any platform.
"""

from __future__ import annotations

import random

from .geometry import ConvexPolygon
from .planar import PlanarInstance
from .rsc import RscInstance

POLYGONS = {
    "triangle": [(0, 0), (4, 0), (0, 4)],
    "square": [(0, 0), (2, 0), (2, 2), (0, 2)],
    # integer strictly convex hexagon, deliberately not centrally symmetric
    "hexagon": [(2, 0), (5, 1), (6, 4), (4, 6), (1, 5), (0, 3)],
}


def polygon(name):
    try:
        return ConvexPolygon(POLYGONS[name])
    except KeyError:
        raise ValueError("unknown polygon family %r (choose from %s)"
                         % (name, ", ".join(sorted(POLYGONS))))


def gen_rsc(seed, n=20, m=20, d_max=5, family="uniform"):
    """Random 1-D scheduling instance.

    ``uniform``: ranges drawn uniformly from all subintervals of {1..m},
    durations uniform in 1..d_max.  ``nested``: a chain of pairwise nested
    ranges shrinking from [1, m].
    """
    rng = random.Random(seed)
    sensors = []
    if family == "uniform":
        for sid in range(n):
            l = rng.randint(1, m)
            r = rng.randint(l, m)
            sensors.append((sid, l, r, rng.randint(1, d_max)))
    elif family == "nested":
        l, r = 1, m
        for sid in range(n):
            sensors.append((sid, l, r, rng.randint(1, d_max)))
            if r - l >= 2:
                l = l + rng.randint(0, 1)
                r = r - rng.randint(0, 1)
    else:
        raise ValueError("unknown family %r" % family)
    return RscInstance(m, sensors)


def gen_points(seed, size=200, span=80):
    """Integer point cloud, uniform over a square.

    With size >= k every level curve at k exists; uniform spread keeps the
    wedge loads balanced across vertices.
    """
    rng = random.Random(seed)
    return [(rng.randint(0, span), rng.randint(0, span))
            for _ in range(size)]


def gen_planar(seed, poly_name="triangle", n_sensors=60, d_max=4,
               spread=2, universe_size=5):
    """Clustered translate instance: centers packed into a small box so that
    the universe points (drawn from the same box) carry high load."""
    rng = random.Random(seed)
    poly = polygon(poly_name)
    base = (10, 10)
    sensors = []
    for sid in range(n_sensors):
        c = (base[0] + rng.randint(0, spread),
             base[1] + rng.randint(0, spread))
        sensors.append((sid, c, rng.randint(1, d_max)))
    universe = [(base[0] + rng.randint(0, spread),
                 base[1] + rng.randint(0, spread))
                for _ in range(universe_size)]
    return PlanarInstance(poly, sensors, universe)
