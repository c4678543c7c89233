"""Independent verifiers and brute-force oracles.

Everything here re-derives coverage, membership, and loads by direct
simulation or direct per-point tests; none of the algorithmic machinery
(interval snapping, sweeps, greedy state) is reused, so a bug in the
algorithms cannot hide itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import ConvexPolygon, perturbation_direction
from .levelcurve import LevelCurve, WedgeFrame, canonical_positions


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    alpha: object = None
    ratio: object = None
    stats: dict = field(default_factory=dict)

    def ok(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=None):
        self.checks.append(Check(name, passed, witness))

    def to_json(self):
        return {
            "checks": [{"name": c.name, "pass": c.passed,
                        "witness": c.witness} for c in self.checks],
            "alpha": self.alpha,
            "ratio": self.ratio,
        }


# ---------------------------------------------------------------------------
# exact 1-D scheduling oracle


def rsc_opt_bruteforce(instance, horizon=None):
    """Exact optimum duration for tiny interval-scheduling instances.

    Searches start times exhaustively with identical-sensor symmetry pruning
    and a remaining-duration bound; refuses instances with more than 8
    sensors or universe size above 8.
    """
    n = len(instance.sensors)
    m = instance.m
    if n > 8 or m > 8:
        raise ValueError("brute-force oracle limited to n <= 8, m <= 8")
    per = [0] * (m + 1)
    for s in instance.sensors:
        for x in range(s.l, s.r + 1):
            per[x] += s.d
    L = min(per[1:]) if m else 0
    if horizon is None:
        horizon = L
    horizon = min(horizon, L)
    sensors = sorted(instance.sensors, key=lambda s: (s.l, s.r, s.d, s.id))

    def feasible(T):
        if T == 0:
            return True
        full = (1 << (T + 1)) - 2  # bits 1..T
        dead = set()

        def rec(used, masks):
            t = None
            x = None
            for c in range(1, m + 1):
                free = (~masks[c]) & full
                if free:
                    low = free & -free
                    tc = low.bit_length() - 1
                    if t is None or tc < t:
                        t, x = tc, c
            if t is None:
                return True
            # bound: coordinate x cannot reach T even with all unused sensors
            have = bin(masks[x] & full).count("1")
            avail = sum(sensors[idx].d for idx in range(n)
                        if not used & (1 << idx)
                        and sensors[idx].l <= x <= sensors[idx].r)
            if have + avail < T:
                return False
            key = (used, masks)
            if key in dead:
                return False
            tried = set()
            for idx in range(n):
                bit = 1 << idx
                if used & bit:
                    continue
                s = sensors[idx]
                if not (s.l <= x <= s.r):
                    continue
                sig = (s.l, s.r, s.d)
                if sig in tried:
                    continue
                tried.add(sig)
                win = (1 << s.d) - 1
                for start in range(max(1, t - s.d + 1), t + 1):
                    new = list(masks)
                    for c in range(s.l, s.r + 1):
                        new[c] = masks[c] | (win << start)
                    if rec(used | bit, tuple(new)):
                        return True
            dead.add(key)
            return False

        # quick impossibility: some coordinate lacks total duration T
        if any(per[x] < T for x in range(1, m + 1)):
            return False
        return rec(0, tuple([0] * (m + 1)))

    lo, hi = 0, horizon
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


# ---------------------------------------------------------------------------
# coloring verifier


def _member_range(positions, U, V):
    """Closed index range of positions whose wedge contains (U, V), found by
    binary search on the direct dominance predicate; None when empty.

    Along the walk the u coordinates are non-decreasing and the v coordinates
    non-increasing, so membership (u <= U and v <= V) is contiguous.
    """
    K = len(positions)
    # first index with v <= V
    a, b = 0, K
    while a < b:
        mid = (a + b) // 2
        if positions[mid][1] <= V:
            b = mid
        else:
            a = mid + 1
    lo = a
    # last index with u <= U
    a, b = -1, K - 1
    while a < b:
        mid = (a + b + 1) // 2
        if positions[mid][0] <= U:
            a = mid
        else:
            b = mid - 1
    hi = a
    if lo > hi:
        return None
    return lo, hi


def verify_coloring(poly: ConvexPolygon, points, assignment, k):
    """Check that every wedge with apex on any level-k curve contains every
    common color 1..T; reports achieved alpha = k / T."""
    report = VerificationReport()
    T = assignment.T
    report.alpha = (k / T) if T else None
    report.stats["T"] = T
    if T == 0:
        report.add("colors-present", True,
                   "no common colors; vacuous" )
        return report
    delta = perturbation_direction(poly)
    failure = None
    for i in range(poly.n):
        frame = WedgeFrame(poly, i, delta)
        items = frame.items(points)
        curve = LevelCurve(frame, k, items)
        positions = canonical_positions(curve, items)
        K = len(positions)
        present = [[0] * (K + 1) for _ in range(T + 1)]
        for (U, V, pid, _w) in items:
            color = assignment.colors.get(pid)
            if color is None or color > T:
                continue
            rng = _member_range(positions, U, V)
            if rng is None:
                continue
            present[color][rng[0]] += 1
            present[color][rng[1] + 1] -= 1
        for color in range(1, T + 1):
            run = 0
            for idx in range(K):
                run += present[color][idx]
                if run == 0:
                    u, v = positions[idx]
                    failure = {"i": i, "color": color,
                               "apex_u": u, "apex_v": v}
                    break
            if failure:
                break
        if failure:
            break
    report.add("colors-present", failure is None, failure)
    return report


# ---------------------------------------------------------------------------
# schedule verifier


def _active_times(instance, schedule):
    """sensor -> (start, end) inclusive, assigned only."""
    out = {}
    for s in instance.sensors:
        t0 = schedule.start.get(s.id)
        if t0 is not None:
            out[s.id] = (s, t0, t0 + s.d - 1)
    return out

def verify_rsc(instance, schedule):
    """Check the scheduler's four guarantees by direct simulation."""
    report = VerificationReport()
    active = _active_times(instance, schedule)
    m = instance.m
    horizon = max((end for (_, _, end) in active.values()), default=0)

    cover = [dict() for _ in range(m + 1)]  # x -> {t: count}
    for (s, t0, t1) in active.values():
        for x in range(s.l, s.r + 1):
            for t in range(t0, t1 + 1):
                cover[x][t] = cover[x].get(t, 0) + 1

    def m_at(x):
        t = 0
        while cover[x].get(t + 1, 0) > 0:
            t += 1
        return t

    m_s = min((m_at(x) for x in range(1, m + 1)), default=0)
    report.stats["M"] = m_s

    witness = None
    for x in range(1, m + 1):
        for t, c in cover[x].items():
            if c > 5:
                witness = {"x": x, "t": t, "coverage": c}
                break
        if witness:
            break
    report.add("coverage-at-most-5", witness is None, witness)

    witness = None
    for (u, tu, _) in active.values():
        for (v, tv, _) in active.values():
            if u.id == v.id:
                continue
            proper = (v.l <= u.l and u.r <= v.r
                      and (v.l < u.l or u.r < v.r))
            if proper and not tu >= tv + v.d:
                witness = {"inner": u.id, "outer": v.id,
                           "t_inner": tu, "t_outer": tv}
                break
        if witness:
            break
    report.add("nested-ranges-sequential", witness is None, witness)

    per = [0] * (m + 1)
    for s in instance.sensors:
        for x in range(s.l, s.r + 1):
            per[x] += s.d
    L = min(per[1:]) if m else 0
    report.stats["L"] = L
    need = L // 5 if schedule.stop_at is None else min(schedule.stop_at,
                                                       L // 5)
    report.add("duration-at-least-load-over-5", m_s >= need,
               None if m_s >= need else {"M": m_s, "needed": need})

    d_max = max((s.d for s in instance.sensors), default=0)
    t_eff = schedule.stop_at if schedule.stop_at is not None else m_s
    witness = None
    for x in range(1, m + 1):
        assigned_live = sum(s.d for (s, _, _) in active.values()
                            if s.l <= x <= s.r)
        if assigned_live > 5 * (t_eff + d_max):
            witness = {"x": x, "assigned_live_duration": assigned_live,
                       "bound": 5 * (t_eff + d_max)}
            break
    report.add("stopped-load-bound", witness is None, witness)

    # closing semantics: replay the event log
    witness = None
    replay = [set() for _ in range(m + 1)]
    for ev in schedule.events:
        s = instance.by_id(ev.id)
        if ev.t in replay[ev.closes]:
            witness = {"id": ev.id, "t": ev.t, "closes": ev.closes,
                       "reason": "already covered"}
            break
        for x in range(s.l, s.r + 1):
            replay[x].update(range(ev.t, ev.t + s.d))
        if ev.t not in replay[ev.closes]:
            witness = {"id": ev.id, "t": ev.t, "closes": ev.closes,
                       "reason": "still uncovered"}
            break
    report.add("closing-semantics", witness is None, witness)

    stopped = schedule.stop_at is not None and m_s >= schedule.stop_at
    if not stopped:
        blocked = [x for x in range(1, m + 1) if m_at(x) == m_s and not any(
            s.id not in schedule.start and s.l <= x <= s.r
            for s in instance.sensors)]
        report.add("termination-blocked-coordinate", bool(blocked) or m == 0,
                   None if blocked or m == 0 else {"M": m_s})
    report.ratio = (m_s / L) if L else None
    return report
