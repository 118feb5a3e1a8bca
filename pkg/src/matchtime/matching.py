"""Exact matching engines for the simulator.

Two optimizations run back to back at every matching event:

* passenger-passenger pairing (pooling only): a maximum-total-weight
  matching over feasible order pairs, where the weight of a pair is its
  detour delay rate (DDR) under the best of the four shared-ride stop
  sequences;
* passenger-driver assignment (both modes): a maximum-cardinality,
  minimum-total-pickup-time assignment of ride entities to idle drivers.

Both engines are exact and come with brute-force oracles used by the test
suite. DDR = direct distance / shared-ride distance, so 1 means no detour
and lower values mean worse detours; a pair is feasible when its DDR
clears the configured threshold.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit
from scipy.optimize import linear_sum_assignment

from ._blossom import max_weight_matching_arrays
from .domain import DriverState, Order, Point, travel_time

BRUTE_FORCE_PAIRING_LIMIT = 12
BRUTE_FORCE_ASSIGNMENT_LIMIT = 7


@dataclass(frozen=True)
class PairCandidate:
    """Best shared-ride plan for one unordered pair of orders."""

    i: int
    j: int
    ddr: float
    sequence: Tuple[Point, Point, Point, Point]
    detour_i: float  # km, extra in-vehicle distance for order i
    detour_j: float  # km
    pickup_order: Tuple[int, int]  # order ids in boarding order

    def detour_of(self, order_id: int) -> float:
        if order_id == self.i:
            return self.detour_i
        if order_id == self.j:
            return self.detour_j
        raise KeyError(f"order {order_id} not in pair ({self.i}, {self.j})")


@dataclass
class PairingResult:
    """Outcome of the passenger-passenger optimization."""

    pairs: List[PairCandidate]
    singletons: List[int]
    total_ddr: float


@dataclass
class RideEntity:
    """A dispatchable unit: one order, or a paired set of two.

    ``pickup_chain`` is the stop sequence the driver serves after reaching
    ``first_pickup`` (which is its first element). ``boarding_offsets``
    maps each member to the seconds between the driver reaching the first
    stop and that member boarding.
    """

    kind: str  # "single" or "pair"
    members: Tuple[Order, ...]
    pickup_chain: Tuple[Point, ...]
    detour_seconds: Dict[int, float]
    boarding_offsets: Dict[int, float]
    trip_seconds: float  # time to serve the whole chain after first pickup

    @property
    def id(self) -> Tuple[int, ...]:
        return tuple(o.id for o in self.members)

    @property
    def first_pickup(self) -> Point:
        return self.pickup_chain[0]

    @property
    def last_dropoff(self) -> Point:
        return self.pickup_chain[-1]


@dataclass
class DriverMatch:
    driver_id: int
    entity_id: Tuple[int, ...]
    pickup_seconds: float


@dataclass
class AssignmentResult:
    """Outcome of the passenger-driver optimization."""

    matches: List[DriverMatch]
    unmatched_entities: List[Tuple[int, ...]]
    unmatched_drivers: List[int]

    @property
    def total_pickup_seconds(self) -> float:
        return math.fsum(m.pickup_seconds for m in self.matches)


# The four shared-ride stop sequences for orders a (picked up first) and b:
# case 0/2: (O_a, O_b, D_a, D_b); case 1/3: (O_a, O_b, D_b, D_a), evaluated
# for both role orientations so the score is symmetric in (i, j).


@njit(cache=True, inline="always")
def _euclid_jit(ax, ay, bx, by):
    return math.sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by))


def _euclid(ax, ay, bx, by):
    # same operation order as _euclid_jit so scores match bitwise
    return math.sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by))


def ddr_pair(order_i: Order, order_j: Order, ddr_threshold: float) -> Optional[PairCandidate]:
    """Best-DDR shared ride for two orders, or None if below threshold.

    Each candidate sequence is scored by the DDR of its worse-off member;
    the best of the four candidates wins (ties: first in fixed template
    order). Detours are actual minus direct in-vehicle distance.
    """
    if order_i.id == order_j.id:
        raise ValueError(f"cannot pair order {order_i.id} with itself")
    oi, di_ = order_i.origin, order_i.destination
    oj, dj_ = order_j.origin, order_j.destination
    di = _euclid(oi.x, oi.y, di_.x, di_.y)
    dj = _euclid(oj.x, oj.y, dj_.x, dj_.y)

    o_oi_oj = _euclid(oi.x, oi.y, oj.x, oj.y)
    o_oj_di = _euclid(oj.x, oj.y, di_.x, di_.y)
    o_di_dj = _euclid(di_.x, di_.y, dj_.x, dj_.y)
    o_oj_dj = dj
    o_dj_di = _euclid(dj_.x, dj_.y, di_.x, di_.y)
    o_oi_dj = _euclid(oi.x, oi.y, dj_.x, dj_.y)
    o_oi_di = di

    # per-case (in-vehicle distance of i, of j)
    rides = (
        (o_oi_oj + o_oj_di, o_oj_di + o_di_dj),  # (O_i, O_j, D_i, D_j)
        (o_oi_oj + o_oj_dj + o_dj_di, dj),  # (O_i, O_j, D_j, D_i)
        (o_oi_dj + o_dj_di, o_oi_oj + o_oi_dj),  # (O_j, O_i, D_j, D_i)
        (di, o_oi_oj + o_oi_di + o_di_dj),  # (O_j, O_i, D_i, D_j)
    )
    best_case = -1
    best_score = -1.0
    for case, (ride_i, ride_j) in enumerate(rides):
        score = min(di / ride_i, dj / ride_j)
        if score > best_score:
            best_score = score
            best_case = case
    if best_score < ddr_threshold:
        return None

    ride_i, ride_j = rides[best_case]
    sequences = (
        (oi, oj, di_, dj_),
        (oi, oj, dj_, di_),
        (oj, oi, dj_, di_),
        (oj, oi, di_, dj_),
    )
    boarding = (order_i.id, order_j.id) if best_case < 2 else (order_j.id, order_i.id)
    return PairCandidate(
        i=order_i.id,
        j=order_j.id,
        ddr=best_score,
        sequence=sequences[best_case],
        detour_i=ride_i - di,
        detour_j=ride_j - dj,
        pickup_order=boarding,
    )


@njit(cache=True)
def _ddr_edge_kernel(ox, oy, dx, dy, threshold, ei, ej, ew):
    """All-pairs best-case DDR; writes feasible edges, returns count.

    Mirrors ddr_pair() operation for operation so scores agree bitwise.
    """
    n = ox.shape[0]
    cnt = 0
    for a in range(n):
        di = _euclid_jit(ox[a], oy[a], dx[a], dy[a])
        for b in range(a + 1, n):
            dj = _euclid_jit(ox[b], oy[b], dx[b], dy[b])
            o_oi_oj = _euclid_jit(ox[a], oy[a], ox[b], oy[b])
            o_oj_di = _euclid_jit(ox[b], oy[b], dx[a], dy[a])
            o_di_dj = _euclid_jit(dx[a], dy[a], dx[b], dy[b])
            o_oj_dj = dj
            o_dj_di = _euclid_jit(dx[b], dy[b], dx[a], dy[a])
            o_oi_dj = _euclid_jit(ox[a], oy[a], dx[b], dy[b])
            o_oi_di = di
            best = min(di / (o_oi_oj + o_oj_di), dj / (o_oj_di + o_di_dj))
            s2 = di / (o_oi_oj + o_oj_dj + o_dj_di)
            if s2 > best:
                best = s2
            s3 = min(dj / (o_oi_oj + o_oi_dj), di / (o_oi_dj + o_dj_di))
            if s3 > best:
                best = s3
            s4 = dj / (o_oi_oj + o_oi_di + o_di_dj)
            if s4 > best:
                best = s4
            if best >= threshold:
                ei[cnt] = a
                ej[cnt] = b
                ew[cnt] = best
                cnt += 1
    return cnt


def _pair_total(pairs: Sequence[PairCandidate]) -> float:
    """Canonical total weight: fsum over pairs sorted by ids."""
    return math.fsum(p.ddr for p in sorted(pairs, key=lambda p: (p.i, p.j)))


def pair_passengers(
    orders: Sequence[Order], ddr_threshold: float
) -> PairingResult:
    """Maximum-total-DDR pairing over the waiting pool; exact optimum.

    Unpaired orders come back as singletons. Deterministic: orders are
    processed in id order.
    """
    orders = sorted(orders, key=lambda o: o.id)
    n = len(orders)
    if n < 2:
        return PairingResult(pairs=[], singletons=[o.id for o in orders], total_ddr=0.0)

    ox = np.array([o.origin.x for o in orders])
    oy = np.array([o.origin.y for o in orders])
    dx = np.array([o.destination.x for o in orders])
    dy = np.array([o.destination.y for o in orders])
    cap = n * (n - 1) // 2
    ei = np.empty(cap, np.int64)
    ej = np.empty(cap, np.int64)
    ew = np.empty(cap, np.float64)
    cnt = _ddr_edge_kernel(ox, oy, dx, dy, ddr_threshold, ei, ej, ew)

    mate = max_weight_matching_arrays(n, ei[:cnt], ej[:cnt], ew[:cnt])
    pairs = []
    singles = []
    for a in range(n):
        b = mate[a]
        if b < 0:
            singles.append(orders[a].id)
        elif a < b:
            cand = ddr_pair(orders[a], orders[b], ddr_threshold)
            assert cand is not None, "matched pair must be feasible"
            pairs.append(cand)
    pairs.sort(key=lambda p: (p.i, p.j))
    return PairingResult(pairs=pairs, singletons=singles, total_ddr=_pair_total(pairs))


def brute_force_pairing(
    orders: Sequence[Order], ddr_threshold: float
) -> PairingResult:
    """Exhaustive pairing oracle; exponential, capped at 12 orders."""
    orders = sorted(orders, key=lambda o: o.id)
    n = len(orders)
    if n > BRUTE_FORCE_PAIRING_LIMIT:
        raise ValueError(f"brute-force pairing capped at {BRUTE_FORCE_PAIRING_LIMIT} orders, got {n}")

    cands: Dict[Tuple[int, int], PairCandidate] = {}
    for a in range(n):
        for b in range(a + 1, n):
            c = ddr_pair(orders[a], orders[b], ddr_threshold)
            if c is not None:
                cands[(a, b)] = c

    best_pairs: List[PairCandidate] = []
    best_total = 0.0

    def extend(start: int, used: int, chosen: List[PairCandidate]):
        nonlocal best_pairs, best_total
        a = start
        while a < n and (used >> a) & 1:
            a += 1
        if a >= n:
            total = _pair_total(chosen)
            if total > best_total:
                best_total = total
                best_pairs = list(chosen)
            return
        # leave a single
        extend(a + 1, used | (1 << a), chosen)
        for b in range(a + 1, n):
            if not (used >> b) & 1 and (a, b) in cands:
                chosen.append(cands[(a, b)])
                extend(a + 1, used | (1 << a) | (1 << b), chosen)
                chosen.pop()

    extend(0, 0, [])
    paired_ids = {p.i for p in best_pairs} | {p.j for p in best_pairs}
    singles = [o.id for o in orders if o.id not in paired_ids]
    best_pairs.sort(key=lambda p: (p.i, p.j))
    return PairingResult(pairs=best_pairs, singletons=singles, total_ddr=_pair_total(best_pairs))


def _single_entity(order: Order, speed: float) -> RideEntity:
    chain = (order.origin, order.destination)
    return RideEntity(
        kind="single",
        members=(order,),
        pickup_chain=chain,
        detour_seconds={order.id: 0.0},
        boarding_offsets={order.id: 0.0},
        trip_seconds=travel_time(order.direct_distance, speed),
    )


def _pair_entity(cand: PairCandidate, by_id: Dict[int, Order], speed: float) -> RideEntity:
    members = (by_id[cand.i], by_id[cand.j])
    seq = cand.sequence
    first, second = cand.pickup_order
    leg01 = seq[0].distance_to(seq[1])
    chain_km = leg01 + seq[1].distance_to(seq[2]) + seq[2].distance_to(seq[3])
    return RideEntity(
        kind="pair",
        members=members,
        pickup_chain=seq,
        detour_seconds={
            cand.i: travel_time(cand.detour_i, speed),
            cand.j: travel_time(cand.detour_j, speed),
        },
        boarding_offsets={first: 0.0, second: travel_time(leg01, speed)},
        trip_seconds=travel_time(chain_km, speed),
    )


def build_entities(
    orders: Sequence[Order],
    pairing: Optional[PairingResult],
    speed: float,
    allow_solo: bool = True,
) -> List[RideEntity]:
    """Turn a waiting pool (optionally pre-paired) into dispatchable units.

    With ``pairing`` given, chosen pairs become pair entities and, when
    ``allow_solo`` is set, the singletons become solo entities. Without a
    pairing every order rides alone (hailing).
    """
    by_id = {o.id: o for o in orders}
    entities: List[RideEntity] = []
    if pairing is None:
        entities = [_single_entity(o, speed) for o in sorted(orders, key=lambda o: o.id)]
    else:
        for cand in pairing.pairs:
            entities.append(_pair_entity(cand, by_id, speed))
        if allow_solo:
            for oid in sorted(pairing.singletons):
                entities.append(_single_entity(by_id[oid], speed))
        entities.sort(key=lambda e: e.id)
    return entities


def _pickup_cost_matrix(
    entities: Sequence[RideEntity], drivers: Sequence[DriverState], speed: float
) -> np.ndarray:
    """Pickup times in seconds, entities x drivers; shared by engine and oracle."""
    ex = np.array([e.first_pickup.x for e in entities])
    ey = np.array([e.first_pickup.y for e in entities])
    dxs = np.array([d.position.x for d in drivers])
    dys = np.array([d.position.y for d in drivers])
    dist = np.hypot(ex[:, None] - dxs[None, :], ey[:, None] - dys[None, :])
    return dist / speed * 3600.0


def assign_drivers(
    entities: Sequence[RideEntity],
    drivers: Sequence[DriverState],
    speed: float,
) -> AssignmentResult:
    """Min-total-pickup-time assignment at maximum cardinality; exact.

    Exactly min(#entities, #drivers) matches are made; among all such
    assignments the total driver-to-first-pickup travel time is minimal.
    """
    entities = sorted(entities, key=lambda e: e.id)
    drivers = sorted(drivers, key=lambda d: d.id)
    if not entities or not drivers:
        return AssignmentResult(
            matches=[],
            unmatched_entities=[e.id for e in entities],
            unmatched_drivers=[d.id for d in drivers],
        )

    cost = _pickup_cost_matrix(entities, drivers, speed)
    rows, cols = linear_sum_assignment(cost)

    matches = [
        DriverMatch(
            driver_id=drivers[c].id,
            entity_id=entities[r].id,
            pickup_seconds=float(cost[r, c]),
        )
        for r, c in zip(rows, cols)
    ]
    matches.sort(key=lambda m: m.entity_id)
    matched_e = {m.entity_id for m in matches}
    matched_d = {m.driver_id for m in matches}
    return AssignmentResult(
        matches=matches,
        unmatched_entities=[e.id for e in entities if e.id not in matched_e],
        unmatched_drivers=[d.id for d in drivers if d.id not in matched_d],
    )


def brute_force_assignment(
    entities: Sequence[RideEntity],
    drivers: Sequence[DriverState],
    speed: float,
) -> AssignmentResult:
    """Permutation oracle for the assignment; capped at 7 per side."""
    if len(entities) > BRUTE_FORCE_ASSIGNMENT_LIMIT or len(drivers) > BRUTE_FORCE_ASSIGNMENT_LIMIT:
        raise ValueError(
            f"brute-force assignment capped at {BRUTE_FORCE_ASSIGNMENT_LIMIT} per side, "
            f"got {len(entities)}x{len(drivers)}"
        )
    entities = sorted(entities, key=lambda e: e.id)
    drivers = sorted(drivers, key=lambda d: d.id)
    if not entities or not drivers:
        return AssignmentResult(
            matches=[],
            unmatched_entities=[e.id for e in entities],
            unmatched_drivers=[d.id for d in drivers],
        )

    cost = _pickup_cost_matrix(entities, drivers, speed)
    n_e, n_d = len(entities), len(drivers)
    best: Optional[List[Tuple[int, int]]] = None
    best_cost = math.inf
    if n_e <= n_d:
        for perm in itertools.permutations(range(n_d), n_e):
            pairs = list(enumerate(perm))
            c = math.fsum(cost[e, d] for e, d in pairs)
            if c < best_cost:
                best_cost = c
                best = pairs
    else:
        for perm in itertools.permutations(range(n_e), n_d):
            pairs = [(e, d) for d, e in enumerate(perm)]
            c = math.fsum(cost[e, d] for e, d in pairs)
            if c < best_cost:
                best_cost = c
                best = pairs
    assert best is not None
    matches = [
        DriverMatch(drivers[d].id, entities[e].id, float(cost[e, d])) for e, d in best
    ]
    matches.sort(key=lambda m: m.entity_id)
    matched_e = {m.entity_id for m in matches}
    matched_d = {m.driver_id for m in matches}
    return AssignmentResult(
        matches=matches,
        unmatched_entities=[e.id for e in entities if e.id not in matched_e],
        unmatched_drivers=[d.id for d in drivers if d.id not in matched_d],
    )


def f_pick(entities: Sequence[RideEntity], drivers: Sequence[DriverState], speed: float) -> float:
    """Total pickup waiting time of the optimal assignment, seconds."""
    if not entities or not drivers:
        return 0.0
    return assign_drivers(entities, drivers, speed).total_pickup_seconds


def f_detour(pairing: PairingResult, speed: float) -> float:
    """Total detour delay over all paired members, seconds."""
    return math.fsum(
        travel_time(p.detour_i, speed) + travel_time(p.detour_j, speed)
        for p in pairing.pairs
    )
