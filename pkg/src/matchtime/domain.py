"""Core value types and planar geometry shared by all modules.

Coordinates live in a local planar frame measured in kilometers; zones are
disks. All travel times assume a constant vehicle speed, so distances and
durations convert with a single factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

WAITING = "waiting"
PAIRED = "paired"
ASSIGNED = "assigned"
CANCELLED = "cancelled"
COMPLETED = "completed"

ORDER_STATUSES = (WAITING, PAIRED, ASSIGNED, CANCELLED, COMPLETED)

IDLE = "idle"
ENROUTE = "enroute"
SERVING = "serving"


@dataclass(frozen=True)
class Point:
    """A location in the local planar frame, kilometers."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Zone:
    """A demand zone: a disk around a centroid."""

    id: str
    centroid: Point
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"zone {self.id}: negative radius {self.radius}")


@dataclass
class Order:
    """A passenger request.

    Times are in seconds from episode start (tick index when the tick
    length is one second). ``cancel_deadline`` is the instant at which an
    unmatched request leaves the system.
    """

    id: int
    origin: Point
    destination: Point
    request_time: float
    cancel_deadline: float
    status: str = WAITING

    def __post_init__(self):
        if self.request_time >= self.cancel_deadline:
            raise ValueError(
                f"order {self.id}: request_time {self.request_time} not before "
                f"cancel_deadline {self.cancel_deadline}"
            )
        if self.origin == self.destination:
            raise ValueError(f"order {self.id}: origin equals destination")
        if self.status not in ORDER_STATUSES:
            raise ValueError(f"order {self.id}: unknown status {self.status!r}")

    @property
    def direct_distance(self) -> float:
        return self.origin.distance_to(self.destination)


_ALLOWED_TRANSITIONS = {
    WAITING: {PAIRED, ASSIGNED, CANCELLED},
    PAIRED: {ASSIGNED, WAITING},
    ASSIGNED: {COMPLETED},
}


def transition_order(order: Order, new_status: str) -> None:
    """Move an order through its lifecycle, rejecting illegal jumps.

    ``paired -> waiting`` is permitted so that a pair that finds no driver
    in the same matching pass dissolves back into the pool.
    """
    allowed = _ALLOWED_TRANSITIONS.get(order.status, set())
    if new_status not in allowed:
        raise ValueError(
            f"order {order.id}: illegal status transition {order.status} -> {new_status}"
        )
    order.status = new_status


@dataclass
class DriverState:
    """A vehicle: position, availability, and the end of its current job."""

    id: int
    position: Point
    status: str = IDLE
    busy_until: float = 0.0
    pending_dropoff: Optional[Point] = None

    @property
    def is_idle(self) -> bool:
        return self.status == IDLE


@dataclass(frozen=True)
class SimParams:
    """Simulation constants for one scenario.

    ``phi`` weighs unmatched-waiting against pickup waiting in the reward;
    ``tau`` weighs detour delay (pooling only); ``ddr_threshold`` is the
    minimum detour-delay rate for a feasible passenger pair.
    """

    speed: float = 40.0  # km/h
    cancel_after: float = 300.0  # seconds
    tick: float = 1.0  # seconds per step
    horizon: int = 600  # steps per episode
    mode: str = "hailing"  # or "pooling"
    phi: float = 1.0
    tau: float = 0.5
    ddr_threshold: float = 0.6
    allow_solo_in_pooling: bool = True
    obs_divisors: Optional[tuple] = None  # overrides observation scaling

    def __post_init__(self):
        if self.speed <= 0:
            raise ValueError(f"speed must be positive, got {self.speed}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {self.horizon}")
        if self.tick <= 0:
            raise ValueError(f"tick must be positive, got {self.tick}")
        if self.mode not in ("hailing", "pooling"):
            raise ValueError(f"mode must be 'hailing' or 'pooling', got {self.mode!r}")
        if self.phi < 0 or self.tau < 0:
            raise ValueError("phi and tau must be non-negative")
        if not (0 < self.ddr_threshold <= 1):
            raise ValueError(f"ddr_threshold must lie in (0, 1], got {self.ddr_threshold}")


def route_distance(points: Sequence[Point]) -> float:
    """Length of the polyline through ``points``, kilometers.

    Sums consecutive-pair planar distances; at least two points required.
    """
    if len(points) < 2:
        raise ValueError(f"route needs at least 2 points, got {len(points)}")
    return sum(points[k].distance_to(points[k + 1]) for k in range(len(points) - 1))


def travel_time(distance: float, speed: float) -> float:
    """Seconds to cover ``distance`` km at ``speed`` km/h."""
    if speed <= 0:
        raise ValueError(f"speed must be positive, got {speed}")
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    return distance / speed * 3600.0
