"""Match-timing laboratory for ride-hailing and ride-pooling services.

A seedable discrete-time simulator, exact matching engines (passenger
pairing and driver assignment), a shaped-reward match-timing environment,
a from-scratch PPO trainer, fixed-interval baselines, and evaluation
tooling, tied together by the ``matchtime`` command line interface.
"""

__version__ = "0.1.0"

from .domain import Point, Zone, Order, DriverState, SimParams, route_distance, travel_time

__all__ = [
    "__version__",
    "Point",
    "Zone",
    "Order",
    "DriverState",
    "SimParams",
    "route_distance",
    "travel_time",
]
