"""Episode data generation: arrival streams and driver fleets.

A scenario file fixes the demand geography (zones as disks), per-zone
Poisson arrival rates (optionally piecewise-constant over time-of-day
buckets), a row-stochastic origin-destination matrix, the fleet size and
its spawn weights, and the simulation constants. Episodes are sampled
from it deterministically given a seed.

Randomness is split into named substreams, one per concern (arrival
counts and origin points per zone, destination choices per origin zone,
driver placement), so that e.g. enlarging the fleet never perturbs the
arrival stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
import yaml

from .domain import DriverState, Order, Point, SimParams, Zone

ROW_SUM_TOL = 1e-9

# substream identifiers; never reorder, episode reproducibility depends on them
_STREAM_ARRIVALS = 0
_STREAM_DESTINATIONS = 1
_STREAM_DRIVERS = 2


class ScenarioError(ValueError):
    """Raised when a scenario file fails schema or invariant validation."""


@dataclass(frozen=True)
class Scenario:
    zones: List[Zone]
    arrival_rates: np.ndarray  # (n_zones, n_buckets), expected requests per tick
    od_matrix: np.ndarray  # (n_zones, n_zones), rows sum to 1
    fleet_size: int
    driver_spawn_weights: np.ndarray  # (n_zones,)
    sim: SimParams

    @property
    def n_zones(self) -> int:
        return len(self.zones)

    @property
    def n_buckets(self) -> int:
        return self.arrival_rates.shape[1]

    def bucket_of(self, tick: int) -> int:
        span = self.sim.horizon / self.n_buckets
        return min(int(tick / span), self.n_buckets - 1)


@dataclass(frozen=True)
class EpisodeData:
    arrivals: List[Order]  # sorted by request_time
    initial_drivers: List[DriverState]
    seed: int


def _stream(seed: int, concern: int, key: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(concern, key)))


def _point_in_disk(zone: Zone, rng: np.random.Generator) -> Point:
    r = zone.radius * math.sqrt(rng.random())
    theta = 2.0 * math.pi * rng.random()
    return Point(zone.centroid.x + r * math.cos(theta), zone.centroid.y + r * math.sin(theta))


def validate_scenario(sc: Scenario) -> Scenario:
    n = sc.n_zones
    if n == 0:
        raise ScenarioError("scenario has no zones")
    ids = [z.id for z in sc.zones]
    if len(set(ids)) != n:
        raise ScenarioError("zone ids are not unique")
    if sc.arrival_rates.shape[0] != n:
        raise ScenarioError(
            f"lambda has {sc.arrival_rates.shape[0]} rows for {n} zones"
        )
    if np.any(sc.arrival_rates < 0):
        bad = ids[int(np.argwhere(np.any(sc.arrival_rates < 0, axis=1))[0][0])]
        raise ScenarioError(f"zone {bad}: negative arrival rate")
    if sc.od_matrix.shape != (n, n):
        raise ScenarioError(f"od matrix must be {n}x{n}, got {sc.od_matrix.shape}")
    if np.any(sc.od_matrix < 0):
        raise ScenarioError("od matrix has negative entries")
    sums = sc.od_matrix.sum(axis=1)
    for z, s in zip(sc.zones, sums):
        if abs(s - 1.0) > ROW_SUM_TOL:
            raise ScenarioError(f"od row for zone {z.id} sums to {s!r}, expected 1")
    if sc.fleet_size < 0:
        raise ScenarioError(f"fleet_size must be non-negative, got {sc.fleet_size}")
    if sc.driver_spawn_weights.shape != (n,):
        raise ScenarioError("spawn_weights length must equal the number of zones")
    if np.any(sc.driver_spawn_weights < 0):
        raise ScenarioError("spawn_weights must be non-negative")
    if sc.fleet_size > 0 and sc.driver_spawn_weights.sum() == 0:
        raise ScenarioError("all spawn_weights are zero but fleet_size > 0")
    return sc


def load_scenario(path: str) -> Scenario:
    """Load and validate a scenario from a YAML file.

    See the repository README for the schema. Raises ScenarioError with
    the offending field (and zone, where applicable) on any violation.
    """
    try:
        with open(path) as f:
            raw = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ScenarioError(f"{path}: not valid YAML: {e}") from e
    if not isinstance(raw, dict):
        raise ScenarioError(f"{path}: top level must be a mapping")

    def require(key):
        if key not in raw:
            raise ScenarioError(f"{path}: missing required field {key!r}")
        return raw[key]

    zones_raw = require("zones")
    if not isinstance(zones_raw, list) or not zones_raw:
        raise ScenarioError(f"{path}: 'zones' must be a non-empty list")
    zones = []
    for k, z in enumerate(zones_raw):
        try:
            zones.append(
                Zone(str(z["id"]), Point(float(z["cx"]), float(z["cy"])), float(z["radius"]))
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError(f"{path}: zones[{k}]: {e}") from e

    lam_raw = require("lambda")
    if not isinstance(lam_raw, list) or len(lam_raw) != len(zones):
        raise ScenarioError(f"{path}: 'lambda' must list one entry per zone")
    rows = []
    for k, row in enumerate(lam_raw):
        if isinstance(row, (int, float)):
            row = [row]
        if not isinstance(row, list) or not row:
            raise ScenarioError(f"{path}: lambda[{k}] must be a number or non-empty list")
        rows.append([float(v) for v in row])
    n_buckets = len(rows[0])
    if any(len(r) != n_buckets for r in rows):
        raise ScenarioError(f"{path}: all lambda rows must have the same bucket count")
    arrival_rates = np.array(rows, dtype=float)

    od_raw = require("od")
    try:
        od = np.array(od_raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{path}: 'od' must be a numeric matrix: {e}") from e

    try:
        fleet_size = int(require("fleet_size"))
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{path}: fleet_size: {e}") from e

    sw_raw = require("spawn_weights")
    try:
        spawn = np.array(sw_raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{path}: spawn_weights: {e}") from e

    sim_raw = raw.get("sim", {})
    if not isinstance(sim_raw, dict):
        raise ScenarioError(f"{path}: 'sim' must be a mapping")
    known = {
        "speed", "cancel_after", "tick", "horizon", "mode", "phi", "tau",
        "ddr_threshold", "allow_solo_in_pooling", "obs_divisors",
    }
    unknown = set(sim_raw) - known
    if unknown:
        raise ScenarioError(f"{path}: unknown sim fields: {sorted(unknown)}")
    if "obs_divisors" in sim_raw and sim_raw["obs_divisors"] is not None:
        sim_raw = dict(sim_raw)
        sim_raw["obs_divisors"] = tuple(float(v) for v in sim_raw["obs_divisors"])
    try:
        sim = SimParams(**sim_raw)
    except (TypeError, ValueError) as e:
        raise ScenarioError(f"{path}: sim: {e}") from e

    sc = Scenario(
        zones=zones,
        arrival_rates=arrival_rates,
        od_matrix=od,
        fleet_size=fleet_size,
        driver_spawn_weights=spawn,
        sim=sim,
    )
    try:
        return validate_scenario(sc)
    except ScenarioError as e:
        raise ScenarioError(f"{path}: {e}") from e


def sample_arrivals(scenario: Scenario, seed: int) -> List[Order]:
    """Draw one episode's passenger requests.

    Per zone and tick the request count is Poisson with that zone's
    (bucket-resolved) rate; origins are uniform in the origin zone's
    disk, destination zones follow the od row, destination points are
    uniform in the destination disk. Orders come back sorted by request
    time with sequential ids.
    """
    sim = scenario.sim
    horizon = sim.horizon
    bucket_idx = np.array([scenario.bucket_of(t) for t in range(horizon)])
    raw = []  # (tick, zone_idx, origin, destination)
    for zi, zone in enumerate(scenario.zones):
        arr_rng = _stream(seed, _STREAM_ARRIVALS, zi)
        dest_rng = _stream(seed, _STREAM_DESTINATIONS, zi)
        lam = scenario.arrival_rates[zi][bucket_idx]
        counts = arr_rng.poisson(lam)
        od_row = scenario.od_matrix[zi]
        for t in np.nonzero(counts)[0]:
            for _ in range(int(counts[t])):
                origin = _point_in_disk(zone, arr_rng)
                dest = None
                for _attempt in range(100):
                    dz = int(dest_rng.choice(scenario.n_zones, p=od_row))
                    dest = _point_in_disk(scenario.zones[dz], dest_rng)
                    if dest != origin:
                        break
                else:
                    raise ScenarioError(
                        f"zone {zone.id}: cannot draw a destination distinct from "
                        f"the origin (degenerate geometry)"
                    )
                raw.append((int(t), zi, origin, dest))
    raw.sort(key=lambda r: (r[0], r[1]))
    orders = []
    for oid, (t, _zi, origin, dest) in enumerate(raw):
        t_sec = t * sim.tick
        orders.append(
            Order(
                id=oid,
                origin=origin,
                destination=dest,
                request_time=t_sec,
                cancel_deadline=t_sec + sim.cancel_after,
            )
        )
    return orders


def sample_drivers(scenario: Scenario, seed: int) -> List[DriverState]:
    """Place the fleet: zones by spawn weight, positions uniform in disk."""
    if scenario.fleet_size == 0:
        return []
    w = scenario.driver_spawn_weights
    total = w.sum()
    if total == 0:
        raise ScenarioError("all spawn_weights are zero but fleet_size > 0")
    rng = _stream(seed, _STREAM_DRIVERS)
    probs = w / total
    zone_picks = rng.choice(scenario.n_zones, size=scenario.fleet_size, p=probs)
    drivers = []
    for did in range(scenario.fleet_size):
        zone = scenario.zones[int(zone_picks[did])]
        drivers.append(DriverState(id=did, position=_point_in_disk(zone, rng)))
    return drivers


def generate_episode(scenario: Scenario, seed: int) -> EpisodeData:
    """Sample a full episode; bitwise deterministic given (scenario, seed)."""
    return EpisodeData(
        arrivals=sample_arrivals(scenario, seed),
        initial_drivers=sample_drivers(scenario, seed),
        seed=seed,
    )


def episode_seed(base_seed: int, index: int, lane: int = 0) -> int:
    """Derive the seed of the ``index``-th episode of a run.

    ``lane`` separates independent consumers (e.g. parallel rollout
    environments) so their episode streams never collide.
    """
    ss = np.random.SeedSequence(base_seed, spawn_key=(3, lane, index))
    return int(ss.generate_state(1, np.uint64)[0])
