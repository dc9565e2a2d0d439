"""Hourly charging load: profiles, managed-charging transforms, superposition.

A charging profile is 24 hourly fractions of a fleet's daily charging
energy; distributing a day's kWh over a profile conserves energy exactly.
Managed variants move mass away from the early-evening plug-in peak via
three composable levers: delaying the evening (16:00-22:00) charging mass,
moving a share of the day's energy into working hours, and blending toward
a uniform spread. Hour boundaries are local clock hours on a uniform
8760-hour grid; DST is deliberately ignored.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataFormatError, ValidationError
from .travel import DailyEnergyDemand

#: Tolerance on a profile's fractions summing to 1.
PROFILE_SUM_TOL = 1e-9

#: Hours whose mass the delay lever shifts (evening plug-in window).
EVENING_WINDOW = range(16, 22)

#: Hours that receive workplace-charging mass.
WORKPLACE_WINDOW = range(9, 16)


@dataclass(frozen=True)
class ChargingProfile:
    """24 hourly fractions of one day's charging energy."""

    fractions: tuple[float, ...]
    label: str = "custom"

    def __post_init__(self) -> None:
        if len(self.fractions) != 24:
            raise ValidationError(f"profile needs 24 fractions, got {len(self.fractions)}")
        if any(not math.isfinite(f) or f < 0 for f in self.fractions):
            raise ValidationError("profile fractions must be finite and >= 0")
        total = sum(self.fractions)
        if abs(total - 1.0) > PROFILE_SUM_TOL:
            raise ValidationError(
                f"profile fractions sum to {total!r}, expected 1 within {PROFILE_SUM_TOL}"
            )

    @classmethod
    def uniform(cls, label: str = "uniform") -> "ChargingProfile":
        return cls(tuple(np.full(24, 1.0 / 24.0)), label)

    @classmethod
    def from_csv(cls, path, label: str = "custom") -> "ChargingProfile":
        """Read an `hour,fraction` CSV with one row per hour 0..23."""
        fractions: dict[int, float] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["hour", "fraction"]:
                raise DataFormatError(
                    f"expected header ['hour', 'fraction'], got {reader.fieldnames}",
                    path=path,
                    line=1,
                )
            for i, row in enumerate(reader, start=2):
                try:
                    hour = int(row["hour"])
                    frac = float(row["fraction"])
                except (TypeError, KeyError, ValueError) as exc:
                    raise DataFormatError(f"malformed row: {exc}", path=path, line=i) from exc
                if not 0 <= hour <= 23:
                    raise DataFormatError(f"hour {hour} outside 0..23", path=path, line=i)
                if hour in fractions:
                    raise DataFormatError(f"duplicate hour {hour}", path=path, line=i)
                fractions[hour] = frac
        if len(fractions) != 24:
            raise DataFormatError(
                f"profile has {len(fractions)} hours, expected 24", path=path
            )
        try:
            return cls(tuple(fractions[h] for h in range(24)), label)
        except ValidationError as exc:
            raise DataFormatError(str(exc), path=path) from exc


@dataclass(frozen=True, eq=False)
class HourlyLoadSeries:
    """Uniform 1-hour load series (MW) starting at a given local timestamp."""

    start: dt.datetime
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", arr)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError("load series must be a non-empty 1-D array")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("load series contains non-finite values")
        if np.any(arr < 0):
            raise ValidationError("load series contains negative values")

    def __len__(self) -> int:
        return int(self.values.size)

    def timestamp(self, index: int) -> dt.datetime:
        return self.start + dt.timedelta(hours=int(index))

    def hour_of_day(self, index: int) -> int:
        return self.timestamp(index).hour

    def same_grid(self, other: "HourlyLoadSeries") -> bool:
        return self.start == other.start and len(self) == len(other)


@dataclass(frozen=True)
class ManagedStrategy:
    """Composable managed-charging levers.

    delay_hours shifts the evening-window mass later (0 to 12 hours,
    wrapping past midnight); workplace_share moves that fraction of the
    day's energy uniformly into 09:00-16:00; spread_weight blends the
    result toward a uniform profile.
    """

    delay_hours: float = 0.0
    workplace_share: float = 0.0
    spread_weight: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.delay_hours <= 12.0:
            raise ValidationError(f"delay_hours={self.delay_hours} outside [0, 12]")
        for name in ("workplace_share", "spread_weight"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name}={v} outside [0, 1]")


def distribute_daily_energy(daily_kwh: float, profile: ChargingProfile) -> np.ndarray:
    """Spread one day's energy over the 24 hours; conserves the total."""
    if daily_kwh < 0 or not math.isfinite(daily_kwh):
        raise ValidationError(f"daily energy {daily_kwh} must be finite and >= 0")
    return daily_kwh * np.asarray(profile.fractions)


def build_managed_profile(
    base: ChargingProfile, strategy: ManagedStrategy
) -> ChargingProfile:
    """Apply delay, workplace reallocation, and uniform blend, in that order.

    Mass is conserved at every step; a fractional delay splits each shifted
    hour's mass linearly between the two neighbouring hours. The zero
    strategy returns the base fractions unchanged.
    """
    p = np.asarray(base.fractions, dtype=np.float64)

    if strategy.delay_hours > 0:
        shifted = p.copy()
        whole = int(math.floor(strategy.delay_hours))
        part = strategy.delay_hours - whole
        for hour in EVENING_WINDOW:
            mass = p[hour]
            shifted[hour] -= mass
            lo = (hour + whole) % 24
            hi = (hour + whole + 1) % 24
            shifted[lo] += mass * (1.0 - part)
            shifted[hi] += mass * part
        p = shifted

    if strategy.workplace_share > 0:
        p = p * (1.0 - strategy.workplace_share)
        p[list(WORKPLACE_WINDOW)] += strategy.workplace_share / len(WORKPLACE_WINDOW)

    if strategy.spread_weight > 0:
        p = (1.0 - strategy.spread_weight) * p + strategy.spread_weight / 24.0

    p = p / p.sum()
    return ChargingProfile(tuple(p), label="managed")


def fleet_hourly_load(
    daily_energies: Sequence[DailyEnergyDemand], profile: ChargingProfile
) -> HourlyLoadSeries:
    """Concatenate per-day distributions into an EV-only hourly series (MW).

    Days must be consecutive calendar days; each hour bin carries the hour's
    kWh as average MW (kWh / 1000 over a 1-hour bin).
    """
    if not daily_energies:
        raise ValidationError("no daily energies given")
    for prev, cur in zip(daily_energies, daily_energies[1:]):
        if cur.date != prev.date + dt.timedelta(days=1):
            raise ValidationError(
                f"daily energy coverage gap between {prev.date} and {cur.date}"
            )
    fractions = np.asarray(profile.fractions)
    kwh = np.asarray([d.ev_energy_kwh for d in daily_energies])
    hourly_mw = (kwh[:, None] * fractions[None, :]).ravel() / 1000.0
    start = dt.datetime.combine(daily_energies[0].date, dt.time(0))
    return HourlyLoadSeries(start, hourly_mw)


def superpose(baseline: HourlyLoadSeries, ev: HourlyLoadSeries) -> HourlyLoadSeries:
    """Pointwise sum of two series on an identical timestamp grid."""
    if not baseline.same_grid(ev):
        raise ValidationError(
            f"series grids differ: {baseline.start}x{len(baseline)} vs {ev.start}x{len(ev)}"
        )
    return HourlyLoadSeries(baseline.start, baseline.values + ev.values)
