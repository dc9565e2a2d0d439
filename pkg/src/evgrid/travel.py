"""Travel demand: person trips -> vehicle trips -> LDV miles -> daily EV energy.

Daily person-trip counts, binned by trip distance, are converted to vehicle
trips with per-bin multipliers (folding in carpooling and non-car modes),
then to vehicle-miles via a representative one-way distance per bin, and
finally to charging energy for the electrified share of the fleet. Energy
is computed per bin so that the highway/residential efficiency split
(longer trips burn more kWh per mile) is preserved; a single fleet-average
intensity would give a different total whenever bin intensities differ.

Every day is evaluated independently: weekday, seasonal, and holiday
variation in the input data passes through without smoothing.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DataFormatError, ValidationError

#: Trip-distance bins, ordered short to long. CSV inputs must use these names.
BINS: tuple[str, ...] = ("lt3mi", "3to100mi", "100to250mi", "250to500mi", "gt500mi")


def _check_bins(mapping: Mapping[str, float], what: str) -> None:
    missing = [b for b in BINS if b not in mapping]
    extra = [b for b in mapping if b not in BINS]
    if missing or extra:
        raise ValidationError(
            f"{what}: expected exactly bins {list(BINS)}, "
            f"missing={missing}, unexpected={extra}"
        )


@dataclass(frozen=True)
class DailyTravelRecord:
    """Person trips taken on one calendar day, by distance bin."""

    date: dt.date
    person_trips: Mapping[str, float]

    def __post_init__(self) -> None:
        _check_bins(self.person_trips, f"travel record {self.date}")
        for b, v in self.person_trips.items():
            if not math.isfinite(v) or v < 0:
                raise ValidationError(
                    f"travel record {self.date}: bin {b} has invalid count {v}"
                )


@dataclass(frozen=True)
class TripConversionTable:
    """Per-bin conversion factors.

    vt_per_pt: vehicle trips per person trip, in [0, 1].
    rep_distance_mi: representative one-way distance, strictly increasing
        across bins.
    kwh_per_mi: EV energy intensity for trips in that bin.
    """

    vt_per_pt: Mapping[str, float]
    rep_distance_mi: Mapping[str, float]
    kwh_per_mi: Mapping[str, float]

    def __post_init__(self) -> None:
        _check_bins(self.vt_per_pt, "vt_per_pt")
        _check_bins(self.rep_distance_mi, "rep_distance_mi")
        _check_bins(self.kwh_per_mi, "kwh_per_mi")
        for b in BINS:
            m = self.vt_per_pt[b]
            if not 0.0 <= m <= 1.0:
                raise ValidationError(f"vt_per_pt[{b}]={m} outside [0, 1]")
            if self.kwh_per_mi[b] <= 0:
                raise ValidationError(f"kwh_per_mi[{b}] must be > 0")
        dists = [self.rep_distance_mi[b] for b in BINS]
        if any(b <= a for a, b in zip(dists, dists[1:])) or dists[0] <= 0:
            raise ValidationError(
                f"rep_distance_mi must be positive and strictly increasing "
                f"across bins, got {dists}"
            )

    def with_kwh_per_mi(self, overrides: Mapping[str, float]) -> "TripConversionTable":
        """Return a copy with energy intensities replaced for the given bins."""
        unknown = [b for b in overrides if b not in BINS]
        if unknown:
            raise ValidationError(f"mileage override for unknown bins {unknown}")
        merged = {**self.kwh_per_mi, **overrides}
        return TripConversionTable(self.vt_per_pt, self.rep_distance_mi, merged)

    @classmethod
    def from_csv(cls, path) -> "TripConversionTable":
        """Read a `bin,vt_per_pt,rep_distance_mi,kwh_per_mi` CSV."""
        vt: dict[str, float] = {}
        dist: dict[str, float] = {}
        kwh: dict[str, float] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            expected = ["bin", "vt_per_pt", "rep_distance_mi", "kwh_per_mi"]
            if reader.fieldnames != expected:
                raise DataFormatError(
                    f"expected header {expected}, got {reader.fieldnames}", path=path, line=1
                )
            for i, row in enumerate(reader, start=2):
                try:
                    b = row["bin"]
                    vt[b] = float(row["vt_per_pt"])
                    dist[b] = float(row["rep_distance_mi"])
                    kwh[b] = float(row["kwh_per_mi"])
                except (TypeError, KeyError, ValueError) as exc:
                    raise DataFormatError(f"malformed row: {exc}", path=path, line=i) from exc
        return cls(vt, dist, kwh)


@dataclass(frozen=True)
class DailyEnergyDemand:
    """One day's LDV vehicle-miles and the charging energy of the EV share."""

    date: dt.date
    ldv_miles: float
    ev_energy_kwh: float


def person_trips_to_vehicle_trips(
    record: DailyTravelRecord, table: TripConversionTable
) -> dict[str, float]:
    """Convert person trips to vehicle trips per bin.

    Drops trips not taken by car and accounts for carpooling; output never
    exceeds input because multipliers are capped at 1.
    """
    return {b: record.person_trips[b] * table.vt_per_pt[b] for b in BINS}


def ldv_miles_by_bin(
    vehicle_trips: Mapping[str, float], table: TripConversionTable
) -> dict[str, float]:
    _check_bins(vehicle_trips, "vehicle_trips")
    return {b: vehicle_trips[b] * table.rep_distance_mi[b] for b in BINS}


def daily_ldv_miles(
    vehicle_trips: Mapping[str, float], table: TripConversionTable
) -> float:
    """Total vehicle-miles for one day: sum of trips x distance over bins."""
    return sum(ldv_miles_by_bin(vehicle_trips, table).values())


def daily_ev_energy(
    miles_by_bin: Mapping[str, float], ev_pct: float, table: TripConversionTable
) -> tuple[dict[str, float], float]:
    """Charging energy (kWh) for the EV share of the day's miles.

    ev_pct is the electric fraction of the LDV stock, in [0, 1]. Returns
    (per-bin energies, total); each bin uses its own kWh/mile.
    """
    if not 0.0 <= ev_pct <= 1.0:
        raise ValidationError(f"ev_pct={ev_pct} outside [0, 1]")
    _check_bins(miles_by_bin, "miles_by_bin")
    by_bin = {b: miles_by_bin[b] * ev_pct * table.kwh_per_mi[b] for b in BINS}
    return by_bin, sum(by_bin.values())


def daily_energy_series(
    records: tuple[DailyTravelRecord, ...] | list[DailyTravelRecord],
    table: TripConversionTable,
    ev_pct: float,
) -> list[DailyEnergyDemand]:
    """Run the per-day conversion chain over a sequence of travel records."""
    out = []
    for rec in records:
        vtrips = person_trips_to_vehicle_trips(rec, table)
        miles = ldv_miles_by_bin(vtrips, table)
        _, energy = daily_ev_energy(miles, ev_pct, table)
        out.append(DailyEnergyDemand(rec.date, sum(miles.values()), energy))
    return out
