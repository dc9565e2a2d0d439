"""Fleet projection: market-share paths and stock turnover.

Market share (the EV fraction of a year's new-vehicle sales) is projected
under one of three regimes: business-as-usual compounding with a decaying
growth rate, the same adjusted by incentive elasticities, or a linear ramp
to an explicit market-share goal. The stock then evolves with a 16-year
average vehicle lifetime: each year 15/16 of the existing EVs survive and
new sales replace 1/16 of the LDV fleet,

    EV_stock[n] = (15/16) * EV_stock[n-1] + share[n] * LDV_stock[n] / 16

which makes the stock converge geometrically (ratio 15/16) toward
share * LDV for any constant share and fleet size. Vehicle counts stay
fractional here; rounding is a presentation concern.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DataFormatError, ValidationError

#: Fraction of the EV stock that survives into the next year (16-year life).
SURVIVAL_RATE = 15.0 / 16.0

#: Yearly decay of the sales-growth rate for the named demand scenarios.
BAU_GROWTH_DECLINES = {"low": 0.15, "medium": 0.10, "high": 0.05}

#: Registration-increase percent per unit of each incentive
#: (units: $1000s for the monetary ones, stations per 100k people).
DEFAULT_INCENTIVE_COEFFICIENTS = {
    "tax_credit": 2.33,
    "rebate": 4.80,
    "sales_waiver": 3.60,
    "charging_stations_per_100k": 3.11,
}


@dataclass(frozen=True)
class GrowthScenario:
    """Intrinsic-demand growth regime for the new-sales EV share."""

    kind: str
    initial_yoy_growth: float
    yoy_growth_decline: float

    def __post_init__(self) -> None:
        if self.kind not in ("low", "medium", "high", "custom"):
            raise ValidationError(f"unknown growth kind {self.kind!r}")
        if not 0.0 <= self.yoy_growth_decline <= 1.0:
            raise ValidationError(
                f"yoy_growth_decline={self.yoy_growth_decline} outside [0, 1]"
            )
        if self.initial_yoy_growth < 0:
            raise ValidationError("initial_yoy_growth must be >= 0")

    @classmethod
    def named(cls, kind: str, initial_yoy_growth: float) -> "GrowthScenario":
        if kind not in BAU_GROWTH_DECLINES:
            raise ValidationError(f"named scenario must be one of {list(BAU_GROWTH_DECLINES)}")
        return cls(kind, initial_yoy_growth, BAU_GROWTH_DECLINES[kind])


@dataclass(frozen=True)
class IncentivePackage:
    """Incentive amounts plus the elasticity coefficients applied to them.

    Amounts are $1000s except charging_stations_per_100k (a count).
    Coefficients are percent registration increase per unit.
    """

    tax_credit: float = 0.0
    rebate: float = 0.0
    sales_waiver: float = 0.0
    charging_stations_per_100k: float = 0.0
    coefficients: Mapping[str, float] = field(
        default_factory=lambda: dict(DEFAULT_INCENTIVE_COEFFICIENTS)
    )

    def __post_init__(self) -> None:
        for name in ("tax_credit", "rebate", "sales_waiver", "charging_stations_per_100k"):
            if getattr(self, name) < 0:
                raise ValidationError(f"incentive amount {name} must be >= 0")
        for name, coeff in self.coefficients.items():
            if not math.isfinite(coeff):
                raise ValidationError(f"coefficient {name} is not finite")

    def registration_multiplier(self) -> float:
        """1 + the summed percentage effect of all configured incentives.

        Effects stack additively in percentage points before the single
        multiplication; an empty package yields exactly 1.0.
        """
        total_pct = 0.0
        for name in ("tax_credit", "rebate", "sales_waiver", "charging_stations_per_100k"):
            amount = getattr(self, name)
            if amount:
                try:
                    coeff = self.coefficients[name]
                except KeyError:
                    raise ValidationError(f"no coefficient configured for {name}")
                total_pct += coeff * amount
        return 1.0 + total_pct / 100.0


@dataclass(frozen=True)
class MarketShareTarget:
    """A sales-share goal plus the longer-horizon benchmark it maps to.

    The default post-target pairing continues a 50%-by-2030 achievement
    to 90% by 2050.
    """

    target_share: float
    target_year: int
    post_target_share: float = 0.90
    post_target_year: int = 2050

    def __post_init__(self) -> None:
        if not 0.0 < self.target_share <= 1.0:
            raise ValidationError(f"target_share={self.target_share} outside (0, 1]")
        if self.post_target_share < self.target_share:
            raise ValidationError("post-target share must be >= target share")
        if not 0.0 < self.post_target_share <= 1.0:
            raise ValidationError("post_target_share outside (0, 1]")
        if self.post_target_year < self.target_year:
            raise ValidationError("post_target_year before target_year")


@dataclass(frozen=True)
class FleetYear:
    year: int
    market_share: float
    ev_stock: float
    ldv_stock: float

    @property
    def ev_pct(self) -> float:
        return self.ev_stock / self.ldv_stock


@dataclass(frozen=True)
class FleetTrajectory:
    """Per-year fleet state over a contiguous span of years."""

    years: tuple[FleetYear, ...]

    def __post_init__(self) -> None:
        if not self.years:
            raise ValidationError("empty trajectory")
        for a, b in zip(self.years, self.years[1:]):
            if b.year != a.year + 1:
                raise ValidationError(f"trajectory years not contiguous at {a.year}->{b.year}")
        for fy in self.years:
            if not 0.0 <= fy.ev_stock <= fy.ldv_stock:
                raise ValidationError(
                    f"year {fy.year}: EV stock {fy.ev_stock} outside [0, LDV={fy.ldv_stock}]"
                )

    def __getitem__(self, year: int) -> FleetYear:
        first = self.years[0].year
        if not first <= year <= self.years[-1].year:
            raise ValidationError(
                f"year {year} outside trajectory span {first}..{self.years[-1].year}"
            )
        return self.years[year - first]


def project_bau_market_share(
    scenario: GrowthScenario, base_share: float, years: range
) -> dict[int, float]:
    """Compound the sales share from base_share under a decaying growth rate.

    The first horizon year carries base_share unchanged; every later year
    compounds by that year's growth rate, where the rate itself has already
    decayed once per elapsed year. A decline of 1.0 therefore freezes the
    share at base_share. Shares cap at 1.
    """
    if not 0.0 <= base_share <= 1.0:
        raise ValidationError(f"base_share={base_share} outside [0, 1]")
    if len(years) == 0:
        raise ValidationError("empty year range")
    shares: dict[int, float] = {}
    share = base_share
    growth = scenario.initial_yoy_growth
    for i, year in enumerate(years):
        if i > 0:
            growth *= 1.0 - scenario.yoy_growth_decline
            share = min(1.0, share * (1.0 + growth))
        shares[year] = share
    return shares


def apply_incentives(
    base_shares: Mapping[int, float], package: IncentivePackage
) -> dict[int, float]:
    """Scale every year's new-sales share by the package multiplier, capped at 1."""
    mult = package.registration_multiplier()
    return {year: min(1.0, share * mult) for year, share in base_shares.items()}


def project_target_ramp(
    current_share: float, current_year: int, target: MarketShareTarget
) -> dict[int, float]:
    """Linear ramp from today's share to the goal, then on to the mapped benchmark.

    Covers current_year through target.post_target_year inclusive. A target
    equal to the current share yields a flat series.
    """
    if target.target_year <= current_year:
        raise ValidationError(
            f"target year {target.target_year} not after current year {current_year}"
        )
    if not 0.0 <= current_share <= 1.0:
        raise ValidationError(f"current_share={current_share} outside [0, 1]")
    shares: dict[int, float] = {}
    for year in range(current_year, target.target_year + 1):
        frac = (year - current_year) / (target.target_year - current_year)
        shares[year] = current_share + (target.target_share - current_share) * frac
    span = target.post_target_year - target.target_year
    for year in range(target.target_year + 1, target.post_target_year + 1):
        frac = (year - target.target_year) / span
        shares[year] = (
            target.target_share
            + (target.post_target_share - target.target_share) * frac
        )
    return shares


def extend_flat(shares: dict[int, float], through_year: int) -> dict[int, float]:
    """Hold the last share constant through the given year."""
    out = dict(shares)
    last_year = max(shares)
    for year in range(last_year + 1, through_year + 1):
        out[year] = shares[last_year]
    return out


def ldv_stock_series(
    initial_count: float,
    years: range,
    growth_rate: float | None = None,
    explicit_counts: Mapping[int, float] | None = None,
) -> dict[int, float]:
    """Per-year LDV fleet size: explicit counts, or geometric growth from the seed."""
    if explicit_counts is not None:
        missing = [y for y in years if y not in explicit_counts]
        if missing:
            raise ValidationError(f"ldv counts missing years {missing}")
        series = {y: float(explicit_counts[y]) for y in years}
    else:
        rate = growth_rate or 0.0
        series = {y: initial_count * (1.0 + rate) ** (y - years[0]) for y in years}
    for y, count in series.items():
        if count <= 0:
            raise ValidationError(f"LDV count for {y} must be > 0")
    return series


def evolve_fleet(
    shares: Mapping[int, float],
    ldv: Mapping[int, float],
    initial_ev_stock: float,
) -> FleetTrajectory:
    """Apply the survival/turnover recurrence over the shared year span.

    The first year is the seed state: initial_ev_stock against that year's
    LDV count. Later years apply the recurrence exactly.
    """
    if initial_ev_stock < 0:
        raise ValidationError("initial EV stock must be >= 0")
    years = sorted(shares)
    if years != sorted(ldv):
        raise ValidationError("share and LDV series cover different years")
    for y in years:
        if not 0.0 <= shares[y] <= 1.0:
            raise ValidationError(f"market share for {y} outside [0, 1]")
    out = []
    ev = float(initial_ev_stock)
    for i, year in enumerate(years):
        if i > 0:
            ev = SURVIVAL_RATE * ev + shares[year] * ldv[year] / 16.0
        out.append(FleetYear(year, shares[year], ev, float(ldv[year])))
    return FleetTrajectory(tuple(out))


def ev_percentage(trajectory: FleetTrajectory, year: int) -> float:
    """EV stock as a fraction of the LDV stock in the given year."""
    return trajectory[year].ev_pct


def read_incentive_coefficients(path) -> dict[str, float]:
    """Read an `incentive,unit,coefficient_pct` CSV into a coefficient map."""
    coeffs: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = ["incentive", "unit", "coefficient_pct"]
        if reader.fieldnames != expected:
            raise DataFormatError(
                f"expected header {expected}, got {reader.fieldnames}", path=path, line=1
            )
        for i, row in enumerate(reader, start=2):
            try:
                coeffs[row["incentive"]] = float(row["coefficient_pct"])
            except (TypeError, KeyError, ValueError) as exc:
                raise DataFormatError(f"malformed row: {exc}", path=path, line=i) from exc
    if not coeffs:
        raise DataFormatError("no coefficient rows", path=path)
    return coeffs
