"""Fleet analytics: end-of-life detection, survival regression and mileage.

Periodic-inspection registers make vehicle retirement observable: a vehicle
whose last test in a reference year failed and which never reappears within
a lookahead window was, in all likelihood, scrapped. Logistic regression of
that outcome on age or accumulated mileage quantifies how strongly wear
predicts retirement, and a few small arithmetic helpers reproduce shared
and private fleet mileage figures.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError

DAYS_PER_YEAR = 365.25

RESULT_PASS = "pass"
RESULT_FAIL = "fail"

CSV_HEADER = ("vehicle_id", "test_date", "result", "odometer_km", "first_use_date")

PREDICTOR_AGE = "age"
PREDICTOR_MILEAGE = "mileage"

# Mileage enters the regression in thousands of km; raw km would push the
# score-vector convergence threshold below float64 summation noise.
MILEAGE_UNIT_KM = 1000.0


@dataclass(frozen=True)
class InspectionRecord:
    """One periodic-inspection test of one vehicle."""

    vehicle_id: str
    test_date: date
    result: str
    odometer_km: float
    first_use_date: date


@dataclass(frozen=True)
class ElvObservation:
    """A vehicle's retirement outcome in the reference year."""

    vehicle_id: str
    is_elv: bool
    age_years: float
    mileage_km: float
    last_test: date


@dataclass(frozen=True)
class ElvExtraction:
    observations: tuple[ElvObservation, ...]
    rejected_records: int

    @property
    def elv_count(self) -> int:
        return sum(1 for o in self.observations if o.is_elv)


@dataclass(frozen=True)
class RegressionResult:
    """Fitted logistic model prob(retired) = sigmoid(intercept + coef * x)."""

    predictor: str
    n_observations: int
    coefficient: float
    intercept: float
    std_error: float
    intercept_std_error: float
    z_value: float
    p_value: float
    pseudo_r2: float
    converged: bool
    iterations: int


@dataclass(frozen=True)
class FleetUsageEntry:
    """Annual fleet travel of one shared-car operator city."""

    city: str
    vkt_per_year: float
    fleet_size: int

    def __post_init__(self):
        if self.fleet_size <= 0:
            raise DomainError(
                f"{self.city}: fleet size must be positive", field="fleet_size"
            )
        if self.vkt_per_year < 0:
            raise DomainError(
                f"{self.city}: fleet travel must be >= 0", field="vkt_per_year"
            )


@dataclass(frozen=True)
class FleetMileageReport:
    per_city_km: Mapping[str, float]
    per_city_rounded_km: Mapping[str, float]
    average_rounded_km: float


@dataclass(frozen=True)
class LifetimeEntry:
    """Service life, annual distance and lifetime mileage of one vehicle."""

    label: str
    age_years: float
    annual_km: float
    ltm_km: float


def round_half_up(x: float, step: float) -> float:
    """Round to the nearest multiple of step, ties away from zero."""
    if step <= 0:
        raise DomainError("rounding step must be positive", field="step")
    return math.floor(x / step + 0.5) * step


# ---------------------------------------------------------------------------
# End-of-life extraction


def read_inspection_csv(path) -> tuple[list[InspectionRecord], int]:
    """Parse an inspection register CSV.

    Expected header: vehicle_id,test_date,result,odometer_km,first_use_date
    with ISO dates and result pass|fail. Rows that fail to parse are skipped
    and counted rather than aborting the read.
    """
    records: list[InspectionRecord] = []
    skipped = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DomainError("inspection CSV is empty", field="csv") from None
        if tuple(h.strip().lower() for h in header) != CSV_HEADER:
            raise DomainError(
                "inspection CSV header must be " + ",".join(CSV_HEADER),
                field="csv",
            )
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                vid, test_raw, result_raw, odo_raw, first_raw = (
                    cell.strip() for cell in row
                )
                if not vid:
                    raise ValueError("empty vehicle id")
                result = result_raw.lower()
                if result not in (RESULT_PASS, RESULT_FAIL):
                    raise ValueError(f"bad result {result_raw!r}")
                records.append(
                    InspectionRecord(
                        vehicle_id=vid,
                        test_date=date.fromisoformat(test_raw),
                        result=result,
                        odometer_km=float(odo_raw),
                        first_use_date=date.fromisoformat(first_raw),
                    )
                )
            except (ValueError, TypeError):
                skipped += 1
    return records, skipped


def extract_elvs(
    records: Iterable[InspectionRecord],
    reference_year: int,
    lookahead_years: int = 2,
) -> ElvExtraction:
    """Label each vehicle tested in the reference year as retired or not.

    A vehicle is an end-of-life vehicle when its last reference-year test
    failed and no test of it appears within the lookahead window after the
    reference year. Age and mileage are taken at that last reference-year
    test. The labelling does not depend on record order. Records with a
    negative odometer, an invalid result, or a test before first use are
    rejected and counted.
    """
    if lookahead_years < 1:
        raise DomainError("lookahead must be at least one year", field="lookahead_years")

    rejected = 0
    last_in_ref: dict[str, InspectionRecord] = {}
    failed_in_ref: set[str] = set()
    reappears: set[str] = set()
    for rec in records:
        if (
            rec.odometer_km < 0
            or rec.result not in (RESULT_PASS, RESULT_FAIL)
            or rec.test_date < rec.first_use_date
            or not rec.vehicle_id
        ):
            rejected += 1
            continue
        year = rec.test_date.year
        if year == reference_year:
            prev = last_in_ref.get(rec.vehicle_id)
            if prev is None or rec.test_date > prev.test_date:
                last_in_ref[rec.vehicle_id] = rec
            if rec.result == RESULT_FAIL:
                failed_in_ref.add(rec.vehicle_id)
        elif reference_year < year <= reference_year + lookahead_years:
            reappears.add(rec.vehicle_id)

    observations = []
    for vid in sorted(last_in_ref):
        rec = last_in_ref[vid]
        is_elv = vid in failed_in_ref and vid not in reappears
        age = (rec.test_date - rec.first_use_date).days / DAYS_PER_YEAR
        observations.append(
            ElvObservation(
                vehicle_id=vid,
                is_elv=is_elv,
                age_years=age,
                mileage_km=rec.odometer_km,
                last_test=rec.test_date,
            )
        )
    return ElvExtraction(observations=tuple(observations), rejected_records=rejected)


def balance_dataset(
    observations: Sequence[ElvObservation], seed: int = 0
) -> list[ElvObservation]:
    """Equalise the retired and surviving classes by subsampling the majority.

    Subsampling is deterministic for a given seed and preserves the input
    order of the kept observations.
    """
    elv = [o for o in observations if o.is_elv]
    alive = [o for o in observations if not o.is_elv]
    if not elv or not alive:
        raise DomainError(
            "both retired and surviving vehicles are needed to balance",
            field="observations",
        )
    if len(elv) == len(alive):
        return list(observations)
    minority, majority = (elv, alive) if len(elv) < len(alive) else (alive, elv)
    rng = np.random.default_rng(seed)
    keep = set(rng.choice(len(majority), size=len(minority), replace=False).tolist())
    kept_majority = {id(majority[i]) for i in keep}
    minority_ids = {id(o) for o in minority}
    return [
        o
        for o in observations
        if id(o) in minority_ids or id(o) in kept_majority
    ]


# ---------------------------------------------------------------------------
# Logistic regression


def _log_likelihood(x: np.ndarray, y: np.ndarray, intercept: float, coef: float) -> float:
    eta = np.clip(intercept + coef * x, -35.0, 35.0)
    p = 1.0 / (1.0 + np.exp(-eta))
    p = np.clip(p, 1e-12, 1.0 - 1e-12)
    return float(np.sum(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def logit_fit(
    x: Sequence[float], y: Sequence[int], predictor: str = PREDICTOR_AGE
) -> RegressionResult:
    """Maximum-likelihood fit of a single-predictor logistic model.

    Newton iterations on the standardised predictor until the largest score
    component falls below 1e-8 (at most 100 iterations), with a small ridge
    added to the information matrix when a step is near singular. Standard
    errors come from the inverse observed information, the z statistic is
    coefficient over standard error, and the p value is two-sided normal.
    The reported pseudo R-squared is one minus the log-likelihood ratio
    against an intercept-only model.

    Standardising internally makes the fit exactly scale-equivariant:
    dividing the predictor by k multiplies the coefficient by k and leaves
    z, p and the pseudo R-squared unchanged.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or xa.shape != ya.shape:
        raise DomainError("x and y must be one-dimensional and equally long", field="x")
    n = xa.size
    if n < 3:
        raise DomainError("at least three observations are required", field="x")
    if not np.all(np.isfinite(xa)) or not np.all(np.isfinite(ya)):
        raise DomainError("observations must be finite", field="x")
    if set(np.unique(ya)) - {0.0, 1.0}:
        raise DomainError("outcomes must be 0 or 1", field="y")
    if 0.0 not in ya or 1.0 not in ya:
        raise DomainError("both outcome classes must be present", field="y")
    sd = float(np.std(xa))
    if sd == 0.0:
        raise DomainError("predictor is constant", field="x")
    mean = float(np.mean(xa))
    xs = (xa - mean) / sd

    design = np.column_stack([np.ones(n), xs])
    beta = np.zeros(2)
    converged = False
    iterations = 0
    for iterations in range(1, 101):
        eta = np.clip(design @ beta, -35.0, 35.0)
        p = 1.0 / (1.0 + np.exp(-eta))
        score = design.T @ (ya - p)
        if float(np.max(np.abs(score))) < 1e-8:
            converged = True
            break
        w = p * (1.0 - p)
        info = design.T @ (design * w[:, None])
        try:
            step = np.linalg.solve(info, score)
        except np.linalg.LinAlgError:
            info = info + 1e-8 * np.eye(2)
            step = np.linalg.solve(info, score)
        beta = beta + step

    eta = np.clip(design @ beta, -35.0, 35.0)
    p = 1.0 / (1.0 + np.exp(-eta))
    # Perfect classification means the classes are separable: the likelihood
    # has no interior maximum and the coefficients diverge, even though the
    # score itself shrinks to zero along the way.
    if float(np.max(np.abs(ya - p))) < 1e-6:
        converged = False
        warnings.warn(
            "the outcome classes are perfectly separated; coefficients are "
            "reported at the last iterate but the fit did not converge",
            RuntimeWarning,
            stacklevel=2,
        )
    elif not converged:
        warnings.warn(
            "logistic fit did not converge in 100 iterations; "
            "the data may be separable",
            RuntimeWarning,
            stacklevel=2,
        )
    w = p * (1.0 - p)
    info = design.T @ (design * w[:, None])
    try:
        cov_std = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        cov_std = np.linalg.inv(info + 1e-8 * np.eye(2))

    # Map (intercept', coef') on the standardised scale back to the raw one.
    transform = np.array([[1.0, -mean / sd], [0.0, 1.0 / sd]])
    cov = transform @ cov_std @ transform.T
    coef = float(beta[1] / sd)
    intercept = float(beta[0] - beta[1] * mean / sd)

    se = float(math.sqrt(max(cov[1, 1], 0.0)))
    se_intercept = float(math.sqrt(max(cov[0, 0], 0.0)))
    z = coef / se if se > 0 else math.inf
    p_value = math.erfc(abs(z) / math.sqrt(2.0)) if math.isfinite(z) else 0.0

    ll = _log_likelihood(xa, ya, intercept, coef)
    p_bar = float(np.mean(ya))
    ll_null = n * (p_bar * math.log(p_bar) + (1.0 - p_bar) * math.log(1.0 - p_bar))
    pseudo_r2 = 1.0 - ll / ll_null if ll_null != 0.0 else 0.0

    return RegressionResult(
        predictor=predictor,
        n_observations=n,
        coefficient=coef,
        intercept=intercept,
        std_error=se,
        intercept_std_error=se_intercept,
        z_value=z,
        p_value=p_value,
        pseudo_r2=pseudo_r2,
        converged=converged,
        iterations=iterations,
    )


def regress_elvs(
    observations: Sequence[ElvObservation],
    predictor: str = PREDICTOR_AGE,
    balance: bool = True,
    seed: int = 0,
) -> RegressionResult:
    """Regress the retirement outcome on age (years) or mileage (1000 km)."""
    if predictor not in (PREDICTOR_AGE, PREDICTOR_MILEAGE):
        raise DomainError(
            f"predictor must be {PREDICTOR_AGE!r} or {PREDICTOR_MILEAGE!r}",
            field="predictor",
        )
    sample = balance_dataset(observations, seed=seed) if balance else list(observations)
    if predictor == PREDICTOR_AGE:
        x = [o.age_years for o in sample]
    else:
        x = [o.mileage_km / MILEAGE_UNIT_KM for o in sample]
    y = [1 if o.is_elv else 0 for o in sample]
    return logit_fit(x, y, predictor=predictor)


# ---------------------------------------------------------------------------
# Mileage arithmetic


def fleet_annual_mileage(entries: Sequence[FleetUsageEntry]) -> FleetMileageReport:
    """Annual km per shared car for each city, rounded to the nearest 100,
    and the mean of those rounded figures (again to the nearest 100)."""
    if not entries:
        raise DomainError("at least one fleet entry is required", field="entries")
    per_city = {e.city: e.vkt_per_year / e.fleet_size for e in entries}
    rounded = {city: round_half_up(v, 100.0) for city, v in per_city.items()}
    average = round_half_up(sum(rounded.values()) / len(rounded), 100.0)
    return FleetMileageReport(
        per_city_km=per_city,
        per_city_rounded_km=rounded,
        average_rounded_km=average,
    )


def annualized_mileage(total_km: float, vehicles: int, years: float) -> float:
    """Annual km per vehicle from a fleet total over an observation window."""
    if vehicles <= 0:
        raise DomainError("vehicle count must be positive", field="vehicles")
    if years <= 0:
        raise DomainError("observation window must be positive", field="years")
    if total_km < 0:
        raise DomainError("total travel must be >= 0", field="total_km")
    return total_km / vehicles / years


def average_private_ltm(entries: Sequence[LifetimeEntry]) -> LifetimeEntry:
    """Mean service life, annual distance and lifetime mileage of private
    cars, rounded to 0.1 years, 100 km and 1000 km respectively."""
    if not entries:
        raise DomainError("at least one lifetime entry is required", field="entries")
    n = len(entries)
    return LifetimeEntry(
        label="average",
        age_years=round_half_up(sum(e.age_years for e in entries) / n, 0.1),
        annual_km=round_half_up(sum(e.annual_km for e in entries) / n, 100.0),
        ltm_km=round_half_up(sum(e.ltm_km for e in entries) / n, 1000.0),
    )


# ---------------------------------------------------------------------------
# Synthetic register


def synthetic_inspection_records(
    n_vehicles: int,
    reference_year: int = 2017,
    seed: int = 0,
    base_rate: float = -2.0,
    age_effect: float = 0.033,
    malformed_rows: int = 0,
) -> list[InspectionRecord]:
    """Generate a register that behaves like a national inspection data set.

    Retirement probability rises with age on a logistic curve
    (sigmoid(base_rate + age_effect * age)); retired vehicles fail their
    last reference-year test and never reappear, survivors reappear within
    two years. Mileage grows with age, so it inherits predictive power from
    the planted age effect. Optionally appends malformed records (negative
    odometer) to exercise rejection paths.
    """
    if n_vehicles <= 0:
        raise DomainError("n_vehicles must be positive", field="n_vehicles")
    rng = np.random.default_rng(seed)
    ages = np.clip(rng.normal(12.0, 4.5, size=n_vehicles), 1.0, 30.0)
    annual = np.clip(rng.normal(13500.0, 4000.0, size=n_vehicles), 2000.0, None)
    mileages = ages * annual + rng.normal(0.0, 5000.0, size=n_vehicles)
    mileages = np.clip(mileages, 500.0, None)
    p_retire = 1.0 / (1.0 + np.exp(-(base_rate + age_effect * ages)))
    retired = rng.random(n_vehicles) < p_retire
    test_days = rng.integers(0, 365, size=n_vehicles)

    records: list[InspectionRecord] = []
    for i in range(n_vehicles):
        vid = f"v{i:07d}"
        test_day = date(reference_year, 1, 1) + timedelta(days=int(test_days[i]))
        first_use = test_day - timedelta(days=int(ages[i] * DAYS_PER_YEAR))
        if retired[i]:
            records.append(
                InspectionRecord(vid, test_day, RESULT_FAIL, float(mileages[i]), first_use)
            )
        else:
            # Survivors pass now (possibly after a failed first attempt)
            # and are seen again within the lookahead window.
            if rng.random() < 0.15:
                earlier = test_day - timedelta(days=14)
                if earlier.year == reference_year:
                    records.append(
                        InspectionRecord(
                            vid, earlier, RESULT_FAIL, float(mileages[i] - 50.0), first_use
                        )
                    )
            records.append(
                InspectionRecord(vid, test_day, RESULT_PASS, float(mileages[i]), first_use)
            )
            # the reappearance must fall in a following calendar year, or the
            # vehicle would look retired despite surviving
            next_test = max(
                test_day + timedelta(days=int(rng.integers(330, 720))),
                date(reference_year + 1, 1, 1),
            )
            records.append(
                InspectionRecord(
                    vid,
                    next_test,
                    RESULT_PASS,
                    float(mileages[i] + annual[i]),
                    first_use,
                )
            )
    for j in range(malformed_rows):
        records.append(
            InspectionRecord(
                f"bad{j:04d}",
                date(reference_year, 6, 1),
                RESULT_FAIL,
                -1.0,
                date(reference_year - 10, 6, 1),
            )
        )
    return records
