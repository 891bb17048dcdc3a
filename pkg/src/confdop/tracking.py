"""Seeded spacecraft-tracking simulator.

Generates two-way Doppler and ranging observables for a constant-rate
radial coast, under either the plain Minkowski model (alpha = 0) or the
conformal one (alpha != 0), plus the observed-minus-expected anomaly
residuals.  The record stream is a pure function of SimConfig, seed
included: noise comes from a counter-based Philox generator keyed by the
seed, so reruns are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .conformal import GroupParameter
from .constants import SPEED_OF_LIGHT
from .errors import ConfigInvalid, EpochOutOfRange, MalformedCsv, ZeroRange
from .wave import doppler_model_conformal

CSV_HEADER = "epoch_s,range_m,range_rate_mps,range_meas_m,doppler_frac,sigma_frac"

# Noise stream identifier recorded in run manifests: one Philox generator
# keyed by the config seed, two standard normals per record in epoch order
# (doppler first, then range).
RNG_ALGORITHM = "numpy.random.Philox(key=seed); Generator.standard_normal (n_obs, 2)"

_REQUIRED_KEYS = ("r0", "v_radial", "t_start", "t_end", "n_obs")


@dataclass(frozen=True)
class SimConfig:
    """Fully determines a simulation run (SI units throughout)."""

    r0: float
    v_radial: float
    t_start: float
    t_end: float
    n_obs: int
    alpha_true: float = 0.0
    sigma_frac: float = 1e-12
    sigma_range: float = 0.0
    seed: int = 0
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not self.r0 > 0.0:
            raise ConfigInvalid(f"r0: must be > 0, got {self.r0}")
        if not self.t_end > self.t_start:
            raise ConfigInvalid(f"t_end: must exceed t_start, got {self.t_end} <= {self.t_start}")
        if not isinstance(self.n_obs, int) or self.n_obs < 2:
            raise ConfigInvalid(f"n_obs: must be an integer >= 2, got {self.n_obs!r}")
        if self.sigma_frac < 0.0:
            raise ConfigInvalid(f"sigma_frac: must be >= 0, got {self.sigma_frac}")
        if self.sigma_range < 0.0:
            raise ConfigInvalid(f"sigma_range: must be >= 0, got {self.sigma_range}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigInvalid(f"seed: must be a 64-bit unsigned integer, got {self.seed!r}")
        if not self.c > 0.0:
            raise ConfigInvalid(f"c: must be > 0, got {self.c}")

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, value in d.items():
            if key not in known:
                raise ConfigInvalid(f"{key}: unknown config key")
            if key in ("n_obs", "seed"):
                if isinstance(value, float) and value.is_integer():
                    value = int(value)
                if not isinstance(value, int):
                    raise ConfigInvalid(f"{key}: must be an integer, got {value!r}")
            else:
                if not isinstance(value, (int, float)):
                    raise ConfigInvalid(f"{key}: must be a number, got {value!r}")
                value = float(value)
            kwargs[key] = value
        for key in _REQUIRED_KEYS:
            if key not in kwargs:
                raise ConfigInvalid(f"{key}: missing required config key")
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TrackingRecord:
    """One epoch of simulated observables."""

    epoch: float
    range_true: float
    range_rate_true: float
    range_meas: float
    doppler_frac_meas: float
    sigma_frac: float


@dataclass(frozen=True)
class AnomalyResidual:
    """Observed-minus-expected Doppler residual at one epoch."""

    epoch: float
    residual_velocity: float
    residual_rate: float


@dataclass(frozen=True)
class SignComparison:
    """Side-by-side comparison of an anomaly rate against a Hubble-like rate."""

    anomaly_rate: float
    hubble_rate: float
    magnitude_ratio: float
    opposite_sign: bool
    caveat: str


_TIME_COORDINATE_CAVEAT = (
    "two-way links mix emission-side and reception-side time coordinates; "
    "whether t or t' enters the shift bookkeeping can flip the sign of the "
    "inferred rate, and this comparison does not model that."
)


def make_trajectory(cfg: SimConfig, epoch: float) -> tuple[float, float]:
    """Heliocentric range and range rate of the linear coast at an epoch."""
    if epoch < cfg.t_start or epoch > cfg.t_end:
        raise EpochOutOfRange(
            f"epoch {epoch} outside [{cfg.t_start}, {cfg.t_end}]"
        )
    return cfg.r0 + cfg.v_radial * (epoch - cfg.t_start), cfg.v_radial


def simulate(cfg: SimConfig) -> list[TrackingRecord]:
    """Produce n_obs records at uniform epochs.

    doppler_frac_meas is the conformal model prediction over c plus
    Gaussian noise of width sigma_frac; range_meas is the true range plus
    Gaussian noise of width sigma_range.  Two runs with the same config
    are bit-identical.
    """
    p = GroupParameter.from_alpha(cfg.alpha_true, cfg.c)
    epochs = np.linspace(cfg.t_start, cfg.t_end, cfg.n_obs)
    ranges = cfg.r0 + cfg.v_radial * (epochs - cfg.t_start)
    rate = cfg.v_radial
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    draws = rng.standard_normal((cfg.n_obs, 2))
    frac = doppler_model_conformal(p, ranges, rate) / cfg.c + cfg.sigma_frac * draws[:, 0]
    range_meas = ranges + cfg.sigma_range * draws[:, 1]
    return [
        TrackingRecord(
            epoch=float(epochs[i]),
            range_true=float(ranges[i]),
            range_rate_true=rate,
            range_meas=float(range_meas[i]),
            doppler_frac_meas=float(frac[i]),
            sigma_frac=cfg.sigma_frac,
        )
        for i in range(cfg.n_obs)
    ]


def anomaly_residuals(
    records: list[TrackingRecord],
    c: float = SPEED_OF_LIGHT,
    expected_model=None,
) -> list[AnomalyResidual]:
    """Residuals of measured Doppler against an alpha = 0 expectation.

    expected_model(range_true, range_rate_true) -> velocity defaults to
    the Minkowski prediction, i.e. the range rate itself.  With zero
    noise the residual rate equals the simulated alpha at every epoch.
    """
    if expected_model is None:
        expected_model = lambda r, v: v
    out = []
    for rec in records:
        if rec.range_true == 0.0:
            raise ZeroRange(f"record at epoch {rec.epoch} has zero range")
        resid_v = c * rec.doppler_frac_meas - expected_model(rec.range_true, rec.range_rate_true)
        out.append(
            AnomalyResidual(
                epoch=rec.epoch,
                residual_velocity=resid_v,
                residual_rate=resid_v / rec.range_true,
            )
        )
    return out


def sign_comparison_report(anomaly_rate: float, hubble_rate: float) -> SignComparison:
    """Compare magnitudes and signs of an anomaly rate and a Hubble-like rate."""
    if anomaly_rate == 0.0:
        ratio = 0.0
    elif hubble_rate == 0.0:
        ratio = math.inf
    else:
        ratio = abs(anomaly_rate) / abs(hubble_rate)
    return SignComparison(
        anomaly_rate=anomaly_rate,
        hubble_rate=hubble_rate,
        magnitude_ratio=ratio,
        opposite_sign=(anomaly_rate * hubble_rate) < 0.0,
        caveat=_TIME_COORDINATE_CAVEAT,
    )


def write_records_csv(records: list[TrackingRecord], path) -> None:
    """Write records with the fixed header; floats carry 18 significant digits."""
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            ",".join(
                f"{v:.17e}"
                for v in (
                    rec.epoch,
                    rec.range_true,
                    rec.range_rate_true,
                    rec.range_meas,
                    rec.doppler_frac_meas,
                    rec.sigma_frac,
                )
            )
        )
    with open(path, "w", newline="") as f:
        f.write("\n".join(lines) + "\n")


def read_records_csv(path) -> list[TrackingRecord]:
    """Parse a tracking CSV, validating the header and every line."""
    records = []
    with open(path, "r", newline="") as f:
        header = f.readline().rstrip("\r\n")
        if header != CSV_HEADER:
            raise MalformedCsv(f"line 1: header must be {CSV_HEADER!r}, got {header!r}")
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise MalformedCsv(f"line {lineno}: expected 6 fields, got {len(parts)}")
            try:
                vals = [float(x) for x in parts]
            except ValueError as exc:
                raise MalformedCsv(f"line {lineno}: {exc}") from exc
            records.append(
                TrackingRecord(
                    epoch=vals[0],
                    range_true=vals[1],
                    range_rate_true=vals[2],
                    range_meas=vals[3],
                    doppler_frac_meas=vals[4],
                    sigma_frac=vals[5],
                )
            )
    return records
