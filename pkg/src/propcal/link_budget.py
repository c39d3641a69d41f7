"""Site configuration and the link budget tying path loss to RSS.

received = tx_power + tx_gain + rx_gain - path_loss - feeder - polarization

Everything except path loss is a per-site constant, so the conversion in
both directions is an affine shift.  That shift is what lets calibration
work in received-signal space while the models predict loss.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields

from .errors import DataError, DomainError


@dataclass(frozen=True)
class SiteConfig:
    """Transmit-site parameters, all in dB/dBm/meters/MHz."""

    tx_power_dbm: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    feeder_loss_db: float
    polarization_loss_db: float
    freq_mhz: float
    tx_height_m: float
    rx_height_m: float

    def __post_init__(self) -> None:
        for name in ("tx_power_dbm", "tx_gain_dbi", "rx_gain_dbi"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        for name in ("feeder_loss_db", "polarization_loss_db"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"{name} must be >= 0, got {value!r}")
        for name in ("freq_mhz", "tx_height_m", "rx_height_m"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"{name} must be positive, got {value!r}")

    @property
    def budget_db(self) -> float:
        """Constant part of the link budget: gains minus fixed losses."""
        return (
            self.tx_power_dbm
            + self.tx_gain_dbi
            + self.rx_gain_dbi
            - self.feeder_loss_db
            - self.polarization_loss_db
        )


# 2.5 GHz band site used throughout the bundled reference dataset.
REFERENCE_SITE = SiteConfig(
    tx_power_dbm=30.0,
    tx_gain_dbi=20.0,
    rx_gain_dbi=18.0,
    feeder_loss_db=1.2,
    polarization_loss_db=3.0,
    freq_mhz=2530.0,
    tx_height_m=40.0,
    rx_height_m=3.0,
)


def predict_rss(site: SiteConfig, path_loss_db: float) -> float:
    """Received signal strength in dBm for a given path loss."""
    if not math.isfinite(path_loss_db):
        raise DomainError(f"path_loss_db must be finite, got {path_loss_db!r}")
    return site.budget_db - path_loss_db


def path_loss_from_rss(site: SiteConfig, rss_dbm: float) -> float:
    """Invert the budget: path loss in dB implied by a measured RSS."""
    if not math.isfinite(rss_dbm):
        raise DomainError(f"rss_dbm must be finite, got {rss_dbm!r}")
    return site.budget_db - rss_dbm


def site_to_json(site: SiteConfig) -> str:
    """Serialize a site to JSON with stable key order."""
    return json.dumps(asdict(site), indent=2) + "\n"


def site_from_json(text: str) -> SiteConfig:
    """Parse a site from JSON; unknown or missing fields are rejected."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid site JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DataError("site JSON must be an object")
    expected = {f.name for f in fields(SiteConfig)}
    unknown = set(raw) - expected
    if unknown:
        raise DataError(f"unknown site fields: {sorted(unknown)}")
    missing = expected - set(raw)
    if missing:
        raise DataError(f"missing site fields: {sorted(missing)}")
    values = {}
    for key in expected:
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DataError(f"site field {key} must be a number, got {value!r}")
        values[key] = float(value)
    return SiteConfig(**values)
