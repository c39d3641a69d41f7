"""Empirical path-loss models for cellular and fixed-wireless planning.

Implemented predictors, all returning loss in dB:

* free-space loss, optionally folding in the transmit gain
* COST-231 Hata for medium-suburban and metropolitan clutter
* extended COST-231 Hata, returned with its component breakdown
* SUI terrain-class model with frequency and receiver-height corrections
* Ericsson log-distance regression model

Public entry points take distances in meters and frequencies in MHz and
convert internally where a formula wants km or GHz (mixed-unit bugs are
the dominant failure mode in this domain).  All functions are pure and
deterministic; shadowing is an explicit parameter, never sampled.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import DomainError

LIGHT_SPEED_M_PER_S = 299_792_458.0

MODEL_IDS = ("fspl", "cost231_hata", "extended_cost231", "sui", "ericsson")

# Documented validity ranges for COST-231 Hata; evaluation outside them
# warns instead of raising because 2.5 GHz planning routinely stretches it.
COST231_FREQ_RANGE_MHZ = (150.0, 2000.0)
COST231_TX_HEIGHT_RANGE_M = (10.0, 200.0)
COST231_RX_HEIGHT_RANGE_M = (1.0, 10.0)


class ModelRangeWarning(UserWarning):
    """Inputs lie outside a model's documented validity range."""


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _warn_range(name: str, value: float, lo: float, hi: float, model: str) -> None:
    if not lo <= value <= hi:
        warnings.warn(
            f"{model}: {name}={value:g} outside documented range {lo:g}-{hi:g}",
            ModelRangeWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class Environment:
    """Clutter class for COST-231 Hata: a name plus its constant in dB."""

    name: str
    clutter_db: float


MEDIUM_SUBURBAN = Environment("medium_suburban", 0.0)
METROPOLITAN = Environment("metropolitan", 3.0)
ENVIRONMENTS: Mapping[str, Environment] = {
    MEDIUM_SUBURBAN.name: MEDIUM_SUBURBAN,
    METROPOLITAN.name: METROPOLITAN,
}


@dataclass(frozen=True)
class TerrainCategory:
    """SUI terrain class with its path-loss exponent constants.

    `a` is dimensionless, `b` is per meter of transmit height, `c` is in
    meters; together they set the exponent a - b*hb + c/hb.
    """

    name: str
    a: float
    b: float
    c: float


TERRAIN_A = TerrainCategory("A", 4.6, 0.0075, 12.6)
TERRAIN_B = TerrainCategory("B", 4.0, 0.0065, 17.1)
TERRAIN_C = TerrainCategory("C", 3.6, 0.005, 20.0)
TERRAINS: Mapping[str, TerrainCategory] = {
    "A": TERRAIN_A,
    "B": TERRAIN_B,
    "C": TERRAIN_C,
}


@dataclass(frozen=True)
class SuiParams:
    """Tunables of the SUI model besides frequency, heights and distance.

    `xh_denominator_m` normalizes the receiver height inside the height
    correction.  The physically sensible value is 2 m; 2000 m is kept as
    a compatibility mode because published forms of the correction vary
    (for a 3 m receiver it produces an implausible +30 dB).
    """

    terrain: TerrainCategory = TERRAIN_B
    d0_m: float = 100.0
    shadow_db: float = 0.0
    xh_denominator_m: float = 2.0

    def __post_init__(self) -> None:
        _positive("d0_m", self.d0_m)
        if not math.isfinite(self.shadow_db) or self.shadow_db < 0.0:
            raise DomainError(f"shadow_db must be >= 0, got {self.shadow_db!r}")
        if self.xh_denominator_m not in (2.0, 2000.0):
            raise DomainError(
                f"xh_denominator_m must be 2 or 2000, got {self.xh_denominator_m!r}"
            )


@dataclass(frozen=True)
class EricssonParams:
    """Regression coefficients of the Ericsson model.

    Defaults are the conventional urban set; their distance slope at a
    40 m transmitter (30.36 dB/decade) matches drive-test practice.
    """

    a0: float = 36.2
    a1: float = 30.2
    a2: float = -12.0
    a3: float = 0.1

    def __post_init__(self) -> None:
        for field in ("a0", "a1", "a2", "a3"):
            _finite(field, getattr(self, field))


ERICSSON_URBAN = EricssonParams()


@dataclass(frozen=True)
class ExtendedCost231Loss:
    """Extended COST-231 Hata result with its component breakdown.

    total = free_space + basic_median - tx_height_gain - rx_height_gain
    """

    free_space_db: float
    basic_median_db: float
    tx_height_gain_db: float
    rx_height_gain_db: float

    @property
    def total_db(self) -> float:
        return (
            self.free_space_db
            + self.basic_median_db
            - self.tx_height_gain_db
            - self.rx_height_gain_db
        )


def fspl(freq_mhz: float, distance_km: float, tx_gain_linear: float = 1.0) -> float:
    """Free-space path loss in dB.

    32.45 - 10*log10(Gt) + 20*log10(f_MHz) + 20*log10(d_km); with a unit
    transmit gain the classic constant-plus-two-log form is recovered.
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    distance_km = _positive("distance_km", distance_km)
    tx_gain_linear = _positive("tx_gain_linear", tx_gain_linear)
    return (
        32.45
        - 10.0 * math.log10(tx_gain_linear)
        + 20.0 * math.log10(freq_mhz)
        + 20.0 * math.log10(distance_km)
    )


def mobile_station_correction(rx_height_m: float) -> float:
    """Receiver-antenna correction a(hr) in dB, large-city form.

    3.2*(log10(11.75*hr))^2 - 4.97; close to zero at the usual 1.5 m.
    """
    rx_height_m = _positive("rx_height_m", rx_height_m)
    return 3.2 * math.log10(11.75 * rx_height_m) ** 2 - 4.97


def cost231_hata(
    freq_mhz: float,
    tx_height_m: float,
    rx_height_m: float,
    distance_m: float,
    environment: Environment = MEDIUM_SUBURBAN,
) -> float:
    """COST-231 Hata path loss in dB.

    46.3 + 33.9*log10(f) - 13.82*log10(hb) - a(hr)
         + (44.9 - 6.55*log10(hb))*log10(d_km) + clutter

    Documented ranges (violations warn rather than raise): frequency
    150-2000 MHz, transmit height 10-200 m, receiver height 1-10 m.
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    tx_height_m = _positive("tx_height_m", tx_height_m)
    rx_height_m = _positive("rx_height_m", rx_height_m)
    distance_m = _positive("distance_m", distance_m)
    _warn_range("freq_mhz", freq_mhz, *COST231_FREQ_RANGE_MHZ, model="cost231_hata")
    _warn_range("tx_height_m", tx_height_m, *COST231_TX_HEIGHT_RANGE_M, model="cost231_hata")
    _warn_range("rx_height_m", rx_height_m, *COST231_RX_HEIGHT_RANGE_M, model="cost231_hata")
    distance_km = distance_m / 1000.0
    return (
        46.3
        + 33.9 * math.log10(freq_mhz)
        - 13.82 * math.log10(tx_height_m)
        - mobile_station_correction(rx_height_m)
        + (44.9 - 6.55 * math.log10(tx_height_m)) * math.log10(distance_km)
        + environment.clutter_db
    )


def extended_cost231(
    freq_mhz: float,
    tx_height_m: float,
    rx_height_m: float,
    distance_m: float,
    rx_gain_variant: str = "medium_city",
) -> ExtendedCost231Loss:
    """Extended COST-231 Hata loss with component breakdown.

    Components (d in km, f in GHz):

      free_space     = 92.4 + 20*log10(d) + 20*log10(f)
      basic_median   = 20.41 + 9.83*log10(d) + 7.894*log10(f)
                        + 9.56*(log10 f)^2
      tx_height_gain = log10(hb/200) * (13.958 + 5.8*(log10 d)^2)
      rx_height_gain = (42.57 + 13.7*log10 f) * (log10 hr - 0.585)
                       (medium_city) or 0.759*hr - 1.862 (large_city)
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    tx_height_m = _positive("tx_height_m", tx_height_m)
    rx_height_m = _positive("rx_height_m", rx_height_m)
    distance_m = _positive("distance_m", distance_m)
    if rx_gain_variant not in ("medium_city", "large_city"):
        raise DomainError(f"unknown rx_gain_variant {rx_gain_variant!r}")
    freq_ghz = freq_mhz / 1000.0
    distance_km = distance_m / 1000.0
    log_f = math.log10(freq_ghz)
    log_d = math.log10(distance_km)
    free_space = 92.4 + 20.0 * log_d + 20.0 * log_f
    basic_median = 20.41 + 9.83 * log_d + 7.894 * log_f + 9.56 * log_f**2
    tx_gain = math.log10(tx_height_m / 200.0) * (13.958 + 5.8 * log_d**2)
    if rx_gain_variant == "large_city":
        rx_gain = 0.759 * rx_height_m - 1.862
    else:
        rx_gain = (42.57 + 13.7 * log_f) * (math.log10(rx_height_m) - 0.585)
    return ExtendedCost231Loss(free_space, basic_median, tx_gain, rx_gain)


def sui_gamma(tx_height_m: float, terrain: TerrainCategory) -> float:
    """SUI path-loss exponent: a - b*hb + c/hb for the terrain class."""
    tx_height_m = _positive("tx_height_m", tx_height_m)
    return terrain.a - terrain.b * tx_height_m + terrain.c / tx_height_m


def sui_corrections(
    freq_mhz: float, rx_height_m: float, params: SuiParams
) -> tuple[float, float]:
    """SUI frequency and receiver-height corrections (Xf, Xh) in dB.

    Xf = 6.0*log10(f/2000).  Xh = -10.8*log10(hr/D) for terrains A and B
    and -20*log10(hr/D) for terrain C, with D = params.xh_denominator_m.
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    rx_height_m = _positive("rx_height_m", rx_height_m)
    xf = 6.0 * math.log10(freq_mhz / 2000.0)
    coeff = -20.0 if params.terrain.name == "C" else -10.8
    xh = coeff * math.log10(rx_height_m / params.xh_denominator_m)
    return xf, xh


def sui_path_loss(
    freq_mhz: float,
    tx_height_m: float,
    rx_height_m: float,
    distance_m: float,
    params: SuiParams = SuiParams(),
) -> float:
    """SUI path loss in dB, defined only for distances beyond d0.

    A + 10*gamma*log10(d/d0) + Xf + Xh + s, where A is the free-space
    loss at the reference distance, 20*log10(4*pi*d0/lambda).
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    tx_height_m = _positive("tx_height_m", tx_height_m)
    rx_height_m = _positive("rx_height_m", rx_height_m)
    distance_m = _positive("distance_m", distance_m)
    if distance_m <= params.d0_m:
        raise DomainError(
            f"sui_path_loss requires distance_m > d0 ({params.d0_m:g} m), "
            f"got {distance_m:g} m"
        )
    wavelength_m = LIGHT_SPEED_M_PER_S / (freq_mhz * 1e6)
    intercept = 20.0 * math.log10(4.0 * math.pi * params.d0_m / wavelength_m)
    gamma = sui_gamma(tx_height_m, params.terrain)
    xf, xh = sui_corrections(freq_mhz, rx_height_m, params)
    return (
        intercept
        + 10.0 * gamma * math.log10(distance_m / params.d0_m)
        + xf
        + xh
        + params.shadow_db
    )


def ericsson_frequency_term(freq_mhz: float) -> float:
    """Frequency-dependent term of the Ericsson model, g(f) in dB.

    44.49*log10(f) - 4.78*(log10 f)^2.
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    log_f = math.log10(freq_mhz)
    return 44.49 * log_f - 4.78 * log_f**2


def ericsson_path_loss(
    freq_mhz: float,
    tx_height_m: float,
    rx_height_m: float,
    distance_m: float,
    params: EricssonParams = ERICSSON_URBAN,
) -> float:
    """Ericsson model path loss in dB (distance term in km).

    a0 + a1*log10(d) + a2*log10(hb) + a3*log10(hb)*log10(d)
       - 3.2*(log10(11.75*hr))^2 + g(f)
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    tx_height_m = _positive("tx_height_m", tx_height_m)
    rx_height_m = _positive("rx_height_m", rx_height_m)
    distance_m = _positive("distance_m", distance_m)
    log_d = math.log10(distance_m / 1000.0)
    log_hb = math.log10(tx_height_m)
    return (
        params.a0
        + params.a1 * log_d
        + params.a2 * log_hb
        + params.a3 * log_hb * log_d
        - 3.2 * math.log10(11.75 * rx_height_m) ** 2
        + ericsson_frequency_term(freq_mhz)
    )


class PathLossModel:
    """A named predictor mapping distance in meters to path loss in dB.

    Wraps one of the model functions with its parameters fixed, plus an
    optional constant correction subtracted from the raw loss (the knob
    drive-test calibration turns).  Instances are immutable in practice:
    `corrected` returns a new model instead of mutating.
    """

    __slots__ = ("model_id", "name", "correction_db", "_predict")

    def __init__(
        self,
        model_id: str,
        predict: Callable[[float], float],
        name: str | None = None,
        correction_db: float = 0.0,
    ) -> None:
        self.model_id = model_id
        self.name = name or model_id
        self.correction_db = _finite("correction_db", correction_db)
        self._predict = predict

    def path_loss_db(self, distance_m: float) -> float:
        return self._predict(distance_m) - self.correction_db

    def corrected(self, cf_db: float) -> "PathLossModel":
        """New model whose path loss is this one's minus cf_db."""
        return PathLossModel(
            self.model_id,
            self._predict,
            name=f"{self.name}_corrected",
            correction_db=self.correction_db + _finite("cf_db", cf_db),
        )

    def __repr__(self) -> str:
        return (
            f"PathLossModel(model_id={self.model_id!r}, name={self.name!r}, "
            f"correction_db={self.correction_db!r})"
        )


def make_model(
    model_id: str,
    freq_mhz: float,
    tx_height_m: float | None = None,
    rx_height_m: float | None = None,
    *,
    environment: Environment = MEDIUM_SUBURBAN,
    sui_params: SuiParams | None = None,
    ericsson_params: EricssonParams | None = None,
    tx_gain_linear: float = 1.0,
    rx_gain_variant: str = "medium_city",
    name: str | None = None,
) -> PathLossModel:
    """Bind a model id and its parameters into a distance -> dB predictor.

    Heights are ignored by `fspl` and required by every other model.
    """
    freq_mhz = _positive("freq_mhz", freq_mhz)
    if model_id == "fspl":
        gt = _positive("tx_gain_linear", tx_gain_linear)

        def predict(distance_m: float) -> float:
            return fspl(freq_mhz, _positive("distance_m", distance_m) / 1000.0, gt)

        return PathLossModel(model_id, predict, name=name)

    if model_id not in MODEL_IDS:
        raise DomainError(f"unknown model id {model_id!r}")
    if tx_height_m is None or rx_height_m is None:
        raise DomainError(f"{model_id} requires tx_height_m and rx_height_m")
    hb = _positive("tx_height_m", tx_height_m)
    hr = _positive("rx_height_m", rx_height_m)

    if model_id == "cost231_hata":
        def predict(distance_m: float) -> float:
            return cost231_hata(freq_mhz, hb, hr, distance_m, environment)
    elif model_id == "extended_cost231":
        def predict(distance_m: float) -> float:
            return extended_cost231(freq_mhz, hb, hr, distance_m, rx_gain_variant).total_db
    elif model_id == "sui":
        sui_p = sui_params if sui_params is not None else SuiParams()

        def predict(distance_m: float) -> float:
            return sui_path_loss(freq_mhz, hb, hr, distance_m, sui_p)
    else:  # ericsson
        eric_p = ericsson_params if ericsson_params is not None else ERICSSON_URBAN

        def predict(distance_m: float) -> float:
            return ericsson_path_loss(freq_mhz, hb, hr, distance_m, eric_p)

    return PathLossModel(model_id, predict, name=name)


def model_from_params(model_id: str, params: Mapping[str, object]) -> PathLossModel:
    """Build a model from a flat parameter mapping.

    The dynamic twin of `make_model`, used by grid search and the CLI.
    Accepted keys: freq_mhz, tx_height_m, rx_height_m, environment,
    terrain, sui_d0_m, sui_shadow_db, sui_xh_denominator_m,
    ericsson_a0..ericsson_a3, tx_gain_linear, rx_gain_variant.
    Environment and terrain accept either the objects or their names.
    """
    known = {
        "freq_mhz", "tx_height_m", "rx_height_m", "environment", "terrain",
        "sui_d0_m", "sui_shadow_db", "sui_xh_denominator_m",
        "ericsson_a0", "ericsson_a1", "ericsson_a2", "ericsson_a3",
        "tx_gain_linear", "rx_gain_variant",
    }
    unknown = set(params) - known
    if unknown:
        raise DomainError(f"unknown model parameters: {sorted(unknown)}")
    if "freq_mhz" not in params:
        raise DomainError("freq_mhz is required")

    environment = params.get("environment", MEDIUM_SUBURBAN)
    if isinstance(environment, str):
        if environment not in ENVIRONMENTS:
            raise DomainError(f"unknown environment {environment!r}")
        environment = ENVIRONMENTS[environment]

    terrain = params.get("terrain", TERRAIN_B)
    if isinstance(terrain, str):
        if terrain not in TERRAINS:
            raise DomainError(f"unknown terrain {terrain!r}")
        terrain = TERRAINS[terrain]

    sui_p = SuiParams(
        terrain=terrain,
        d0_m=float(params.get("sui_d0_m", 100.0)),
        shadow_db=float(params.get("sui_shadow_db", 0.0)),
        xh_denominator_m=float(params.get("sui_xh_denominator_m", 2.0)),
    )
    eric_p = EricssonParams(
        a0=float(params.get("ericsson_a0", ERICSSON_URBAN.a0)),
        a1=float(params.get("ericsson_a1", ERICSSON_URBAN.a1)),
        a2=float(params.get("ericsson_a2", ERICSSON_URBAN.a2)),
        a3=float(params.get("ericsson_a3", ERICSSON_URBAN.a3)),
    )
    heights = {}
    if params.get("tx_height_m") is not None:
        heights["tx_height_m"] = float(params["tx_height_m"])  # type: ignore[arg-type]
    if params.get("rx_height_m") is not None:
        heights["rx_height_m"] = float(params["rx_height_m"])  # type: ignore[arg-type]
    return make_model(
        model_id,
        float(params["freq_mhz"]),  # type: ignore[arg-type]
        **heights,
        environment=environment,
        sui_params=sui_p,
        ericsson_params=eric_p,
        tx_gain_linear=float(params.get("tx_gain_linear", 1.0)),
        rx_gain_variant=str(params.get("rx_gain_variant", "medium_city")),
    )


def evaluate(model: PathLossModel, distance_m: float) -> float:
    """Evaluate a bound model at one distance; pure and deterministic."""
    return model.path_loss_db(distance_m)
