"""Empirical path-loss prediction and drive-test calibration toolkit.

Predict received signal strength with classic empirical models, fit a
constant correction factor per model against measured drive-test data,
and rank the corrected models by mean squared error and correlation.
"""

from .calibration import (
    CalibrationReport,
    InferenceResult,
    ModelCalibration,
    ModelMetrics,
    apply_correction,
    calibrate,
    correction_factor,
    cost231_tx_height_from_slope,
    decade_slope,
    infer_site_parameters,
    mse,
    pearson_r,
    published_divergence_notes,
    residuals,
)
from .dataset import (
    DriveTestSample,
    DriveTestTable,
    PUBLISHED_CALIBRATION,
    emit_plot_series,
    parse_drive_test_csv,
    reference_dataset,
    serialize_drive_test_csv,
    with_prediction,
)
from .errors import DataError, DomainError, PropcalError
from .link_budget import (
    REFERENCE_SITE,
    SiteConfig,
    path_loss_from_rss,
    predict_rss,
    site_from_json,
    site_to_json,
)
from .models import (
    ENVIRONMENTS,
    ERICSSON_URBAN,
    MEDIUM_SUBURBAN,
    METROPOLITAN,
    MODEL_IDS,
    TERRAIN_A,
    TERRAIN_B,
    TERRAIN_C,
    TERRAINS,
    Environment,
    EricssonParams,
    ExtendedCost231Loss,
    ModelRangeWarning,
    PathLossModel,
    SuiParams,
    TerrainCategory,
    cost231_hata,
    ericsson_frequency_term,
    ericsson_path_loss,
    evaluate,
    extended_cost231,
    fspl,
    make_model,
    mobile_station_correction,
    model_from_params,
    sui_corrections,
    sui_gamma,
    sui_path_loss,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationReport",
    "DataError",
    "DomainError",
    "DriveTestSample",
    "DriveTestTable",
    "ENVIRONMENTS",
    "ERICSSON_URBAN",
    "Environment",
    "EricssonParams",
    "ExtendedCost231Loss",
    "InferenceResult",
    "MEDIUM_SUBURBAN",
    "METROPOLITAN",
    "MODEL_IDS",
    "ModelCalibration",
    "ModelMetrics",
    "ModelRangeWarning",
    "PUBLISHED_CALIBRATION",
    "PathLossModel",
    "PropcalError",
    "REFERENCE_SITE",
    "SiteConfig",
    "SuiParams",
    "TERRAIN_A",
    "TERRAIN_B",
    "TERRAIN_C",
    "TERRAINS",
    "TerrainCategory",
    "apply_correction",
    "calibrate",
    "correction_factor",
    "cost231_hata",
    "cost231_tx_height_from_slope",
    "decade_slope",
    "emit_plot_series",
    "ericsson_frequency_term",
    "ericsson_path_loss",
    "evaluate",
    "extended_cost231",
    "fspl",
    "infer_site_parameters",
    "make_model",
    "mobile_station_correction",
    "model_from_params",
    "mse",
    "parse_drive_test_csv",
    "path_loss_from_rss",
    "pearson_r",
    "predict_rss",
    "published_divergence_notes",
    "reference_dataset",
    "residuals",
    "serialize_drive_test_csv",
    "site_from_json",
    "site_to_json",
    "sui_corrections",
    "sui_gamma",
    "sui_path_loss",
    "with_prediction",
]
