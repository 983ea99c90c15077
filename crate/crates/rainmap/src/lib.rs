//! Synthetic rain-field simulation and rain-rate retrieval from mixed
//! sensor networks: point rain gauges plus satellite-TV receivers used as
//! opportunistic path-averaged rain sensors.
//!
//! The crate covers the full feasibility-study pipeline:
//!
//! 1. [`geodesy`] - a local planar frame over the study area, geostationary
//!    look angles and slant wet-link geometry;
//! 2. [`rainfield`] - synthetic rain fields, the analysis grid and line
//!    averages along ground segments;
//! 3. [`linkphysics`] - the attenuation power law, path attenuation, its
//!    inverse and the SNR-to-attenuation identity;
//! 4. [`sensors`] - gauge and LNB observation models;
//! 5. [`spatialization`] - inverse-distance weighting onto the grid;
//! 6. [`evaluation`] - masked RMSE/bias/MAE between grids;
//! 7. [`scenario`] / [`pipeline`] - built-in and file-based scenarios and
//!    the end-to-end run with artifact emission;
//! 8. [`gridio`] - geo-registered CSV grids and PGM heatmaps.
//!
//! Everything is deterministic: no randomness, no time dependence, and
//! artifacts reproduce byte for byte across runs.

pub mod error;
pub mod evaluation;
pub mod geodesy;
pub mod gridio;
pub mod linkphysics;
pub mod pipeline;
pub mod rainfield;
pub mod scenario;
pub mod sensors;
pub mod spatialization;

pub use error::{Error, Result};
pub use evaluation::{error_summary, rmse, MaskMetrics, RegionMask};
pub use geodesy::{
    geo_look_angles, slant_geometry, wet_path, GeoPoint, LinkGeometry, LocalPoint, LookAngles,
    Projection, EARTH_RADIUS_KM, GEO_ALTITUDE_KM,
};
pub use gridio::{
    format_sig6, grid_csv_string, heatmap_pgm_bytes, parse_grid_csv, parse_pgm, read_grid_csv,
    write_grid_csv, write_heatmap_pgm, PgmImage,
};
pub use linkphysics::{
    invert_rain_rate, path_attenuation, snr_from_attenuation, snr_to_attenuation,
    specific_attenuation, CoeffEntry, CoeffTable, Polarization, PowerLawCoeffs, SnrAttenuation,
    SnrReading,
};
pub use pipeline::{run, simulate, RunReport, SimulationResult};
pub use rainfield::{
    line_average, rasterize, ConstantField, GaussianField, GridSpec, RainField, RainGrid,
};
pub use scenario::{builtin, load_scenario, parse_scenario, Scenario};
pub use sensors::{
    observe_all, observe_gauge, observe_lnb, MsrsLnb, Observation, RainGauge, SensorMode,
    SensorSet,
};
pub use spatialization::{idw_at_point, idw_interpolate, IdwConfig};
