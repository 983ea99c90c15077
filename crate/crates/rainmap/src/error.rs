//! Error types shared across the crate.

use std::path::PathBuf;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions the library can report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested satellite is at or below the local horizon.
    #[error("satellite is below the horizon (elevation {elevation_deg:.3} deg)")]
    BelowHorizon { elevation_deg: f64 },

    /// A slant path cannot be formed, e.g. the rain height does not exceed
    /// the station altitude or a path length is non-positive.
    #[error("degenerate link geometry: {0}")]
    DegenerateGeometry(String),

    /// Interpolation was requested with no observations to interpolate from.
    #[error("no observations available for interpolation")]
    EmptyObservations,

    /// An evaluation mask selects no grid box.
    #[error("evaluation mask selects no grid box")]
    EmptyMask,

    /// Two grids that must share a geometry (size, box size, origin) do not.
    #[error("grid geometry mismatch: {0}")]
    GridMismatch(String),

    /// A scenario or table file could not be parsed.  Reports the offending
    /// line number (1-based) and what was expected.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A scenario parsed cleanly but violates a documented invariant.
    #[error("invalid scenario: {0}")]
    Validation(String),

    /// A sensor could not produce an observation; wraps the underlying error
    /// with the sensor id.
    #[error("sensor '{id}' failed: {source}")]
    Sensor {
        id: String,
        #[source]
        source: Box<Error>,
    },

    /// Filesystem problem while reading or writing an artifact.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Helper to wrap `std::io::Error` with the path it concerns.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
