//! Microwave link physics: the rain-rate/attenuation power law, path
//! attenuation along a wet slant path, the retrieval inverse and the
//! SNR-to-attenuation identity used by consumer receivers.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geodesy::LinkGeometry;
use crate::rainfield::{line_average, RainField};

// ---------------------------------------------------------------------------
// Power law
// ---------------------------------------------------------------------------

/// Coefficients of the specific-attenuation power law
/// `gamma = alpha * R^beta` (gamma in dB/km, R in mm/h).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawCoeffs {
    pub alpha: f64,
    pub beta: f64,
}

impl PowerLawCoeffs {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

/// Specific attenuation (dB/km) at rain rate `rain_rate_mm_h`.
/// Non-positive rain rates attenuate nothing.
pub fn specific_attenuation(rain_rate_mm_h: f64, coeffs: &PowerLawCoeffs) -> f64 {
    if rain_rate_mm_h <= 0.0 {
        return 0.0;
    }
    coeffs.alpha * rain_rate_mm_h.powf(coeffs.beta)
}

/// Wraps a rain field as its specific-attenuation field so that path
/// integrals reuse the exact same midpoint sampling as [`line_average`].
struct SpecificAttenuationField<'a, F: RainField + ?Sized> {
    field: &'a F,
    coeffs: PowerLawCoeffs,
}

impl<F: RainField + ?Sized> RainField for SpecificAttenuationField<'_, F> {
    fn rate_at(&self, p: crate::geodesy::LocalPoint) -> f64 {
        specific_attenuation(self.field.rate_at(p), &self.coeffs)
    }
}

/// Total attenuation (dB) accumulated along the wet slant path of `geom`.
///
/// The specific attenuation is averaged over the ground projection of the
/// path with the midpoint rule at spacing `step_km`, then scaled by the
/// slant (not ground) length: rain is assumed uniform with height below the
/// rain ceiling, so the slant integral is the ground-projected average
/// stretched onto the slant length.
pub fn path_attenuation<F: RainField + ?Sized>(
    field: &F,
    geom: &LinkGeometry,
    coeffs: &PowerLawCoeffs,
    step_km: f64,
) -> f64 {
    let gamma = SpecificAttenuationField {
        field,
        coeffs: *coeffs,
    };
    geom.wet_path_len_km * line_average(&gamma, geom.ground_start, geom.ground_end, step_km)
}

/// Invert the power law: path-average rain rate (mm/h) that explains a total
/// attenuation of `attenuation_db` over a wet path of `wet_len_km`.
///
/// Non-positive attenuation (possible after baseline drift) retrieves zero
/// rain.  A non-positive wet length is a degenerate geometry.
pub fn invert_rain_rate(
    attenuation_db: f64,
    wet_len_km: f64,
    coeffs: &PowerLawCoeffs,
) -> Result<f64> {
    if wet_len_km <= 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "wet path length must be positive, got {wet_len_km} km"
        )));
    }
    if attenuation_db <= 0.0 {
        return Ok(0.0);
    }
    Ok((attenuation_db / (coeffs.alpha * wet_len_km)).powf(1.0 / coeffs.beta))
}

// ---------------------------------------------------------------------------
// SNR readings
// ---------------------------------------------------------------------------

/// A pair of receiver SNR measurements (linear, not dB): the dry-sky
/// baseline and the current (wet) reading, plus the receiver's residual
/// noise-floor fraction `xi` in `[0, 1)`.
#[derive(Debug, Clone, Copy)]
pub struct SnrReading {
    pub eta_dry: f64,
    pub eta_wet: f64,
    pub xi: f64,
}

impl SnrReading {
    pub fn new(eta_dry: f64, eta_wet: f64, xi: f64) -> Result<Self> {
        if !(eta_dry > 0.0) {
            return Err(Error::Validation(format!(
                "dry SNR must be positive, got {eta_dry}"
            )));
        }
        if !(eta_wet > 0.0) {
            return Err(Error::Validation(format!(
                "wet SNR must be positive, got {eta_wet}"
            )));
        }
        if !(0.0..1.0).contains(&xi) {
            return Err(Error::Validation(format!(
                "noise-floor fraction xi must lie in [0, 1), got {xi}"
            )));
        }
        Ok(Self {
            eta_dry,
            eta_wet,
            xi,
        })
    }
}

/// Attenuation recovered from an SNR pair.
#[derive(Debug, Clone, Copy)]
pub struct SnrAttenuation {
    /// Rain-induced attenuation, dB.  May be negative when the wet reading
    /// exceeds the dry baseline.
    pub attenuation_db: f64,
    /// Set when the linear attenuation came out below 1 (i.e. negative dB),
    /// which indicates baseline drift rather than rain.
    pub baseline_drift: bool,
}

/// Convert an SNR pair to rain attenuation:
/// `a_lin = (eta_dry / eta_wet) * (1 - xi) + xi`, reported in dB.
pub fn snr_to_attenuation(reading: &SnrReading) -> SnrAttenuation {
    let a_lin = (reading.eta_dry / reading.eta_wet) * (1.0 - reading.xi) + reading.xi;
    SnrAttenuation {
        attenuation_db: 10.0 * a_lin.log10(),
        baseline_drift: a_lin < 1.0,
    }
}

/// Inverse of [`snr_to_attenuation`]: synthesize the wet SNR a receiver with
/// dry baseline `eta_dry` and noise-floor fraction `xi` would report under
/// `attenuation_db` of rain attenuation.
pub fn snr_from_attenuation(attenuation_db: f64, xi: f64, eta_dry: f64) -> Result<SnrReading> {
    let a_lin = 10.0_f64.powf(attenuation_db / 10.0);
    if a_lin <= xi {
        return Err(Error::Validation(format!(
            "linear attenuation {a_lin} does not exceed the noise floor fraction {xi}"
        )));
    }
    let eta_wet = eta_dry * (1.0 - xi) / (a_lin - xi);
    SnrReading::new(eta_dry, eta_wet, xi)
}

// ---------------------------------------------------------------------------
// Coefficient table
// ---------------------------------------------------------------------------

/// Signal polarization of a satellite downlink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Horizontal,
    Vertical,
}

impl FromStr for Polarization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "H" | "h" => Ok(Polarization::Horizontal),
            "V" | "v" => Ok(Polarization::Vertical),
            other => Err(format!("unknown polarization '{other}', expected H or V")),
        }
    }
}

/// One row of a frequency/polarization-indexed coefficient table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffEntry {
    pub frequency_ghz: f64,
    pub polarization: Polarization,
    pub coeffs: PowerLawCoeffs,
}

/// Power-law coefficients indexed by frequency and polarization.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    entries: Vec<CoeffEntry>,
}

impl CoeffTable {
    /// Built-in Ku-band coefficients (ITU-R P.838-3, 10-13 GHz).
    pub fn builtin_ku() -> Self {
        use Polarization::{Horizontal as H, Vertical as V};
        let rows = [
            (10.0, H, 0.01217, 1.2571),
            (10.0, V, 0.01129, 1.2156),
            (11.0, H, 0.01772, 1.2140),
            (11.0, V, 0.01731, 1.1617),
            (12.0, H, 0.02386, 1.1825),
            (12.0, V, 0.02455, 1.1216),
            (13.0, H, 0.03041, 1.1586),
            (13.0, V, 0.03266, 1.0901),
        ];
        Self {
            entries: rows
                .iter()
                .map(|&(f, p, a, b)| CoeffEntry {
                    frequency_ghz: f,
                    polarization: p,
                    coeffs: PowerLawCoeffs::new(a, b),
                })
                .collect(),
        }
    }

    /// Parse a table from text: one `frequency_ghz polarization alpha beta`
    /// row per line, `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "expected 'frequency_ghz polarization alpha beta', got {} field(s)",
                        fields.len()
                    ),
                });
            }
            let parse_f64 = |s: &str, what: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("{what} '{s}' is not a number"),
                })
            };
            let frequency_ghz = parse_f64(fields[0], "frequency")?;
            let polarization =
                Polarization::from_str(fields[1]).map_err(|message| Error::Parse { line, message })?;
            let alpha = parse_f64(fields[2], "alpha")?;
            let beta = parse_f64(fields[3], "beta")?;
            if frequency_ghz <= 0.0 || alpha <= 0.0 || beta <= 0.0 {
                return Err(Error::Parse {
                    line,
                    message: "frequency, alpha and beta must all be positive".into(),
                });
            }
            entries.push(CoeffEntry {
                frequency_ghz,
                polarization,
                coeffs: PowerLawCoeffs::new(alpha, beta),
            });
        }
        if entries.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "coefficient table contains no rows".into(),
            });
        }
        Ok(Self { entries })
    }

    /// Load a table from a file (same format as [`CoeffTable::parse`]).
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Entry with matching polarization nearest in frequency, if any.
    pub fn lookup(&self, frequency_ghz: f64, polarization: Polarization) -> Option<&CoeffEntry> {
        self.entries
            .iter()
            .filter(|e| e.polarization == polarization)
            .min_by(|a, b| {
                let da = (a.frequency_ghz - frequency_ghz).abs();
                let db = (b.frequency_ghz - frequency_ghz).abs();
                da.partial_cmp(&db).expect("frequencies are finite")
            })
    }

    pub fn entries(&self) -> &[CoeffEntry] {
        &self.entries
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
