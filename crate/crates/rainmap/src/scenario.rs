//! Scenario definitions: the study area, the synthetic rain event, the
//! sensor deployment and the evaluation regions.
//!
//! Two scenarios are built in: `paper-A` (five rain gauges) and `paper-B`
//! (three gauges plus four satellite receivers).  Custom scenarios load from
//! a flat `key = value` text file with repeatable `[gauge]` and `[lnb]`
//! blocks; every global key has a default matching the built-in study area,
//! so a minimal file only needs sensors.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evaluation::RegionMask;
use crate::geodesy::{GeoPoint, LocalPoint, Projection};
use crate::linkphysics::PowerLawCoeffs;
use crate::rainfield::{GaussianField, GridSpec};
use crate::sensors::{MsrsLnb, RainGauge, SensorMode, SensorSet};
use crate::spatialization::IdwConfig;

// ---------------------------------------------------------------------------
// Built-in study area and deployments
// ---------------------------------------------------------------------------

/// North-west corner of the built-in 12 x 12 km study area.
pub const STUDY_ORIGIN: GeoPoint = GeoPoint {
    lon_deg: 10.2691,
    lat_deg: 43.7040,
};

/// Default rain ceiling for satellite links, km above sea level.
pub const DEFAULT_RAIN_HEIGHT_KM: f64 = 2.7;

/// Default midpoint-rule sample spacing for path averages, km.
pub const DEFAULT_STEP_KM: f64 = 0.01;

/// Gauge sites of the built-in deployments: `(id, lon, lat)`.
/// The two farm sites are catalogued at identical coordinates; they are kept
/// verbatim, which makes their observations coincide by construction.
const BUILTIN_GAUGES: [(&str, f64, f64); 5] = [
    ("bocca-darno", 10.2803, 43.6807),
    ("podere-rottaia", 10.3104, 43.6687),
    ("centro-avanzi", 10.3104, 43.6687),
    ("coltano", 10.3909, 43.6379),
    ("stagno", 10.3104, 43.5999),
];

/// Satellite receivers of the built-in deployments:
/// `(id, lon, lat, satellite longitude)`.
const BUILTIN_LNBS: [(&str, f64, f64, f64); 4] = [
    ("podere-rottaia-e10a", 10.3112, 43.6751, 10.0),
    ("podere-rottaia-monacosat", 10.3112, 43.6751, 52.0),
    ("centro-avanzi-astra4a", 10.3464, 43.6800, 4.8),
    ("centro-avanzi-astra2g", 10.3464, 43.6800, 28.2),
];

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

/// A complete, validated simulation setup.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub projection: Projection,
    pub grid: GridSpec,
    pub field: GaussianField,
    pub sensors: SensorSet,
    pub idw: IdwConfig,
    /// Midpoint-rule sample spacing for link path averages, km.
    pub step_km: f64,
    /// Centre of the central evaluation sector, local frame.
    pub circle_center: LocalPoint,
    /// Radius of the central evaluation sector, km.
    pub circle_radius_km: f64,
}

impl Scenario {
    /// The labelled evaluation regions: the full square and the central
    /// circular sector.
    pub fn masks(&self) -> Vec<(String, RegionMask)> {
        vec![
            ("extended".to_string(), RegionMask::FullSquare),
            (
                "central".to_string(),
                RegionMask::Circle {
                    center: self.circle_center,
                    radius_km: self.circle_radius_km,
                },
            ),
        ]
    }

    /// Replace the fidelity mode of every satellite receiver.
    pub fn set_mode(&mut self, mode: SensorMode) {
        for lnb in &mut self.sensors.lnbs {
            lnb.mode = mode;
        }
    }

    /// Check every documented invariant, naming the violated one on failure.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::Validation(msg));

        if self.grid.nx == 0 || self.grid.ny == 0 {
            return invalid("grid dimensions must be at least 1x1".into());
        }
        if !(self.grid.box_size_km > 0.0) {
            return invalid(format!(
                "grid box size must be positive, got {}",
                self.grid.box_size_km
            ));
        }
        if !(self.field.peak_mm_h >= 0.0) {
            return invalid(format!(
                "field peak must be non-negative, got {}",
                self.field.peak_mm_h
            ));
        }
        if !(self.field.sigma_km > 0.0) {
            return invalid(format!(
                "field sigma must be positive, got {}",
                self.field.sigma_km
            ));
        }
        if !(self.idw.power > 0.0) {
            return invalid(format!("IDW power must be positive, got {}", self.idw.power));
        }
        if !(self.idw.epsilon_km > 0.0) {
            return invalid(format!(
                "IDW snap distance must be positive, got {}",
                self.idw.epsilon_km
            ));
        }
        if !(self.step_km > 0.0) {
            return invalid(format!(
                "path sample spacing must be positive, got {}",
                self.step_km
            ));
        }
        if !(self.circle_radius_km > 0.0) {
            return invalid(format!(
                "central sector radius must be positive, got {}",
                self.circle_radius_km
            ));
        }
        if self.sensors.is_empty() {
            return invalid("a scenario needs at least one sensor".into());
        }

        check_geo("projection origin", self.projection.origin)?;
        let mut seen = std::collections::HashSet::new();
        for gauge in &self.sensors.gauges {
            check_geo(&format!("gauge '{}'", gauge.id), gauge.position)?;
            if !seen.insert(gauge.id.clone()) {
                return invalid(format!("duplicate sensor id '{}'", gauge.id));
            }
        }
        for lnb in &self.sensors.lnbs {
            check_geo(&format!("receiver '{}'", lnb.id), lnb.station)?;
            if !seen.insert(lnb.id.clone()) {
                return invalid(format!("duplicate sensor id '{}'", lnb.id));
            }
            if lnb.sat_lon_deg.abs() > 180.0 {
                return invalid(format!(
                    "receiver '{}': satellite longitude {} is outside [-180, 180]",
                    lnb.id, lnb.sat_lon_deg
                ));
            }
            if !(lnb.rain_height_km > lnb.station_alt_km) {
                return invalid(format!(
                    "receiver '{}': rain height {} km must exceed the station altitude {} km",
                    lnb.id, lnb.rain_height_km, lnb.station_alt_km
                ));
            }
            if let SensorMode::Physical { coeffs, xi } = lnb.mode {
                if !(coeffs.alpha > 0.0) || !(coeffs.beta > 0.0) {
                    return invalid(format!(
                        "receiver '{}': power-law coefficients must be positive",
                        lnb.id
                    ));
                }
                if !(0.0..1.0).contains(&xi) {
                    return invalid(format!(
                        "receiver '{}': noise-floor fraction {xi} must lie in [0, 1)",
                        lnb.id
                    ));
                }
            }
        }
        Ok(())
    }
}

fn check_geo(what: &str, p: GeoPoint) -> Result<()> {
    if p.lon_deg.abs() > 180.0 {
        return Err(Error::Validation(format!(
            "{what}: longitude {} is outside [-180, 180]",
            p.lon_deg
        )));
    }
    if p.lat_deg.abs() >= 90.0 {
        return Err(Error::Validation(format!(
            "{what}: latitude {} is outside (-90, 90)",
            p.lat_deg
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

fn builtin_base(name: &str) -> Scenario {
    Scenario {
        name: name.to_string(),
        projection: Projection::new(STUDY_ORIGIN),
        grid: GridSpec::new(120, 120, 0.1, LocalPoint::new(0.0, 0.0)),
        field: GaussianField::new(10.0, LocalPoint::new(6.0, -6.0), 5.0),
        sensors: SensorSet::default(),
        idw: IdwConfig::default(),
        step_km: DEFAULT_STEP_KM,
        circle_center: LocalPoint::new(6.0, -6.0),
        circle_radius_km: 4.0,
    }
}

fn builtin_gauge(id: &str, lon: f64, lat: f64) -> RainGauge {
    RainGauge {
        id: id.to_string(),
        position: GeoPoint::new(lon, lat),
    }
}

fn builtin_lnb(id: &str, lon: f64, lat: f64, sat_lon_deg: f64) -> MsrsLnb {
    MsrsLnb {
        id: id.to_string(),
        station: GeoPoint::new(lon, lat),
        station_alt_km: 0.0,
        sat_lon_deg,
        rain_height_km: DEFAULT_RAIN_HEIGHT_KM,
        mode: SensorMode::Ideal,
    }
}

/// A built-in scenario by name, if one exists.
///
/// * `paper-A`: the five-gauge deployment.
/// * `paper-B`: the three public-network gauges plus the four satellite
///   receivers standing in for the farm gauges.
pub fn builtin(name: &str) -> Option<Scenario> {
    match name {
        "paper-A" => {
            let mut s = builtin_base("paper-A");
            s.sensors.gauges = BUILTIN_GAUGES
                .iter()
                .map(|&(id, lon, lat)| builtin_gauge(id, lon, lat))
                .collect();
            Some(s)
        }
        "paper-B" => {
            let mut s = builtin_base("paper-B");
            s.sensors.gauges = BUILTIN_GAUGES
                .iter()
                .filter(|(id, _, _)| matches!(*id, "bocca-darno" | "coltano" | "stagno"))
                .map(|&(id, lon, lat)| builtin_gauge(id, lon, lat))
                .collect();
            s.sensors.lnbs = BUILTIN_LNBS
                .iter()
                .map(|&(id, lon, lat, sat)| builtin_lnb(id, lon, lat, sat))
                .collect();
            Some(s)
        }
        _ => None,
    }
}

/// Load a scenario: a built-in name (`paper-A`, `paper-B`) or a path to a
/// scenario file.  The result is always validated.
pub fn load_scenario(spec: &str) -> Result<Scenario> {
    let scenario = match builtin(spec) {
        Some(s) => s,
        None => {
            let path = Path::new(spec);
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_scenario(&text)?
        }
    };
    scenario.validate()?;
    Ok(scenario)
}

// ---------------------------------------------------------------------------
// Scenario file parsing
// ---------------------------------------------------------------------------

/// One parsed `key = value` entry with its source line.
type Entries = HashMap<String, (String, usize)>;

#[derive(Debug)]
struct Block {
    header_line: usize,
    entries: Entries,
}

const GLOBAL_KEYS: [&str; 20] = [
    "name",
    "origin_lon",
    "origin_lat",
    "nx",
    "ny",
    "box_km",
    "peak_mm_h",
    "center_x_km",
    "center_y_km",
    "sigma_km",
    "idw_power",
    "idw_epsilon_km",
    "step_km",
    "mode",
    "alpha",
    "beta",
    "xi",
    "rain_height_km",
    "circle_center_x_km",
    "circle_center_y_km",
];
const CIRCLE_RADIUS_KEY: &str = "circle_radius_km";
const GAUGE_KEYS: [&str; 3] = ["id", "lon", "lat"];
const LNB_KEYS: [&str; 6] = ["id", "lon", "lat", "alt_km", "sat_lon", "rain_height_km"];

fn known_key(section: Option<&str>, key: &str) -> bool {
    match section {
        None => GLOBAL_KEYS.contains(&key) || key == CIRCLE_RADIUS_KEY,
        Some("gauge") => GAUGE_KEYS.contains(&key),
        Some("lnb") => LNB_KEYS.contains(&key),
        Some(_) => false,
    }
}

/// Parse a scenario file.  See the crate README for the format; in short:
/// global `key = value` lines, then any number of `[gauge]` / `[lnb]`
/// blocks.  `#` starts a comment.  The result is validated.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut globals: Entries = HashMap::new();
    let mut gauges: Vec<Block> = Vec::new();
    let mut lnbs: Vec<Block> = Vec::new();
    // (section name, entries of the block currently being filled)
    let mut current: Option<(String, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }

        if let Some(section) = content.strip_prefix('[') {
            let section = section.strip_suffix(']').ok_or(Error::Parse {
                line,
                message: format!("unterminated section header '{content}'"),
            })?;
            match section {
                "gauge" => gauges.push(Block {
                    header_line: line,
                    entries: HashMap::new(),
                }),
                "lnb" => lnbs.push(Block {
                    header_line: line,
                    entries: HashMap::new(),
                }),
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown section '[{other}]', expected [gauge] or [lnb]"),
                    })
                }
            }
            current = Some((section.to_string(), line));
            continue;
        }

        let (key, value) = content.split_once('=').ok_or(Error::Parse {
            line,
            message: format!("expected 'key = value', got '{content}'"),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();

        let section_name = current.as_ref().map(|(s, _)| s.as_str());
        if !known_key(section_name, &key) {
            let scope = section_name.map_or("global scope".to_string(), |s| format!("[{s}] block"));
            return Err(Error::Parse {
                line,
                message: format!("unknown key '{key}' in {scope}"),
            });
        }

        let entries = match (&current, section_name) {
            (None, _) => &mut globals,
            (Some(_), Some("gauge")) => &mut gauges.last_mut().expect("block just pushed").entries,
            (Some(_), Some("lnb")) => &mut lnbs.last_mut().expect("block just pushed").entries,
            _ => unreachable!("sections are only gauge or lnb"),
        };
        if entries.insert(key.clone(), (value, line)).is_some() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate key '{key}'"),
            });
        }
    }

    build_scenario(globals, gauges, lnbs)
}

fn get_f64(entries: &Entries, key: &str, default: f64) -> Result<f64> {
    match entries.get(key) {
        None => Ok(default),
        Some((value, line)) => value.parse::<f64>().map_err(|_| Error::Parse {
            line: *line,
            message: format!("{key} '{value}' is not a number"),
        }),
    }
}

fn get_usize(entries: &Entries, key: &str, default: usize) -> Result<usize> {
    match entries.get(key) {
        None => Ok(default),
        Some((value, line)) => value.parse::<usize>().map_err(|_| Error::Parse {
            line: *line,
            message: format!("{key} '{value}' is not a non-negative integer"),
        }),
    }
}

fn require_f64(block: &Block, key: &str, what: &str) -> Result<f64> {
    match block.entries.get(key) {
        Some((value, line)) => value.parse::<f64>().map_err(|_| Error::Parse {
            line: *line,
            message: format!("{key} '{value}' is not a number"),
        }),
        None => Err(Error::Parse {
            line: block.header_line,
            message: format!("{what} is missing required key '{key}'"),
        }),
    }
}

fn build_scenario(globals: Entries, gauges: Vec<Block>, lnbs: Vec<Block>) -> Result<Scenario> {
    let name = globals
        .get("name")
        .map_or_else(|| "custom".to_string(), |(v, _)| v.clone());

    let origin = GeoPoint::new(
        get_f64(&globals, "origin_lon", STUDY_ORIGIN.lon_deg)?,
        get_f64(&globals, "origin_lat", STUDY_ORIGIN.lat_deg)?,
    );
    let grid = GridSpec::new(
        get_usize(&globals, "nx", 120)?,
        get_usize(&globals, "ny", 120)?,
        get_f64(&globals, "box_km", 0.1)?,
        LocalPoint::new(0.0, 0.0),
    );
    let field = GaussianField::new(
        get_f64(&globals, "peak_mm_h", 10.0)?,
        LocalPoint::new(
            get_f64(&globals, "center_x_km", 6.0)?,
            get_f64(&globals, "center_y_km", -6.0)?,
        ),
        get_f64(&globals, "sigma_km", 5.0)?,
    );
    let idw = IdwConfig {
        power: get_f64(&globals, "idw_power", 4.0)?,
        epsilon_km: get_f64(&globals, "idw_epsilon_km", 1e-9)?,
    };
    let step_km = get_f64(&globals, "step_km", DEFAULT_STEP_KM)?;
    let circle_center = LocalPoint::new(
        get_f64(&globals, "circle_center_x_km", 6.0)?,
        get_f64(&globals, "circle_center_y_km", -6.0)?,
    );
    let circle_radius_km = get_f64(&globals, CIRCLE_RADIUS_KEY, 4.0)?;
    let default_rain_height = get_f64(&globals, "rain_height_km", DEFAULT_RAIN_HEIGHT_KM)?;

    let mode = match globals.get("mode") {
        None => SensorMode::Ideal,
        Some((value, line)) => match value.to_ascii_lowercase().as_str() {
            "ideal" => SensorMode::Ideal,
            "physical" => {
                let alpha = get_f64(&globals, "alpha", f64::NAN)?;
                let beta = get_f64(&globals, "beta", f64::NAN)?;
                if alpha.is_nan() || beta.is_nan() {
                    return Err(Error::Validation(
                        "physical mode requires the 'alpha' and 'beta' keys".into(),
                    ));
                }
                SensorMode::Physical {
                    coeffs: PowerLawCoeffs::new(alpha, beta),
                    xi: get_f64(&globals, "xi", 0.0)?,
                }
            }
            other => {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("mode '{other}' is not 'ideal' or 'physical'"),
                })
            }
        },
    };

    let mut sensors = SensorSet::default();
    for (i, block) in gauges.iter().enumerate() {
        let what = format!("[gauge] block {}", i + 1);
        sensors.gauges.push(RainGauge {
            id: block
                .entries
                .get("id")
                .map_or_else(|| format!("gauge-{}", i + 1), |(v, _)| v.clone()),
            position: GeoPoint::new(
                require_f64(block, "lon", &what)?,
                require_f64(block, "lat", &what)?,
            ),
        });
    }
    for (i, block) in lnbs.iter().enumerate() {
        let what = format!("[lnb] block {}", i + 1);
        sensors.lnbs.push(MsrsLnb {
            id: block
                .entries
                .get("id")
                .map_or_else(|| format!("lnb-{}", i + 1), |(v, _)| v.clone()),
            station: GeoPoint::new(
                require_f64(block, "lon", &what)?,
                require_f64(block, "lat", &what)?,
            ),
            station_alt_km: get_f64(&block.entries, "alt_km", 0.0)?,
            sat_lon_deg: require_f64(block, "sat_lon", &what)?,
            rain_height_km: get_f64(&block.entries, "rain_height_km", default_rain_height)?,
            mode,
        });
    }

    let scenario = Scenario {
        name,
        projection: Projection::new(origin),
        grid,
        field,
        sensors,
        idw,
        step_km,
        circle_center,
        circle_radius_km,
    };
    scenario.validate()?;
    Ok(scenario)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
