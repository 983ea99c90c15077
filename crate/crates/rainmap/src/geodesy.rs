//! Geodetic-to-local projection, geostationary look angles and slant
//! wet-link geometry.
//!
//! All horizontal coordinates inside the study area live in a local planar
//! frame obtained by an equirectangular projection about a fixed origin:
//! `x` grows eastward, `y` grows northward, both in kilometres.  The frame
//! is accurate to well under a metre over the ~12 km study area.

use crate::error::{Error, Result};

/// Mean Earth radius (spherical model), km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Altitude of the geostationary arc above the Earth surface, km.
pub const GEO_ALTITUDE_KM: f64 = 35_786.0;

// ---------------------------------------------------------------------------
// Coordinate types
// ---------------------------------------------------------------------------

/// A point on the sphere given as geodetic longitude/latitude in degrees
/// (east and north positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    pub lon_deg: f64,
    pub lat_deg: f64,
}

impl GeoPoint {
    pub fn new(lon_deg: f64, lat_deg: f64) -> Self {
        Self { lon_deg, lat_deg }
    }
}

/// A point in the local planar frame, km east (`x`) and north (`y`) of the
/// projection origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalPoint {
    pub x_km: f64,
    pub y_km: f64,
}

impl LocalPoint {
    pub fn new(x_km: f64, y_km: f64) -> Self {
        Self { x_km, y_km }
    }

    /// Euclidean distance to `other`, km.
    pub fn distance_km(&self, other: &LocalPoint) -> f64 {
        let dx = self.x_km - other.x_km;
        let dy = self.y_km - other.y_km;
        (dx * dx + dy * dy).sqrt()
    }
}

// ---------------------------------------------------------------------------
// Equirectangular projection
// ---------------------------------------------------------------------------

/// Equirectangular projection about a fixed geodetic origin.
///
/// Longitude differences are scaled by the cosine of the *origin* latitude,
/// so the frame is strictly planar and trivially invertible.
#[derive(Debug, Clone, Copy)]
pub struct Projection {
    pub origin: GeoPoint,
}

impl Projection {
    pub fn new(origin: GeoPoint) -> Self {
        Self { origin }
    }

    /// Project a geodetic point into the local frame.
    pub fn to_local(&self, p: GeoPoint) -> LocalPoint {
        let cos_lat0 = self.origin.lat_deg.to_radians().cos();
        let x_km = EARTH_RADIUS_KM * cos_lat0 * (p.lon_deg - self.origin.lon_deg).to_radians();
        let y_km = EARTH_RADIUS_KM * (p.lat_deg - self.origin.lat_deg).to_radians();
        LocalPoint::new(x_km, y_km)
    }

    /// Invert the projection: local frame back to geodetic coordinates.
    pub fn from_local(&self, p: LocalPoint) -> GeoPoint {
        let cos_lat0 = self.origin.lat_deg.to_radians().cos();
        let lon_deg = self.origin.lon_deg + (p.x_km / (EARTH_RADIUS_KM * cos_lat0)).to_degrees();
        let lat_deg = self.origin.lat_deg + (p.y_km / EARTH_RADIUS_KM).to_degrees();
        GeoPoint::new(lon_deg, lat_deg)
    }
}

// ---------------------------------------------------------------------------
// Geostationary look angles
// ---------------------------------------------------------------------------

/// Antenna pointing towards a geostationary satellite.
#[derive(Debug, Clone, Copy)]
pub struct LookAngles {
    /// Elevation above the local horizon, degrees.
    pub elevation_deg: f64,
    /// Azimuth clockwise from true north, degrees in `[0, 360)`.
    pub azimuth_deg: f64,
}

/// Look angles from a ground station to a geostationary satellite parked at
/// `sat_lon_deg` (spherical Earth, satellite exactly on the equatorial arc).
///
/// Fails with [`Error::BelowHorizon`] when the satellite is not visible.
pub fn geo_look_angles(station: GeoPoint, sat_lon_deg: f64) -> Result<LookAngles> {
    let k = EARTH_RADIUS_KM / (EARTH_RADIUS_KM + GEO_ALTITUDE_KM);
    let lat = station.lat_deg.to_radians();
    let dlon = (sat_lon_deg - station.lon_deg).to_radians();

    // psi is the central angle between the station and the sub-satellite
    // point; elevation follows from the triangle station / satellite /
    // Earth centre.
    let cos_psi = lat.cos() * dlon.cos();
    let sin_psi = (1.0 - cos_psi * cos_psi).sqrt();
    let elevation_deg = (cos_psi - k).atan2(sin_psi).to_degrees();
    if elevation_deg <= 0.0 {
        return Err(Error::BelowHorizon { elevation_deg });
    }

    // Azimuth measured clockwise from north.  For a northern-hemisphere
    // station and a satellite due south this evaluates to exactly 180.
    let azimuth_deg = (180.0 - dlon.tan().atan2(lat.sin()).to_degrees()).rem_euclid(360.0);

    Ok(LookAngles {
        elevation_deg,
        azimuth_deg,
    })
}

// ---------------------------------------------------------------------------
// Slant wet-link geometry
// ---------------------------------------------------------------------------

/// Geometry of the wet (sub-rain-height) segment of a station-to-satellite
/// slant path, in the local planar frame.
#[derive(Debug, Clone, Copy)]
pub struct LinkGeometry {
    pub elevation_deg: f64,
    pub azimuth_deg: f64,
    /// Length of the slant path below the rain height, km.
    pub wet_path_len_km: f64,
    /// Length of its projection on the ground, km.
    pub ground_proj_len_km: f64,
    /// Station position (start of the ground projection).
    pub ground_start: LocalPoint,
    /// Where the slant path pierces the rain height, projected to ground.
    pub ground_end: LocalPoint,
}

/// Wet-segment lengths for a path at `elevation_deg` between a station at
/// `station_alt_km` and the rain height `rain_height_km` (both above sea
/// level).  Returns `(wet_path_len_km, ground_proj_len_km)`.
pub fn wet_path(elevation_deg: f64, rain_height_km: f64, station_alt_km: f64) -> Result<(f64, f64)> {
    if elevation_deg <= 0.0 {
        return Err(Error::BelowHorizon {
            elevation_deg,
        });
    }
    let dh = rain_height_km - station_alt_km;
    if dh <= 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "rain height {rain_height_km} km does not exceed station altitude {station_alt_km} km"
        )));
    }
    let theta = elevation_deg.to_radians();
    let wet_len = dh / theta.sin();
    let ground_len = wet_len * theta.cos();
    Ok((wet_len, ground_len))
}

/// Full wet-link geometry for a station looking at a geostationary satellite.
///
/// The rain field between the ground and `rain_height_km` is what the link
/// senses; everything above is assumed dry.
pub fn slant_geometry(
    station: GeoPoint,
    station_alt_km: f64,
    sat_lon_deg: f64,
    rain_height_km: f64,
    projection: &Projection,
) -> Result<LinkGeometry> {
    let angles = geo_look_angles(station, sat_lon_deg)?;
    let (wet_path_len_km, ground_proj_len_km) =
        wet_path(angles.elevation_deg, rain_height_km, station_alt_km)?;
    let ground_start = projection.to_local(station);
    let az = angles.azimuth_deg.to_radians();
    let ground_end = LocalPoint::new(
        ground_start.x_km + ground_proj_len_km * az.sin(),
        ground_start.y_km + ground_proj_len_km * az.cos(),
    );
    Ok(LinkGeometry {
        elevation_deg: angles.elevation_deg,
        azimuth_deg: angles.azimuth_deg,
        wet_path_len_km,
        ground_proj_len_km,
        ground_start,
        ground_end,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
