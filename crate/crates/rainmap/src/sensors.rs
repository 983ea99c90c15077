//! Sensor models: point rain gauges and satellite-TV LNB receivers used as
//! opportunistic path-averaged rain sensors.
//!
//! Both sensor kinds observe a synthetic rain field and produce a single
//! [`Observation`]: a rain rate attributed to a point of the local plane.
//! A gauge reports the field at its own position; an LNB reports a
//! path-average over the wet segment of its slant path, attributed to the
//! point where the path pierces the rain height ("virtual gauge").

use crate::error::{Error, Result};
use crate::geodesy::{slant_geometry, GeoPoint, LinkGeometry, LocalPoint, Projection};
use crate::linkphysics::{
    invert_rain_rate, path_attenuation, snr_from_attenuation, snr_to_attenuation, PowerLawCoeffs,
};
use crate::rainfield::{line_average, RainField};

/// Dry-sky SNR baseline used when synthesizing receiver readings.  Only the
/// dry/wet ratio enters the retrieval, so the absolute level is arbitrary.
pub const ETA_DRY_REFERENCE: f64 = 100.0;

/// Fidelity of the LNB forward model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SensorMode {
    /// The receiver reports the exact path-averaged rain rate.
    Ideal,
    /// The receiver reports an SNR pair; rain is retrieved by converting it
    /// to attenuation and inverting the power law.
    Physical { coeffs: PowerLawCoeffs, xi: f64 },
}

/// A tipping-bucket style point rain gauge.
#[derive(Debug, Clone)]
pub struct RainGauge {
    pub id: String,
    pub position: GeoPoint,
}

/// A satellite-TV low-noise-block receiver watching a geostationary
/// satellite, repurposed as a rain sensor.
#[derive(Debug, Clone)]
pub struct MsrsLnb {
    pub id: String,
    pub station: GeoPoint,
    /// Station altitude above sea level, km.
    pub station_alt_km: f64,
    /// Longitude of the geostationary satellite, degrees east.
    pub sat_lon_deg: f64,
    /// Rain ceiling: the slant path is wet below this altitude, km.
    pub rain_height_km: f64,
    pub mode: SensorMode,
}

impl MsrsLnb {
    /// Wet-link geometry of this receiver in the local frame.
    pub fn geometry(&self, projection: &Projection) -> Result<LinkGeometry> {
        slant_geometry(
            self.station,
            self.station_alt_km,
            self.sat_lon_deg,
            self.rain_height_km,
            projection,
        )
    }
}

/// A single rain-rate observation attributed to a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub source_id: String,
    pub position: LocalPoint,
    pub rain_rate_mm_h: f64,
}

/// The full sensor deployment of a scenario.
#[derive(Debug, Clone, Default)]
pub struct SensorSet {
    pub gauges: Vec<RainGauge>,
    pub lnbs: Vec<MsrsLnb>,
}

impl SensorSet {
    pub fn len(&self) -> usize {
        self.gauges.len() + self.lnbs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gauges.is_empty() && self.lnbs.is_empty()
    }
}

/// Observe `field` with a point gauge: the field value at the gauge site.
pub fn observe_gauge<F: RainField + ?Sized>(
    gauge: &RainGauge,
    field: &F,
    projection: &Projection,
) -> Observation {
    let position = projection.to_local(gauge.position);
    Observation {
        source_id: gauge.id.clone(),
        position,
        rain_rate_mm_h: field.rate_at(position),
    }
}

/// Observe `field` with an LNB receiver.
///
/// In [`SensorMode::Ideal`] the observation is the exact midpoint-rule
/// average of the field over the ground projection of the wet path.  In
/// [`SensorMode::Physical`] the attenuation accumulated along the path is
/// turned into a synthetic SNR reading and retrieved back through the
/// SNR-to-attenuation identity and the power-law inverse.  Either way the
/// result is attributed to the far end of the ground projection.
pub fn observe_lnb<F: RainField + ?Sized>(
    lnb: &MsrsLnb,
    field: &F,
    projection: &Projection,
    step_km: f64,
) -> Result<Observation> {
    let geom = lnb.geometry(projection)?;
    let rain_rate_mm_h = match lnb.mode {
        SensorMode::Ideal => line_average(field, geom.ground_start, geom.ground_end, step_km),
        SensorMode::Physical { coeffs, xi } => {
            let a_db = path_attenuation(field, &geom, &coeffs, step_km);
            let reading = snr_from_attenuation(a_db, xi, ETA_DRY_REFERENCE)?;
            let recovered = snr_to_attenuation(&reading);
            invert_rain_rate(recovered.attenuation_db, geom.wet_path_len_km, &coeffs)?
        }
    };
    Ok(Observation {
        source_id: lnb.id.clone(),
        position: geom.ground_end,
        rain_rate_mm_h,
    })
}

/// Observe `field` with every sensor of `sensors`: one observation per gauge
/// then one per LNB, in declaration order.  A failing LNB aborts the whole
/// sweep with its id attached.
pub fn observe_all<F: RainField + ?Sized>(
    sensors: &SensorSet,
    field: &F,
    projection: &Projection,
    step_km: f64,
) -> Result<Vec<Observation>> {
    let mut out = Vec::with_capacity(sensors.len());
    for gauge in &sensors.gauges {
        out.push(observe_gauge(gauge, field, projection));
    }
    for lnb in &sensors.lnbs {
        let obs = observe_lnb(lnb, field, projection, step_km).map_err(|e| Error::Sensor {
            id: lnb.id.clone(),
            source: Box::new(e),
        })?;
        out.push(obs);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
