//! Spatialization of point observations onto the analysis grid with
//! inverse-distance weighting (IDW).

use crate::error::{Error, Result};
use crate::geodesy::LocalPoint;
use crate::rainfield::{GridSpec, RainGrid};
use crate::sensors::Observation;

/// Inverse-distance weighting parameters.
#[derive(Debug, Clone, Copy)]
pub struct IdwConfig {
    /// Exponent of the distance weight `1/d^power`.
    pub power: f64,
    /// Snap distance: a target closer than this to an observation takes the
    /// observed value directly, avoiding the weight singularity.
    pub epsilon_km: f64,
}

impl Default for IdwConfig {
    fn default() -> Self {
        Self {
            power: 4.0,
            epsilon_km: 1e-9,
        }
    }
}

/// IDW estimate at a single point.
///
/// `estimate = sum(v_n / d_n^power) / sum(1 / d_n^power)` over all
/// observations.  If any observation lies within `epsilon_km` of `p`, the
/// nearest such observation wins outright (ties broken by the lowest
/// observation index).
pub fn idw_at_point(observations: &[Observation], p: LocalPoint, config: &IdwConfig) -> Result<f64> {
    if observations.is_empty() {
        return Err(Error::EmptyObservations);
    }

    let mut snapped: Option<(f64, f64)> = None; // (distance, value)
    for obs in observations {
        let d = p.distance_km(&obs.position);
        if d < config.epsilon_km {
            let closer = match snapped {
                Some((best, _)) => d < best,
                None => true,
            };
            if closer {
                snapped = Some((d, obs.rain_rate_mm_h));
            }
        }
    }
    if let Some((_, value)) = snapped {
        return Ok(value);
    }

    let mut num = 0.0;
    let mut den = 0.0;
    for obs in observations {
        let d = p.distance_km(&obs.position);
        let w = d.powf(config.power);
        num += obs.rain_rate_mm_h / w;
        den += 1.0 / w;
    }
    Ok(num / den)
}

/// IDW estimate at every box centre of `spec`.
pub fn idw_interpolate(
    observations: &[Observation],
    spec: &GridSpec,
    config: &IdwConfig,
) -> Result<RainGrid> {
    if observations.is_empty() {
        return Err(Error::EmptyObservations);
    }
    let mut values = Vec::with_capacity(spec.n_boxes());
    for row in 0..spec.ny {
        for col in 0..spec.nx {
            values.push(idw_at_point(observations, spec.box_center(col, row), config)?);
        }
    }
    RainGrid::from_values(*spec, values)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got}, want {want} (tol {tol})"
        );
    }

    fn obs(id: &str, x: f64, y: f64, v: f64) -> Observation {
        Observation {
            source_id: id.into(),
            position: LocalPoint::new(x, y),
            rain_rate_mm_h: v,
        }
    }

    #[test]
    fn equidistant_observations_average_evenly() {
        let observations = [obs("a", -1.0, 0.0, 4.0), obs("b", 1.0, 0.0, 8.0)];
        let v = idw_at_point(&observations, LocalPoint::new(0.0, 0.0), &IdwConfig::default())
            .unwrap();
        assert_close(v, 6.0, 1e-12, "two equidistant observations");
    }

    #[test]
    fn fourth_power_weights_near_observation_heavily() {
        // Distances 1 km and 2 km: weights 1 and 1/16, so the estimate is
        // (16 * 10 + 0) / 17.
        let observations = [obs("near", 1.0, 0.0, 10.0), obs("far", -2.0, 0.0, 0.0)];
        let v = idw_at_point(&observations, LocalPoint::new(0.0, 0.0), &IdwConfig::default())
            .unwrap();
        assert_close(v, 160.0 / 17.0, 1e-12, "d^-4 weighting at distances 1 and 2");
    }

    #[test]
    fn lower_power_spreads_influence_farther() {
        let observations = [obs("near", 1.0, 0.0, 10.0), obs("far", -2.0, 0.0, 0.0)];
        let cfg = IdwConfig {
            power: 2.0,
            ..IdwConfig::default()
        };
        let v = idw_at_point(&observations, LocalPoint::new(0.0, 0.0), &cfg).unwrap();
        assert_close(v, 8.0, 1e-12, "d^-2 weighting at distances 1 and 2");
    }

    #[test]
    fn target_on_observation_snaps_to_observed_value() {
        let observations = [obs("a", 2.0, -3.0, 7.25), obs("b", 5.0, -1.0, 1.0)];
        let v = idw_at_point(&observations, LocalPoint::new(2.0, -3.0), &IdwConfig::default())
            .unwrap();
        assert_eq!(v, 7.25, "coincident target must return the observation exactly");
    }

    #[test]
    fn snap_prefers_the_nearest_observation_then_lowest_index() {
        let cfg = IdwConfig {
            epsilon_km: 1e-3,
            ..IdwConfig::default()
        };
        // Both within the snap distance; the second is closer.
        let observations = [obs("a", 0.0004, 0.0, 1.0), obs("b", 0.0001, 0.0, 2.0)];
        let v = idw_at_point(&observations, LocalPoint::new(0.0, 0.0), &cfg).unwrap();
        assert_eq!(v, 2.0, "nearest observation inside the snap radius wins");
        // Exact tie: the earlier observation wins.
        let observations = [obs("a", 0.0002, 0.0, 1.0), obs("b", -0.0002, 0.0, 2.0)];
        let v = idw_at_point(&observations, LocalPoint::new(0.0, 0.0), &cfg).unwrap();
        assert_eq!(v, 1.0, "ties must resolve to the lowest observation index");
    }

    #[test]
    fn no_observations_is_an_error() {
        let err = idw_at_point(&[], LocalPoint::new(0.0, 0.0), &IdwConfig::default()).unwrap_err();
        assert!(
            matches!(err, Error::EmptyObservations),
            "expected EmptyObservations, got {err:?}"
        );
        let spec = GridSpec::new(4, 4, 1.0, LocalPoint::new(0.0, 0.0));
        let err = idw_interpolate(&[], &spec, &IdwConfig::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyObservations));
    }

    #[test]
    fn single_observation_paints_the_whole_grid() {
        let spec = GridSpec::new(8, 8, 0.5, LocalPoint::new(0.0, 0.0));
        let grid = idw_interpolate(&[obs("only", 1.3, -2.1, 6.4)], &spec, &IdwConfig::default())
            .unwrap();
        for row in 0..8 {
            for col in 0..8 {
                assert_close(
                    grid.value(col, row),
                    6.4,
                    1e-12,
                    "a lone observation must dominate everywhere",
                );
            }
        }
    }

    #[test]
    fn grid_interpolation_matches_pointwise_calls() {
        let observations = [
            obs("a", 0.4, -0.3, 3.0),
            obs("b", 2.6, -1.8, 9.0),
            obs("c", 1.1, -2.9, 5.5),
        ];
        let spec = GridSpec::new(6, 5, 0.6, LocalPoint::new(0.0, 0.0));
        let cfg = IdwConfig::default();
        let grid = idw_interpolate(&observations, &spec, &cfg).unwrap();
        for row in 0..spec.ny {
            for col in 0..spec.nx {
                let direct = idw_at_point(&observations, spec.box_center(col, row), &cfg).unwrap();
                assert_eq!(
                    grid.value(col, row),
                    direct,
                    "grid box ({col},{row}) must equal the pointwise estimate"
                );
            }
        }
    }

    #[test]
    fn estimates_stay_within_observed_range() {
        // Weights are positive and normalized, so IDW can never leave the
        // convex hull of the observed values.
        let observations = [
            obs("a", 0.0, 0.0, 2.0),
            obs("b", 3.0, 0.0, 11.0),
            obs("c", 0.0, -3.0, 7.0),
            obs("d", 3.0, -3.0, 4.5),
        ];
        let cfg = IdwConfig::default();
        for i in 0..40 {
            for j in 0..40 {
                let p = LocalPoint::new(-1.0 + 0.125 * f64::from(i), 1.0 - 0.125 * f64::from(j));
                let v = idw_at_point(&observations, p, &cfg).unwrap();
                assert!(
                    (2.0..=11.0).contains(&v),
                    "estimate {v} at ({}, {}) leaves the observed range",
                    p.x_km,
                    p.y_km
                );
            }
        }
    }
}
