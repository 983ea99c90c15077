//! Shared helpers and independently implemented oracles for the
//! integration suites.

#![allow(dead_code)] // each integration target uses its own subset

use rainmap::{GeoPoint, EARTH_RADIUS_KM, GEO_ALTITUDE_KM};

pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

pub fn assert_rel(got: f64, want: f64, rel: f64, what: &str) {
    let tol = want.abs() * rel;
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (rel tol {rel})"
    );
}

/// Absolute difference between two azimuth-like angles on the circle, deg.
pub fn angle_diff_deg(a: f64, b: f64) -> f64 {
    ((a - b + 180.0).rem_euclid(360.0) - 180.0).abs()
}

/// Tolerance for "equal to six significant digits": one unit in the sixth
/// significant digit of the larger magnitude.
///
/// The floor covers statistics that are differences of large numbers: grid
/// artifacts carry six significant digits per value (quantization up to
/// ~5e-6 of a mm/h-scale value), so a derived metric can never be faithful
/// below that noise, no matter how small its own magnitude is.
pub fn tol_6sig(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        return 1e-6;
    }
    10f64.powf(m.log10().floor() - 5.0).max(1e-6)
}

/// Independent look-angle oracle working in Earth-centred Cartesian
/// coordinates: place the station and the satellite on a sphere, form the
/// line-of-sight vector and read elevation/azimuth off a local
/// east-north-up basis.  Shares nothing with the trigonometric formulas in
/// the library except the two physical constants.
pub fn look_angles_ecef(station: GeoPoint, sat_lon_deg: f64) -> (f64, f64) {
    let lam = station.lon_deg.to_radians();
    let phi = station.lat_deg.to_radians();
    let r = EARTH_RADIUS_KM;
    let station_xyz = [
        r * phi.cos() * lam.cos(),
        r * phi.cos() * lam.sin(),
        r * phi.sin(),
    ];
    let sat_lam = sat_lon_deg.to_radians();
    let sat_r = EARTH_RADIUS_KM + GEO_ALTITUDE_KM;
    let sat_xyz = [sat_r * sat_lam.cos(), sat_r * sat_lam.sin(), 0.0];

    let d = [
        sat_xyz[0] - station_xyz[0],
        sat_xyz[1] - station_xyz[1],
        sat_xyz[2] - station_xyz[2],
    ];
    let east = [-lam.sin(), lam.cos(), 0.0];
    let north = [-phi.sin() * lam.cos(), -phi.sin() * lam.sin(), phi.cos()];
    let up = [phi.cos() * lam.cos(), phi.cos() * lam.sin(), phi.sin()];

    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let de = dot(&d, &east);
    let dn = dot(&d, &north);
    let du = dot(&d, &up);
    let norm = (de * de + dn * dn + du * du).sqrt();

    let elevation_deg = (du / norm).asin().to_degrees();
    let azimuth_deg = de.atan2(dn).to_degrees().rem_euclid(360.0);
    (elevation_deg, azimuth_deg)
}

/// Independent brute-force rendering of the IDW formula: plain summation of
/// `v / d^p` and `1 / d^p` over `(x, y, value)` triples, with the same snap
/// rule the library documents (nearest observation within `eps` wins, ties
/// to the lowest index).
pub fn idw_brute(samples: &[(f64, f64, f64)], px: f64, py: f64, power: f64, eps: f64) -> f64 {
    let mut best: Option<(f64, f64)> = None;
    for &(x, y, v) in samples {
        let dx = px - x;
        let dy = py - y;
        let d = (dx * dx + dy * dy).sqrt();
        if d < eps {
            let take = match best {
                Some((bd, _)) => d < bd,
                None => true,
            };
            if take {
                best = Some((d, v));
            }
        }
    }
    if let Some((_, v)) = best {
        return v;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y, v) in samples {
        let dx = px - x;
        let dy = py - y;
        let d = (dx * dx + dy * dy).sqrt();
        let w = d.powf(power);
        num += v / w;
        den += 1.0 / w;
    }
    num / den
}
