//! Synthetic rain fields, the analysis grid and line integrals along ground
//! segments.
//!
//! A rain field is any scalar function of the local plane returning a rain
//! rate in mm/h.  The reference event is a single Gaussian cell; constant
//! fields and closures are supported so that tests can use degenerate cases.

use crate::error::{Error, Result};
use crate::geodesy::LocalPoint;

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// A scalar rain-rate field over the local plane (mm/h, non-negative).
pub trait RainField {
    fn rate_at(&self, p: LocalPoint) -> f64;
}

/// Any closure over a [`LocalPoint`] is a usable field.
impl<F: Fn(LocalPoint) -> f64> RainField for F {
    fn rate_at(&self, p: LocalPoint) -> f64 {
        self(p)
    }
}

/// Isotropic Gaussian rain cell.
///
/// `rate(p) = peak_mm_h * exp(-|p - center|^2 / (2 sigma^2))`
#[derive(Debug, Clone, Copy)]
pub struct GaussianField {
    /// Peak rain rate at the cell centre, mm/h.
    pub peak_mm_h: f64,
    /// Cell centre in the local frame.
    pub center: LocalPoint,
    /// Standard deviation of the cell, km.
    pub sigma_km: f64,
}

impl GaussianField {
    pub fn new(peak_mm_h: f64, center: LocalPoint, sigma_km: f64) -> Self {
        Self {
            peak_mm_h,
            center,
            sigma_km,
        }
    }
}

impl RainField for GaussianField {
    fn rate_at(&self, p: LocalPoint) -> f64 {
        let dx = p.x_km - self.center.x_km;
        let dy = p.y_km - self.center.y_km;
        self.peak_mm_h * (-(dx * dx + dy * dy) / (2.0 * self.sigma_km * self.sigma_km)).exp()
    }
}

/// Spatially uniform rain rate; handy as a degenerate test field.
#[derive(Debug, Clone, Copy)]
pub struct ConstantField(pub f64);

impl RainField for ConstantField {
    fn rate_at(&self, _p: LocalPoint) -> f64 {
        self.0
    }
}

// ---------------------------------------------------------------------------
// Analysis grid
// ---------------------------------------------------------------------------

/// Geometry of a rectangular analysis grid.
///
/// `origin` is the north-west corner; columns advance eastward (+x) and rows
/// advance southward (-y), so row 0 is the northernmost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub box_size_km: f64,
    pub origin: LocalPoint,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, box_size_km: f64, origin: LocalPoint) -> Self {
        Self {
            nx,
            ny,
            box_size_km,
            origin,
        }
    }

    pub fn n_boxes(&self) -> usize {
        self.nx * self.ny
    }

    /// Centre of the box at (`col`, `row`), in the local frame.
    pub fn box_center(&self, col: usize, row: usize) -> LocalPoint {
        LocalPoint::new(
            self.origin.x_km + (col as f64 + 0.5) * self.box_size_km,
            self.origin.y_km - (row as f64 + 0.5) * self.box_size_km,
        )
    }
}

/// A grid of rain rates sampled at box centres, row-major with row 0 north.
#[derive(Debug, Clone, PartialEq)]
pub struct RainGrid {
    pub spec: GridSpec,
    values: Vec<f64>,
}

impl RainGrid {
    /// Build a grid from row-major values; the length must match the spec.
    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.n_boxes() {
            return Err(Error::GridMismatch(format!(
                "expected {} values for a {}x{} grid, got {}",
                spec.n_boxes(),
                spec.nx,
                spec.ny,
                values.len()
            )));
        }
        Ok(Self { spec, values })
    }

    pub fn value(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.spec.nx + col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest value in the grid (0 for an all-empty field).
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Whether two grids share the same geometry (dimensions exactly, box
    /// size and origin to within a micron).
    pub fn same_geometry(&self, other: &RainGrid) -> bool {
        self.spec.nx == other.spec.nx
            && self.spec.ny == other.spec.ny
            && (self.spec.box_size_km - other.spec.box_size_km).abs() < 1e-9
            && self.spec.origin.distance_km(&other.spec.origin) < 1e-9
    }
}

/// Sample `field` at every box centre of `spec`.
pub fn rasterize<F: RainField + ?Sized>(field: &F, spec: &GridSpec) -> RainGrid {
    let mut values = Vec::with_capacity(spec.n_boxes());
    for row in 0..spec.ny {
        for col in 0..spec.nx {
            values.push(field.rate_at(spec.box_center(col, row)));
        }
    }
    RainGrid {
        spec: *spec,
        values,
    }
}

// ---------------------------------------------------------------------------
// Line integrals
// ---------------------------------------------------------------------------

/// Average of `field` along the segment from `a` to `b`, computed with the
/// midpoint rule at a nominal sample spacing of `step_km`.
///
/// The segment is split into `ceil(len / step_km)` equal sub-intervals and
/// the field is sampled at each midpoint.  A zero-length segment returns the
/// point value at `a`.
pub fn line_average<F: RainField + ?Sized>(
    field: &F,
    a: LocalPoint,
    b: LocalPoint,
    step_km: f64,
) -> f64 {
    debug_assert!(step_km > 0.0, "sample spacing must be positive");
    let len = a.distance_km(&b);
    if len == 0.0 {
        return field.rate_at(a);
    }
    let n = (len / step_km).ceil().max(1.0) as usize;
    let ux = (b.x_km - a.x_km) / len;
    let uy = (b.y_km - a.y_km) / len;
    let ds = len / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let s = (i as f64 + 0.5) * ds;
        sum += field.rate_at(LocalPoint::new(a.x_km + s * ux, a.y_km + s * uy));
    }
    sum / n as f64
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
