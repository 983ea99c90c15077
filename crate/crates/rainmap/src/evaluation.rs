//! Grid-to-grid evaluation: masked RMSE and companion error metrics.

use crate::error::{Error, Result};
use crate::geodesy::LocalPoint;
use crate::rainfield::RainGrid;

/// Region of the analysis grid over which metrics are computed.  Membership
/// is decided by the box centre.
#[derive(Debug, Clone, Copy)]
pub enum RegionMask {
    /// Every box of the grid.
    FullSquare,
    /// Boxes whose centre lies within `radius_km` of `center` (boundary
    /// inclusive).
    Circle { center: LocalPoint, radius_km: f64 },
}

impl RegionMask {
    pub fn contains(&self, p: LocalPoint) -> bool {
        match self {
            RegionMask::FullSquare => true,
            RegionMask::Circle { center, radius_km } => p.distance_km(center) <= *radius_km,
        }
    }
}

/// Error metrics of an estimate against a truth grid over one mask.
#[derive(Debug, Clone, Copy)]
pub struct MaskMetrics {
    /// Root-mean-square error, mm/h.
    pub rmse: f64,
    /// Mean signed error (estimate minus truth), mm/h.
    pub bias: f64,
    /// Mean absolute error, mm/h.
    pub mae: f64,
    /// Number of grid boxes the mask selected.
    pub box_count: usize,
}

/// Single pass over the masked boxes; shared by [`rmse`] and
/// [`error_summary`] so both report bit-identical RMSE values.
fn accumulate(estimate: &RainGrid, truth: &RainGrid, mask: &RegionMask) -> Result<MaskMetrics> {
    if !estimate.same_geometry(truth) {
        return Err(Error::GridMismatch(
            "estimate and truth grids must share dimensions, box size and origin".into(),
        ));
    }
    let spec = &estimate.spec;
    let mut sum_sq = 0.0;
    let mut sum = 0.0;
    let mut sum_abs = 0.0;
    let mut n = 0usize;
    for row in 0..spec.ny {
        for col in 0..spec.nx {
            if !mask.contains(spec.box_center(col, row)) {
                continue;
            }
            let diff = estimate.value(col, row) - truth.value(col, row);
            sum_sq += diff * diff;
            sum += diff;
            sum_abs += diff.abs();
            n += 1;
        }
    }
    if n == 0 {
        return Err(Error::EmptyMask);
    }
    let n_f = n as f64;
    Ok(MaskMetrics {
        rmse: (sum_sq / n_f).sqrt(),
        bias: sum / n_f,
        mae: sum_abs / n_f,
        box_count: n,
    })
}

/// RMSE of `estimate` against `truth` over the boxes selected by `mask`.
pub fn rmse(estimate: &RainGrid, truth: &RainGrid, mask: &RegionMask) -> Result<f64> {
    Ok(accumulate(estimate, truth, mask)?.rmse)
}

/// Metrics for several labelled masks at once, in the given order.
pub fn error_summary(
    estimate: &RainGrid,
    truth: &RainGrid,
    masks: &[(String, RegionMask)],
) -> Result<Vec<(String, MaskMetrics)>> {
    masks
        .iter()
        .map(|(label, mask)| Ok((label.clone(), accumulate(estimate, truth, mask)?)))
        .collect()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
