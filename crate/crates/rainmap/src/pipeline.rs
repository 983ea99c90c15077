//! End-to-end simulation pipeline: truth grid, observations, interpolation,
//! evaluation and artifact emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::evaluation::{error_summary, MaskMetrics};
use crate::gridio::{write_grid_csv, write_heatmap_pgm};
use crate::rainfield::{rasterize, RainGrid};
use crate::scenario::Scenario;
use crate::sensors::{observe_all, Observation};
use crate::spatialization::idw_interpolate;

/// Everything a simulation computes, kept in memory.
#[derive(Debug, Clone)]
pub struct SimulationResult {
    /// The rasterized synthetic field.
    pub truth: RainGrid,
    /// Sensor observations of the field.
    pub observations: Vec<Observation>,
    /// The IDW reconstruction on the same grid.
    pub estimate: RainGrid,
    /// Labelled metrics over the scenario's evaluation regions.
    pub metrics: Vec<(String, MaskMetrics)>,
}

/// Summary of a [`run`]: observations, metrics and the artifacts written.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub scenario: String,
    pub observations: Vec<Observation>,
    pub metrics: Vec<(String, MaskMetrics)>,
    pub artifacts: Vec<PathBuf>,
}

/// Simulate a scenario without touching the filesystem.
pub fn simulate(scenario: &Scenario) -> Result<SimulationResult> {
    scenario.validate()?;
    let truth = rasterize(&scenario.field, &scenario.grid);
    let observations = observe_all(
        &scenario.sensors,
        &scenario.field,
        &scenario.projection,
        scenario.step_km,
    )?;
    let estimate = idw_interpolate(&observations, &scenario.grid, &scenario.idw)?;
    let metrics = error_summary(&estimate, &truth, &scenario.masks())?;
    Ok(SimulationResult {
        truth,
        observations,
        estimate,
        metrics,
    })
}

/// Simulate a scenario and write its artifacts into `out_dir`:
///
/// * `truth.csv`, `estimate.csv` - geo-registered value grids
/// * `truth.pgm`, `estimate.pgm` - heatmaps (binary PGM)
/// * `observations.csv` - one row per sensor observation
/// * `metrics.txt` - `region.metric = value` lines
///
/// All computation happens before the first write, and every output is
/// formatted deterministically, so re-running a scenario reproduces each
/// artifact byte for byte.
pub fn run(scenario: &Scenario, out_dir: &Path) -> Result<RunReport> {
    let result = simulate(scenario)?;

    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut artifacts = Vec::new();
    let mut emit = |name: &str, write: &dyn Fn(&Path) -> Result<()>| -> Result<()> {
        let path = out_dir.join(name);
        write(&path)?;
        artifacts.push(path);
        Ok(())
    };

    let proj = &scenario.projection;
    emit("truth.csv", &|p| write_grid_csv(&result.truth, proj, p))?;
    emit("estimate.csv", &|p| write_grid_csv(&result.estimate, proj, p))?;
    emit("truth.pgm", &|p| write_heatmap_pgm(&result.truth, p))?;
    emit("estimate.pgm", &|p| write_heatmap_pgm(&result.estimate, p))?;
    emit("observations.csv", &|p| {
        std::fs::write(p, observations_csv(&result.observations)).map_err(|e| Error::io(p, e))
    })?;
    emit("metrics.txt", &|p| {
        std::fs::write(p, metrics_text(&result.metrics)).map_err(|e| Error::io(p, e))
    })?;

    Ok(RunReport {
        scenario: scenario.name.clone(),
        observations: result.observations,
        metrics: result.metrics,
        artifacts,
    })
}

/// Observations as CSV text (full precision, one row per sensor).
pub fn observations_csv(observations: &[Observation]) -> String {
    let mut out = String::from("source_id,x_km,y_km,rain_rate_mm_h\n");
    for obs in observations {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            obs.source_id, obs.position.x_km, obs.position.y_km, obs.rain_rate_mm_h
        );
    }
    out
}

/// Metrics as `region.metric = value` text (full precision).
pub fn metrics_text(metrics: &[(String, MaskMetrics)]) -> String {
    let mut out = String::new();
    for (label, m) in metrics {
        let _ = writeln!(out, "{label}.rmse = {}", m.rmse);
        let _ = writeln!(out, "{label}.bias = {}", m.bias);
        let _ = writeln!(out, "{label}.mae = {}", m.mae);
        let _ = writeln!(out, "{label}.box_count = {}", m.box_count);
    }
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::builtin;

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got}, want {want} (tol {tol})"
        );
    }

    #[test]
    fn gauge_only_simulation_matches_frozen_metrics() {
        let result = simulate(&builtin("paper-A").unwrap()).unwrap();
        assert_eq!(result.observations.len(), 5);
        assert_eq!(result.metrics.len(), 2);
        let (label, extended) = &result.metrics[0];
        assert_eq!(label, "extended");
        assert_close(extended.rmse, 1.6695675605424993, 1e-9, "extended rmse");
        assert_close(extended.bias, 0.25833619916041783, 1e-9, "extended bias");
        assert_close(extended.mae, 1.3832090882900168, 1e-9, "extended mae");
        assert_eq!(extended.box_count, 14_400);
        let (label, central) = &result.metrics[1];
        assert_eq!(label, "central");
        assert_close(central.rmse, 1.569143612902586, 1e-9, "central rmse");
        assert_eq!(central.box_count, 5024);
    }

    #[test]
    fn mixed_simulation_matches_frozen_metrics() {
        let result = simulate(&builtin("paper-B").unwrap()).unwrap();
        assert_eq!(result.observations.len(), 7, "3 gauges + 4 receivers");
        assert_close(
            result.metrics[0].1.rmse,
            1.8588881173819907,
            1e-9,
            "extended rmse",
        );
        assert_close(
            result.metrics[1].1.rmse,
            0.5746576975642776,
            1e-9,
            "central rmse",
        );
    }

    #[test]
    fn run_emits_the_documented_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let report = run(&builtin("paper-A").unwrap(), dir.path()).unwrap();
        assert_eq!(report.scenario, "paper-A");
        let names: Vec<String> = report
            .artifacts
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(
            names,
            [
                "truth.csv",
                "estimate.csv",
                "truth.pgm",
                "estimate.pgm",
                "observations.csv",
                "metrics.txt"
            ]
        );
        for path in &report.artifacts {
            let len = std::fs::metadata(path).unwrap().len();
            assert!(len > 0, "artifact {path:?} must not be empty");
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let scenario = builtin("paper-B").unwrap();
        let report_a = run(&scenario, dir_a.path()).unwrap();
        let report_b = run(&scenario, dir_b.path()).unwrap();
        for (a, b) in report_a.artifacts.iter().zip(&report_b.artifacts) {
            let bytes_a = std::fs::read(a).unwrap();
            let bytes_b = std::fs::read(b).unwrap();
            assert_eq!(bytes_a, bytes_b, "artifact {a:?} must be deterministic");
        }
    }

    #[test]
    fn observations_csv_lists_every_sensor() {
        let result = simulate(&builtin("paper-B").unwrap()).unwrap();
        let text = observations_csv(&result.observations);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "source_id,x_km,y_km,rain_rate_mm_h");
        assert_eq!(lines.len(), 8, "header plus one row per observation");
        assert!(lines[1].starts_with("bocca-darno,"));
        assert!(lines[4].starts_with("podere-rottaia-e10a,"));
    }

    #[test]
    fn metrics_text_is_keyed_by_region() {
        let result = simulate(&builtin("paper-A").unwrap()).unwrap();
        let text = metrics_text(&result.metrics);
        assert!(text.contains("extended.rmse = "));
        assert!(text.contains("central.rmse = "));
        assert!(text.contains("central.box_count = 5024"));
    }

    #[test]
    fn invalid_scenario_is_rejected_before_any_work() {
        let mut s = builtin("paper-A").unwrap();
        s.sensors.gauges.clear();
        let err = simulate(&s).unwrap_err();
        assert!(
            matches!(err, Error::Validation(_)),
            "expected Validation, got {err:?}"
        );
    }
}
