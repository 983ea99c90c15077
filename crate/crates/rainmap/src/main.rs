//! Command-line front end for the rainmap simulator.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use rainmap::pipeline::{metrics_text, run};
use rainmap::{
    invert_rain_rate, load_scenario, rasterize, snr_to_attenuation, write_grid_csv,
    write_heatmap_pgm, PowerLawCoeffs, SensorMode, SnrReading,
};

#[derive(Parser)]
#[command(
    name = "rainmap",
    version,
    about = "Simulate rain fields and retrieve them from gauge and satellite-link sensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Receivers report the exact path-average rain rate.
    Ideal,
    /// Receivers report SNR; rain is retrieved through the power law.
    Physical,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario end to end and write its artifacts.
    Run {
        /// Built-in scenario name (paper-A, paper-B) or a scenario file path.
        scenario: String,
        /// Output directory for artifacts (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Override the radius of the central evaluation sector, km.
        #[arg(long)]
        circle_radius_km: Option<f64>,
        /// Override the IDW distance exponent.
        #[arg(long)]
        idw_power: Option<f64>,
        /// Override the path-average sample spacing, km.
        #[arg(long)]
        step_km: Option<f64>,
        /// Override the receiver fidelity mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Power-law alpha for --mode physical.
        #[arg(long)]
        alpha: Option<f64>,
        /// Power-law beta for --mode physical.
        #[arg(long)]
        beta: Option<f64>,
        /// Receiver noise-floor fraction for --mode physical.
        #[arg(long)]
        xi: Option<f64>,
    },
    /// Rasterize the synthetic truth field of a scenario.
    Field {
        /// Built-in scenario name (paper-A, paper-B) or a scenario file path.
        scenario: String,
        /// Output directory for truth.csv and truth.pgm.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the wet-link geometry of every receiver in a scenario.
    Geometry {
        /// Built-in scenario name (paper-A, paper-B) or a scenario file path.
        scenario: String,
    },
    /// Invert a path attenuation into a path-average rain rate.
    Invert {
        /// Total path attenuation, dB.
        #[arg(long = "a")]
        attenuation_db: f64,
        /// Wet path length, km.
        #[arg(long = "L")]
        wet_len_km: f64,
        /// Power-law alpha.
        #[arg(long)]
        alpha: f64,
        /// Power-law beta.
        #[arg(long)]
        beta: f64,
    },
    /// Convert a dry/wet SNR pair into rain attenuation.
    #[command(name = "snr2att")]
    Snr2Att {
        /// Dry-sky baseline SNR (linear).
        #[arg(long)]
        dry: f64,
        /// Current SNR reading (linear).
        #[arg(long)]
        wet: f64,
        /// Receiver noise-floor fraction in [0, 1).
        #[arg(long, default_value_t = 0.0)]
        xi: f64,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run {
            scenario,
            out,
            circle_radius_km,
            idw_power,
            step_km,
            mode,
            alpha,
            beta,
            xi,
        } => {
            let mut s = load_scenario(&scenario)
                .with_context(|| format!("failed to load scenario '{scenario}'"))?;
            if let Some(r) = circle_radius_km {
                s.circle_radius_km = r;
            }
            if let Some(p) = idw_power {
                s.idw.power = p;
            }
            if let Some(step) = step_km {
                s.step_km = step;
            }
            match mode {
                Some(ModeArg::Ideal) => s.set_mode(SensorMode::Ideal),
                Some(ModeArg::Physical) => {
                    let (Some(alpha), Some(beta)) = (alpha, beta) else {
                        bail!("--mode physical requires --alpha and --beta");
                    };
                    s.set_mode(SensorMode::Physical {
                        coeffs: PowerLawCoeffs::new(alpha, beta),
                        xi: xi.unwrap_or(0.0),
                    });
                }
                None => {
                    if alpha.is_some() || beta.is_some() || xi.is_some() {
                        bail!("--alpha, --beta and --xi only apply with --mode physical");
                    }
                }
            }

            let report = run(&s, &out)?;
            println!("scenario: {}", report.scenario);
            println!("observations:");
            for obs in &report.observations {
                println!(
                    "  {:<26} ({:>8.3}, {:>8.3}) km  {:>7.3} mm/h",
                    obs.source_id, obs.position.x_km, obs.position.y_km, obs.rain_rate_mm_h
                );
            }
            println!("metrics:");
            print!("{}", metrics_text(&report.metrics));
            println!("artifacts:");
            for path in &report.artifacts {
                println!("  {}", path.display());
            }
        }

        Command::Field { scenario, out } => {
            let s = load_scenario(&scenario)
                .with_context(|| format!("failed to load scenario '{scenario}'"))?;
            let truth = rasterize(&s.field, &s.grid);
            std::fs::create_dir_all(&out)
                .with_context(|| format!("failed to create {}", out.display()))?;
            let csv = out.join("truth.csv");
            let pgm = out.join("truth.pgm");
            write_grid_csv(&truth, &s.projection, &csv)?;
            write_heatmap_pgm(&truth, &pgm)?;
            println!("{}", csv.display());
            println!("{}", pgm.display());
        }

        Command::Geometry { scenario } => {
            let s = load_scenario(&scenario)
                .with_context(|| format!("failed to load scenario '{scenario}'"))?;
            if s.sensors.lnbs.is_empty() {
                println!("scenario '{}' has no satellite receivers", s.name);
                return Ok(());
            }
            for lnb in &s.sensors.lnbs {
                let geom = lnb
                    .geometry(&s.projection)
                    .with_context(|| format!("receiver '{}'", lnb.id))?;
                let end_geo = s.projection.from_local(geom.ground_end);
                println!(
                    "{:<26} sat {:>6.2}E  elev {:>7.3}  az {:>8.3}  wet {:>6.3} km  \
                     ground {:>6.3} km  virtual gauge ({:>7.3}, {:>7.3}) km = ({:.4}E, {:.4}N)",
                    lnb.id,
                    lnb.sat_lon_deg,
                    geom.elevation_deg,
                    geom.azimuth_deg,
                    geom.wet_path_len_km,
                    geom.ground_proj_len_km,
                    geom.ground_end.x_km,
                    geom.ground_end.y_km,
                    end_geo.lon_deg,
                    end_geo.lat_deg,
                );
            }
        }

        Command::Invert {
            attenuation_db,
            wet_len_km,
            alpha,
            beta,
        } => {
            let rate = invert_rain_rate(
                attenuation_db,
                wet_len_km,
                &PowerLawCoeffs::new(alpha, beta),
            )?;
            println!("{rate}");
        }

        Command::Snr2Att { dry, wet, xi } => {
            let reading = SnrReading::new(dry, wet, xi)?;
            let att = snr_to_attenuation(&reading);
            println!("{}", att.attenuation_db);
            if att.baseline_drift {
                eprintln!("warning: wet SNR exceeds the dry baseline (baseline drift, not rain)");
            }
        }
    }
    Ok(())
}
