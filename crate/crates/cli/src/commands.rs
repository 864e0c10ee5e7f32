use std::fs;
use std::io::Write;
use std::path::PathBuf;

use rotkin::suite::{run_property_suite, Formulas};
use rotkin::{propagate, AttitudeTrajectory, FrameId, IntegratorChoice, Mat3, RotationMatrix};
use serde::Serialize;

use crate::error::CliError;
use crate::io::{fmt_real, ingest_gyro_csv, render_trajectory, OutputFormat};

pub const IDENTITY_ROW_MAJOR: [f64; 9] = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub integrator: IntegratorChoice,
    /// Initial BODY→WORLD attitude, row-major.
    pub initial_attitude: [f64; 9],
    pub output_format: OutputFormat,
    /// `None` writes to stdout.
    pub output_path: Option<PathBuf>,
    pub recovery_tolerance: f64,
}

impl RunConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        Self {
            input_path: input_path.into(),
            integrator: IntegratorChoice::ExpmapBody,
            initial_attitude: IDENTITY_ROW_MAJOR,
            output_format: OutputFormat::Csv,
            output_path: None,
            recovery_tolerance: 1e-9,
        }
    }

    pub fn initial_rotation(&self) -> Result<RotationMatrix, CliError> {
        if !(self.recovery_tolerance >= 0.0) {
            return Err(CliError::Config(format!("negative tolerance {}", self.recovery_tolerance)));
        }
        RotationMatrix::validate_with(
            Mat3::from_row_slice(&self.initial_attitude),
            FrameId::Body,
            FrameId::World,
            self.recovery_tolerance,
        )
        .map_err(|e| CliError::Config(format!("initial attitude: {e}")))
    }
}

/// Parses `--init-attitude`: 9 comma-separated reals, row-major.
pub fn parse_attitude(s: &str) -> Result<[f64; 9], String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|e| format!("'{}': {e}", f.trim())))
        .collect::<Result<_, _>>()?;
    vals.try_into().map_err(|v: Vec<f64>| format!("expected 9 comma-separated values, got {}", v.len()))
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn dead_reckon(config: &RunConfig) -> Result<AttitudeTrajectory, CliError> {
    let r0 = config.initial_rotation()?;
    let log = ingest_gyro_csv(&config.input_path)?;
    Ok(propagate(&r0, &log, config.integrator)?)
}

/// Dead-reckons the configured log and writes the trajectory.
pub fn run_deadreckon(config: &RunConfig) -> Result<(), CliError> {
    let traj = dead_reckon(config)?;
    emit(config.output_path.as_ref(), &render_trajectory(&traj, config.output_format))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftRow {
    pub integrator: String,
    /// Frobenius distance of the final attitude to the EXPMAP_BODY result.
    pub final_distance: f64,
    pub max_orth_defect: f64,
}

/// Runs all four integrators on the same log; rows in [`IntegratorChoice::ALL`] order.
pub fn compare(config: &RunConfig) -> Result<Vec<DriftRow>, CliError> {
    let r0 = config.initial_rotation()?;
    let log = ingest_gyro_csv(&config.input_path)?;

    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = IntegratorChoice::ALL
            .iter()
            .map(|&method| {
                let (r0, log) = (&r0, &log);
                scope.spawn(move || propagate(r0, log, method))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("integration thread panicked")).collect()
    });
    let trajectories = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let reference = trajectories
        .iter()
        .find(|t| t.method == IntegratorChoice::ExpmapBody)
        .map(|t| t.last().attitude)
        .expect("EXPMAP_BODY is always run");
    Ok(trajectories
        .iter()
        .map(|t| DriftRow {
            integrator: t.method.name().to_string(),
            final_distance: t.last().attitude.distance(&reference),
            max_orth_defect: t.max_orth_defect(),
        })
        .collect())
}

pub fn render_drift(rows: &[DriftRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("integrator,final_distance,max_orth_defect\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.integrator,
                    fmt_real(r.final_distance),
                    fmt_real(r.max_orth_defect)
                ));
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string(rows).expect("plain rows serialize");
            out.push('\n');
            out
        }
    }
}

pub fn run_compare(config: &RunConfig) -> Result<(), CliError> {
    let rows = compare(config)?;
    emit(config.output_path.as_ref(), &render_drift(&rows, config.output_format))
}

/// Runs the property suite; returns the report and whether every property passed.
pub fn verify_report(seed: u64, formulas: &Formulas) -> (String, bool) {
    let report = run_property_suite(seed, formulas);
    (report.render(), report.all_passed())
}

pub fn run_verify_with(seed: u64, formulas: &Formulas, output: Option<&PathBuf>) -> Result<(), CliError> {
    let (text, passed) = verify_report(seed, formulas);
    emit(output, &text)?;
    if passed {
        Ok(())
    } else {
        let failed: Vec<&str> = text
            .lines()
            .filter_map(|l| l.strip_prefix("FAIL "))
            .map(|l| l.split("  ").next().unwrap_or(l).trim())
            .collect();
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}

pub fn run_verify(seed: u64, output: Option<&PathBuf>) -> Result<(), CliError> {
    run_verify_with(seed, &Formulas::default(), output)
}
