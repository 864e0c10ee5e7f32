//! Gyro log ingestion and trajectory / report serialization.
//!
//! Input: `t,wx,wy,wz` CSV, seconds and rad/s in the body frame, LF or CRLF.
//! Output: `t,r11,...,r33,orth_defect` CSV with row-major attitude entries,
//! or a JSON array of `{t, R, orth_defect}` objects.

use std::fmt::Write as _;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use rotkin::{AttitudeTrajectory, GyroSample, Mat3, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const GYRO_HEADER: [&str; 4] = ["t", "wx", "wy", "wz"];
pub const TRAJECTORY_HEADER: &str = "t,r11,r12,r13,r21,r22,r23,r31,r32,r33,orth_defect";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Reads a gyro log from `path`.
pub fn ingest_gyro_csv(path: &Path) -> Result<Vec<GyroSample>, CliError> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_gyro_csv(&text)
}

/// Parses gyro CSV text. Line numbers in errors are 1-based file lines.
pub fn parse_gyro_csv(text: &str) -> Result<Vec<GyroSample>, CliError> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());

    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(CliError::Format { line: 1, message: "missing header t,wx,wy,wz".into() }),
        Some(r) => r.map_err(|e| CliError::Format { line: 1, message: e.to_string() })?,
    };
    let header_line = header.position().map_or(1, |p| p.line());
    if header.iter().ne(GYRO_HEADER) {
        return Err(CliError::Format {
            line: header_line,
            message: format!("expected header t,wx,wy,wz, found {}", header.iter().collect::<Vec<_>>().join(",")),
        });
    }

    let mut samples: Vec<GyroSample> = Vec::new();
    for record in records {
        let record = record
            .map_err(|e| CliError::Format { line: e.position().map_or(0, |p| p.line()), message: e.to_string() })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 4 {
            return Err(CliError::Format { line, message: format!("expected 4 fields, found {}", record.len()) });
        }
        let mut values = [0.0; 4];
        for (i, (field, raw)) in GYRO_HEADER.iter().zip(record.iter()).enumerate() {
            values[i] = raw.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| CliError::Parse {
                line,
                field,
                value: raw.to_string(),
            })?;
        }
        if let Some(prev) = samples.last() {
            if !(values[0] > prev.t) {
                return Err(CliError::Ordering { line });
            }
        }
        samples.push(GyroSample::body(values[0], Vec3::new(values[1], values[2], values[3])));
    }
    if samples.is_empty() {
        return Err(CliError::Input("gyro log has no samples".into()));
    }
    Ok(samples)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRow {
    t: f64,
    #[serde(rename = "R")]
    r: [[f64; 3]; 3],
    orth_defect: f64,
}

pub fn render_trajectory(traj: &AttitudeTrajectory, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::with_capacity(traj.len() * 200);
            out.push_str(TRAJECTORY_HEADER);
            out.push('\n');
            for s in &traj.samples {
                out.push_str(&fmt_real(s.t));
                for v in s.attitude.to_row_array() {
                    out.push(',');
                    out.push_str(&fmt_real(v));
                }
                let _ = writeln!(out, ",{}", fmt_real(s.orth_defect));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<JsonRow> =
                traj.samples.iter().map(|s| JsonRow { t: s.t, r: s.attitude.0, orth_defect: s.orth_defect }).collect();
            let mut out = serde_json::to_string(&rows).expect("plain numeric rows serialize");
            out.push('\n');
            out
        }
    }
}

/// One row of an emitted trajectory file.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub attitude: Mat3<f64>,
    pub orth_defect: f64,
}

/// Parses a CSV trajectory produced by [`render_trajectory`].
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<TrajectoryRow>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == TRAJECTORY_HEADER => {}
        _ => return Err(CliError::Format { line: 1, message: format!("expected header {TRAJECTORY_HEADER}") }),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx as u64 + 1;
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Format { line: line_no, message: e.to_string() })?;
        if vals.len() != 11 {
            return Err(CliError::Format {
                line: line_no,
                message: format!("expected 11 fields, found {}", vals.len()),
            });
        }
        let mut entries = [0.0; 9];
        entries.copy_from_slice(&vals[1..10]);
        rows.push(TrajectoryRow { t: vals[0], attitude: Mat3::from_row_slice(&entries), orth_defect: vals[10] });
    }
    Ok(rows)
}

/// Parses the JSON trajectory form.
pub fn parse_trajectory_json(text: &str) -> Result<Vec<TrajectoryRow>, CliError> {
    let rows: Vec<JsonRow> =
        serde_json::from_str(text).map_err(|e| CliError::Format { line: e.line() as u64, message: e.to_string() })?;
    Ok(rows.into_iter().map(|r| TrajectoryRow { t: r.t, attitude: Mat3(r.r), orth_defect: r.orth_defect }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quarter_turn_fixture() {
        let text = "t,wx,wy,wz\n0.0,0,0,1.5707963267948966\n1.0,0,0,1.5707963267948966\n";
        let log = parse_gyro_csv(text).unwrap();
        assert_eq!(log.len(), 2);
        for s in &log {
            assert_eq!(s.rate.rate(), Vec3::new(0.0, 0.0, std::f64::consts::FRAC_PI_2));
            assert_eq!(s.rate.expressed_in(), rotkin::FrameId::Body);
        }
        assert_eq!(log[1].t, 1.0);
    }

    #[test]
    fn accepts_crlf() {
        let text = "t,wx,wy,wz\r\n0,1,2,3\r\n0.5,4,5,6\r\n";
        let log = parse_gyro_csv(text).unwrap();
        assert_eq!(log[1].rate.rate(), Vec3::new(4.0, 5.0, 6.0));
    }

    #[test]
    fn empty_data_section_is_rejected() {
        assert!(matches!(parse_gyro_csv("t,wx,wy,wz\n"), Err(CliError::Input(_))));
        assert!(matches!(parse_gyro_csv(""), Err(CliError::Format { .. })));
    }

    #[test]
    fn header_must_match_exactly() {
        for bad in ["t,wy,wx,wz\n0,0,0,0\n", "time,wx,wy,wz\n0,0,0,0\n", "t,wx,wy\n0,0,0\n", "0,0,0,0\n"] {
            let err = parse_gyro_csv(bad).unwrap_err();
            assert!(matches!(err, CliError::Format { line: 1, .. }), "{bad:?}: {err}");
            assert_eq!(err.exit_code(), 2);
        }
    }

    #[test]
    fn decreasing_time_names_the_line() {
        let text = "t,wx,wy,wz\n0,0,0,0\n1,0,0,0\n2,0,0,0\n1.5,0,0,0\n3,0,0,0\n";
        match parse_gyro_csv(text) {
            Err(CliError::Ordering { line }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_field_names_the_line() {
        let text = "t,wx,wy,wz\n0,0,0,0\n1,0,abc,0\n";
        match parse_gyro_csv(text) {
            Err(CliError::Parse { line, field, value }) => {
                assert_eq!((line, field, value.as_str()), (3, "wy", "abc"))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_gyro_csv("t,wx,wy,wz\n0,nan,0,0\n"), Err(CliError::Parse { line: 2, .. })));
        assert!(matches!(parse_gyro_csv("t,wx,wy,wz\n0,0,0\n"), Err(CliError::Format { line: 2, .. })));
    }

    #[test]
    fn real_formatting_round_trips() {
        for x in
            [0.0, -0.0, 1.0, 0.1, std::f64::consts::FRAC_PI_2, 2.220446049250313e-16, 1e-5, 9.99e-6, 1e300, -3.25e-200]
        {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_real(2.5e-16), "2.5e-16");
        assert_eq!(fmt_real(0.25), "0.25");
    }
}
