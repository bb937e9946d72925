use std::io::Read;
use std::ops::{Add, Div};

use crate::error::{Error, Result};

/// Required header of a sensor log.
pub const LOG_HEADER: [&str; 7] = ["time", "Fx", "Fy", "Fz", "Tx", "Ty", "Tz"];

/// Six-axis force (N) and torque (N*m) reading.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Wrench {
    pub fx: f64,
    pub fy: f64,
    pub fz: f64,
    pub tx: f64,
    pub ty: f64,
    pub tz: f64,
}

impl Wrench {
    pub fn new(fx: f64, fy: f64, fz: f64, tx: f64, ty: f64, tz: f64) -> Self {
        Self { fx, fy, fz, tx, ty, tz }
    }

    pub fn channels(&self) -> [f64; 6] {
        [self.fx, self.fy, self.fz, self.tx, self.ty, self.tz]
    }

    pub fn from_channels(c: [f64; 6]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

impl Add for Wrench {
    type Output = Wrench;

    fn add(self, rhs: Wrench) -> Wrench {
        let (a, b) = (self.channels(), rhs.channels());
        Wrench::from_channels(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl Div<f64> for Wrench {
    type Output = Wrench;

    fn div(self, rhs: f64) -> Wrench {
        Wrench::from_channels(self.channels().map(|c| c / rhs))
    }
}

/// One timestamped sensor reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorSample {
    pub time: f64,
    pub wrench: Wrench,
}

/// Parses a sensor log with header `time,Fx,Fy,Fz,Tx,Ty,Tz`.
///
/// Line numbers in errors are 1-based file lines. Timestamps must be
/// nondecreasing.
pub fn load_sensor_log<R: Read>(source: R) -> Result<Vec<SensorSample>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        reason: e.to_string(),
    })?;
    let got: Vec<&str> = headers.iter().collect();
    if got != LOG_HEADER {
        return Err(Error::Parse {
            line: 1,
            reason: format!("expected header `{}`, found `{}`", LOG_HEADER.join(","), got.join(",")),
        });
    }

    let mut samples: Vec<SensorSample> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut values = [0.0; 7];
        for (i, cell) in record.iter().enumerate() {
            values[i] = cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                Error::Parse {
                    line,
                    reason: format!("column `{}`: `{cell}` is not a finite number", LOG_HEADER[i]),
                }
            })?;
        }
        if let Some(prev) = samples.last() {
            if values[0] < prev.time {
                return Err(Error::Parse {
                    line,
                    reason: format!("time {} precedes previous sample at {}", values[0], prev.time),
                });
            }
        }
        samples.push(SensorSample {
            time: values[0],
            wrench: Wrench::new(values[1], values[2], values[3], values[4], values[5], values[6]),
        });
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_data_section() {
        let s = load_sensor_log("time,Fx,Fy,Fz,Tx,Ty,Tz\n".as_bytes()).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn three_rows_in_order() {
        let text = "time,Fx,Fy,Fz,Tx,Ty,Tz\n0,0,0,3,0,0,0.032\n0.1,0,0,3.1,0,0,0.031\n0.2,1e-3,0,2.9,0,0,0.033\n";
        let s = load_sensor_log(text.as_bytes()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].time, 0.1);
        assert_eq!(s[2].wrench.fx, 1e-3);
        assert_eq!(s[0].wrench.tz, 0.032);
    }

    #[test]
    fn time_regression_names_line() {
        let text = "time,Fx,Fy,Fz,Tx,Ty,Tz\n0,0,0,3,0,0,0\n0.2,0,0,3,0,0,0\n0.1,0,0,3,0,0,0\n";
        match load_sensor_log(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_rows() {
        let bad_header = "time,Fx,Fy,Fz,Tx,Ty\n0,0,0,0,0,0\n";
        assert!(matches!(load_sensor_log(bad_header.as_bytes()), Err(Error::Parse { line: 1, .. })));

        let bad_cell = "time,Fx,Fy,Fz,Tx,Ty,Tz\n0,0,0,0,0,0,0\n0.1,0,x,0,0,0,0\n";
        match load_sensor_log(bad_cell.as_bytes()) {
            Err(Error::Parse { line, reason }) => {
                assert_eq!(line, 3);
                assert!(reason.contains("Fy"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let short = "time,Fx,Fy,Fz,Tx,Ty,Tz\n0,0,0,0,0,0\n";
        assert!(matches!(load_sensor_log(short.as_bytes()), Err(Error::Parse { line: 2, .. })));
    }
}
