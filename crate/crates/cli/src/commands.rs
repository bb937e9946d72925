use std::fmt::Write as _;
use std::fs::File;
use std::path::{Path, PathBuf};

use helijam::experiment::{
    fit_quadratic, load_sensor_log, predicted_coefficients, reduce_log, FitResult,
};
use helijam::finger::{load_sweep, FingerConfig};
use helijam::tension::{planar_tension, terminal_tension};
use helijam::{DriveState, MechanismSpec};

use crate::config::RunConfig;
use crate::units::{parse_quantity, Dimension};
use crate::{CliError, Format};

/// Command output plus per-item failures that did not stop the command.
#[derive(Debug, Default)]
pub struct Report {
    pub body: String,
    pub failures: Vec<String>,
}

impl From<String> for Report {
    fn from(body: String) -> Self {
        Report {
            body,
            failures: Vec::new(),
        }
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|c| {
                        self.rows
                            .iter()
                            .map(|r| r[c].len())
                            .chain([self.header[c].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                out.push_str(&line(self.header.clone()));
                for row in &self.rows {
                    out.push_str(&line(row.iter().map(String::as_str).collect()));
                }
            }
        }
        out
    }
}

/// Key/value report rendered as `key = value` lines or a two-column CSV.
struct KeyValues(Vec<(String, String)>);

impl KeyValues {
    fn new() -> Self {
        Self(Vec::new())
    }

    fn add(&mut self, key: &str, value: impl Into<String>) {
        self.0.push((key.to_string(), value.into()));
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str("quantity,value\n");
                for (k, v) in &self.0 {
                    let _ = writeln!(out, "{k},{v}");
                }
            }
            Format::Text => {
                for (k, v) in &self.0 {
                    let _ = writeln!(out, "{k} = {v}");
                }
            }
        }
        out
    }
}

pub fn helix_info(cfg: &RunConfig, format: Format) -> Result<Report, CliError> {
    let mech = cfg.mechanism_unchecked()?;
    let h = &mech.helix;
    let mut kv = KeyValues::new();
    kv.add("radius_m", num(h.radius));
    kv.add("pitch_m", num(h.pitch));
    kv.add("total_angle_rad", num(h.total_angle));
    kv.add("total_angle_deg", num(h.total_angle.to_degrees()));
    kv.add("helix_constant_m", num(h.helix_constant()));
    kv.add("arc_length_m", num(h.arc_length()));
    kv.add("curvature_per_m", num(h.curvature()));
    kv.add("torsion_per_m", num(h.torsion()));
    kv.add("wrap_kappa_s", num(h.wrap_exponent()));
    kv.add("pitch_admissible", mech.pitch_admissible().to_string());
    let mut body = kv.render(format);
    if !mech.pitch_admissible() && format == Format::Text {
        let _ = writeln!(
            body,
            "warning: pitch {} m does not exceed electrode width {} m, adjacent turns overlap",
            num(h.pitch),
            num(mech.stack.electrode_width)
        );
    }
    Ok(body.into())
}

pub fn tension_eval(cfg: &RunConfig, format: Format) -> Result<Report, CliError> {
    let mech = cfg.mechanism()?;
    let drive = cfg.drive()?;
    let sol = terminal_tension(&mech, &drive)?;
    let amplification = sol.amplification.map_or_else(|| "undefined".to_string(), num);
    match format {
        Format::Text => {
            let mut kv = KeyValues::new();
            kv.add("voltage_V", num(drive.voltage));
            kv.add("preload_N", num(drive.preload));
            kv.add("total_angle_rad", num(mech.helix.total_angle));
            kv.add("terminal_tension_N", num(sol.terminal_tension));
            kv.add("amplification", amplification);
            kv.add("capstan_gain", num(sol.capstan_gain));
            kv.add("electro_term_N", num(sol.electro_term));
            if drive.voltage == 0.0 {
                kv.add("mode", "capstan only (zero voltage)");
            }
            Ok(kv.render(format).into())
        }
        Format::Csv => {
            let mut t = Table::new(&["V", "T0", "phi", "T", "amplification", "capstan_gain", "electro_term"]);
            t.push(vec![
                num(drive.voltage),
                num(drive.preload),
                num(mech.helix.total_angle),
                num(sol.terminal_tension),
                sol.amplification.map(num).unwrap_or_default(),
                num(sol.capstan_gain),
                num(sol.electro_term),
            ]);
            Ok(t.render(format).into())
        }
    }
}

pub fn tension_sweep(cfg: &RunConfig, format: Format) -> Result<Report, CliError> {
    let mech = cfg.mechanism()?;
    let fallback_drive = || cfg.drive();
    let voltages = match cfg.list("sweep.voltages") {
        Some(v) => v.to_vec(),
        None => vec![fallback_drive()?.voltage],
    };
    let preloads = match cfg.list("sweep.preloads") {
        Some(p) => p.to_vec(),
        None => vec![fallback_drive()?.preload],
    };
    let angles = cfg
        .list("sweep.angles")
        .map(<[f64]>::to_vec)
        .unwrap_or_else(|| vec![mech.helix.total_angle]);

    let mut t = Table::new(&["V", "T0", "phi", "T", "amplification", "status"]);
    for &v in &voltages {
        for &t0 in &preloads {
            for &phi in &angles {
                let outcome = DriveState::new(v, t0)
                    .and_then(|d| Ok((d, mech.with_total_angle(phi)?)))
                    .and_then(|(d, m)| terminal_tension(&m, &d));
                match outcome {
                    Ok(sol) => t.push(vec![
                        num(v),
                        num(t0),
                        num(phi),
                        num(sol.terminal_tension),
                        sol.amplification.map(num).unwrap_or_default(),
                        "ok".into(),
                    ]),
                    Err(e) => t.push(vec![
                        num(v),
                        num(t0),
                        num(phi),
                        String::new(),
                        String::new(),
                        csv_safe(&e.to_string()),
                    ]),
                }
            }
        }
    }
    Ok(t.render(format).into())
}

fn csv_safe(s: &str) -> String {
    s.replace([',', '\n'], ";")
}

pub fn compare_planar(cfg: &RunConfig, format: Format) -> Result<Report, CliError> {
    let mech = cfg.mechanism()?;
    let drive = cfg.drive()?;
    Ok(planar_comparison(&mech, &drive)?.render(format).into())
}

fn planar_comparison(mech: &MechanismSpec, drive: &DriveState) -> Result<KeyValues, CliError> {
    let length = mech.helix.arc_length();
    let helical = terminal_tension(mech, drive)?.terminal_tension;
    let planar = planar_tension(&mech.stack, length, drive)?;
    let slope = mech.stack.friction_mu * mech.stack.line_load(drive.voltage)?;
    let mut kv = KeyValues::new();
    kv.add("contact_length_m", num(length));
    kv.add("helical_tension_N", num(helical));
    kv.add("planar_tension_N", num(planar));
    kv.add("ratio", num(helical / planar));
    if helical <= drive.preload {
        kv.add("planar_length_to_match_m", num(0.0));
        kv.add("footprint_ratio", num(0.0));
    } else if slope > 0.0 {
        let needed = (helical - drive.preload) / slope;
        kv.add("planar_length_to_match_m", num(needed));
        kv.add("footprint_ratio", num(needed / length));
    } else {
        kv.add("planar_length_to_match_m", "unreachable (mu*q_e = 0)");
        kv.add("footprint_ratio", "unreachable");
    }
    Ok(kv)
}

pub fn parse_voltage_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            parse_quantity(s, Dimension::Voltage)
                .map_err(|e| CliError::Usage(format!("--voltages: {e}")))
        })
        .collect()
}

pub fn process(
    cfg: &RunConfig,
    logs: &[PathBuf],
    voltages: Option<&str>,
    threshold: f64,
    format: Format,
) -> Result<Report, CliError> {
    if logs.is_empty() {
        return Err(CliError::Usage("process needs at least one log file".into()));
    }
    if !(threshold > 0.0) {
        return Err(CliError::Usage(format!("--threshold must be positive, got {threshold}")));
    }
    let rig = cfg.rig()?;
    let voltages = match voltages {
        Some(text) => parse_voltage_list(text)?,
        None => cfg
            .list("sweep.voltages")
            .map(<[f64]>::to_vec)
            .ok_or_else(|| CliError::Usage("no voltages: pass --voltages or set sweep.voltages".into()))?,
    };
    if voltages.len() != logs.len() {
        return Err(CliError::Usage(format!(
            "{} log files but {} voltages",
            logs.len(),
            voltages.len()
        )));
    }

    let mut t = Table::new(&["voltage", "F_f_mean", "F_f_std", "n_samples"]);
    let mut failures = Vec::new();
    for (path, &v) in logs.iter().zip(&voltages) {
        let reduced = File::open(path)
            .map_err(|e| e.to_string())
            .and_then(|f| load_sensor_log(f).map_err(|e| e.to_string()))
            .and_then(|samples| reduce_log(&samples, &rig, threshold).map_err(|e| e.to_string()));
        match reduced {
            Ok(r) => t.push(vec![
                num(v),
                num(r.friction_mean),
                num(r.friction_std),
                r.n_samples.to_string(),
            ]),
            Err(e) => failures.push(format!("{}: {e}", path.display())),
        }
    }
    Ok(Report {
        body: t.render(format),
        failures,
    })
}

const FORCE_COLUMNS: [&str; 4] = ["F_f_mean", "F", "force", "T"];

pub fn read_measurements(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    let find = |name: &str| headers.iter().position(|h| h == name);
    let vcol = find("voltage")
        .ok_or_else(|| CliError::Input(format!("{}: no `voltage` column", path.display())))?;
    let fcol = FORCE_COLUMNS.iter().find_map(|c| find(c)).ok_or_else(|| {
        CliError::Input(format!(
            "{}: no force column (one of {})",
            path.display(),
            FORCE_COLUMNS.join(", ")
        ))
    })?;
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize| -> Result<f64, CliError> {
            record
                .get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| CliError::Input(format!("{}:{line}: non-numeric cell", path.display())))
        };
        points.push((cell(vcol)?, cell(fcol)?));
    }
    Ok(points)
}

/// Fitted curve sampled every 50 V across the data range.
pub fn overlay_csv(fit: &FitResult, points: &[(f64, f64)]) -> String {
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let mut out = String::from("voltage,T_fit\n");
    let start = (lo / 50.0).floor() as i64;
    let end = (hi / 50.0).ceil() as i64;
    for i in start..=end {
        let v = 50.0 * i as f64;
        let _ = writeln!(out, "{},{}", num(v), num(fit.eval(v)));
    }
    out
}

pub fn fit(
    cfg: &RunConfig,
    data: &Path,
    overlay: Option<&Path>,
    format: Format,
) -> Result<Report, CliError> {
    let points = read_measurements(data)?;
    let fit = fit_quadratic(&points)?;
    if let Some(path) = overlay {
        std::fs::write(path, overlay_csv(&fit, &points))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Csv => {
            let mut t = Table::new(&["a", "b", "rms_residual", "n_points"]);
            t.push(vec![
                num(fit.coeff_a),
                num(fit.coeff_b),
                num(fit.rms_residual),
                fit.n_points.to_string(),
            ]);
            Ok(t.render(format).into())
        }
        Format::Text => {
            let mut kv = KeyValues::new();
            kv.add("model", "T(V) = a*V^2 + b");
            kv.add("a_N_per_V2", num(fit.coeff_a));
            kv.add("b_N", num(fit.coeff_b));
            kv.add("rms_residual_N", num(fit.rms_residual));
            kv.add("n_points", fit.n_points.to_string());
            if cfg.has_section("mechanism") && cfg.has_section("drive") {
                let mech = cfg.mechanism()?;
                let preload = cfg.drive()?.preload;
                let (a, b) = predicted_coefficients(&mech, preload)?;
                kv.add("model_a_N_per_V2", num(a));
                kv.add("model_b_N", num(b));
                for &(v, f) in &points {
                    kv.add(&format!("residual_at_{}V_N", num(v)), num(f - (a * v * v + b)));
                }
            }
            Ok(kv.render(format).into())
        }
    }
}

pub fn finger(
    cfg: &FingerConfig,
    voltages: &[f64],
    loads: &[f64],
    format: Format,
) -> Result<Report, CliError> {
    let rows = load_sweep(cfg, voltages, loads)?;
    let mut t = Table::new(&["V", "F_pull", "theta_deg", "k", "status"]);
    for row in rows {
        let (theta, k, status) = match row.outcome {
            Ok(state) => {
                let theta = num(state.bend_angle.to_degrees());
                match state.stiffness {
                    Some(k) => (theta, num(k), "ok".to_string()),
                    None if row.load == 0.0 => (theta, String::new(), "undefined".to_string()),
                    None => (theta, "inf".to_string(), "rigid".to_string()),
                }
            }
            Err(helijam::Error::NoEquilibrium { .. }) => {
                (String::new(), String::new(), "no_equilibrium".to_string())
            }
            Err(e) => (String::new(), String::new(), csv_safe(&e.to_string())),
        };
        t.push(vec![num(row.voltage), num(row.load), theta, k, status]);
    }
    Ok(t.render(format).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting_round_trips() {
        for v in [0.0, 1.0, 2.99018041217535, 5.138e-8, 197.2306838799842, 1e20, -3.5e-9] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(num(5.0), "5");
        assert_eq!(num(5.138e-8), "5.138e-8");
    }

    #[test]
    fn voltage_list() {
        assert_eq!(parse_voltage_list("1000V,1.4kV").unwrap(), vec![1000.0, 1400.0]);
        assert!(parse_voltage_list("1000,1400").is_err());
    }

    #[test]
    fn planar_comparison_unreachable_without_electrostatics() {
        let cfg = RunConfig::parse(
            r#"
[mechanism.helix]
radius = "4 mm"
pitch = "13 mm"
total_angle = "450 deg"
[mechanism.stack]
eps_r1 = 3.6
thickness_d1 = "50 um"
eps_r2 = 3.6
thickness_d2 = "50 um"
electrode_width = "7 mm"
friction_mu = 0.22
"#,
            false,
        )
        .unwrap();
        let mech = cfg.mechanism().unwrap();
        let kv = planar_comparison(&mech, &DriveState::new(0.0, 1.0).unwrap()).unwrap();
        let text = kv.render(Format::Text);
        assert!(text.contains("unreachable"));
        let gain = (0.22 * mech.helix.wrap_exponent()).exp();
        assert!(text.contains(&format!("ratio = {}", num(gain))));
    }

    #[test]
    fn overlay_spans_data_at_50_volts() {
        let fit = FitResult {
            coeff_a: 1e-8,
            coeff_b: 1.0,
            rms_residual: 0.0,
            n_points: 3,
        };
        let csv = overlay_csv(&fit, &[(1000.0, 0.0), (1400.0, 0.0), (1100.0, 0.0)]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "voltage,T_fit");
        assert_eq!(lines.len(), 1 + 9);
        assert_eq!(lines[1], "1000,1.01");
    }
}
