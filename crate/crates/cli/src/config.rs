//! Run configuration: a TOML file whose sections mirror the model types.
//!
//! Every dimensioned field is a string with an explicit unit suffix
//! (`radius = "4 mm"`); dimensionless fields are plain numbers. Units are
//! checked and converted to SI when the file is loaded. Sections are
//! assembled into model types only when a command asks for them, so a file
//! may omit sections the command does not use.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use helijam::experiment::RigConfig;
use helijam::finger::FingerConfig;
use helijam::{DielectricStack, DriveState, HelixGeometry, MechanismSpec};
use toml::{Table, Value};

use crate::units::{parse_quantity, Dimension};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("field `{path}`: {reason}")]
    Field { path: String, reason: String },
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("section [{section}]: {source}")]
    Invalid {
        section: &'static str,
        source: helijam::Error,
    },
}

type Result<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy)]
enum Kind {
    Quantity(Dimension),
    QuantityList(Dimension),
    Number,
    Flag,
    Text,
}

const SCHEMA: &[(&str, Kind)] = &[
    ("mechanism.allow_circular", Kind::Flag),
    ("mechanism.helix.radius", Kind::Quantity(Dimension::Length)),
    ("mechanism.helix.pitch", Kind::Quantity(Dimension::Length)),
    ("mechanism.helix.total_angle", Kind::Quantity(Dimension::Angle)),
    ("mechanism.stack.eps_r1", Kind::Number),
    ("mechanism.stack.thickness_d1", Kind::Quantity(Dimension::Length)),
    ("mechanism.stack.eps_r2", Kind::Number),
    ("mechanism.stack.thickness_d2", Kind::Quantity(Dimension::Length)),
    ("mechanism.stack.electrode_width", Kind::Quantity(Dimension::Length)),
    ("mechanism.stack.friction_mu", Kind::Number),
    ("mechanism.stack.eps0", Kind::Quantity(Dimension::Permittivity)),
    ("drive.voltage", Kind::Quantity(Dimension::Voltage)),
    ("drive.preload", Kind::Quantity(Dimension::Force)),
    ("finger.spring_k", Kind::Quantity(Dimension::SpringRate)),
    ("finger.pre_extension", Kind::Quantity(Dimension::Length)),
    ("finger.core_radius", Kind::Quantity(Dimension::Length)),
    ("finger.lever", Kind::Quantity(Dimension::Length)),
    ("rig.groove_radius", Kind::Quantity(Dimension::Length)),
    ("rig.mass", Kind::Quantity(Dimension::Mass)),
    ("rig.gravity", Kind::Quantity(Dimension::Acceleration)),
    ("rig.sampling", Kind::Quantity(Dimension::Frequency)),
    ("sweep.voltages", Kind::QuantityList(Dimension::Voltage)),
    ("sweep.preloads", Kind::QuantityList(Dimension::Force)),
    ("sweep.angles", Kind::QuantityList(Dimension::Angle)),
    ("sweep.loads", Kind::QuantityList(Dimension::Force)),
    ("output.path", Kind::Text),
];

/// Specimen constants and the reference voltage sweep. Geometry the
/// specimen description leaves open (core radius, pitch, film thickness)
/// is deliberately absent and must come from the user's file.
pub const REFERENCE_FIXTURES: &str = r#"
[mechanism.helix]
total_angle = "450 deg"

[mechanism.stack]
eps_r1 = 3.6
eps_r2 = 3.6
electrode_width = "7 mm"
friction_mu = 0.22
eps0 = "8.85e-12 F/m"

[rig]
mass = "25 g"
gravity = "9.81 m/s2"
sampling = "10 Hz"

[sweep]
voltages = ["1000 V", "1400 V", "1800 V", "2200 V", "2600 V", "3000 V", "3400 V", "3800 V"]
preloads = ["0.24525 N", "0.4905 N", "0.981 N"]
"#;

#[derive(Debug, Clone, PartialEq)]
enum Parsed {
    Scalar(f64),
    List(Vec<f64>),
    Flag(bool),
    Text(String),
}

/// Loaded configuration with all values in SI.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, Parsed>,
}

fn flatten(prefix: &str, table: &Table, out: &mut Vec<(String, Value)>) {
    for (key, value) in table {
        let path = if prefix.is_empty() {
            key.clone()
        } else {
            format!("{prefix}.{key}")
        };
        match value {
            Value::Table(inner) => flatten(&path, inner, out),
            other => out.push((path, other.clone())),
        }
    }
}

/// Overlays `top` onto `base`, recursing into shared tables.
fn merge(base: &mut Table, top: Table) {
    for (key, value) in top {
        match (base.get_mut(&key), value) {
            (Some(Value::Table(b)), Value::Table(t)) => merge(b, t),
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

fn as_number(path: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(ConfigError::Field {
            path: path.to_string(),
            reason: "expected a number".into(),
        }),
    }
}

fn as_quantity(path: &str, v: &Value, dim: Dimension) -> Result<f64> {
    let text = v.as_str().ok_or_else(|| ConfigError::Field {
        path: path.to_string(),
        reason: format!("expected a string with a unit suffix, e.g. \"1 {}\"", first_unit(dim)),
    })?;
    parse_quantity(text, dim).map_err(|e| ConfigError::Field {
        path: path.to_string(),
        reason: e.to_string(),
    })
}

fn first_unit(dim: Dimension) -> &'static str {
    match dim {
        Dimension::Length => "mm",
        Dimension::Angle => "deg",
        Dimension::Voltage => "V",
        Dimension::Force => "N",
        Dimension::Mass => "g",
        Dimension::SpringRate => "N/m",
        Dimension::Acceleration => "m/s2",
        Dimension::Frequency => "Hz",
        Dimension::Permittivity => "F/m",
    }
}

impl RunConfig {
    /// Parses configuration text, optionally on top of [`REFERENCE_FIXTURES`].
    pub fn parse(text: &str, reference_fixtures: bool) -> Result<Self> {
        let user: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
        let table = if reference_fixtures {
            let mut base: Table = REFERENCE_FIXTURES.parse().expect("fixture table");
            merge(&mut base, user);
            base
        } else {
            user
        };
        let mut flat = Vec::new();
        flatten("", &table, &mut flat);

        let mut values = BTreeMap::new();
        for (path, value) in flat {
            let kind = SCHEMA
                .iter()
                .find(|(p, _)| *p == path)
                .map(|(_, k)| *k)
                .ok_or_else(|| ConfigError::UnknownField(path.clone()))?;
            let parsed = match kind {
                Kind::Quantity(dim) => Parsed::Scalar(as_quantity(&path, &value, dim)?),
                Kind::Number => Parsed::Scalar(as_number(&path, &value)?),
                Kind::QuantityList(dim) => {
                    let items = value.as_array().ok_or_else(|| ConfigError::Field {
                        path: path.clone(),
                        reason: "expected a list".into(),
                    })?;
                    let list = items
                        .iter()
                        .enumerate()
                        .map(|(i, v)| as_quantity(&format!("{path}[{i}]"), v, dim))
                        .collect::<Result<Vec<_>>>()?;
                    Parsed::List(list)
                }
                Kind::Flag => Parsed::Flag(value.as_bool().ok_or_else(|| ConfigError::Field {
                    path: path.clone(),
                    reason: "expected true or false".into(),
                })?),
                Kind::Text => Parsed::Text(
                    value
                        .as_str()
                        .ok_or_else(|| ConfigError::Field {
                            path: path.clone(),
                            reason: "expected a string".into(),
                        })?
                        .to_string(),
                ),
            };
            values.insert(path, parsed);
        }
        Ok(Self { values })
    }

    pub fn load(path: Option<&Path>, reference_fixtures: bool) -> Result<Self> {
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                    path: p.to_path_buf(),
                    source,
                })?;
                Self::parse(&text, reference_fixtures)
            }
            None => Self::parse("", reference_fixtures),
        }
    }

    pub fn has_section(&self, section: &str) -> bool {
        let prefix = format!("{section}.");
        self.values.keys().any(|k| k.starts_with(&prefix))
    }

    fn require_section(&self, section: &str) -> Result<()> {
        if self.has_section(section) {
            Ok(())
        } else {
            Err(ConfigError::MissingSection(section.to_string()))
        }
    }

    fn opt_scalar(&self, path: &str) -> Option<f64> {
        match self.values.get(path) {
            Some(Parsed::Scalar(v)) => Some(*v),
            _ => None,
        }
    }

    fn scalar(&self, path: &str) -> Result<f64> {
        self.opt_scalar(path)
            .ok_or_else(|| ConfigError::MissingField(path.to_string()))
    }

    pub fn list(&self, path: &str) -> Option<&[f64]> {
        match self.values.get(path) {
            Some(Parsed::List(v)) => Some(v),
            _ => None,
        }
    }

    pub fn output_path(&self) -> Option<PathBuf> {
        match self.values.get("output.path") {
            Some(Parsed::Text(p)) => Some(PathBuf::from(p)),
            _ => None,
        }
    }

    fn invalid(section: &'static str) -> impl Fn(helijam::Error) -> ConfigError {
        move |source| ConfigError::Invalid { section, source }
    }

    pub fn helix(&self) -> Result<HelixGeometry> {
        self.require_section("mechanism.helix")?;
        HelixGeometry::new(
            self.scalar("mechanism.helix.radius")?,
            self.scalar("mechanism.helix.pitch")?,
            self.scalar("mechanism.helix.total_angle")?,
        )
        .map_err(Self::invalid("mechanism.helix"))
    }

    pub fn stack(&self) -> Result<DielectricStack> {
        self.require_section("mechanism.stack")?;
        let stack = DielectricStack::new(
            self.scalar("mechanism.stack.eps_r1")?,
            self.scalar("mechanism.stack.thickness_d1")?,
            self.scalar("mechanism.stack.eps_r2")?,
            self.scalar("mechanism.stack.thickness_d2")?,
            self.scalar("mechanism.stack.electrode_width")?,
            self.scalar("mechanism.stack.friction_mu")?,
        )
        .map_err(Self::invalid("mechanism.stack"))?;
        match self.opt_scalar("mechanism.stack.eps0") {
            Some(eps0) => stack.with_eps0(eps0).map_err(Self::invalid("mechanism.stack")),
            None => Ok(stack),
        }
    }

    /// Helix and stack without the pitch-admissibility check.
    pub fn mechanism_unchecked(&self) -> Result<MechanismSpec> {
        self.require_section("mechanism")?;
        Ok(MechanismSpec {
            helix: self.helix()?,
            stack: self.stack()?,
        })
    }

    /// Validated mechanism; `H = 0` needs `allow_circular = true`.
    pub fn mechanism(&self) -> Result<MechanismSpec> {
        let raw = self.mechanism_unchecked()?;
        let circular = matches!(self.values.get("mechanism.allow_circular"), Some(Parsed::Flag(true)));
        if circular {
            MechanismSpec::circular_limit(raw.helix, raw.stack)
        } else {
            MechanismSpec::new(raw.helix, raw.stack)
        }
        .map_err(Self::invalid("mechanism"))
    }

    pub fn drive(&self) -> Result<DriveState> {
        self.require_section("drive")?;
        DriveState::new(self.scalar("drive.voltage")?, self.scalar("drive.preload")?)
            .map_err(Self::invalid("drive"))
    }

    pub fn finger(&self) -> Result<FingerConfig> {
        let mechanism = self.mechanism()?;
        self.require_section("finger")?;
        FingerConfig::new(
            self.scalar("finger.spring_k")?,
            self.scalar("finger.pre_extension")?,
            self.scalar("finger.core_radius")?,
            self.scalar("finger.lever")?,
            mechanism,
        )
        .map_err(Self::invalid("finger"))
    }

    pub fn rig(&self) -> Result<RigConfig> {
        self.require_section("rig")?;
        RigConfig {
            groove_radius: self.scalar("rig.groove_radius")?,
            mass: self.opt_scalar("rig.mass").unwrap_or(0.0),
            gravity: self.opt_scalar("rig.gravity").unwrap_or(RigConfig::DEFAULT_GRAVITY),
            sampling_hz: self.opt_scalar("rig.sampling").unwrap_or(RigConfig::DEFAULT_SAMPLING_HZ),
        }
        .validated()
        .map_err(Self::invalid("rig"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"
[mechanism.helix]
radius = "4 mm"
pitch = "13 mm"
total_angle = "7.854 rad"

[mechanism.stack]
eps_r1 = 3.6
thickness_d1 = "50 um"
eps_r2 = 3.6
thickness_d2 = "50 um"
electrode_width = "7 mm"
friction_mu = 0.22

[drive]
voltage = "3 kV"
preload = "0.24525 N"
"#;

    #[test]
    fn loads_fixture() {
        let cfg = RunConfig::parse(FIXTURE, false).unwrap();
        let m = cfg.mechanism().unwrap();
        assert_eq!(m.helix.radius, 0.004);
        assert_eq!(m.stack.thickness_d1, 50e-6);
        assert_eq!(cfg.drive().unwrap().voltage, 3000.0);
        assert!(matches!(cfg.finger(), Err(ConfigError::MissingSection(s)) if s == "finger"));
    }

    #[test]
    fn errors_name_the_field() {
        let text = FIXTURE.replace("radius = \"4 mm\"", "radius = \"4\"");
        match RunConfig::parse(&text, false) {
            Err(ConfigError::Field { path, .. }) => assert_eq!(path, "mechanism.helix.radius"),
            other => panic!("unexpected {other:?}"),
        }
        let text = FIXTURE.replace("pitch", "pich");
        assert!(matches!(
            RunConfig::parse(&text, false),
            Err(ConfigError::UnknownField(p)) if p == "mechanism.helix.pich"
        ));
        let text = FIXTURE.replace("friction_mu = 0.22\n", "");
        let cfg = RunConfig::parse(&text, false).unwrap();
        assert!(matches!(
            cfg.mechanism(),
            Err(ConfigError::MissingField(p)) if p == "mechanism.stack.friction_mu"
        ));
        assert!(matches!(
            RunConfig::parse("", false).unwrap().mechanism(),
            Err(ConfigError::MissingSection(s)) if s == "mechanism"
        ));
    }

    #[test]
    fn pitch_admissibility_and_circular_flag() {
        let text = FIXTURE.replace("\"13 mm\"", "\"0 mm\"");
        let cfg = RunConfig::parse(&text, false).unwrap();
        assert!(cfg.mechanism().is_err());
        assert!(cfg.mechanism_unchecked().is_ok());
        let text = format!("[mechanism]\nallow_circular = true\n{text}");
        assert_eq!(RunConfig::parse(&text, false).unwrap().mechanism().unwrap().helix.pitch, 0.0);
    }

    #[test]
    fn reference_fixtures_fill_gaps_and_yield_to_user_values() {
        let cfg = RunConfig::parse("", true).unwrap();
        assert_eq!(cfg.list("sweep.voltages").unwrap().len(), 8);
        assert!(matches!(
            cfg.mechanism(),
            Err(ConfigError::MissingField(p)) if p == "mechanism.helix.radius"
        ));
        let stack = cfg.stack();
        assert!(matches!(stack, Err(ConfigError::MissingField(p)) if p == "mechanism.stack.thickness_d1"));

        let user = "[mechanism.helix]\nradius = \"4 mm\"\npitch = \"13 mm\"\n[mechanism.stack]\nthickness_d1 = \"50 um\"\nthickness_d2 = \"50 um\"\nfriction_mu = 0.3\n";
        let cfg = RunConfig::parse(user, true).unwrap();
        let m = cfg.mechanism().unwrap();
        assert!((m.helix.total_angle - 2.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(m.stack.electrode_width, 0.007);
        assert_eq!(m.stack.friction_mu, 0.3);
    }

    #[test]
    fn rig_defaults() {
        let cfg = RunConfig::parse("[rig]\ngroove_radius = \"8 mm\"\n", false).unwrap();
        let rig = cfg.rig().unwrap();
        assert_eq!(rig.gravity, 9.81);
        assert_eq!(rig.sampling_hz, 10.0);
        assert_eq!(rig.mass, 0.0);
        let cfg = RunConfig::parse("[rig]\nmass = \"25 g\"\n", false).unwrap();
        assert!(matches!(cfg.rig(), Err(ConfigError::MissingField(p)) if p == "rig.groove_radius"));
    }
}
