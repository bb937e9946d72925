//! Quantities with explicit unit suffixes, converted to SI at parse time.

use std::fmt;

/// Physical dimension of a configured quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Angle,
    Voltage,
    Force,
    Mass,
    SpringRate,
    Acceleration,
    Frequency,
    Permittivity,
}

impl Dimension {
    /// Unit names with the SI conversion `value * mul / div`. Keeping the
    /// divisor separate makes decimal prefixes round correctly.
    fn units(self) -> &'static [(&'static str, f64, f64)] {
        use std::f64::consts::PI;
        match self {
            Dimension::Length => &[
                ("m", 1.0, 1.0),
                ("cm", 1.0, 1e2),
                ("mm", 1.0, 1e3),
                ("um", 1.0, 1e6),
                ("µm", 1.0, 1e6),
            ],
            Dimension::Angle => &[("rad", 1.0, 1.0), ("deg", PI, 180.0)],
            Dimension::Voltage => &[("V", 1.0, 1.0), ("kV", 1e3, 1.0)],
            Dimension::Force => &[("N", 1.0, 1.0), ("mN", 1.0, 1e3)],
            Dimension::Mass => &[("kg", 1.0, 1.0), ("g", 1.0, 1e3)],
            Dimension::SpringRate => &[("N/m", 1.0, 1.0), ("N/mm", 1e3, 1.0)],
            Dimension::Acceleration => &[("m/s2", 1.0, 1.0), ("m/s^2", 1.0, 1.0)],
            Dimension::Frequency => &[("Hz", 1.0, 1.0)],
            Dimension::Permittivity => &[("F/m", 1.0, 1.0)],
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.units().iter().map(|(u, _, _)| *u).collect();
        write!(f, "{:?} [{}]", self, names.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UnitError {
    #[error("`{0}` has no unit suffix; expected one of {1}")]
    MissingUnit(String, Dimension),
    #[error("`{0}`: unknown unit for {1}")]
    WrongUnit(String, Dimension),
    #[error("`{0}` is not a number")]
    BadNumber(String),
}

/// Parses `"<number> <unit>"` (space optional) into SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, UnitError> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_alphabetic() && !(matches!(c, 'e' | 'E') && is_exponent(text, i))
                || c == 'µ'
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (number, unit) = text.split_at(split);
    let (number, unit) = (number.trim(), unit.trim());
    if unit.is_empty() {
        return Err(UnitError::MissingUnit(text.to_string(), dim));
    }
    let value: f64 = number
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| UnitError::BadNumber(text.to_string()))?;
    let (_, mul, div) = dim
        .units()
        .iter()
        .find(|(u, _, _)| *u == unit)
        .ok_or_else(|| UnitError::WrongUnit(text.to_string(), dim))?;
    Ok(value * mul / div)
}

// An `e`/`E` is an exponent marker when it follows a digit or '.' and is
// followed by a digit or sign.
fn is_exponent(text: &str, i: usize) -> bool {
    let before = text[..i].chars().last();
    let after = text[i + 1..].chars().next();
    matches!(before, Some(c) if c.is_ascii_digit() || c == '.')
        && matches!(after, Some(c) if c.is_ascii_digit() || c == '-' || c == '+')
}
