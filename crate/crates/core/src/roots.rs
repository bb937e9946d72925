//! Bracketing root search for monotone residuals.

use crate::error::{Error, Result};

/// Finds the crossing of a nondecreasing residual on `[lo, hi]` by bisection.
///
/// Requires `f(lo) < 0 <= f(hi)`. Returns the upper end of the final bracket,
/// so the result always satisfies `f(x) >= 0` and lies within `xtol` of the
/// smallest such `x`.
pub fn bisect_increasing<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        return Err(Error::Domain(format!(
            "residual not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
        )));
    }
    while hi - lo > xtol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let x = bisect_increasing(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
        assert!(x * x - 2.0 >= 0.0);
    }

    #[test]
    fn rejects_unbracketed() {
        assert!(bisect_increasing(|x| Ok(x - 5.0), 0.0, 2.0, 1e-9).is_err());
        assert!(bisect_increasing(|x| Ok(x + 5.0), 0.0, 2.0, 1e-9).is_err());
        assert!(bisect_increasing(Ok, 1.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn propagates_residual_errors() {
        let r = bisect_increasing(
            |x| if x > 1.0 { Err(Error::Domain("boom".into())) } else { Ok(x - 0.5) },
            0.0,
            1.0,
            1e-9,
        );
        assert!(r.is_ok());
        let r = bisect_increasing(|_| Err::<f64, _>(Error::Domain("boom".into())), 0.0, 1.0, 1e-9);
        assert!(r.is_err());
    }
}
